//! Formulas defining `U_a Z` and `U_a` with root elements as parameters.
//!
//! `U_a Z` is the double centralizer of `u = x_a(1)` except for short roots of
//! type `C` when every unit is `+-1`. There the candidate set is
//! `V = Z(C(u))` and membership is cut down by
//! `[g, x_{a+b}(1)] in U_{2a+b} Z` and `[g, x_{-a-b}(1)] in U_{-b} Z`.
//!
//! `U_a` itself comes from `U_a Z` in one of three ways: directly when the
//! center is trivial, as `[U_m Z, x_b(1)]` when `a = m + b` inside an `A2`,
//! and otherwise as `x_a(c) {z^2 : z in U_a Z}` over coset representatives
//! `c` of `R / 2R` (this needs `Z^2 = 1`).

use std::collections::BTreeSet;

use serde::Serialize;

use super::formula::{Formula, Term};
use crate::chevgroup::{Chevalley, GroupElem, Subgroup};
use crate::error::{Error, Result};
use crate::rings::Code;
use crate::rootsys::{Rank2Type, Root};
use crate::witnesses::is_exceptional;

#[derive(Clone, Debug, Serialize)]
pub struct DefiningFormula {
    pub formula: Formula,
    #[serde(skip)]
    pub params: Vec<GroupElem>,
    /// `x(<root>,<value>)` for each parameter slot.
    pub param_labels: Vec<String>,
    /// The commutator conditions for the exceptional short-root case are used.
    pub patched: bool,
}

struct Builder<'a> {
    g: &'a Chevalley,
    params: Vec<GroupElem>,
    labels: Vec<String>,
    fresh: usize,
    patched: bool,
}

impl<'a> Builder<'a> {
    fn new(g: &'a Chevalley) -> Self {
        Builder { g, params: Vec::new(), labels: Vec::new(), fresh: 0, patched: false }
    }

    fn x(&mut self, a: Root, r: Code) -> Term {
        let el = self.g.x_code(a, r);
        if let Some(k) = self.params.iter().position(|p| *p == el) {
            return Term::Param(k + 1);
        }
        self.params.push(el);
        self.labels.push(format!("x({},{})", self.g.sys().name(a), self.g.ring.elem(r as u32)));
        Term::Param(self.params.len())
    }

    fn var(&mut self, stem: &str) -> String {
        self.fresh += 1;
        format!("{stem}{}", self.fresh)
    }

    /// `A h. (u*h=h*u -> t*h=h*t)`.
    fn double_centralizer(&mut self, t: &Term, u: Term) -> Formula {
        let h = self.var("h");
        let hv = Term::var(&h);
        Formula::forall(&h, Formula::commutes(u, hv.clone()).implies(Formula::commutes(t.clone(), hv)))
    }

    /// `t in U_a Z`.
    fn uz(&mut self, a: Root, t: &Term) -> Result<Formula> {
        let one = self.g.t().one;
        let u = self.x(a, one);
        if !is_exceptional(self.g, a)? {
            return Ok(self.double_centralizer(t, u));
        }
        self.patched = true;
        let sys = self.g.sys();
        let b = sys
            .roots()
            .find(|&b| {
                sys.is_long(b)
                    && sys.add(a, b).is_some()
                    && sys.combo(2, a, 1, b).is_some()
                    && sys.combo(1, a, -1, b).is_none()
            })
            .ok_or_else(|| Error::Malformed(format!("no B2 partner for {}", sys.name(a))))?;
        let ab = sys.add(a, b).expect("checked above");
        let two_ab = sys.combo(2, a, 1, b).expect("checked above");
        let v = Formula::commutes(u.clone(), t.clone()).and(self.double_centralizer(t, u));
        let p1 = self.x(ab, one);
        let c1 = self.uz(two_ab, &Term::comm(t.clone(), p1))?;
        let p2 = self.x(sys.neg(ab), one);
        let c2 = self.uz(sys.neg(b), &Term::comm(t.clone(), p2))?;
        Ok(v.and(c1).and(c2))
    }

    fn finish(self, formula: Formula) -> DefiningFormula {
        DefiningFormula { formula, params: self.params, param_labels: self.labels, patched: self.patched }
    }
}

/// A formula in the free variable `x` whose extension is `U_a(R) Z(R)`.
pub fn dc_definition_formula(g: &Chevalley, a: Root) -> Result<DefiningFormula> {
    let mut b = Builder::new(g);
    let f = b.uz(a, &Term::var("x"))?;
    Ok(b.finish(f))
}

/// A formula in the free variable `x` whose extension is `U_a(R)`.
pub fn root_group_formula(g: &Chevalley, a: Root) -> Result<DefiningFormula> {
    let sys = g.sys();
    let center = Subgroup::Center.materialize(g)?;
    let mut b = Builder::new(g);
    let x = Term::var("x");
    if center.len() == 1 {
        let f = b.uz(a, &x)?;
        return Ok(b.finish(f));
    }
    let z = Term::var("z");
    let a2 = sys.roots().find_map(|beta| {
        let mu = sys.combo(1, a, -1, beta)?;
        (sys.rank2_span_type(mu, beta).ok()? == Rank2Type::A2).then_some((mu, beta))
    });
    if let Some((mu, beta)) = a2 {
        let inner = b.uz(mu, &z)?;
        let p = b.x(beta, g.t().one);
        let f = Formula::exists("z", inner.and(Formula::eq(x, Term::comm(z, p))));
        return Ok(b.finish(f));
    }
    let ops = g.ops();
    if !center.iter().all(|c| ops.is_identity(&ops.mul(c, c))) {
        return Err(Error::UnsupportedRep(format!("{} has a center of exponent > 2", g.label())));
    }
    let t = g.t();
    let n = t.size as Code;
    let twice: BTreeSet<Code> = (0..n).map(|r| t.add(r, r)).collect();
    let mut covered = BTreeSet::new();
    let mut reps = Vec::new();
    for r in 0..n {
        if !covered.contains(&r) {
            reps.push(r);
            covered.extend(twice.iter().map(|&s| t.add(r, s)));
        }
    }
    let inner = b.uz(a, &z)?;
    let square = z.clone().mul(z);
    let cosets = reps
        .into_iter()
        .map(|c| {
            let rhs = if c == 0 { square.clone() } else { b.x(a, c).mul(square.clone()) };
            Formula::eq(x.clone(), rhs)
        })
        .reduce(Formula::or)
        .expect("zero is a representative");
    Ok(b.finish(Formula::exists("z", inner.and(cosets))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevgroup::{EnumeratedGroup, DEFAULT_CAP};
    use crate::definability::{define_set, parse_formula, DEFAULT_EVAL_BUDGET};
    use crate::rings::Ring;
    use crate::witnesses::pick_root;

    fn enumerate(spec: &str, q: &str) -> EnumeratedGroup {
        let g = Chevalley::parse(spec, Ring::parse(q).unwrap()).unwrap();
        EnumeratedGroup::from_root_generators(g, DEFAULT_CAP).unwrap()
    }

    fn extension(e: &EnumeratedGroup, d: &DefiningFormula) -> Vec<usize> {
        define_set(&d.formula, e, &d.params, DEFAULT_EVAL_BUDGET).unwrap()
    }

    fn indices(e: &EnumeratedGroup, s: &Subgroup) -> Vec<usize> {
        let mut v: Vec<usize> = s.materialize(&e.group).unwrap().iter().map(|x| e.index_of(x).unwrap()).collect();
        v.sort();
        v
    }

    fn check(spec: &str, q: &str, long: bool, uz: usize, u: usize, patched: bool) {
        let e = enumerate(spec, q);
        let a = pick_root(&e.group, long).unwrap();
        let d = dc_definition_formula(&e.group, a).unwrap();
        assert_eq!(d.patched, patched, "{spec}/{q}");
        assert_eq!(d.formula.free_vars().len(), 1);
        let got = extension(&e, &d);
        assert_eq!(got, indices(&e, &Subgroup::uz(a)), "{spec}/{q}");
        assert_eq!(got.len(), uz);
        let d = root_group_formula(&e.group, a).unwrap();
        let got = extension(&e, &d);
        assert_eq!(got, indices(&e, &Subgroup::RootGroup(a)), "{spec}/{q}");
        assert_eq!(got.len(), u);
    }

    #[test]
    fn sl3_f2() {
        let e = enumerate("SL3", "F2");
        let a = pick_root(&e.group, true).unwrap();
        let d = dc_definition_formula(&e.group, a).unwrap();
        assert_eq!(d.formula.to_string(), "A h1. (@1*h1=h1*@1 -> x*h1=h1*x)");
        assert_eq!(parse_formula(&d.formula.to_string()).unwrap(), d.formula);
        check("SL3", "F2", true, 2, 2, false);
    }

    #[test]
    fn sl3_f4_center_of_order_three() {
        check("SL3", "F4", true, 12, 4, false);
    }

    #[test]
    fn sp4_f3_short_root_needs_commutator_conditions() {
        check("Sp4", "F3", false, 6, 3, true);
        check("Sp4", "F3", true, 6, 3, false);
        // Without the commutator conditions the double centralizer is too big.
        let e = enumerate("Sp4", "F3");
        let a = pick_root(&e.group, false).unwrap();
        let u = e.group.x(a, &e.group.ring.one());
        let raw = parse_formula("A h. (@1*h=h*@1 -> x*h=h*x)").unwrap();
        let got = define_set(&raw, &e, std::slice::from_ref(&u), DEFAULT_EVAL_BUDGET).unwrap();
        let c = e.centralizer(&[u]);
        assert_eq!(got, e.centralizer_of_indices(&c));
        assert!(got.len() > 6);
    }

    #[test]
    fn adjoint_g2_over_f2() {
        check("G2adj", "F2", true, 2, 2, false);
        check("G2adj", "F2", false, 2, 2, false);
    }

    #[test]
    fn sl3_over_z4_has_trivial_center() {
        check("SL3", "Z/4", true, 4, 4, false);
    }
}
