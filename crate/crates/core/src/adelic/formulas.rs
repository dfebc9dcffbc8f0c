//! First-order formulas for `H`, `U`, `A_T`, `W` and `Gamma_1` in `SL2(A)`,
//! with parameters `u = u(1)`, `h(tau)`, `v = v(1)` and `u(c)` for `c` in
//! `S` and `S^2`.

use serde::Serialize;

use super::group::{Mat2, Sl2Group};
use super::sets::{a_t_codes, make_tau, torus, unipotents, w_componentwise};
use crate::definability::{define_set, FiniteGroup, Formula, Term, DEFAULT_EVAL_BUDGET};
use crate::error::Result;
use crate::rings::Code;

pub struct Sl2Formulas<'a> {
    g: &'a Sl2Group,
    s: Vec<Code>,
    pub params: Vec<Mat2>,
    pub param_labels: Vec<String>,
    fresh: usize,
}

impl<'a> Sl2Formulas<'a> {
    pub fn new(g: &'a Sl2Group, s: &[Code]) -> Result<Self> {
        let tau = g.code(&make_tau(&g.ring)?);
        let one = g.t().one;
        let mut f = Sl2Formulas { g, s: s.to_vec(), params: Vec::new(), param_labels: Vec::new(), fresh: 0 };
        f.param(g.u(one), "u".into());
        f.param(g.h(tau)?, format!("h({})", g.elem(tau)));
        f.param(g.v(one), "v".into());
        Ok(f)
    }

    fn param(&mut self, m: Mat2, label: String) -> Term {
        if let Some(k) = self.params.iter().position(|p| *p == m) {
            return Term::Param(k + 1);
        }
        self.params.push(m);
        self.param_labels.push(label);
        Term::Param(self.params.len())
    }

    fn u(&self) -> Term {
        Term::Param(1)
    }

    /// `u(c)`, or `None` for `c = 0`.
    fn u_of(&mut self, c: Code) -> Option<Term> {
        (c != 0).then(|| {
            let label = format!("u({})", self.g.elem(c));
            self.param(self.g.u(c), label)
        })
    }

    /// `w = u v u`.
    fn w(&self) -> Term {
        self.u().mul(Term::Param(3)).mul(self.u())
    }

    fn var(&mut self, stem: &str) -> String {
        self.fresh += 1;
        format!("{stem}{}", self.fresh)
    }

    fn product(parts: Vec<Option<Term>>) -> Term {
        parts.into_iter().flatten().reduce(Term::mul).unwrap_or(Term::One)
    }

    fn conj(t: Term, x: &Term) -> Term {
        x.clone().inv().mul(t).mul(x.clone())
    }

    /// `t in H`.
    pub fn h(&self, t: Term) -> Formula {
        Formula::commutes(t, Term::Param(2))
    }

    /// `E a b in H. OR_s (body(u^a u^-b u(s), s))`.
    fn decompose<F>(&mut self, mut body: F) -> Formula
    where
        F: FnMut(&mut Self, Term, Term, Term, Code) -> Formula,
    {
        let (a, b) = (self.var("a"), self.var("b"));
        let (ta, tb) = (Term::var(&a), Term::var(&b));
        let word = Self::conj(self.u(), &ta).mul(Self::conj(self.u().inv(), &tb));
        let cases = self
            .s
            .clone()
            .into_iter()
            .map(|s| {
                let w = Self::product(vec![Some(word.clone()), self.u_of(s)]);
                body(self, w, ta.clone(), tb.clone(), s)
            })
            .reduce(Formula::or)
            .unwrap_or_else(|| Formula::not(Formula::eq(Term::One, Term::One)));
        Formula::exists(&a, self.h(ta.clone()).and(Formula::exists(&b, self.h(tb.clone()).and(cases))))
    }

    /// `t in U`.
    pub fn unipotent(&mut self, t: Term) -> Formula {
        self.decompose(|_, w, _, _, _| Formula::eq(t.clone(), w))
    }

    /// `t1 * t2 = t3` on `U`.
    pub fn star(&mut self, t1: Term, t2: Term, t3: Term) -> Formula {
        self.decompose(|me, w1, z, r, t| {
            let first = Formula::eq(t1.clone(), w1);
            let second = me.decompose(|me, w2, x, y, s| {
                let us = me.u_of(s);
                let st = me.u_of(me.g.t().mul(s, t));
                let rhs = Self::product(vec![
                    Some(Self::conj(t1.clone(), &x)),
                    Some(Self::conj(t1.clone().inv(), &y)),
                    us.clone().map(|p| Self::conj(p, &z)),
                    us.map(|p| Self::conj(p.inv(), &r)),
                    st,
                ]);
                Formula::eq(t2.clone(), w2).and(Formula::eq(t3.clone(), rhs))
            });
            first.and(second)
        })
    }

    /// `t in u(A_T)`: `t in U` and `prod (t - c) = 0` computed with `*`.
    pub fn a_t(&mut self, t: Term, cs: &[i64]) -> Formula {
        let shift = |me: &mut Self, c: i64| {
            let code = me.g.code(&me.g.ring.from_int(c));
            Self::product(vec![Some(t.clone()), me.u_of(code).map(Term::inv)])
        };
        let base = self.unipotent(t.clone());
        let Some((&first, rest)) = cs.split_first() else {
            // The empty product is 1, which is never 0.
            return base.and(Formula::not(Formula::eq(Term::One, Term::One)));
        };
        let mut acc = shift(self, first);
        if rest.is_empty() {
            return base.and(Formula::eq(acc, Term::One));
        }
        let mut chain = Vec::new();
        for (k, &c) in rest.iter().enumerate() {
            let factor = shift(self, c);
            if k + 1 == rest.len() {
                chain.push((None, self.star(acc.clone(), factor, Term::One)));
            } else {
                let p = self.var("p");
                let next = Term::var(&p);
                let guard = self.unipotent(next.clone());
                chain.push((Some((p, guard)), self.star(acc.clone(), factor, next.clone())));
                acc = next;
            }
        }
        let mut body: Option<Formula> = None;
        for (bind, step) in chain.into_iter().rev() {
            let inner = match body {
                Some(b) => step.and(b),
                None => step,
            };
            body = Some(match bind {
                Some((p, guard)) => Formula::exists(&p, guard.and(inner)),
                None => inner,
            });
        }
        base.and(body.expect("at least one step"))
    }

    /// `t in W`: `t = y z^w y` with `y, z in u(A_{0,1})` and `t^4 = 1`.
    pub fn w_set(&mut self, t: Term) -> Formula {
        let (y, z) = (self.var("y"), self.var("z"));
        let (ty, tz) = (Term::var(&y), Term::var(&z));
        let gy = self.a_t(ty.clone(), &[0, 1]);
        let gz = self.a_t(tz.clone(), &[0, 1]);
        let word = ty.clone().mul(Self::conj(tz, &self.w())).mul(ty);
        let fourth = t.clone().mul(t.clone()).mul(t.clone()).mul(t.clone());
        let body = Formula::eq(t, word).and(Formula::eq(fourth, Term::One));
        Formula::exists(&y, gy.and(Formula::exists(&z, gz.and(body))))
    }

    /// `t in V H U`, with `V = U^w`.
    pub fn gamma1(&mut self, t: Term) -> Formula {
        let (p, q, r, y) = (self.var("p"), self.var("q"), self.var("r"), self.var("y"));
        let (tp, tq, tr, ty) = (Term::var(&p), Term::var(&q), Term::var(&r), Term::var(&y));
        let in_u = self.unipotent(ty.clone());
        let in_v = Formula::exists(&y, in_u.and(Formula::eq(tp.clone(), Self::conj(ty, &self.w()))));
        let hq = self.h(tq.clone());
        let ur = self.unipotent(tr.clone());
        let body = Formula::eq(t, tp.mul(tq).mul(tr));
        Formula::exists(&p, in_v.and(Formula::exists(&q, hq.and(Formula::exists(&r, ur.and(body))))))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SetCheck {
    pub name: String,
    pub by_formula: usize,
    pub direct: usize,
    pub equal: bool,
}

fn check(g: &Sl2Group, name: &str, f: &Formula, params: &[Mat2], mut direct: Vec<Mat2>) -> Result<SetCheck> {
    let got: Vec<Mat2> = define_set(f, g, params, DEFAULT_EVAL_BUDGET)?.into_iter().map(|i| *g.element(i)).collect();
    direct.sort_unstable();
    direct.dedup();
    let mut got_sorted = got.clone();
    got_sorted.sort_unstable();
    Ok(SetCheck { name: name.into(), by_formula: got.len(), direct: direct.len(), equal: got_sorted == direct })
}

/// The five set equalities `H`, `U`, `A_{0,1}`, `W`, `Gamma_1`, each formula
/// evaluated over the whole group and compared with its direct construction.
pub fn formula_checks(g: &Sl2Group, s: &[Code]) -> Result<Vec<SetCheck>> {
    let mut b = Sl2Formulas::new(g, s)?;
    let x = Term::var("x");
    let h = b.h(x.clone());
    let u = b.unipotent(x.clone());
    let a01 = b.a_t(x.clone(), &[0, 1]);
    let w = b.w_set(x.clone());
    let gamma1 = b.gamma1(x);
    let params = b.params.clone();
    let t = g.t();
    let a01_direct = a_t_codes(g, &[0, 1]).into_iter().map(|c| g.u(c)).collect();
    let gamma1_direct = g.elements().iter().filter(|m| t.inv(m[0]).is_some()).copied().collect();
    Ok(vec![
        check(g, "H", &h, &params, torus(g))?,
        check(g, "U", &u, &params, unipotents(g))?,
        check(g, "A_{0,1}", &a01, &params, a01_direct)?,
        check(g, "W", &w, &params, w_componentwise(g))?,
        check(g, "Gamma_1", &gamma1, &params, gamma1_direct)?,
    ])
}

/// Parameters the five formulas need, in order of first use.
pub fn formula_parameters(g: &Sl2Group, s: &[Code]) -> Result<Vec<String>> {
    let mut b = Sl2Formulas::new(g, s)?;
    let x = Term::var("x");
    b.unipotent(x.clone());
    b.a_t(x.clone(), &[0, 1]);
    b.w_set(x.clone());
    b.gamma1(x);
    Ok(b.param_labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adelic::QuotientMode;

    fn run(ring: &str, mode: QuotientMode, s: &[Code]) -> Vec<SetCheck> {
        let g = Sl2Group::parse(ring, mode, 1 << 22).unwrap();
        let r = formula_checks(&g, s).unwrap();
        for c in &r {
            assert!(c.equal, "{ring} {mode}: {c:?}");
        }
        r
    }

    #[test]
    fn f7_all_modes() {
        let r = run("F7", QuotientMode::Sl2, &[0]);
        let sizes: Vec<usize> = r.iter().map(|c| c.direct).collect();
        assert_eq!(sizes, vec![6, 7, 2, 2, 294]);
        run("F7", QuotientMode::Sl2ModMinusOne, &[0]);
        run("F7", QuotientMode::Psl2, &[0]);
    }

    #[test]
    fn three_parameters_suffice_for_s_zero() {
        let g = Sl2Group::parse("F7xF11", QuotientMode::Sl2, 1 << 22).unwrap();
        assert_eq!(formula_parameters(&g, &[0]).unwrap(), vec!["u", "h((2,2))", "v"]);
        let g = Sl2Group::parse("F5", QuotientMode::Sl2, 1 << 22).unwrap();
        assert!(formula_parameters(&g, &[0, 1, 4]).unwrap().len() > 3);
    }

    #[test]
    fn f5_with_s() {
        run("F5", QuotientMode::Sl2, &[0, 1, 4]);
    }

    #[test]
    fn f7_x_f11() {
        let r = run("F7xF11", QuotientMode::Sl2, &[0]);
        let sizes: Vec<usize> = r.iter().map(|c| c.direct).collect();
        assert_eq!(sizes, vec![60, 77, 4, 4, 6 * 49 * 10 * 121]);
        let r = run("F7xF11", QuotientMode::Psl2, &[0]);
        let sizes: Vec<usize> = r.iter().map(|c| c.direct).collect();
        assert_eq!(sizes, vec![15, 77, 4, 4, 6 * 49 * 10 * 121 / 4]);
    }
}
