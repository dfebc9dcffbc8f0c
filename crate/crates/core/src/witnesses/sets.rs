use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::torus::torus_witness;
use crate::chevgroup::{Chevalley, Form, GroupElem, IntMat};
use crate::error::{Error, Result};
use crate::rootsys::{Root, RootType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// One torus witness per positive root.
    Torus,
    /// Torus witnesses plus root elements centralizing `U_a`.
    TorusAugmented,
    F4Extended,
    /// `{1 + e_pq : p != 2, q != 1}` for `U_12` in `SL_n`.
    Sl,
    X1,
    X2,
    X3,
    X4,
    X5,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            WitnessKind::Torus => "torus",
            WitnessKind::TorusAugmented => "torus+",
            WitnessKind::F4Extended => "f4",
            WitnessKind::Sl => "sl",
            WitnessKind::X1 => "X1",
            WitnessKind::X2 => "X2",
            WitnessKind::X3 => "X3",
            WitnessKind::X4 => "X4",
            WitnessKind::X5 => "X5",
        };
        f.write_str(s)
    }
}

impl FromStr for WitnessKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "torus" => WitnessKind::Torus,
            "torus+" => WitnessKind::TorusAugmented,
            "f4" => WitnessKind::F4Extended,
            "sl" => WitnessKind::Sl,
            "X1" | "x1" => WitnessKind::X1,
            "X2" | "x2" => WitnessKind::X2,
            "X3" | "x3" => WitnessKind::X3,
            "X4" | "x4" => WitnessKind::X4,
            "X5" | "x5" => WitnessKind::X5,
            _ => return Err(Error::Config(format!("unknown witness set `{s}`"))),
        })
    }
}

/// A finite subset of `C(U_target)` together with a readable tag per element.
#[derive(Clone, Debug)]
pub struct WitnessSet {
    pub target: Root,
    pub kind: WitnessKind,
    pub elements: Vec<GroupElem>,
    pub tags: Vec<String>,
}

impl WitnessSet {
    fn new(target: Root, kind: WitnessKind) -> Self {
        WitnessSet { target, kind, elements: Vec::new(), tags: Vec::new() }
    }

    fn push(&mut self, tag: String, g: GroupElem) {
        self.tags.push(tag);
        self.elements.push(g);
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Tags of elements failing to commute with some element of `U_target(R)`.
    pub fn non_commuting(&self, g: &Chevalley) -> Vec<String> {
        let ops = g.ops();
        let u = g.root_group(self.target);
        self.elements
            .iter()
            .zip(&self.tags)
            .filter(|(y, _)| !u.iter().all(|x| ops.commute(x, y)))
            .map(|(_, t)| t.clone())
            .collect()
    }
}

fn torus_tag(g: &Chevalley, word: &[(Root, crate::rings::RingElem)]) -> String {
    word.iter().map(|(r, t)| format!("h[{}]({t})", g.sys().name(*r))).collect::<Vec<_>>().join("")
}

/// `{s_b : b positive, b != a}`.
pub fn torus_witness_set(g: &Chevalley, a: Root) -> Result<WitnessSet> {
    let sys = g.sys();
    let mut set = WitnessSet::new(a, WitnessKind::Torus);
    for b in sys.positive_roots().filter(|&b| b != a && b != sys.neg(a)) {
        let w = torus_witness(sys, a, b, &g.ring).ok_or(Error::MissingWitness(a.0, b.0))?;
        set.push(torus_tag(g, &w.word), g.torus_word(&w.word)?);
    }
    Ok(set)
}

/// Torus witnesses together with `x_c(b)` for every root `c != -a` with
/// `a + c` not a root and every additive generator `b`.
pub fn augmented_torus_witness_set(g: &Chevalley, a: Root) -> Result<WitnessSet> {
    let sys = g.sys();
    let mut set = torus_witness_set(g, a)?;
    set.kind = WitnessKind::TorusAugmented;
    let gens = g.additive_generators();
    for c in sys.roots().filter(|&c| c != sys.neg(a) && sys.add(a, c).is_none()) {
        for b in &gens {
            set.push(format!("x[{}]({b})", sys.name(c)), g.x(c, b));
        }
    }
    Ok(set)
}

/// The long roots of `F4` orthogonal to `a1`, in the order `b2, b3, b4`.
pub fn f4_exceptional_roots(g: &Chevalley) -> Result<[Root; 3]> {
    let sys = g.sys();
    let find = |c: [i32; 4]| sys.root_of(&c).ok_or_else(|| Error::UnsupportedRep("not an F4 root system".into()));
    Ok([find([1, 2, 2, 0])?, find([1, 2, 2, 2])?, find([1, 2, 4, 2])?])
}

/// Witness set for `U_{a1}` in `F4`: torus witnesses for every positive root
/// other than `a1, b2, b3, b4`, plus `x_{-b_i}(1)`.
pub fn f4_witness_set(g: &Chevalley) -> Result<WitnessSet> {
    let sys = g.sys();
    if sys.root_type() != RootType::F {
        return Err(Error::UnsupportedRep(format!("{} is not of type F4", g.label())));
    }
    let a = sys.simple(0);
    let bs = f4_exceptional_roots(g)?;
    let mut set = WitnessSet::new(a, WitnessKind::F4Extended);
    for b in sys.positive_roots().filter(|b| *b != a && !bs.contains(b)) {
        let w = torus_witness(sys, a, b, &g.ring).ok_or(Error::MissingWitness(a.0, b.0))?;
        set.push(torus_tag(g, &w.word), g.torus_word(&w.word)?);
    }
    let one = g.ring.one();
    for b in bs {
        let nb = sys.neg(b);
        set.push(format!("x[{}](1)", sys.name(nb)), g.x(nb, &one));
    }
    Ok(set)
}

/// Textbook matrices in signed-index notation.
struct Classical<'a> {
    g: &'a Chevalley,
}

impl Classical<'_> {
    fn one_plus(&self, m: IntMat) -> GroupElem {
        self.g.from_int_mat(&IntMat::identity(self.g.d()).add(&m))
    }

    fn e(&self, i: i32, j: i32) -> IntMat {
        self.g.rep.unit(i, j)
    }

    /// `alpha_ij = e_ij + eps e_{-j,-i}`.
    fn alpha(&self, i: i32, j: i32) -> IntMat {
        let eps = if self.g.rep.form == Form::Symplectic && i * j < 0 { 1 } else { -1 };
        self.e(i, j).add(&self.e(-j, -i).scale(eps))
    }

    /// Short root element `u_i(1) = 1 + (2 e_i0 - e_{0,-i}) - e_{i,-i}` of `B_m`.
    fn u_short(&self, i: i32) -> GroupElem {
        self.one_plus(self.e(i, 0).scale(2).sub(&self.e(0, -i)).sub(&self.e(i, -i)))
    }

    fn signed(&self) -> Vec<i32> {
        let m = self.g.sys().rank() as i32;
        (1..=m).chain((1..=m).map(|i| -i)).collect()
    }

    /// Pairs `(i, j)` with `1 <= |i| < |j| <= m`.
    fn pairs(&self) -> Vec<(i32, i32)> {
        let s = self.signed();
        let mut out = Vec::new();
        for &i in &s {
            for &j in &s {
                if i.abs() < j.abs() {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

fn missing_root() -> Error {
    Error::UnsupportedRep("target root not found".into())
}

/// The index set `S` of the `D_m` witness set `X3`.
pub fn x3_index_set(m: i32) -> Vec<(i32, i32)> {
    let signed: Vec<i32> = (1..=m).chain((1..=m).map(|i| -i)).collect();
    let mut out = Vec::new();
    for &i in &signed {
        for &j in &signed {
            if (3 <= i.abs() && i.abs() < j.abs()) || (i == 1 && 1 < j.abs()) {
                out.push((i, j));
            }
        }
    }
    out.push((-1, 2));
    out
}

/// Root-element witness sets for the classical matrix groups.
pub fn classical_witness_set(g: &Chevalley, kind: WitnessKind) -> Result<WitnessSet> {
    let c = Classical { g };
    let rep = &g.rep;
    let m = g.sys().rank() as i32;
    let bad = || Error::UnsupportedRep(format!("witness set {kind} does not apply to {}", rep.label()));
    let mut set;
    match (kind, rep.form) {
        (WitnessKind::Sl, Form::SpecialLinear) => {
            set = WitnessSet::new(rep.root_ij(1, 2).ok_or_else(missing_root)?, kind);
            let n = g.d() as i32;
            for p in (1..=n).filter(|&p| p != 2) {
                for q in (1..=n).filter(|&q| q != 1 && q != p) {
                    set.push(format!("1+e({p},{q})"), c.one_plus(c.e(p, q)));
                }
            }
        }
        (WitnessKind::X1 | WitnessKind::X2, Form::Symplectic) => {
            let target = if kind == WitnessKind::X1 { rep.root_i(1) } else { rep.root_ij(1, 2) };
            set = WitnessSet::new(target.ok_or_else(missing_root)?, kind);
            // The long-root set keeps `1 + e_{2,-2}`: without it the commutant of
            // X1 in Sp4 is 5-dimensional and C(X1) is far larger than U Z.
            let skip_two = kind == WitnessKind::X2;
            for i in c.signed().into_iter().filter(|&i| i != -1 && !(skip_two && i == 2)) {
                set.push(format!("1+e({i},{})", -i), c.one_plus(c.e(i, -i)));
            }
            let js: Vec<i32> = if kind == WitnessKind::X1 {
                (2..=m).collect()
            } else {
                c.signed().into_iter().filter(|&j| j.abs() != 1 && j != -2).collect()
            };
            for j in js {
                set.push(format!("1+alpha(1,{j})"), c.one_plus(c.alpha(1, j)));
            }
        }
        (WitnessKind::X3, Form::OrthogonalEven) | (WitnessKind::X4, Form::OrthogonalOdd) => {
            set = WitnessSet::new(rep.root_ij(1, 2).ok_or_else(missing_root)?, kind);
            for (i, j) in x3_index_set(m) {
                set.push(format!("1+alpha({i},{j})"), c.one_plus(c.alpha(i, j)));
            }
            if kind == WitnessKind::X4 {
                set.push("u(1)".into(), c.u_short(1));
            }
        }
        (WitnessKind::X5, Form::OrthogonalOdd) => {
            if m < 3 {
                return Err(Error::UnsupportedRep("X5 needs m >= 3; the containment fails for m = 2".into()));
            }
            set = WitnessSet::new(rep.root_i(1).ok_or_else(missing_root)?, kind);
            for (i, j) in c.pairs().into_iter().filter(|&(i, j)| i != -1 && j != 1) {
                set.push(format!("1+alpha({i},{j})"), c.one_plus(c.alpha(i, j)));
            }
            set.push("u(1)".into(), c.u_short(1));
        }
        _ => return Err(bad()),
    }
    Ok(set)
}

/// The root-element witness set for a classical form and root length.
pub fn auto_kind(form: Form, long: bool) -> Result<WitnessKind> {
    Ok(match (form, long) {
        (Form::SpecialLinear, _) => WitnessKind::Sl,
        (Form::Symplectic, true) => WitnessKind::X1,
        (Form::Symplectic, false) => WitnessKind::X2,
        (Form::OrthogonalEven, _) => WitnessKind::X3,
        (Form::OrthogonalOdd, true) => WitnessKind::X4,
        (Form::OrthogonalOdd, false) => WitnessKind::X5,
        (Form::Adjoint, _) => return Err(Error::UnsupportedRep("no root-element witness set for adjoint forms".into())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Ring;

    fn group(spec: &str, q: &str) -> Chevalley {
        Chevalley::parse(spec, Ring::parse(q).unwrap()).unwrap()
    }

    #[test]
    fn sl3_set() {
        let g = group("SL3", "F5");
        let y = classical_witness_set(&g, WitnessKind::Sl).unwrap();
        assert_eq!(y.tags, vec!["1+e(1,2)", "1+e(1,3)", "1+e(3,2)"]);
        assert!(y.non_commuting(&g).is_empty());
    }

    #[test]
    fn x3_index_set_for_d4() {
        let s = x3_index_set(4);
        assert_eq!(s.len(), 11);
        assert!(s.contains(&(-1, 2)) && s.contains(&(1, -4)) && s.contains(&(-3, 4)));
        assert!(!s.contains(&(2, 3)));
    }

    #[test]
    fn classical_sets_are_members_and_commute() {
        for (spec, q, kind) in [
            ("SL4", "F3", WitnessKind::Sl),
            ("Sp4", "F3", WitnessKind::X1),
            ("Sp4", "F3", WitnessKind::X2),
            ("Sp6", "F3", WitnessKind::X1),
            ("Sp6", "F3", WitnessKind::X2),
            ("O8", "F3", WitnessKind::X3),
            ("SO7", "F3", WitnessKind::X4),
            ("SO7", "F3", WitnessKind::X5),
            ("SO9", "F2", WitnessKind::X5),
        ] {
            let g = group(spec, q);
            let y = classical_witness_set(&g, kind).unwrap();
            assert!(!y.is_empty());
            for (e, t) in y.elements.iter().zip(&y.tags) {
                assert!(g.is_member(e), "{spec} {kind} {t}");
            }
            assert!(y.non_commuting(&g).is_empty(), "{spec} {kind}: {:?}", y.non_commuting(&g));
        }
    }

    #[test]
    fn x5_rejects_rank_two() {
        let g = group("SO5", "F3");
        assert!(matches!(classical_witness_set(&g, WitnessKind::X5), Err(Error::UnsupportedRep(_))));
        assert!(classical_witness_set(&g, WitnessKind::X1).is_err());
    }

    #[test]
    fn f4_set_over_f3() {
        let g = group("F4adj", "F3");
        let sys = g.sys();
        let [b2, b3, b4] = f4_exceptional_roots(&g).unwrap();
        let a1 = sys.simple(0);
        let four = [a1, b2, b3, b4];
        for &x in &four {
            for &y in &four {
                assert!(sys.add(x, y).is_none());
                if x != y {
                    assert!(sys.orthogonal(x, y));
                }
            }
        }
        let y = f4_witness_set(&g).unwrap();
        assert_eq!(y.len(), 24 - 4 + 3);
        assert!(y.non_commuting(&g).is_empty());
        let one = g.ring.one();
        let ops = g.ops();
        let xb3 = g.x(b3, &one);
        let xmb3 = g.x(sys.neg(b3), &one);
        assert!(!ops.commute(&xb3, &xmb3));
        for (i, &b) in [b2, b3, b4].iter().enumerate() {
            let xm = g.x(sys.neg(b), &one);
            for (j, &c) in [b2, b3, b4].iter().enumerate() {
                assert_eq!(ops.commute(&xm, &g.x(c, &one)), i != j);
            }
        }
        // Over F3 the pairs (a1, b_i) have no torus witness.
        assert!(torus_witness(sys, a1, b3, &g.ring).is_none());
    }

    #[test]
    fn torus_sets() {
        let g = group("SL3", "F5");
        let a = g.sys().simple(0);
        let y = torus_witness_set(&g, a).unwrap();
        assert_eq!(y.len(), 2);
        assert!(y.non_commuting(&g).is_empty());
        let y = augmented_torus_witness_set(&g, a).unwrap();
        assert!(y.non_commuting(&g).is_empty());
        let g2 = group("SL3", "F3");
        assert!(torus_witness_set(&g2, a).is_ok());
        assert!(matches!(torus_witness_set(&group("SL3", "F2"), a), Err(Error::MissingWitness(_, _))));
    }
}
