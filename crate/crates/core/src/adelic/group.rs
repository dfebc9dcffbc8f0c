//! `SL2(A)`, `SL2(A)/<-1>` and `PSL2(A)` for a finite product `A` of finite
//! fields. Elements of a quotient are stored as their lexicographically least
//! representative `BZ`.

use std::fmt;
use std::str::FromStr;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::definability::FiniteGroup;
use crate::error::{Error, Result};
use crate::rings::{Code, Ring, RingElem, Tables};

/// `(a, b, c, d)` for the matrix `(a b; c d)`.
pub type Mat2 = [Code; 4];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuotientMode {
    #[serde(rename = "SL2")]
    Sl2,
    #[serde(rename = "SL2modZ")]
    Sl2ModMinusOne,
    #[serde(rename = "PSL2")]
    Psl2,
}

impl fmt::Display for QuotientMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuotientMode::Sl2 => "SL2",
            QuotientMode::Sl2ModMinusOne => "SL2modZ",
            QuotientMode::Psl2 => "PSL2",
        })
    }
}

impl FromStr for QuotientMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "SL2" => Ok(QuotientMode::Sl2),
            "SL2modZ" | "SL2mod-1" => Ok(QuotientMode::Sl2ModMinusOne),
            "PSL2" => Ok(QuotientMode::Psl2),
            _ => Err(Error::Config(format!("unknown quotient mode `{s}` (SL2, SL2modZ, PSL2)"))),
        }
    }
}

pub struct Sl2Group {
    pub ring: Ring,
    pub mode: QuotientMode,
    /// Scalars `z` with `zI` in the subgroup factored out.
    pub center: Vec<Code>,
    elements: Vec<Mat2>,
    index: FxHashMap<Mat2, u32>,
}

impl Sl2Group {
    /// Every field component must be enumerable; the whole group is listed.
    pub fn new(ring: Ring, mode: QuotientMode, cap: usize) -> Result<Self> {
        if !ring.components().iter().all(|c| c.is_field()) {
            return Err(Error::RingSpec(format!("{ring} is not a product of finite fields")));
        }
        let t = ring.tables()?;
        let n = t.size as Code;
        let one = t.one;
        let minus_one = t.neg[one as usize];
        let center: Vec<Code> = match mode {
            QuotientMode::Sl2 => vec![one],
            QuotientMode::Sl2ModMinusOne => {
                let mut c = vec![one, minus_one];
                c.dedup();
                c
            }
            QuotientMode::Psl2 => (0..n).filter(|&z| t.mul(z, z) == one).collect(),
        };
        let mut g = Sl2Group { ring: ring.clone(), mode, center, elements: Vec::new(), index: FxHashMap::default() };
        let push = |m: Mat2, g: &mut Sl2Group| -> Result<()> {
            let m = g.canon(m);
            if !g.index.contains_key(&m) {
                if g.elements.len() >= cap {
                    return Err(Error::CapExceeded { cap, reached: g.elements.len() });
                }
                g.index.insert(m, g.elements.len() as u32);
                g.elements.push(m);
            }
            Ok(())
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let rhs = t.add(one, t.mul(b, c));
                    match t.inv(a) {
                        Some(ai) => push([a, b, c, t.mul(rhs, ai)], &mut g)?,
                        None => {
                            for d in 0..n {
                                if t.mul(a, d) == rhs {
                                    push([a, b, c, d], &mut g)?;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn parse(ring: &str, mode: QuotientMode, cap: usize) -> Result<Self> {
        Self::new(Ring::parse(ring)?, mode, cap)
    }

    pub fn t(&self) -> &Tables {
        self.ring.tables().expect("checked at construction")
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn index_of(&self, m: &Mat2) -> Option<usize> {
        self.index.get(m).map(|&i| i as usize)
    }

    pub fn code(&self, r: &RingElem) -> Code {
        r.code() as Code
    }

    pub fn elem(&self, c: Code) -> RingElem {
        self.ring.elem(c as u32)
    }

    /// Least representative of the coset `mZ`.
    pub fn canon(&self, m: Mat2) -> Mat2 {
        let t = self.t();
        self.center.iter().map(|&z| m.map(|x| t.mul(x, z))).min().expect("center contains 1")
    }

    pub fn raw_mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        let t = self.t();
        let dot = |p: Code, q: Code, r: Code, s: Code| t.add(t.mul(p, q), t.mul(r, s));
        [
            dot(x[0], y[0], x[1], y[2]),
            dot(x[0], y[1], x[1], y[3]),
            dot(x[2], y[0], x[3], y[2]),
            dot(x[2], y[1], x[3], y[3]),
        ]
    }

    pub fn mat(&self, a: &RingElem, b: &RingElem, c: &RingElem, d: &RingElem) -> Result<Mat2> {
        let m = [a, b, c, d].map(|x| self.code(x));
        let t = self.t();
        if t.sub(t.mul(m[0], m[3]), t.mul(m[1], m[2])) != t.one {
            return Err(Error::Malformed(format!("{} does not have determinant 1", self.format_raw(&m))));
        }
        Ok(self.canon(m))
    }

    /// `u(r) = (1 r; 0 1)`.
    pub fn u(&self, r: Code) -> Mat2 {
        let one = self.t().one;
        self.canon([one, r, 0, one])
    }

    /// `v(r) = (1 0; -r 1)`.
    pub fn v(&self, r: Code) -> Mat2 {
        let t = self.t();
        self.canon([t.one, 0, t.neg[r as usize], t.one])
    }

    /// `h(r) = (r^-1 0; 0 r)` for a unit `r`.
    pub fn h(&self, r: Code) -> Result<Mat2> {
        let t = self.t();
        let ri = t.inv(r).ok_or_else(|| Error::NotUnit(self.elem(r).to_string()))?;
        Ok(self.canon([ri, 0, 0, r]))
    }

    /// `w = u v u = (0 1; -1 0)`.
    pub fn w(&self) -> Mat2 {
        let t = self.t();
        self.canon([0, t.one, t.neg[t.one as usize], 0])
    }

    /// `x^-1 g x`.
    pub fn conj(&self, g: &Mat2, x: &Mat2) -> Mat2 {
        FiniteGroup::mul(self, &FiniteGroup::mul(self, &FiniteGroup::inv(self, x), g), x)
    }

    pub fn pow(&self, g: &Mat2, e: usize) -> Mat2 {
        (0..e).fold(FiniteGroup::identity(self), |acc, _| FiniteGroup::mul(self, &acc, g))
    }

    /// Number of field components of the ring.
    pub fn components(&self) -> usize {
        self.ring.components().len()
    }

    fn format_raw(&self, m: &Mat2) -> String {
        format!("({} {}; {} {})", self.elem(m[0]), self.elem(m[1]), self.elem(m[2]), self.elem(m[3]))
    }

    pub fn format(&self, m: &Mat2) -> String {
        self.format_raw(m)
    }
}

impl FiniteGroup for Sl2Group {
    type Elem = Mat2;

    fn order(&self) -> usize {
        self.elements.len()
    }

    fn element(&self, i: usize) -> &Mat2 {
        &self.elements[i]
    }

    fn index_of(&self, x: &Mat2) -> Option<usize> {
        Sl2Group::index_of(self, x)
    }

    fn identity(&self) -> Mat2 {
        let one = self.t().one;
        self.canon([one, 0, 0, one])
    }

    fn mul(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        self.canon(self.raw_mul(a, b))
    }

    fn inv(&self, a: &Mat2) -> Mat2 {
        let t = self.t();
        self.canon([a[3], t.neg[a[1] as usize], t.neg[a[2] as usize], a[0]])
    }

    fn label(&self) -> String {
        format!("{}({})", self.mode, self.ring)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        for (ring, mode, n) in [
            ("F7", QuotientMode::Sl2, 336),
            ("F7", QuotientMode::Sl2ModMinusOne, 168),
            ("F7", QuotientMode::Psl2, 168),
            ("F7xF11", QuotientMode::Sl2, 336 * 1320),
            ("F7xF11", QuotientMode::Sl2ModMinusOne, 336 * 1320 / 2),
            ("F7xF11", QuotientMode::Psl2, 336 * 1320 / 4),
        ] {
            let g = Sl2Group::parse(ring, mode, 1 << 22).unwrap();
            assert_eq!(g.order(), n, "{ring} {mode}");
        }
    }

    #[test]
    fn generators() {
        let g = Sl2Group::parse("F7", QuotientMode::Sl2, 1 << 20).unwrap();
        let (u, v) = (g.u(1), g.v(1));
        let w = g.mul(&g.mul(&u, &v), &u);
        assert_eq!(w, g.w());
        assert_eq!(g.pow(&w, 2), g.inv(&g.identity()).map(|x| g.t().neg[x as usize]));
        assert_eq!(g.pow(&w, 4), g.identity());
        // u(r)^h(m) = u(r m^2)
        let h3 = g.h(3).unwrap();
        assert_eq!(g.conj(&g.u(2), &h3), g.u(2 * 9 % 7));
        assert!(g.h(0).is_err());
        assert!("SL3".parse::<QuotientMode>().is_err());
        assert!(Sl2Group::parse("Z/4", QuotientMode::Sl2, 100).is_err());
        assert!(matches!(Sl2Group::parse("F7", QuotientMode::Sl2, 100), Err(Error::CapExceeded { .. })));
    }
}
