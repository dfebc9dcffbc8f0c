//! The definable pieces of `SL2(A)`: `H`, `U`, the product `*` on `U`,
//! `A_T`, `W` and the big cell `Gamma_1 = V H U`.

use std::collections::BTreeSet;

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::group::{Mat2, Sl2Group};
use crate::definability::FiniteGroup;
use crate::error::{Error, Result};
use crate::rings::{Code, Ring, RingElem};

/// `tau_p = 2` in odd characteristic and `3` in characteristic 2.
pub fn make_tau(ring: &Ring) -> Result<RingElem> {
    let parts = ring
        .components()
        .into_iter()
        .map(|c| {
            let t = c.from_int(if c.characteristic() == 2 { 3 } else { 2 });
            if t.is_unit() && !(&t * &t).is_one() {
                Ok(t)
            } else {
                Err(Error::NoTau(c.to_string()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    ring.tuple(&parts)
}

fn sorted(mut v: Vec<Mat2>) -> Vec<Mat2> {
    v.sort_unstable();
    v.dedup();
    v
}

/// `C(h(tau))` by scanning the group.
pub fn centralizer_h(g: &Sl2Group) -> Result<Vec<Mat2>> {
    let h = g.h(g.code(&make_tau(&g.ring)?))?;
    Ok(g.elements().iter().filter(|x| g.commute(x, &h)).copied().collect())
}

/// `h(A*)`.
pub fn torus(g: &Sl2Group) -> Vec<Mat2> {
    let t = g.t();
    sorted((0..t.size as Code).filter_map(|r| g.h(r).ok()).collect())
}

/// `u(A)` directly, in the order of the ring codes.
pub fn unipotents(g: &Sl2Group) -> Vec<Mat2> {
    (0..g.t().size as Code).map(|r| g.u(r)).collect()
}

/// `V = v(A) = U^w`.
pub fn lower_unipotents(g: &Sl2Group) -> Vec<Mat2> {
    sorted((0..g.t().size as Code).map(|r| g.v(r)).collect())
}

/// `r` with `u(r) = y`; a bijection in every quotient mode.
pub fn u_decode(g: &Sl2Group) -> FxHashMap<Mat2, Code> {
    (0..g.t().size as Code).map(|r| (g.u(r), r)).collect()
}

/// `U` as the union of `u^x u^-y u(s)` over `x, y in H` and `s in S`, with one
/// decomposition kept per element.
#[derive(Clone, Debug)]
pub struct UnipotentCover {
    pub s: Vec<Code>,
    pub members: Vec<Mat2>,
    /// `y -> (x, y', s)` with `y = u^x u^-y' u(s)`.
    pub decomposition: FxHashMap<Mat2, (Mat2, Mat2, Code)>,
    /// Ring elements `r` with `u(r)` not reached.
    pub missing: Vec<Code>,
}

#[derive(Clone, Debug, Serialize)]
pub struct UReport {
    pub s: Vec<String>,
    pub size: usize,
    pub expected: usize,
    pub missing: Vec<String>,
    pub complete: bool,
}

impl UnipotentCover {
    pub fn new(g: &Sl2Group, s: &[Code]) -> Result<Self> {
        let h = centralizer_h(g)?;
        let u = g.u(g.t().one);
        let ui = g.inv(&u);
        let mut decomposition = FxHashMap::default();
        for x in &h {
            let ux = g.conj(&u, x);
            for y in &h {
                let uy = g.conj(&ui, y);
                let p = g.mul(&ux, &uy);
                for &c in s {
                    decomposition.entry(g.mul(&p, &g.u(c))).or_insert((*x, *y, c));
                }
            }
        }
        let decode = u_decode(g);
        let members = sorted(decomposition.keys().copied().collect());
        let hit: BTreeSet<Code> = members.iter().filter_map(|m| decode.get(m).copied()).collect();
        let missing = (0..g.t().size as Code).filter(|r| !hit.contains(r)).collect();
        Ok(UnipotentCover { s: s.to_vec(), members, decomposition, missing })
    }

    pub fn report(&self, g: &Sl2Group) -> UReport {
        let expected = g.t().size;
        let strays = self.members.len() + self.missing.len() != expected;
        UReport {
            s: self.s.iter().map(|&c| g.elem(c).to_string()).collect(),
            size: self.members.len(),
            expected,
            missing: self.missing.iter().map(|&c| g.elem(c).to_string()).collect(),
            complete: self.missing.is_empty() && !strays,
        }
    }

    /// `y1 * y2` through the group words of [`star_words`].
    pub fn star(&self, g: &Sl2Group, y1: &Mat2, y2: &Mat2) -> Result<Mat2> {
        let get = |y: &Mat2| {
            self.decomposition.get(y).copied().ok_or_else(|| Error::Malformed(format!("{} is not in U", g.format(y))))
        };
        Ok(star_words(g, y1, get(y1)?, get(y2)?))
    }
}

/// `y3 = y1^x y1^-y u(s)^z u(s)^-r u(st)` where `y1 = u^z u^-r u(t)` and
/// `y2 = u^x u^-y u(s)`.
pub fn star_words(g: &Sl2Group, y1: &Mat2, (z, r, t): (Mat2, Mat2, Code), (x, y, s): (Mat2, Mat2, Code)) -> Mat2 {
    let us = g.u(s);
    let parts = [
        g.conj(y1, &x),
        g.conj(&g.inv(y1), &y),
        g.conj(&us, &z),
        g.conj(&g.inv(&us), &r),
        g.u(g.t().mul(s, t)),
    ];
    parts.iter().fold(g.identity(), |acc, p| g.mul(&acc, p))
}

pub fn define_u(g: &Sl2Group, s: &[Code]) -> Result<UReport> {
    Ok(UnipotentCover::new(g, s)?.report(g))
}

/// `u(b) * u(a)`; both arguments must lie in `U`.
pub fn mult_formula_p(g: &Sl2Group, s: &[Code], y1: &Mat2, y2: &Mat2) -> Result<Mat2> {
    UnipotentCover::new(g, s)?.star(g, y1, y2)
}

#[derive(Clone, Debug, Serialize)]
pub struct AtReport {
    pub t: Vec<i64>,
    /// Zeros of `prod (X - t)` in the ring.
    pub zeros: Vec<String>,
    /// Elements whose components all lie in the image of `T`.
    pub componentwise: usize,
    /// `u(r)` with `f(u(r)) = 1` under the group operations of `U`.
    pub in_group: usize,
    pub equal: bool,
}

/// Ring codes of `A_T`, computed through the ring operations.
pub fn a_t_codes(g: &Sl2Group, t: &[i64]) -> Vec<Code> {
    let ring = &g.ring;
    ring.elements()
        .expect("finite")
        .into_iter()
        .filter(|r| t.iter().map(|&c| r - &ring.from_int(c)).fold(ring.one(), |acc, f| &acc * &f).is_zero())
        .map(|r| g.code(&r))
        .collect()
}

/// `u(A_T)` inside `U`, evaluating `f` with the group product as addition and
/// `*` as multiplication.
pub fn u_a_t(g: &Sl2Group, cover: &UnipotentCover, t: &[i64]) -> Result<Vec<Mat2>> {
    let ring = &g.ring;
    let mut out = Vec::new();
    for y in &cover.members {
        let mut acc = g.u(g.t().one);
        for &c in t {
            let factor = g.mul(y, &g.inv(&g.u(g.code(&ring.from_int(c)))));
            acc = cover.star(g, &acc, &factor)?;
        }
        if acc == g.identity() {
            out.push(*y);
        }
    }
    Ok(sorted(out))
}

pub fn define_at(g: &Sl2Group, s: &[Code], t: &[i64]) -> Result<AtReport> {
    let ring = &g.ring;
    let zeros = a_t_codes(g, t);
    let images: Vec<BTreeSet<u32>> = ring
        .components()
        .iter()
        .map(|c| t.iter().map(|&x| c.from_int(x).code()).collect())
        .collect();
    let componentwise: Vec<Code> = ring
        .elements()?
        .into_iter()
        .filter(|r| r.components().iter().zip(&images).all(|(x, im)| im.contains(&x.code())))
        .map(|r| g.code(&r))
        .collect();
    let cover = UnipotentCover::new(g, s)?;
    let decode = u_decode(g);
    let mut in_group: Vec<Code> = u_a_t(g, &cover, t)?.iter().map(|y| decode[y]).collect();
    in_group.sort_unstable();
    Ok(AtReport {
        t: t.to_vec(),
        zeros: zeros.iter().map(|&c| g.elem(c).to_string()).collect(),
        componentwise: componentwise.len(),
        in_group: in_group.len(),
        equal: zeros == componentwise && zeros == in_group,
    })
}

/// The matrix that is `w` in the components flagged by `mask` and `1` elsewhere.
pub fn w_mask(g: &Sl2Group, mask: u32) -> Mat2 {
    let ring = &g.ring;
    let cs = ring.components();
    let entry = |on: i64, off: i64| {
        let parts: Vec<RingElem> =
            cs.iter().enumerate().map(|(i, c)| c.from_int(if mask >> i & 1 == 1 { on } else { off })).collect();
        g.code(&ring.tuple(&parts).expect("component rings"))
    };
    g.canon([entry(0, 1), entry(1, 0), entry(-1, 0), entry(0, 1)])
}

#[derive(Clone, Debug, Serialize)]
pub struct WReport {
    pub by_definition: usize,
    pub componentwise: usize,
    pub fourth_powers_trivial: bool,
    pub equal: bool,
}

/// `{y z^w y : y, z in u(A_{0,1})}` cut down to elements with `x^4 = 1`.
pub fn w_by_definition(g: &Sl2Group, cover: &UnipotentCover) -> Result<Vec<Mat2>> {
    let idem = u_a_t(g, cover, &[0, 1])?;
    let w = g.w();
    let mut out = Vec::new();
    for y in &idem {
        for z in &idem {
            let x = g.mul(&g.mul(y, &g.conj(z, &w)), y);
            if g.pow(&x, 4) == g.identity() {
                out.push(x);
            }
        }
    }
    Ok(sorted(out))
}

pub fn w_componentwise(g: &Sl2Group) -> Vec<Mat2> {
    sorted((0..1u32 << g.components()).map(|m| w_mask(g, m)).collect())
}

pub fn define_w(g: &Sl2Group, s: &[Code]) -> Result<WReport> {
    let cover = UnipotentCover::new(g, s)?;
    let a = w_by_definition(g, &cover)?;
    let b = w_componentwise(g);
    Ok(WReport {
        by_definition: a.len(),
        componentwise: b.len(),
        fourth_powers_trivial: b.iter().all(|x| g.pow(x, 4) == g.identity()),
        equal: a == b,
    })
}

/// `(v(-a^-1 c), h(a^-1), u(a^-1 b))` for `g = (a b; c d)` with `a` a unit.
pub fn gamma1_factor(g: &Sl2Group, m: &Mat2) -> Result<(Mat2, Mat2, Mat2)> {
    let t = g.t();
    let ai = t.inv(m[0]).ok_or_else(|| Error::NotInGamma1(g.format(m)))?;
    Ok((g.v(t.neg[t.mul(ai, m[2]) as usize]), g.h(ai)?, g.u(t.mul(ai, m[1]))))
}

/// `x in W` with `(g x)_11` a unit: `w` exactly in the components where `a_p = 0`.
pub fn w_correction(g: &Sl2Group, m: &Mat2) -> Mat2 {
    let parts = g.elem(m[0]).components();
    let mask = parts.iter().enumerate().filter(|(_, a)| a.is_zero()).fold(0u32, |acc, (i, _)| acc | 1 << i);
    w_mask(g, mask)
}

#[derive(Clone, Debug, Serialize)]
pub struct Gamma1Report {
    pub gamma1: usize,
    pub vhu: usize,
    pub equal: bool,
}

/// `{g : g_11 unit}` against the product set `V H U`.
pub fn gamma1_check(g: &Sl2Group) -> Result<Gamma1Report> {
    let t = g.t();
    let direct: Vec<Mat2> = g.elements().iter().filter(|m| t.inv(m[0]).is_some()).copied().collect();
    let (v, h, u) = (lower_unipotents(g), centralizer_h(g)?, unipotents(g));
    let mut vhu = Vec::with_capacity(v.len() * h.len() * u.len());
    for a in &v {
        for b in &h {
            let ab = g.mul(a, b);
            vhu.extend(u.iter().map(|c| g.mul(&ab, c)));
        }
    }
    let vhu = sorted(vhu);
    let direct = sorted(direct);
    Ok(Gamma1Report { gamma1: direct.len(), vhu: vhu.len(), equal: direct == vhu })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adelic::QuotientMode;

    fn group(ring: &str, mode: QuotientMode) -> Sl2Group {
        Sl2Group::parse(ring, mode, 1 << 22).unwrap()
    }

    #[test]
    fn tau() {
        let r = Ring::parse("F7xF11").unwrap();
        let tau = make_tau(&r).unwrap();
        assert_eq!(tau, r.tuple(&[Ring::parse("F7").unwrap().from_int(2), Ring::parse("F11").unwrap().from_int(2)]).unwrap());
        assert_eq!(make_tau(&Ring::parse("F7").unwrap()).unwrap().to_string(), "2");
        // 3 = 1 in a field of characteristic 2.
        assert!(matches!(make_tau(&Ring::parse("F4").unwrap()), Err(Error::NoTau(_))));
        assert_eq!(make_tau(&Ring::parse("F5xF7").unwrap()).unwrap().to_string(), "(2,2)");
        assert!(matches!(make_tau(&Ring::parse("F3").unwrap()), Err(Error::NoTau(_))));
        assert!(matches!(make_tau(&Ring::parse("F2").unwrap()), Err(Error::NoTau(_))));
    }

    #[test]
    fn centralizer_of_h_tau_is_the_torus() {
        for (ring, mode, n) in [
            ("F7", QuotientMode::Sl2, 6),
            ("F7", QuotientMode::Psl2, 3),
            ("F7", QuotientMode::Sl2ModMinusOne, 3),
            ("F11", QuotientMode::Sl2, 10),
            ("F7xF11", QuotientMode::Sl2, 60),
            ("F7xF11", QuotientMode::Psl2, 15),
        ] {
            let g = group(ring, mode);
            let c = centralizer_h(&g).unwrap();
            assert_eq!(sorted(c.clone()), torus(&g), "{ring} {mode}");
            assert_eq!(c.len(), n, "{ring} {mode}");
        }
    }

    #[test]
    fn u_from_conjugates() {
        for ring in ["F7", "F11", "F13", "F7xF11"] {
            for mode in [QuotientMode::Sl2, QuotientMode::Sl2ModMinusOne, QuotientMode::Psl2] {
                let g = group(ring, mode);
                let r = define_u(&g, &[0]).unwrap();
                assert!(r.complete, "{ring} {mode}: {r:?}");
                assert_eq!(r.size, g.t().size);
                assert_eq!(u_decode(&g).len(), g.t().size, "u is injective on {ring} {mode}");
            }
        }
        let g = group("F7", QuotientMode::Sl2);
        let r = define_u(&g, &[]).unwrap();
        assert!(!r.complete);
        assert_eq!(r.missing.len(), 7);
    }

    #[test]
    fn small_fields_need_more_of_s() {
        // Over F5 the differences of two nonzero squares are 0, 2 and 3.
        let g = group("F5", QuotientMode::Sl2);
        let r = define_u(&g, &[0]).unwrap();
        assert!(!r.complete);
        assert_eq!(r.missing, vec!["1", "4"]);
        let s: Vec<Code> = [0, 1, 4].into_iter().collect();
        assert!(define_u(&g, &s).unwrap().complete);
        let ring = g.ring.clone();
        let s: Vec<RingElem> = [0, 1, -1].iter().map(|&c| ring.from_int(c)).collect();
        for r in ring.elements().unwrap() {
            ring.decompose_square_diff(&r, &s).unwrap();
        }
        assert!(ring.decompose_square_diff(&ring.from_int(1), &s[..1]).is_err());
    }

    #[test]
    fn star_is_ring_multiplication() {
        let g = group("F7", QuotientMode::Sl2);
        assert_eq!(mult_formula_p(&g, &[0], &g.u(3), &g.u(5)).unwrap(), g.u(1));
        assert_eq!(mult_formula_p(&g, &[0], &g.u(3), &g.u(0)).unwrap(), g.u(0));
        assert!(mult_formula_p(&g, &[0], &g.w(), &g.u(0)).is_err());
        for (ring, mode, s) in [
            ("F7", QuotientMode::Psl2, vec![0]),
            ("F5", QuotientMode::Sl2, vec![0, 1, 4]),
            ("F7xF11", QuotientMode::Sl2, vec![0]),
            ("F7xF11", QuotientMode::Sl2ModMinusOne, vec![0]),
        ] {
            let g = group(ring, mode);
            let t = g.t();
            let cover = UnipotentCover::new(&g, &s).unwrap();
            for a in 0..t.size as Code {
                for b in 0..t.size as Code {
                    assert_eq!(cover.star(&g, &g.u(a), &g.u(b)).unwrap(), g.u(t.mul(a, b)), "{ring} {mode}");
                }
            }
        }
    }

    #[test]
    fn star_ignores_the_chosen_decomposition() {
        let g = group("F7", QuotientMode::Sl2);
        let t = g.t();
        let h = centralizer_h(&g).unwrap();
        let u = g.u(1);
        let ui = g.inv(&u);
        let decode = u_decode(&g);
        let split: Vec<(Mat2, Mat2, Mat2)> = h
            .iter()
            .flat_map(|x| h.iter().map(move |y| (*x, *y)))
            .map(|(x, y)| (g.mul(&g.conj(&u, &x), &g.conj(&ui, &y)), x, y))
            .collect();
        for (y1, z, r) in &split {
            for (y2, x, y) in split.iter().step_by(5) {
                let got = star_words(&g, y1, (*z, *r, 0), (*x, *y, 0));
                assert_eq!(got, g.u(t.mul(decode[y1], decode[y2])));
            }
        }
    }

    #[test]
    fn a_t() {
        let g = group("F7xF11", QuotientMode::Sl2);
        let r = define_at(&g, &[0], &[0, 1]).unwrap();
        assert!(r.equal);
        assert_eq!(r.componentwise, 4);
        let r = define_at(&g, &[0], &[0]).unwrap();
        assert!(r.equal);
        assert_eq!(r.zeros, vec!["(0,0)"]);
        let g = group("F7", QuotientMode::Psl2);
        let r = define_at(&g, &[0], &[0, 1, 2, 3, 4, 5, 6]).unwrap();
        assert!(r.equal);
        assert_eq!(r.componentwise, 7);
        let r = define_at(&g, &[0], &[0, 7]).unwrap();
        assert_eq!((r.componentwise, r.equal), (1, true));
    }

    #[test]
    fn w() {
        for (ring, mode, n) in [
            ("F7", QuotientMode::Sl2, 2),
            ("F7", QuotientMode::Psl2, 2),
            ("F7xF11", QuotientMode::Sl2, 4),
            ("F7xF11", QuotientMode::Psl2, 4),
        ] {
            let g = group(ring, mode);
            let r = define_w(&g, &[0]).unwrap();
            assert!(r.equal && r.fourth_powers_trivial, "{ring} {mode}: {r:?}");
            assert_eq!(r.componentwise, n);
        }
    }

    #[test]
    fn gamma1() {
        let g = group("F7", QuotientMode::Sl2);
        let f7 = g.ring.clone();
        let e = |n: i64| f7.from_int(n);
        // (2 1; 3 5) is singular mod 7; the same first row and column with d = 2 has determinant 1.
        let m = g.mat(&e(2), &e(1), &e(3), &e(2)).unwrap();
        let (v, h, u) = gamma1_factor(&g, &m).unwrap();
        // a^-1 = 4, so v(-4*3) = v(2), h(4), u(4).
        assert_eq!((v, h, u), (g.v(2), g.h(4).unwrap(), g.u(4)));
        assert_eq!(g.mul(&g.mul(&v, &h), &u), m);
        let one = g.identity();
        assert_eq!(gamma1_factor(&g, &one).unwrap(), (one, one, one));
        assert!(matches!(gamma1_factor(&g, &g.w()), Err(Error::NotInGamma1(_))));
        for (ring, mode) in [("F7", QuotientMode::Sl2), ("F7", QuotientMode::Psl2), ("F7xF11", QuotientMode::Sl2)] {
            let g = group(ring, mode);
            let r = gamma1_check(&g).unwrap();
            assert!(r.equal, "{ring} {mode}: {r:?}");
            for m in g.elements().iter().step_by(97) {
                let x = w_correction(&g, m);
                let gx = g.mul(m, &x);
                let (v, h, u) = gamma1_factor(&g, &gx).unwrap();
                assert_eq!(g.mul(&g.mul(&v, &h), &u), gx);
                assert!(w_componentwise(&g).contains(&x));
            }
        }
    }

    #[test]
    fn w_correction_rule() {
        let g = group("F7xF11", QuotientMode::Sl2);
        assert_eq!(w_correction(&g, &g.identity()), g.identity());
        assert_eq!(w_correction(&g, &g.w()), g.w());
        let mixed = g.mul(&w_mask(&g, 1), &g.u(5));
        assert_eq!(w_correction(&g, &mixed), w_mask(&g, 1));
    }
}
