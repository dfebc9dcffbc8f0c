//! `theta : SL2(A) -> SL2(U)` sending `(a b; c d)` to `(u(a) u(b); u(c) u(d))`,
//! built only from group operations: closed forms on `U`, `V`, `H`, `W` and
//! the factorization `g x = v h u` with `x in W`.
//!
//! `U` is a ring under the group product as addition and `*` as
//! multiplication; matrices over it multiply in the usual way.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::Serialize;

use super::group::{Mat2, Sl2Group};
use super::sets::{gamma1_factor, u_decode, w_correction, UnipotentCover};
use crate::definability::FiniteGroup;
use crate::error::{Error, Result};
use crate::rings::Code;

/// A 2x2 matrix with entries in `U`.
pub type ThetaMat = [Mat2; 4];

pub struct Sl2Theta<'a> {
    pub g: &'a Sl2Group,
    pub cover: UnipotentCover,
    decode: FxHashMap<Mat2, Code>,
    u: Mat2,
    w: Mat2,
    one: Mat2,
}

impl<'a> Sl2Theta<'a> {
    pub fn new(g: &'a Sl2Group, s: &[Code]) -> Result<Self> {
        let cover = UnipotentCover::new(g, s)?;
        if !cover.missing.is_empty() {
            return Err(Error::Malformed(format!("S does not generate U in {}", g.label())));
        }
        Ok(Sl2Theta { g, cover, decode: u_decode(g), u: g.u(g.t().one), w: g.w(), one: g.identity() })
    }

    fn add(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        self.g.mul(a, b)
    }

    fn neg(&self, a: &Mat2) -> Mat2 {
        self.g.inv(a)
    }

    fn star(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        self.cover.star(self.g, a, b).expect("entries lie in U")
    }

    pub fn matmul(&self, x: &ThetaMat, y: &ThetaMat) -> ThetaMat {
        let e = |i: usize, j: usize| self.add(&self.star(&x[2 * i], &y[j]), &self.star(&x[2 * i + 1], &y[2 + j]));
        [e(0, 0), e(0, 1), e(1, 0), e(1, 1)]
    }

    /// Inverse of a determinant-one matrix: `(d -b; -c a)`.
    pub fn adjugate(&self, x: &ThetaMat) -> ThetaMat {
        [x[3], self.neg(&x[1]), self.neg(&x[2]), x[0]]
    }

    /// `g in U`: `(u g; 1 u)`.
    pub fn on_u(&self, y: &Mat2) -> ThetaMat {
        [self.u, *y, self.one, self.u]
    }

    /// `g in V`: `(u 1; g^-w u)`.
    pub fn on_v(&self, v: &Mat2) -> ThetaMat {
        let c = self.g.conj(&self.g.inv(v), &self.w);
        [self.u, self.one, c, self.u]
    }

    /// `g in H`: `(y1 1; 1 y4)` for the `y4 in U` with
    /// `y1 = w^-1 y4^-1 w g y4^-1 w in U` and `y4 * y1 = u`.
    pub fn on_h(&self, h: &Mat2) -> Result<ThetaMat> {
        let g = self.g;
        let wi = g.inv(&self.w);
        for y4 in &self.cover.members {
            let y4i = g.inv(y4);
            let y1 = [wi, y4i, self.w, *h, y4i, self.w].iter().fold(self.one, |acc, m| g.mul(&acc, m));
            if self.decode.contains_key(&y1) && self.star(y4, &y1) == self.u {
                return Ok([y1, self.one, self.one, *y4]);
            }
        }
        Err(Error::Malformed(format!("{} is not in H", g.format(h))))
    }

    /// `x in W`: `(t t^-1 u; u^-1 t t)` with `t = u~(u^x)`.
    pub fn on_w(&self, x: &Mat2) -> Result<ThetaMat> {
        let g = self.g;
        let (_, _, t) = gamma1_factor(g, &g.conj(&self.u, x))?;
        Ok([t, g.mul(&g.inv(&t), &self.u), g.mul(&g.inv(&self.u), &t), t])
    }

    /// `theta(g) = theta(v~) theta(h~) theta(u~) theta(x)^-1` where `x in W` and
    /// `g x = v~ h~ u~`.
    pub fn apply(&self, m: &Mat2) -> Result<ThetaMat> {
        let g = self.g;
        let x = w_correction(g, m);
        let (v, h, u) = gamma1_factor(g, &g.mul(m, &x))?;
        let vhu = self.matmul(&self.matmul(&self.on_v(&v), &self.on_h(&h)?), &self.on_u(&u));
        Ok(self.matmul(&vhu, &self.adjugate(&self.on_w(&x)?)))
    }

    /// The matrix of ring elements `r` with `u(r)` the entries.
    pub fn decode(&self, x: &ThetaMat) -> Result<Mat2> {
        let r = x
            .iter()
            .map(|y| self.decode.get(y).copied().ok_or_else(|| Error::Malformed("entry outside U".into())))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.g.canon([r[0], r[1], r[2], r[3]]))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ThetaReport {
    pub group: String,
    pub round_trips: usize,
    pub round_trip_failures: usize,
    pub multiplicative_pairs: usize,
    pub multiplicative_failures: usize,
    /// The closed forms on `U`, `V` and `H` agree with the general assembly.
    pub restrictions_ok: bool,
    pub ok: bool,
}

/// Round trip on every element (or `limit` random ones), multiplicativity on
/// `pairs` random pairs.
pub fn theta_check(g: &Sl2Group, s: &[Code], limit: Option<usize>, pairs: usize, seed: u64) -> Result<ThetaReport> {
    let th = Sl2Theta::new(g, s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.order();
    let sample: Vec<usize> = match limit {
        Some(k) if k < n => (0..k).map(|_| rng.gen_range(0..n)).collect(),
        _ => (0..n).collect(),
    };
    let mut round_trip_failures = 0;
    for &i in &sample {
        let m = g.element(i);
        if th.decode(&th.apply(m)?)? != *m {
            round_trip_failures += 1;
        }
    }
    let mut multiplicative_failures = 0;
    for _ in 0..pairs {
        let (a, b) = (g.element(rng.gen_range(0..n)), g.element(rng.gen_range(0..n)));
        let lhs = th.decode(&th.apply(&g.mul(a, b))?)?;
        let rhs = th.decode(&th.matmul(&th.apply(a)?, &th.apply(b)?))?;
        if lhs != rhs {
            multiplicative_failures += 1;
        }
    }
    let t = g.t();
    let mut restrictions_ok = true;
    for r in 0..t.size as Code {
        restrictions_ok &= th.apply(&g.u(r))? == th.on_u(&g.u(r));
        restrictions_ok &= th.decode(&th.on_v(&g.v(r)))? == g.v(r);
        if let Ok(h) = g.h(r) {
            restrictions_ok &= th.decode(&th.on_h(&h)?)? == h;
        }
    }
    Ok(ThetaReport {
        group: g.label(),
        round_trips: sample.len(),
        round_trip_failures,
        multiplicative_pairs: pairs,
        multiplicative_failures,
        restrictions_ok,
        ok: round_trip_failures == 0 && multiplicative_failures == 0 && restrictions_ok,
    })
}
