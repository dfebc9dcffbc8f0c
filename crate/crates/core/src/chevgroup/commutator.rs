//! Chevalley's commutator formula
//! `[x_a(r), x_b(s)] = prod_{i,j>0} x_{ib+ja}(C_{ij} (-s)^i r^j)`
//! with `[g, h] = g^-1 h^-1 g h`, factors in increasing `i + j`.

use num_rational::Rational64;

use crate::rings::{Ring, RingElem};
use crate::rootsys::{Root, RootSystem};

/// `M_{a,b,i} = (1/i!) prod_{k<i} N_{a, ka+b}`.
fn m_coeff(sys: &RootSystem, a: Root, b: Root, i: i32) -> Rational64 {
    let mut prod = Rational64::from_integer(1);
    let mut fact = 1i64;
    for k in 0..i {
        let Some(kab) = sys.combo(k, a, 1, b) else { return Rational64::from_integer(0) };
        prod *= Rational64::from_integer(sys.structure_constant(a, kab) as i64);
        fact *= (k + 1) as i64;
    }
    prod / Rational64::from_integer(fact)
}

/// Integer coefficients `(i, j, C_ij)` for `[x_s(u), x_r(t)]`, one term per root
/// `i r + j s`.
pub fn commutator_coefficients(sys: &RootSystem, r: Root, s: Root) -> Vec<(i32, i32, Root, i64)> {
    let mut out = Vec::new();
    for total in 2..=5 {
        for i in 1..total {
            let j = total - i;
            let Some(root) = sys.combo(i, r, j, s) else { continue };
            let c = if j == 1 {
                m_coeff(sys, r, s, i)
            } else if i == 1 {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                m_coeff(sys, s, r, j) * Rational64::from_integer(sign)
            } else if (i, j) == (3, 2) {
                let rs = sys.add(r, s).expect("r + s is a root when 3r + 2s is");
                m_coeff(sys, rs, r, 2) / Rational64::from_integer(3)
            } else if (i, j) == (2, 3) {
                let rs = sys.add(r, s).expect("r + s is a root when 2r + 3s is");
                -m_coeff(sys, rs, s, 2) * Rational64::new(2, 3)
            } else {
                unreachable!("rank-2 root strings are short")
            };
            assert!(c.is_integer(), "non-integral commutator coefficient");
            out.push((i, j, root, c.to_integer()));
        }
    }
    out
}

/// Word for `[x_a(r), x_b(s)]`; zero factors are dropped.
pub fn commutator_word(sys: &RootSystem, a: Root, b: Root, r: &RingElem, s: &RingElem) -> Vec<(Root, RingElem)> {
    if a == sys.neg(b) || a == b {
        return Vec::new();
    }
    let ring: &Ring = r.ring();
    let minus_s = -s.clone();
    commutator_coefficients(sys, b, a)
        .into_iter()
        .map(|(i, j, root, c)| (root, ring.from_int(c) * minus_s.pow(i as u64) * r.pow(j as u64)))
        .filter(|(_, v)| !v.is_zero())
        .collect()
}
