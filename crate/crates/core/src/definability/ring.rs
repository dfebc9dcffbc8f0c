//! The ring interpreted on a root subgroup `R' = U_{a0}(R)`: addition is the
//! group product and multiplication is `m_{a0 a0 a0}`. On top of it, integer
//! polynomials, the entrywise map `theta: G(R) -> M_d(R')` and the probe for
//! elementary width that `theta` relies on.

use rustc_hash::FxHashMap;
use serde::Serialize;

use super::maps::RootMaps;
use crate::chevgroup::{Chevalley, EnumeratedGroup, GroupElem, IntMat};
use crate::error::{Error, Result};
use crate::rings::Code;
use crate::rootsys::Root;

/// `R'` with its operation tables. Carrier element `i` is `x_{a0}(i)`, so a
/// carrier index is also the ring code it encodes.
pub struct RingInGroup {
    pub group: Chevalley,
    pub base: Root,
    pub carrier: Vec<GroupElem>,
    index: FxHashMap<GroupElem, Code>,
    add: Vec<Code>,
    mul: Vec<Code>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RingAxiomReport {
    pub group: String,
    pub base_root: String,
    pub size: usize,
    pub add_associative: bool,
    pub add_commutative: bool,
    pub add_identity: bool,
    pub add_inverses: bool,
    pub mul_associative: bool,
    pub mul_commutative: bool,
    pub mul_identity: bool,
    pub distributive: bool,
    /// `r -> x_{a0}(r)` carries `+` and `*` of the ring to those of `R'`.
    pub isomorphism: bool,
    pub verdict: bool,
}

impl RingInGroup {
    pub fn new(group: Chevalley, base: Root) -> Result<Self> {
        let carrier = group.root_group(base);
        let n = carrier.len();
        let index: FxHashMap<GroupElem, Code> =
            carrier.iter().enumerate().map(|(i, x)| (x.clone(), i as Code)).collect();
        let lookup = |x: &GroupElem| {
            index.get(x).copied().ok_or_else(|| Error::Malformed(format!("{} left the carrier", group.format(x))))
        };
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        {
            let maps = RootMaps::new(&group);
            for x in &carrier {
                for y in &carrier {
                    add.push(lookup(&group.mul(x, y))?);
                    mul.push(lookup(&maps.m(base, base, base, x, y)?)?);
                }
            }
        }
        Ok(RingInGroup { group, base, carrier, index, add, mul })
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn add(&self, a: Code, b: Code) -> Code {
        self.add[a as usize * self.size() + b as usize]
    }

    pub fn mul(&self, a: Code, b: Code) -> Code {
        self.mul[a as usize * self.size() + b as usize]
    }

    /// Carrier index of a group element, if it lies in `R'`.
    pub fn index_of(&self, x: &[Code]) -> Option<Code> {
        self.index.get(x).copied()
    }

    fn zero(&self) -> Code {
        self.index[&self.group.identity()]
    }

    fn one(&self) -> Code {
        self.index[&self.group.x_code(self.base, self.group.t().one)]
    }

    fn neg(&self, a: Code) -> Code {
        self.index[&self.group.inv(&self.carrier[a as usize])]
    }

    /// `n * 1'` as a power of `1'` in the group.
    fn constant(&self, n: i64) -> Code {
        let ops = self.group.ops();
        let p = ops.pow(&self.carrier[self.one() as usize], n.unsigned_abs());
        let c = self.index[&p];
        if n < 0 {
            self.neg(c)
        } else {
            c
        }
    }

    /// `f(r')` by Horner's rule in `R'`; `coeffs[k]` is the coefficient of `X^k`.
    pub fn eval_poly(&self, coeffs: &[i64], r: Code) -> Code {
        coeffs.iter().rev().fold(self.zero(), |acc, &c| self.add(self.mul(acc, r), self.constant(c)))
    }

    pub fn check_axioms(&self) -> RingAxiomReport {
        let n = self.size() as Code;
        let all = || 0..n;
        let (zero, one) = (self.zero(), self.one());
        let t = self.group.t();
        let forall3 = |p: &dyn Fn(Code, Code, Code) -> bool| all().all(|a| all().all(|b| all().all(|c| p(a, b, c))));
        let forall2 = |p: &dyn Fn(Code, Code) -> bool| all().all(|a| all().all(|b| p(a, b)));
        let add_associative = forall3(&|a, b, c| self.add(self.add(a, b), c) == self.add(a, self.add(b, c)));
        let mul_associative = forall3(&|a, b, c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)));
        let distributive = forall3(&|a, b, c| {
            self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c))
                && self.mul(self.add(a, b), c) == self.add(self.mul(a, c), self.mul(b, c))
        });
        let add_commutative = forall2(&|a, b| self.add(a, b) == self.add(b, a));
        let mul_commutative = forall2(&|a, b| self.mul(a, b) == self.mul(b, a));
        let isomorphism = forall2(&|a, b| self.add(a, b) == t.add(a, b) && self.mul(a, b) == t.mul(a, b));
        let add_identity = all().all(|a| self.add(a, zero) == a);
        let add_inverses = all().all(|a| self.add(a, self.neg(a)) == zero);
        let mul_identity = all().all(|a| self.mul(a, one) == a);
        let verdict = add_associative
            && add_commutative
            && add_identity
            && add_inverses
            && mul_associative
            && mul_commutative
            && mul_identity
            && distributive
            && isomorphism;
        RingAxiomReport {
            group: self.group.label(),
            base_root: self.group.sys().name(self.base),
            size: self.size(),
            add_associative,
            add_commutative,
            add_identity,
            add_inverses,
            mul_associative,
            mul_commutative,
            mul_identity,
            distributive,
            isomorphism,
            verdict,
        }
    }
}

/// `f(r')` for an integer polynomial, built only from `+` and `m_{a0 a0 a0}`.
pub fn eval_poly_in_group(ring: &RingInGroup, coeffs: &[i64], r: &[Code]) -> Result<GroupElem> {
    let i = ring.index_of(r).ok_or_else(|| Error::Malformed(format!("{} is not in R'", ring.group.format(r))))?;
    Ok(ring.carrier[ring.eval_poly(coeffs, i) as usize].clone())
}

/// BFS over the group with every nontrivial root element as a generator.
pub struct WidthProbe {
    pub enumerated: EnumeratedGroup,
    /// `(a, r)` for each generator `x_a(r)`.
    pub labels: Vec<(Root, Code)>,
    /// Largest word length needed.
    pub width: usize,
    /// Number of elements at each word length.
    pub histogram: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WidthReport {
    pub group: String,
    pub order: usize,
    pub width: usize,
    pub histogram: Vec<usize>,
}

impl WidthProbe {
    /// Shortest word in root elements for `g`.
    pub fn word(&self, g: &[Code]) -> Option<Vec<(Root, Code)>> {
        let i = self.enumerated.index_of(g)?;
        Some(self.enumerated.word(i).into_iter().map(|k| self.labels[k]).collect())
    }

    pub fn report(&self) -> WidthReport {
        WidthReport {
            group: self.enumerated.group.label(),
            order: self.enumerated.order(),
            width: self.width,
            histogram: self.histogram.clone(),
        }
    }
}

pub fn width_probe(group: Chevalley, cap: usize) -> Result<WidthProbe> {
    let n = group.t().size as Code;
    let labels: Vec<(Root, Code)> = group.sys().roots().flat_map(|a| (1..n).map(move |r| (a, r))).collect();
    let gens = labels.iter().map(|&(a, r)| group.x_code(a, r)).collect();
    let enumerated = EnumeratedGroup::new(group, gens, cap)?;
    let width = enumerated.depth.iter().copied().max().unwrap_or(0) as usize;
    let mut histogram = vec![0; width + 1];
    for &d in &enumerated.depth {
        histogram[d as usize] += 1;
    }
    Ok(WidthProbe { enumerated, labels, width, histogram })
}

/// `theta: G(R) -> M_d(R')`, entry by entry, through words in root elements.
pub struct Theta<'a> {
    pub ring: &'a RingInGroup,
    pub width: &'a WidthProbe,
    maps: RootMaps<'a>,
}

/// A `d x d` matrix over `R'`, stored as carrier indices.
pub type ThetaMatrix = Vec<Code>;

impl<'a> Theta<'a> {
    pub fn new(ring: &'a RingInGroup, width: &'a WidthProbe) -> Self {
        Theta { ring, width, maps: RootMaps::new(&ring.group) }
    }

    fn d(&self) -> usize {
        self.ring.group.d()
    }

    pub fn identity(&self) -> ThetaMatrix {
        let d = self.d();
        let (zero, one) = (self.ring.zero(), self.ring.one());
        (0..d * d).map(|k| if k / d == k % d { one } else { zero }).collect()
    }

    pub fn matmul(&self, a: &[Code], b: &[Code]) -> ThetaMatrix {
        let d = self.d();
        let r = self.ring;
        let mut out = vec![r.zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                out[i * d + j] = (0..d).fold(r.zero(), |acc, k| r.add(acc, r.mul(a[i * d + k], b[k * d + j])));
            }
        }
        out
    }

    /// `theta(x_a(r))_{ij} = (delta_ij + sum_k (X_a^k / k!)_{ij} r^k)'` with
    /// `r' = c_{a a0}(x_a(r))`.
    pub fn root_element(&self, a: Root, x: &[Code]) -> Result<ThetaMatrix> {
        let ring = self.ring;
        let r = self.maps.c(a, ring.base, x)?;
        let r = ring.index_of(&r).expect("c lands in R'");
        let divided = &ring.group.rep.divided[a.0];
        let d = self.d();
        Ok((0..d * d)
            .map(|k| {
                let (i, j) = (k / d, k % d);
                let mut coeffs = vec![(i == j) as i64];
                coeffs.extend(divided.iter().map(|m| m.get(i, j)));
                ring.eval_poly(&coeffs, r)
            })
            .collect())
    }

    pub fn word(&self, word: &[(Root, Code)]) -> Result<ThetaMatrix> {
        let g = &self.ring.group;
        word.iter().try_fold(self.identity(), |acc, &(a, r)| Ok(self.matmul(&acc, &self.root_element(a, &g.x_code(a, r))?)))
    }

    pub fn apply(&self, g: &[Code]) -> Result<ThetaMatrix> {
        let word = self.width.word(g).ok_or_else(|| {
            Error::Malformed(format!(
                "{} is not a product of {} root elements",
                self.ring.group.format(g),
                self.width.width
            ))
        })?;
        self.word(&word)
    }

    /// Reads the ring elements encoded by the carrier entries.
    pub fn decode(&self, m: &[Code]) -> GroupElem {
        m.iter().map(|&i| self.ring.group.code(&self.ring.group.ring.elem(i as u32))).collect()
    }
}

/// `X_a^k / k!` computed from `X_a` by integer matrix powers.
fn divided_powers(x: &IntMat) -> Vec<IntMat> {
    let mut out = Vec::new();
    let mut p = x.clone();
    let mut fact = 1i64;
    for k in 1.. {
        if p.is_zero() {
            break;
        }
        fact *= k;
        out.push(p.div_exact(fact).expect("divided powers are integral"));
        p = p.mul(x);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct PsiReport {
    pub group: String,
    pub root: String,
    /// Highest power of `X_a` that is nonzero.
    pub degree: usize,
    pub checked: usize,
    pub verdict: bool,
}

/// `psi(r) = x_a(r)` equals the divided-power polynomial
/// `1 + sum_k r^k X_a^k / k!` entrywise for every `r`.
pub fn psi_check(g: &Chevalley, a: Root) -> Result<PsiReport> {
    let polys = divided_powers(&g.rep.root_matrices[a.0]);
    let d = g.d();
    let ring = &g.ring;
    let mut ok = true;
    let elements = ring.elements()?;
    for r in &elements {
        let x = g.entries(&g.x(a, r));
        for i in 0..d {
            for j in 0..d {
                let mut v = ring.from_int((i == j) as i64);
                for (k, m) in polys.iter().enumerate() {
                    v = v + ring.from_int(m.get(i, j)) * r.pow(k as u64 + 1);
                }
                ok &= v == x[i * d + j];
            }
        }
    }
    Ok(PsiReport {
        group: g.label(),
        root: g.sys().name(a),
        degree: polys.len(),
        checked: elements.len(),
        verdict: ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevgroup::DEFAULT_CAP;
    use crate::rings::Ring;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn group(spec: &str, q: &str) -> Chevalley {
        Chevalley::parse(spec, Ring::parse(q).unwrap()).unwrap()
    }

    #[test]
    fn ring_axioms_hold() {
        for (spec, q, long) in [
            ("SL3", "F2", true),
            ("SL3", "F3", true),
            ("SL3", "F4", true),
            ("SL3", "Z/4", true),
            ("SL3", "Z/6", true),
            ("SL3", "F9", true),
            ("SL3", "F81", true),
            ("Sp4", "F3", true),
            ("Sp4", "F3", false),
            ("Sp4", "F8", false),
            ("G2adj", "F3", false),
        ] {
            let g = group(spec, q);
            let sys = g.sys();
            let base = sys.roots().find(|&a| sys.is_long(a) == long).unwrap();
            let rep = RingInGroup::new(g, base).unwrap().check_axioms();
            assert!(rep.verdict, "{rep:?}");
        }
    }

    #[test]
    fn polynomials() {
        let g = group("SL3", "F3");
        let a = g.sys().simple(0);
        let r = RingInGroup::new(g.clone(), a).unwrap();
        let x = |n: i64| g.x(a, &g.ring.from_int(n));
        assert_eq!(eval_poly_in_group(&r, &[1, 0, 1], &x(2)).unwrap(), x(2));
        for n in 0..3 {
            assert_eq!(eval_poly_in_group(&r, &[0, 1], &x(n)).unwrap(), x(n));
            assert_eq!(eval_poly_in_group(&r, &[], &x(n)).unwrap(), x(0));
            assert_eq!(eval_poly_in_group(&r, &[-4, 0, 0, 7], &x(n)).unwrap(), x(7 * n * n * n - 4));
        }
        assert!(eval_poly_in_group(&r, &[1], &g.x(g.sys().simple(1), &g.ring.one())).is_err());
    }

    /// Word length by repeated set products `X, X^2, ...` until the group is covered.
    fn width_by_powers(g: &Chevalley, order: usize) -> usize {
        let gens: Vec<GroupElem> = g.sys().roots().flat_map(|a| g.root_group(a)).collect();
        let mut reached: std::collections::BTreeSet<GroupElem> = [g.identity()].into();
        let mut k = 0;
        while reached.len() < order {
            reached = reached.iter().flat_map(|x| gens.iter().map(move |y| g.mul(x, y))).collect();
            k += 1;
        }
        k
    }

    #[test]
    fn width_small_groups() {
        let p = width_probe(group("SL3", "F2"), DEFAULT_CAP).unwrap();
        assert_eq!(p.enumerated.order(), 168);
        assert_eq!(p.histogram.iter().sum::<usize>(), 168);
        assert_eq!(p.width, width_by_powers(&p.enumerated.group, 168));
        assert_eq!(p.width, 6);
        let g = &p.enumerated.group;
        for x in g.root_group(g.sys().simple(1)) {
            assert!(p.word(&x).unwrap().len() <= 1);
        }
        let p = width_probe(group("Sp4", "F3"), DEFAULT_CAP).unwrap();
        assert_eq!(p.enumerated.order(), 51840);
        assert_eq!(p.width, width_by_powers(&p.enumerated.group, 51840));
        assert_eq!(p.width, 7);
    }

    #[test]
    fn theta_round_trip_and_multiplicative() {
        let g = group("SL3", "F3");
        let probe = width_probe(g.clone(), DEFAULT_CAP).unwrap();
        let ring = RingInGroup::new(g.clone(), g.sys().highest_root()).unwrap();
        let theta = Theta::new(&ring, &probe);
        assert_eq!(theta.apply(&g.identity()).unwrap(), theta.identity());
        let a = g.sys().simple(1);
        let x = g.x(a, &g.ring.from_int(2));
        assert_eq!(theta.decode(&theta.root_element(a, &x).unwrap()), x);
        let images: Vec<ThetaMatrix> = probe.enumerated.elements.iter().map(|e| theta.apply(e).unwrap()).collect();
        for (e, m) in probe.enumerated.elements.iter().zip(&images) {
            assert_eq!(&theta.decode(m), e);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = images.len();
        for _ in 0..2000 {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let gh = g.mul(&probe.enumerated.elements[i], &probe.enumerated.elements[j]);
            let k = probe.enumerated.index_of(&gh).unwrap();
            assert_eq!(images[k], theta.matmul(&images[i], &images[j]));
        }
    }

    #[test]
    fn theta_on_sp4_short_base() {
        let g = group("Sp4", "F3");
        let probe = width_probe(g.clone(), DEFAULT_CAP).unwrap();
        let short = g.sys().roots().find(|&a| g.sys().is_short(a)).unwrap();
        let ring = RingInGroup::new(g.clone(), short).unwrap();
        let theta = Theta::new(&ring, &probe);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let els = &probe.enumerated.elements;
        for _ in 0..1000 {
            let (i, j) = (rng.gen_range(0..els.len()), rng.gen_range(0..els.len()));
            let (ti, tj) = (theta.apply(&els[i]).unwrap(), theta.apply(&els[j]).unwrap());
            assert_eq!(theta.decode(&ti), els[i]);
            assert_eq!(theta.apply(&g.mul(&els[i], &els[j])).unwrap(), theta.matmul(&ti, &tj));
        }
    }

    #[test]
    fn psi_matches_divided_powers() {
        for (spec, q) in [("SL3", "F5"), ("Sp4", "Z/9"), ("G2adj", "F7"), ("SO7", "Z/4"), ("B2adj", "F4")] {
            let g = group(spec, q);
            for a in g.sys().roots() {
                let rep = psi_check(&g, a).unwrap();
                assert!(rep.verdict, "{rep:?}");
            }
        }
        let g = group("G2adj", "F7");
        let short = g.sys().simple(0);
        assert_eq!(psi_check(&g, short).unwrap().degree, 3);
    }
}
