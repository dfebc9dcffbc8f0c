//! Exact commutative-ring arithmetic over finite fields, the integers, `Z/n` and
//! finite direct products.
//!
//! Every finite ring numbers its elements `0..size` ("codes"). Code `0` is
//! always zero. Finite-field codes are `sum c_i p^i` over the coefficients of
//! the reduced polynomial; product codes are mixed radix with the first
//! component least significant. Rings of at most [`TABLE_MAX`] elements carry
//! precomputed operation tables which the group layer reads directly.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Code = u16;

/// Largest ring for which operation tables are built.
pub const TABLE_MAX: usize = 2048;
/// Largest finite ring the crate will construct.
pub const FINITE_MAX: usize = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RingKind {
    /// `modulus` holds the coefficients of a monic irreducible, constant term first.
    FiniteField { p: u32, degree: u32, modulus: Vec<u32> },
    Integers,
    Modular(u32),
    Product(Vec<Ring>),
}

/// Operation tables indexed by element code.
#[derive(Debug)]
pub struct Tables {
    pub size: usize,
    pub one: Code,
    pub add: Vec<Code>,
    pub mul: Vec<Code>,
    pub neg: Vec<Code>,
    /// `Code::MAX` marks a non-unit.
    pub inv: Vec<Code>,
}

impl Tables {
    #[inline]
    pub fn add(&self, a: Code, b: Code) -> Code {
        self.add[a as usize * self.size + b as usize]
    }
    #[inline]
    pub fn mul(&self, a: Code, b: Code) -> Code {
        self.mul[a as usize * self.size + b as usize]
    }
    #[inline]
    pub fn sub(&self, a: Code, b: Code) -> Code {
        self.add(a, self.neg[b as usize])
    }
    #[inline]
    pub fn inv(&self, a: Code) -> Option<Code> {
        let i = self.inv[a as usize];
        (i != Code::MAX).then_some(i)
    }
}

#[derive(Debug)]
struct Inner {
    kind: RingKind,
    size: Option<usize>,
    tables: Option<Tables>,
}

#[derive(Clone)]
pub struct Ring(Arc<Inner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.kind == other.0.kind
    }
}
impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({self})")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.kind {
            RingKind::FiniteField { p, degree, .. } => write!(f, "F{}", p.pow(*degree)),
            RingKind::Integers => write!(f, "Z"),
            RingKind::Modular(n) => write!(f, "Z/{n}"),
            RingKind::Product(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                write!(f, "{}", parts.join("x"))
            }
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ring::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Canonical representative of an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Payload {
    /// Coefficients over the prime field, constant term first, trailing zeros trimmed.
    Poly(Vec<u32>),
    Int(BigInt),
    Residue(u32),
    Tuple(Vec<Payload>),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Val {
    Code(u32),
    Int(BigInt),
}

#[derive(Clone, PartialEq, Eq)]
pub struct RingElem {
    ring: Ring,
    val: Val,
}

impl std::hash::Hash for RingElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.val.hash(state)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisProfile {
    pub is_domain: bool,
    pub characteristic: u64,
    pub units_count: usize,
    /// At least two units.
    pub units_condition: bool,
    /// The unit group is exactly `{1, -1}`.
    pub units_eq_pm1: bool,
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut f) = (q, 0);
    while r % p == 0 {
        r /= p;
        f += 1;
    }
    (r == 1).then_some((p, f))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn digits(mut c: u32, p: u32, n: usize) -> Vec<u32> {
    (0..n)
        .map(|_| {
            let d = c % p;
            c /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p`; both constant-first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let off = r.len() - dm;
            for (i, &mi) in m[..dm].iter().enumerate() {
                r[off + i] = (r[off + i] + (p - lead) * mi) % p;
            }
        }
    }
    r
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let n = m.len() - 1;
    for d in 1..=n / 2 {
        for i in 0..p.pow(d as u32) {
            let mut g = digits(i, p, d);
            g.push(1);
            if poly_rem(m, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, f: u32) -> Vec<u32> {
    (0..p.pow(f))
        .map(|i| {
            let mut m = digits(i, p, f as usize);
            m.push(1);
            m
        })
        .find(|m| is_irreducible(m, p))
        .expect("irreducible polynomials exist in every degree")
}

impl Ring {
    fn build(kind: RingKind) -> Ring {
        let size = match &kind {
            RingKind::FiniteField { p, degree, .. } => Some(p.pow(*degree) as usize),
            RingKind::Integers => None,
            RingKind::Modular(n) => Some(*n as usize),
            RingKind::Product(cs) => cs.iter().try_fold(1usize, |acc, c| Some(acc * c.size()?)),
        };
        let mut inner = Inner { kind, size, tables: None };
        if let Some(n) = size.filter(|&n| n <= TABLE_MAX) {
            inner.tables = Some(Self::make_tables(&inner.kind, n));
        }
        Ring(Arc::new(inner))
    }

    fn make_tables(kind: &RingKind, n: usize) -> Tables {
        if let RingKind::Product(cs) = kind {
            if let Ok(ts) = cs.iter().map(|c| c.tables()).collect::<Result<Vec<_>>>() {
                return Self::product_tables(cs, &ts, n);
            }
        }
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in a..n {
                let s = raw_add(kind, a as u32, b as u32) as Code;
                let m = raw_mul(kind, a as u32, b as u32) as Code;
                add[a * n + b] = s;
                add[b * n + a] = s;
                mul[a * n + b] = m;
                mul[b * n + a] = m;
            }
        }
        let neg = (0..n).map(|a| raw_neg(kind, a as u32) as Code).collect();
        let one = raw_one(kind) as Code;
        let mut inv = vec![Code::MAX; n];
        for a in 0..n {
            if inv[a] != Code::MAX {
                continue;
            }
            if let Some(b) = (0..n).find(|&b| mul[a * n + b] == one) {
                inv[a] = b as Code;
                inv[b] = a as Code;
            }
        }
        Tables { size: n, one, add, mul, neg, inv }
    }

    fn product_tables(cs: &[Ring], ts: &[&Tables], n: usize) -> Tables {
        let parts: Vec<Vec<u32>> = (0..n as u32).map(|c| split(cs, c)).collect();
        let combine = |a: usize, b: usize, f: &dyn Fn(&Tables, Code, Code) -> Code| -> Code {
            let ps: Vec<u32> = ts
                .iter()
                .enumerate()
                .map(|(i, t)| f(t, parts[a][i] as Code, parts[b][i] as Code) as u32)
                .collect();
            join(cs, &ps) as Code
        };
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = combine(a, b, &|t, x, y| t.add(x, y));
                mul[a * n + b] = combine(a, b, &|t, x, y| t.mul(x, y));
            }
        }
        let neg = (0..n).map(|a| combine(a, a, &|t, x, _| t.neg[x as usize])).collect();
        let inv = (0..n)
            .map(|a| {
                let ps: Option<Vec<u32>> =
                    ts.iter().enumerate().map(|(i, t)| t.inv(parts[a][i] as Code).map(u32::from)).collect();
                ps.map_or(Code::MAX, |p| join(cs, &p) as Code)
            })
            .collect();
        let one = join(cs, &vec![1; cs.len()]) as Code;
        Tables { size: n, one, add, mul, neg, inv }
    }

    /// `F_q` with the smallest monic irreducible modulus of the right degree.
    pub fn finite_field(q: u32) -> Result<Ring> {
        let (p, f) = prime_power(q).ok_or_else(|| Error::RingSpec(format!("F{q}")))?;
        if q as usize > FINITE_MAX {
            return Err(Error::RingTooLarge(q as usize));
        }
        let modulus = smallest_irreducible(p, f);
        Ok(Self::build(RingKind::FiniteField { p, degree: f, modulus }))
    }

    /// `F_p^f` with an explicit modulus, constant term first; irreducibility is checked.
    pub fn finite_field_with_modulus(p: u32, modulus: Vec<u32>) -> Result<Ring> {
        let bad = || Error::RingSpec(format!("F{p}[x]/({modulus:?})"));
        if !is_prime(p) || modulus.len() < 2 || modulus.last() != Some(&1) {
            return Err(bad());
        }
        if modulus.iter().any(|&c| c >= p) || !is_irreducible(&modulus, p) {
            return Err(bad());
        }
        let degree = (modulus.len() - 1) as u32;
        if (p as usize).pow(degree) > FINITE_MAX {
            return Err(Error::RingTooLarge((p as usize).pow(degree)));
        }
        Ok(Self::build(RingKind::FiniteField { p, degree, modulus }))
    }

    pub fn integers() -> Ring {
        Self::build(RingKind::Integers)
    }

    pub fn modular(n: u32) -> Result<Ring> {
        if n < 2 {
            return Err(Error::RingSpec(format!("Z/{n}")));
        }
        if n as usize > FINITE_MAX {
            return Err(Error::RingTooLarge(n as usize));
        }
        Ok(Self::build(RingKind::Modular(n)))
    }

    pub fn product(components: Vec<Ring>) -> Result<Ring> {
        if components.is_empty() {
            return Err(Error::RingSpec("empty product".into()));
        }
        let mut size = 1usize;
        for c in &components {
            let s = c.size().ok_or_else(|| Error::RingSpec(format!("infinite factor {c}")))?;
            size = size.saturating_mul(s);
        }
        if size > FINITE_MAX {
            return Err(Error::RingTooLarge(size));
        }
        Ok(Self::build(RingKind::Product(components)))
    }

    /// Parses `F5`, `F9`, `Z`, `Z/6`, `F7xF11xF13`.
    pub fn parse(spec: &str) -> Result<Ring> {
        let spec = spec.trim();
        let parts: Vec<&str> = spec.split(['x', 'X', '*']).map(str::trim).collect();
        if parts.len() > 1 {
            return Ring::product(parts.iter().map(|p| Ring::parse(p)).collect::<Result<_>>()?);
        }
        let bad = || Error::RingSpec(spec.to_string());
        if spec == "Z" {
            Ok(Ring::integers())
        } else if let Some(n) = spec.strip_prefix("Z/") {
            Ring::modular(n.parse().map_err(|_| bad())?)
        } else if let Some(q) = spec.strip_prefix('F') {
            Ring::finite_field(q.parse().map_err(|_| bad())?)
        } else {
            Err(bad())
        }
    }

    pub fn kind(&self) -> &RingKind {
        &self.0.kind
    }

    pub fn size(&self) -> Option<usize> {
        self.0.size
    }

    pub fn is_finite(&self) -> bool {
        self.0.size.is_some()
    }

    pub fn tables(&self) -> Result<&Tables> {
        match (&self.0.tables, self.0.size) {
            (Some(t), _) => Ok(t),
            (None, Some(n)) => Err(Error::RingTooLarge(n)),
            (None, None) => Err(Error::InfiniteEnumeration(self.to_string())),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &self.0.kind {
            RingKind::FiniteField { p, .. } => *p as u64,
            RingKind::Integers => 0,
            RingKind::Modular(n) => *n as u64,
            RingKind::Product(cs) => cs.iter().fold(1, |acc, c| {
                let ch = c.characteristic();
                if acc == 0 || ch == 0 {
                    0
                } else {
                    acc / gcd(acc, ch) * ch
                }
            }),
        }
    }

    pub fn is_domain(&self) -> bool {
        match &self.0.kind {
            RingKind::FiniteField { .. } | RingKind::Integers => true,
            RingKind::Modular(n) => is_prime(*n),
            RingKind::Product(cs) => cs.len() == 1 && cs[0].is_domain(),
        }
    }

    pub fn is_field(&self) -> bool {
        match &self.0.kind {
            RingKind::FiniteField { .. } => true,
            RingKind::Integers => false,
            RingKind::Modular(n) => is_prime(*n),
            RingKind::Product(cs) => cs.len() == 1 && cs[0].is_field(),
        }
    }

    /// Component rings of a product; a non-product ring is its own single component.
    pub fn components(&self) -> Vec<Ring> {
        match &self.0.kind {
            RingKind::Product(cs) => cs.clone(),
            _ => vec![self.clone()],
        }
    }

    pub fn zero(&self) -> RingElem {
        let val = match self.0.kind {
            RingKind::Integers => Val::Int(BigInt::zero()),
            _ => Val::Code(0),
        };
        RingElem { ring: self.clone(), val }
    }

    pub fn one(&self) -> RingElem {
        let val = match &self.0.kind {
            RingKind::Integers => Val::Int(BigInt::one()),
            k => Val::Code(raw_one(k)),
        };
        RingElem { ring: self.clone(), val }
    }

    /// Image of an integer under the unique ring map from `Z`.
    pub fn from_int(&self, n: i64) -> RingElem {
        match &self.0.kind {
            RingKind::Integers => RingElem { ring: self.clone(), val: Val::Int(BigInt::from(n)) },
            k => RingElem { ring: self.clone(), val: Val::Code(raw_from_int(k, n)) },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> RingElem {
        match &self.0.kind {
            RingKind::Integers => RingElem { ring: self.clone(), val: Val::Int(n.clone()) },
            _ => {
                let ch = BigInt::from(self.characteristic());
                let r = ((n % &ch) + &ch) % &ch;
                self.from_int(r.to_i64().expect("residue fits"))
            }
        }
    }

    /// Element with the given code; panics if out of range.
    pub fn elem(&self, code: u32) -> RingElem {
        let n = self.size().expect("codes exist only in finite rings");
        assert!((code as usize) < n, "code {code} out of range for {self}");
        RingElem { ring: self.clone(), val: Val::Code(code) }
    }

    pub fn elements(&self) -> Result<Vec<RingElem>> {
        let n = self.size().ok_or_else(|| Error::InfiniteEnumeration(self.to_string()))?;
        Ok((0..n as u32).map(|c| self.elem(c)).collect())
    }

    pub fn units(&self) -> Result<Vec<RingElem>> {
        Ok(self.elements()?.into_iter().filter(|e| e.inv().is_some()).collect())
    }

    /// Tuple of component elements into the product ring.
    pub fn tuple(&self, parts: &[RingElem]) -> Result<RingElem> {
        let cs = self.components();
        if cs.len() != parts.len() || cs.iter().zip(parts).any(|(c, e)| *c != e.ring) {
            return Err(Error::RingMismatch);
        }
        if cs.len() == 1 {
            return Ok(parts[0].clone());
        }
        let mut code = 0u32;
        for (c, e) in cs.iter().zip(parts).rev() {
            code = code * c.size().unwrap() as u32 + e.code();
        }
        Ok(self.elem(code))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> RingElem {
        match self.size() {
            Some(n) => self.elem(rng.gen_range(0..n as u32)),
            None => self.from_int(rng.gen_range(-1000..=1000)),
        }
    }

    pub fn hypothesis_profile(&self) -> Result<HypothesisProfile> {
        let (units_count, units_eq_pm1) = match self.0.kind {
            RingKind::Integers => (2, true),
            _ => {
                let units = self.units()?;
                let pm: Vec<RingElem> = vec![self.one(), -self.one()];
                let eq = units.len() == if pm[0] == pm[1] { 1 } else { 2 }
                    && units.iter().all(|u| pm.contains(u));
                (units.len(), eq)
            }
        };
        Ok(HypothesisProfile {
            is_domain: self.is_domain(),
            characteristic: self.characteristic(),
            units_count,
            units_condition: units_count >= 2,
            units_eq_pm1,
        })
    }

    /// Finds units `xi, eta` and `s` in `s_set` with `a = xi^2 - eta^2 + s`,
    /// searching each product component independently.
    pub fn decompose_square_diff(
        &self,
        a: &RingElem,
        s_set: &[RingElem],
    ) -> Result<(RingElem, RingElem, RingElem)> {
        if a.ring != *self || s_set.iter().any(|s| s.ring != *self) {
            return Err(Error::RingMismatch);
        }
        let fail = || Error::SquareDiff(a.to_string());
        if a.is_zero() {
            return Ok((self.one(), self.one(), self.zero()));
        }
        let cs = self.components();
        let a_parts = a.components();
        // Split S per component: a solution only needs some s in S per coordinate
        // when S is a product set, so search whole elements of S and combine.
        for s in s_set {
            let s_parts = s.components();
            let mut xis = Vec::with_capacity(cs.len());
            let mut etas = Vec::with_capacity(cs.len());
            let mut ok = true;
            for ((c, ai), si) in cs.iter().zip(&a_parts).zip(&s_parts) {
                let target = ai - si;
                let units = c.units()?;
                let hit = units.iter().find_map(|x| {
                    let x2 = x * x;
                    units.iter().find(|y| &x2 - &(*y * *y) == target).map(|y| (x.clone(), y.clone()))
                });
                match hit {
                    Some((x, y)) => {
                        xis.push(x);
                        etas.push(y);
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Ok((self.tuple(&xis)?, self.tuple(&etas)?, s.clone()));
            }
        }
        Err(fail())
    }

    /// Parses an element: an integer, a tuple `(a,b,..)`, or a polynomial in `a`
    /// such as `a+2` for extension fields.
    pub fn parse_elem(&self, text: &str) -> Result<RingElem> {
        let t = text.trim();
        let bad = || Error::Malformed(format!("element `{t}` of {self}"));
        if let Some(inner) = t.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
            let cs = self.components();
            let parts: Vec<&str> = inner.split(',').collect();
            if parts.len() != cs.len() {
                return Err(bad());
            }
            let es = cs.iter().zip(parts).map(|(c, p)| c.parse_elem(p)).collect::<Result<Vec<_>>>()?;
            return self.tuple(&es);
        }
        if let Ok(n) = t.parse::<BigInt>() {
            return Ok(self.from_bigint(&n));
        }
        let RingKind::FiniteField { degree, .. } = &self.0.kind else {
            return Err(bad());
        };
        let gen = if *degree > 1 { self.elem(self.characteristic() as u32) } else { return Err(bad()) };
        let mut acc = self.zero();
        for term in t.split('+').map(str::trim) {
            let (coef, rest) = match term.find('a') {
                Some(i) => (&term[..i], &term[i..]),
                None => (term, ""),
            };
            let c = if coef.is_empty() { self.one() } else { self.from_bigint(&coef.parse().map_err(|_| bad())?) };
            let k: u32 = match rest {
                "" => 0,
                "a" => 1,
                r => r.strip_prefix("a^").and_then(|e| e.parse().ok()).ok_or_else(bad)?,
            };
            acc = &acc + &(&c * &gen.pow(k as u64));
        }
        Ok(acc)
    }
}

fn comp_sizes(cs: &[Ring]) -> Vec<u32> {
    cs.iter().map(|c| c.size().unwrap() as u32).collect()
}

fn split(cs: &[Ring], mut code: u32) -> Vec<u32> {
    comp_sizes(cs)
        .into_iter()
        .map(|n| {
            let d = code % n;
            code /= n;
            d
        })
        .collect()
}

fn join(cs: &[Ring], parts: &[u32]) -> u32 {
    comp_sizes(cs).iter().zip(parts).rev().fold(0, |acc, (&n, &d)| acc * n + d)
}

fn raw_one(kind: &RingKind) -> u32 {
    match kind {
        RingKind::FiniteField { .. } | RingKind::Modular(_) => 1,
        RingKind::Integers => unreachable!(),
        RingKind::Product(cs) => join(cs, &vec![1; cs.len()]),
    }
}

fn raw_from_int(kind: &RingKind, n: i64) -> u32 {
    match kind {
        RingKind::FiniteField { p, .. } => n.rem_euclid(*p as i64) as u32,
        RingKind::Modular(m) => n.rem_euclid(*m as i64) as u32,
        RingKind::Integers => unreachable!(),
        RingKind::Product(cs) => {
            let parts: Vec<u32> = cs.iter().map(|c| raw_from_int(&c.0.kind, n)).collect();
            join(cs, &parts)
        }
    }
}

fn binary(kind: &RingKind, a: u32, b: u32, op: fn(&RingKind, u32, u32) -> u32) -> u32 {
    let RingKind::Product(cs) = kind else { unreachable!() };
    let (pa, pb) = (split(cs, a), split(cs, b));
    let parts: Vec<u32> = cs.iter().zip(pa.iter().zip(&pb)).map(|(c, (&x, &y))| c.raw(op, x, y)).collect();
    join(cs, &parts)
}

impl Ring {
    fn raw(&self, op: fn(&RingKind, u32, u32) -> u32, a: u32, b: u32) -> u32 {
        op(&self.0.kind, a, b)
    }
}

fn raw_add(kind: &RingKind, a: u32, b: u32) -> u32 {
    match kind {
        RingKind::FiniteField { p, degree, .. } => {
            let (da, db) = (digits(a, *p, *degree as usize), digits(b, *p, *degree as usize));
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            undigits(&s, *p)
        }
        RingKind::Modular(n) => ((a as u64 + b as u64) % *n as u64) as u32,
        RingKind::Integers => unreachable!(),
        RingKind::Product(_) => binary(kind, a, b, raw_add),
    }
}

fn raw_mul(kind: &RingKind, a: u32, b: u32) -> u32 {
    match kind {
        RingKind::FiniteField { p, degree, modulus } => {
            let f = *degree as usize;
            let (da, db) = (digits(a, *p, f), digits(b, *p, f));
            let mut prod = vec![0u32; 2 * f - 1];
            for (i, x) in da.iter().enumerate() {
                for (j, y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = poly_rem(&prod, modulus, *p);
            r.resize(f, 0);
            undigits(&r, *p)
        }
        RingKind::Modular(n) => ((a as u64 * b as u64) % *n as u64) as u32,
        RingKind::Integers => unreachable!(),
        RingKind::Product(_) => binary(kind, a, b, raw_mul),
    }
}

fn raw_neg(kind: &RingKind, a: u32) -> u32 {
    match kind {
        RingKind::FiniteField { p, degree, .. } => {
            let d: Vec<u32> = digits(a, *p, *degree as usize).iter().map(|x| (p - x) % p).collect();
            undigits(&d, *p)
        }
        RingKind::Modular(n) => (n - a) % n,
        RingKind::Integers => unreachable!(),
        RingKind::Product(cs) => {
            let parts: Vec<u32> = split(cs, a).iter().zip(cs).map(|(&x, c)| raw_neg(&c.0.kind, x)).collect();
            join(cs, &parts)
        }
    }
}

fn raw_inv(ring: &Ring, a: u32) -> Option<u32> {
    if let Some(t) = &ring.0.tables {
        return t.inv(a as Code).map(u32::from);
    }
    match &ring.0.kind {
        RingKind::FiniteField { p, degree, .. } => {
            if a == 0 {
                return None;
            }
            let q = p.pow(*degree);
            let mut e = q - 2;
            let (mut base, mut acc) = (a, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    acc = raw_mul(&ring.0.kind, acc, base);
                }
                base = raw_mul(&ring.0.kind, base, base);
                e >>= 1;
            }
            Some(acc)
        }
        RingKind::Modular(n) => {
            let (mut r0, mut r1) = (*n as i64, a as i64);
            let (mut t0, mut t1) = (0i64, 1i64);
            while r1 != 0 {
                let q = r0 / r1;
                (r0, r1) = (r1, r0 - q * r1);
                (t0, t1) = (t1, t0 - q * t1);
            }
            (r0 == 1).then(|| t0.rem_euclid(*n as i64) as u32)
        }
        RingKind::Integers => unreachable!(),
        RingKind::Product(cs) => {
            let parts = split(cs, a)
                .iter()
                .zip(cs)
                .map(|(&x, c)| raw_inv(c, x))
                .collect::<Option<Vec<u32>>>()?;
            Some(join(cs, &parts))
        }
    }
}

impl RingElem {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Code of a finite-ring element; panics on the integers.
    pub fn code(&self) -> u32 {
        match &self.val {
            Val::Code(c) => *c,
            Val::Int(_) => panic!("integers have no element codes"),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.val {
            Val::Code(c) => *c == 0,
            Val::Int(n) => n.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.ring.one()
    }

    pub fn as_bigint(&self) -> Option<&BigInt> {
        match &self.val {
            Val::Int(n) => Some(n),
            Val::Code(_) => None,
        }
    }

    pub fn payload(&self) -> Payload {
        match (&self.ring.0.kind, &self.val) {
            (_, Val::Int(n)) => Payload::Int(n.clone()),
            (RingKind::FiniteField { p, degree, .. }, Val::Code(c)) => {
                let mut d = digits(*c, *p, *degree as usize);
                while d.last() == Some(&0) {
                    d.pop();
                }
                Payload::Poly(d)
            }
            (RingKind::Modular(_), Val::Code(c)) => Payload::Residue(*c),
            (RingKind::Product(_), Val::Code(_)) => {
                Payload::Tuple(self.components().iter().map(|e| e.payload()).collect())
            }
            (RingKind::Integers, Val::Code(_)) => unreachable!(),
        }
    }

    /// Components in a product ring; a non-product element is its own component.
    pub fn components(&self) -> Vec<RingElem> {
        match (&self.ring.0.kind, &self.val) {
            (RingKind::Product(cs), Val::Code(c)) => {
                split(cs, *c).into_iter().zip(cs).map(|(x, r)| r.elem(x)).collect()
            }
            _ => vec![self.clone()],
        }
    }

    pub fn inv(&self) -> Option<RingElem> {
        match &self.val {
            Val::Int(n) => (n.abs().is_one()).then(|| self.clone()),
            Val::Code(c) => raw_inv(&self.ring, *c).map(|i| self.ring.elem(i)),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.inv().is_some()
    }

    pub fn pow(&self, mut e: u64) -> RingElem {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents require a unit.
    pub fn powi(&self, e: i64) -> Option<RingElem> {
        if e >= 0 {
            Some(self.pow(e as u64))
        } else {
            Some(self.inv()?.pow(e.unsigned_abs()))
        }
    }

    fn lift(&self, other: &RingElem, f: fn(&RingKind, u32, u32) -> u32, g: fn(&BigInt, &BigInt) -> BigInt) -> RingElem {
        assert!(self.ring == other.ring, "ring mismatch: {} vs {}", self.ring, other.ring);
        let val = match (&self.val, &other.val) {
            (Val::Code(a), Val::Code(b)) => Val::Code(f(&self.ring.0.kind, *a, *b)),
            (Val::Int(a), Val::Int(b)) => Val::Int(g(a, b)),
            _ => unreachable!(),
        };
        RingElem { ring: self.ring.clone(), val }
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.ring.0.kind, &self.val) {
            (_, Val::Int(n)) => write!(f, "{n}"),
            (RingKind::FiniteField { degree: 1, .. }, Val::Code(c)) | (RingKind::Modular(_), Val::Code(c)) => {
                write!(f, "{c}")
            }
            (RingKind::FiniteField { .. }, _) => {
                let Payload::Poly(d) = self.payload() else { unreachable!() };
                if d.is_empty() {
                    return write!(f, "0");
                }
                let terms: Vec<String> = d
                    .iter()
                    .enumerate()
                    .rev()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| {
                        let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
                        match i {
                            0 => coef,
                            1 => format!("{coef}a"),
                            _ => format!("{coef}a^{i}"),
                        }
                    })
                    .collect();
                write!(f, "{}", terms.join("+"))
            }
            (RingKind::Product(_), _) => {
                let parts: Vec<String> = self.components().iter().map(|e| e.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            (RingKind::Integers, _) => unreachable!(),
        }
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for RingElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $raw:ident, $big:expr) => {
        impl std::ops::$tr<&RingElem> for &RingElem {
            type Output = RingElem;
            fn $m(self, rhs: &RingElem) -> RingElem {
                self.lift(rhs, $raw, $big)
            }
        }
        impl std::ops::$tr<RingElem> for RingElem {
            type Output = RingElem;
            fn $m(self, rhs: RingElem) -> RingElem {
                (&self).$m(&rhs)
            }
        }
    };
}

fn raw_sub(kind: &RingKind, a: u32, b: u32) -> u32 {
    raw_add(kind, a, raw_neg(kind, b))
}

binop!(Add, add, raw_add, |a, b| a + b);
binop!(Sub, sub, raw_sub, |a, b| a - b);
binop!(Mul, mul, raw_mul, |a, b| a * b);

impl std::ops::Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        let val = match &self.val {
            Val::Code(c) => Val::Code(raw_neg(&self.ring.0.kind, *c)),
            Val::Int(n) => Val::Int(-n),
        };
        RingElem { ring: self.ring.clone(), val }
    }
}

impl std::ops::Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn codes(r: &Ring, v: &[RingElem]) -> Vec<u32> {
        v.iter().map(|e| {
            assert_eq!(e.ring(), r);
            e.code()
        }).collect()
    }

    #[test]
    fn moduli_are_smallest_irreducibles() {
        let f4 = Ring::finite_field(4).unwrap();
        assert!(matches!(f4.kind(), RingKind::FiniteField { modulus, .. } if modulus == &vec![1, 1, 1]));
        let f9 = Ring::finite_field(9).unwrap();
        assert!(matches!(f9.kind(), RingKind::FiniteField { modulus, .. } if modulus == &vec![1, 0, 1]));
        let f8 = Ring::finite_field(8).unwrap();
        assert!(matches!(f8.kind(), RingKind::FiniteField { modulus, .. } if modulus == &vec![1, 1, 0, 1]));
        assert!(Ring::finite_field(6).is_err());
        assert!(Ring::finite_field_with_modulus(2, vec![1, 0, 1]).is_err());
    }

    #[test]
    fn units_match_examples() {
        let f5 = Ring::parse("F5").unwrap();
        assert_eq!(codes(&f5, &f5.units().unwrap()), vec![1, 2, 3, 4]);
        let f3 = Ring::parse("F3").unwrap();
        assert_eq!(codes(&f3, &f3.units().unwrap()), vec![1, 2]);
        let z6 = Ring::parse("Z/6").unwrap();
        assert_eq!(codes(&z6, &z6.units().unwrap()), vec![1, 5]);
        assert!(matches!(Ring::integers().units(), Err(Error::InfiniteEnumeration(_))));
    }

    #[test]
    fn profiles() {
        let p = Ring::parse("F4").unwrap().hypothesis_profile().unwrap();
        assert_eq!(
            p,
            HypothesisProfile { is_domain: true, characteristic: 2, units_count: 3, units_condition: true, units_eq_pm1: false }
        );
        let z = Ring::integers().hypothesis_profile().unwrap();
        assert!(z.is_domain && z.units_eq_pm1 && z.characteristic == 0 && z.units_count == 2);
        assert!(!Ring::parse("Z/4").unwrap().hypothesis_profile().unwrap().is_domain);
        assert!(Ring::parse("F3").unwrap().hypothesis_profile().unwrap().units_eq_pm1);
        let f2 = Ring::parse("F2").unwrap().hypothesis_profile().unwrap();
        assert!(!f2.units_condition && f2.units_eq_pm1);
        let prod = Ring::parse("F7xF11").unwrap();
        assert!(!prod.is_domain());
        assert_eq!(prod.characteristic(), 77);
    }

    #[test]
    fn parse_and_display() {
        for s in ["F5", "F9", "Z", "Z/6", "F7xF11xF13"] {
            assert_eq!(Ring::parse(s).unwrap().to_string(), s);
        }
        assert!(Ring::parse("Q").is_err());
        assert!(Ring::parse("F7xZ").is_err());
        let f9 = Ring::parse("F9").unwrap();
        let a = f9.parse_elem("a+2").unwrap();
        assert_eq!(a.to_string(), "a+2");
        assert_eq!((&a * &a).to_string(), "a");
        let r = Ring::parse("F7xF11").unwrap();
        assert_eq!(r.parse_elem("(3,10)").unwrap().to_string(), "(3,10)");
        assert_eq!(r.from_int(-1).to_string(), "(6,10)");
    }

    #[test]
    fn square_differences() {
        let f7 = Ring::parse("F7").unwrap();
        let (x, y, s) = f7.decompose_square_diff(&f7.from_int(3), &[f7.zero()]).unwrap();
        assert_eq!((x.code(), y.code(), s.code()), (2, 1, 0));
        let (x, y, _) = f7.decompose_square_diff(&f7.zero(), &[f7.zero()]).unwrap();
        assert!(x.is_one() && y.is_one());
        let r = Ring::parse("F7xF11").unwrap();
        let a = r.parse_elem("(3,10)").unwrap();
        let (x, y, s) = r.decompose_square_diff(&a, &[r.zero()]).unwrap();
        assert!(s.is_zero() && x.is_unit() && y.is_unit());
        assert_eq!(&(&x * &x) - &(&y * &y), a);
        // Over F5 the nonzero squares are {1,4}, so 1 and 4 are not differences.
        let f5 = Ring::parse("F5").unwrap();
        for a in 0..5 {
            let res = f5.decompose_square_diff(&f5.elem(a), &[f5.zero()]);
            assert_eq!(res.is_ok(), a == 0 || a == 2 || a == 3, "a = {a}");
        }
        assert!(f5.decompose_square_diff(&f5.one(), &[f5.zero(), f5.one()]).is_ok());
    }

    #[test]
    fn large_fields_cover_differences() {
        for q in [7, 9, 11, 13, 25, 27] {
            let f = Ring::finite_field(q).unwrap();
            for a in f.elements().unwrap() {
                assert!(f.decompose_square_diff(&a, &[f.zero()]).is_ok(), "F{q}, {a}");
            }
        }
    }

    #[test]
    fn integer_arithmetic() {
        let z = Ring::integers();
        let a = z.from_int(7);
        let b = z.from_int(-3);
        assert_eq!((&a * &b).as_bigint().unwrap(), &BigInt::from(-21));
        assert!(b.inv().is_none() && z.from_int(-1).inv().is_some());
    }

    fn axioms(r: &Ring) {
        let els = r.elements().unwrap();
        let t = r.tables().unwrap();
        for a in &els {
            for b in &els {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                assert_eq!(t.mul(a.code() as Code, b.code() as Code) as u32, (a * b).code());
                for c in &els {
                    assert_eq!(&(a * b) * c, a * &(b * c));
                    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                }
            }
        }
    }

    #[test]
    fn ring_axioms_exhaustive() {
        for s in ["F2", "F3", "F4", "F5", "F8", "F9", "Z/4", "Z/6", "F2xF3"] {
            axioms(&Ring::parse(s).unwrap());
        }
    }

    thread_local! {
        static PRODUCT: Ring = Ring::parse("F7xF11xF13").unwrap();
    }

    proptest! {
        #[test]
        fn product_is_componentwise(a in 0u32..1001, b in 0u32..1001) {
            let r = PRODUCT.with(|r| r.clone());
            let (x, y) = (r.elem(a), r.elem(b));
            let sum: Vec<RingElem> = x.components().iter().zip(y.components()).map(|(u, v)| u + &v).collect();
            let prod: Vec<RingElem> = x.components().iter().zip(y.components()).map(|(u, v)| u * &v).collect();
            prop_assert_eq!(&x + &y, r.tuple(&sum).unwrap());
            prop_assert_eq!(&x * &y, r.tuple(&prod).unwrap());
        }

        #[test]
        fn field_inverses(q in prop::sample::select(vec![4u32, 8, 9, 16, 25, 27, 49, 121]), a in 1u32..121) {
            let f = Ring::finite_field(q).unwrap();
            let x = f.elem(a % q).clone();
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn integer_ring_axioms(a in -1000i64..1000, b in -1000i64..1000, c in -1000i64..1000) {
            let z = Ring::integers();
            let (a, b, c) = (z.from_int(a), z.from_int(b), z.from_int(c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }
    }
}
