//! Root systems of types A–G in fundamental-root coordinates, with Cartan
//! integers, Weyl reflections and a sign-consistent table of Chevalley
//! structure constants.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for RootType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" => Self::A,
            "B" => Self::B,
            "C" => Self::C,
            "D" => Self::D,
            "E" => Self::E,
            "F" => Self::F,
            "G" => Self::G,
            _ => return Err(Error::InvalidRootSystem(s.to_string())),
        })
    }
}

/// Index into [`RootSystem::roots`]. Positive roots come first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Root(pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rank2Type {
    #[serde(rename = "A1xA1")]
    A1xA1,
    A2,
    B2,
    G2,
}

impl fmt::Display for Rank2Type {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rank2Type::A1xA1 => "A1xA1",
            Rank2Type::A2 => "A2",
            Rank2Type::B2 => "B2",
            Rank2Type::G2 => "G2",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    typ: RootType,
    rank: usize,
    /// Six times the bilinear form on simple roots; long roots have `(a, a) = 12`.
    gram: Vec<Vec<i64>>,
    roots: Vec<Vec<i32>>,
    index: HashMap<Vec<i32>, usize>,
    npos: usize,
    sum: Vec<Option<u16>>,
    n: Vec<i8>,
}

impl RootSystem {
    pub fn parse(label: &str) -> Result<Self> {
        let label = label.trim();
        let bad = || Error::InvalidRootSystem(label.to_string());
        let (t, r) = label.split_at(label.char_indices().nth(1).map_or(label.len(), |(i, _)| i));
        Self::new(t.parse()?, r.parse().map_err(|_| bad())?)
    }

    pub fn new(typ: RootType, rank: usize) -> Result<Self> {
        use RootType::*;
        let ok = match typ {
            A | B | C => rank >= 2,
            D => rank >= 3,
            E => (6..=8).contains(&rank),
            F => rank == 4,
            G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidRootSystem(format!("{typ}{rank}")));
        }
        let (lens, edges) = dynkin(typ, rank);
        let mut gram = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            gram[i][i] = lens[i];
        }
        for (i, j, v) in edges {
            gram[i][j] = v;
            gram[j][i] = v;
        }
        let mut sys = RootSystem {
            typ,
            rank,
            gram,
            roots: Vec::new(),
            index: HashMap::new(),
            npos: 0,
            sum: Vec::new(),
            n: Vec::new(),
        };
        sys.generate_roots();
        sys.build_structure_constants()?;
        Ok(sys)
    }

    fn form(&self, a: &[i32], b: &[i32]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] as i64 * b[j] as i64 * self.gram[i][j];
            }
        }
        s
    }

    fn generate_roots(&mut self) {
        let r = self.rank;
        let simple: Vec<Vec<i32>> = (0..r)
            .map(|i| {
                let mut v = vec![0; r];
                v[i] = 1;
                v
            })
            .collect();
        let mut pos: Vec<Vec<i32>> = simple.clone();
        let mut seen: std::collections::HashSet<Vec<i32>> = pos.iter().cloned().collect();
        let mut layer = simple.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for b in &layer {
                for (i, a) in simple.iter().enumerate() {
                    // p: how far the a_i-string through b extends downwards.
                    let mut p = 0;
                    let mut v = b.clone();
                    loop {
                        v[i] -= 1;
                        if seen.contains(&v) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pair = 2 * self.form(b, a) / self.gram[i][i];
                    let q = p - pair;
                    if q > 0 {
                        let mut w = b.clone();
                        w[i] += 1;
                        if seen.insert(w.clone()) {
                            next.push(w);
                        }
                    }
                }
            }
            pos.extend(next.iter().cloned());
            layer = next;
        }
        pos.sort_by(|x, y| {
            let hx: i32 = x.iter().sum();
            let hy: i32 = y.iter().sum();
            hx.cmp(&hy).then_with(|| y.cmp(x))
        });
        self.npos = pos.len();
        let neg: Vec<Vec<i32>> = pos.iter().map(|v| v.iter().map(|c| -c).collect()).collect();
        self.roots = pos.into_iter().chain(neg).collect();
        self.index = self.roots.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
    }

    fn build_structure_constants(&mut self) -> Result<()> {
        let nr = self.roots.len();
        self.sum = vec![None; nr * nr];
        for a in 0..nr {
            for b in 0..nr {
                let v: Vec<i32> = self.roots[a].iter().zip(&self.roots[b]).map(|(x, y)| x + y).collect();
                self.sum[a * nr + b] = self.index.get(&v).map(|&i| i as u16);
            }
        }
        self.n = vec![0; nr * nr];
        let np = self.npos;
        // Positive pairs, processed in order of the height of their sum.
        for xi in 0..np {
            let mut special: Vec<(usize, usize)> = (0..np)
                .flat_map(|a| (a + 1..np).map(move |b| (a, b)))
                .filter(|&(a, b)| self.sum[a * nr + b] == Some(xi as u16))
                .collect();
            if special.is_empty() {
                continue;
            }
            special.sort();
            let (a, b) = special[0];
            let p = self.p_value(Root(a), Root(b)) as i8;
            self.n[a * nr + b] = p + 1;
            self.n[b * nr + a] = -(p + 1);
            let nab = (p + 1) as i64;
            let xi_len = self.norm(Root(xi));
            for &(g, d) in &special[1..] {
                let (ng, nd) = (self.neg_idx(g), self.neg_idx(d));
                let mut acc = Rational64::from_integer(0);
                if let Some(bg) = self.sum_idx(b, ng) {
                    let t = self.get(b, ng) as i64 * self.get(a, nd) as i64;
                    acc += Rational64::new(t, self.norm(Root(bg)));
                }
                if let Some(ag) = self.sum_idx(a, ng) {
                    let t = self.get(ng, a) as i64 * self.get(b, nd) as i64;
                    acc += Rational64::new(t, self.norm(Root(ag)));
                }
                let val = acc * Rational64::new(xi_len, nab);
                let expect = self.p_value(Root(g), Root(d)) as i64 + 1;
                if !val.is_integer() || val.to_integer().abs() != expect {
                    return Err(Error::StructureConstants(g, d, xi));
                }
                let v = val.to_integer() as i8;
                self.n[g * nr + d] = v;
                self.n[d * nr + g] = -v;
            }
        }
        for a in 0..nr {
            for b in 0..nr {
                if (a < np) != (b < np) || a >= np {
                    self.n[a * nr + b] = self.get(a, b);
                }
            }
        }
        Ok(())
    }

    fn neg_idx(&self, a: usize) -> usize {
        if a < self.npos {
            a + self.npos
        } else {
            a - self.npos
        }
    }

    fn sum_idx(&self, a: usize, b: usize) -> Option<usize> {
        self.sum[a * self.roots.len() + b].map(usize::from)
    }

    /// Structure constant from the positive-pair table via the standard identities.
    fn get(&self, a: usize, b: usize) -> i8 {
        let nr = self.roots.len();
        let np = self.npos;
        let Some(s) = self.sum_idx(a, b) else { return 0 };
        match (a < np, b < np) {
            (true, true) => self.n[a * nr + b],
            (false, false) => -self.n[self.neg_idx(a) * nr + self.neg_idx(b)],
            _ => {
                // With c = -(a+b): N_ab/(c,c) = N_bc/(a,a) = N_ca/(b,b).
                let c = self.neg_idx(s);
                let (la, lb, lc) = (self.norm(Root(a)), self.norm(Root(b)), self.norm(Root(c)));
                let (pos_pair, num, den) = if (b < np) == (c < np) {
                    ((b, c), lc, la)
                } else {
                    ((c, a), lc, lb)
                };
                let v = self.get(pos_pair.0, pos_pair.1) as i64 * num / den;
                v as i8
            }
        }
    }

    pub fn root_type(&self) -> RootType {
        self.typ
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.typ, self.rank)
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.npos
    }

    pub fn roots(&self) -> impl Iterator<Item = Root> + '_ {
        (0..self.roots.len()).map(Root)
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = Root> + '_ {
        (0..self.npos).map(Root)
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.rank).map(|i| self.simple(i)).collect()
    }

    pub fn simple(&self, i: usize) -> Root {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        self.root_of(&v).expect("simple roots exist")
    }

    pub fn coeffs(&self, r: Root) -> &[i32] {
        &self.roots[r.0]
    }

    pub fn root_of(&self, coeffs: &[i32]) -> Option<Root> {
        self.index.get(coeffs).map(|&i| Root(i))
    }

    pub fn is_positive(&self, r: Root) -> bool {
        r.0 < self.npos
    }

    pub fn neg(&self, r: Root) -> Root {
        Root(self.neg_idx(r.0))
    }

    pub fn add(&self, a: Root, b: Root) -> Option<Root> {
        self.sum_idx(a.0, b.0).map(Root)
    }

    /// `i a + j b` if it is a root.
    pub fn combo(&self, i: i32, a: Root, j: i32, b: Root) -> Option<Root> {
        let v: Vec<i32> = self.coeffs(a).iter().zip(self.coeffs(b)).map(|(x, y)| i * x + j * y).collect();
        self.root_of(&v)
    }

    pub fn height(&self, r: Root) -> i32 {
        self.coeffs(r).iter().sum()
    }

    /// Six times the inner product.
    pub fn inner6(&self, a: Root, b: Root) -> i64 {
        self.form(self.coeffs(a), self.coeffs(b))
    }

    pub fn inner(&self, a: Root, b: Root) -> Rational64 {
        Rational64::new(self.inner6(a, b), 6)
    }

    fn norm(&self, a: Root) -> i64 {
        self.inner6(a, a)
    }

    pub fn is_long(&self, a: Root) -> bool {
        self.norm(a) == 12
    }

    pub fn is_short(&self, a: Root) -> bool {
        !self.is_long(a)
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.typ, RootType::A | RootType::D | RootType::E)
    }

    pub fn orthogonal(&self, a: Root, b: Root) -> bool {
        self.inner6(a, b) == 0
    }

    /// `A_{gb} = 2(g, b)/(g, g)`.
    pub fn cartan_integer(&self, g: Root, b: Root) -> i32 {
        (2 * self.inner6(g, b) / self.norm(g)) as i32
    }

    /// Largest `p` with `b - p a` a root.
    pub fn p_value(&self, a: Root, b: Root) -> i32 {
        let mut p = 0;
        while self.combo(-(p + 1), a, 1, b).is_some() {
            p += 1;
        }
        p
    }

    /// Chevalley structure constant `N_{ab}`, zero when `a + b` is not a root.
    pub fn structure_constant(&self, a: Root, b: Root) -> i32 {
        self.n[a.0 * self.roots.len() + b.0] as i32
    }

    /// Reflection of `b` in the hyperplane orthogonal to `a`.
    pub fn reflect(&self, a: Root, b: Root) -> Root {
        let c = self.cartan_integer(a, b);
        self.combo(1, b, -c, a).expect("reflections preserve the root system")
    }

    pub fn weyl_orbit(&self, a: Root) -> Vec<Root> {
        let simple = self.simple_roots();
        let mut seen = vec![false; self.num_roots()];
        let mut queue = VecDeque::from([a]);
        seen[a.0] = true;
        while let Some(b) = queue.pop_front() {
            for &s in &simple {
                let c = self.reflect(s, b);
                if !seen[c.0] {
                    seen[c.0] = true;
                    queue.push_back(c);
                }
            }
        }
        self.roots().filter(|r| seen[r.0]).collect()
    }

    /// Whether `g` lies in the rational span of `a` and `b`.
    pub fn in_span(&self, a: Root, b: Root, g: Root) -> bool {
        let (u, v, w) = (self.coeffs(a), self.coeffs(b), self.coeffs(g));
        let r = self.rank;
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let det = u[i] as i64 * (v[j] as i64 * w[k] as i64 - v[k] as i64 * w[j] as i64)
                        - u[j] as i64 * (v[i] as i64 * w[k] as i64 - v[k] as i64 * w[i] as i64)
                        + u[k] as i64 * (v[i] as i64 * w[j] as i64 - v[j] as i64 * w[i] as i64);
                    if det != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn independent(&self, a: Root, b: Root) -> bool {
        a != b && a != self.neg(b)
    }

    /// Roots in the rational span of two independent roots.
    pub fn rank2_subsystem(&self, a: Root, b: Root) -> Result<Vec<Root>> {
        if !self.independent(a, b) {
            return Err(Error::DependentRoots);
        }
        Ok(self.roots().filter(|&g| self.in_span(a, b, g)).collect())
    }

    pub fn rank2_span_type(&self, a: Root, b: Root) -> Result<Rank2Type> {
        Ok(match self.rank2_subsystem(a, b)?.len() {
            4 => Rank2Type::A1xA1,
            6 => Rank2Type::A2,
            8 => Rank2Type::B2,
            12 => Rank2Type::G2,
            n => unreachable!("rank-2 subsystem with {n} roots"),
        })
    }

    /// First root `g` orthogonal to `a` with `A_{gb}` odd, so that `h_g(-1)`
    /// acts on `U_b` by `-1`. Without the parity condition `g = b` would always do.
    pub fn find_orthogonal_gamma(&self, a: Root, b: Root) -> Option<Root> {
        self.roots().find(|&g| self.orthogonal(g, a) && self.cartan_integer(g, b) % 2 != 0)
    }

    /// Highest root (last positive root in the order).
    pub fn highest_root(&self) -> Root {
        Root(self.npos - 1)
    }

    /// One root per line, coefficients separated by spaces, positive roots first.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for v in &self.roots {
            let line: Vec<String> = v.iter().map(|c| c.to_string()).collect();
            s.push_str(&line.join(" "));
            s.push('\n');
        }
        s
    }

    /// Human-readable name such as `a1+2a2`.
    /// Inverse of [`RootSystem::name`]; whitespace is ignored.
    pub fn parse_root(&self, text: &str) -> Result<Root> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        self.roots()
            .find(|&r| self.name(r) == t)
            .ok_or_else(|| Error::Config(format!("`{text}` is not a root of {}", self.label())))
    }

    pub fn name(&self, r: Root) -> String {
        let v = self.coeffs(r);
        let sign = if self.is_positive(r) { "" } else { "-" };
        let terms: Vec<String> = v
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let c = c.abs();
                if c == 1 {
                    format!("a{}", i + 1)
                } else {
                    format!("{c}a{}", i + 1)
                }
            })
            .collect();
        if terms.len() > 1 && sign == "-" {
            format!("-({})", terms.join("+"))
        } else {
            format!("{sign}{}", terms.join("+"))
        }
    }
}

/// Squared lengths (scaled by 6) and off-diagonal entries of the scaled Gram matrix,
/// Bourbaki numbering.
fn dynkin(typ: RootType, n: usize) -> (Vec<i64>, Vec<(usize, usize, i64)>) {
    use RootType::*;
    let chain = |k: usize, v: i64| (0..k.saturating_sub(1)).map(move |i| (i, i + 1, v));
    match typ {
        A => (vec![12; n], chain(n, -6).collect()),
        B => {
            let mut l = vec![12; n];
            l[n - 1] = 6;
            (l, chain(n, -6).collect())
        }
        C => {
            let mut l = vec![6; n];
            l[n - 1] = 12;
            let mut e: Vec<_> = chain(n - 1, -3).collect();
            e.push((n - 2, n - 1, -6));
            (l, e)
        }
        D => {
            let mut e: Vec<_> = chain(n - 1, -6).collect();
            e.push((n - 3, n - 1, -6));
            (vec![12; n], e)
        }
        E => {
            let mut e = vec![(0, 2, -6), (1, 3, -6)];
            e.extend((2..n - 1).map(|i| (i, i + 1, -6)));
            (vec![12; n], e)
        }
        F => (vec![12, 12, 6, 6], vec![(0, 1, -6), (1, 2, -6), (2, 3, -3)]),
        G => (vec![4, 12], vec![(0, 1, -6)]),
    }
}
