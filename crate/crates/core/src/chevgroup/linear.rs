//! Exact linear algebra over finite fields: commutant subspaces and
//! enumeration of their group points.

use super::group::Chevalley;
use super::matrix::GroupElem;
use crate::error::{Error, Result};
use crate::rings::{Code, Tables};

/// Row-echelon basis built incrementally. Vectors whose leading entry is not a
/// unit are kept as generators but never used as pivots.
pub struct EchelonBasis {
    dim: usize,
    pivots: Vec<(usize, Vec<Code>)>,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis { dim, pivots: Vec::new() }
    }

    fn reduce(&self, t: &Tables, v: &[Code]) -> Vec<Code> {
        let mut v = v.to_vec();
        for (p, row) in &self.pivots {
            let c = v[*p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    if y != 0 {
                        *x = t.sub(*x, t.mul(c, y));
                    }
                }
            }
        }
        v
    }

    /// Adds `v`; returns false when it already lies in the span.
    pub fn insert(&mut self, t: &Tables, v: &[Code]) -> bool {
        let r = self.reduce(t, v);
        let Some(p) = r.iter().position(|&x| x != 0) else { return false };
        if let Some(inv) = t.inv(r[p]) {
            let row: Vec<Code> = r.iter().map(|&x| t.mul(inv, x)).collect();
            for (_, other) in self.pivots.iter_mut() {
                let c = other[p];
                if c != 0 {
                    for (x, &y) in other.iter_mut().zip(&row) {
                        *x = t.sub(*x, t.mul(c, y));
                    }
                }
            }
            self.pivots.push((p, row));
        }
        true
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.dim
    }
}

/// Basis of `{x : A x = 0}` over a field, `A` given by rows of length `n`.
pub fn kernel(t: &Tables, rows: &[Vec<Code>], n: usize) -> Result<Vec<Vec<Code>>> {
    let mut m: Vec<Vec<Code>> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        let inv = t.inv(m[r][c]).ok_or_else(|| Error::Config("kernel computation needs a field".into()))?;
        for x in m[r].iter_mut() {
            *x = t.mul(inv, *x);
        }
        let pr = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            let f = row[c];
            if i != r && f != 0 {
                for (x, &y) in row.iter_mut().zip(&pr) {
                    if y != 0 {
                        *x = t.sub(*x, t.mul(f, y));
                    }
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    Ok(free
        .iter()
        .map(|&f| {
            let mut v = vec![0 as Code; n];
            v[f] = t.one;
            for (i, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = t.neg[m[i][f] as usize];
            }
            v
        })
        .collect())
}

/// Basis of the matrices commuting with every element of `ys`.
pub fn linear_commutant(group: &Chevalley, ys: &[GroupElem]) -> Result<Vec<GroupElem>> {
    if !group.ring.is_field() {
        return Err(Error::Config(format!("linear commutant needs a field, got {}", group.ring)));
    }
    let t = group.t();
    let d = group.d();
    let n = d * d;
    let ys = super::enumerate::spanning_subset(group, ys.iter());
    let mut rows = Vec::new();
    for y in &ys {
        // (m y - y m)_{ij} = sum_k m_ik y_kj - y_ik m_kj
        for i in 0..d {
            for j in 0..d {
                let mut row = vec![0 as Code; n];
                for k in 0..d {
                    row[i * d + k] = t.add(row[i * d + k], y[k * d + j]);
                    row[k * d + j] = t.sub(row[k * d + j], y[i * d + k]);
                }
                if row.iter().any(|&x| x != 0) {
                    rows.push(row);
                }
            }
        }
    }
    Ok(kernel(t, &rows, n)?.into_iter().map(Vec::into_boxed_slice).collect())
}

/// Every point of the span of `basis`, visited by an additive odometer, passed
/// to `f`. Fails if the point count exceeds `budget`.
pub fn for_each_point(group: &Chevalley, basis: &[GroupElem], budget: u64, mut f: impl FnMut(&[Code])) -> Result<()> {
    let q = group.t().size as u64;
    let total = q.checked_pow(basis.len() as u32).filter(|&n| n <= budget);
    let Some(_) = total else {
        return Err(Error::Config(format!(
            "subspace of dimension {} over a field of size {q} exceeds the point budget {budget}",
            basis.len()
        )));
    };
    let ops = group.ops();
    let p = group.ring.characteristic() as usize;
    let scalars = group.additive_generators();
    let steps: Vec<GroupElem> = basis
        .iter()
        .flat_map(|b| scalars.iter().map(move |s| ops.scale(s.code() as Code, b)))
        .collect();
    let mut cur = ops.zero();
    let mut counter = vec![0usize; steps.len()];
    loop {
        f(&cur);
        let mut k = 0;
        loop {
            if k == steps.len() {
                return Ok(());
            }
            cur = ops.add(&cur, &steps[k]);
            counter[k] += 1;
            if counter[k] < p {
                break;
            }
            counter[k] = 0;
            k += 1;
        }
    }
}

/// Group points (invertible members) of the commutant of `ys`, with its dimension.
pub fn commutant_group_points(group: &Chevalley, ys: &[GroupElem], budget: u64) -> Result<(usize, Vec<GroupElem>)> {
    let basis = linear_commutant(group, ys)?;
    let mut pts = Vec::new();
    for_each_point(group, &basis, budget, |m| {
        if group.is_member(m) {
            pts.push(m.into());
        }
    })?;
    pts.sort();
    Ok((basis.len(), pts))
}
