//! Integral matrix representations: the adjoint representation of every type
//! and the natural representations of SL_n, Sp_2m, SO_2m+1 and SO_2m.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::matrix::IntMat;
use crate::error::{Error, Result};
use crate::rootsys::{Root, RootSystem, RootType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Form {
    Adjoint,
    SpecialLinear,
    Symplectic,
    OrthogonalEven,
    OrthogonalOdd,
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Form::Adjoint => "adjoint",
            Form::SpecialLinear => "special_linear",
            Form::Symplectic => "symplectic",
            Form::OrthogonalEven => "orthogonal_even",
            Form::OrthogonalOdd => "orthogonal_odd",
        };
        f.write_str(s)
    }
}

#[derive(Debug)]
pub struct MatrixRep {
    pub sys: Arc<RootSystem>,
    pub d: usize,
    pub form: Form,
    /// `X_a` for every root.
    pub root_matrices: Vec<IntMat>,
    /// `divided[a][i-1] = X_a^i / i!` for `1 <= i <= q_a`.
    pub divided: Vec<Vec<IntMat>>,
    /// Largest nonzero power over all roots.
    pub q: usize,
    /// Invariant form `J` with `g^T J g = J` for classical forms.
    pub gram: Option<IntMat>,
    /// Sign relating `X_a` to the textbook matrix for positive classical roots.
    pub eta: Vec<i8>,
    /// Row labels: signed indices for classical forms.
    pub labels: Vec<i32>,
    /// `ad` of every basis vector (adjoint form only).
    pub ad_basis: Vec<IntMat>,
}

impl MatrixRep {
    pub fn label(&self) -> String {
        let s = &self.sys;
        let m = s.rank();
        match self.form {
            Form::Adjoint => format!("{}adj", s.label()),
            Form::SpecialLinear => format!("SL{}", m + 1),
            Form::Symplectic => format!("Sp{}", 2 * m),
            Form::OrthogonalOdd => format!("SO{}", 2 * m + 1),
            Form::OrthogonalEven => format!("O{}", 2 * m),
        }
    }

    /// Row index of a signed classical label.
    pub fn row(&self, label: i32) -> usize {
        self.labels.iter().position(|&l| l == label).unwrap_or_else(|| panic!("no row labelled {label}"))
    }

    pub fn unit(&self, i: i32, j: i32) -> IntMat {
        IntMat::unit(self.d, self.row(i), self.row(j))
    }

    /// Root with the given epsilon-coordinates (classical forms; `n` entries for
    /// SL_n, `m` otherwise).
    pub fn root_from_eps(&self, eps: &[i32]) -> Option<Root> {
        let sys = &self.sys;
        sys.roots().find(|&r| eps_coords(sys, r) == eps)
    }

    /// Root `e_i - e_j` in signed-index notation (`e_{-k} = -e_k`).
    pub fn root_ij(&self, i: i32, j: i32) -> Option<Root> {
        let n = if self.form == Form::SpecialLinear { self.d } else { self.sys.rank() };
        let mut v = vec![0; n];
        let mut put = |k: i32, s: i32| {
            let idx = k.unsigned_abs() as usize - 1;
            v[idx] += s * k.signum();
        };
        put(i, 1);
        put(j, -1);
        self.root_from_eps(&v)
    }

    /// Root `e_i` (B) or `2 e_i` (C) for signed `i`.
    pub fn root_i(&self, i: i32) -> Option<Root> {
        let mut v = vec![0; self.sys.rank()];
        let c = if self.form == Form::Symplectic { 2 } else { 1 };
        v[i.unsigned_abs() as usize - 1] = c * i.signum();
        self.root_from_eps(&v)
    }

    pub fn adjoint(sys: Arc<RootSystem>) -> Result<Self> {
        let nr = sys.num_roots();
        let rank = sys.rank();
        let d = nr + rank;
        let simple = sys.simple_roots();
        let mut root_matrices = Vec::with_capacity(nr);
        for a in sys.roots() {
            let mut x = IntMat::zero(d);
            for b in sys.roots() {
                if let Some(c) = sys.add(a, b) {
                    x.set(c.0, b.0, sys.structure_constant(a, b) as i64);
                } else if b == sys.neg(a) {
                    for (i, h) in coroot(&sys, a).into_iter().enumerate() {
                        x.set(nr + i, b.0, h);
                    }
                }
            }
            for (i, &s) in simple.iter().enumerate() {
                x.set(a.0, nr + i, -(sys.cartan_integer(s, a) as i64));
            }
            root_matrices.push(x);
        }
        let mut ad_basis = root_matrices.clone();
        for &s in &simple {
            let mut h = IntMat::zero(d);
            for b in sys.roots() {
                h.set(b.0, b.0, sys.cartan_integer(s, b) as i64);
            }
            ad_basis.push(h);
        }
        let labels = (0..d as i32).collect();
        Self::finish(sys, d, Form::Adjoint, root_matrices, None, vec![1; nr], labels, ad_basis)
    }

    /// Natural representation of the classical group with root system `typ`/`rank`.
    pub fn classical(typ: RootType, rank: usize) -> Result<Self> {
        let sys = Arc::new(RootSystem::new(typ, rank)?);
        let m = rank as i32;
        let (form, labels): (Form, Vec<i32>) = match typ {
            RootType::A => (Form::SpecialLinear, (1..=m + 1).collect()),
            RootType::C => (Form::Symplectic, (1..=m).chain((1..=m).map(|i| -i)).collect()),
            RootType::D if rank >= 4 => (Form::OrthogonalEven, (1..=m).chain((1..=m).map(|i| -i)).collect()),
            RootType::B => (Form::OrthogonalOdd, (1..=m).chain((1..=m).map(|i| -i)).chain([0]).collect()),
            _ => return Err(Error::UnsupportedRep(format!("classical {typ}{rank}"))),
        };
        let d = labels.len();
        let row = |l: i32| labels.iter().position(|&x| x == l).unwrap();
        let e = |i: i32, j: i32| IntMat::unit(d, row(i), row(j));
        let mut root_matrices = Vec::new();
        for r in sys.roots() {
            let v = eps_coords(&sys, r);
            let nz: Vec<(usize, i32)> = v.iter().copied().enumerate().filter(|&(_, c)| c != 0).collect();
            let x = match (form, nz.as_slice()) {
                (Form::SpecialLinear, [(i, si), (j, _)]) => {
                    let (a, b) = if *si > 0 { (*i, *j) } else { (*j, *i) };
                    e(a as i32 + 1, b as i32 + 1)
                }
                (Form::Symplectic, [(i, s)]) => {
                    let a = (*i as i32 + 1) * s.signum();
                    e(a, -a)
                }
                (Form::OrthogonalOdd, [(i, s)]) => {
                    let a = (*i as i32 + 1) * s;
                    e(a, 0).scale(2).sub(&e(0, -a))
                }
                (_, [(i, si), (j, sj)]) => {
                    let a = (*i as i32 + 1) * si;
                    let b = -(*j as i32 + 1) * sj;
                    let eps = if form == Form::Symplectic && a * b < 0 { 1 } else { -1 };
                    e(a, b).add(&e(-b, -a).scale(eps))
                }
                _ => return Err(Error::UnsupportedRep(format!("root {} in {typ}{rank}", sys.name(r)))),
            };
            root_matrices.push(x);
        }
        let mut j = IntMat::zero(d);
        match form {
            Form::SpecialLinear => {}
            Form::Symplectic => {
                for i in 1..=m {
                    j = j.add(&e(i, -i)).sub(&e(-i, i));
                }
            }
            _ => {
                for i in 1..=m {
                    j = j.add(&e(i, -i)).add(&e(-i, i));
                }
                if form == Form::OrthogonalOdd {
                    j = j.add(&e(0, 0).scale(2));
                }
            }
        }
        let gram = (form != Form::SpecialLinear).then_some(j);
        let eta = normalize(&sys, &mut root_matrices)?;
        Self::finish(sys, d, form, root_matrices, gram, eta, labels, Vec::new())
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        sys: Arc<RootSystem>,
        d: usize,
        form: Form,
        root_matrices: Vec<IntMat>,
        gram: Option<IntMat>,
        eta: Vec<i8>,
        labels: Vec<i32>,
        ad_basis: Vec<IntMat>,
    ) -> Result<Self> {
        let mut divided = Vec::with_capacity(root_matrices.len());
        let mut q = 0;
        for (idx, x) in root_matrices.iter().enumerate() {
            let mut powers = Vec::new();
            let mut p = x.clone();
            let mut fact = 1i64;
            let mut i = 1;
            while !p.is_zero() {
                fact *= i as i64;
                let m = p.div_exact(fact).ok_or(Error::NonIntegralDividedPower { root: idx, power: i })?;
                powers.push(m);
                p = p.mul(x);
                i += 1;
            }
            q = q.max(powers.len());
            divided.push(powers);
        }
        Ok(MatrixRep { sys, d, form, root_matrices, divided, q, gram, eta, labels, ad_basis })
    }

    /// Checks `[X_a, X_b] = N_ab X_{a+b}`, `[X_a, X_b] = 0` when `a+b` is not a root,
    /// and `[[X_a, X_-a], X_a] = 2 X_a`.
    pub fn check_chevalley_basis(&self) -> Result<()> {
        let sys = &self.sys;
        for a in sys.roots() {
            let xa = &self.root_matrices[a.0];
            for b in sys.roots() {
                let br = xa.bracket(&self.root_matrices[b.0]);
                let ok = match sys.add(a, b) {
                    Some(c) => br == self.root_matrices[c.0].scale(sys.structure_constant(a, b) as i64),
                    None if b == sys.neg(a) => br.bracket(xa) == xa.scale(2),
                    None => br.is_zero(),
                };
                if !ok {
                    return Err(Error::StructureConstants(a.0, b.0, usize::MAX));
                }
            }
        }
        Ok(())
    }
}

/// Coroot of `a` in simple-coroot coordinates.
fn coroot(sys: &RootSystem, a: Root) -> Vec<i64> {
    let na = sys.inner6(a, a);
    sys.simple_roots()
        .iter()
        .zip(sys.coeffs(a))
        .map(|(&s, &c)| c as i64 * sys.inner6(s, s) / na)
        .collect()
}

/// Epsilon-coordinates of a root of a classical system.
pub fn eps_coords(sys: &RootSystem, r: Root) -> Vec<i32> {
    let m = sys.rank();
    let n = if sys.root_type() == RootType::A { m + 1 } else { m };
    let mut v = vec![0; n];
    for (k, &c) in sys.coeffs(r).iter().enumerate() {
        if k + 1 < m || sys.root_type() == RootType::A {
            v[k] += c;
            v[k + 1] -= c;
        } else {
            match sys.root_type() {
                RootType::B => v[m - 1] += c,
                RootType::C => v[m - 1] += 2 * c,
                RootType::D => {
                    v[m - 2] += c;
                    v[m - 1] += c;
                }
                _ => unreachable!(),
            }
        }
    }
    v
}

/// Rescales root matrices so that they realize the system's structure constants.
/// Returns the sign applied to each root.
fn normalize(sys: &RootSystem, xs: &mut [IntMat]) -> Result<Vec<i8>> {
    for a in sys.positive_roots() {
        let na = sys.neg(a);
        let h = xs[a.0].bracket(&xs[na.0]);
        let act = h.bracket(&xs[a.0]);
        if act == xs[a.0].scale(-2) {
            xs[na.0] = xs[na.0].scale(-1);
        } else if act != xs[a.0].scale(2) {
            return Err(Error::UnsupportedRep(format!("root {} is not an sl2 triple", sys.name(a))));
        }
    }
    let mut eta = vec![1i8; sys.num_roots()];
    let mut done: HashMap<Root, ()> = sys.simple_roots().into_iter().map(|r| (r, ())).collect();
    for xi in sys.positive_roots() {
        if done.contains_key(&xi) {
            continue;
        }
        let (a, b) = sys
            .positive_roots()
            .flat_map(|a| sys.positive_roots().map(move |b| (a, b)))
            .find(|&(a, b)| a < b && sys.add(a, b) == Some(xi))
            .expect("non-simple positive roots are sums of positive roots");
        let c = xs[a.0].bracket(&xs[b.0]).ratio(&xs[xi.0]).ok_or(Error::StructureConstants(a.0, b.0, xi.0))?;
        let n = sys.structure_constant(a, b) as i64;
        let s = match c {
            _ if c == n => 1,
            _ if c == -n => -1,
            _ => return Err(Error::StructureConstants(a.0, b.0, xi.0)),
        };
        if s < 0 {
            let nx = sys.neg(xi);
            xs[xi.0] = xs[xi.0].scale(-1);
            xs[nx.0] = xs[nx.0].scale(-1);
            eta[xi.0] = -1;
            eta[nx.0] = -1;
        }
        done.insert(xi, ());
    }
    Ok(eta)
}
