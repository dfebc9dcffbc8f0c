//! Exhaustive check of the Bruhat factorization `g = u . t n_w . v` over a
//! finite field, with `v` restricted to the root groups of `S(w) = {b > 0 : w(b) < 0}`.

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use super::enumerate::EnumeratedGroup;
use super::matrix::GroupElem;
use super::subgroup::{set_product, Subgroup};
use crate::error::{Error, Result};
use crate::rootsys::{Root, RootSystem};

/// A Weyl group element as a permutation of root indices, with a reduced word
/// in the simple reflections.
#[derive(Clone, Debug)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub perm: Vec<Root>,
}

impl WeylElement {
    pub fn apply(&self, a: Root) -> Root {
        self.perm[a.0]
    }

    /// Positive roots sent to negative roots.
    pub fn inversions(&self, sys: &RootSystem) -> Vec<Root> {
        sys.positive_roots().filter(|&b| !sys.is_positive(self.apply(b))).collect()
    }
}

/// All of `W`, breadth-first by word length.
pub fn weyl_group(sys: &RootSystem) -> Vec<WeylElement> {
    let id: Vec<Root> = sys.roots().collect();
    let mut seen = FxHashMap::default();
    seen.insert(id.clone(), 0usize);
    let mut out = vec![WeylElement { word: vec![], perm: id }];
    let mut head = 0;
    while head < out.len() {
        for i in 0..sys.rank() {
            let s = sys.simple(i);
            // (w s_i)(a) = w(s_i(a))
            let perm: Vec<Root> = sys.roots().map(|a| out[head].apply(sys.reflect(s, a))).collect();
            if !seen.contains_key(&perm) {
                seen.insert(perm.clone(), out.len());
                let mut word = out[head].word.clone();
                word.push(i);
                out.push(WeylElement { word, perm });
            }
        }
        head += 1;
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct BruhatReport {
    pub group: String,
    pub order: usize,
    pub weyl_order: usize,
    pub unipotent: usize,
    pub torus: usize,
    pub tuples: usize,
    pub distinct: usize,
    /// First element reached twice or lying outside the group, if any.
    pub counterexample: Option<String>,
    pub verdict: bool,
}

pub fn verify_bruhat(e: &EnumeratedGroup) -> Result<BruhatReport> {
    let g = &e.group;
    if !g.ring.is_field() {
        return Err(Error::Bruhat(format!("{} is not a field", g.ring)));
    }
    let sys = g.sys();
    let q = g.t().size;
    let pos: Vec<Root> = sys.positive_roots().collect();
    let root_groups = |rs: &[Root]| -> Vec<Vec<GroupElem>> { rs.iter().map(|&a| g.root_group(a)).collect() };
    let u = set_product(g, &root_groups(&pos));
    if u.len() != q.pow(pos.len() as u32) {
        return Err(Error::Bruhat(format!("unipotent radical has {} elements", u.len())));
    }
    let torus = Subgroup::Torus.materialize(g)?;
    let weyl = weyl_group(sys);

    let mut seen: FxHashSet<GroupElem> = FxHashSet::default();
    let mut tuples = 0;
    let mut counterexample = None;
    for w in &weyl {
        let nw = g.weyl_rep(&w.word);
        let v = set_product(g, &root_groups(&w.inversions(sys)));
        let tn: Vec<GroupElem> = torus.iter().map(|t| g.mul(t, &nw)).collect();
        for ui in &u {
            for x in &tn {
                let ux = g.mul(ui, x);
                for vi in &v {
                    let el = g.mul(&ux, vi);
                    tuples += 1;
                    if counterexample.is_none() && !e.contains(&el) {
                        counterexample = Some(format!("{} lies outside the group", g.format(&el)));
                    }
                    if !seen.insert(el.clone()) && counterexample.is_none() {
                        counterexample = Some(format!("{} has two factorizations", g.format(&el)));
                    }
                }
            }
        }
    }
    let distinct = seen.len();
    let verdict = counterexample.is_none() && tuples == e.order() && distinct == e.order();
    Ok(BruhatReport {
        group: g.label(),
        order: e.order(),
        weyl_order: weyl.len(),
        unipotent: u.len(),
        torus: torus.len(),
        tuples,
        distinct,
        counterexample,
        verdict,
    })
}
