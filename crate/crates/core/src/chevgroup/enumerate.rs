use rustc_hash::FxHashMap;

use super::group::Chevalley;
use super::matrix::GroupElem;
use crate::error::{Error, Result};
use crate::rings::Code;

pub const DEFAULT_CAP: usize = 2_000_000;

/// A fully materialized finite group, in BFS order from the identity.
///
/// Element `i` is `elements[parent[i]] * generators[gen[i]]`; the identity has
/// no parent. Depth is the word length in the generators.
pub struct EnumeratedGroup {
    pub group: Chevalley,
    pub generators: Vec<GroupElem>,
    pub elements: Vec<GroupElem>,
    index: FxHashMap<GroupElem, u32>,
    pub parent: Vec<u32>,
    pub gen: Vec<u32>,
    pub depth: Vec<u16>,
}

impl EnumeratedGroup {
    /// Closure of `generators` under right multiplication.
    pub fn new(group: Chevalley, generators: Vec<GroupElem>, cap: usize) -> Result<Self> {
        let ops = group.ops();
        let id = ops.identity();
        let mut index = FxHashMap::default();
        index.insert(id.clone(), 0u32);
        let mut elements = vec![id];
        let mut parent = vec![u32::MAX];
        let mut gen = vec![u32::MAX];
        let mut depth = vec![0u16];
        let mut head = 0;
        while head < elements.len() {
            let cur = elements[head].clone();
            for (k, g) in generators.iter().enumerate() {
                let next = ops.mul(&cur, g);
                if index.contains_key(&next) {
                    continue;
                }
                if elements.len() >= cap {
                    return Err(Error::CapExceeded { cap, reached: elements.len() });
                }
                index.insert(next.clone(), elements.len() as u32);
                elements.push(next);
                parent.push(head as u32);
                gen.push(k as u32);
                depth.push(depth[head] + 1);
            }
            head += 1;
        }
        Ok(EnumeratedGroup { group, generators, elements, index, parent, gen, depth })
    }

    /// The group generated by `x_a(b)` for all roots and additive generators `b`.
    pub fn from_root_generators(group: Chevalley, cap: usize) -> Result<Self> {
        let gens = group.root_generators();
        Self::new(group, gens, cap)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, g: &[Code]) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn contains(&self, g: &[Code]) -> bool {
        self.index.contains_key(g)
    }

    /// Generator indices whose product is element `i`.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while self.parent[i] != u32::MAX {
            w.push(self.gen[i] as usize);
            i = self.parent[i] as usize;
        }
        w.reverse();
        w
    }

    /// Indices of elements commuting with every element of `s`.
    pub fn centralizer(&self, s: &[GroupElem]) -> Vec<usize> {
        let ops = self.group.ops();
        let span = spanning_subset(&self.group, s.iter());
        (0..self.elements.len())
            .filter(|&i| span.iter().all(|y| ops.commute(&self.elements[i], y)))
            .collect()
    }

    pub fn centralizer_of_indices(&self, idx: &[usize]) -> Vec<usize> {
        let s: Vec<GroupElem> = idx.iter().map(|&i| self.elements[i].clone()).collect();
        self.centralizer(&s)
    }

    pub fn center(&self) -> Vec<usize> {
        self.centralizer(&self.generators)
    }

    pub fn elems(&self, idx: &[usize]) -> Vec<GroupElem> {
        idx.iter().map(|&i| self.elements[i].clone()).collect()
    }
}

/// A subset of `s` whose linear span equals the span of `s`; an element
/// commutes with all of `s` iff it commutes with this subset.
pub fn spanning_subset<'a>(group: &Chevalley, s: impl Iterator<Item = &'a GroupElem>) -> Vec<GroupElem> {
    let mut basis = super::linear::EchelonBasis::new(group.d() * group.d());
    let t = group.t();
    let mut out = Vec::new();
    for g in s {
        if basis.insert(t, g) {
            out.push(g.clone());
        }
        if basis.is_full() {
            break;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::Ring;

    fn enumerate(spec: &str, ring: &str) -> EnumeratedGroup {
        let g = Chevalley::parse(spec, Ring::parse(ring).unwrap()).unwrap();
        EnumeratedGroup::from_root_generators(g, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(enumerate("SL3", "F2").order(), 168);
        assert_eq!(enumerate("SL3", "F3").order(), 5616);
        assert_eq!(enumerate("SL3", "F4").order(), 60480);
        assert_eq!(enumerate("Sp4", "F2").order(), 720);
        assert_eq!(enumerate("Sp4", "F3").order(), 51840);
        assert_eq!(enumerate("G2adj", "F2").order(), 12096);
    }

    #[test]
    fn cap_is_enforced() {
        let g = Chevalley::parse("SL3", Ring::parse("F3").unwrap()).unwrap();
        match EnumeratedGroup::from_root_generators(g, 1000) {
            Err(Error::CapExceeded { cap: 1000, reached: 1000 }) => {}
            other => panic!("unexpected {:?}", other.map(|e| e.order())),
        }
    }

    #[test]
    fn words_reconstruct_elements() {
        let e = enumerate("SL3", "F2");
        for i in (0..e.order()).step_by(7) {
            let w: Vec<GroupElem> = e.word(i).into_iter().map(|k| e.generators[k].clone()).collect();
            assert_eq!(e.group.product(&w), e.elements[i]);
            assert_eq!(w.len(), e.depth[i] as usize);
        }
    }

    #[test]
    fn centers_and_centralizers() {
        assert_eq!(enumerate("G2adj", "F2").center().len(), 1);
        assert_eq!(enumerate("SL3", "F4").center().len(), 3);
        let sp = enumerate("Sp4", "F3");
        assert_eq!(sp.center().len(), 2);
        let e = enumerate("SL3", "F2");
        assert_eq!(e.centralizer(&[e.group.identity()]).len(), 168);
        let a = e.group.sys().simple(0);
        let u = e.group.x(a, &e.group.ring.one());
        let c = e.centralizer(&[u]);
        for r in e.group.root_group(a) {
            assert!(c.contains(&e.index_of(&r).unwrap()));
        }
        let cc = e.centralizer_of_indices(&c);
        let ccc = e.centralizer_of_indices(&cc);
        assert_eq!(c, ccc);
    }
}
