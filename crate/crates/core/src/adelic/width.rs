//! Bounded generation by root subgroups: the eight-fold product
//! `K_a = U_-a U_a U_-a U_a U_-a U_a U_-a U_a` in `SL2`, and for higher rank
//! the number of root-subgroup factors `K_a1 K_a2 ... ` needed to cover the
//! group, measured by growing the product set one factor at a time.

use rustc_hash::{FxHashMap, FxHashSet};
use serde::Serialize;

use super::group::{Mat2, QuotientMode, Sl2Group};
use super::sets::{lower_unipotents, torus, unipotents};
use crate::chevgroup::Chevalley;
use crate::definability::FiniteGroup;
use crate::error::{Error, Result};
use crate::rings::{Code, Ring};

#[derive(Clone, Debug, Serialize)]
pub struct KAlphaReport {
    pub group: String,
    pub order: usize,
    /// Size of `V`, `VU`, `VUV`, ... per component.
    pub sizes: Vec<Vec<usize>>,
    /// Factors after which every component is covered.
    pub covered_after: Option<usize>,
    pub w_reached_after: Option<usize>,
    pub h_reached_after: Option<usize>,
    pub covers: bool,
}

struct Growth {
    sizes: Vec<usize>,
    covered: Option<usize>,
    w: Option<usize>,
    h: Option<usize>,
}

fn grow(g: &Sl2Group) -> Growth {
    let (u, v) = (unipotents(g), lower_unipotents(g));
    let w = g.index_of(&g.w()).expect("w is in the group");
    let hs: Vec<usize> = torus(g).iter().map(|h| g.index_of(h).expect("torus")).collect();
    let n = g.order();
    let mut seen = vec![false; n];
    let mut cur = vec![g.index_of(&g.identity()).expect("identity")];
    seen[cur[0]] = true;
    let mut out = Growth { sizes: Vec::new(), covered: None, w: None, h: None };
    for k in 1..=8 {
        let factor: &[Mat2] = if k % 2 == 1 { &v } else { &u };
        let mut next = Vec::new();
        for &i in &cur {
            for f in factor {
                let j = g.index_of(&g.mul(g.element(i), f)).expect("closed");
                if !seen[j] {
                    seen[j] = true;
                    next.push(j);
                }
            }
        }
        cur.extend(next);
        out.sizes.push(cur.len());
        if out.w.is_none() && seen[w] {
            out.w = Some(k);
        }
        if out.h.is_none() && hs.iter().all(|&i| seen[i]) {
            out.h = Some(k);
        }
        if out.covered.is_none() && cur.len() == n {
            out.covered = Some(k);
        }
    }
    out
}

/// The eight-fold product, computed in `SL2` of each field component (the
/// product set over `A` is the product of the component sets).
pub fn k_alpha_product(ring: &Ring) -> Result<KAlphaReport> {
    let comps = ring.components();
    let mut growths = Vec::new();
    let mut order = 1;
    for c in &comps {
        let g = Sl2Group::new(c.clone(), QuotientMode::Sl2, usize::MAX)?;
        order *= g.order();
        growths.push(grow(&g));
    }
    let all = |f: fn(&Growth) -> Option<usize>| growths.iter().map(f).collect::<Option<Vec<_>>>().map(|v| v.into_iter().max().unwrap_or(0));
    let covered_after = all(|g| g.covered);
    Ok(KAlphaReport {
        group: format!("SL2({ring})"),
        order,
        sizes: growths.iter().map(|g| g.sizes.clone()).collect(),
        covered_after,
        w_reached_after: all(|g| g.w),
        h_reached_after: all(|g| g.h),
        covers: covered_after.is_some(),
    })
}

/// Group elements packed into `W` words of 128 bits, `bits` per matrix entry.
struct Packer<const W: usize> {
    bits: u32,
    len: usize,
}

impl<const W: usize> Packer<W> {
    fn new(bits: u32, len: usize) -> Self {
        Packer { bits, len }
    }

    /// Entries per word.
    fn per(&self) -> usize {
        (128 / self.bits) as usize
    }

    fn pack(&self, x: &[Code]) -> [u128; W] {
        let mut out = [0u128; W];
        for (k, &c) in x.iter().enumerate() {
            let w = &mut out[k / self.per()];
            *w = *w << self.bits | c as u128;
        }
        out
    }

    fn unpack(&self, p: &[u128; W], out: &mut [Code]) {
        let mask = (1u128 << self.bits) - 1;
        let per = self.per();
        for (i, &word) in p.iter().enumerate() {
            let lo = i * per;
            let hi = (lo + per).min(self.len);
            let mut word = word;
            for k in (lo..hi).rev() {
                out[k] = (word & mask) as Code;
                word >>= self.bits;
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HigherRankWidth {
    pub group: String,
    pub order: usize,
    /// Roots of the factors up to the last one that enlarged the product set.
    pub sequence: Vec<String>,
    /// Number of root-subgroup factors needed.
    pub n: usize,
    pub sizes: Vec<usize>,
}

/// Nonzero entries `(k, c, value)` of a matrix.
fn sparse(x: &[Code], d: usize) -> Vec<(usize, usize, Code)> {
    (0..d * d).filter(|&i| x[i] != 0).map(|i| (i / d, i % d, x[i])).collect()
}

/// Grows `U_b1 U_b2 ...` along `K_a1 K_a2 ... K_an K_a1 ...` over the simple
/// roots until every root group in the blocks fixes the set; it is then
/// closed under right multiplication by the generators, hence the whole
/// group. The set only grows by appending, and `U_b` is a group, so each
/// element needs its coset `s U_b` built once per root.
pub fn higher_rank_width(g: &Chevalley, cap: usize) -> Result<HigherRankWidth> {
    let size = g.t().size;
    let bits = usize::BITS - (size - 1).leading_zeros();
    let len = g.d() * g.d();
    let words = len.div_ceil((128 / bits) as usize);
    match words {
        1 => grow_width(g, Packer::<1>::new(bits, len), cap),
        2 => grow_width(g, Packer::<2>::new(bits, len), cap),
        3 | 4 => grow_width(g, Packer::<4>::new(bits, len), cap),
        _ => Err(Error::UnsupportedRep(format!("{} does not pack into 512 bits", g.label()))),
    }
}

fn grow_width<const W: usize>(g: &Chevalley, packer: Packer<W>, cap: usize) -> Result<HigherRankWidth> {
    let sys = g.sys();
    let t = g.t();
    let d = g.d();
    let block: Vec<_> = sys
        .simple_roots()
        .into_iter()
        .flat_map(|a| [sys.neg(a), a, sys.neg(a), a, sys.neg(a), a, sys.neg(a), a])
        .collect();
    let distinct: FxHashSet<_> = block.iter().copied().collect();
    let groups: Vec<Vec<_>> = block.iter().map(|&b| g.root_group(b).iter().map(|x| sparse(x, d)).collect()).collect();
    let mut seen: FxHashSet<[u128; W]> = FxHashSet::default();
    let mut cur = vec![packer.pack(&g.identity())];
    seen.insert(cur[0]);
    let (mut sizes, mut sequence, mut n) = (Vec::new(), Vec::new(), 0);
    let mut buf = vec![0 as Code; packer.len];
    let mut prod = vec![0 as Code; packer.len];
    // Elements of `cur` before this index have their whole coset in `seen`.
    let mut done: FxHashMap<_, usize> = distinct.iter().map(|&b| (b, 0)).collect();
    let mut k = 0;
    while done.values().any(|&m| m < cur.len()) {
        let slot = k % block.len();
        k += 1;
        sequence.push(sys.name(block[slot]));
        let from = done[&block[slot]];
        let mut next = Vec::new();
        for &p in &cur[from..] {
            packer.unpack(&p, &mut buf);
            for x in &groups[slot] {
                prod.fill(0);
                for r in 0..d {
                    for &(k, c, v) in x {
                        let e = &mut prod[r * d + c];
                        *e = t.add(*e, t.mul(buf[r * d + k], v));
                    }
                }
                let q = packer.pack(&prod);
                if seen.insert(q) {
                    next.push(q);
                }
            }
        }
        if !next.is_empty() {
            n = k;
            cur.extend(next);
            if cur.len() > cap {
                return Err(Error::CapExceeded { cap, reached: cur.len() });
            }
        }
        done.insert(block[slot], cur.len());
        sizes.push(cur.len());
    }
    sequence.truncate(n);
    sizes.truncate(n);
    Ok(HigherRankWidth { group: g.label(), order: cur.len(), sequence, n, sizes })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProductWidth {
    pub components: Vec<HigherRankWidth>,
    /// The factor sequence is the same for every component, so the product
    /// group is covered after the largest component count.
    pub n: usize,
}

pub fn higher_rank_width_product(spec: &str, ring: &Ring, cap: usize) -> Result<ProductWidth> {
    let components = ring
        .components()
        .into_iter()
        .map(|c| higher_rank_width(&Chevalley::parse(spec, c)?, cap))
        .collect::<Result<Vec<_>>>()?;
    let n = components.iter().map(|c| c.n).max().unwrap_or(0);
    Ok(ProductWidth { components, n })
}
