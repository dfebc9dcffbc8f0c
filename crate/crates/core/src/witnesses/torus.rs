//! Torus witnesses: `s in T(R)` centralizing `U_a` and acting without fixed
//! points on `U_b \ {1}`. Everything here is computed from the root datum via
//! `x_b(r)^{h_g(t)} = x_b(t^{-A_gb} r)`.

use serde::Serialize;

use crate::chevgroup::Chevalley;
use crate::error::Result;
use crate::rings::{Ring, RingElem};
use crate::rootsys::{Rank2Type, Root, RootSystem, RootType};

/// Largest `|R*|^rank` searched exhaustively.
const SEARCH_LIMIT: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessSource {
    /// `h_b(r)` for `b` orthogonal to `a`.
    Orthogonal,
    /// `h_b(r) h_g(r)` inside an `A2` span.
    A2Pair,
    /// `h_g(r)` with `g` orthogonal to `a` in a `B2` or `G2` span.
    Rank2Gamma,
    /// Some single `h_g(t)`.
    SingleFactor,
    /// Product over the simple coroots found by exhaustive search.
    Search,
}

#[derive(Clone, Debug)]
pub struct TorusWitness {
    pub word: Vec<(Root, RingElem)>,
    pub source: WitnessSource,
}

/// The scalar by which `prod h_{g_i}(t_i)` acts on `U_b`.
pub fn character(sys: &RootSystem, word: &[(Root, RingElem)], b: Root) -> RingElem {
    let one = word.first().map(|(_, t)| t.ring().one());
    word.iter().fold(one.expect("empty word has no ring"), |acc, (g, t)| {
        acc * t.powi(-sys.cartan_integer(*g, b) as i64).expect("torus parameters are units")
    })
}

/// Centralizes `U_a` and moves every non-identity element of `U_b`.
pub fn is_torus_witness(sys: &RootSystem, word: &[(Root, RingElem)], a: Root, b: Root) -> bool {
    if word.is_empty() {
        return false;
    }
    let one = word[0].1.ring().one();
    character(sys, word, a).is_one() && (character(sys, word, b) - one).is_unit()
}

/// A unit `r` with `r^2 - 1` and `r^3 - 1` both units.
pub fn generic_unit(ring: &Ring) -> Option<RingElem> {
    let one = ring.one();
    ring.units().ok()?.into_iter().find(|r| (r.pow(2) - one.clone()).is_unit() && (r.pow(3) - one.clone()).is_unit())
}

fn recipe(sys: &RootSystem, a: Root, b: Root, r: &RingElem) -> Option<TorusWitness> {
    let w = |word: Vec<(Root, RingElem)>, source| {
        is_torus_witness(sys, &word, a, b).then_some(TorusWitness { word, source })
    };
    if sys.orthogonal(a, b) {
        return w(vec![(b, r.clone())], WitnessSource::Orthogonal);
    }
    let span = sys.rank2_subsystem(a, b).ok()?;
    match sys.rank2_span_type(a, b).ok()? {
        Rank2Type::A2 => span
            .iter()
            .filter(|&&g| g != a && g != sys.neg(a) && g != sys.neg(b))
            .find_map(|&g| w(vec![(b, r.clone()), (g, r.clone())], WitnessSource::A2Pair)),
        _ => span
            .iter()
            .filter(|&&g| sys.orthogonal(g, a) && !sys.orthogonal(g, b))
            .find_map(|&g| w(vec![(g, r.clone())], WitnessSource::Rank2Gamma)),
    }
}

/// A torus witness for the independent pair `(a, b)`, or `None` if no product of
/// elementary torus elements works.
pub fn torus_witness(sys: &RootSystem, a: Root, b: Root, ring: &Ring) -> Option<TorusWitness> {
    if !sys.independent(a, b) {
        return None;
    }
    let units = ring.units().ok()?;
    if units.len() >= 4 {
        if let Some(found) = generic_unit(ring).and_then(|r| recipe(sys, a, b, &r)) {
            return Some(found);
        }
    }
    let nontrivial: Vec<&RingElem> = units.iter().filter(|t| !t.is_one()).collect();
    for g in sys.roots() {
        for &t in &nontrivial {
            let word = vec![(g, t.clone())];
            if is_torus_witness(sys, &word, a, b) {
                return Some(TorusWitness { word, source: WitnessSource::SingleFactor });
            }
        }
    }
    let rank = sys.rank();
    if units.len().checked_pow(rank as u32).is_none_or(|n| n > SEARCH_LIMIT) {
        return None;
    }
    let mut idx = vec![0usize; rank];
    loop {
        let word: Vec<(Root, RingElem)> = idx
            .iter()
            .enumerate()
            .filter(|&(_, &k)| !units[k].is_one())
            .map(|(i, &k)| (sys.simple(i), units[k].clone()))
            .collect();
        if is_torus_witness(sys, &word, a, b) {
            return Some(TorusWitness { word, source: WitnessSource::Search });
        }
        let mut i = 0;
        loop {
            if i == rank {
                return None;
            }
            idx[i] += 1;
            if idx[i] < units.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusSurvey {
    pub system: String,
    pub ring: String,
    /// Ordered pairs of linearly independent roots.
    pub pairs: usize,
    pub found: usize,
    /// `(a, b)` with no witness.
    pub absent: Vec<(String, String)>,
    /// Absent exactly for orthogonal long-long pairs in `F4` over a ring with
    /// `R* = {+-1}`, and nowhere else.
    pub matches_exception: bool,
}

/// `torus_witness` on every ordered pair of independent roots.
pub fn torus_survey(sys: &RootSystem, ring: &Ring) -> Result<TorusSurvey> {
    let pm1 = ring.hypothesis_profile()?.units_eq_pm1;
    let (mut pairs, mut found, mut absent, mut matches) = (0, 0, Vec::new(), true);
    for a in sys.roots() {
        for b in sys.roots() {
            if !sys.independent(a, b) {
                continue;
            }
            pairs += 1;
            let exceptional = pm1
                && sys.root_type() == RootType::F
                && sys.orthogonal(a, b)
                && sys.is_long(a)
                && sys.is_long(b);
            let has = torus_witness(sys, a, b, ring).is_some();
            matches &= has != exceptional;
            if has {
                found += 1;
            } else {
                absent.push((sys.name(a), sys.name(b)));
            }
        }
    }
    Ok(TorusSurvey { system: sys.label(), ring: ring.to_string(), pairs, found, absent, matches_exception: matches })
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixOracleReport {
    pub group: String,
    pub targets: Vec<String>,
    pub checked: usize,
    /// Pairs where the matrices disagree with the root-datum prediction.
    pub disagreements: Vec<(String, String)>,
}

/// For each target `a` and every independent `b` with a witness: the matrix
/// of the witness commutes with `U_a` and fixes only `1` in `U_b`.
pub fn torus_matrix_oracle(g: &Chevalley, targets: &[Root]) -> Result<MatrixOracleReport> {
    let sys = g.sys();
    let ops = g.ops();
    let (mut checked, mut disagreements) = (0, Vec::new());
    for &a in targets {
        let ua = g.root_group(a);
        for b in sys.roots() {
            if !sys.independent(a, b) {
                continue;
            }
            let Some(w) = torus_witness(sys, a, b, &g.ring) else { continue };
            let s = g.torus_word(&w.word)?;
            checked += 1;
            let centralizes = ua.iter().all(|x| ops.commute(x, &s));
            let fixed = g.root_group(b).iter().filter(|x| ops.commute(x, &s)).count();
            if !centralizes || fixed != 1 {
                disagreements.push((sys.name(a), sys.name(b)));
            }
        }
    }
    Ok(MatrixOracleReport { group: g.label(), targets: targets.iter().map(|&a| sys.name(a)).collect(), checked, disagreements })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevgroup::Chevalley;

    fn f(q: &str) -> Ring {
        Ring::parse(q).unwrap()
    }

    #[test]
    fn generic_recipes() {
        let f5 = f("F5");
        assert_eq!(generic_unit(&f5).unwrap().code(), 2);
        let a3 = RootSystem::parse("A3").unwrap();
        let (a, c) = (a3.simple(0), a3.simple(2));
        let w = torus_witness(&a3, a, c, &f5).unwrap();
        assert_eq!(w.source, WitnessSource::Orthogonal);
        assert_eq!(w.word, vec![(c, f5.from_int(2))]);
        let b = a3.simple(1);
        let w = torus_witness(&a3, a, b, &f5).unwrap();
        assert_eq!(w.source, WitnessSource::A2Pair);
        assert_eq!(w.word.len(), 2);
        let b2 = RootSystem::parse("B2").unwrap();
        let w = torus_witness(&b2, b2.simple(0), b2.simple(1), &f5).unwrap();
        assert_eq!(w.source, WitnessSource::Rank2Gamma);
    }

    #[test]
    fn f4_absent_exactly_for_orthogonal_long_pairs() {
        let sys = RootSystem::parse("F4").unwrap();
        let f3 = f("F3");
        let mut absent = 0;
        for a in sys.roots() {
            for b in sys.roots() {
                if !sys.independent(a, b) {
                    continue;
                }
                let w = torus_witness(&sys, a, b, &f3);
                let exceptional = sys.orthogonal(a, b) && sys.is_long(a) && sys.is_long(b);
                assert_eq!(w.is_none(), exceptional, "{} {}", sys.name(a), sys.name(b));
                absent += w.is_none() as usize;
            }
        }
        assert_eq!(absent, 144);
        // With more units the exceptional pairs get witnesses too.
        let a = sys.simple(0);
        let b = sys.roots().find(|&b| b != a && sys.orthogonal(a, b) && sys.is_long(b)).unwrap();
        assert!(torus_witness(&sys, a, b, &f("F5")).is_some());
    }

    #[test]
    fn e_types_have_witnesses_over_f3() {
        for t in ["E6", "E7"] {
            let sys = RootSystem::parse(t).unwrap();
            let a = sys.simple(0);
            for b in sys.positive_roots().filter(|&b| b != a) {
                assert!(torus_witness(&sys, a, b, &f("F3")).is_some(), "{t} {}", sys.name(b));
            }
        }
    }

    #[test]
    fn trivial_unit_group_has_no_witnesses() {
        let sys = RootSystem::parse("A2").unwrap();
        assert!(torus_witness(&sys, sys.simple(0), sys.simple(1), &f("F2")).is_none());
    }

    /// Root-datum predicate against fixed points of the actual matrices.
    #[test]
    fn agrees_with_matrices() {
        for (spec, q) in [("SL3", "F5"), ("Sp4", "F3"), ("Sp4", "F5"), ("G2adj", "F3"), ("B2adj", "F4"), ("SL4", "F7")] {
            let g = Chevalley::parse(spec, f(q)).unwrap();
            let sys = g.sys();
            let a = sys.highest_root();
            for b in sys.roots() {
                if !sys.independent(a, b) {
                    continue;
                }
                let Some(w) = torus_witness(sys, a, b, &g.ring) else { continue };
                let s = g.torus_word(&w.word).unwrap();
                let ops = g.ops();
                assert!(g.root_group(a).iter().all(|x| ops.commute(x, &s)));
                let fixed = g.root_group(b).iter().filter(|x| ops.commute(x, &s)).count();
                assert_eq!(fixed, 1, "{spec}/{q} {}", sys.name(b));
            }
        }
    }

    #[test]
    fn survey_and_matrix_oracle() {
        let sys = RootSystem::parse("F4").unwrap();
        let r = torus_survey(&sys, &f("F3")).unwrap();
        assert_eq!((r.pairs, r.absent.len()), (48 * 46, 144));
        assert!(r.matches_exception);
        assert!(torus_survey(&sys, &f("F5")).unwrap().absent.is_empty());
        let g = Chevalley::parse("G2adj", f("F5")).unwrap();
        let targets = [g.sys().highest_root(), g.sys().simple(0)];
        let m = torus_matrix_oracle(&g, &targets).unwrap();
        assert!(m.disagreements.is_empty() && m.checked == 20, "{m:?}");
    }
}
