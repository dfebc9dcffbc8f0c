//! Double centralizers of root elements, by full enumeration or through the
//! linear commutant over a field.

use std::collections::BTreeSet;

use serde::Serialize;

use super::sets::{augmented_torus_witness_set, torus_witness_set, WitnessSet};
use crate::chevgroup::{
    commutant_group_points, set_product, Chevalley, EnumeratedGroup, Form, GroupElem, Subgroup,
};
use crate::error::{Error, Result};
use crate::rootsys::{Root, RootType};

/// Default limit on commutant points visited by the linear route.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

const SIDE_BUDGET: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Enumeration,
    Linear,
}

/// Enumeration when `|R|^dim G` fits under `cap`, otherwise the linear route.
pub fn choose_backend(g: &Chevalley, cap: usize) -> Backend {
    let dim = (g.sys().num_roots() + g.sys().rank()) as u32;
    match (g.t().size as u64).checked_pow(dim) {
        Some(n) if n <= cap as u64 => Backend::Enumeration,
        _ => Backend::Linear,
    }
}

/// The root used for a given length: `U_12` / `U_1` in the classical forms,
/// otherwise the first simple root of that length.
pub fn pick_root(g: &Chevalley, long: bool) -> Result<Root> {
    let rep = &g.rep;
    let sys = g.sys();
    let none = || Error::Config(format!("{} has no {} roots", g.label(), if long { "long" } else { "short" }));
    if sys.is_simply_laced() && !long {
        return Err(none());
    }
    let r = match rep.form {
        Form::SpecialLinear | Form::OrthogonalEven => rep.root_ij(1, 2),
        Form::Symplectic => if long { rep.root_i(1) } else { rep.root_ij(1, 2) },
        Form::OrthogonalOdd => if long { rep.root_ij(1, 2) } else { rep.root_i(1) },
        Form::Adjoint => sys.simple_roots().into_iter().find(|&a| sys.is_long(a) == long),
    };
    r.ok_or_else(none)
}

/// Type `C_n` or `B_2`, a short root, and `R* = {1, -1}`.
pub fn is_exceptional(g: &Chevalley, a: Root) -> Result<bool> {
    let sys = g.sys();
    let c_type = sys.root_type() == RootType::C || (sys.root_type() == RootType::B && sys.rank() == 2);
    Ok(c_type && sys.is_short(a) && g.ring.hypothesis_profile()?.units_eq_pm1)
}

/// `U_a U_{l1} U_{l2} Z` for the two long roots `l` with `l - a` a root.
pub fn exceptional_bound(g: &Chevalley, a: Root) -> Subgroup {
    let sys = g.sys();
    let mut parts = vec![Subgroup::RootGroup(a)];
    for l in sys.roots().filter(|&l| sys.is_long(l) && sys.combo(1, l, -1, a).is_some()) {
        parts.push(Subgroup::RootGroup(l));
    }
    parts.push(Subgroup::Center);
    Subgroup::Product(parts)
}

fn subset(a: &[GroupElem], b: &BTreeSet<GroupElem>) -> bool {
    a.iter().all(|x| b.contains(x))
}

fn as_set(v: &[GroupElem]) -> BTreeSet<GroupElem> {
    v.iter().cloned().collect()
}

/// `C(u)`, `C(C(u))` and `Z(C(u))` as sorted element lists.
pub struct DcSets {
    pub c: Vec<GroupElem>,
    pub cc: Vec<GroupElem>,
    pub zc: Vec<GroupElem>,
}

pub fn dc_sets_enumerated(e: &EnumeratedGroup, u: &GroupElem) -> DcSets {
    let ci = e.centralizer(std::slice::from_ref(u));
    let cci = e.centralizer_of_indices(&ci);
    let cset: BTreeSet<usize> = ci.iter().copied().collect();
    let zci: Vec<usize> = cci.iter().copied().filter(|i| cset.contains(i)).collect();
    let sorted = |idx: &[usize]| {
        let mut v = e.elems(idx);
        v.sort();
        v
    };
    DcSets { c: sorted(&ci), cc: sorted(&cci), zc: sorted(&zci) }
}

pub fn dc_sets_linear(g: &Chevalley, u: &GroupElem, budget: u64) -> Result<DcSets> {
    let (_, c) = commutant_group_points(g, std::slice::from_ref(u), budget)?;
    let (_, cc) = commutant_group_points(g, &c, budget)?;
    let cset = as_set(&c);
    let zc = cc.iter().filter(|x| cset.contains(*x)).cloned().collect();
    Ok(DcSets { c, cc, zc })
}

#[derive(Clone, Debug, Serialize)]
pub struct DcSizes {
    #[serde(rename = "C_u")]
    pub c_u: usize,
    #[serde(rename = "CC_u")]
    pub cc_u: usize,
    #[serde(rename = "ZC_u")]
    pub zc_u: usize,
    #[serde(rename = "UZ")]
    pub uz: usize,
    /// Size of `U U1 U2 Z` in the exceptional case.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DcCase {
    /// `C(C(u)) = Z(C(u)) = U(R) Z(R)`.
    Generic,
    /// `Z(C(u)) <= U U1 U2 Z`.
    Exceptional,
}

#[derive(Clone, Debug, Serialize)]
pub struct DCReport {
    pub group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    pub root: String,
    pub long: bool,
    pub backend: Backend,
    pub case: DcCase,
    pub sizes: DcSizes,
    /// `U Z <= Z(C(u)) <= C(C(u))`.
    pub sanity: bool,
    /// Nothing is claimed here (units condition fails, or `R* = 1` in
    /// characteristic 2 for the exceptional case); the verdict is informational.
    pub exploratory: bool,
    pub verdict: bool,
}

fn dc_report(g: &Chevalley, a: Root, sets: DcSets, backend: Backend, order: Option<usize>) -> Result<DCReport> {
    let sys = g.sys();
    let uz = Subgroup::uz(a).materialize(g)?;
    let exceptional = is_exceptional(g, a)?;
    let profile = g.ring.hypothesis_profile()?;
    let zc_set = as_set(&sets.zc);
    let sanity = subset(&uz, &zc_set) && subset(&sets.zc, &as_set(&sets.cc));
    let (case, bound, verdict) = if exceptional {
        let b = exceptional_bound(g, a).materialize(g)?;
        let ok = sanity && subset(&sets.zc, &as_set(&b));
        (DcCase::Exceptional, Some(b.len()), ok)
    } else {
        (DcCase::Generic, None, sanity && sets.cc == uz && sets.zc == uz)
    };
    let needs_units = matches!(sys.root_type(), RootType::E | RootType::F);
    let exploratory = (needs_units && !profile.units_condition) || (exceptional && profile.units_count == 1);
    Ok(DCReport {
        group: g.label(),
        order,
        root: sys.name(a),
        long: sys.is_long(a),
        backend,
        case,
        sizes: DcSizes { c_u: sets.c.len(), cc_u: sets.cc.len(), zc_u: sets.zc.len(), uz: uz.len(), bound },
        sanity,
        exploratory,
        verdict,
    })
}

/// Double centralizer of `u = x_a(1)` in an enumerated group.
pub fn verify_dc(e: &EnumeratedGroup, a: Root) -> Result<DCReport> {
    let g = &e.group;
    let u = g.x(a, &g.ring.one());
    dc_report(g, a, dc_sets_enumerated(e, &u), Backend::Enumeration, Some(e.order()))
}

/// Double centralizer of `x_a(1)` through commutant subspaces over a field.
pub fn verify_dc_linear(g: &Chevalley, a: Root, budget: u64) -> Result<DCReport> {
    let u = g.x(a, &g.ring.one());
    dc_report(g, a, dc_sets_linear(g, &u, budget)?, Backend::Linear, None)
}

/// Picks the root by length and the backend by predicted size.
pub fn check_dc(g: &Chevalley, long: bool, cap: usize, budget: u64) -> Result<DCReport> {
    let a = pick_root(g, long)?;
    match choose_backend(g, cap) {
        Backend::Enumeration => verify_dc(&EnumeratedGroup::from_root_generators(g.clone(), cap)?, a),
        Backend::Linear => verify_dc_linear(g, a, budget),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ContainmentReport {
    pub group: String,
    pub witness: String,
    pub target: String,
    pub witnesses: usize,
    pub backend: Backend,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub commutant_dim: Option<usize>,
    /// Size of `C(Y)`.
    pub points: usize,
    pub expected: String,
    pub expected_size: usize,
    pub verdict: bool,
}

/// `C(Y) <= expected`, with `C(Y)` computed from the linear commutant.
pub fn verify_containment(g: &Chevalley, y: &WitnessSet, expected: &Subgroup, budget: u64) -> Result<ContainmentReport> {
    let (dim, pts) = commutant_group_points(g, &y.elements, budget)?;
    containment_report(g, y, expected, Backend::Linear, Some(dim), pts)
}

/// `C(Y) <= expected` by scanning an enumerated group.
pub fn verify_containment_enumerated(e: &EnumeratedGroup, y: &WitnessSet, expected: &Subgroup) -> Result<ContainmentReport> {
    let pts = e.elems(&e.centralizer(&y.elements));
    containment_report(&e.group, y, expected, Backend::Enumeration, None, pts)
}

fn containment_report(
    g: &Chevalley,
    y: &WitnessSet,
    expected: &Subgroup,
    backend: Backend,
    commutant_dim: Option<usize>,
    pts: Vec<GroupElem>,
) -> Result<ContainmentReport> {
    let exp = expected.materialize(g)?;
    let verdict = y.non_commuting(g).is_empty() && subset(&pts, &as_set(&exp));
    Ok(ContainmentReport {
        group: g.label(),
        witness: y.kind.to_string(),
        target: g.sys().name(y.target),
        witnesses: y.len(),
        backend,
        commutant_dim,
        points: pts.len(),
        expected: expected.describe(g),
        expected_size: exp.len(),
        verdict,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusCutReport {
    pub group: String,
    pub root: String,
    pub backend: Backend,
    /// Torus witnesses, one per positive root other than the target.
    pub torus_witnesses: usize,
    /// Root elements added to make the centralizer small.
    pub augmented: usize,
    pub c_y: usize,
    pub uz: usize,
    /// `|C(Y)|` and containment for the torus witnesses alone, when computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torus_only: Option<(usize, bool)>,
    pub verdict: bool,
}

/// `C(Y) <= U_a Z` for `Y` made of torus witnesses and root elements of `C(U_a)`.
pub fn verify_torus_cut(g: &Chevalley, a: Root, cap: usize, budget: u64) -> Result<TorusCutReport> {
    let ty = torus_witness_set(g, a)?;
    let y = augmented_torus_witness_set(g, a)?;
    let uz = Subgroup::uz(a);
    let backend = choose_backend(g, cap);
    let (main, torus_only) = match backend {
        Backend::Enumeration => {
            let e = EnumeratedGroup::from_root_generators(g.clone(), cap)?;
            let t = verify_containment_enumerated(&e, &ty, &uz)?;
            (verify_containment_enumerated(&e, &y, &uz)?, Some((t.points, t.verdict)))
        }
        Backend::Linear => {
            // Side check only; skipped when the torus commutant is large.
            let t = verify_containment(g, &ty, &uz, budget.min(SIDE_BUDGET)).ok().map(|t| (t.points, t.verdict));
            (verify_containment(g, &y, &uz, budget)?, t)
        }
    };
    Ok(TorusCutReport {
        group: g.label(),
        root: g.sys().name(a),
        backend,
        torus_witnesses: ty.len(),
        augmented: y.len() - ty.len(),
        c_y: main.points,
        uz: main.expected_size,
        torus_only,
        verdict: main.verdict,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Sp4ExactReport {
    pub group: String,
    pub units_eq_pm1: bool,
    pub backend: Backend,
    /// `xi` lies in `C(v)`.
    pub xi_commutes: bool,
    pub zc_v: usize,
    /// `+-U12 phi(R)` when `R* = {1, -1}`, otherwise `+-U12`.
    pub expected: String,
    pub expected_size: usize,
    pub verdict: bool,
}

/// `phi(r) = 1 + r (e_{1,-1} - e_{-2,2})` for every `r`.
pub fn sp4_phi(g: &Chevalley) -> Vec<GroupElem> {
    let m = g.rep.unit(1, -1).sub(&g.rep.unit(-2, 2));
    let ops = g.ops();
    let id = g.identity();
    let base = g.from_int_mat(&m);
    (0..g.t().size as u32).map(|r| ops.add(&id, &ops.scale(r as u16, &base))).collect()
}

/// `xi = (e_{1,-2} - e_{2,-1}) - (e_{-1,2} - e_{-2,1}) + sum_{|i|>2} e_ii`.
pub fn sp4_xi(g: &Chevalley) -> GroupElem {
    let r = &g.rep;
    let mut m = r.unit(1, -2).sub(&r.unit(2, -1)).sub(&r.unit(-1, 2)).add(&r.unit(-2, 1));
    for &l in r.labels.iter().filter(|l| l.abs() > 2) {
        m = m.add(&r.unit(l, l));
    }
    g.from_int_mat(&m)
}

/// Exact `Z(C(v))` for `v = x_{12}(1)` in `Sp4` over a field.
pub fn verify_dc_exceptional_sp4(g: &Chevalley, cap: usize, budget: u64) -> Result<Sp4ExactReport> {
    if g.rep.form != Form::Symplectic || g.sys().rank() != 2 {
        return Err(Error::UnsupportedRep(format!("{} is not Sp4", g.label())));
    }
    let a = g.rep.root_ij(1, 2).expect("Sp4 has the root e1 - e2");
    let v = g.x(a, &g.ring.one());
    let backend = choose_backend(g, cap);
    let sets = match backend {
        Backend::Enumeration => dc_sets_enumerated(&EnumeratedGroup::from_root_generators(g.clone(), cap)?, &v),
        Backend::Linear => dc_sets_linear(g, &v, budget)?,
    };
    let pm1 = g.ring.hypothesis_profile()?.units_eq_pm1;
    let mut parts = vec![g.scalar_center(), g.root_group(a)];
    if pm1 {
        parts.push(sp4_phi(g));
    }
    let expected = set_product(g, &parts);
    let xi = sp4_xi(g);
    let xi_commutes = g.is_member(&xi) && g.ops().commute(&xi, &v);
    Ok(Sp4ExactReport {
        group: g.label(),
        units_eq_pm1: pm1,
        backend,
        xi_commutes,
        zc_v: sets.zc.len(),
        expected: if pm1 { "+-U12 phi(R)".into() } else { "+-U12".into() },
        expected_size: expected.len(),
        verdict: xi_commutes && sets.zc == expected,
    })
}
