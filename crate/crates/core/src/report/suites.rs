//! Record builders, one per suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use super::{CheckRecord, Status, SuiteConfig};
use crate::adelic::{check_adelic, define_u, higher_rank_width, AdelicOptions, AdelicReport, QuotientMode, Sl2Group};
use crate::chevgroup::{commutator_word, verify_bruhat, weyl_group, Chevalley, EnumeratedGroup, Form, Subgroup};
use crate::definability::{
    dc_definition_formula, define_set, psi_check, root_group_formula, width_probe, RingInGroup, RootMaps, Theta,
    DEFAULT_EVAL_BUDGET,
};
use crate::error::{Error, Result};
use crate::rings::{Code, Ring};
use crate::rootsys::{Root, RootSystem, RootType};
use crate::witnesses::{
    check_dc, classical_witness_set, exceptional_bound, pick_root, torus_matrix_oracle, torus_survey,
    verify_containment, verify_dc_exceptional_sp4, verify_torus_cut, WitnessKind,
};

fn field(q: u32) -> Result<Ring> {
    Ring::parse(&format!("F{q}"))
}

fn group(spec: &str, ring: &str) -> Result<Chevalley> {
    Chevalley::parse(spec, Ring::parse(ring)?)
}

/// Turns a fallible check into a record; errors become failures.
fn record(name: String, claim: &str, f: impl FnOnce() -> Result<CheckRecord>) -> CheckRecord {
    f().unwrap_or_else(|e| CheckRecord::error(name, claim, &e))
}

/// `"<group> <ring> <rest>"`, as used by the case lists in the config.
fn split_case(case: &str) -> Result<(String, String, String)> {
    let mut it = case.split_whitespace();
    match (it.next(), it.next()) {
        (Some(g), Some(r)) => Ok((g.into(), r.into(), it.collect::<Vec<_>>().join(" "))),
        _ => Err(Error::Config(format!("case `{case}` needs a group and a ring"))),
    }
}

/// Degrees of the basic invariants of the Weyl group.
fn degrees(t: RootType, n: usize) -> Vec<u32> {
    let n32 = n as u32;
    match t {
        RootType::A => (2..=n32 + 1).collect(),
        RootType::B | RootType::C => (1..=n32).map(|i| 2 * i).collect(),
        RootType::D => (1..n32).map(|i| 2 * i).chain([n32]).collect(),
        RootType::G => vec![2, 6],
        RootType::F => vec![2, 6, 8, 12],
        RootType::E => match n {
            6 => vec![2, 5, 6, 8, 9, 12],
            7 => vec![2, 6, 8, 10, 12, 14, 18],
            _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
        },
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `q^N prod (q^d - 1)`, divided by the center of the simply connected
/// group for adjoint forms. `None` for orthogonal forms, whose root elements
/// generate a proper subgroup of `SO`.
pub fn expected_order(g: &Chevalley) -> Option<u128> {
    let sys = g.sys();
    let q = g.t().size as u128;
    if !g.ring.is_field() {
        return None;
    }
    let mut order = q.pow(sys.num_positive() as u32);
    for d in degrees(sys.root_type(), sys.rank()) {
        order *= q.pow(d) - 1;
    }
    let qm = q as u64 - 1;
    let center = match g.rep.form {
        Form::SpecialLinear | Form::Symplectic => 1,
        Form::OrthogonalOdd | Form::OrthogonalEven => return None,
        Form::Adjoint => match sys.root_type() {
            RootType::A => gcd(sys.rank() as u64 + 1, qm),
            RootType::B | RootType::C => gcd(2, qm),
            RootType::D => gcd(4, (q as u64).pow(sys.rank() as u32) - 1),
            RootType::E if sys.rank() == 6 => gcd(3, qm),
            RootType::E if sys.rank() == 7 => gcd(2, qm),
            _ => 1,
        },
    };
    Some(order / center as u128)
}

const ROOT_TABLE: [(&str, usize, Option<usize>); 11] = [
    ("A2", 6, Some(6)),
    ("A3", 12, Some(24)),
    ("B2", 8, Some(8)),
    ("B3", 18, Some(48)),
    ("C3", 18, Some(48)),
    ("D4", 24, Some(192)),
    ("G2", 12, Some(12)),
    ("F4", 48, Some(1152)),
    ("E6", 72, None),
    ("E7", 126, None),
    ("E8", 240, None),
];

pub fn roots_records() -> Vec<CheckRecord> {
    let claim = "root counts and Weyl group orders match the classification";
    ROOT_TABLE
        .iter()
        .map(|&(label, roots, weyl)| {
            record(label.into(), claim, || {
                let sys = RootSystem::parse(label)?;
                let closed = sys.roots().all(|a| sys.neg(sys.neg(a)) == a && sys.neg(a) != a);
                let w = weyl.map(|_| weyl_group(&sys).len());
                let ok = sys.num_roots() == roots && closed && w == weyl;
                Ok(CheckRecord::verdict(
                    label,
                    claim,
                    ok,
                    json!({ "roots": sys.num_roots(), "expected": roots, "weyl_order": w, "highest": sys.name(sys.highest_root()) }),
                ))
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorStats {
    pub group: String,
    pub pairs: usize,
    pub evaluations: usize,
    pub mismatches: usize,
    /// `x_a(r) x_a(s) = x_a(r + s)` failures.
    pub additive_failures: usize,
}

/// The commutator formula against matrix commutators, for every ordered pair
/// of independent roots and every `r, s`.
pub fn commutator_stats(g: &Chevalley) -> Result<CommutatorStats> {
    let sys = g.sys();
    let elems = g.ring.elements()?;
    let (mut pairs, mut evaluations, mut mismatches, mut additive_failures) = (0, 0, 0, 0);
    for a in sys.roots() {
        for r in &elems {
            for s in &elems {
                additive_failures += (g.mul(&g.x(a, r), &g.x(a, s)) != g.x(a, &(r + s))) as usize;
            }
        }
        for b in sys.roots() {
            if !sys.independent(a, b) {
                continue;
            }
            pairs += 1;
            for r in &elems {
                for s in &elems {
                    evaluations += 1;
                    let w = commutator_word(sys, a, b, r, s);
                    mismatches += (g.eval_word(&w) != g.comm(&g.x(a, r), &g.x(b, s))) as usize;
                }
            }
        }
    }
    Ok(CommutatorStats { group: g.label(), pairs, evaluations, mismatches, additive_failures })
}

pub fn commutator_records(c: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let claim = "commutator formula and one-parameter law agree with matrix products";
    for spec in c.groups.iter().chain(&c.linear_groups) {
        for &q in &c.fields {
            let name = format!("commutator {spec} F{q}");
            out.push(record(name.clone(), claim, || {
                let s = commutator_stats(&Chevalley::parse(spec, field(q)?)?)?;
                Ok(CheckRecord::verdict(name, claim, s.mismatches == 0 && s.additive_failures == 0, s))
            }));
        }
    }
    let claim = "enumerated order equals the order formula";
    let bruhat_claim = "Bruhat factorization is unique and exhaustive";
    for spec in &c.groups {
        for &q in &c.fields {
            let g = match field(q).and_then(|r| Chevalley::parse(spec, r)) {
                Ok(g) => g,
                Err(e) => {
                    out.push(CheckRecord::error(format!("order {spec} F{q}"), claim, &e));
                    continue;
                }
            };
            let Some(expected) = expected_order(&g).filter(|&n| n <= c.enumerate_limit as u128) else { continue };
            let e = match EnumeratedGroup::from_root_generators(g, c.cap) {
                Ok(e) => e,
                Err(err) => {
                    out.push(CheckRecord::error(format!("order {spec} F{q}"), claim, &err));
                    continue;
                }
            };
            out.push(CheckRecord::verdict(
                format!("order {spec} F{q}"),
                claim,
                e.order() as u128 == expected,
                json!({ "order": e.order(), "expected": expected.to_string() }),
            ));
            if expected <= c.bruhat_limit as u128 {
                let name = format!("bruhat {spec} F{q}");
                out.push(record(name.clone(), bruhat_claim, || {
                    let r = verify_bruhat(&e)?;
                    Ok(CheckRecord::verdict(name, bruhat_claim, r.verdict && r.tuples == r.order, r))
                }));
            }
        }
    }
    out
}

pub fn dc_records(c: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for case in &c.dc_cases {
        let name = format!("dc {case}");
        let claim = "double centralizer of a root element equals U Z, or lies in U U1 U2 Z in the exceptional case";
        out.push(record(name.clone(), claim, || {
            let (spec, ring, which) = split_case(case)?;
            let g = group(&spec, &ring)?;
            if which == "exact" {
                let claim = "Z(C(v)) in Sp4 is +-U12 phi(R) when R* = {1,-1} and +-U12 otherwise";
                let r = verify_dc_exceptional_sp4(&g, c.cap, c.budget)?;
                return Ok(CheckRecord::verdict(name, claim, r.verdict, r));
            }
            let long = match which.as_str() {
                "long" => true,
                "short" => false,
                _ => return Err(Error::Config(format!("root must be long, short or exact in `{case}`"))),
            };
            let r = check_dc(&g, long, c.cap, c.budget)?;
            let status = if r.exploratory { Status::Exploratory } else { Status::from_verdict(r.verdict) };
            Ok(CheckRecord::new(name, claim, status, r))
        }));
    }
    let claim = "hypothesis flags: domain, units condition, R* = {1,-1}";
    for (ring, domain, pm1) in [("Z/4", false, true), ("F3", true, true), ("F5", true, false)] {
        let name = format!("profile {ring}");
        out.push(record(name.clone(), claim, || {
            let p = Ring::parse(ring)?.hypothesis_profile()?;
            Ok(CheckRecord::verdict(name, claim, p.is_domain == domain && p.units_eq_pm1 == pm1, p))
        }));
    }
    out
}

pub fn witness_records(c: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let claim = "C(X) meets G(R) inside U Z, or inside U U1 U2 Z for the short-root set X2";
    for case in &c.witness_cases {
        let name = format!("witness {case}");
        out.push(record(name.clone(), claim, || {
            let (spec, ring, kind) = split_case(case)?;
            let g = group(&spec, &ring)?;
            let kind = kind.parse::<WitnessKind>()?;
            let y = classical_witness_set(&g, kind)?;
            let expected =
                if kind == WitnessKind::X2 { exceptional_bound(&g, y.target) } else { Subgroup::uz(y.target) };
            let r = verify_containment(&g, &y, &expected, c.budget)?;
            Ok(CheckRecord::verdict(name, claim, r.verdict, r))
        }));
    }
    let claim = "torus witnesses exist except for orthogonal long roots in F4 when R* = {1,-1}";
    for sys in &c.torus_systems {
        for &q in &c.torus_fields {
            let name = format!("torus {sys} F{q}");
            out.push(record(name.clone(), claim, || {
                let r = torus_survey(&RootSystem::parse(sys)?, &field(q)?)?;
                Ok(CheckRecord::verdict(name, claim, r.matches_exception, r))
            }));
        }
    }
    let claim = "root-datum torus witnesses behave as predicted on matrices";
    for &q in &c.torus_fields {
        let name = format!("torus matrices F4adj F{q}");
        out.push(record(name.clone(), claim, || {
            let g = Chevalley::parse("F4adj", field(q)?)?;
            let sys = g.sys();
            let short = sys.simple_roots().into_iter().find(|&a| sys.is_short(a)).expect("F4 has short roots");
            let r = torus_matrix_oracle(&g, &[sys.highest_root(), short])?;
            Ok(CheckRecord::verdict(name, claim, r.disagreements.is_empty() && r.checked > 0, r))
        }));
    }
    let claim = "torus witnesses with centralizing root elements cut C(Y) down to U Z";
    let name = "torus witness set SL3 F5".to_string();
    out.push(record(name.clone(), claim, || {
        let g = group("SL3", "F5")?;
        let r = verify_torus_cut(&g, pick_root(&g, true)?, c.cap, c.budget)?;
        Ok(CheckRecord::verdict(name, claim, r.verdict, r))
    }));
    out
}

fn sorted_indices(e: &EnumeratedGroup, set: &Subgroup) -> Result<Vec<usize>> {
    let mut v = set
        .materialize(&e.group)?
        .iter()
        .map(|x| e.index_of(x).ok_or_else(|| Error::Malformed("subgroup leaves the group".into())))
        .collect::<Result<Vec<_>>>()?;
    v.sort_unstable();
    Ok(v)
}

/// Root lengths present in the system, long first.
fn lengths(sys: &RootSystem) -> Vec<bool> {
    if sys.is_simply_laced() {
        vec![true]
    } else {
        vec![true, false]
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MapStats {
    pub group: String,
    pub checked: usize,
    pub failures: usize,
}

/// `c(a, b)` on every `x_a(r)` and `m(a, b, gamma)` on every pair of simple
/// root elements, against the expected root elements.
pub fn map_stats(g: &Chevalley) -> Result<MapStats> {
    let sys = g.sys();
    let maps = RootMaps::new(g);
    let elems = g.ring.elements()?;
    let roots: Vec<Root> = sys.roots().collect();
    let (mut checked, mut failures) = (0usize, 0usize);
    for &a in &roots {
        for &b in &roots {
            for r in &elems {
                checked += 1;
                failures += (maps.c(a, b, &g.x(a, r))? != g.x(b, r)) as usize;
            }
        }
    }
    let simple = sys.simple_roots();
    for &a in &simple {
        for &b in &simple {
            for &gamma in &roots {
                for r in &elems {
                    for s in &elems {
                        checked += 1;
                        failures += (maps.m(a, b, gamma, &g.x(a, r), &g.x(b, s))? != g.x(gamma, &(r * s))) as usize;
                    }
                }
            }
        }
    }
    Ok(MapStats { group: g.label(), checked, failures })
}

pub fn definability_case(c: &SuiteConfig, spec: &str, ring: &str) -> Result<Vec<CheckRecord>> {
    let g = group(spec, ring)?;
    let sys = g.sys().clone();
    let e = EnumeratedGroup::from_root_generators(g.clone(), c.cap)?;
    let mut out = Vec::new();
    let claim = "first-order formulas define U Z and U exactly";
    for long in lengths(&sys) {
        let a = pick_root(&g, long)?;
        let uz = dc_definition_formula(&g, a)?;
        let by_uz = define_set(&uz.formula, &e, &uz.params, DEFAULT_EVAL_BUDGET)?;
        let u = root_group_formula(&g, a)?;
        let by_u = define_set(&u.formula, &e, &u.params, DEFAULT_EVAL_BUDGET)?;
        let (d_uz, d_u) = (sorted_indices(&e, &Subgroup::uz(a))?, sorted_indices(&e, &Subgroup::RootGroup(a))?);
        out.push(CheckRecord::verdict(
            format!("formulas {spec} {ring} {}", if long { "long" } else { "short" }),
            claim,
            by_uz == d_uz && by_u == d_u,
            json!({ "uz": [by_uz.len(), d_uz.len()], "u": [by_u.len(), d_u.len()], "patched": uz.patched }),
        ));
    }
    let claim = "c and m transport root elements and multiply parameters";
    let m = map_stats(&g)?;
    out.push(CheckRecord::verdict(format!("maps {spec} {ring}"), claim, m.failures == 0, m));
    let claim = "root subgroup with + and m satisfies the ring axioms and is isomorphic to R";
    for long in lengths(&sys) {
        let r = RingInGroup::new(g.clone(), pick_root(&g, long)?)?.check_axioms();
        out.push(CheckRecord::verdict(format!("ring {spec} {ring} {}", if long { "long" } else { "short" }), claim, r.verdict, r));
    }
    let claim = "psi(r) = x_a(r) is the divided-power polynomial";
    let roots: Vec<Root> = sys.roots().collect();
    let psi_failures = roots.iter().filter(|&&a| !psi_check(&g, a).is_ok_and(|r| r.verdict)).count();
    out.push(CheckRecord::verdict(
        format!("psi {spec} {ring}"),
        claim,
        psi_failures == 0,
        json!({ "roots": roots.len(), "failures": psi_failures }),
    ));
    let claim = "theta decodes back and is multiplicative";
    let probe = width_probe(g.clone(), c.cap)?;
    let ring_in = RingInGroup::new(g.clone(), sys.highest_root())?;
    let theta = Theta::new(&ring_in, &probe);
    let els = &probe.enumerated.elements;
    let n = els.len();
    let mut rng = ChaCha8Rng::seed_from_u64(c.seed);
    let sample: Vec<usize> = if n <= c.theta_samples { (0..n).collect() } else { (0..c.theta_samples).map(|_| rng.gen_range(0..n)).collect() };
    let mut round_trip_failures = 0;
    for &i in &sample {
        round_trip_failures += (theta.decode(&theta.apply(&els[i])?) != els[i]) as usize;
    }
    let mut mult_failures = 0;
    for _ in 0..c.theta_samples {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let lhs = theta.apply(&g.mul(&els[i], &els[j]))?;
        mult_failures += (lhs != theta.matmul(&theta.apply(&els[i])?, &theta.apply(&els[j])?)) as usize;
    }
    out.push(CheckRecord::verdict(
        format!("theta {spec} {ring}"),
        claim,
        round_trip_failures == 0 && mult_failures == 0,
        json!({
            "order": n,
            "width": probe.width,
            "round_trips": sample.len(),
            "round_trip_failures": round_trip_failures,
            "pairs": c.theta_samples,
            "multiplicative_failures": mult_failures,
        }),
    ));
    Ok(out)
}

pub fn definability_records(c: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for case in &c.definability_cases {
        let result = split_case(case).and_then(|(spec, ring, _)| definability_case(c, &spec, &ring));
        match result {
            Ok(rs) => out.extend(rs),
            Err(e) => out.push(CheckRecord::error(format!("definability {case}"), "plumbing", &e)),
        }
    }
    out
}

/// Each prime alone, then their product.
fn adelic_rings(primes: &[u32]) -> Vec<String> {
    let mut out: Vec<String> = primes.iter().map(|p| format!("F{p}")).collect();
    if primes.len() > 1 {
        out.push(primes.iter().map(|p| format!("F{p}")).collect::<Vec<_>>().join("x"));
    }
    out
}

/// `a` is a difference of two nonzero squares, searched directly.
fn square_difference(ring: &Ring, a: u32) -> Result<bool> {
    let units: Vec<_> = ring.elements()?.into_iter().filter(|x| x.is_unit()).collect();
    Ok(units.iter().any(|x| units.iter().any(|y| (&(x * x) - &(y * y)).code() == a)))
}

/// One record per aspect of an adelic report.
pub fn adelic_report_records(prefix: &str, r: &AdelicReport) -> Vec<CheckRecord> {
    let mut out = vec![
        CheckRecord::verdict(format!("{prefix} H"), "H is the centralizer of h(tau), equal to h(A*)", r.h.equal, &r.h),
        CheckRecord::verdict(format!("{prefix} U"), "squares decomposition with S reaches all of u(A)", r.u.complete, &r.u),
        CheckRecord::verdict(format!("{prefix} *"), "u(r) * u(s) = u(rs) for all pairs", r.star.ok, &r.star),
        CheckRecord::verdict(
            format!("{prefix} A_T"),
            "u(A_T) through * equals the componentwise set",
            r.a_t.iter().all(|a| a.equal),
            &r.a_t,
        ),
        CheckRecord::verdict(format!("{prefix} W"), "W from A_{0,1} equals the componentwise w set", r.w.equal, &r.w),
        CheckRecord::verdict(format!("{prefix} Gamma_1"), "Gamma_1 = V H U", r.gamma1.equal, &r.gamma1),
    ];
    for f in &r.formulas {
        out.push(CheckRecord::verdict(
            format!("{prefix} formula {}", f.name),
            "the first-order formula defines the set exactly",
            f.equal,
            f,
        ));
    }
    out.push(CheckRecord::verdict(format!("{prefix} theta"), "theta is an isomorphism onto its image", r.theta.ok, &r.theta));
    out.push(CheckRecord::verdict(format!("{prefix} K_a"), "the eight-fold product K_a covers SL2", r.k_alpha.covers, &r.k_alpha));
    out.push(CheckRecord::new(
        format!("{prefix} parameters"),
        "parameters used by the formulas (informational)",
        Status::Exploratory,
        &r.parameters,
    ));
    out
}

pub fn adelic_records(c: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    for ring in adelic_rings(&c.primes) {
        for &mode in &c.modes {
            let name = format!("adelic {ring} {mode}");
            let opts = AdelicOptions { cap: c.cap, theta_pairs: c.theta_samples, seed: c.seed, ..Default::default() };
            match Ring::parse(&ring).and_then(|r| check_adelic(&r, mode, &opts)) {
                Ok(r) => out.extend(adelic_report_records(&name, &r)),
                Err(e) => out.push(CheckRecord::error(name, "plumbing", &e)),
            }
        }
    }
    let claim = "with S = {0} the square decomposition misses exactly the non-differences of squares";
    let name = "decomposition F5".to_string();
    out.push(record(name.clone(), claim, || {
        let g = Sl2Group::parse("F5", QuotientMode::Sl2, c.cap)?;
        let u = define_u(&g, &[0])?;
        let mut expected = Vec::new();
        for a in 0..5 {
            if !square_difference(&g.ring, a)? {
                expected.push(g.elem(a as Code).to_string());
            }
        }
        Ok(CheckRecord::verdict(name, claim, !u.complete && u.missing == expected, json!({ "missing": u.missing, "expected": expected })))
    }));
    out
}

pub fn width_records(c: &SuiteConfig) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let claim = "products of root subgroups along repeated K_a blocks cover the group";
    for spec in &c.groups {
        for &q in &c.fields {
            let g = match field(q).and_then(|r| Chevalley::parse(spec, r)) {
                Ok(g) => g,
                Err(e) => {
                    out.push(CheckRecord::error(format!("width {spec} F{q}"), claim, &e));
                    continue;
                }
            };
            let Some(expected) = expected_order(&g).filter(|&n| n <= c.width_limit as u128) else { continue };
            let name = format!("width {spec} F{q}");
            out.push(record(name.clone(), claim, || {
                let r = higher_rank_width(&g, c.cap)?;
                Ok(CheckRecord::verdict(name, claim, r.order as u128 == expected, r))
            }));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_formulas() {
        for (spec, q, n) in [
            ("SL3", "F2", 168u128),
            ("SL3", "F4", 60480),
            ("Sp4", "F3", 51840),
            ("B2adj", "F3", 25920),
            ("G2adj", "F2", 12096),
            ("A2adj", "F4", 20160),
        ] {
            assert_eq!(expected_order(&group(spec, q).unwrap()), Some(n), "{spec} {q}");
        }
        assert_eq!(expected_order(&group("SO7", "F3").unwrap()), None);
    }

    #[test]
    fn case_parsing() {
        assert_eq!(split_case("Sp4 F3  short").unwrap(), ("Sp4".into(), "F3".into(), "short".into()));
        assert!(split_case("Sp4").is_err());
        let c = SuiteConfig { dc_cases: vec!["Sp4 F3 sideways".into(), "XX F3 long".into()], ..Default::default() };
        let r = dc_records(&c);
        assert_eq!(r[0].status, Status::Fail);
        assert_eq!(r[1].status, Status::Fail);
    }

    #[test]
    fn commutators_over_f7() {
        for spec in ["SL3", "Sp4", "G2adj"] {
            let s = commutator_stats(&group(spec, "F7").unwrap()).unwrap();
            assert_eq!((s.mismatches, s.additive_failures), (0, 0), "{s:?}");
        }
    }

    #[test]
    fn adelic_ring_list() {
        assert_eq!(adelic_rings(&[7, 11]), vec!["F7", "F11", "F7xF11"]);
        assert_eq!(adelic_rings(&[7]), vec!["F7"]);
    }
}
