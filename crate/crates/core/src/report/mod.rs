//! Verification suites and their reports.
//!
//! A report is a list of check records, each naming the claim it tests and
//! carrying a status and the raw data behind it. Rendering is deterministic:
//! wall-clock time is only included on request.

mod suites;

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::adelic::QuotientMode;
use crate::error::{Error, Result};

pub use suites::{
    adelic_records, adelic_report_records, commutator_records, commutator_stats, dc_records, definability_case,
    definability_records, expected_order, map_stats, roots_records, width_records, witness_records, CommutatorStats, MapStats,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// Computed and reported, but no claim is made either way.
    Exploratory,
}

impl Status {
    pub fn from_verdict(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    /// The statement being checked, or `plumbing`.
    pub claim: String,
    pub status: Status,
    pub data: Value,
}

impl CheckRecord {
    pub fn new(name: impl Into<String>, claim: &str, status: Status, data: impl Serialize) -> Self {
        let data = serde_json::to_value(data).unwrap_or_else(|e| Value::String(e.to_string()));
        CheckRecord { name: name.into(), claim: claim.into(), status, data }
    }

    pub fn verdict(name: impl Into<String>, claim: &str, ok: bool, data: impl Serialize) -> Self {
        Self::new(name, claim, Status::from_verdict(ok), data)
    }

    /// A check that could not run, such as an enumeration cap breach.
    pub fn error(name: impl Into<String>, claim: &str, e: &Error) -> Self {
        Self::new(name, claim, Status::Fail, serde_json::json!({ "error": e.to_string() }))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub cap: usize,
    pub records: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl VerificationReport {
    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.status == Status::Fail).count()
    }

    pub fn ok(&self) -> bool {
        self.failures() == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let count = |s| self.records.iter().filter(|r| r.status == s).count();
        writeln!(
            out,
            "suite {} (seed {}, cap {}): {} pass, {} fail, {} exploratory",
            self.suite,
            self.seed,
            self.cap,
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Exploratory)
        )
        .unwrap();
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Exploratory => "INFO",
            };
            writeln!(out, "  [{tag}] {}  -- {}", r.name, r.claim).unwrap();
            writeln!(out, "         {}", summarize(&r.data)).unwrap();
        }
        if let Some(ms) = self.elapsed_ms {
            writeln!(out, "elapsed {ms} ms").unwrap();
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Text => self.to_text(),
        }
    }
}

/// Scalar fields of an object on one line; nested values are elided.
fn summarize(v: &Value) -> String {
    match v {
        Value::Object(m) => m
            .iter()
            .filter_map(|(k, v)| match v {
                Value::Object(_) => Some(format!("{k}={}", summarize(v))),
                Value::Array(a) if a.len() > 8 => Some(format!("{k}=[{} items]", a.len())),
                _ => Some(format!("{k}={v}")),
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Text,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            _ => Err(Error::Config(format!("unknown format `{s}` (json, text)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Roots,
    Commutators,
    Dc,
    Witnesses,
    Definability,
    Adelic,
    Width,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] =
        [Suite::Roots, Suite::Commutators, Suite::Dc, Suite::Witnesses, Suite::Definability, Suite::Adelic, Suite::Width];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Roots => "roots",
            Suite::Commutators => "commutators",
            Suite::Dc => "dc",
            Suite::Witnesses => "witnesses",
            Suite::Definability => "definability",
            Suite::Adelic => "adelic",
            Suite::Width => "width",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))
    }
}

/// What the suites run over. Every field has a default, so `{}` is a valid
/// configuration file. Cases are written `"<group> <ring> <detail>"`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    /// Field sizes for commutators, orders and widths.
    pub fields: Vec<u32>,
    /// Groups enumerated where the order allows.
    pub groups: Vec<String>,
    /// Groups only checked through commutators and commutant subspaces.
    pub linear_groups: Vec<String>,
    /// Double centralizers; detail is `long`, `short` or `exact` (Sp4 only).
    pub dc_cases: Vec<String>,
    /// Classical witness containments; detail is the witness set.
    pub witness_cases: Vec<String>,
    pub torus_systems: Vec<String>,
    pub torus_fields: Vec<u32>,
    pub definability_cases: Vec<String>,
    /// Each prime field and their product serve as adelic rings.
    pub primes: Vec<u32>,
    pub modes: Vec<QuotientMode>,
    pub enumerate_limit: usize,
    pub bruhat_limit: usize,
    pub width_limit: usize,
    /// Random elements and pairs for the theta checks.
    pub theta_samples: usize,
    pub cap: usize,
    pub budget: u64,
    pub seed: u64,
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            fields: vec![2, 3, 4, 5],
            groups: strings(&["SL3", "Sp4", "B2adj", "G2adj"]),
            linear_groups: strings(&["SO7", "O8"]),
            dc_cases: strings(&[
                "SL3 F2 long",
                "SL3 F3 long",
                "SL3 F4 long",
                "SL3 F5 long",
                "Sp4 F2 short",
                "Sp4 F3 long",
                "Sp4 F3 short",
                "Sp4 F3 exact",
                "Sp4 F4 long",
                "Sp4 F4 short",
                "Sp4 F5 long",
                "Sp4 F5 short",
                "Sp4 F5 exact",
                "B2adj F2 long",
                "B2adj F3 long",
                "B2adj F3 short",
                "G2adj F2 long",
                "G2adj F2 short",
            ]),
            witness_cases: strings(&[
                "SL3 F3 sl",
                "SL3 F5 sl",
                "SL4 F3 sl",
                "SL4 F5 sl",
                "Sp4 F3 X1",
                "Sp4 F3 X2",
                "Sp6 F3 X1",
                "Sp6 F3 X2",
                "O8 F3 X3",
                "SO7 F3 X4",
                "SO7 F3 X5",
            ]),
            torus_systems: strings(&["E6", "E7", "E8", "F4"]),
            torus_fields: vec![3, 5, 7],
            definability_cases: strings(&["SL3 F2", "SL3 F4", "Sp4 F3"]),
            primes: vec![7, 11],
            modes: vec![QuotientMode::Sl2, QuotientMode::Sl2ModMinusOne, QuotientMode::Psl2],
            enumerate_limit: 400_000,
            bruhat_limit: 60_000,
            width_limit: 400_000,
            theta_samples: 1000,
            cap: crate::chevgroup::DEFAULT_CAP,
            budget: crate::witnesses::DEFAULT_BUDGET,
            seed: 0,
        }
    }
}

impl SuiteConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("config: {e}")))
    }
}

/// Runs one suite, or every suite in order for [`Suite::All`].
pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<VerificationReport> {
    let records = match suite {
        Suite::Roots => roots_records(),
        Suite::Commutators => commutator_records(config),
        Suite::Dc => dc_records(config),
        Suite::Witnesses => witness_records(config),
        Suite::Definability => definability_records(config),
        Suite::Adelic => adelic_records(config),
        Suite::Width => width_records(config),
        Suite::All => {
            let mut all = Vec::new();
            for s in Suite::EACH {
                all.extend(run_suite(s, config)?.records.into_iter().map(|mut r| {
                    if !r.name.starts_with(s.name()) {
                        r.name = format!("{}/{}", s.name(), r.name);
                    }
                    r
                }));
            }
            all
        }
    };
    Ok(VerificationReport { suite: suite.name().into(), seed: config.seed, cap: config.cap, records, elapsed_ms: None })
}

/// [`run_suite`] with the elapsed time recorded.
pub fn run_suite_timed(suite: Suite, config: &SuiteConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let mut r = run_suite(suite, config)?;
    r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_defaults_and_parsing() {
        let c = SuiteConfig::from_json("{}").unwrap();
        assert_eq!(c.fields, vec![2, 3, 4, 5]);
        assert_eq!(c.primes, vec![7, 11]);
        let c = SuiteConfig::from_json(r#"{"primes": [7], "seed": 3}"#).unwrap();
        assert_eq!((c.primes, c.seed), (vec![7], 3));
        assert!(SuiteConfig::from_json(r#"{"prime": [7]}"#).is_err());
        assert!("nope".parse::<Suite>().is_err());
        assert_eq!("adelic".parse::<Suite>().unwrap(), Suite::Adelic);
        assert!("yaml".parse::<Format>().is_err());
    }

    #[test]
    fn roots_suite_renders_identically() {
        let c = SuiteConfig::default();
        let a = run_suite(Suite::Roots, &c).unwrap();
        let b = run_suite(Suite::Roots, &c).unwrap();
        assert!(a.ok());
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_text(), b.to_text());
        let back: VerificationReport = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(back.records.len(), a.records.len());
        assert!(a.to_text().starts_with("suite roots"));
    }

    #[test]
    fn failures_are_counted() {
        let mut r = run_suite(Suite::Roots, &SuiteConfig::default()).unwrap();
        r.records.push(CheckRecord::error("x", "plumbing", &Error::CapExceeded { cap: 1, reached: 2 }));
        r.records.push(CheckRecord::new("y", "plumbing", Status::Exploratory, 1));
        assert_eq!(r.failures(), 1);
        assert!(!r.ok());
    }
}
