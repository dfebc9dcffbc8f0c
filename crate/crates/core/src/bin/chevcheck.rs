//! Command-line front end: every subcommand produces a report and exits
//! nonzero when any check fails.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use chevdef::adelic::{check_adelic, AdelicOptions, QuotientMode};
use chevdef::chevgroup::{Chevalley, EnumeratedGroup, Subgroup};
use chevdef::definability::{define_set, parse_formula, DEFAULT_EVAL_BUDGET};
use chevdef::report::{
    adelic_report_records, commutator_stats, definability_case, expected_order, run_suite, run_suite_timed,
    CheckRecord, Format, Status, Suite, SuiteConfig, VerificationReport,
};
use chevdef::rootsys::RootSystem;
use chevdef::witnesses::{
    auto_kind, check_dc, classical_witness_set, exceptional_bound, verify_containment, WitnessKind,
};
use chevdef::{Error, Result, Ring};

#[derive(Parser)]
#[command(name = "chevcheck", version, about = "Exact checks on Chevalley groups over small finite rings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, global = true, default_value = "text")]
    format: Format,
    /// Enumeration cap.
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Random seed; overrides the config file when given. Default 0.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dump a root system, positive roots first.
    Roots {
        #[arg(long = "type")]
        typ: String,
        #[arg(long)]
        rank: usize,
    },
    /// Commutator formula against matrix commutators.
    CheckCommutators {
        #[arg(long = "type")]
        typ: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        field: String,
    },
    /// Enumerate a group and compare with the order formula.
    Enumerate {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
    },
    /// Double centralizer of a root element.
    CheckDc {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
        #[arg(long, default_value = "long")]
        root: String,
    },
    /// Containment for a classical witness set.
    CheckWitness {
        #[arg(long = "type")]
        typ: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        field: String,
        /// sl, X1..X5 or auto.
        #[arg(long, default_value = "auto")]
        set: String,
        /// Root length used by `auto`.
        #[arg(long, default_value = "long")]
        root: String,
    },
    /// Formulas, maps, ring axioms and theta on one group.
    CheckDefinability {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
    },
    /// Evaluate a formula with one free variable over an enumerated group.
    EvalFormula {
        #[arg(long)]
        group: String,
        #[arg(long)]
        field: String,
        #[arg(long)]
        formula: String,
        /// Parameters `@1, @2, ...`, separated by `;`.
        #[arg(long, default_value = "")]
        params: String,
    },
    /// The SL2 checks over a product of prime fields.
    CheckAdelic {
        #[arg(long, value_delimiter = ',', default_value = "7,11")]
        primes: Vec<u32>,
        #[arg(long, default_value = "SL2")]
        mode: QuotientMode,
        /// The set S of the squares decomposition.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        s: Vec<i64>,
    },
    /// Run a verification suite.
    Run {
        #[arg(long, default_value = "all")]
        suite: Suite,
        /// JSON configuration; defaults apply to missing fields.
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

/// `4` means `F4`; anything else is a ring spec.
fn ring(field: &str) -> Result<Ring> {
    if field.chars().all(|c| c.is_ascii_digit()) {
        Ring::parse(&format!("F{field}"))
    } else {
        Ring::parse(field)
    }
}

/// The classical or adjoint representation used for a root system type.
fn spec_for(typ: &str, rank: usize) -> Result<String> {
    Ok(match typ {
        "A" => format!("SL{}", rank + 1),
        "B" => format!("SO{}", 2 * rank + 1),
        "C" => format!("Sp{}", 2 * rank),
        "D" => format!("O{}", 2 * rank),
        "E" | "F" | "G" => format!("{typ}{rank}adj"),
        _ => return Err(Error::Config(format!("unknown type `{typ}`"))),
    })
}

fn long_root(root: &str) -> Result<bool> {
    match root {
        "long" => Ok(true),
        "short" => Ok(false),
        _ => Err(Error::Config(format!("root must be long or short, not `{root}`"))),
    }
}

fn report(name: &str, cli: &Cli, records: Vec<CheckRecord>) -> VerificationReport {
    VerificationReport { suite: name.into(), seed: cli.seed.unwrap_or(0), cap: cap(cli), records, elapsed_ms: None }
}

fn cap(cli: &Cli) -> usize {
    cli.cap.unwrap_or(chevdef::chevgroup::DEFAULT_CAP)
}

fn config(cli: &Cli, path: Option<&PathBuf>) -> Result<SuiteConfig> {
    let mut c = match path {
        Some(p) => SuiteConfig::from_json(&std::fs::read_to_string(p).map_err(|e| Error::Config(format!("{}: {e}", p.display())))?)?,
        None => SuiteConfig::default(),
    };
    if let Some(seed) = cli.seed {
        c.seed = seed;
    }
    if let Some(cap) = cli.cap {
        c.cap = cap;
    }
    Ok(c)
}

fn run(cli: &Cli) -> Result<VerificationReport> {
    let start = std::time::Instant::now();
    let mut r = match &cli.cmd {
        Cmd::Roots { typ, rank } => {
            let sys = RootSystem::parse(&format!("{typ}{rank}"))?;
            let roots: Vec<Vec<i32>> = sys.roots().map(|r| sys.coeffs(r).to_vec()).collect();
            let rec = CheckRecord::new(
                sys.label(),
                "plumbing",
                Status::Pass,
                json!({ "positive": sys.num_positive(), "roots": roots, "dump": sys.dump() }),
            );
            report("roots", cli, vec![rec])
        }
        Cmd::CheckCommutators { typ, rank, field } => {
            let g = Chevalley::parse(&spec_for(typ, *rank)?, ring(field)?)?;
            let s = commutator_stats(&g)?;
            let claim = "commutator formula and one-parameter law agree with matrix products";
            let rec = CheckRecord::verdict(g.label(), claim, s.mismatches == 0 && s.additive_failures == 0, s);
            report("check-commutators", cli, vec![rec])
        }
        Cmd::Enumerate { group, field } => {
            let g = Chevalley::parse(group, ring(field)?)?;
            let expected = expected_order(&g);
            let e = EnumeratedGroup::from_root_generators(g, cap(cli))?;
            let data = json!({
                "order": e.order(),
                "expected": expected.map(|n| n.to_string()),
                "center": e.center().len(),
            });
            let rec = match expected {
                Some(n) => CheckRecord::verdict(
                    e.group.label(),
                    "enumerated order equals the order formula",
                    n == e.order() as u128,
                    data,
                ),
                None => CheckRecord::new(e.group.label(), "plumbing", Status::Pass, data),
            };
            report("enumerate", cli, vec![rec])
        }
        Cmd::CheckDc { group, field, root } => {
            let g = Chevalley::parse(group, ring(field)?)?;
            let r = check_dc(&g, long_root(root)?, cap(cli), chevdef::witnesses::DEFAULT_BUDGET)?;
            let status = if r.exploratory { Status::Exploratory } else { Status::from_verdict(r.verdict) };
            let claim = "double centralizer of a root element equals U Z, or lies in U U1 U2 Z in the exceptional case";
            report("check-dc", cli, vec![CheckRecord::new(r.group.clone(), claim, status, r)])
        }
        Cmd::CheckWitness { typ, rank, field, set, root } => {
            let g = Chevalley::parse(&spec_for(typ, *rank)?, ring(field)?)?;
            let kind = if set == "auto" { auto_kind(g.rep.form, long_root(root)?)? } else { set.parse()? };
            let y = classical_witness_set(&g, kind)?;
            let expected =
                if kind == WitnessKind::X2 { exceptional_bound(&g, y.target) } else { Subgroup::uz(y.target) };
            let r = verify_containment(&g, &y, &expected, chevdef::witnesses::DEFAULT_BUDGET)?;
            let claim = "C(X) meets G(R) inside U Z, or inside U U1 U2 Z for the short-root set X2";
            report("check-witness", cli, vec![CheckRecord::verdict(format!("{} {kind}", r.group), claim, r.verdict, r)])
        }
        Cmd::CheckDefinability { group, field } => {
            let c = config(cli, None)?;
            let ring = ring(field)?;
            report("check-definability", cli, definability_case(&c, group, &ring.to_string())?)
        }
        Cmd::EvalFormula { group, field, formula, params } => {
            let g = Chevalley::parse(group, ring(field)?)?;
            let f = parse_formula(formula)?;
            let ps = params
                .split(';')
                .filter(|p| !p.trim().is_empty())
                .map(|p| g.parse_element(p))
                .collect::<Result<Vec<_>>>()?;
            let e = EnumeratedGroup::from_root_generators(g, cap(cli))?;
            let set = define_set(&f, &e, &ps, DEFAULT_EVAL_BUDGET)?;
            let shown: Vec<String> = set.iter().take(20).map(|&i| e.group.format(&e.elements[i])).collect();
            let data = json!({ "formula": f.to_string(), "order": e.order(), "size": set.len(), "elements": shown });
            report("eval-formula", cli, vec![CheckRecord::new(e.group.label(), "plumbing", Status::Pass, data)])
        }
        Cmd::CheckAdelic { primes, mode, s } => {
            let spec = primes.iter().map(|p| format!("F{p}")).collect::<Vec<_>>().join("x");
            let ring = Ring::parse(&spec)?;
            let s = s.iter().map(|&c| ring.from_int(c).code() as chevdef::rings::Code).collect();
            let opts = AdelicOptions { s, cap: cli.cap.unwrap_or(1 << 22), seed: cli.seed.unwrap_or(0), ..Default::default() };
            let r = check_adelic(&ring, *mode, &opts)?;
            let mut rep = report("check-adelic", cli, adelic_report_records(&format!("{spec} {mode}"), &r));
            rep.cap = opts.cap;
            rep
        }
        Cmd::Run { suite, config: path } => {
            let c = config(cli, path.as_ref())?;
            return if cli.timing { run_suite_timed(*suite, &c) } else { run_suite(*suite, &c) };
        }
    };
    if cli.timing {
        r.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let r = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("chevcheck: {e}");
            return ExitCode::from(2);
        }
    };
    let text = r.render(cli.format);
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("chevcheck: {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => {
            let mut out = std::io::stdout().lock();
            let written = writeln!(out, "{}", text.trim_end()).and_then(|_| out.flush());
            if let Err(e) = written {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    eprintln!("chevcheck: {e}");
                    return ExitCode::from(2);
                }
            }
        }
    }
    if r.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
