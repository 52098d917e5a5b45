mod args;
mod render;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde::Serialize;
use serde_json::{json, Value};
use spinsolve::oracle::{census, verify_family, CensusConfig, PointSpace, CENSUS_CAP};
use spinsolve::solver::{candidate_quartic, solve};
use spinsolve::symbolic::{self, bilinear_identity_checks, hamming_factor_check};
use spinsolve::verify::{self, TheoremReport};
use spinsolve::{families, Error, Family, SchemeInstance, SolverConfig};

use args::{Cli, Command, FamilyKind, Format, OracleAction, Params, Range, SymbolicAction, Target, VerifyArgs};

/// Bad input (exit 2) or a failure while running (exit 1).
#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArray(_)
            | Error::InvalidParameters(_)
            | Error::NotPrimePower(_)
            | Error::TooManyPoints { .. }
            | Error::NotSelfDual { .. }
            | Error::RepeatedEigenvalue { .. } => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

struct Outcome {
    result: Value,
    table: String,
    /// `None` for commands that only report.
    passed: Option<bool>,
    timings: Vec<(String, f64)>,
}

#[derive(Serialize)]
struct RunReport<'a> {
    version: &'static str,
    command: &'a [String],
    config: Config,
    #[serde(skip_serializing_if = "Option::is_none")]
    passed: Option<bool>,
    result: &'a Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    timings: Option<Value>,
}

#[derive(Serialize)]
struct Config {
    seed: u64,
    solver: SolverConfig,
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("SPINSOLVE_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // Fails only if a pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }

    let mut cfg = SolverConfig::default();
    if let Command::Solve { tol: Some(t), .. } = cli.command {
        cfg.residual_tol = t;
    }
    let started = Instant::now();
    let outcome = match run(&cli, &cfg) {
        Ok(o) => o,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(1);
        }
    };
    let total = started.elapsed().as_secs_f64();

    match cli.format {
        Format::Json => {
            let timings = cli.timings.then(|| {
                let per: serde_json::Map<String, Value> = outcome.timings.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                json!({ "total_seconds": total, "instances": per })
            });
            let report = RunReport {
                version: env!("CARGO_PKG_VERSION"),
                command: &argv,
                config: Config { seed: cli.seed, solver: cfg },
                passed: outcome.passed,
                result: &outcome.result,
                timings,
            };
            println!("{}", serde_json::to_string_pretty(&report).expect("serializable report"));
        }
        Format::Table => {
            print!("{}", outcome.table);
            if cli.timings {
                for (label, secs) in &outcome.timings {
                    println!("time {label}: {secs:.3} s");
                }
                println!("time total: {total:.3} s");
            }
        }
    }
    match outcome.passed {
        Some(false) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn build(kind: FamilyKind, params: &Params, cfg: &SolverConfig) -> Result<SchemeInstance, Failure> {
    match params.target(kind).map_err(Failure::Usage)? {
        Target::Named(family) => Ok(families::build(family, cfg)?),
        Target::Custom(array) => Ok(families::build_custom(array, cfg)?),
    }
}

fn named(kind: FamilyKind, params: &Params) -> Result<Family, Failure> {
    match params.target(kind).map_err(Failure::Usage)? {
        Target::Named(f) => Ok(f),
        Target::Custom(_) => Err(Failure::Usage("the oracle needs a named family".into())),
    }
}

fn run(cli: &Cli, cfg: &SolverConfig) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Solve { family, .. } => {
            let scheme = build(family.family, &family.params, cfg)?;
            let started = Instant::now();
            let set = solve(&scheme, cfg)?;
            let secs = started.elapsed().as_secs_f64();
            Ok(Outcome {
                table: render::solution_set(&set),
                result: to_value(&set),
                passed: None,
                timings: vec![(scheme.family().to_string(), secs)],
            })
        }
        Command::Verify(v) => verify_theorem(v, cli.seed, cfg),
        Command::Families { family } => match family.family {
            None => Ok(Outcome { result: render::family_list_json(), table: render::family_list(), passed: None, timings: Vec::new() }),
            Some(kind) => {
                let scheme = build(kind, &family.params, cfg)?;
                Ok(Outcome { table: render::scheme(&scheme), result: to_value(&scheme), passed: None, timings: Vec::new() })
            }
        },
        Command::Oracle { action } => oracle(action),
        Command::Symbolic { action } => symbolic(action, cli.seed, cfg),
    }
}

fn range_or(r: &Option<Range>, default: &[u32]) -> Vec<u32> {
    r.as_ref().map(|r| r.0.clone()).unwrap_or_else(|| default.to_vec())
}

fn theorem_outcome(report: TheoremReport) -> Outcome {
    let timings = report.instances.iter().map(|i| (i.label.clone(), i.elapsed_seconds)).collect();
    Outcome { table: render::theorem(&report), passed: Some(report.passed), result: to_value(&report), timings }
}

fn default_schemes(cfg: &SolverConfig) -> Result<Vec<SchemeInstance>, Failure> {
    let mut families = Vec::new();
    for n in 3..=6 {
        for q in 2..=5 {
            families.push(Family::Hamming { n, q });
        }
    }
    families.extend([(3, 3, 2), (3, 4, 2), (3, 3, 3)].map(|(m, n, q)| Family::Bilinear { m, n, q }));
    families.extend([Family::Alternating { n: 6, q: 2 }, Family::Alternating { n: 7, q: 2 }, Family::Hermitian { n: 3, q: 2 }]);
    families.extend((6..=12).map(|n| Family::NGon { n }));
    families.into_iter().map(|f| families::build(f, cfg).map_err(Failure::from)).collect()
}

fn verify_theorem(v: &VerifyArgs, seed: u64, cfg: &SolverConfig) -> Result<Outcome, Failure> {
    let report = match v.theorem {
        1 => verify::theorem1(v.random_arrays, seed, &default_schemes(cfg)?, cfg),
        2 => {
            let ns = range_or(&v.big_n, &[3, 4, 5, 6]);
            let qs = range_or(&v.q, &[2, 3, 4, 5]);
            if ns.iter().any(|&n| n < 3) {
                return Err(Failure::Usage("theorem 2 needs N >= 3".into()));
            }
            for &n in &ns {
                for &q in &qs {
                    families::check_spec(Family::Hamming { n, q })?;
                }
            }
            verify::theorem2(&ns, &qs, cfg)
        }
        3 => {
            let mut inst = Vec::new();
            for m in range_or(&v.big_m, &[3]) {
                for n in range_or(&v.big_n, &[3, 4]) {
                    for q in range_or(&v.q, &[2, 3]) {
                        if m.min(n) <= 2 {
                            return Err(Failure::Usage("theorem 3 needs min(M, N) > 2".into()));
                        }
                        families::check_spec(Family::Bilinear { m, n, q })?;
                        inst.push((m, n, q));
                    }
                }
            }
            verify::theorem3(&inst, cfg)
        }
        4 | 5 => {
            let (default_n, min_n): (&[u32], u32) = if v.theorem == 4 { (&[6, 7], 6) } else { (&[3], 3) };
            let mut inst = Vec::new();
            for n in range_or(&v.big_n.clone().or(v.n.clone()), default_n) {
                for q in range_or(&v.q, &[2]) {
                    if n < min_n {
                        return Err(Failure::Usage(format!("theorem {} needs N >= {min_n}", v.theorem)));
                    }
                    let family = if v.theorem == 4 { Family::Alternating { n, q } } else { Family::Hermitian { n, q } };
                    let space = PointSpace::new(family)?;
                    if space.len() > CENSUS_CAP {
                        return Err(Error::TooManyPoints { count: space.len(), cap: CENSUS_CAP }.into());
                    }
                    inst.push((n, q));
                }
            }
            if v.theorem == 4 {
                verify::theorem4(&inst, cfg)
            } else {
                verify::theorem5(&inst, cfg)
            }
        }
        6 => {
            let ns = range_or(&v.n, &[6, 7, 8, 9, 10, 11, 12]);
            if ns.iter().any(|&n| n < 5) {
                return Err(Failure::Usage("theorem 6 covers n >= 5".into()));
            }
            verify::theorem6(&ns, cfg)
        }
        _ => unreachable!("clap restricts the range"),
    };
    Ok(theorem_outcome(report))
}

fn oracle(action: &OracleAction) -> Result<Outcome, Failure> {
    match action {
        OracleAction::Census { family, representatives } => {
            let f = named(family.family, &family.params)?;
            let space = PointSpace::new(f)?;
            let c = census(&space, &CensusConfig { representatives: *representatives })?;
            let timings = vec![(f.to_string(), c.elapsed_seconds)];
            Ok(Outcome { table: render::census(&c), result: to_value(&c), passed: None, timings })
        }
        OracleAction::Verify { family, representatives } => {
            let f = named(family.family, &family.params)?;
            let r = verify_family(f, &CensusConfig { representatives: *representatives })?;
            let timings = vec![(f.to_string(), r.census.elapsed_seconds)];
            Ok(Outcome { table: render::family_report(&r), passed: Some(r.matches), result: to_value(&r), timings })
        }
    }
}

fn symbolic(action: &SymbolicAction, seed: u64, cfg: &SolverConfig) -> Result<Outcome, Failure> {
    match action {
        SymbolicAction::Quartic { family } => match family.family {
            None => {
                let q = symbolic::symbolic_quartic();
                let agrees = q == symbolic::reference_quartic();
                let table = format!("{q}\nmatches theta1 x^4 + a1(theta1-1) x^3 - (theta1^2+a1^2-b1^2+1) x^2 + a1(theta1-1) x + theta1: {agrees}\n");
                Ok(Outcome { table, result: json!({ "quartic": q.to_string(), "matches_reference": agrees }), passed: Some(agrees), timings: Vec::new() })
            }
            Some(kind) => {
                let scheme = build(kind, &family.params, cfg)?;
                let theta = scheme.eigenvalues();
                if scheme.n_classes() < 2 {
                    return Err(Failure::Usage("the quartic needs at least 2 classes".into()));
                }
                let exact = match (scheme.array().exact(), theta[1].fract() == 0.0) {
                    (Some(arr), true) => Some(symbolic::quartic_for(arr, theta[1] as i64)?),
                    _ => None,
                };
                let numeric = candidate_quartic(scheme.array(), theta);
                let (table, result) = match exact {
                    Some(c) => {
                        let s: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                        (format!("[{}]\n", s.join(", ")), json!({ "exact": true, "coefficients": s.iter().map(|v| v.parse::<Value>().unwrap()).collect::<Vec<_>>() }))
                    }
                    None => {
                        let s: Vec<String> = numeric.iter().map(|v| v.to_string()).collect();
                        (format!("[{}]\n", s.join(", ")), json!({ "exact": false, "coefficients": numeric }))
                    }
                };
                Ok(Outcome { table, result, passed: None, timings: Vec::new() })
            }
        },
        SymbolicAction::HammingResultant => {
            let r = hamming_factor_check()?;
            Ok(Outcome { table: render::hamming(&r), passed: Some(r.passed), result: to_value(&r), timings: Vec::new() })
        }
        SymbolicAction::BilinearIdentities => {
            let started = Instant::now();
            let r = bilinear_identity_checks(seed)?;
            let timings = vec![("bilinear identities".to_string(), started.elapsed().as_secs_f64())];
            Ok(Outcome { table: render::bilinear(&r), passed: Some(r.passed), result: to_value(&r), timings })
        }
    }
}
