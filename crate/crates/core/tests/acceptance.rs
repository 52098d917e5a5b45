//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion.

use std::time::Instant;

use num_complex::Complex64;
use spinsolve::families::{build, closed_form};
use spinsolve::oracle::{verify_family, CensusConfig};
use spinsolve::solver::solve;
use spinsolve::symbolic::hamming::hamming_numerators;
use spinsolve::symbolic::{bilinear_identity_checks, hamming_factor_check};
use spinsolve::verify::{theorem1, theorem2, theorem3, theorem6, TheoremReport};
use spinsolve::{Family, SchemeInstance, SolverConfig};

const SQUARED_FORM: &str = "quadratic at x = (1 - e + q)/w equals (e - q - 1)^2/w^2";
const CORRECTED_CUBE: &str = "quadratic at x = (1 - e + q)/w equals (e - q - 1)^3/w^2";

struct Line {
    criterion: u8,
    passed: bool,
    detail: String,
}

fn summarize(r: &TheoremReport) -> String {
    let bad: Vec<String> = r.mismatches().map(|i| format!("{}: {}", i.label, i.problems.join("; "))).collect();
    if bad.is_empty() {
        format!("{} instances", r.instances.len())
    } else {
        bad.join(" | ")
    }
}

fn criterion1(cfg: &SolverConfig, built: &mut Vec<SchemeInstance>) -> Line {
    let started = Instant::now();
    let r = theorem2(&[3, 4, 5, 6], &[2, 3, 4, 5], cfg);
    let secs = started.elapsed().as_secs_f64();
    let counts_ok = r.instances.iter().all(|i| i.count == if i.label.ends_with(",4)") { 3 } else { 6 });
    let residual = r.instances.iter().map(|i| i.max_residual).fold(0.0, f64::max);
    for n in 3..=6 {
        for q in 2..=5 {
            built.push(build(Family::Hamming { n, q }, cfg).unwrap());
        }
    }
    Line {
        criterion: 1,
        passed: r.passed && counts_ok && residual <= 1e-9 && secs < 5.0,
        detail: format!("{}; max residual {residual:.1e}; {secs:.2} s", summarize(&r)),
    }
}

fn criterion2(cfg: &SolverConfig, built: &mut Vec<SchemeInstance>) -> Line {
    let mut ok = true;
    let mut parts = Vec::new();
    for (m, n, q) in [(3, 3, 2), (3, 4, 2), (3, 3, 3)] {
        let started = Instant::now();
        let r = theorem3(&[(m, n, q)], cfg);
        let secs = started.elapsed().as_secs_f64();
        ok &= r.passed && secs < 1.0;
        parts.push(format!("Bilinear({m},{n},{q}) {} sol {secs:.3} s", r.instances[0].count));
        built.push(build(Family::Bilinear { m, n, q }, cfg).unwrap());
    }
    Line { criterion: 2, passed: ok, detail: parts.join(", ") }
}

fn criterion3(cfg: &SolverConfig, built: &mut Vec<SchemeInstance>) -> Line {
    let mut ok = true;
    let mut parts = Vec::new();
    for family in [Family::Alternating { n: 6, q: 2 }, Family::Alternating { n: 7, q: 2 }, Family::Hermitian { n: 3, q: 2 }] {
        let started = Instant::now();
        let scheme = match build(family, cfg) {
            Ok(s) => s,
            Err(e) => {
                ok = false;
                parts.push(format!("{family}: {e}"));
                continue;
            }
        };
        let secs = started.elapsed().as_secs_f64();
        let count = solve(&scheme, cfg).map(|s| s.count);
        ok &= secs < 60.0 && scheme.n_classes() == 3 && count == Ok(0);
        parts.push(format!("{family} {} classes, {count:?} sol, census {secs:.2} s", scheme.n_classes()));
        built.push(scheme);
    }
    Line { criterion: 3, passed: ok, detail: parts.join(", ") }
}

fn criterion4(cfg: &SolverConfig, built: &mut Vec<SchemeInstance>) -> Line {
    let ns: Vec<u32> = (6..=12).collect();
    let r = theorem6(&ns, cfg);
    for &n in &ns {
        built.push(build(Family::NGon { n }, cfg).unwrap());
    }
    let counts: Vec<String> = r.instances.iter().map(|i| format!("{}={}", i.label, i.count)).collect();
    Line { criterion: 4, passed: r.passed, detail: format!("{}; {}", counts.join(" "), summarize(&r)) }
}

fn criterion5(cfg: &SolverConfig, built: &[SchemeInstance]) -> Line {
    let r = theorem1(200, 7, built, cfg);
    let max = r.instances.iter().map(|i| i.count).max().unwrap_or(0);
    let excluded = r.instances.iter().filter(|i| i.excluded).count();
    Line {
        criterion: 5,
        passed: r.passed && max <= 12,
        detail: format!("{} instances, max count {max}, {excluded} excluded as continua; {}", r.instances.len(), summarize(&r)),
    }
}

/// Returns the honest line plus whether everything except the squared
/// closed form behaves as computed (the square is refuted, the cube
/// holds).
fn criterion6() -> (Line, bool) {
    let started = Instant::now();
    let hamming = hamming_factor_check().unwrap();
    let (n2, n3) = hamming_numerators().unwrap();
    let factor = spinsolve::symbolic::hamming::hamming_common_factor();
    let divisible = factor.divides(&n2) && factor.divides(&n3);
    let bilinear = bilinear_identity_checks(2024).unwrap();
    let secs = started.elapsed().as_secs_f64();

    let enough_points = bilinear.checks.iter().all(|c| c.points >= 20);
    let others_ok = bilinear.checks.iter().filter(|c| c.name != SQUARED_FORM).all(|c| c.passed);
    let squared = bilinear.check(SQUARED_FORM).unwrap();
    let cube = bilinear.check(CORRECTED_CUBE).unwrap();
    let passed = hamming.passed && divisible && bilinear.passed && enough_points && secs < 30.0;
    let mut detail = format!(
        "Hamming resultant sign {:+}, value at (3,3) {}; common factor divides both: {divisible}; bilinear resultant sign {:+}; {secs:.2} s",
        hamming.resultant_sign,
        hamming.resultant_at_3_3,
        bilinear.check("resultant in d").unwrap().sign
    );
    if !squared.passed {
        let w = squared.witness.as_ref().unwrap();
        detail.push_str(&format!(
            "; refuted: \"{SQUARED_FORM}\" ({}/{} points, e.g. at {:?} value {} vs {}); the cube form holds at {}/{} points",
            squared.matched, squared.points, w.point, w.computed, w.expected, cube.matched, cube.points
        ));
    }
    let truth = hamming.passed && divisible && others_ok && enough_points && !squared.passed && squared.matched == 0 && cube.passed && secs < 30.0;
    (Line { criterion: 6, passed, detail }, truth)
}

fn criterion7() -> Line {
    let cfg = CensusConfig::default();
    let mut families = vec![
        Family::Hamming { n: 3, q: 2 },
        Family::Hamming { n: 2, q: 3 },
        Family::Bilinear { m: 2, n: 2, q: 2 },
        Family::Bilinear { m: 3, n: 3, q: 2 },
    ];
    families.extend((5..=8).map(|n| Family::NGon { n }));
    let mut ok = true;
    let mut bad = Vec::new();
    for f in &families {
        let report = verify_family(*f, &cfg).unwrap();
        let (closed, _, _) = closed_form(*f).unwrap().unwrap();
        let exact_equal = closed.exact().is_some() && closed.exact() == report.census.array.exact();
        let tridiagonal = report.census.tridiagonal_violations().is_empty();
        let row_sums = report.census.row_sum_violations().is_empty();
        if !(report.matches && exact_equal && tridiagonal && row_sums) {
            ok = false;
            bad.push(format!("{f}: {:?}", report.mismatches));
        }
    }
    Line {
        criterion: 7,
        passed: ok,
        detail: if bad.is_empty() { format!("{} families match", families.len()) } else { bad.join(" | ") },
    }
}

fn criterion8(cfg: &SolverConfig, built: &[SchemeInstance]) -> Line {
    let worst = built.iter().map(|s| s.self_dual_residual()).fold(0.0, f64::max);
    let mut ok = worst <= 1e-8;
    let i = Complex64::i();
    for n in 3..=6 {
        let scheme = build(Family::Hamming { n, q: 2 }, cfg).unwrap();
        let xs = solve(&scheme, cfg).unwrap().accepted_x();
        ok &= xs.len() == 2 && [i, -i].iter().all(|w| xs.iter().any(|x| (x - w).norm() <= 1e-9));
    }
    Line {
        criterion: 8,
        passed: ok,
        detail: format!("{} instances, worst |P^2 - |X| I| / |X| = {worst:.1e}; Hamming q = 2 accepts exactly {{i, -i}}", built.len()),
    }
}

fn main() {
    let cfg = SolverConfig::default();
    let mut built = Vec::new();
    let mut lines = vec![
        criterion1(&cfg, &mut built),
        criterion2(&cfg, &mut built),
        criterion3(&cfg, &mut built),
        criterion4(&cfg, &mut built),
    ];
    lines.push(criterion5(&cfg, &built));
    let (six, six_truth) = criterion6();
    lines.push(six);
    lines.push(criterion7());
    lines.push(criterion8(&cfg, &built));

    for l in &lines {
        println!("criterion {}: {} - {}", l.criterion, if l.passed { "PASS" } else { "FAIL" }, l.detail);
    }
    // The squared closed form is false; everything else must hold.
    let ok = lines.iter().all(|l| if l.criterion == 6 { six_truth } else { l.passed });
    if !ok {
        std::process::exit(1);
    }
}
