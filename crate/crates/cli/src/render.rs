//! Plain-text tables for `--format table`.

use std::fmt::Write;

use num_complex::Complex64;
use serde_json::{json, Value};
use spinsolve::oracle::{FamilyReport, SchemeCensus};
use spinsolve::solver::SolutionSet;
use spinsolve::symbolic::{BilinearReport, HammingFactorReport};
use spinsolve::verify::TheoremReport;
use spinsolve::SchemeInstance;

fn c(z: Complex64) -> String {
    format!("{:+.9}{:+.9}i", z.re, z.im)
}

const FAMILIES: [(&str, &str, &str); 6] = [
    ("hamming", "--N --q", "closed form"),
    ("bilinear", "--M --N --q", "closed form"),
    ("alternating", "--N --q", "census (at most 2^22 points)"),
    ("hermitian", "--N --q", "census (at most 2^22 points)"),
    ("ngon", "--n", "closed form"),
    ("custom", "--array-file", "JSON {\"b\": [...], \"c\": [...]}"),
];

pub fn family_list() -> String {
    let mut s = String::new();
    for (name, flags, source) in FAMILIES {
        let _ = writeln!(s, "{name:<12} {flags:<14} {source}");
    }
    s
}

pub fn family_list_json() -> Value {
    Value::Array(FAMILIES.iter().map(|(name, flags, source)| json!({ "family": name, "flags": flags, "source": source })).collect())
}

pub fn scheme(s: &SchemeInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}  {}", s.family(), s.array());
    let _ = writeln!(out, "|X| = {}", s.size());
    let _ = writeln!(out, "eigenvalues {:?}", s.eigenvalues());
    let _ = writeln!(out, "valencies {:?}", s.valencies());
    let _ = writeln!(out, "self-duality residual {:.3e}", s.self_dual_residual());
    let _ = writeln!(out, "P =");
    for row in s.eigenmatrix() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>10.4}")).collect();
        let _ = writeln!(out, "  {}", cells.join(" "));
    }
    out
}

pub fn solution_set(set: &SolutionSet) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}  {}", set.family, set.array);
    let _ = writeln!(out, "{} polynomial {:?}", set.polynomial_kind, set.polynomial);
    let _ = writeln!(out, "{} solutions ({} accepted pairs)", set.count, set.raw_count);
    if !set.accepted.is_empty() {
        let _ = writeln!(out, "{:>3}  {:<40} {:<40} {:>10}", "#", "x", "T_0", "residual");
        for (k, s) in set.accepted.iter().enumerate() {
            let _ = writeln!(out, "{k:>3}  {:<40} {:<40} {:>10.2e}", c(s.x), c(s.t0), s.residual);
        }
    }
    for r in &set.rejected_x {
        let _ = writeln!(out, "rejected x = {}: {}", c(r.x), r.reason);
    }
    out
}

pub fn theorem(r: &TheoremReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "theorem {}: {}", r.theorem, r.claim);
    for i in &r.instances {
        let status = if !i.passed {
            "FAIL"
        } else if i.excluded {
            "SKIP"
        } else {
            "ok"
        };
        let _ = writeln!(out, "  {:<4} {:<44} {:>3} solutions  residual {:.1e}", status, i.label, i.count, i.max_residual);
        for p in &i.problems {
            let _ = writeln!(out, "         problem: {p}");
        }
        for n in &i.notes {
            let _ = writeln!(out, "         note: {n}");
        }
    }
    let _ = writeln!(out, "{}", if r.passed { "PASS" } else { "FAIL" });
    out
}

pub fn census(c: &SchemeCensus) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}: {} points, classes {:?}", c.family, c.point_count, c.class_sizes);
    let _ = writeln!(out, "array {}", c.array);
    let _ = writeln!(out, "p^r_(1,j), rows r:");
    for (r, row) in c.measured_p.iter().enumerate() {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:>8}")).collect();
        let _ = writeln!(out, "  {r:>2}: {}", cells.join(" "));
    }
    out
}

pub fn family_report(r: &FamilyReport) -> String {
    let mut out = census(&r.census);
    for m in &r.mismatches {
        let _ = writeln!(out, "mismatch: {m}");
    }
    let _ = writeln!(out, "{}", if r.matches { "match" } else { "MISMATCH" });
    out
}

pub fn hamming(r: &HammingFactorReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "common factor: {}", r.common_factor);
    let _ = writeln!(out, "degree 2 cofactor: {}", r.cofactor2);
    let _ = writeln!(out, "degree 3 cofactor: {}", r.cofactor3);
    let _ = writeln!(out, "x^2 coefficient of the degree 2 cofactor is {} + q - Nq", r.star);
    let _ = writeln!(out, "resultant: {}", r.resultant);
    let _ = writeln!(out, "expected:  {}", r.expected_resultant);
    let _ = writeln!(out, "sign {:+}, value at N = q = 3: {}", r.resultant_sign, r.resultant_at_3_3);
    let _ = writeln!(out, "{}", if r.passed { "PASS" } else { "FAIL" });
    out
}

pub fn bilinear(r: &BilinearReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "seed {}, deg A = {}, deg B = {}", r.seed, r.degree_a, r.degree_b);
    for c in &r.checks {
        let status = if c.passed { "ok" } else { "FAIL" };
        let _ = writeln!(out, "  {status:<4} {}/{} points, sign {:+}, degree <= {}: {}", c.matched, c.points, c.sign, c.degree_bound, c.name);
        if let Some(w) = &c.witness {
            let _ = writeln!(out, "       witness {:?}: {} vs {}", w.point, w.computed, w.expected);
        }
    }
    for (label, value) in &r.examples {
        let _ = writeln!(out, "  {label}: {value}");
    }
    let _ = writeln!(out, "{}", if r.passed { "PASS" } else { "FAIL" });
    out
}
