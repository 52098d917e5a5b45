//! Enumeration of diagonal `T` with `(P T)^3 = I`.
//!
//! Normalizing `T_0 = 1`, the first column of the equation forces
//! `t_i = T_i/T_0` to follow a three-term recurrence started at `t_1 = x`.
//! The candidate `x` are the roots of a quartic; each survivor of the
//! reciprocal and terminal checks gives a scalar cube `(P diag t)^3 = mu I`
//! and three choices of `T_0`.

mod random;
mod roots;

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::Result;
use crate::model::{Family, IntersectionArray, SchemeInstance, SolverConfig};

pub use random::{random_array, random_arrays};
pub use roots::{
    candidate_polynomial, candidate_quartic, profile_polynomials, roots_of_polynomial, roots_of_quartic,
    terminal_polynomial,
};

/// Why a candidate `x` (or one of its cube roots) was dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RejectReason {
    /// `t_i` vanished, so `T` would be singular.
    ZeroProfile { i: usize },
    /// `t_i(x) t_i(1/x) != 1`.
    ReciprocalFailed { i: usize },
    /// The last recurrence equation does not hold.
    TerminalFailed,
    /// `(P diag t)^3` is not a multiple of the identity.
    NonScalarCube,
    /// `(P diag t)^3` is numerically zero.
    SingularCube,
    /// The final `(P T)^3 = I` check failed.
    ResidualExceeded,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::ZeroProfile { i } => write!(f, "zero_profile at i={i}"),
            RejectReason::ReciprocalFailed { i } => write!(f, "reciprocal_failed at i={i}"),
            RejectReason::TerminalFailed => f.write_str("terminal_failed"),
            RejectReason::NonScalarCube => f.write_str("non_scalar_cube"),
            RejectReason::SingularCube => f.write_str("singular_cube"),
            RejectReason::ResidualExceeded => f.write_str("residual_exceeded"),
        }
    }
}

impl std::str::FromStr for RejectReason {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let at = |prefix: &str| s.strip_prefix(prefix).and_then(|i| i.parse().ok());
        if let Some(i) = at("zero_profile at i=") {
            return Ok(RejectReason::ZeroProfile { i });
        }
        if let Some(i) = at("reciprocal_failed at i=") {
            return Ok(RejectReason::ReciprocalFailed { i });
        }
        match s {
            "terminal_failed" => Ok(RejectReason::TerminalFailed),
            "non_scalar_cube" => Ok(RejectReason::NonScalarCube),
            "singular_cube" => Ok(RejectReason::SingularCube),
            "residual_exceeded" => Ok(RejectReason::ResidualExceeded),
            _ => Err(format!("unknown reject reason {s:?}")),
        }
    }
}

impl Serialize for RejectReason {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RejectReason {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RejectedX {
    #[serde(with = "crate::json::complex")]
    pub x: Complex64,
    pub reason: RejectReason,
}

/// One accepted `T`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionCandidate {
    #[serde(with = "crate::json::complex")]
    pub x: Complex64,
    /// `(P diag t)^3 = mu I`.
    #[serde(with = "crate::json::complex")]
    pub mu: Complex64,
    /// Which cube root of `1/mu` was taken (0 = principal).
    pub cube_root: usize,
    #[serde(with = "crate::json::complex")]
    pub t0: Complex64,
    #[serde(rename = "T", with = "crate::json::complex_vec")]
    pub t: Vec<Complex64>,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolutionSet {
    pub family: Family,
    pub array: IntersectionArray,
    /// Polynomial whose roots were tried, highest degree first.
    pub polynomial: Vec<f64>,
    pub polynomial_kind: String,
    #[serde(with = "crate::json::complex_vec")]
    pub roots: Vec<Complex64>,
    pub accepted: Vec<SolutionCandidate>,
    pub rejected_x: Vec<RejectedX>,
    /// Distinct accepted `T` vectors.
    pub count: usize,
    /// Accepted `(x, T_0)` pairs before removing duplicate `T`.
    pub raw_count: usize,
}

impl SolutionSet {
    /// Accepted `x`, one entry per distinct value.
    pub fn accepted_x(&self) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = Vec::new();
        for s in &self.accepted {
            if !out.iter().any(|&x| (x - s.x).norm() <= 1e-12 * s.x.norm().max(1.0)) {
                out.push(s.x);
            }
        }
        out
    }

    pub fn max_residual(&self) -> f64 {
        self.accepted.iter().fold(0.0, |m, s| m.max(s.residual))
    }
}

/// `t_0 .. t_N` for the given `x`.
///
/// The recurrence is run in the form
/// `t_{i+1} = (t_i (x theta_i - a_i) - c_i t_{i-1}) / b_i`, which is the
/// valency-weighted one divided through by `v_i`.
pub fn t_profile(arr: &IntersectionArray, theta: &[f64], x: Complex64) -> Vec<Complex64> {
    let n = arr.n_classes();
    let mut t = Vec::with_capacity(n + 1);
    t.push(Complex64::new(1.0, 0.0));
    if n == 0 {
        return t;
    }
    t.push(x);
    for i in 1..n {
        let next = (t[i] * (x * theta[i] - arr.a(i)) - t[i - 1] * arr.c(i)) / arr.b(i);
        t.push(next);
    }
    t
}

/// Apply the reciprocal and terminal checks to a candidate `x`.
pub fn filter_x(arr: &IntersectionArray, theta: &[f64], x: Complex64, cfg: &SolverConfig) -> std::result::Result<Vec<Complex64>, RejectReason> {
    let n = arr.n_classes();
    let t = t_profile(arr, theta, x);
    let tinv = t_profile(arr, theta, x.inv());
    for i in 1..=n {
        if t[i].norm() <= 1e-14 || !t[i].norm().is_finite() {
            return Err(RejectReason::ZeroProfile { i });
        }
    }
    for i in 1..=n {
        if (t[i] * tinv[i] - 1.0).norm() > cfg.filter_tol {
            return Err(RejectReason::ReciprocalFailed { i });
        }
    }
    let lhs = t[n] * (x * theta[n] - arr.a(n));
    let rhs = t[n - 1] * arr.c(n);
    let scale = lhs.norm().max(rhs.norm());
    if (lhs - rhs).norm() > cfg.filter_tol * scale {
        return Err(RejectReason::TerminalFailed);
    }
    Ok(t)
}

fn p_diag(p: &[Vec<f64>], t: &[Complex64]) -> DMatrix<Complex64> {
    let n = p.len();
    DMatrix::from_fn(n, n, |i, j| t[j] * p[i][j])
}

fn inf_norm(m: &DMatrix<Complex64>) -> f64 {
    m.row_iter().map(|r| r.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// `mu` with `(P diag t)^3 = mu I`, and the three `T_0` with `T_0^3 = 1/mu`
/// (principal root first, then successive multiples of `e^{2 pi i/3}`).
pub fn scalar_and_t0(p: &[Vec<f64>], t: &[Complex64], cfg: &SolverConfig) -> std::result::Result<(Complex64, [Complex64; 3]), RejectReason> {
    let a = p_diag(p, t);
    let m = &a * &a * &a;
    let n = m.nrows();
    let norm = inf_norm(&m);
    if norm == 0.0 || !norm.is_finite() {
        return Err(RejectReason::SingularCube);
    }
    let mu = (0..n).map(|i| m[(i, i)]).sum::<Complex64>() / n as f64;
    let off = DMatrix::from_fn(n, n, |i, j| if i == j { m[(i, j)] - mu } else { m[(i, j)] });
    if inf_norm(&off) > cfg.residual_tol * norm {
        return Err(RejectReason::NonScalarCube);
    }
    if mu.norm() <= 1e-12 * norm {
        return Err(RejectReason::SingularCube);
    }
    let principal = mu.inv().cbrt();
    let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
    Ok((mu, [principal, principal * omega, principal * omega * omega]))
}

/// `|(P diag T)^3 - I|_inf` (maximum absolute row sum).
pub fn verify_solution(p: &[Vec<f64>], t: &[Complex64]) -> f64 {
    let a = p_diag(p, t);
    let mut m = &a * &a * &a;
    for i in 0..m.nrows() {
        m[(i, i)] -= 1.0;
    }
    inf_norm(&m)
}

/// All diagonal solutions for a scheme.
pub fn solve(scheme: &SchemeInstance, cfg: &SolverConfig) -> Result<SolutionSet> {
    cfg.validate()?;
    let arr = scheme.array();
    let theta = scheme.eigenvalues();
    let p = scheme.eigenmatrix();
    let (polynomial, kind) = candidate_polynomial(arr, theta, p)?;
    let roots = roots_of_polynomial(&polynomial, cfg)?;

    let mut accepted: Vec<SolutionCandidate> = Vec::new();
    let mut rejected_x = Vec::new();
    let mut raw_count = 0;
    for &x in &roots {
        let t = match filter_x(arr, theta, x, cfg) {
            Ok(t) => t,
            Err(reason) => {
                rejected_x.push(RejectedX { x, reason });
                continue;
            }
        };
        let (mu, t0s) = match scalar_and_t0(p, &t, cfg) {
            Ok(found) => found,
            Err(reason) => {
                rejected_x.push(RejectedX { x, reason });
                continue;
            }
        };
        for (k, &t0) in t0s.iter().enumerate() {
            let tt: Vec<Complex64> = t.iter().map(|&ti| ti * t0).collect();
            let residual = verify_solution(p, &tt);
            if !(residual <= cfg.residual_tol) {
                rejected_x.push(RejectedX { x, reason: RejectReason::ResidualExceeded });
                continue;
            }
            raw_count += 1;
            let duplicate = accepted.iter().any(|s| {
                s.t.iter().zip(&tt).all(|(a, b)| (a - b).norm() <= cfg.root_dedup_tol * a.norm().max(1.0))
            });
            if !duplicate {
                accepted.push(SolutionCandidate { x, mu, cube_root: k, t0, t: tt, residual });
            }
        }
    }
    Ok(SolutionSet {
        family: scheme.family(),
        array: arr.clone(),
        polynomial,
        polynomial_kind: kind.to_string(),
        roots,
        count: accepted.len(),
        accepted,
        rejected_x,
        raw_count,
    })
}
