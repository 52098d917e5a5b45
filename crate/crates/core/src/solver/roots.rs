//! Candidate polynomials for `x = T_1/T_0` and their complex roots.

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{IntersectionArray, SolverConfig};

/// Distance (relative to `max(1, |x|)`) below which companion eigenvalues
/// are treated as one split multiple root.
const CLUSTER_TOL: f64 = 1e-3;
/// How small the lower derivatives must be, relative to their term scale,
/// for a cluster to count as a genuine multiple root.
const MULTIPLE_ROOT_TOL: f64 = 1e-10;
const NEWTON_STEPS: usize = 3;
const SCHUR_ITERATIONS: usize = 10_000;

/// Coefficients `[A4, A3, A2, A1, A0]` of the palindromic quartic obtained
/// from `t_2(x) t_2(1/x) = 1`.
pub fn candidate_quartic(arr: &IntersectionArray, theta: &[f64]) -> [f64; 5] {
    let t1 = theta[1];
    let (a1, b1) = (arr.a(1), arr.b(1));
    let a4 = t1;
    let a3 = a1 * (t1 - 1.0);
    let a2 = -(t1 * t1 + a1 * a1 - b1 * b1 + 1.0);
    [a4, a3, a2, a3, a4]
}

/// `t_0(x) .. t_N(x)` as polynomials, lowest degree first.
pub fn profile_polynomials(arr: &IntersectionArray, theta: &[f64]) -> Vec<Vec<f64>> {
    let n = arr.n_classes();
    let mut t = vec![vec![1.0]];
    if n == 0 {
        return t;
    }
    t.push(vec![0.0, 1.0]);
    for i in 1..n {
        let mut next = shift_mul(&t[i], theta[i], arr.a(i));
        axpy(&mut next, -arr.c(i), &t[i - 1]);
        next.iter_mut().for_each(|v| *v /= arr.b(i));
        t.push(next);
    }
    t
}

/// Coefficients (highest degree first) of the last recurrence equation,
/// `t_N (x theta_N - a_N) - c_N t_{N-1} = 0`, as a polynomial in `x`.
pub fn terminal_polynomial(arr: &IntersectionArray, theta: &[f64]) -> Vec<f64> {
    let n = arr.n_classes();
    let t = profile_polynomials(arr, theta);
    let mut out = shift_mul(&t[n], theta[n], arr.a(n));
    axpy(&mut out, -arr.c(n), &t[n - 1]);
    out.reverse();
    out
}

fn shift_mul(p: &[f64], theta: f64, a: f64) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + 1];
    for (k, &c) in p.iter().enumerate() {
        out[k + 1] += theta * c;
        out[k] -= a * c;
    }
    out
}

fn axpy(out: &mut Vec<f64>, s: f64, p: &[f64]) {
    if out.len() < p.len() {
        out.resize(p.len(), 0.0);
    }
    for (o, &c) in out.iter_mut().zip(p) {
        *o += s * c;
    }
}

fn poly_mul(p: &[f64], q: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + q.len() - 1];
    for (i, &a) in p.iter().enumerate() {
        for (j, &b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// Entries of `(P diag t(x))^3` that must vanish for it to be scalar: the
/// off-diagonal entries and `M_ii - M_00`, lowest degree first.
fn scalar_conditions(p: &[Vec<f64>], t: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = p.len();
    let a: Vec<Vec<Vec<f64>>> = (0..n)
        .map(|i| (0..n).map(|j| t[j].iter().map(|c| c * p[i][j]).collect()).collect())
        .collect();
    let mul = |x: &Vec<Vec<Vec<f64>>>, y: &Vec<Vec<Vec<f64>>>| -> Vec<Vec<Vec<f64>>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = vec![0.0];
                        for k in 0..n {
                            axpy(&mut acc, 1.0, &poly_mul(&x[i][k], &y[k][j]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };
    let m = mul(&mul(&a, &a), &a);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(m[i][j].clone());
            } else if i > 0 {
                let mut d = m[i][i].clone();
                axpy(&mut d, -1.0, &m[0][0]);
                out.push(d);
            }
        }
    }
    out
}

/// The polynomial whose roots are the candidate `x` values, highest degree
/// first, with a label.
///
/// For `N >= 2` this is the quartic. When it vanishes identically, or for
/// `N = 1`, the terminal equation is used; when that vanishes too, the
/// first nonzero condition for `(P diag t)^3` to be scalar.
pub fn candidate_polynomial(arr: &IntersectionArray, theta: &[f64], p: &[Vec<f64>]) -> Result<(Vec<f64>, &'static str)> {
    if arr.n_classes() >= 2 {
        let q = candidate_quartic(arr, theta);
        if q.iter().any(|&c| c != 0.0) {
            return Ok((q.to_vec(), "quartic"));
        }
    }
    let terminal = terminal_polynomial(arr, theta);
    let scale = terminal.iter().fold(0.0f64, |m, c| m.max(c.abs())) + theta[0].abs();
    if terminal.iter().any(|c| c.abs() > 1e-12 * scale) {
        return Ok((terminal, "terminal"));
    }
    let conditions = scalar_conditions(p, &profile_polynomials(arr, theta));
    let scale = conditions.iter().flatten().fold(0.0f64, |m, c| m.max(c.abs()));
    for mut cond in conditions {
        if cond.iter().any(|c| c.abs() > 1e-12 * scale.max(1.0)) {
            cond.reverse();
            return Ok((cond, "scalar_cube"));
        }
    }
    Err(Error::Continuum(format!(
        "for {arr} the candidate quartic, the terminal equation and the scalar-cube conditions all vanish identically"
    )))
}

/// Nonzero roots of a quartic `[A4, A3, A2, A1, A0]`.
pub fn roots_of_quartic(coeffs: &[f64], cfg: &SolverConfig) -> Result<Vec<Complex64>> {
    if coeffs.len() != 5 {
        return Err(Error::Polynomial(format!("a quartic has 5 coefficients, got {}", coeffs.len())));
    }
    roots_of_polynomial(coeffs, cfg)
}

/// Distinct nonzero complex roots of a real polynomial given highest degree
/// first. Multiple roots are reported once.
pub fn roots_of_polynomial(coeffs: &[f64], cfg: &SolverConfig) -> Result<Vec<Complex64>> {
    let scale = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::Polynomial("candidate polynomial is identically zero".into()));
    }
    let negligible = |c: &f64| c.abs() <= 1e-14 * scale;
    let lead = coeffs.iter().position(|c| !negligible(c)).expect("nonzero coefficient");
    let trail = coeffs.iter().rposition(|c| !negligible(c)).expect("nonzero coefficient");
    // Trailing zeros only contribute the root x = 0, which is excluded.
    let p: Vec<f64> = coeffs[lead..=trail].to_vec();
    let degree = p.len() - 1;
    if degree == 0 {
        return Ok(Vec::new());
    }

    let mut companion = DMatrix::<f64>::zeros(degree, degree);
    for k in 0..degree {
        companion[(0, k)] = -p[k + 1] / p[0];
        if k + 1 < degree {
            companion[(k + 1, k)] = 1.0;
        }
    }
    let raw = eigenvalues(companion)?;

    let mut roots = Vec::new();
    for cluster in clusters(&raw) {
        let m = cluster.len();
        let mean = cluster.iter().sum::<Complex64>() / m as f64;
        if m > 1 && is_multiple_root(&p, mean, m) {
            roots.push(newton(&derivative(&p, m - 1), mean));
        } else {
            roots.extend(cluster.iter().map(|&z| newton(&p, z)));
        }
    }

    let mut out: Vec<Complex64> = Vec::new();
    for z in roots {
        let z = clean(z);
        if z.norm() <= 1e-14 {
            continue;
        }
        if !out.iter().any(|w| (w - z).norm() <= cfg.root_dedup_tol * z.norm().max(1.0)) {
            out.push(z);
        }
    }
    out.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(out)
}

/// Eigenvalues by real Schur decomposition. The unshifted companion matrix
/// of some palindromic quartics stalls the iteration, so on failure the
/// matrix is conjugated by a fixed Householder reflection and retried.
fn eigenvalues(m: DMatrix<f64>) -> Result<Vec<Complex64>> {
    let n = m.nrows();
    if let Some(s) = Schur::try_new(m.clone(), f64::EPSILON, SCHUR_ITERATIONS) {
        return Ok(s.complex_eigenvalues().iter().copied().collect());
    }
    let v = DVector::from_fn(n, |i, _| 1.0 + i as f64);
    let h = DMatrix::identity(n, n) - (&v * v.transpose()) * (2.0 / v.norm_squared());
    let conj = &h * m * &h;
    Schur::try_new(conj, f64::EPSILON, SCHUR_ITERATIONS)
        .map(|s| s.complex_eigenvalues().iter().copied().collect())
        .ok_or_else(|| Error::Polynomial("eigenvalue iteration did not converge".into()))
}

fn clusters(raw: &[Complex64]) -> Vec<Vec<Complex64>> {
    let n = raw.len();
    let mut label: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if (raw[i] - raw[j]).norm() <= CLUSTER_TOL * raw[i].norm().max(1.0) {
                let (from, to) = (label[j], label[i]);
                label.iter_mut().filter(|l| **l == from).for_each(|l| *l = to);
            }
        }
    }
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    let mut seen: Vec<usize> = Vec::new();
    for i in 0..n {
        match seen.iter().position(|&l| l == label[i]) {
            Some(g) => groups[g].push(raw[i]),
            None => {
                seen.push(label[i]);
                groups.push(vec![raw[i]]);
            }
        }
    }
    groups
}

fn is_multiple_root(p: &[f64], z: Complex64, m: usize) -> bool {
    (0..m).all(|k| {
        let d = derivative(p, k);
        let (value, scale) = eval_with_scale(&d, z);
        value.norm() <= MULTIPLE_ROOT_TOL * scale
    })
}

/// `k`-th derivative, highest degree first.
fn derivative(p: &[f64], k: usize) -> Vec<f64> {
    let mut d = p.to_vec();
    for _ in 0..k {
        let deg = d.len() - 1;
        if deg == 0 {
            return vec![0.0];
        }
        d = d[..deg].iter().enumerate().map(|(i, &c)| c * (deg - i) as f64).collect();
    }
    d
}

fn eval_with_scale(p: &[f64], z: Complex64) -> (Complex64, f64) {
    let r = z.norm();
    let mut value = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for &c in p {
        value = value * z + c;
        scale = scale * r + c.abs();
    }
    (value, scale)
}

fn newton(p: &[f64], mut z: Complex64) -> Complex64 {
    let dp = derivative(p, 1);
    for _ in 0..NEWTON_STEPS {
        let (f, _) = eval_with_scale(p, z);
        let (df, _) = eval_with_scale(&dp, z);
        if df.norm() == 0.0 {
            break;
        }
        let next = z - f / df;
        if !next.re.is_finite() || !next.im.is_finite() {
            break;
        }
        z = next;
    }
    z
}

/// Drop imaginary or real parts that are pure rounding noise.
fn clean(z: Complex64) -> Complex64 {
    let tiny = 1e-14 * z.norm().max(1.0);
    Complex64::new(if z.re.abs() <= tiny { 0.0 } else { z.re }, if z.im.abs() <= tiny { 0.0 } else { z.im })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    fn assert_roots(got: &[Complex64], want: &[Complex64]) {
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        for w in want {
            assert!(got.iter().any(|g| (g - w).norm() < 1e-12), "{w} missing from {got:?}");
        }
    }

    #[test]
    fn double_roots_collapse() {
        let r = roots_of_quartic(&[1.0, 0.0, 2.0, 0.0, 1.0], &cfg()).unwrap();
        assert_roots(&r, &[Complex64::i(), -Complex64::i()]);
        // (x + 1)^4
        let r = roots_of_quartic(&[1.0, 4.0, 6.0, 4.0, 1.0], &cfg()).unwrap();
        assert_roots(&r, &[Complex64::new(-1.0, 0.0)]);
    }

    #[test]
    fn sixth_roots() {
        let r = roots_of_quartic(&[1.0, 0.0, -1.0, 0.0, 1.0], &cfg()).unwrap();
        let e = |k: f64| Complex64::from_polar(1.0, k * std::f64::consts::PI / 6.0);
        assert_roots(&r, &[e(1.0), e(-1.0), e(5.0), e(-5.0)]);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(roots_of_quartic(&[0.0, 0.0, 1.0, 0.0, 0.0], &cfg()).unwrap().is_empty());
        assert!(roots_of_quartic(&[0.0; 5], &cfg()).is_err());
        assert!(roots_of_quartic(&[1.0, 2.0], &cfg()).is_err());
        let r = roots_of_quartic(&[0.0, 0.0, 1.0, -3.0, 2.0], &cfg()).unwrap();
        assert_roots(&r, &[Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]);
    }

    #[test]
    fn close_distinct_roots_stay_apart() {
        // (x - 1)(x - 1.0001)(x^2 + 1)
        let (a, b) = (1.0, 1.0001);
        let p = [1.0, -(a + b), a * b + 1.0, -(a + b), a * b];
        let r = roots_of_quartic(&p, &cfg()).unwrap();
        assert_roots(&r, &[Complex64::new(a, 0.0), Complex64::new(b, 0.0), Complex64::i(), -Complex64::i()]);
    }

    #[test]
    fn quartic_examples() {
        let h32 = IntersectionArray::from_integers(&[3, 2, 1], &[1, 2, 3]);
        assert_eq!(candidate_quartic(&h32, &[3.0, 1.0, -1.0, -3.0]), [1.0, 0.0, 2.0, 0.0, 1.0]);
        let g6 = IntersectionArray::from_integers(&[2, 1, 1], &[1, 1, 2]);
        assert_eq!(candidate_quartic(&g6, &[2.0, 1.0, -1.0, -2.0]), [1.0, 0.0, -1.0, 0.0, 1.0]);
        let h33 = IntersectionArray::from_integers(&[6, 4, 2], &[1, 2, 3]);
        assert_eq!(candidate_quartic(&h33, &[6.0, 3.0, 0.0, -3.0]), [3.0, 2.0, 5.0, 2.0, 3.0]);
    }

    #[test]
    fn four_cycle_is_a_continuum() {
        let c4 = IntersectionArray::from_integers(&[2, 1], &[1, 2]);
        let theta = [2.0, 0.0, -2.0];
        let p = vec![vec![1.0, 2.0, 1.0], vec![1.0, 0.0, -1.0], vec![1.0, -2.0, 1.0]];
        assert_eq!(candidate_quartic(&c4, &theta), [0.0; 5]);
        assert!(matches!(candidate_polynomial(&c4, &theta, &p), Err(Error::Continuum(_))));
    }

    #[test]
    fn terminal_polynomial_of_one_class() {
        // Complete graph K_3: b = [2], c = [1], a = [0, 1], theta = [2, -1].
        let k3 = IntersectionArray::from_integers(&[2], &[1]);
        let p = terminal_polynomial(&k3, &[2.0, -1.0]);
        // x (-x - 1) - 1
        assert_eq!(p, vec![-1.0, -1.0, -1.0]);
    }
}
