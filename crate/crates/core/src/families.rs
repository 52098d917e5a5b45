//! Scheme instances for the named families.
//!
//! Hamming, bilinear forms and n-gons come from closed forms. Alternating
//! and Hermitian forms have their arrays measured by the finite-field census
//! and their eigenvalues computed from the tridiagonal intersection matrix.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{self, ExactArray, Family, IntersectionArray, SchemeInstance, SolverConfig};
use crate::oracle::{self, CensusConfig, PointSpace};

/// Largest class count for which every eigenvalue ordering is tried.
const MAX_PERMUTED_CLASSES: usize = 8;

/// Check the parameter ranges of a family.
pub fn check_spec(family: Family) -> Result<()> {
    let bad = |m: String| Err(Error::InvalidParameters(m));
    let prime_power = |q: u32| match oracle::prime_power(q) {
        Some(_) => Ok(()),
        None => Err(Error::NotPrimePower(q)),
    };
    match family {
        Family::Hamming { n, q } => {
            if n < 1 || q < 2 {
                return bad(format!("Hamming needs N >= 1 and q >= 2, got N={n}, q={q}"));
            }
        }
        Family::Bilinear { m, n, q } => {
            if m < 1 || n < 1 {
                return bad(format!("Bilinear needs M, N >= 1, got M={m}, N={n}"));
            }
            prime_power(q)?;
        }
        Family::Alternating { n, q } => {
            if n < 4 {
                return bad(format!("Alternating needs n >= 4, got {n}"));
            }
            prime_power(q)?;
        }
        Family::Hermitian { n, q } => {
            if n < 1 {
                return bad(format!("Hermitian needs n >= 1, got {n}"));
            }
            prime_power(q)?;
        }
        Family::NGon { n } => {
            if n < 3 {
                return bad(format!("NGon needs n >= 3, got {n}"));
            }
        }
        Family::Custom => return bad("custom schemes are built from an array".into()),
    }
    Ok(())
}

fn overflow(what: &str) -> Error {
    Error::InvalidParameters(format!("{what} overflows 64-bit arithmetic"))
}

fn ipow(base: u32, exp: u32) -> Result<i64> {
    (base as i64).checked_pow(exp).ok_or_else(|| overflow("parameter power"))
}

/// Closed-form array and eigenvalues for Hamming, bilinear forms and
/// n-gons; `None` for the census-built families.
pub fn closed_form(family: Family) -> Result<Option<(IntersectionArray, Vec<f64>, u64)>> {
    check_spec(family)?;
    let out = match family {
        Family::Hamming { n, q } => {
            let (n, q) = (n as i64, q as i64);
            let b: Vec<i64> = (0..n).map(|i| (n - i) * (q - 1)).collect();
            let c: Vec<i64> = (1..=n).collect();
            let theta = (0..=n).map(|i| (n * (q - 1) - q * i) as f64).collect();
            let size = ipow(q as u32, n as u32)? as u64;
            Some((IntersectionArray::from_integers(&b, &c), theta, size))
        }
        Family::Bilinear { m, n, q } => {
            let classes = m.min(n);
            let d = ipow(q, m)? as i128;
            let e = ipow(q, n)? as i128;
            let qq = q as i128;
            let qi = |i: u32| qq.pow(i);
            let b: Vec<i64> = (0..classes)
                .map(|i| ((d - qi(i)) * (e - qi(i)) / (qq - 1)) as i64)
                .collect();
            let c: Vec<i64> = (1..=classes)
                .map(|i| (qi(i - 1) * (qi(i) - 1) / (qq - 1)) as i64)
                .collect();
            let mut theta = Vec::with_capacity(classes as usize + 1);
            for i in 0..=classes {
                let num = d * e + qi(i) - d * qi(i) - e * qi(i);
                let den = (qq - 1) * qi(i);
                if num % den != 0 {
                    return Err(Error::Internal(format!("bilinear eigenvalue {i} is not integral")));
                }
                theta.push((num / den) as f64);
            }
            let size = (q as u64).checked_pow(m * n).ok_or_else(|| overflow("|X|"))?;
            Some((IntersectionArray::from_integers(&b, &c), theta, size))
        }
        Family::NGon { n } => {
            let classes = (n / 2) as usize;
            let mut b = vec![1i64; classes];
            b[0] = 2;
            let mut c = vec![1i64; classes];
            if n % 2 == 0 {
                c[classes - 1] = 2;
            }
            let theta = (0..=classes)
                .map(|i| snap(2.0 * (2.0 * std::f64::consts::PI * i as f64 / n as f64).cos()))
                .collect();
            Some((IntersectionArray::from_integers(&b, &c), theta, n as u64))
        }
        Family::Alternating { .. } | Family::Hermitian { .. } | Family::Custom => None,
    };
    Ok(out)
}

/// Round to an integer when within rounding noise of one.
fn snap(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= 1e-12 * x.abs().max(1.0) {
        r
    } else {
        x
    }
}

/// Build and validate a scheme instance for a named family.
pub fn build(family: Family, cfg: &SolverConfig) -> Result<SchemeInstance> {
    build_with_census(family, cfg, &CensusConfig::default())
}

pub fn build_with_census(family: Family, cfg: &SolverConfig, census_cfg: &CensusConfig) -> Result<SchemeInstance> {
    cfg.validate()?;
    let (array, theta, size) = match closed_form(family)? {
        Some(found) => found,
        None => {
            let space = PointSpace::new(family)?;
            let census = oracle::census(&space, census_cfg)?;
            let violations = model::validate_array(&census.array);
            if !violations.is_empty() {
                return Err(Error::InvalidArray(violations));
            }
            let theta = eigenvalues_from_array(&census.array, cfg)?;
            (census.array, theta, census.point_count)
        }
    };
    let violations = model::validate_array(&array);
    if !violations.is_empty() {
        return Err(Error::InvalidArray(violations));
    }
    let p = eigenmatrix(&array, &theta)?;
    let scheme = SchemeInstance::assemble(family, array, Some(size), theta, p);
    if !(scheme.self_dual_residual() <= cfg.self_dual_tol) {
        return Err(Error::NotSelfDual { best: scheme.self_dual_residual() });
    }
    Ok(scheme)
}

/// Scheme from a user-supplied array. Self-duality is recorded but not
/// required, so arbitrary valid arrays can be fed to the solver.
pub fn build_custom(array: IntersectionArray, cfg: &SolverConfig) -> Result<SchemeInstance> {
    cfg.validate()?;
    let violations = model::validate_array(&array);
    if !violations.is_empty() {
        return Err(Error::InvalidArray(violations));
    }
    let spectrum = tridiagonal_spectrum(&array)?;
    let (theta, _) = best_ordering(&array, &spectrum)?;
    let p = eigenmatrix(&array, &theta)?;
    Ok(SchemeInstance::assemble(Family::Custom, array, None, theta, p))
}

/// `P[i][j] = P_j(i)` from `P_0(i) = 1`, `P_1(i) = theta_i` and
/// `theta_i P_j(i) = b_{j-1} P_{j-1}(i) + a_j P_j(i) + c_{j+1} P_{j+1}(i)`.
pub fn eigenmatrix(arr: &IntersectionArray, theta: &[f64]) -> Result<Vec<Vec<f64>>> {
    let n = arr.n_classes();
    if theta.len() != n + 1 {
        return Err(Error::Eigenmatrix(format!("expected {} eigenvalues, got {}", n + 1, theta.len())));
    }
    if theta[0] != arr.b(0) {
        return Err(Error::Eigenmatrix(format!("theta_0 = {} must equal b_0 = {}", theta[0], arr.b(0))));
    }
    check_distinct(theta)?;
    for j in 1..n {
        if arr.c(j + 1) == 0.0 {
            return Err(Error::Eigenmatrix(format!("c_{} = 0 before the last column", j + 1)));
        }
    }
    if let (Some(ex), Some(int_theta)) = (arr.exact(), integral(theta)) {
        return Ok(eigenmatrix_exact(ex, &int_theta)
            .iter()
            .map(|row| row.iter().map(model::ratio_to_f64).collect())
            .collect());
    }
    Ok(theta
        .iter()
        .map(|&t| {
            let mut row = vec![0.0; n + 1];
            row[0] = 1.0;
            if n >= 1 {
                row[1] = t;
            }
            for j in 1..n {
                row[j + 1] = ((t - arr.a(j)) * row[j] - arr.b(j - 1) * row[j - 1]) / arr.c(j + 1);
            }
            row
        })
        .collect())
}

fn integral(theta: &[f64]) -> Option<Vec<i64>> {
    theta
        .iter()
        .map(|&t| (t.fract() == 0.0 && t.abs() < 1e15).then_some(t as i64))
        .collect()
}

/// Same recurrence over the rationals.
pub fn eigenmatrix_exact(arr: &ExactArray, theta: &[i64]) -> Vec<Vec<BigRational>> {
    let n = arr.b.len();
    let r = |x: i64| BigRational::from_integer(BigInt::from(x));
    theta
        .iter()
        .map(|&t| {
            let mut row = vec![BigRational::zero(); n + 1];
            row[0] = r(1);
            if n >= 1 {
                row[1] = r(t);
            }
            for j in 1..n {
                let next = (r(t) - r(arr.a[j])) * &row[j] - r(arr.b[j - 1]) * &row[j - 1];
                row[j + 1] = next / r(arr.c[j]);
            }
            row
        })
        .collect()
}

fn check_distinct(theta: &[f64]) -> Result<()> {
    let scale = theta.iter().fold(1.0f64, |m, t| m.max(t.abs()));
    for i in 0..theta.len() {
        for j in i + 1..theta.len() {
            if (theta[i] - theta[j]).abs() <= 1e-9 * scale {
                return Err(Error::RepeatedEigenvalue { i, j, value: theta[i] });
            }
        }
    }
    Ok(())
}

/// Eigenvalues of the tridiagonal intersection matrix in descending order,
/// computed on its symmetrization (off-diagonal `sqrt(b_i c_{i+1})`).
pub fn tridiagonal_spectrum(arr: &IntersectionArray) -> Result<Vec<f64>> {
    let violations = model::validate_array(arr);
    if !violations.is_empty() {
        return Err(Error::InvalidArray(violations));
    }
    let n = arr.n_classes();
    let mut m = DMatrix::<f64>::zeros(n + 1, n + 1);
    for i in 0..=n {
        m[(i, i)] = arr.a(i);
        if i < n {
            let off = (arr.b(i) * arr.c(i + 1)).sqrt();
            m[(i, i + 1)] = off;
            m[(i + 1, i)] = off;
        }
    }
    let eig = m.symmetric_eigen();
    let mut theta: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    theta.sort_by(|x, y| y.total_cmp(x));
    let b0 = arr.b(0);
    if (theta[0] - b0).abs() <= 1e-9 * b0.max(1.0) {
        theta[0] = b0;
    }
    if arr.exact().is_some() {
        for t in theta.iter_mut() {
            let r = t.round();
            if (*t - r).abs() <= 1e-9 * t.abs().max(1.0) {
                *t = r;
            }
        }
    }
    check_distinct(&theta)?;
    Ok(theta)
}

/// Eigenvalues ordered so that the eigenmatrix is self-dual.
///
/// The descending order is tried first; when it is not self-dual every
/// ordering of `theta_1..theta_N` is tried (for `N <= 8`) and the one with
/// the smallest `|P^2 - |X| I|` wins.
pub fn eigenvalues_from_array(arr: &IntersectionArray, cfg: &SolverConfig) -> Result<Vec<f64>> {
    let spectrum = tridiagonal_spectrum(arr)?;
    let (theta, residual) = best_ordering(arr, &spectrum)?;
    if residual <= cfg.self_dual_tol {
        Ok(theta)
    } else {
        Err(Error::NotSelfDual { best: residual })
    }
}

fn ordering_residual(arr: &IntersectionArray, theta: &[f64], size: f64) -> Result<f64> {
    let p = eigenmatrix(arr, theta)?;
    Ok(model::self_dual_residual(&p, size))
}

fn best_ordering(arr: &IntersectionArray, descending: &[f64]) -> Result<(Vec<f64>, f64)> {
    let size: f64 = model::valencies_unchecked(arr).iter().sum();
    let first = ordering_residual(arr, descending, size)?;
    if first <= 1e-12 || descending.len() - 1 > MAX_PERMUTED_CLASSES {
        return Ok((descending.to_vec(), first));
    }
    let mut best = (descending.to_vec(), first);
    let mut tail: Vec<f64> = descending[1..].to_vec();
    let mut candidate = descending.to_vec();
    permute(&mut tail, 0, &mut |perm| {
        candidate[1..].copy_from_slice(perm);
        if let Ok(r) = ordering_residual(arr, &candidate, size) {
            if r < best.1 {
                best = (candidate.clone(), r);
            }
        }
    });
    Ok(best)
}

fn permute(items: &mut [f64], k: usize, visit: &mut impl FnMut(&[f64])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn hamming_3_2_instance() {
        let s = build(Family::Hamming { n: 3, q: 2 }, &cfg()).unwrap();
        assert_eq!(s.eigenvalues(), &[3.0, 1.0, -1.0, -3.0]);
        assert_eq!(s.size(), 8.0);
        let expected = vec![
            vec![1.0, 3.0, 3.0, 1.0],
            vec![1.0, 1.0, -1.0, -1.0],
            vec![1.0, -1.0, -1.0, 1.0],
            vec![1.0, -3.0, 3.0, -1.0],
        ];
        assert_eq!(s.eigenmatrix(), expected.as_slice());
        assert_eq!(s.self_dual_residual(), 0.0);
    }

    #[test]
    fn bilinear_3_3_2_instance() {
        let s = build(Family::Bilinear { m: 3, n: 3, q: 2 }, &cfg()).unwrap();
        assert_eq!(s.eigenvalues(), &[49.0, 17.0, 1.0, -7.0]);
        assert_eq!(s.size(), 512.0);
        assert_eq!(s.self_dual_residual(), 0.0);
    }

    #[test]
    fn ngon_6_instance() {
        let s = build(Family::NGon { n: 6 }, &cfg()).unwrap();
        assert_eq!(s.array(), &IntersectionArray::from_integers(&[2, 1, 1], &[1, 1, 2]));
        assert_eq!(s.eigenvalues(), &[2.0, 1.0, -1.0, -2.0]);
        let expected = vec![
            vec![1.0, 2.0, 2.0, 1.0],
            vec![1.0, 1.0, -1.0, -1.0],
            vec![1.0, -1.0, -1.0, 1.0],
            vec![1.0, -2.0, 2.0, -1.0],
        ];
        assert_eq!(s.eigenmatrix(), expected.as_slice());
    }

    #[test]
    fn ngon_end_classes() {
        for n in 3..=14u32 {
            let s = build(Family::NGon { n }, &cfg()).unwrap();
            let big_n = (n / 2) as usize;
            assert_eq!(s.n_classes(), big_n);
            let v = s.valencies();
            if n % 2 == 0 {
                assert_eq!(s.array().c(big_n), 2.0);
                assert_eq!(v[big_n], 1.0);
            } else {
                assert_eq!(s.array().a(big_n), 1.0);
                assert_eq!(v[big_n], 2.0);
            }
            assert!(s.self_dual_residual() <= 1e-8, "n={n}");
        }
    }

    #[test]
    fn spectrum_matches_closed_forms() {
        let h = closed_form(Family::Hamming { n: 4, q: 2 }).unwrap().unwrap();
        assert_eq!(eigenvalues_from_array(&h.0, &cfg()).unwrap(), vec![4.0, 2.0, 0.0, -2.0, -4.0]);

        let b = closed_form(Family::Bilinear { m: 3, n: 3, q: 2 }).unwrap().unwrap();
        assert_eq!(eigenvalues_from_array(&b.0, &cfg()).unwrap(), vec![49.0, 17.0, 1.0, -7.0]);

        let g = closed_form(Family::NGon { n: 7 }).unwrap().unwrap();
        let theta = eigenvalues_from_array(&g.0, &cfg()).unwrap();
        for (i, t) in theta.iter().enumerate() {
            let want = 2.0 * (2.0 * std::f64::consts::PI * i as f64 / 7.0).cos();
            assert!((t - want).abs() < 1e-12, "theta_{i} = {t}, want {want}");
        }
        let p = eigenmatrix(&g.0, &theta).unwrap();
        assert!(model::self_dual_residual(&p, 7.0) < 1e-12);
    }

    #[test]
    fn eigenmatrix_first_column_is_ones() {
        let arr = IntersectionArray::from_integers(&[4, 3, 2, 1], &[1, 2, 3, 4]);
        let p = eigenmatrix(&arr, &[4.0, 2.0, 0.0, -2.0, -4.0]).unwrap();
        assert!(p.iter().all(|row| row[0] == 1.0));
        assert_eq!(p[0], vec![1.0, 4.0, 6.0, 4.0, 1.0]);
    }

    #[test]
    fn eigenmatrix_errors() {
        let arr = IntersectionArray::from_integers(&[3, 2, 1], &[1, 2, 3]);
        assert!(matches!(
            eigenmatrix(&arr, &[3.0, 1.0, 1.0, -3.0]),
            Err(Error::RepeatedEigenvalue { i: 1, j: 2, .. })
        ));
        assert!(matches!(eigenmatrix(&arr, &[2.0, 1.0, -1.0, -3.0]), Err(Error::Eigenmatrix(_))));
        assert!(matches!(eigenmatrix(&arr, &[3.0, 1.0]), Err(Error::Eigenmatrix(_))));
    }

    #[test]
    fn parameter_ranges() {
        assert!(matches!(build(Family::Bilinear { m: 2, n: 2, q: 6 }, &cfg()), Err(Error::NotPrimePower(6))));
        assert!(build(Family::NGon { n: 2 }, &cfg()).is_err());
        assert!(build(Family::Hamming { n: 0, q: 2 }, &cfg()).is_err());
        assert!(build(Family::Alternating { n: 3, q: 2 }, &cfg()).is_err());
        assert!(build(Family::Custom, &cfg()).is_err());
    }

    #[test]
    fn hamming_first_column_is_closed_form() {
        for n in 1..=7u32 {
            for q in 2..=6u32 {
                let s = build(Family::Hamming { n, q }, &cfg()).unwrap();
                for (i, row) in s.eigenmatrix().iter().enumerate() {
                    let want = n as i64 * (q as i64 - 1) - q as i64 * i as i64;
                    assert_eq!(row[1], want as f64);
                }
                assert_eq!(s.self_dual_residual(), 0.0);
            }
        }
    }

    #[test]
    fn custom_schemes_record_self_duality() {
        let arr = IntersectionArray::from_integers(&[3, 2, 1], &[1, 2, 3]);
        let s = build_custom(arr, &cfg()).unwrap();
        assert_eq!(s.family(), Family::Custom);
        assert!(s.self_dual_residual() < 1e-12);

        // Petersen graph: distance-regular but not self-dual.
        let petersen = IntersectionArray::from_integers(&[3, 2], &[1, 1]);
        let s = build_custom(petersen.clone(), &cfg()).unwrap();
        assert!(s.self_dual_residual() > 1e-3);
        assert!(matches!(eigenvalues_from_array(&petersen, &cfg()), Err(Error::NotSelfDual { .. })));
    }

    #[test]
    fn census_built_families() {
        let s = build(Family::Hermitian { n: 2, q: 2 }, &cfg()).unwrap();
        assert_eq!(s.size(), 16.0);
        assert!(s.self_dual_residual() <= 1e-8);
        let s = build(Family::Alternating { n: 4, q: 2 }, &cfg()).unwrap();
        assert_eq!(s.size(), 64.0);
        assert_eq!(s.n_classes(), 2);
    }
}
