//! Shared domain types: intersection arrays, scheme instances and solver
//! tolerances.
//!
//! Index conventions follow the usual distance-regular notation: an
//! `N`-class array stores `b_0..b_{N-1}`, `c_1..c_N` and `a_0..a_N`, with
//! the implicit boundary values `c_0 = 0` and `b_N = 0`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative slack used when checking `a_i + b_i + c_i = b_0` on real-valued
/// arrays. Integer arrays are checked exactly.
const REAL_ARRAY_SLACK: f64 = 1e-9;

/// Integer shadow of an intersection array, present whenever every
/// parameter is integral.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactArray {
    pub b: Vec<i64>,
    pub c: Vec<i64>,
    pub a: Vec<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ArraySpec {
    b: Vec<f64>,
    c: Vec<f64>,
    #[serde(default)]
    a: Option<Vec<f64>>,
}

/// Tridiagonal parameters `{b_i}, {c_i}, {a_i}` of a P-polynomial scheme.
///
/// Construction never fails; use [`validate_array`] to list violations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "ArraySpec")]
pub struct IntersectionArray {
    n_classes: usize,
    b: Vec<f64>,
    c: Vec<f64>,
    a: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<ExactArray>,
}

impl From<ArraySpec> for IntersectionArray {
    fn from(spec: ArraySpec) -> Self {
        IntersectionArray::from_parts(spec.b, spec.c, spec.a)
    }
}

fn as_integer(x: f64) -> Option<i64> {
    (x.is_finite() && x.fract() == 0.0 && x.abs() < 9.0e15).then_some(x as i64)
}

impl IntersectionArray {
    /// Integer array; `a_i = b_0 - b_i - c_i` is derived.
    pub fn from_integers(b: &[i64], c: &[i64]) -> Self {
        let n = b.len();
        let b0 = b.first().copied().unwrap_or(0);
        let a = (0..=n)
            .map(|i| {
                let bi = if i < n { b[i] } else { 0 };
                let ci = if i == 0 { 0 } else { c.get(i - 1).copied().unwrap_or(0) };
                b0 - bi - ci
            })
            .collect::<Vec<_>>();
        Self::from_exact(ExactArray { b: b.to_vec(), c: c.to_vec(), a })
    }

    pub fn from_exact(exact: ExactArray) -> Self {
        let to_f = |v: &[i64]| v.iter().map(|&x| x as f64).collect::<Vec<_>>();
        IntersectionArray {
            n_classes: exact.b.len(),
            b: to_f(&exact.b),
            c: to_f(&exact.c),
            a: to_f(&exact.a),
            exact: Some(exact),
        }
    }

    /// Real-valued array. When `a` is omitted it is derived from the row-sum
    /// identity. The exact shadow is attached if every entry is integral.
    pub fn from_parts(b: Vec<f64>, c: Vec<f64>, a: Option<Vec<f64>>) -> Self {
        let n = b.len();
        let a = a.unwrap_or_else(|| {
            let b0 = b.first().copied().unwrap_or(0.0);
            (0..=n)
                .map(|i| {
                    let bi = if i < n { b[i] } else { 0.0 };
                    let ci = if i == 0 { 0.0 } else { c.get(i - 1).copied().unwrap_or(0.0) };
                    b0 - bi - ci
                })
                .collect()
        });
        let ints = |v: &[f64]| v.iter().map(|&x| as_integer(x)).collect::<Option<Vec<_>>>();
        let exact = match (ints(&b), ints(&c), ints(&a)) {
            (Some(b), Some(c), Some(a)) => Some(ExactArray { b, c, a }),
            _ => None,
        };
        IntersectionArray { n_classes: n, b, c, a, exact }
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    /// `b_i` for `0 <= i <= N` (zero at `i = N`).
    pub fn b(&self, i: usize) -> f64 {
        self.b.get(i).copied().unwrap_or(0.0)
    }

    /// `c_i` for `0 <= i <= N` (zero at `i = 0`).
    pub fn c(&self, i: usize) -> f64 {
        if i == 0 {
            0.0
        } else {
            self.c.get(i - 1).copied().unwrap_or(0.0)
        }
    }

    pub fn a(&self, i: usize) -> f64 {
        self.a.get(i).copied().unwrap_or(0.0)
    }

    pub fn b_values(&self) -> &[f64] {
        &self.b
    }

    pub fn c_values(&self) -> &[f64] {
        &self.c
    }

    pub fn a_values(&self) -> &[f64] {
        &self.a
    }

    pub fn exact(&self) -> Option<&ExactArray> {
        self.exact.as_ref()
    }

    /// Exact valencies `v_j = prod b_i / c_{i+1}` for integer arrays.
    pub fn exact_valencies(&self) -> Option<Vec<BigRational>> {
        let ex = self.exact.as_ref()?;
        if ex.c.iter().any(|&c| c == 0) {
            return None;
        }
        let mut v = vec![BigRational::one()];
        for i in 0..self.n_classes {
            let next = v[i].clone() * BigRational::new(BigInt::from(ex.b[i]), BigInt::from(ex.c[i]));
            v.push(next);
        }
        Some(v)
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[f64]| v.iter().map(|x| format!("{x}")).collect::<Vec<_>>().join(",");
        write!(f, "{{b=[{}], c=[{}], a=[{}]}}", join(&self.b), join(&self.c), join(&self.a))
    }
}

/// Every invariant violation of `arr`; empty iff the array is a valid
/// P-polynomial intersection array.
pub fn validate_array(arr: &IntersectionArray) -> Vec<String> {
    let mut out = Vec::new();
    let n = arr.n_classes;
    if n == 0 {
        out.push("array has no classes (b is empty)".to_string());
        return out;
    }
    if arr.c.len() != n {
        out.push(format!("c has {} entries, expected N = {n}", arr.c.len()));
    }
    if arr.a.len() != n + 1 {
        out.push(format!("a has {} entries, expected N+1 = {}", arr.a.len(), n + 1));
    }
    if !out.is_empty() {
        return out;
    }
    for (name, vals) in [("b", &arr.b), ("c", &arr.c), ("a", &arr.a)] {
        if vals.iter().any(|x| !x.is_finite()) {
            out.push(format!("{name} contains a non-finite entry"));
        }
    }
    if !out.is_empty() {
        return out;
    }
    for i in 0..n {
        if arr.b[i] <= 0.0 {
            out.push(format!("b_{i} = {} is not positive", arr.b[i]));
        }
        if arr.c[i] <= 0.0 {
            out.push(format!("c_{} = {} is not positive", i + 1, arr.c[i]));
        }
    }
    if arr.a[0] != 0.0 {
        out.push(format!("a_0 = {} is not 0", arr.a[0]));
    }
    for (i, &ai) in arr.a.iter().enumerate() {
        if ai < 0.0 {
            out.push(format!("a_{i} = {ai} is negative"));
        }
    }
    // p^1_{1,0} counts the single point at distance 0.
    if arr.c[0] != 1.0 {
        out.push(format!("c_1 = {} is not 1", arr.c[0]));
    }
    let b0 = arr.b[0];
    for i in 0..=n {
        let sum = arr.a(i) + arr.b(i) + arr.c(i);
        let ok = match &arr.exact {
            Some(ex) => {
                let bi = if i < n { ex.b[i] } else { 0 };
                let ci = if i == 0 { 0 } else { ex.c[i - 1] };
                ex.a[i] + bi + ci == ex.b[0]
            }
            None => (sum - b0).abs() <= REAL_ARRAY_SLACK * b0.abs().max(1.0),
        };
        if !ok {
            out.push(format!("a_{i}+b_{i}+c_{i} = {sum} \u{2260} b_0 = {b0}"));
        }
    }
    out
}

/// Valencies `v_0..v_N` of a valid array.
pub fn valencies(arr: &IntersectionArray) -> Result<Vec<f64>> {
    let violations = validate_array(arr);
    if !violations.is_empty() {
        return Err(Error::InvalidArray(violations));
    }
    Ok(valencies_unchecked(arr))
}

pub(crate) fn valencies_unchecked(arr: &IntersectionArray) -> Vec<f64> {
    if let Some(exact) = arr.exact_valencies() {
        return exact.iter().map(ratio_to_f64).collect();
    }
    let mut v = vec![1.0];
    for i in 0..arr.n_classes {
        v.push(v[i] * arr.b(i) / arr.c(i + 1));
    }
    v
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Which scheme a [`SchemeInstance`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Family {
    /// Words of length `n` over a `q`-letter alphabet.
    Hamming {
        #[serde(rename = "N")]
        n: u32,
        q: u32,
    },
    /// `m x n` matrices over GF(q), related by rank of the difference.
    Bilinear {
        #[serde(rename = "M")]
        m: u32,
        #[serde(rename = "N")]
        n: u32,
        q: u32,
    },
    /// `n x n` alternating matrices over GF(q); class is half the rank.
    Alternating { n: u32, q: u32 },
    /// `n x n` Hermitian matrices over GF(q^2).
    Hermitian { n: u32, q: u32 },
    /// The cycle `Z_n` under circular distance.
    #[serde(rename = "ngon")]
    NGon { n: u32 },
    Custom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Hamming { n, q } => write!(f, "Hamming({n},{q})"),
            Family::Bilinear { m, n, q } => write!(f, "Bilinear({m},{n},{q})"),
            Family::Alternating { n, q } => write!(f, "Alternating({n},{q})"),
            Family::Hermitian { n, q } => write!(f, "Hermitian({n},{q})"),
            Family::NGon { n } => write!(f, "NGon({n})"),
            Family::Custom => write!(f, "Custom"),
        }
    }
}

/// Tolerances shared by every numeric operation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Absolute bound on entries of `(PT)^3 - I`.
    pub residual_tol: f64,
    /// Distance below which two roots (or two T vectors) are one.
    pub root_dedup_tol: f64,
    /// Bound used by the reciprocal and terminal filters.
    pub filter_tol: f64,
    /// Bound on `|P^2 - |X| I|_inf / |X|`.
    pub self_dual_tol: f64,
    pub max_solutions_expected: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            residual_tol: 1e-10,
            root_dedup_tol: 1e-8,
            filter_tol: 1e-8,
            self_dual_tol: 1e-8,
            max_solutions_expected: 12,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let tols = [self.residual_tol, self.root_dedup_tol, self.filter_tol, self.self_dual_tol];
        if tols.iter().all(|t| t.is_finite() && *t > 0.0) {
            Ok(())
        } else {
            Err(Error::InvalidParameters("all tolerances must be positive".into()))
        }
    }
}

/// A concrete scheme: array, eigenvalues and eigenmatrix.
///
/// Rows of `eigenmatrix` are indexed by eigenvalue, columns by class, so
/// `P[i][j] = P_j(i)`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemeInstance {
    family: Family,
    array: IntersectionArray,
    size: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    size_exact: Option<u64>,
    eigenvalues: Vec<f64>,
    eigenmatrix: Vec<Vec<f64>>,
    self_dual_residual: f64,
}

impl SchemeInstance {
    pub(crate) fn assemble(
        family: Family,
        array: IntersectionArray,
        size_exact: Option<u64>,
        eigenvalues: Vec<f64>,
        eigenmatrix: Vec<Vec<f64>>,
    ) -> Self {
        let size = match size_exact {
            Some(s) => s as f64,
            None => valencies_unchecked(&array).iter().sum(),
        };
        let self_dual_residual = self_dual_residual(&eigenmatrix, size);
        SchemeInstance { family, array, size, size_exact, eigenvalues, eigenmatrix, self_dual_residual }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn array(&self) -> &IntersectionArray {
        &self.array
    }

    pub fn n_classes(&self) -> usize {
        self.array.n_classes()
    }

    /// `|X|`.
    pub fn size(&self) -> f64 {
        self.size
    }

    pub fn size_exact(&self) -> Option<u64> {
        self.size_exact
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenmatrix(&self) -> &[Vec<f64>] {
        &self.eigenmatrix
    }

    /// `|P^2 - |X| I|_inf / |X|`.
    pub fn self_dual_residual(&self) -> f64 {
        self.self_dual_residual
    }

    pub fn valencies(&self) -> Vec<f64> {
        valencies_unchecked(&self.array)
    }
}

pub(crate) fn self_dual_residual(p: &[Vec<f64>], size: f64) -> f64 {
    let n = p.len();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for k in 0..n {
                s += p[i][k] * p[k][j];
            }
            if i == j {
                s -= size;
            }
            worst = worst.max(s.abs());
        }
    }
    worst / size
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_3_2_is_valid() {
        let arr = IntersectionArray::from_integers(&[3, 2, 1], &[1, 2, 3]);
        assert_eq!(arr.a_values(), &[0.0, 0.0, 0.0, 0.0]);
        assert!(validate_array(&arr).is_empty());
        assert_eq!(valencies(&arr).unwrap(), vec![1.0, 3.0, 3.0, 1.0]);
    }

    #[test]
    fn bilinear_3_3_2_is_valid() {
        let arr = IntersectionArray::from_integers(&[49, 36, 16], &[1, 6, 28]);
        assert_eq!(arr.exact().unwrap().a, vec![0, 12, 27, 21]);
        assert!(validate_array(&arr).is_empty());
        let v = valencies(&arr).unwrap();
        assert_eq!(v, vec![1.0, 49.0, 294.0, 168.0]);
        assert_eq!(v.iter().sum::<f64>(), 512.0);
    }

    #[test]
    fn row_sum_violation_is_reported() {
        let arr = IntersectionArray::from_parts(vec![2.0], vec![1.0], Some(vec![0.0, 2.0]));
        assert_eq!(validate_array(&arr), vec!["a_1+b_1+c_1 = 3 \u{2260} b_0 = 2".to_string()]);
        assert!(matches!(valencies(&arr), Err(Error::InvalidArray(_))));
    }

    #[test]
    fn consistent_small_array_passes() {
        let arr = IntersectionArray::from_parts(vec![2.0], vec![1.0], Some(vec![0.0, 1.0]));
        assert!(validate_array(&arr).is_empty());
    }

    #[test]
    fn structural_violations() {
        let empty = IntersectionArray::from_parts(vec![], vec![], None);
        assert_eq!(validate_array(&empty).len(), 1);

        let short = IntersectionArray::from_parts(vec![3.0, 2.0], vec![1.0], None);
        assert!(validate_array(&short)[0].contains("c has 1 entries"));

        let bad = IntersectionArray::from_parts(vec![3.0, 0.0], vec![1.0, 2.0], None);
        let v = validate_array(&bad);
        assert!(v.iter().any(|s| s.contains("b_1 = 0 is not positive")), "{v:?}");

        let c1 = IntersectionArray::from_parts(vec![3.0, 2.0], vec![2.0, 3.0], None);
        assert!(validate_array(&c1).iter().any(|s| s.contains("c_1 = 2 is not 1")));
    }

    #[test]
    fn real_array_has_no_exact_shadow() {
        let arr = IntersectionArray::from_parts(vec![2.5, 1.0], vec![1.0, 1.5], None);
        assert!(arr.exact().is_none());
        assert!(validate_array(&arr).is_empty());
        let v = valencies(&arr).unwrap();
        assert_eq!(v[0], 1.0);
        assert!((v[2] - 2.5 / 1.5).abs() < 1e-15);
    }

    #[test]
    fn array_json_derives_missing_a() {
        let arr: IntersectionArray = serde_json::from_str(r#"{"b":[2,1,1],"c":[1,1,2]}"#).unwrap();
        assert_eq!(arr.a_values(), &[0.0, 0.0, 0.0, 0.0]);
        assert!(arr.exact().is_some());
        let back: IntersectionArray = serde_json::from_str(&serde_json::to_string(&arr).unwrap()).unwrap();
        assert_eq!(back, arr);
    }

    #[test]
    fn family_json_shape() {
        let f = Family::Bilinear { m: 3, n: 4, q: 2 };
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"kind":"bilinear","M":3,"N":4,"q":2}"#);
        assert_eq!(serde_json::from_str::<Family>(&s).unwrap(), f);
        assert_eq!(serde_json::to_string(&Family::NGon { n: 6 }).unwrap(), r#"{"kind":"ngon","n":6}"#);
    }
}
