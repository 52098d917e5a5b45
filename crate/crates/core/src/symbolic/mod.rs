//! Exact polynomial computations behind the classification: the candidate
//! quartic, the Hamming factorization and resultant, and the bilinear
//! forms identities.

pub mod bilinear;
pub mod hamming;
pub mod poly;
pub mod rational;
pub mod resultant;

use num_bigint::BigInt;

pub use bilinear::{bilinear_identity_checks, BilinearReport};
pub use hamming::{hamming_factor_check, HammingFactorReport};
pub use poly::{DivisionError, MultiPoly};
pub use rational::RationalFunction;
pub use resultant::{integer_resultant, sylvester_resultant};

use crate::error::{Error, Result};
use crate::model::ExactArray;

/// Intersection numbers and eigenvalues as rational functions over a ring
/// whose first variable is `x`.
#[derive(Debug, Clone)]
pub struct SymbolicArray {
    /// Zero polynomial of the ring, used as a template.
    pub ring: MultiPoly,
    /// `b_0 .. b_k`, `c_0 .. c_{k+1}`, `a_0 .. a_k`, `theta_0 .. theta_k`.
    pub b: Vec<RationalFunction>,
    pub c: Vec<RationalFunction>,
    pub a: Vec<RationalFunction>,
    pub theta: Vec<RationalFunction>,
    /// Candidate common factors used to keep quotients reduced.
    pub factors: Vec<MultiPoly>,
}

impl SymbolicArray {
    /// Hamming scheme parameters over `Z[x, N, q]`, indices `0..=k`.
    pub fn hamming(k: usize) -> Self {
        let ring = MultiPoly::zero(&["x", "N", "q"]);
        let n = ring.var_like("N");
        let q = ring.var_like("q");
        let int = |v: i64| ring.constant_like(v);
        let rf = RationalFunction::from_poly;
        let qm1 = &q - &int(1);
        let b = (0..=k).map(|i| rf(&(&n - &int(i as i64)) * &qm1)).collect();
        let c = (0..=k + 1).map(|i| rf(int(i as i64))).collect();
        let a = (0..=k).map(|i| rf(&(&q - &int(2)) * &int(i as i64))).collect();
        let theta = (0..=k).map(|i| rf(&(&n * &qm1) - &(&q * &int(i as i64)))).collect();
        let mut factors = vec![qm1.clone(), q.clone()];
        factors.extend((1..=k).map(|i| &n - &int(i as i64)));
        SymbolicArray { ring, b, c, a, theta, factors }
    }

    /// A concrete integer array with integer eigenvalues, over `Z[x]`.
    pub fn from_exact(arr: &ExactArray, theta: &[i64]) -> Result<Self> {
        let n = arr.b.len();
        if theta.len() != n + 1 {
            return Err(Error::Polynomial(format!("expected {} eigenvalues, got {}", n + 1, theta.len())));
        }
        let ring = MultiPoly::zero(&["x"]);
        let rf = |v: i64| RationalFunction::from_poly(ring.constant_like(v));
        let b = (0..=n).map(|i| rf(arr.b.get(i).copied().unwrap_or(0))).collect();
        let c = (0..=n + 1).map(|i| rf(if i == 0 || i > n { 0 } else { arr.c[i - 1] })).collect();
        let a = arr.a.iter().map(|&v| rf(v)).collect();
        let theta = theta.iter().map(|&v| rf(v)).collect();
        Ok(SymbolicArray { ring, b, c, a, theta, factors: Vec::new() })
    }

    pub fn x(&self) -> MultiPoly {
        self.ring.var_like("x")
    }

    fn reduce(&self, r: RationalFunction) -> RationalFunction {
        r.reduce_with(&self.factors)
    }
}

/// `t_i(x)` from `t_0 = 1`, `t_1 = x` and
/// `t_{j+1} = (t_j (x theta_j - a_j) - c_j t_{j-1}) / b_j`.
pub fn symbolic_t(i: usize, arr: &SymbolicArray) -> Result<RationalFunction> {
    Ok(symbolic_profile(i, arr)?.pop().expect("nonempty profile"))
}

/// `t_0 .. t_i`.
pub fn symbolic_profile(i: usize, arr: &SymbolicArray) -> Result<Vec<RationalFunction>> {
    let x = RationalFunction::from_poly(arr.x());
    let mut t = vec![RationalFunction::from_poly(arr.ring.one_like()), x.clone()];
    for j in 1..i {
        if j >= arr.b.len() {
            return Err(Error::Polynomial(format!("array has no b_{j}")));
        }
        let factor = x.mul(&arr.theta[j]).sub(&arr.a[j]);
        let next = t[j].mul(&factor).sub(&arr.c[j].mul(&t[j - 1])).div(&arr.b[j])?;
        t.push(arr.reduce(next));
    }
    t.truncate(i + 1);
    Ok(t)
}

/// Numerator of `t(x) t(1/x) - 1` when `t = n/d` with `d` free of `x` and
/// `deg_x n <= i`: `n(x) x^i n(1/x) - d^2 x^i`.
pub fn reciprocal_numerator(t: &RationalFunction, i: u32) -> Result<MultiPoly> {
    let (n, d) = (t.numerator(), t.denominator());
    if d.degree_in("x") != 0 {
        return Err(Error::Polynomial("denominator depends on x".into()));
    }
    if n.degree_in("x") > i {
        return Err(Error::Polynomial(format!("numerator has degree above {i}")));
    }
    let x = n.var_like("x");
    Ok(&(n * &n.reverse_in("x", i)) - &(&(d * d) * &x.pow(i)))
}

/// The quartic for `x` derived from `t_2(x) t_2(1/x) = 1` over
/// `Z[x, theta1, a1, b1]` (with `c_1 = 1`), negated so that the `x^4`
/// coefficient is `theta1`.
pub fn symbolic_quartic() -> MultiPoly {
    let ring = MultiPoly::zero(&["x", "theta1", "a1", "b1"]);
    let x = ring.var_like("x");
    let theta1 = ring.var_like("theta1");
    let a1 = ring.var_like("a1");
    let b1 = ring.var_like("b1");
    let one = ring.one_like();
    // t_2 = (x (x theta1 - a1) - 1) / b1
    let n2 = &(&x * &(&(&x * &theta1) - &a1)) - &one;
    let num = &(&n2 * &n2.reverse_in("x", 2)) - &(&(&b1 * &b1) * &x.pow(2));
    -num
}

/// The quartic written out coefficient by coefficient:
/// `theta1 x^4 + a1 (theta1 - 1) x^3 - (theta1^2 + a1^2 - b1^2 + 1) x^2 +
/// a1 (theta1 - 1) x + theta1`.
pub fn reference_quartic() -> MultiPoly {
    let ring = MultiPoly::zero(&["x", "theta1", "a1", "b1"]);
    let x = ring.var_like("x");
    let t = ring.var_like("theta1");
    let a = ring.var_like("a1");
    let b = ring.var_like("b1");
    let one = ring.one_like();
    let a3 = &a * &(&t - &one);
    let a2 = -(&(&(&(&t * &t) + &(&a * &a)) - &(&b * &b)) + &one);
    let parts = [t.clone(), a3.clone(), a2, a3, t];
    parts.iter().enumerate().fold(ring.clone(), |acc, (k, c)| &acc + &(c * &x.pow(4 - k as u32)))
}

/// Exact quartic coefficients `[A4, A3, A2, A1, A0]` for an integer array
/// with integer `theta_1`, by specializing [`symbolic_quartic`].
pub fn quartic_for(arr: &ExactArray, theta1: i64) -> Result<Vec<BigInt>> {
    if arr.b.len() < 2 {
        return Err(Error::Polynomial("the quartic needs at least 2 classes".into()));
    }
    let q = symbolic_quartic()
        .specialize("theta1", &BigInt::from(theta1))
        .specialize("a1", &BigInt::from(arr.a[1]))
        .specialize("b1", &BigInt::from(arr.b[1]));
    let x = q.var_like("x");
    let mut coeffs = Vec::with_capacity(5);
    for k in (0..=4).rev() {
        let c = q.coefficients_in("x").get(k).cloned().unwrap_or_else(|| x.zero_like());
        coeffs.push(c.as_constant().ok_or_else(|| Error::Internal("quartic coefficient is not constant".into()))?);
    }
    Ok(coeffs)
}
