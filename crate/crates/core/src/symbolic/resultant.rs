//! Sylvester resultants by fraction-free elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::MultiPoly;
use crate::error::{Error, Result};

/// Integral domain operations used by Bareiss elimination.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / other`, known to be exact.
    fn div_exact(&self, other: &Self) -> Self;
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        let (q, r) = self.div_rem(o);
        debug_assert!(Zero::is_zero(&r));
        q
    }
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero_like(self)
    }
    fn one_like(&self) -> Self {
        MultiPoly::one_like(self)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, o: &Self) -> Self {
        self.exact_divide(o).expect("Bareiss division is exact")
    }
}

/// Determinant by Bareiss elimination; every division is exact.
pub fn bareiss_determinant<R: Ring>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "square matrix required");
    assert!(n > 0, "empty matrix");
    let mut sign_flip = false;
    let mut prev = m[0][0].one_like();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return m[0][0].zero_like(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

/// Sylvester matrix of `p` (degree m) and `q` (degree n), highest
/// coefficients first: n shifted rows of `p` followed by m rows of `q`.
pub fn sylvester_matrix<R: Ring>(p: &[R], q: &[R]) -> Vec<Vec<R>> {
    let (m, n) = (p.len() - 1, q.len() - 1);
    let zero = p[0].zero_like();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![zero.clone(); size];
        row[shift..shift + m + 1].clone_from_slice(p);
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![zero.clone(); size];
        row[shift..shift + n + 1].clone_from_slice(q);
        rows.push(row);
    }
    rows
}

/// Resultant of two coefficient lists (highest degree first, nonzero
/// leading coefficients). With this convention `res(x - a, x - b) = a - b`.
pub fn resultant_of<R: Ring>(p: &[R], q: &[R]) -> R {
    let (m, n) = (p.len() - 1, q.len() - 1);
    if m == 0 && n == 0 {
        return p[0].one_like();
    }
    if m == 0 {
        return power(&p[0], n);
    }
    if n == 0 {
        return power(&q[0], m);
    }
    bareiss_determinant(sylvester_matrix(p, q))
}

fn power<R: Ring>(x: &R, k: usize) -> R {
    (0..k).fold(x.one_like(), |acc, _| acc.mul(x))
}

/// Resultant of `p` and `q` with respect to `var`, as a polynomial in the
/// remaining variables.
pub fn sylvester_resultant(p: &MultiPoly, q: &MultiPoly, var: &str) -> Result<MultiPoly> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::Polynomial("resultant of the zero polynomial".into()));
    }
    let mut pc = p.coefficients_in(var);
    let mut qc = q.coefficients_in(var);
    pc.reverse();
    qc.reverse();
    Ok(resultant_of(&pc, &qc))
}

/// Resultant of two univariate integer polynomials given lowest degree
/// first.
pub fn integer_resultant(p: &[BigInt], q: &[BigInt]) -> Result<BigInt> {
    let trim = |v: &[BigInt]| -> Vec<BigInt> {
        let mut v = v.to_vec();
        while v.len() > 1 && Zero::is_zero(v.last().unwrap()) {
            v.pop();
        }
        v.reverse();
        v
    };
    let (p, q) = (trim(p), trim(q));
    if (p.len() == 1 && Zero::is_zero(&p[0])) || (q.len() == 1 && Zero::is_zero(&q[0])) {
        return Err(Error::Polynomial("resultant of the zero polynomial".into()));
    }
    Ok(resultant_of(&p, &q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn squares_example() {
        // x^2 - 1 and x^2 - 4
        assert_eq!(integer_resultant(&ints(&[-1, 0, 1]), &ints(&[-4, 0, 1])).unwrap(), BigInt::from(9));
    }

    #[test]
    fn linear_convention() {
        let vars = ["x", "a", "b"];
        let x = MultiPoly::var(&vars, "x");
        let a = MultiPoly::var(&vars, "a");
        let b = MultiPoly::var(&vars, "b");
        let r = sylvester_resultant(&(&x - &a), &(&x - &b), "x").unwrap();
        assert_eq!(r, &a - &b);
    }

    #[test]
    fn zero_input_is_an_error() {
        let x = MultiPoly::var(&["x"], "x");
        assert!(sylvester_resultant(&x.zero_like(), &x, "x").is_err());
    }

    #[test]
    fn integer_determinant() {
        let m = vec![ints(&[2, 0, 1]), ints(&[1, 3, 2]), ints(&[1, 1, 2])];
        assert_eq!(bareiss_determinant(m), BigInt::from(6));
        let m = vec![ints(&[0, 1]), ints(&[1, 0])];
        assert_eq!(bareiss_determinant(m), BigInt::from(-1));
    }

    #[test]
    fn constant_operands() {
        assert_eq!(integer_resultant(&ints(&[3]), &ints(&[1, 0, 1])).unwrap(), BigInt::from(9));
    }
}
