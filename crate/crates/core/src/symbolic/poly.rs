//! Sparse multivariate polynomials with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A polynomial in a fixed, ordered list of variables. Terms are keyed by
/// exponent vectors; the map never holds a zero coefficient.
///
/// Arithmetic between polynomials over different variable lists panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

/// Result of a division that did not come out exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionError {
    pub quotient: MultiPoly,
    pub remainder: MultiPoly,
}

impl fmt::Display for DivisionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "division is not exact; remainder {}", self.remainder)
    }
}

impl std::error::Error for DivisionError {}

impl MultiPoly {
    pub fn zero(vars: &[&str]) -> Self {
        MultiPoly { vars: vars.iter().map(|v| v.to_string()).collect(), terms: BTreeMap::new() }
    }

    /// The zero polynomial in the same ring as `self`.
    pub fn zero_like(&self) -> Self {
        MultiPoly { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant_like(&self, c: impl Into<BigInt>) -> Self {
        let mut p = self.zero_like();
        p.add_term(vec![0; self.vars.len()], c.into());
        p
    }

    pub fn one_like(&self) -> Self {
        self.constant_like(1)
    }

    /// The variable `name` as a polynomial. Panics if it is not in the ring.
    pub fn var(vars: &[&str], name: &str) -> Self {
        let p = MultiPoly::zero(vars);
        p.var_like(name)
    }

    pub fn var_like(&self, name: &str) -> Self {
        let k = self.index_of(name).unwrap_or_else(|| panic!("{name} is not a ring variable"));
        let mut e = vec![0; self.vars.len()];
        e[k] = 1;
        let mut p = self.zero_like();
        p.add_term(e, BigInt::one());
        p
    }

    /// Single term `c * prod vars^exps`.
    pub fn monomial_like(&self, exps: Vec<u32>, c: impl Into<BigInt>) -> Self {
        assert_eq!(exps.len(), self.vars.len());
        let mut p = self.zero_like();
        p.add_term(exps, c.into());
        p
    }

    pub fn vars(&self) -> Vec<&str> {
        self.vars.iter().map(|s| s.as_str()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value if the polynomial has no variables in it.
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&k| k == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_ring(&self, other: &MultiPoly) {
        assert!(self.vars == other.vars, "polynomials over {:?} and {:?}", self.vars, other.vars);
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        let k = self.index_of(var).expect("ring variable");
        self.terms.keys().map(|e| e[k]).max().unwrap_or(0)
    }

    /// Leading term in lex order (first variable most significant).
    pub fn leading(&self) -> Option<(&Vec<u32>, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut p = self.zero_like();
        if c.is_zero() {
            return p;
        }
        p.terms = self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect();
        p
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = self.one_like();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Gcd of the coefficients, positive; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide every coefficient by `c`, which must divide all of them.
    pub fn div_integer(&self, c: &BigInt) -> Self {
        let mut p = self.zero_like();
        p.terms = self
            .terms
            .iter()
            .map(|(e, v)| {
                let (q, r) = v.div_rem(c);
                assert!(r.is_zero(), "{c} does not divide coefficient {v}");
                (e.clone(), q)
            })
            .collect();
        p
    }

    /// Coefficients of powers of `var`, index = power. Each coefficient is
    /// a polynomial in the same ring not involving `var`.
    pub fn coefficients_in(&self, var: &str) -> Vec<MultiPoly> {
        let k = self.index_of(var).expect("ring variable");
        let mut out = vec![self.zero_like(); self.degree_in(var) as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let power = std::mem::replace(&mut e2[k], 0);
            out[power as usize].add_term(e2, c.clone());
        }
        out
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(var: &str, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = coeffs[0].zero_like();
        let k = out.index_of(var).expect("ring variable");
        for (power, c) in coeffs.iter().enumerate() {
            for (e, v) in &c.terms {
                let mut e2 = e.clone();
                e2[k] += power as u32;
                out.add_term(e2, v.clone());
            }
        }
        out
    }

    /// `var^deg * p(1/var)`; `deg` must be at least the degree in `var`.
    pub fn reverse_in(&self, var: &str, deg: u32) -> Self {
        let k = self.index_of(var).expect("ring variable");
        assert!(deg >= self.degree_in(var));
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            e2[k] = deg - e2[k];
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Replace `var` by an integer.
    pub fn specialize(&self, var: &str, value: &BigInt) -> Self {
        let k = self.index_of(var).expect("ring variable");
        let mut out = self.zero_like();
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let power = std::mem::replace(&mut e2[k], 0);
            out.add_term(e2, c * value.pow(power));
        }
        out
    }

    /// Value at a point given in ring-variable order.
    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.vars.len());
        let mut sum = BigRational::zero();
        for (e, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term *= x.pow(k as i32);
                }
            }
            sum += term;
        }
        sum
    }

    /// Value at an integer point.
    pub fn evaluate_int(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.vars.len());
        let mut sum = BigInt::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in point.iter().zip(e) {
                if k > 0 {
                    term *= x.pow(k);
                }
            }
            sum += term;
        }
        sum
    }

    /// Exact quotient `self / divisor` in the integer polynomial ring.
    ///
    /// Uses lex-order division; when the division is not exact the partial
    /// quotient and remainder are returned as the error.
    pub fn exact_divide(&self, divisor: &MultiPoly) -> Result<MultiPoly, DivisionError> {
        self.same_ring(divisor);
        let (lead_e, lead_c) = match divisor.leading() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => panic!("division by the zero polynomial"),
        };
        let mut rest = self.clone();
        let mut quotient = self.zero_like();
        let mut remainder = self.zero_like();
        while let Some((e, c)) = rest.leading().map(|(e, c)| (e.clone(), c.clone())) {
            let divides = e.iter().zip(&lead_e).all(|(a, b)| a >= b) && (&c % &lead_c).is_zero();
            if divides {
                let qe: Vec<u32> = e.iter().zip(&lead_e).map(|(a, b)| a - b).collect();
                let qc = &c / &lead_c;
                for (de, dc) in &divisor.terms {
                    rest.add_term(de.iter().zip(&qe).map(|(a, b)| a + b).collect(), -(dc * &qc));
                }
                quotient.add_term(qe, qc);
            } else {
                rest.terms.remove(&e);
                remainder.add_term(e, c);
            }
        }
        if remainder.is_zero() {
            Ok(quotient)
        } else {
            Err(DivisionError { quotient, remainder })
        }
    }

    pub fn divides(&self, other: &MultiPoly) -> bool {
        other.exact_divide(self).is_ok()
    }

    /// Coefficient list of a polynomial in one variable, lowest degree
    /// first. Panics if another variable occurs.
    pub fn univariate_coefficients(&self, var: &str) -> Vec<BigInt> {
        self.coefficients_in(var)
            .iter()
            .map(|c| c.as_constant().unwrap_or_else(|| panic!("{c} still involves other variables")))
            .collect()
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.same_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.same_ring(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.same_ring(rhs);
        let mut out = self.zero_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        let mut out = self.clone();
        out.terms.values_mut().for_each(|c| *c = -&*c);
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$f(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl fmt::Display for MultiPoly {
    /// Terms from highest to lowest in lex order, e.g. `3*x^2*q - 2*x + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let factors: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(k, _)| **k > 0)
                .map(|(&k, v)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}]({self})", self.vars.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> (MultiPoly, MultiPoly, MultiPoly) {
        let vars = ["x", "y", "z"];
        (MultiPoly::var(&vars, "x"), MultiPoly::var(&vars, "y"), MultiPoly::var(&vars, "z"))
    }

    #[test]
    fn difference_of_squares() {
        let (x, _, _) = ring();
        let one = x.one_like();
        let p = &(&x + &one) * &(&x - &one);
        assert_eq!(p, &x.pow(2) - &one);
        assert_eq!(p.to_string(), "x^2 - 1");
    }

    #[test]
    fn exact_division() {
        let (x, _, _) = ring();
        let one = x.one_like();
        let x2p1 = &x.pow(2) + &one;
        let p = &(&x.pow(4) + &x.pow(2).scale(&BigInt::from(2))) + &one;
        assert_eq!(p.exact_divide(&x2p1).unwrap(), x2p1);
        let err = p.exact_divide(&(&x + &one)).unwrap_err();
        assert_eq!(&(&err.quotient * &(&x + &one)) + &err.remainder, p);
    }

    #[test]
    fn multivariate_division() {
        let (x, y, z) = ring();
        let a = &(&x * &y) - &z.pow(3);
        let b = &(&x + &y.scale(&BigInt::from(-3))) + &x.one_like();
        let prod = &a * &b;
        assert_eq!(prod.exact_divide(&a).unwrap(), b);
        assert_eq!(prod.exact_divide(&b).unwrap(), a);
    }

    #[test]
    fn coefficients_round_trip() {
        let (x, y, z) = ring();
        let p = &(&(&x.pow(3) * &y) - &(&x * &z)) + &y.pow(2);
        let c = p.coefficients_in("x");
        assert_eq!(c.len(), 4);
        assert_eq!(c[1], -&z);
        assert_eq!(MultiPoly::from_coefficients_in("x", &c), p);
        assert_eq!(p.degree_in("x"), 3);
        assert_eq!(p.total_degree(), 4);
    }

    #[test]
    fn reverse_and_specialize() {
        let (x, y, _) = ring();
        let p = &(&x.pow(2) * &y) + &x.constant_like(5);
        assert_eq!(p.reverse_in("x", 2), &y + &x.pow(2).scale(&BigInt::from(5)));
        assert_eq!(p.specialize("y", &BigInt::from(3)), &x.pow(2).scale(&BigInt::from(3)) + &x.constant_like(5));
        let half = BigRational::new(1.into(), 2.into());
        let v = p.evaluate(&[half.clone(), BigRational::from_integer(4.into()), BigRational::zero()]);
        assert_eq!(v, BigRational::from_integer(6.into()));
    }

    #[test]
    fn display_and_content() {
        let (x, y, _) = ring();
        let p = &(&x.scale(&BigInt::from(-6)) * &y) + &x.constant_like(9);
        assert_eq!(p.to_string(), "-6*x*y + 9");
        assert_eq!(p.content(), BigInt::from(3));
        assert_eq!(p.div_integer(&BigInt::from(3)).to_string(), "-2*x*y + 3");
    }
}
