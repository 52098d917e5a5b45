//! Quotients of integer polynomials.
//!
//! There is no general polynomial gcd here. Common factors are removed
//! against an explicit list of candidate factors, plus integer content.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::MultiPoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Polynomial("zero denominator".into()));
        }
        let mut r = RationalFunction { num, den };
        r.normalize();
        Ok(r)
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = p.one_like();
        RationalFunction { num: p, den }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Divide out the common integer content and make the leading
    /// coefficient of the denominator positive.
    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den = self.den.one_like();
            return;
        }
        let g = self.num.content().gcd(&self.den.content());
        let negative = self.den.leading().map(|(_, c)| c.is_negative()).unwrap_or(false);
        let g = if negative { -g } else { g };
        if g != BigInt::from(1) {
            self.num = self.num.div_integer(&g);
            self.den = self.den.div_integer(&g);
        }
    }

    /// Cancel every factor from `factors` that divides both numerator and
    /// denominator, as often as it does.
    pub fn reduce_with(mut self, factors: &[MultiPoly]) -> Self {
        for f in factors {
            loop {
                let (Ok(n), Ok(d)) = (self.num.exact_divide(f), self.den.exact_divide(f)) else {
                    break;
                };
                self.num = n;
                self.den = d;
            }
        }
        self.normalize();
        self
    }

    pub fn add(&self, o: &Self) -> Self {
        let (num, den) = if self.den == o.den {
            (&self.num + &o.num, self.den.clone())
        } else {
            (&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
        };
        RationalFunction::new(num, den).expect("nonzero denominators")
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        RationalFunction::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::Polynomial("division by the zero rational function".into()));
        }
        RationalFunction::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> Self {
        RationalFunction::new(&self.num * p, self.den.clone()).expect("nonzero denominator")
    }

    /// Value at a point, or `None` where the denominator vanishes.
    pub fn evaluate(&self, point: &[BigRational]) -> Option<BigRational> {
        let d = self.den.evaluate(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.evaluate(point) / d)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c == BigInt::from(1)) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}
