//! Identities behind the nonexistence proof for bilinear forms schemes.
//!
//! The two equations of `P T` at rows 1 and 2, cleared of denominators and
//! of the factor `(d-1)(e-1)`, give polynomials `A` and `B` in
//! `Z[x, d, e, q]`. Their resultant in `d` and the remainders of `A` modulo
//! the factors of that resultant are checked by exact evaluation at
//! pseudo-random integer points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::poly::MultiPoly;
use super::rational::RationalFunction;
use super::resultant::integer_resultant;
use super::{symbolic_profile, SymbolicArray};
use crate::error::{Error, Result};

/// Number of evaluation points per identity.
pub const POINTS: usize = 24;
const LOW: u64 = 1_000_000;
const HIGH: u64 = 10_000_000;

#[derive(Debug, Clone, Serialize)]
pub struct Witness {
    pub point: Vec<(String, String)>,
    pub computed: String,
    pub expected: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub points: usize,
    pub matched: usize,
    /// `+1` or `-1` when the two sides agree up to that overall sign.
    pub sign: i32,
    /// Bound on the total degree of the difference of the two sides.
    pub degree_bound: u32,
    pub witness: Option<Witness>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BilinearReport {
    pub seed: u64,
    /// Total degrees of `A` and `B`.
    pub degree_a: u32,
    pub degree_b: u32,
    pub checks: Vec<IdentityCheck>,
    /// Spot values: `(label, value)`.
    pub examples: Vec<(String, String)>,
    pub passed: bool,
}

impl BilinearReport {
    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Bilinear forms parameters over `Z[x, d, e, q]` where `d = q^m` and
/// `e = q^n`, indices up to 3.
pub fn bilinear_array() -> SymbolicArray {
    let ring = MultiPoly::zero(&["x", "d", "e", "q"]);
    let d = ring.var_like("d");
    let e = ring.var_like("e");
    let q = ring.var_like("q");
    let one = ring.one_like();
    let qm1 = &q - &one;
    let rf = |num: MultiPoly, den: &MultiPoly| RationalFunction::new(num, den.clone()).expect("nonzero");
    let b: Vec<RationalFunction> = (0..=3u32)
        .map(|i| {
            let qi = q.pow(i);
            rf(&(&d - &qi) * &(&e - &qi), &qm1)
        })
        .collect();
    let c: Vec<RationalFunction> = (0..=4u32)
        .map(|i| match i {
            0 => RationalFunction::from_poly(ring.clone()),
            _ => rf(&q.pow(i - 1) * &(&q.pow(i) - &one), &qm1),
        })
        .collect();
    let a = (0..=3).map(|i| b[0].sub(&b[i]).sub(&c[i])).collect();
    let theta = (0..=3u32)
        .map(|i| {
            let qi = q.pow(i);
            let num = &(&(&(&d * &e) + &qi) - &(&d * &qi)) - &(&e * &qi);
            rf(num, &(&qm1 * &qi))
        })
        .collect();
    let factors = vec![
        q.clone(),
        qm1,
        &q + &one,
        &(&q.pow(2) + &q) + &one,
        &d - &one,
        &e - &one,
        &d - &q,
        &e - &q,
        &d - &q.pow(2),
        &e - &q.pow(2),
    ];
    SymbolicArray { ring, b, c, a, theta, factors }
}

/// The polynomials `A` and `B` (rows 1 and 2 of `P T` against the
/// conjugated equation), each divided by `(d-1)(e-1)` and made primitive.
pub fn bilinear_equations() -> Result<(MultiPoly, MultiPoly)> {
    let mut arr = bilinear_array();
    let t = symbolic_profile(3, &arr)?;
    arr.factors.push(arr.x());
    for ti in &t[2..] {
        arr.factors.push(ti.numerator().clone());
    }
    let x = RationalFunction::from_poly(arr.x());
    let mut v = vec![RationalFunction::from_poly(arr.ring.one_like())];
    for i in 0..3 {
        let next = v[i].mul(&arr.b[i]).div(&arr.c[i + 1])?;
        v.push(next.reduce_with(&arr.factors));
    }
    let one_minus = {
        let one = arr.ring.one_like();
        &(&arr.ring.var_like("d") - &one) * &(&arr.ring.var_like("e") - &one)
    };
    let mut out = Vec::new();
    for i in 1..=2 {
        let term = |coef: &RationalFunction, j: usize| -> Result<RationalFunction> {
            Ok(coef.mul(&v[j]).div(&t[j])?.reduce_with(&arr.factors))
        };
        let lhs = term(&arr.theta[i], i)?.div(&x)?.reduce_with(&arr.factors);
        let rhs = term(&arr.b[i - 1], i - 1)?
            .add(&term(&arr.a[i], i)?)
            .reduce_with(&arr.factors)
            .add(&term(&arr.c[i + 1], i + 1)?)
            .reduce_with(&arr.factors);
        let e = lhs.sub(&rhs).reduce_with(&arr.factors);
        let num = e
            .numerator()
            .exact_divide(&one_minus)
            .map_err(|err| Error::Polynomial(format!("row {i} is not divisible by (d-1)(e-1): {err}")))?;
        let num = num.div_integer(&num.content());
        let negative = num.leading().map(|(_, c)| c.is_negative()).unwrap_or(false);
        out.push(if negative { -num } else { num });
    }
    let b = out.pop().unwrap();
    let a = out.pop().unwrap();
    Ok((a, b))
}

fn r(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn ri(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Remainder of `p` modulo `m` over the rationals, lowest degree first.
pub fn remainder(p: &[BigRational], m: &[BigRational]) -> Vec<BigRational> {
    let m = trim(m.to_vec());
    assert!(!m.is_empty(), "division by zero polynomial");
    let mut p = trim(p.to_vec());
    let lead = m.last().unwrap().clone();
    while p.len() >= m.len() {
        let shift = p.len() - m.len();
        let f = p.last().unwrap() / &lead;
        for (k, c) in m.iter().enumerate() {
            p[shift + k] -= &f * c;
        }
        p.pop();
        p = trim(p);
    }
    p
}

/// `a` is `+b`, `-b`, or neither (0).
fn relate(a: &[BigRational], b: &[BigRational]) -> i32 {
    let (a, b) = (trim(a.to_vec()), trim(b.to_vec()));
    if a == b {
        1
    } else if a == b.iter().map(|c| -c).collect::<Vec<_>>() {
        -1
    } else {
        0
    }
}

fn show(p: &[BigRational]) -> String {
    let parts: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

struct Tally {
    check: IdentityCheck,
}

impl Tally {
    fn new(name: &str, degree_bound: u32) -> Self {
        Tally {
            check: IdentityCheck {
                name: name.into(),
                points: 0,
                matched: 0,
                sign: 0,
                degree_bound,
                witness: None,
                passed: false,
            },
        }
    }

    /// Record one comparison; `up_to_sign` allows a global sign.
    fn record(&mut self, point: &[(&str, &BigInt)], computed: &[BigRational], expected: &[BigRational], up_to_sign: bool) {
        self.check.points += 1;
        let s = relate(computed, expected);
        let ok = match (s, up_to_sign) {
            (0, _) => false,
            (1, false) => true,
            (_, false) => false,
            (s, true) => self.check.sign == 0 || self.check.sign == s,
        };
        if ok {
            self.check.matched += 1;
            if self.check.sign == 0 {
                self.check.sign = s;
            }
        } else if self.check.witness.is_none() {
            self.check.witness = Some(Witness {
                point: point.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
                computed: show(computed),
                expected: show(expected),
            });
        }
    }

    fn finish(mut self) -> IdentityCheck {
        self.check.passed = self.check.points > 0 && self.check.matched == self.check.points;
        self.check
    }
}

fn sample(rng: &mut ChaCha8Rng) -> BigInt {
    BigInt::from(rng.random_range(LOW..HIGH))
}

/// The closed-form factors of the resultant of `A` and `B` in `d`, evaluated.
pub fn reference_resultant(x: &BigRational, e: &BigRational, q: &BigRational) -> BigRational {
    let one = r(1);
    let two = r(2);
    let f1 = &one - &two * x + e * x + x * x;
    let quad = quadratic(e, q, x);
    let cubic = -q - x - q * q * x + q.pow(4) * x - q * x * x;
    (q - &one).pow(5) * q.pow(12) * (e - q).pow(6) * (e - q * q).pow(4) * (x - &one).pow(4) * x.pow(3) * f1.pow(6) * quad.pow(2) * cubic
}

/// `-1 + e - q + (2 - 2e + e^2 + 2q - 2eq) x + (e - q - 1) x^2`.
pub fn quadratic(e: &BigRational, q: &BigRational, x: &BigRational) -> BigRational {
    let s = e - q - r(1);
    &s + linear_coefficient(e, q) * x + &s * x * x
}

fn linear_coefficient(e: &BigRational, q: &BigRational) -> BigRational {
    r(2) - r(2) * e + e * e + r(2) * q - r(2) * e * q
}

/// `de(-de - deq + 2dq^2 + 2eq^2 - 2q^3)`.
pub fn remainder_at_one(d: &BigRational, e: &BigRational, q: &BigRational) -> BigRational {
    let two = r(2);
    d * e * (-(d * e) - d * e * q + &two * d * q * q + &two * e * q * q - two * q.pow(3))
}

fn point_rats(v: &[&BigInt]) -> Vec<BigRational> {
    v.iter().map(|b| ri(b)).collect()
}

/// Univariate coefficients of `p` after substituting every variable but
/// `keep`, lowest degree first.
fn univariate(p: &MultiPoly, keep: &str, values: &[(&str, &BigInt)]) -> Vec<BigInt> {
    let mut s = p.clone();
    for (name, v) in values {
        s = s.specialize(name, v);
    }
    s.univariate_coefficients(keep)
}

pub fn bilinear_identity_checks(seed: u64) -> Result<BilinearReport> {
    let (a, b) = bilinear_equations()?;
    let (deg_a, deg_b) = (a.total_degree(), b.total_degree());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let one = r(1);

    // Degree of the closed-form resultant in (x, e, q).
    let reference_degree = 5 + 12 + 6 + 8 + 4 + 3 + 12 + 6 + 5;
    let mut res = Tally::new("resultant in d", (deg_a * deg_b).max(reference_degree));
    while res.check.points < POINTS {
        let (x, e, q) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
        let vals = [("x", &x), ("e", &e), ("q", &q)];
        let pa = univariate(&a, "d", &vals);
        let pb = univariate(&b, "d", &vals);
        if pa.last().is_none_or(|c| c.is_zero()) || pb.last().is_none_or(|c| c.is_zero()) {
            continue;
        }
        let computed = ri(&integer_resultant(&pa, &pb)?);
        let expected = reference_resultant(&ri(&x), &ri(&e), &ri(&q));
        res.record(&vals, &[computed], &[expected], true);
    }

    let mut at_one = Tally::new("resultant vanishes at x = 1", deg_a * deg_b);
    let mut rem1 = Tally::new("A mod (x - 1)", deg_a + 8);
    let mut rem2 = Tally::new("A mod (1 - 2x + ex + x^2)", deg_a + 9);
    let mut rem3 = Tally::new("A mod (-q - x - q^2 x + q^4 x - q x^2)", deg_a + 40);
    let mut rem4 = Tally::new("A mod (-1 + e - q + (2 - 2e + e^2 + 2q - 2eq) x + (e - q - 1) x^2)", deg_a + 40);
    for _ in 0..POINTS {
        let (d, e, q) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
        let vals = [("d", &d), ("e", &e), ("q", &q)];
        let rat = point_rats(&[&d, &e, &q]);
        let (dr, er, qr) = (&rat[0], &rat[1], &rat[2]);
        let pa: Vec<BigRational> = univariate(&a, "x", &vals).iter().map(ri).collect();

        let m = [-one.clone(), one.clone()];
        rem1.record(&vals, &remainder(&pa, &m), &[remainder_at_one(dr, er, qr)], true);

        let m = [one.clone(), er - r(2), one.clone()];
        let k = er * (dr - qr).pow(2) * (er - qr * qr);
        rem2.record(&vals, &remainder(&pa, &m), &[k.clone(), k * (er - r(2))], true);

        let m = [-qr.clone(), qr.pow(4) - qr * qr - &one, -qr.clone()];
        let (d_, e_, q_) = (dr, er, qr);
        let f1 = -&one - r(2) * q_ + d_ * q_ + e_ * q_ - d_ * e_ * q_ - r(2) * q_ * q_ + d_ * q_ * q_ + e_ * q_ * q_
            - d_ * e_ * q_ * q_
            - q_.pow(3)
            + d_ * q_.pow(3)
            + e_ * q_.pow(3);
        let f2 = -(d_ * e_) - q_ + d_ * q_ + e_ * q_ - r(2) * q_ * q_ + d_ * q_ * q_ + e_ * q_ * q_ - d_ * q_.pow(3) - e_ * q_.pow(3)
            + r(2) * q_.pow(4)
            + q_.pow(5)
            - q_.pow(6);
        let k = f1 * f2 / (q_ * q_);
        rem3.record(&vals, &remainder(&pa, &m), &[&k * q_, k * (&one + q_ * q_ - q_.pow(4))], true);

        let s = er - qr - &one;
        let w = linear_coefficient(er, qr);
        let m = [s.clone(), w.clone(), s.clone()];
        let g = -(d_ * e_) + r(2) * d_ * e_ * e_ - d_ * e_.pow(3) - r(3) * d_ * e_ * q_ - r(2) * e_ * e_ * q_
            + r(3) * d_ * e_ * e_ * q_
            + e_.pow(3) * q_
            + r(2) * d_ * q_ * q_
            + r(5) * e_ * q_ * q_
            - r(4) * d_ * e_ * q_ * q_
            - r(3) * e_ * e_ * q_ * q_
            - r(2) * q_.pow(3)
            + r(2) * d_ * q_.pow(3)
            + r(3) * e_ * q_.pow(3)
            - r(2) * q_.pow(4);
        let k = g * e_ * (qr * qr - dr) / s.pow(3);
        rem4.record(&vals, &remainder(&pa, &m), &[&k * &s, k * w], true);

        let vals1 = [("x", &BigInt::one()), ("e", &e), ("q", &q)];
        let pa1 = univariate(&a, "d", &vals1);
        let pb1 = univariate(&b, "d", &vals1);
        let value = ri(&integer_resultant(&pa1, &pb1)?);
        at_one.record(&vals1, &[value], &[], false);
    }

    // Consequences of the linear remainders, free of d.
    let mut lin2 = Tally::new("1 - 2x + ex + x^2 at x = -1/(e - 2) equals 1/(2 - e)^2", 6);
    let mut lin3 = Tally::new("-q - x - q^2 x + q^4 x - q x^2 at x = q/(q^4 - q^2 - 1) equals -q x^2", 12);
    let mut squared = Tally::new("quadratic at x = (1 - e + q)/w equals (e - q - 1)^2/w^2", 8);
    let mut corrected = Tally::new("quadratic at x = (1 - e + q)/w equals (e - q - 1)^3/w^2", 8);
    for _ in 0..POINTS {
        let (e, q) = (sample(&mut rng), sample(&mut rng));
        let vals = [("e", &e), ("q", &q)];
        let (er, qr) = (ri(&e), ri(&q));
        let x = -one.clone() / (&er - r(2));
        let f = &one - r(2) * &x + &er * &x + &x * &x;
        lin2.record(&vals, &[f], &[one.clone() / (r(2) - &er).pow(2)], false);
        let x = &qr / (qr.pow(4) - &qr * &qr - &one);
        let g = -&qr - &x - &qr * &qr * &x + qr.pow(4) * &x - &qr * &x * &x;
        lin3.record(&vals, &[g], &[-&qr * &x * &x], false);
        let s = &er - &qr - &one;
        let w = linear_coefficient(&er, &qr);
        let value = quadratic(&er, &qr, &(-s.clone() / &w));
        squared.record(&vals, std::slice::from_ref(&value), &[s.pow(2) / w.pow(2)], false);
        corrected.record(&vals, &[value], &[s.pow(3) / w.pow(2)], false);
    }

    let (e8, q2) = (r(8), r(2));
    let s = &e8 - &q2 - &one;
    let w = linear_coefficient(&e8, &q2);
    let examples = vec![
        ("A mod (x - 1) at d = e = 8, q = 2".to_string(), remainder_at_one(&r(8), &e8, &q2).to_string()),
        ("quadratic at its linear root, e = 8, q = 2".to_string(), quadratic(&e8, &q2, &(-s.clone() / &w)).to_string()),
        ("(e - q - 1)^2/w^2 at e = 8, q = 2".to_string(), (s.pow(2) / w.pow(2)).to_string()),
        ("closed-form resultant at x = 1".to_string(), reference_resultant(&one, &e8, &q2).to_string()),
    ];

    let checks: Vec<IdentityCheck> =
        [res, at_one, rem1, rem2, rem3, rem4, lin2, lin3, squared, corrected].into_iter().map(Tally::finish).collect();
    let passed = checks.iter().all(|c| c.passed);
    Ok(BilinearReport { seed, degree_a: deg_a, degree_b: deg_b, checks, examples, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn remainder_small() {
        // x^3 mod (x^2 + 1) = -x
        let p = [r(0), r(0), r(0), r(1)];
        let m = [r(1), r(0), r(1)];
        assert_eq!(remainder(&p, &m), vec![r(0), r(-1)]);
    }

    #[test]
    fn spot_values() {
        assert_eq!(remainder_at_one(&r(8), &r(8), &r(2)), r(-5120));
        assert!(reference_resultant(&r(1), &r(8), &r(2)).is_zero());
        let x = BigRational::new(BigInt::from(-5), BigInt::from(22));
        assert_eq!(quadratic(&r(8), &r(2), &x), BigRational::new(BigInt::from(125), BigInt::from(484)));
    }

    #[test]
    fn identities_hold_except_the_squared_form() {
        let rep = bilinear_identity_checks(11).unwrap();
        for c in &rep.checks {
            let expect = c.name != "quadratic at x = (1 - e + q)/w equals (e - q - 1)^2/w^2";
            assert_eq!(c.passed, expect, "{c:#?}");
        }
        assert_eq!(rep.check("resultant in d").unwrap().sign, -1);
        assert!(!rep.passed);
    }

    #[test]
    fn equations_are_divisible() {
        let (a, b) = bilinear_equations().unwrap();
        assert_eq!(a.degree_in("d"), 2);
        assert!(b.degree_in("d") >= 1);
    }
}
