//! Table-driven finite fields GF(p^k) for small orders.

use crate::error::{Error, Result};

/// Monic irreducible (Conway) polynomials, low-order coefficients first with
/// the leading 1 omitted.
const MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 1, 1, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (5, 2, &[2, 4]),
    (7, 2, &[3, 6]),
];

const MAX_ORDER: u32 = 256;

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, k))
}

/// GF(q) with elements `0..q`; element `e` encodes the polynomial whose
/// base-`p` digits are its coefficients.
#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    k: u32,
    q: u32,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > MAX_ORDER {
            return Err(Error::NotPrimePower(q));
        }
        let modulus: Vec<u32> = if k == 1 {
            vec![]
        } else {
            MODULI
                .iter()
                .find(|(mp, mk, _)| *mp == p && *mk == k)
                .map(|(_, _, m)| m.to_vec())
                .ok_or(Error::NotPrimePower(q))?
        };
        let digits = |mut e: u32| {
            let mut d = vec![0u32; k as usize];
            for slot in d.iter_mut() {
                *slot = e % p;
                e /= p;
            }
            d
        };
        let encode = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &x| acc * p + x);
        let qs = q as usize;
        let mut add = vec![0u8; qs * qs];
        let mut mul = vec![0u8; qs * qs];
        for x in 0..q {
            let dx = digits(x);
            for y in 0..q {
                let dy = digits(y);
                let sum: Vec<u32> = dx.iter().zip(&dy).map(|(a, b)| (a + b) % p).collect();
                add[(x * q + y) as usize] = encode(&sum) as u8;

                let mut prod = vec![0u32; 2 * k as usize];
                for (i, a) in dx.iter().enumerate() {
                    for (j, b) in dy.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + a * b) % p;
                    }
                }
                // x^k = -(m_0 + m_1 x + ... + m_{k-1} x^{k-1})
                for deg in (k as usize..prod.len()).rev() {
                    let top = prod[deg];
                    if top == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, m) in modulus.iter().enumerate() {
                        let at = deg - k as usize + i;
                        prod[at] = (prod[at] + (p - top) * m) % p;
                    }
                }
                mul[(x * q + y) as usize] = encode(&prod[..k as usize]) as u8;
            }
        }
        let mut neg = vec![0u8; qs];
        let mut inv = vec![0u8; qs];
        for x in 0..qs {
            neg[x] = (0..qs).find(|&y| add[x * qs + y] == 0).unwrap_or(0) as u8;
            if x != 0 {
                inv[x] = (1..qs).find(|&y| mul[x * qs + y] == 1).unwrap_or(0) as u8;
            }
        }
        Ok(FiniteField { p, k, q, add, mul, neg, inv })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: u8) -> u8 {
        self.pow(a, self.p as u64)
    }

    /// `x -> x^r` where `q = r^2`; the involution fixing GF(r).
    pub fn conjugate(&self, a: u8) -> Option<u8> {
        if self.k % 2 != 0 {
            return None;
        }
        Some(self.pow(a, (self.p as u64).pow(self.k / 2)))
    }

    /// Exhaustive check of the field axioms; returns the first failure.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let elems: Vec<u8> = (0..self.q).map(|x| x as u8).collect();
        for &a in &elems {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(format!("identity fails at {a}"));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(format!("additive inverse fails at {a}"));
            }
            if a != 0 && self.mul(a, self.inv[a as usize]) != 1 {
                return Err(format!("{a} has no multiplicative inverse"));
            }
            for &b in &elems {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("commutativity fails at ({a},{b})"));
                }
                for &c in &elems {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("additive associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplicative associativity fails at ({a},{b},{c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Dense matrix over a [`FiniteField`], row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u8>,
}

impl FieldMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u8>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data has wrong length");
        FieldMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn rank(&self, field: &FiniteField) -> usize {
        let mut scratch = self.data.clone();
        rank_in_place(field, &mut scratch, self.rows, self.cols)
    }
}

/// Row-echelon rank; destroys `data`.
pub fn rank_in_place(field: &FiniteField, data: &mut [u8], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| data[r * cols + col] != 0) else {
            continue;
        };
        if pivot != rank {
            for j in col..cols {
                data.swap(pivot * cols + j, rank * cols + j);
            }
        }
        let inv = field.inv(data[rank * cols + col]).expect("pivot is nonzero");
        for r in rank + 1..rows {
            let lead = data[r * cols + col];
            if lead == 0 {
                continue;
            }
            let factor = field.mul(lead, inv);
            for j in col..cols {
                let v = field.mul(factor, data[rank * cols + j]);
                data[r * cols + j] = field.sub(data[r * cols + j], v);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert!(matches!(FiniteField::new(12), Err(Error::NotPrimePower(12))));
    }

    #[test]
    fn desk_scale_fields_satisfy_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FiniteField::new(q).unwrap();
            f.check_axioms().unwrap_or_else(|e| panic!("GF({q}): {e}"));
        }
    }

    #[test]
    fn larger_tabulated_fields_satisfy_axioms() {
        for q in [25, 27, 32, 49, 64] {
            let f = FiniteField::new(q).unwrap();
            f.check_axioms().unwrap_or_else(|e| panic!("GF({q}): {e}"));
        }
    }

    #[test]
    fn conjugation_is_involutive_automorphism() {
        for q in [4, 9, 16, 25] {
            let f = FiniteField::new(q).unwrap();
            let r = (q as f64).sqrt() as usize;
            let mut fixed = 0;
            for a in 0..q as u8 {
                let ca = f.conjugate(a).unwrap();
                assert_eq!(f.conjugate(ca).unwrap(), a);
                if ca == a {
                    fixed += 1;
                }
                for b in 0..q as u8 {
                    assert_eq!(f.conjugate(f.add(a, b)).unwrap(), f.add(ca, f.conjugate(b).unwrap()));
                    assert_eq!(f.conjugate(f.mul(a, b)).unwrap(), f.mul(ca, f.conjugate(b).unwrap()));
                }
            }
            assert_eq!(fixed, r, "fixed field of GF({q}) should have {r} elements");
        }
        assert!(FiniteField::new(8).unwrap().conjugate(3).is_none());
    }

    #[test]
    fn frobenius_is_additive() {
        let f = FiniteField::new(9).unwrap();
        for a in 0..9u8 {
            for b in 0..9u8 {
                assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            }
        }
    }

    #[test]
    fn small_ranks() {
        let f = FiniteField::new(2).unwrap();
        assert_eq!(FieldMatrix::zeros(3, 3).rank(&f), 0);
        assert_eq!(FieldMatrix::identity(3).rank(&f), 3);
        assert_eq!(FieldMatrix::new(2, 2, vec![1, 1, 1, 1]).rank(&f), 1);
        assert_eq!(FieldMatrix::new(2, 3, vec![1, 0, 1, 0, 1, 1]).rank(&f), 2);
    }

    #[test]
    fn rank_over_gf4() {
        let f = FiniteField::new(4).unwrap();
        // Row 2 is w * row 1 where w = 2 is a root of x^2 + x + 1.
        let w = 2u8;
        let row = [1u8, 3, 2];
        let scaled: Vec<u8> = row.iter().map(|&x| f.mul(w, x)).collect();
        let mut data = row.to_vec();
        data.extend(scaled);
        assert_eq!(FieldMatrix::new(2, 3, data).rank(&f), 1);
    }
}
