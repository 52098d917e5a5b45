//! Enumerated point sets of the five families with their distance
//! functions.

use crate::error::{Error, Result};
use crate::model::Family;

use super::field::{rank_in_place, FiniteField};

/// Largest point count the census accepts.
pub const CENSUS_CAP: u64 = 1 << 22;

/// A family's point set. Points are addressed by index; index 0 is the zero
/// word / zero matrix.
#[derive(Debug, Clone)]
pub struct PointSpace {
    family: Family,
    field: Option<FiniteField>,
    /// Allowed values of each coordinate.
    alphabets: Vec<Vec<u8>>,
    count: u64,
}

impl PointSpace {
    pub fn new(family: Family) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        let (field, alphabets) = match family {
            Family::Hamming { n, q } => {
                if n < 1 || q < 2 || q > 256 {
                    return bad(format!("Hamming needs N >= 1 and 2 <= q <= 256, got N={n}, q={q}"));
                }
                (None, vec![(0..q).map(|x| x as u8).collect::<Vec<_>>(); n as usize])
            }
            Family::NGon { n } => {
                if !(3..=1 << 15).contains(&n) {
                    return bad(format!("NGon needs n >= 3, got {n}"));
                }
                // NGon coordinates do not fit u8 in general; handled separately.
                (None, vec![])
            }
            Family::Bilinear { m, n, q } => {
                if m < 1 || n < 1 {
                    return bad(format!("Bilinear needs M, N >= 1, got M={m}, N={n}"));
                }
                let f = FiniteField::new(q)?;
                let all: Vec<u8> = (0..q).map(|x| x as u8).collect();
                (Some(f), vec![all; (m * n) as usize])
            }
            Family::Alternating { n, q } => {
                if n < 2 {
                    return bad(format!("Alternating needs n >= 2, got {n}"));
                }
                let f = FiniteField::new(q)?;
                let all: Vec<u8> = (0..q).map(|x| x as u8).collect();
                (Some(f), vec![all; (n * (n - 1) / 2) as usize])
            }
            Family::Hermitian { n, q } => {
                if n < 1 {
                    return bad(format!("Hermitian needs n >= 1, got {n}"));
                }
                FiniteField::new(q)?;
                let big = q.checked_mul(q).filter(|&qq| qq <= 256).ok_or(Error::NotPrimePower(q))?;
                let f = FiniteField::new(big)?;
                let all: Vec<u8> = (0..big).map(|x| x as u8).collect();
                let fixed: Vec<u8> = all.iter().copied().filter(|&a| f.conjugate(a) == Some(a)).collect();
                let mut alph = vec![fixed; n as usize];
                alph.extend(std::iter::repeat_n(all, (n * (n - 1) / 2) as usize));
                (Some(f), alph)
            }
            Family::Custom => return bad("custom arrays have no point space".into()),
        };
        let count = match family {
            Family::NGon { n } => n as u64,
            _ => alphabets
                .iter()
                .try_fold(1u64, |acc, a| acc.checked_mul(a.len() as u64))
                .unwrap_or(u64::MAX),
        };
        Ok(PointSpace { family, field, alphabets, count })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn field(&self) -> Option<&FiniteField> {
        self.field.as_ref()
    }

    /// Number of coordinates per point.
    pub fn dimension(&self) -> usize {
        match self.family {
            Family::NGon { .. } => 1,
            _ => self.alphabets.len(),
        }
    }

    /// Number of relation classes the distance function can produce.
    pub fn expected_classes(&self) -> usize {
        match self.family {
            Family::Hamming { n, .. } | Family::Hermitian { n, .. } => n as usize,
            Family::Bilinear { m, n, .. } => m.min(n) as usize,
            Family::Alternating { n, .. } | Family::NGon { n } => (n / 2) as usize,
            Family::Custom => 0,
        }
    }

    /// Coordinates of point `idx` (mixed radix over the alphabets).
    pub fn point(&self, mut idx: u64, out: &mut Vec<u16>) {
        out.clear();
        if let Family::NGon { .. } = self.family {
            out.push(idx as u16);
            return;
        }
        for alph in &self.alphabets {
            let r = alph.len() as u64;
            out.push(alph[(idx % r) as usize] as u16);
            idx /= r;
        }
    }

    /// Raw distance between two points: Hamming weight, rank of the
    /// difference, or the residue `v - u mod n` for the cycle.
    pub fn raw_distance(&self, u: &[u16], v: &[u16], scratch: &mut Vec<u8>) -> u32 {
        match self.family {
            Family::Hamming { .. } => u.iter().zip(v).filter(|(a, b)| a != b).count() as u32,
            Family::NGon { n } => (v[0] as u32 + n - u[0] as u32) % n,
            Family::Bilinear { m, n, .. } => {
                let f = self.field.as_ref().expect("matrix family has a field");
                scratch.clear();
                scratch.extend(u.iter().zip(v).map(|(&a, &b)| f.sub(b as u8, a as u8)));
                rank_in_place(f, scratch, m as usize, n as usize) as u32
            }
            Family::Alternating { n, .. } => {
                let f = self.field.as_ref().expect("matrix family has a field");
                let n = n as usize;
                scratch.clear();
                scratch.resize(n * n, 0);
                let mut k = 0;
                for i in 0..n {
                    for j in i + 1..n {
                        let d = f.sub(v[k] as u8, u[k] as u8);
                        scratch[i * n + j] = d;
                        scratch[j * n + i] = f.neg(d);
                        k += 1;
                    }
                }
                rank_in_place(f, scratch, n, n) as u32
            }
            Family::Hermitian { n, .. } => {
                let f = self.field.as_ref().expect("matrix family has a field");
                let n = n as usize;
                scratch.clear();
                scratch.resize(n * n, 0);
                for i in 0..n {
                    scratch[i * n + i] = f.sub(v[i] as u8, u[i] as u8);
                }
                let mut k = n;
                for i in 0..n {
                    for j in i + 1..n {
                        let d = f.sub(v[k] as u8, u[k] as u8);
                        scratch[i * n + j] = d;
                        scratch[j * n + i] = f.conjugate(d).expect("GF(q^2) has a conjugation");
                        k += 1;
                    }
                }
                rank_in_place(f, scratch, n, n) as u32
            }
            Family::Custom => unreachable!("custom families have no point space"),
        }
    }

    /// Relation class of a raw distance, or `None` if the distance cannot
    /// occur in this family (an odd rank for alternating forms).
    pub fn class_of_raw(&self, raw: u32) -> Option<usize> {
        match self.family {
            Family::Alternating { .. } => (raw % 2 == 0).then_some((raw / 2) as usize),
            Family::NGon { n } => Some(raw.min(n - raw) as usize),
            _ => Some(raw as usize),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(space: &PointSpace, i: u64, j: u64) -> u32 {
        let (mut u, mut v, mut s) = (Vec::new(), Vec::new(), Vec::new());
        space.point(i, &mut u);
        space.point(j, &mut v);
        space.raw_distance(&u, &v, &mut s)
    }

    #[test]
    fn point_counts() {
        let cases = [
            (Family::Hamming { n: 3, q: 2 }, 8),
            (Family::NGon { n: 7 }, 7),
            (Family::Bilinear { m: 2, n: 3, q: 2 }, 64),
            (Family::Alternating { n: 4, q: 3 }, 729),
            (Family::Hermitian { n: 2, q: 2 }, 16),
            (Family::Hermitian { n: 3, q: 2 }, 512),
        ];
        for (fam, count) in cases {
            assert_eq!(PointSpace::new(fam).unwrap().len(), count, "{fam}");
        }
    }

    #[test]
    fn distance_is_symmetric_and_translation_invariant() {
        for fam in [
            Family::Bilinear { m: 2, n: 2, q: 3 },
            Family::Alternating { n: 4, q: 2 },
            Family::Hermitian { n: 2, q: 2 },
            Family::Hamming { n: 3, q: 3 },
            Family::NGon { n: 9 },
        ] {
            let s = PointSpace::new(fam).unwrap();
            let n = s.len().min(40);
            for i in 0..n {
                assert_eq!(dist(&s, i, i), 0);
                for j in 0..n {
                    let d = dist(&s, i, j);
                    assert_eq!(s.class_of_raw(d), s.class_of_raw(dist(&s, j, i)), "{fam} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn alternating_ranks_are_even() {
        let s = PointSpace::new(Family::Alternating { n: 5, q: 2 }).unwrap();
        for j in 0..s.len() {
            let d = dist(&s, 0, j);
            assert_eq!(d % 2, 0);
            assert!(s.class_of_raw(d).unwrap() <= 2);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(PointSpace::new(Family::Bilinear { m: 2, n: 2, q: 6 }).is_err());
        assert!(PointSpace::new(Family::NGon { n: 2 }).is_err());
        assert!(PointSpace::new(Family::Custom).is_err());
    }
}
