//! Seeded random intersection arrays for bound testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::IntersectionArray;

/// A valid integer array with `n` classes: `b` nonincreasing, `c`
/// nondecreasing, `c_1 = 1`, every `a_i >= 0`.
pub fn random_array<R: Rng>(rng: &mut R, n: usize) -> IntersectionArray {
    let b0: i64 = rng.random_range(2..=12);
    let mut b = vec![b0];
    // c_1 .. c_N
    let mut c = vec![1i64];
    for i in 1..n {
        let ci = c[i - 1];
        b.push(rng.random_range(1..=b[i - 1].min(b0 - ci)));
        let hi = if i + 1 < n { b0 - 1 } else { b0 };
        c.push(rng.random_range(ci..=hi));
    }
    IntersectionArray::from_integers(&b, &c)
}

/// `k` arrays with `N` drawn from `2..=6`, reproducible from `seed`.
pub fn random_arrays(k: usize, seed: u64) -> Vec<IntersectionArray> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..k)
        .map(|_| {
            let n = rng.random_range(2..=6);
            random_array(&mut rng, n)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_array;

    #[test]
    fn arrays_are_valid_and_reproducible() {
        let a = random_arrays(300, 7);
        for arr in &a {
            assert!(validate_array(arr).is_empty(), "{arr}: {:?}", validate_array(arr));
            assert!((2..=6).contains(&arr.n_classes()));
        }
        let b = random_arrays(300, 7);
        assert_eq!(a, b);
    }
}
