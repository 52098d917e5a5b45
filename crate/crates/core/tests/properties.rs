use num_bigint::BigInt;
use num_complex::Complex64;
use proptest::prelude::*;
use spinsolve::families::build_custom;
use spinsolve::solver::{candidate_quartic, random_array, roots_of_quartic, solve};
use spinsolve::symbolic::resultant::integer_resultant;
use spinsolve::symbolic::MultiPoly;
use spinsolve::SolverConfig;

const VARS: [&str; 3] = ["x", "y", "z"];

fn poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -5i64..=5), 0..6).prop_map(|terms| {
        let zero = MultiPoly::zero(&VARS);
        terms.into_iter().fold(zero.clone(), |acc, (a, b, c, k)| &acc + &zero.monomial_like(vec![a, b, c], k))
    })
}

fn univariate() -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec(-6i64..=6, 1..5).prop_map(|mut v| {
        let last = v.len() - 1;
        if v[last] == 0 {
            v[last] = 1;
        }
        v.into_iter().map(BigInt::from).collect()
    })
}

fn mul_univariate(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

proptest! {
    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_divides_exactly(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), a);
    }

    #[test]
    fn resultant_symmetry(p in univariate(), q in univariate()) {
        let (m, n) = (p.len() - 1, q.len() - 1);
        let pq = integer_resultant(&p, &q).unwrap();
        let qp = integer_resultant(&q, &p).unwrap();
        let sign = if (m * n) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(pq, qp * sign);
    }

    #[test]
    fn resultant_is_multiplicative(p in univariate(), q in univariate(), r in univariate()) {
        let lhs = integer_resultant(&p, &mul_univariate(&q, &r)).unwrap();
        let rhs = integer_resultant(&p, &q).unwrap() * integer_resultant(&p, &r).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn quartic_roots_come_in_reciprocal_pairs(seed in any::<u64>(), n in 2usize..=6) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let arr = random_array(&mut rng, n);
        let cfg = SolverConfig::default();
        let Ok(scheme) = build_custom(arr, &cfg) else { return Ok(()) };
        let quartic = candidate_quartic(scheme.array(), scheme.eigenvalues());
        prop_assume!(quartic.iter().any(|c| c.abs() > 1e-9));
        let Ok(roots) = roots_of_quartic(&quartic, &cfg) else { return Ok(()) };
        for x in &roots {
            let inv: Complex64 = x.inv();
            let close = roots.iter().any(|y| (y - inv).norm() <= 1e-6 * inv.norm().max(1.0));
            prop_assert!(close, "{x} has no reciprocal partner in {roots:?}");
        }
    }

    #[test]
    fn at_most_twelve_solutions(seed in any::<u64>(), n in 2usize..=6) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let arr = random_array(&mut rng, n);
        let cfg = SolverConfig::default();
        let Ok(scheme) = build_custom(arr, &cfg) else { return Ok(()) };
        if let Ok(set) = solve(&scheme, &cfg) {
            prop_assert!(set.count <= 12, "{} solutions", set.count);
        }
    }
}
