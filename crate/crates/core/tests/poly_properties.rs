use num_bigint::BigInt;
use proptest::prelude::*;

use nsimplex::poly::{interlaces, real_root_count, IntPolynomial};

fn from_roots(roots: &[i64]) -> IntPolynomial {
    roots
        .iter()
        .map(|&r| IntPolynomial::from_i64s(&[-r, 1]))
        .fold(IntPolynomial::one(), |acc, f| acc * f)
}

fn coeff_vec() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-50i64..50, 1..12)
}

proptest! {
    #[test]
    fn sections_reconstruct(coeffs in coeff_vec(), m in 1usize..6) {
        let f = IntPolynomial::from_i64s(&coeffs);
        let rebuilt: IntPolynomial = (0..m)
            .map(|l| f.section(m, l).unwrap().compose_power(m).shift(l))
            .sum();
        prop_assert_eq!(rebuilt, f);
    }

    #[test]
    fn sturm_counts_linear_factors(roots in prop::collection::vec(-20i64..20, 1..8), lead in 1i64..5) {
        let f = from_roots(&roots).scale(&BigInt::from(lead));
        let mut distinct = roots.clone();
        distinct.sort_unstable();
        distinct.dedup();
        prop_assert_eq!(real_root_count(&f).unwrap(), roots.len());
        let iso = nsimplex::poly::isolate_real_roots(&f).unwrap();
        prop_assert_eq!(iso.distinct_roots(), distinct.len());
        prop_assert!(f.is_real_rooted().unwrap());
    }

    #[test]
    fn strict_interlacing_is_antisymmetric(
        a in prop::collection::btree_set(-30i64..30, 1..6),
        b in prop::collection::btree_set(-30i64..30, 1..6),
    ) {
        let (a, b): (Vec<i64>, Vec<i64>) = (a.into_iter().collect(), b.into_iter().collect());
        let n = a.len().min(b.len());
        let f = from_roots(&a[..n]);
        let g = from_roots(&b[..n]);
        let forward = interlaces(&g, &f, true).unwrap();
        let backward = interlaces(&f, &g, true).unwrap();
        prop_assert!(!(forward && backward));
    }

    #[test]
    fn real_rooted_positive_is_log_concave(roots in prop::collection::vec(1i64..15, 1..8)) {
        // roots at -r give positive coefficients
        let neg: Vec<i64> = roots.iter().map(|r| -r).collect();
        let f = from_roots(&neg);
        prop_assert!(f.has_positive_coeffs());
        prop_assert!(f.is_real_rooted().unwrap());
        prop_assert!(f.is_log_concave().unwrap());
        prop_assert!(f.is_unimodal().unwrap());
    }
}

#[test]
fn interlacing_of_shifted_roots() {
    let f = from_roots(&[-4, -2, 0]);
    let g = from_roots(&[-3, -1]);
    assert!(interlaces(&g, &f, true).unwrap());
    assert!(interlaces(&f, &g, true).is_err());
}
