use cvcore::exact::{kernel_basis, qi, BPoly, Field, IntMatrix, Mat, RatFun};
use num_rational::BigRational;
use proptest::prelude::*;

fn int_matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-20i64..=20, c), r)
    })
}

proptest! {
    #[test]
    fn smith_rank_matches_rational_elimination(rows in int_matrix_strategy()) {
        let m = IntMatrix::from_i64_rows(&rows);
        prop_assert_eq!(m.smith_rank(), m.rank_q());
    }

    #[test]
    fn rank_plus_kernel_is_cols(rows in int_matrix_strategy()) {
        let q: Vec<Vec<BigRational>> =
            rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect();
        let m = Mat::from_rows(q).unwrap();
        let ker = kernel_basis(&m);
        prop_assert_eq!(m.rank() + ker.len(), m.cols());
        for v in &ker {
            prop_assert!(m.apply(v).iter().all(|x| Field::is_zero(x)));
        }
    }
}

/// Sparse bivariate polynomial with small support, from a seed list of
/// (alpha exponent, beta exponent, coefficient) triples.
fn sparse_poly(terms: &[(u8, u8, i64)]) -> BPoly {
    let mut p = BPoly::zero();
    for &(ea, eb, c) in terms {
        let mut t = BPoly::constant(qi(c));
        for _ in 0..ea {
            t = t.mul(&BPoly::alpha());
        }
        for _ in 0..eb {
            t = t.mul(&BPoly::beta());
        }
        p = p.add(&t);
    }
    p
}

fn poly_strategy() -> impl Strategy<Value = BPoly> {
    proptest::collection::vec((0u8..4, 0u8..4, -9i64..=9), 1..4)
        .prop_map(|terms| sparse_poly(&terms))
}

proptest! {
    // 1000 randomized field-law checks: (a*b)*a^{-1} normalizes to b.
    #![proptest_config(ProptestConfig::with_cases(1000))]
    #[test]
    fn ratfun_field_law(a in poly_strategy(), b in poly_strategy()) {
        prop_assume!(!a.is_zero());
        let ra = RatFun::from_poly(a);
        let rb = RatFun::from_poly(b);
        let back = ra.mul(&rb).mul(&ra.inv().unwrap());
        prop_assert_eq!(back, rb);
    }
}
