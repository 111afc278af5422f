//! Exact arithmetic on integer polynomials and truncated integer power series.

mod binomial;
pub(crate) mod coeffs;
mod kernels;
mod poly;
mod series;

pub use binomial::BinomialQuotient;
pub use kernels::KARATSUBA_THRESHOLD;
pub use poly::IntPoly;
pub use series::SeriesPrefix;

#[cfg(test)]
mod props {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::One;
    use proptest::prelude::*;

    fn poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-20i64..=20, 0..12).prop_map(IntPoly::from_coeffs)
    }

    fn nonzero_poly() -> impl Strategy<Value = IntPoly> {
        poly().prop_filter("nonzero", |p| !p.is_zero())
    }

    fn unit_poly() -> impl Strategy<Value = IntPoly> {
        (prop::bool::ANY, prop::collection::vec(-5i64..=5, 0..8)).prop_map(|(neg, mut v)| {
            v.insert(0, if neg { -1 } else { 1 });
            IntPoly::from_coeffs(v)
        })
    }

    proptest! {
        #[test]
        fn mul_commutes_and_associates(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn degrees_add(a in nonzero_poly(), b in nonzero_poly()) {
            prop_assert_eq!(a.mul(&b).degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
        }

        #[test]
        fn division_undoes_multiplication(a in poly(), b in nonzero_poly()) {
            prop_assert_eq!(a.mul(&b).div_exact(&b).unwrap(), a);
        }

        #[test]
        fn abs_sum_is_submultiplicative(qs in prop::collection::vec(nonzero_poly(), 1..5)) {
            let prod = qs.iter().fold(IntPoly::one(), |acc, q| acc.mul(q));
            let bound: BigUint = qs.iter().map(|q| q.abs_sum()).product();
            prop_assert!(prod.abs_sum() <= bound);
        }

        #[test]
        fn height_of_mixed_product(f in unit_poly(), qs in prop::collection::vec(nonzero_poly(), 1..4), order in 1usize..40) {
            // f may be a power series: use a long prefix of 1/f.
            let series = f.series_inverse(order).unwrap();
            let prod = qs.iter().fold(series.clone(), |acc, q| acc.mul_poly(q));
            let bound: BigUint = series.height() * qs.iter().map(|q| q.abs_sum()).product::<BigUint>();
            prop_assert!(prod.height() <= bound);
        }

        #[test]
        fn inverse_round_trip(a in unit_poly(), order in 1usize..50) {
            let inv = a.series_inverse(order).unwrap();
            let back = inv.mul_poly(&a);
            prop_assert_eq!(back, SeriesPrefix::one(order));
        }

        #[test]
        fn karatsuba_agrees_with_big_path(len in 60usize..200, seed in 0u64..1000) {
            let a: Vec<i64> = (0..len as u64).map(|i| ((i * 2654435761 + seed) % 19) as i64 - 9).collect();
            let pa = IntPoly::from_coeffs(a.clone());
            let sq = pa.mul(&pa);
            let mut naive = vec![0i64; 2 * len - 1];
            for i in 0..len { for j in 0..len { naive[i + j] += a[i] * a[j]; } }
            prop_assert_eq!(sq, IntPoly::from_coeffs(naive));
        }
    }

    #[test]
    fn one_is_identity() {
        let a = IntPoly::from_coeffs(vec![3, 0, -2]);
        assert_eq!(a.mul(&IntPoly::one()), a);
        assert!(IntPoly::one().height().is_one());
    }
}
