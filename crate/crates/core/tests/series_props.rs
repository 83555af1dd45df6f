use hankel_core::series::TruncatedSeries;
use hankel_core::BigRational;
use hankel_core::scalar::q;
use proptest::prelude::*;

const N: usize = 5;

fn rational() -> impl Strategy<Value = BigRational> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| q(n, d))
}

fn series() -> impl Strategy<Value = TruncatedSeries<BigRational>> {
    prop::collection::vec(rational(), N + 1).prop_map(|c| TruncatedSeries::truncated(c, N))
}

fn vanishing() -> impl Strategy<Value = TruncatedSeries<BigRational>> {
    series().prop_map(|mut s| {
        s.set_coeff(0, q(0, 1));
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.checked_mul(&b).unwrap(), b.checked_mul(&a).unwrap());
        let ab_c = a.checked_mul(&b).unwrap().checked_mul(&c).unwrap();
        let a_bc = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        let left = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
        let right = a.checked_mul(&b).unwrap().checked_add(&a.checked_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reciprocal_round_trip(a in series()) {
        prop_assume!(*a.coeff(0) != q(0, 1));
        let inv = a.reciprocal().unwrap();
        prop_assert_eq!(a.checked_mul(&inv).unwrap(), TruncatedSeries::one(N));
    }

    #[test]
    fn composition_is_associative(f in series(), g in vanishing(), h in vanishing()) {
        let left = f.compose(&g.compose(&h).unwrap()).unwrap();
        let right = f.compose(&g).unwrap().compose(&h).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn sqrt1p_squares_back(a in vanishing()) {
        let s = a.sqrt1p().unwrap();
        let sq = s.checked_mul(&s).unwrap();
        prop_assert_eq!(sq, TruncatedSeries::one(N).checked_add(&a).unwrap());
    }

    #[test]
    fn exp_is_a_homomorphism(a in vanishing(), b in vanishing()) {
        let lhs = a.checked_add(&b).unwrap().exp().unwrap();
        let rhs = a.exp().unwrap().checked_mul(&b.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
