//! Property tests for invariants that cut across modules.

use proptest::prelude::*;

use nakayama_core::algebra::{AlgebraDesc, Interval};
use nakayama_core::complex::Complex;
use nakayama_core::covering::fold_dimvec;
use nakayama_core::dimvec::DimVec;
use nakayama_core::homotopy::is_isomorphic;
use nakayama_core::literal::{parse_object, print_object};
use nakayama_core::resolve::projective_form;
use nakayama_core::translate::{classify_object, tau, Direction, ObjectKind};

/// A linear algebra, a window size and a stalk M_{a,b}[k] inside the window.
fn stalk_case() -> impl Strategy<Value = (AlgebraDesc, usize, Interval, i32)> {
    (2usize..=7, 2usize..=4, 1usize..=3)
        .prop_filter("l < n", |(n, l, _)| l < n)
        .prop_flat_map(|(n, l, m)| {
            let a = AlgebraDesc::linear(n, l).unwrap();
            let ivs = a.intervals();
            (Just(a), Just(m), proptest::sample::select(ivs), 0..m as i32)
        })
}

fn dimvec(m: usize, n: usize) -> impl Strategy<Value = DimVec> {
    proptest::collection::vec(proptest::collection::vec(0i64..4, n), m).prop_map(DimVec::from_rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fold_is_additive((x, y, n) in (1usize..4, 1usize..4, 1usize..4).prop_flat_map(|(n, k, m)| (dimvec(m, n * k), dimvec(m, n * k), Just(n)))) {
        prop_assert_eq!(fold_dimvec(&x.add(&y), n), fold_dimvec(&x, n).add(&fold_dimvec(&y, n)));
    }

    #[test]
    fn fold_ignores_shifts_by_the_period(x in dimvec(2, 6), n in 1usize..=3) {
        if let Some(y) = x.shift_columns(n as isize) {
            prop_assert_eq!(fold_dimvec(&x, n), fold_dimvec(&y, n));
        }
    }

    #[test]
    fn dualizing_twice_is_identity(x in dimvec(3, 5)) {
        prop_assert_eq!(x.dualized().dualized(), x);
    }

    #[test]
    fn printed_literals_parse_back((a, m, x, k) in stalk_case()) {
        let c = projective_form(&Complex::stalk_interval(a, x, 0).shift(k)).unwrap();
        let printed = print_object(&c).unwrap();
        let back = parse_object(&a, &printed).unwrap();
        prop_assert!(is_isomorphic(&back, &c).unwrap(), "{printed}");
        prop_assert_eq!(back.dimvec(m).unwrap(), c.dimvec(m).unwrap());
    }

    #[test]
    fn duality_reverses_dimvecs((a, m, x, k) in stalk_case()) {
        let c = Complex::stalk_interval(a, x, 0).shift(k);
        let d = c.dual().shift(m as i32 - 1);
        prop_assert_eq!(d.dimvec(m).unwrap(), c.dimvec(m).unwrap().dualized());
    }

    #[test]
    fn tau_inverts_tau_inverse((a, m, x, k) in stalk_case()) {
        let c = projective_form(&Complex::stalk_interval(a, x, 0).shift(k)).unwrap();
        // projective-injective stalks report as projective objects
        let injective = k == m as i32 - 1 && a.is_injective(x);
        if !injective && classify_object(&c, m).unwrap() != ObjectKind::InjectiveObject {
            let y = tau(&c, m, Direction::Forward).unwrap();
            prop_assert!(!y.is_zero());
            let back = tau(&y, m, Direction::Backward).unwrap();
            prop_assert!(is_isomorphic(&back, &c).unwrap());
        }
    }
}
