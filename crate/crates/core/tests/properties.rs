//! Property suites over the fixture set; see `common::props`.

mod common;

use common::props::{self, fixtures};
use common::{a_t, algebra};
use gorenstein::nilpoly::{exp_element, log_element};
use gorenstein::polycore::{Scalar, Vector};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

macro_rules! suite {
    ($($name:ident => $seed:expr),* $(,)?) => {$(
        #[test]
        fn $name() {
            props::$name(&fixtures(), &mut ChaCha8Rng::seed_from_u64($seed));
        }
    )*};
}

suite! {
    exp_log_round_trip => 1,
    exp_is_a_homomorphism => 2,
    blaschke_condition_holds => 3,
    product_splits_into_star_and_pairing => 4,
    homogeneous_components_are_the_forms => 5,
    structure_constants_match_normal_forms => 6,
    translated_graph_lies_on_translated_hypersurface => 7,
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_commutative_and_associative(
        u in prop::collection::vec(-3i64..=3, 4),
        v in prop::collection::vec(-3i64..=3, 4),
        w in prop::collection::vec(-3i64..=3, 4),
    ) {
        let a = algebra(&["x^2 + y^2", "x*y"], &["x", "y"]);
        let s = |v: &[i64]| v.iter().map(|&c| Scalar::from_integer(c.into())).collect::<Vector>();
        let (u, v, w) = (s(&u), s(&v), s(&w));
        prop_assert_eq!(a.mul(&u, &v), a.mul(&v, &u));
        prop_assert_eq!(a.mul(&a.mul(&u, &v), &w), a.mul(&u, &a.mul(&v, &w)));
    }

    #[test]
    fn log_inverts_exp_on_a1(coords in prop::collection::vec((-5i64..=5, 1i64..=4), 14)) {
        let a = a_t(1);
        let mut u = vec![Scalar::from_integer(0.into())];
        u.extend(coords.iter().map(|&(p, q)| Scalar::new(p.into(), q.into())));
        let e = exp_element(&a, &u).unwrap();
        prop_assert_eq!(log_element(&a, &e).unwrap(), u);
    }
}
