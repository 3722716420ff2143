mod common;

use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ladder_laws((pairs, stranger) in common::pair_set_strategy()) {
        prop_assert_eq!(common::check_ladder(&pairs, stranger), Ok(()));
    }
}
