mod common;

use common::*;
use pikit_core::{clause_set_equal, residue, subsumes};
use proptest::prelude::*;

proptest! {
    #![proptest_config(cases())]

    #[test]
    fn kept_members_are_pairwise_incomparable(set in clause_set(7, 3, 1)) {
        let kept = residue(&set).kept;
        for (i, a) in kept.iter().enumerate() {
            for (j, b) in kept.iter().enumerate() {
                if i != j {
                    prop_assert!(subsumes(&a.clause, &b.clause).is_none(), "{} subsumes {}", a.clause, b.clause);
                }
            }
        }
    }

    #[test]
    fn deleted_members_are_covered(set in clause_set(7, 3, 1)) {
        let r = residue(&set);
        prop_assert_eq!(r.kept.len() + r.deleted.len(), set.len());
        for d in &r.deleted {
            prop_assert!(r.kept.iter().any(|k| subsumes(&k.clause, &d.clause).is_some()));
        }
    }

    #[test]
    fn idempotent(set in clause_set(7, 3, 1)) {
        let once = residue(&set).kept;
        let twice = residue(&once);
        prop_assert!(twice.deleted.is_empty());
        prop_assert!(clause_set_equal(&twice.kept, &once));
    }

    #[test]
    fn kept_is_a_subset_in_original_order(set in clause_set(7, 3, 1)) {
        let kept = residue(&set).kept;
        let positions: Vec<usize> = kept
            .iter()
            .map(|k| set.iter().position(|m| m == k).expect("kept member comes from the input"))
            .collect();
        prop_assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }
}
