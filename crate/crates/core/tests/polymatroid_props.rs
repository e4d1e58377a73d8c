mod common;

use common::{random_disjoint, random_operation, random_repr, rng};
use polyindex::linalg::IndexSet;
use polyindex::polymatroid::{
    basis_vectors, check_axioms, contract, contract_commutes_check, contract_representation,
    ingleton_check, membership, ReprPolymatroid, TABLE_CAP,
};
use proptest::prelude::*;
use rand::Rng;

fn repr_strategy() -> impl Strategy<Value = ReprPolymatroid> {
    (prop::sample::select(vec![2u32, 3]), any::<u64>())
        .prop_map(|(q, seed)| random_repr(&mut rng(seed), q, 5, 6))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn representations_induce_polymatroids(repr in repr_strategy()) {
        let t = repr.to_table(TABLE_CAP).unwrap();
        prop_assert!(check_axioms(&t).is_ok());
        prop_assert!(ingleton_check(&t).unwrap().passes());
        let basis = basis_vectors(&t).unwrap();
        prop_assert!(!basis.is_empty());
        for b in &basis {
            prop_assert_eq!(b.magnitude(), t.total_rank());
            prop_assert!(membership(&t, &b.0).unwrap());
        }
    }

    #[test]
    fn row_and_column_operations_preserve_the_table(repr in repr_strategy(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let expected = repr.to_table(TABLE_CAP).unwrap();
        let mut concat = repr.concatenation();
        for _ in 0..r.gen_range(1..12) {
            concat = random_operation(&mut r, &concat);
        }
        let moved = repr.with_concatenation(&concat).unwrap();
        prop_assert_eq!(moved.to_table(TABLE_CAP).unwrap(), expected);
    }

    #[test]
    fn contraction_commutes(repr in repr_strategy(), seed in any::<u64>()) {
        let t = repr.to_table(TABLE_CAP).unwrap();
        let (t1, t2) = random_disjoint(&mut rng(seed), t.ground_size());
        prop_assert!(contract_commutes_check(&t, &t1, &t2).unwrap());
        prop_assert!(check_axioms(&contract(&t, &t1).unwrap()).is_ok());
    }

    #[test]
    fn representation_contraction_matches_table(repr in repr_strategy()) {
        let t = repr.to_table(TABLE_CAP).unwrap();
        for e in 0..repr.ground_size() {
            let by_rows = contract_representation(&repr, e).unwrap().to_table(TABLE_CAP).unwrap();
            prop_assert_eq!(by_rows, contract(&t, &IndexSet::singleton(e)).unwrap(), "element {}", e);
        }
    }
}
