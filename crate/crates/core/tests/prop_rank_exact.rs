use std::collections::BTreeSet;

use kgrid::exact_linalg::Field;
use kgrid::rank_exact::{
    dropped_segments, iota, is_rank_exact, project, rank_along, rank_invariant, segment_count, segments,
    spine_cells, strata_count, strata_index,
};
use kgrid::sampling::{random_poset_rep, random_split_ses, rng};
use kgrid::module_rep::monotone_import;
use kgrid::k_theory::k0_class;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

fn shape() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=3, 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn counts_and_inequality(shape in prop::collection::vec(0usize..=5, 1..=3)) {
        let segs = segment_count(&shape);
        let strata = strata_count(&shape);
        prop_assert_eq!(segs, segments(&shape).len());
        prop_assert_eq!(strata, strata_index(&shape).len());
        prop_assert!(strata <= segs);
        prop_assert_eq!(strata < segs, shape.iter().any(|&n| n >= 2));
        prop_assert_eq!(segs - strata, dropped_segments(&shape).len());
    }

    #[test]
    fn iota_is_injective(shape in shape()) {
        let images: BTreeSet<_> = strata_index(&shape).iter().map(|s| iota(s, &shape).unwrap()).collect();
        prop_assert_eq!(images.len(), strata_count(&shape));
        let dropped: BTreeSet<_> = dropped_segments(&shape).into_iter().collect();
        prop_assert!(images.is_disjoint(&dropped));
    }

    #[test]
    fn projection_selects_coordinates(shape in shape(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let rep = random_poset_rep(&mut r, Field::F3, &shape, 2);
        let rank = rank_invariant(&rep).unwrap();
        let class = project(&rank).unwrap();
        for (cell, value) in class.values() {
            let seg = iota(&spine_cells(cell), &shape).unwrap();
            prop_assert_eq!(*value, rank.get(&seg).unwrap() as i64);
        }
        // On vertices, the projected class agrees with the dimension vector.
        let k0 = k0_class(&monotone_import(&rep).unwrap());
        for (cell, value) in class.values() {
            if cell.dimension() == 0 {
                prop_assert_eq!(*value, k0.get(cell).unwrap());
            }
        }
    }

    #[test]
    fn rank_is_path_independent(shape in shape(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let rep = random_poset_rep(&mut r, Field::Q, &shape, 3);
        let segs = segments(&shape);
        for _ in 0..5 {
            let seg = &segs[r.gen_range(0..segs.len())];
            let mut steps = seg.axis_steps();
            let reference = rank_along(&rep, seg, &steps).unwrap();
            steps.shuffle(&mut r);
            prop_assert_eq!(rank_along(&rep, seg, &steps).unwrap(), reference);
        }
    }

    #[test]
    fn rank_adds_over_direct_sums(shape in shape(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_poset_rep(&mut r, Field::F2, &shape, 2);
        let b = random_poset_rep(&mut r, Field::F2, &shape, 2);
        let sum = rank_invariant(&a.direct_sum(&b).unwrap()).unwrap();
        prop_assert_eq!(sum, rank_invariant(&a).unwrap().add(&rank_invariant(&b).unwrap()).unwrap());
    }

    #[test]
    fn split_sequences_are_rank_exact(shape in shape(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let (phi, psi) = random_split_ses(&mut r, Field::F5, &shape).unwrap();
        prop_assert!(is_rank_exact(&phi, &psi).unwrap());
    }
}
