use std::sync::Arc;

use kgrid::grid_space::{Cell, CellSet, StratifiedGrid};
use kgrid::sampling::{random_convex_subset, rng};
use proptest::prelude::*;

fn shape() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=4, 1..=3)
}

fn hull(points: &[usize]) -> CellSet {
    CellSet::hull(Arc::new(StratifiedGrid::integer(points).unwrap()))
}

fn subset(set: &CellSet, mask: &[bool]) -> CellSet {
    let mut i = 0;
    set.filter(|_| {
        i += 1;
        mask[(i - 1) % mask.len()]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn counts_match_the_product_formula(points in shape()) {
        let h = hull(&points);
        let expected: usize = points.iter().map(|n| 2 * n - 1).product();
        prop_assert_eq!(h.len(), expected);
        prop_assert_eq!(h.strata_counts().iter().sum::<usize>(), expected);
        prop_assert_eq!(h.height().unwrap().height, *points.iter().max().unwrap());
    }

    #[test]
    fn proper_faces_drop_dimension(points in shape()) {
        for cell in hull(&points).iter() {
            for face in cell.proper_faces() {
                prop_assert!(face.dimension() < cell.dimension());
                prop_assert!(face.is_face_of(cell));
                for inner in face.proper_faces() {
                    prop_assert!(inner.is_face_of(cell));
                }
            }
        }
    }

    #[test]
    fn closure_is_idempotent_and_monotone(points in shape(), mask in prop::collection::vec(any::<bool>(), 1..20), extra in prop::collection::vec(any::<bool>(), 1..20)) {
        let h = hull(&points);
        let s = subset(&h, &mask);
        let t = s.union(&subset(&h, &extra)).unwrap();
        let cs = s.closure();
        prop_assert_eq!(cs.closure(), cs.clone());
        prop_assert!(cs.is_subset(&t.closure()));
        prop_assert!(cs.is_closed());
    }

    #[test]
    fn components_partition_the_complement(points in shape(), seed in any::<u64>()) {
        let h = hull(&points);
        let closed = random_convex_subset(&mut rng(seed), &h).closure();
        let rest = h.difference(&closed).unwrap();
        let comps = rest.connected_components();
        let total: usize = comps.iter().map(CellSet::len).sum();
        prop_assert_eq!(total, rest.len());
        let mut union = CellSet::empty(h.grid().clone());
        for c in &comps {
            prop_assert!(c.is_connected());
            prop_assert!(union.intersection(c).unwrap().is_empty());
            union = union.union(c).unwrap();
        }
        prop_assert_eq!(union, rest);
        prop_assert_eq!(closed.len() + total, h.len());
    }

    #[test]
    fn located_sample_points_return_their_cell(points in shape()) {
        let h = hull(&points);
        for cell in h.iter() {
            let q = h.grid().sample_point(cell);
            prop_assert_eq!(&h.grid().locate(&q).unwrap(), cell);
        }
        let _ = Cell::new(vec![0; points.len()]);
    }
}
