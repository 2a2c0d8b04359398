// Counts the strata of a 7 x 5 grid, then checks an L-shaped closed region:
// manifold test, height, and a closed slice through it.

use std::sync::Arc;

use kgrid::decomposition::hyperplane_slice;
use kgrid::grid_space::{build_grid, Cell, CellSet};
use num_rational::BigRational;

fn integer_axis(n: i64) -> Vec<BigRational> {
    (0..n).map(|v| BigRational::from_integer(v.into())).collect()
}

fn run_example() -> kgrid::Result<()> {
    let grid = Arc::new(build_grid(vec![integer_axis(7), integer_axis(5)])?);
    let hull = CellSet::hull(grid.clone());
    let counts = hull.strata_counts();
    println!("strata by dimension: {counts:?}, total {}", hull.len());
    assert_eq!(counts, vec![35, 58, 24]);
    assert_eq!(hull.len(), 117);

    // Three squares along the bottom row, then a column of four going up.
    let squares = [[1, 1], [3, 1], [5, 1], [7, 1], [7, 3], [7, 5], [7, 7]];
    let l_shape = CellSet::new(grid, squares.iter().map(|s| Cell::new(s.to_vec())))?.closure();
    let check = l_shape.is_cubical_manifold(2);
    let height = l_shape.height()?;
    println!(
        "L-shape: {} cells, manifold: {}, height {} on axes {:?}",
        l_shape.len(),
        check.is_manifold,
        height.height,
        height.realizing_axes
    );
    assert!(check.is_manifold);

    let slice = hyperplane_slice(&l_shape, 1, 1)?;
    println!("slice at y = 1: {} cells, closed: {}", slice.len(), slice.is_closed_in(&l_shape));
    assert!(slice.is_closed_in(&l_shape));
    assert!(slice.is_cubical_manifold(1).is_manifold);
    Ok(())
}

fn main() {
    run_example().expect("census example");
}
