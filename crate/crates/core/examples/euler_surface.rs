// Euler surface of a two-parameter interval module supported on one closed
// square, sampled on a uniform rational grid and evaluated pointwise.

use std::sync::Arc;

use kgrid::exact_linalg::parse_rational;
use kgrid::exact_linalg::Field;
use kgrid::grid_space::{Cell, CellSet, StratifiedGrid};
use kgrid::k_theory::{euler_eval, euler_export};
use kgrid::module_rep::interval_module;

fn run_example() -> kgrid::Result<()> {
    let hull = CellSet::hull(Arc::new(StratifiedGrid::integer(&[3, 3])?));
    let square = CellSet::new(hull.grid().clone(), [Cell::new(vec![1, 1])])?.closure();
    let module = interval_module(&hull, &square, Field::Q)?;
    let table = euler_export(&module, 5)?;
    print!("{}", table.to_csv());

    let inside = [parse_rational("1/2")?, parse_rational("1")?];
    let outside = [parse_rational("3/2")?, parse_rational("1/3")?];
    println!("value at (1/2, 1): {}", euler_eval(&module, &inside)?);
    println!("value at (3/2, 1/3): {}", euler_eval(&module, &outside)?);
    assert_eq!(euler_eval(&module, &inside)?, 1);
    assert_eq!(euler_eval(&module, &outside)?, 0);
    Ok(())
}

fn main() {
    run_example().expect("euler example");
}
