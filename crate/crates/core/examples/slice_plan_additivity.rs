// Slices spaces down to single strata with the stack planner and checks
// that dimension vectors re-assemble at every split.

use std::sync::Arc;

use kgrid::decomposition::{slice_plan, verify_additivity};
use kgrid::exact_linalg::Field;
use kgrid::grid_space::{CellSet, StratifiedGrid};
use kgrid::io::render_json;
use kgrid::module_rep::PersistenceModule;
use kgrid::sampling::{random_module, random_space, rng};

fn run_example() -> kgrid::Result<()> {
    let line = CellSet::hull(Arc::new(StratifiedGrid::integer(&[3])?));
    let plan = slice_plan(&line);
    for step in plan.steps() {
        println!(
            "slice {:?} of {} cells leaves {} components",
            step.slice.to_json_cells(),
            step.input.len(),
            step.remainder_components.len()
        );
    }
    print!("{}", render_json(&plan.to_json()));
    let constant = PersistenceModule::constant(line, Field::F2, 1);
    assert!(verify_additivity(&constant, &plan)?.passed());

    let mut r = rng(99);
    let grid = Arc::new(StratifiedGrid::integer(&[3, 3])?);
    for trial in 0..5 {
        let space = random_space(&mut r, &grid);
        let module = random_module(&mut r, &space, Field::F2, 3).module;
        let plan = slice_plan(&space);
        let report = verify_additivity(&module, &plan)?;
        println!(
            "trial {trial}: {} cells, {} steps, {} leaves, additivity {}",
            space.len(),
            report.steps.len(),
            plan.leaves().len(),
            if report.passed() { "holds" } else { "fails" }
        );
        assert!(report.passed() && plan.leaves_partition_root());
    }
    Ok(())
}

fn main() {
    run_example().expect("slice plan example");
}
