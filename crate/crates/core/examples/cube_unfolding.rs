// The boundary of the 3-cube, its facet adjacency graph, the cut set of
// every path unfolding, and a module split along interior, cut and rest.

use kgrid::decomposition::{cube_hull, cube_split_check, facet_dual_graph, hamiltonian_paths, ridge_cut_set};
use kgrid::exact_linalg::Field;
use kgrid::module_rep::PersistenceModule;
use kgrid::sampling::{random_module, rng};

fn run_example() -> kgrid::Result<()> {
    let graph = facet_dual_graph(3)?;
    let paths = hamiltonian_paths(&graph);
    println!(
        "{} facets, {} ridges, {} directed Hamiltonian paths",
        graph.facets.len(),
        graph.ridges.len(),
        paths.len()
    );
    for path in &paths {
        let cut = ridge_cut_set(&graph, path)?;
        assert_eq!(cut.cut_ridges.len(), 7);
        assert!(cut.cells.is_closed() && cut.cells.is_connected());
    }
    let first = ridge_cut_set(&graph, &paths[0])?;
    println!(
        "path {:?}: cut ridges {:?}, cut set of {} cells",
        paths[0],
        first.cut_ridges.iter().map(ToString::to_string).collect::<Vec<_>>(),
        first.cells.len()
    );

    let hull = cube_hull(3)?;
    let scrambled = random_module(&mut rng(31), &hull, Field::Q, 2).module;
    let module = scrambled.direct_sum(&PersistenceModule::constant(hull, Field::Q, 1))?;
    let report = cube_split_check(&paths[0], &module)?;
    println!(
        "interior {:?}, cut total {}, remainder components {}, re-assembly {}",
        report.interior.vector(),
        report.cut.vector().iter().sum::<i64>(),
        report.remainder.len(),
        report.passed
    );
    assert!(report.passed);
    Ok(())
}

fn main() {
    run_example().expect("cube example");
}
