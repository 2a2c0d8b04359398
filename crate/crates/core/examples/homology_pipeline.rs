// From a bifiltered simplicial complex on disk to a homology
// representation, its entrance-path module, and dimension vectors.

use std::path::Path;

use kgrid::exact_linalg::Field;
use kgrid::homology_ingest::{euler_characteristics, homology_functor, ingest};
use kgrid::io::{complex_from_json, parse_json};
use kgrid::k_theory::k0_class;

fn run_example() -> kgrid::Result<()> {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
    for name in ["single_vertex.json", "hollow_triangle.json", "merging_components.json"] {
        let text = std::fs::read_to_string(data.join(name)).expect("bundled data file");
        let complex = complex_from_json(&parse_json(&text)?)?;
        println!("{name}: {} simplices on shape {:?}", complex.simplices().len(), complex.shape());
        for k in 0..=complex.max_dimension().unwrap_or(0) {
            let rep = homology_functor(&complex, k, Field::F2)?;
            let module = ingest(&complex, k, Field::F2)?;
            println!("  H{k}: dims {:?}, k0 {:?}", rep.dims().values().collect::<Vec<_>>(), k0_class(&module).vector());
            assert!(module.is_valid());
        }
        let euler = euler_characteristics(&complex, Field::F2)?;
        assert!(euler.iter().all(|(_, h, s)| h == s));
    }
    Ok(())
}

fn main() {
    run_example().expect("homology example");
}
