// Dimension vectors and determinant classes. The dimension vector adds
// over direct sums; the determinant class turns composition of
// automorphisms into a cellwise product of units.

use std::sync::Arc;

use kgrid::exact_linalg::Field;
use kgrid::grid_space::{CellSet, StratifiedGrid};
use kgrid::k_theory::{k0_class, k1_class};
use kgrid::module_rep::{interval_module, ModuleMorphism};
use kgrid::sampling::{random_automorphism, random_module, rng};

fn run_example() -> kgrid::Result<()> {
    let line = CellSet::hull(Arc::new(StratifiedGrid::integer(&[3])?));
    let full = interval_module(&line, &line, Field::F2)?;
    let left = interval_module(&line, &line.filter(|c| c.coords()[0] <= 1), Field::F2)?;
    let sum = full.direct_sum(&left)?;
    println!("k0(full)      = {:?}", k0_class(&full).vector());
    println!("k0(left)      = {:?}", k0_class(&left).vector());
    println!("k0(full+left) = {:?}", k0_class(&sum).vector());
    assert_eq!(k0_class(&sum), k0_class(&full).add(&k0_class(&left))?);

    let f5 = Field::F5;
    let m = interval_module(&line, &line, f5)?;
    let three = k1_class(&ModuleMorphism::scalar(&m, &f5.from_i64(3)))?;
    println!("k1(3 * id) over F5 = {}", three.to_json());
    assert!(k1_class(&ModuleMorphism::identity(&m))?.is_identity());

    let square = CellSet::hull(Arc::new(StratifiedGrid::integer(&[2, 2])?));
    let mut r = rng(2024);
    let sample = random_module(&mut r, &square, Field::Q, 3);
    let (a, b) = (random_automorphism(&mut r, &sample), random_automorphism(&mut r, &sample));
    let composite = k1_class(&a.after(&b)?)?;
    let product = k1_class(&a)?.mul(&k1_class(&b)?)?;
    println!("k1(a after b) over Q = {}", composite.to_json());
    assert_eq!(composite, product);
    Ok(())
}

fn main() {
    run_example().expect("k-theory example");
}
