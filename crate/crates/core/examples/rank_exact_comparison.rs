// Segments and strata of the poset [2], the spine injection, rank-exactness
// of a non-split extension, and where projected ranks and dimension
// vectors part ways.

use kgrid::exact_linalg::{Field, Matrix};
use kgrid::module_rep::{PosetMorphism, PosetRep};
use kgrid::rank_exact::{compare, dropped_segments, iota, rank_exactness, segments, strata_index};

fn run_example() -> kgrid::Result<()> {
    let shape = [2];
    println!("{} segments, {} strata", segments(&shape).len(), strata_index(&shape).len());
    for stratum in strata_index(&shape) {
        println!("  {} -> {}", stratum[0], iota(&stratum, &shape)?);
    }
    let dropped = dropped_segments(&shape);
    println!("not in the image: {}", dropped[0]);
    assert_eq!(dropped.len(), 1);

    let f = Field::F2;
    let sub = PosetRep::interval(f, &[1], &[1], &[1])?;
    let mid = PosetRep::interval(f, &[1], &[0], &[1])?;
    let quo = PosetRep::interval(f, &[1], &[0], &[0])?;
    let phi = [(vec![0], Matrix::zeros(f, 1, 0)), (vec![1], Matrix::identity(f, 1))];
    let psi = [(vec![0], Matrix::identity(f, 1)), (vec![1], Matrix::zeros(f, 0, 1))];
    let phi = PosetMorphism::new(sub, mid.clone(), phi.into_iter().collect())?;
    let psi = PosetMorphism::new(mid, quo, psi.into_iter().collect())?;
    let report = rank_exactness(&phi, &psi)?;
    for (seg, g, sum) in &report.failures {
        println!("not rank-exact at {seg}: Rk G = {g}, Rk F + Rk H = {sum}");
    }
    assert!(!report.exact);

    let chain = PosetRep::from_chain(f, &[1, 1, 0], &[Matrix::identity(f, 1), Matrix::zeros(f, 0, 1)])?;
    let c = compare(&chain)?;
    println!("projected {:?}", c.projected.vector());
    println!("k0        {:?}", c.k0.vector());
    println!("equal: {}, differing at {:?}", c.equal, c.differing.iter().map(ToString::to_string).collect::<Vec<_>>());
    assert!(!c.equal);
    Ok(())
}

fn main() {
    run_example().expect("rank comparison example");
}
