// Modules on the line that point in no fixed direction: intervals on open
// and half-open supports, extension by zero, and a pointwise exact
// sequence that is not split.

use std::collections::BTreeMap;
use std::sync::Arc;

use kgrid::exact_linalg::{Field, Matrix};
use kgrid::grid_space::{Cell, CellSet, StratifiedGrid};
use kgrid::k_theory::k0_class;
use kgrid::module_rep::{check_ses, interval_module, monotone_import, ModuleMorphism, PosetRep};

fn run_example() -> kgrid::Result<()> {
    let line = CellSet::hull(Arc::new(StratifiedGrid::integer(&[4])?));
    let cell = |c: usize| Cell::new(vec![c]);

    // An open edge flanked by two closed vertices: the value on the open
    // edge maps to both of its endpoints.
    let zigzag = interval_module(&line, &line.filter(|c| (2..=4).contains(&c.coords()[0])), Field::F2)?;
    println!("zig-zag interval dims: {:?}", k0_class(&zigzag).vector());
    println!("generator (3)>(2): {:?}", zigzag.gen(&cell(3), &cell(2)).map(Matrix::shape));

    let open = CellSet::new(line.grid().clone(), [cell(3)])?;
    let on_open = interval_module(&open, &open, Field::F2)?;
    let extended = on_open.extend_by_zero(&line)?;
    assert_eq!(extended.restrict(&open)?, on_open);
    println!("open-edge module extended by zero: {:?}", k0_class(&extended).vector());

    let f = Field::F2;
    let one = || Matrix::identity(f, 1);
    let sub = monotone_import(&PosetRep::from_chain(f, &[0, 1], &[Matrix::zeros(f, 1, 0)])?)?;
    let mid = monotone_import(&PosetRep::from_chain(f, &[1, 1], &[one()])?)?;
    let quo = monotone_import(&PosetRep::from_chain(f, &[1, 0], &[Matrix::zeros(f, 0, 1)])?)?;
    let mut phi = BTreeMap::new();
    let mut psi = BTreeMap::new();
    for c in mid.space().iter() {
        phi.insert(c.clone(), if sub.dim(c) == 1 { one() } else { Matrix::zeros(f, 1, 0) });
        psi.insert(c.clone(), if quo.dim(c) == 1 { one() } else { Matrix::zeros(f, 0, 1) });
    }
    let phi = ModuleMorphism::new(sub.clone(), mid.clone(), phi)?;
    let psi = ModuleMorphism::new(mid.clone(), quo.clone(), psi)?;
    let exact = check_ses(&phi, &psi)?;
    println!("0 -> I[1,1] -> I[0,1] -> I[0,0] -> 0 pointwise exact: {exact}");
    assert!(exact);
    assert_eq!(k0_class(&mid), k0_class(&sub).add(&k0_class(&quo))?);
    Ok(())
}

fn main() {
    run_example().expect("zig-zag example");
}
