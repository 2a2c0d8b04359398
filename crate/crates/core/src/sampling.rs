//! Seeded generators of random test data: grids, face-convex supports,
//! modules with scrambled bases, automorphisms, poset representations,
//! split exact sequences and gradings of fixed complexes.
//!
//! Modules are direct sums of interval modules followed by a random basis
//! change at every cell, so they are valid by construction while their
//! generators look generic.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::exact_linalg::{Elem, Field, Matrix};
use crate::grid_space::{Cell, CellSet, StratifiedGrid};
use crate::homology_ingest::BifilteredComplex;
use crate::module_rep::{grid_points, interval_module, ModuleMorphism, PersistenceModule, PosetMorphism, PosetRep};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_elem(rng: &mut TestRng, field: Field) -> Elem {
    match field {
        Field::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        Field::Rational => field.from_i64(rng.gen_range(-3..=3)),
    }
}

pub fn random_unit(rng: &mut TestRng, field: Field) -> Elem {
    loop {
        let e = random_elem(rng, field);
        if !e.is_zero() {
            return e;
        }
    }
}

pub fn random_matrix(rng: &mut TestRng, field: Field, rows: usize, cols: usize) -> Matrix {
    let data = (0..rows * cols).map(|_| random_elem(rng, field)).collect();
    Matrix::from_elems(field, rows, cols, data).expect("sizes agree")
}

/// Rejection-samples an invertible `n x n` matrix.
pub fn random_invertible(rng: &mut TestRng, field: Field, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, field, n, n);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Integer grid with `1..=max_points` values per axis.
pub fn random_grid(rng: &mut TestRng, dim: usize, max_points: usize) -> Arc<StratifiedGrid> {
    let points: Vec<usize> = (0..dim).map(|_| rng.gen_range(1..=max_points)).collect();
    Arc::new(StratifiedGrid::integer(&points).expect("positive sizes"))
}

/// Cells of `space` that are faces of some seed.
fn closure_in(space: &CellSet, seeds: &[Cell]) -> CellSet {
    space.filter(|c| seeds.iter().any(|s| c.is_face_of(s)))
}

/// Cells of `space` having some seed as a face.
fn star_in(space: &CellSet, seeds: &[Cell]) -> CellSet {
    space.filter(|c| seeds.iter().any(|s| s.is_face_of(c)))
}

/// A random subset of `space` that is face-convex in it: a closure of random
/// cells, a star of random cells, or the intersection of the two.
pub fn random_convex_subset(rng: &mut TestRng, space: &CellSet) -> CellSet {
    let cells: Vec<Cell> = space.iter().cloned().collect();
    if cells.is_empty() {
        return space.clone();
    }
    let pick = |rng: &mut TestRng| -> Vec<Cell> {
        let k = rng.gen_range(1..=2.min(cells.len()));
        cells.choose_multiple(rng, k).cloned().collect()
    };
    match rng.gen_range(0..3) {
        0 => closure_in(space, &pick(rng)),
        1 => star_in(space, &pick(rng)),
        _ => {
            let closed = closure_in(space, &pick(rng));
            let open = star_in(space, &pick(rng));
            closed.intersection(&open).expect("same grid")
        }
    }
}

/// A nonempty face-convex subset of the hull of `grid`; the whole hull half the time.
pub fn random_space(rng: &mut TestRng, grid: &Arc<StratifiedGrid>) -> CellSet {
    let hull = CellSet::hull(grid.clone());
    if rng.gen_bool(0.5) {
        return hull;
    }
    loop {
        let s = random_convex_subset(rng, &hull);
        if !s.is_empty() {
            return s;
        }
    }
}

/// A module with a record of how it was built.
#[derive(Debug, Clone)]
pub struct RandomModule {
    pub module: PersistenceModule,
    /// Supports of the interval summands, grouped: summands in one group share a support.
    pub groups: Vec<(CellSet, usize)>,
    /// Basis change applied after summing, one invertible matrix per cell.
    pub basis: BTreeMap<Cell, Matrix>,
}

/// Direct sum of up to `max_summands` interval modules on convex supports,
/// with a random basis change. Per-cell dimensions stay below `max_summands + 1`.
pub fn random_module(rng: &mut TestRng, space: &CellSet, field: Field, max_summands: usize) -> RandomModule {
    let mut groups: Vec<(CellSet, usize)> = Vec::new();
    let mut remaining = rng.gen_range(0..=max_summands);
    while remaining > 0 {
        let copies = rng.gen_range(1..=remaining);
        groups.push((random_convex_subset(rng, space), copies));
        remaining -= copies;
    }
    let mut module = PersistenceModule::zero(space.clone(), field);
    for (support, copies) in &groups {
        let interval = interval_module(space, support, field).expect("convex support");
        for _ in 0..*copies {
            module = module.direct_sum(&interval).expect("same space");
        }
    }
    let basis: BTreeMap<Cell, Matrix> = space
        .iter()
        .map(|c| (c.clone(), random_invertible(rng, field, module.dim(c))))
        .collect();
    let module = module.change_basis(&basis).expect("invertible bases");
    RandomModule { module, groups, basis }
}

/// Automorphism acting by one constant invertible block per support group,
/// conjugated into the scrambled basis.
pub fn random_automorphism(rng: &mut TestRng, sample: &RandomModule) -> ModuleMorphism {
    let field = sample.module.field();
    let blocks: Vec<Matrix> = sample
        .groups
        .iter()
        .map(|(_, copies)| random_invertible(rng, field, *copies))
        .collect();
    let comps = sample
        .module
        .space()
        .iter()
        .map(|c| {
            let mut a = Matrix::zeros(field, 0, 0);
            for ((support, _), block) in sample.groups.iter().zip(&blocks) {
                if support.contains(c) {
                    a = a.direct_sum(block);
                }
            }
            let p = &sample.basis[c];
            let inv = p.inverse().expect("basis is invertible");
            (c.clone(), p.compose(&a).and_then(|m| m.compose(&inv)).expect("square blocks"))
        })
        .collect();
    ModuleMorphism::new(sample.module.clone(), sample.module.clone(), comps).expect("block automorphisms are natural")
}

/// Random box intervals summed and scrambled; on one axis, arbitrary chains.
pub fn random_poset_rep(rng: &mut TestRng, field: Field, shape: &[usize], max_dim: usize) -> PosetRep {
    if shape.len() == 1 && rng.gen_bool(0.5) {
        let dims: Vec<usize> = (0..=shape[0]).map(|_| rng.gen_range(0..=max_dim)).collect();
        let maps: Vec<Matrix> = dims.windows(2).map(|w| random_matrix(rng, field, w[1], w[0])).collect();
        return PosetRep::from_chain(field, &dims, &maps).expect("chains always commute");
    }
    let mut rep = PosetRep::zero(field, shape);
    for _ in 0..rng.gen_range(0..=max_dim) {
        let (lo, hi): (Vec<usize>, Vec<usize>) = shape
            .iter()
            .map(|&n| {
                let a = rng.gen_range(0..=n);
                (a, rng.gen_range(a..=n))
            })
            .unzip();
        let interval = PosetRep::interval(field, shape, &lo, &hi).expect("box inside shape");
        rep = rep.direct_sum(&interval).expect("same shape");
    }
    let bases: BTreeMap<Vec<usize>, Matrix> = grid_points(shape)
        .into_iter()
        .map(|p| {
            let n = rep.dim(&p);
            (p, random_invertible(rng, field, n))
        })
        .collect();
    rep.change_basis(&bases).expect("invertible bases")
}

/// `F -> G -> H` with `G = F + H` written in a scrambled basis.
pub fn random_split_ses(rng: &mut TestRng, field: Field, shape: &[usize]) -> Result<(PosetMorphism, PosetMorphism)> {
    let first = random_poset_rep(rng, field, shape, 2);
    let second = random_poset_rep(rng, field, shape, 2);
    let inc = PosetMorphism::inclusion_first(&first, &second)?;
    let proj = PosetMorphism::projection_second(&first, &second)?;
    let middle = inc.target().clone();
    let bases: BTreeMap<Vec<usize>, Matrix> = middle
        .points()
        .into_iter()
        .map(|p| {
            let n = middle.dim(&p);
            (p, random_invertible(rng, field, n))
        })
        .collect();
    let scrambled = middle.change_basis(&bases)?;
    let mut phi = BTreeMap::new();
    let mut psi = BTreeMap::new();
    for p in middle.points() {
        let inv = bases[&p].inverse().expect("invertible");
        phi.insert(p.clone(), bases[&p].compose(inc.component(&p))?);
        psi.insert(p.clone(), proj.component(&p).compose(&inv)?);
    }
    Ok((
        PosetMorphism::new(first, scrambled.clone(), phi)?,
        PosetMorphism::new(scrambled, second, psi)?,
    ))
}

/// Grades a fixed simplex list at random, entering every simplex no earlier
/// than its faces. `simplices` must list faces before cofaces.
pub fn random_grading(rng: &mut TestRng, simplices: &[Vec<usize>], shape: &[usize]) -> Result<BifilteredComplex> {
    let mut grades: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for s in simplices {
        let mut grade: Vec<usize> = shape.iter().map(|&n| rng.gen_range(0..=n)).collect();
        if s.len() > 1 {
            for i in 0..s.len() {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
                if let Some(g) = grades.get(&face) {
                    for (a, b) in grade.iter_mut().zip(g) {
                        *a = (*a).max(*b);
                    }
                }
            }
        }
        grades.insert(s.clone(), grade);
    }
    BifilteredComplex::new(shape.to_vec(), grades.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::k_theory::{k0_class, k1_class};

    #[test]
    fn generated_modules_are_valid() {
        let mut r = rng(7);
        for _ in 0..30 {
            let dim = r.gen_range(1..=3);
            let grid = random_grid(&mut r, dim, 3);
            let space = random_space(&mut r, &grid);
            let field = if r.gen_bool(0.5) { Field::F2 } else { Field::Q };
            let sample = random_module(&mut r, &space, field, 3);
            assert!(sample.module.is_valid(), "{:?}", sample.module.validate());
            assert!(sample.module.dims().values().all(|&d| d <= 3));
            let auto = random_automorphism(&mut r, &sample);
            assert!(auto.is_automorphism());
            assert!(k1_class(&auto).is_ok());
            assert_eq!(k0_class(&sample.module).space(), &space);
        }
    }

    #[test]
    fn generated_reps_and_sequences_are_valid() {
        let mut r = rng(11);
        for shape in [vec![2], vec![1, 2], vec![3]] {
            for _ in 0..5 {
                assert!(random_poset_rep(&mut r, Field::F5, &shape, 3).is_valid());
                assert!(random_split_ses(&mut r, Field::F2, &shape).is_ok());
            }
        }
    }

    #[test]
    fn gradings_respect_faces() {
        let mut r = rng(3);
        let simplices = vec![vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 1, 2]];
        for _ in 0..10 {
            assert!(random_grading(&mut r, &simplices, &[2, 2]).is_ok());
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let grid = Arc::new(StratifiedGrid::integer(&[3, 3]).unwrap());
        let space = CellSet::hull(grid);
        let a = random_module(&mut rng(5), &space, Field::Q, 3).module;
        let b = random_module(&mut rng(5), &space, Field::Q, 3).module;
        assert_eq!(a, b);
    }
}
