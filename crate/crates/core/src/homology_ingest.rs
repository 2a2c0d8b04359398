//! One-critical multi-filtered simplicial complexes and their homology
//! representations.
//!
//! Chains at every grid point are written in the coordinates of all
//! simplices of the complex, so inclusions are identities on chain vectors
//! and an induced map only re-expresses a cycle in the target's basis.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::exact_linalg::{Field, Matrix};
use crate::module_rep::{grid_points, monotone_import, PersistenceModule, PosetRep};

/// A simplex with the grid point where it enters the filtration.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GradedSimplex {
    pub grade: Vec<usize>,
    pub verts: Vec<usize>,
}

impl GradedSimplex {
    pub fn dimension(&self) -> usize {
        self.verts.len() - 1
    }
}

/// Simplices are kept sorted by grade, then by vertex tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BifilteredComplex {
    shape: Vec<usize>,
    simplices: Vec<GradedSimplex>,
}

fn below(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn facets_of(verts: &[usize]) -> Vec<Vec<usize>> {
    if verts.len() < 2 {
        return Vec::new();
    }
    (0..verts.len())
        .map(|i| verts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect())
        .collect()
}

impl BifilteredComplex {
    /// Validates and sorts `(verts, grade)` pairs. Vertex tuples are sorted
    /// here; a repeated simplex is rejected as multi-critical.
    pub fn new(shape: Vec<usize>, simplices: Vec<(Vec<usize>, Vec<usize>)>) -> Result<BifilteredComplex> {
        if shape.is_empty() {
            return Err(Error::InvalidComplex("shape has no axes".into()));
        }
        let mut grades: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (mut verts, grade) in simplices {
            verts.sort_unstable();
            if verts.is_empty() || verts.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!("bad vertex tuple {verts:?}")));
            }
            if grade.len() != shape.len() || !below(&grade, &shape) {
                return Err(Error::InvalidComplex(format!("grade {grade:?} outside shape {shape:?}")));
            }
            if grades.insert(verts.clone(), grade).is_some() {
                return Err(Error::InvalidComplex(format!("simplex {verts:?} graded twice")));
            }
        }
        for (verts, grade) in &grades {
            for face in facets_of(verts) {
                let face_grade = grades
                    .get(&face)
                    .ok_or_else(|| Error::InvalidComplex(format!("face {face:?} of {verts:?} is missing")))?;
                if !below(face_grade, grade) {
                    return Err(Error::InvalidComplex(format!("face {face:?} enters after {verts:?}")));
                }
            }
        }
        let mut simplices: Vec<GradedSimplex> =
            grades.into_iter().map(|(verts, grade)| GradedSimplex { grade, verts }).collect();
        simplices.sort();
        Ok(BifilteredComplex { shape, simplices })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn simplices(&self) -> &[GradedSimplex] {
        &self.simplices
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.simplices.iter().flat_map(|s| s.verts.iter().copied()).collect()
    }

    pub fn max_dimension(&self) -> Option<usize> {
        self.simplices.iter().map(GradedSimplex::dimension).max()
    }

    /// Same simplices, all entering at the origin.
    pub fn regraded_to_origin(&self) -> BifilteredComplex {
        let mut out = self.clone();
        for s in &mut out.simplices {
            s.grade = vec![0; self.shape.len()];
        }
        out.simplices.sort();
        out
    }

    fn check_point(&self, p: &[usize]) -> Result<()> {
        if p.len() != self.shape.len() || !below(p, &self.shape) {
            return Err(Error::PointOutOfRange(format!("{p:?} outside shape {:?}", self.shape)));
        }
        Ok(())
    }

    /// Vertex tuples of the simplices present at `p`, in filtration order.
    pub fn complex_at(&self, p: &[usize]) -> Result<Vec<Vec<usize>>> {
        self.check_point(p)?;
        Ok(self
            .simplices
            .iter()
            .filter(|s| below(&s.grade, p))
            .map(|s| s.verts.clone())
            .collect())
    }

    /// Simplices of dimension `k` in filtration order, with their grades.
    fn of_dimension(&self, k: usize) -> Vec<&GradedSimplex> {
        self.simplices.iter().filter(|s| s.dimension() == k).collect()
    }
}

/// Boundary matrix from the present `k`-simplices into all `(k-1)`-simplices.
fn boundary(field: Field, rows: &[&GradedSimplex], cols: &[&GradedSimplex]) -> Matrix {
    let index: BTreeMap<&[usize], usize> = rows.iter().enumerate().map(|(i, s)| (s.verts.as_slice(), i)).collect();
    let mut m = Matrix::zeros(field, rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for (i, face) in facets_of(&s.verts).iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            m[(index[face.as_slice()], j)] = field.from_i64(sign);
        }
    }
    m
}

/// Embeds vectors indexed by `present` into coordinates indexed by `all`.
fn embed(field: Field, vectors: &Matrix, present: &[usize], all: usize) -> Matrix {
    let mut out = Matrix::zeros(field, all, vectors.cols());
    for (r, &i) in present.iter().enumerate() {
        for j in 0..vectors.cols() {
            out[(i, j)] = vectors[(r, j)].clone();
        }
    }
    out
}

fn independent_columns(m: &Matrix) -> Matrix {
    let pivots = m.echelon().pivots;
    m.submatrix(&(0..m.rows()).collect::<Vec<_>>(), &pivots)
}

/// Homology basis at one grid point, in ambient `k`-chain coordinates.
struct PointHomology {
    /// Representative cycles, one column each.
    reps: Matrix,
    /// `[reps | boundary basis]`, a basis of the cycle space.
    cycle_basis: Matrix,
}

fn point_homology(complex: &BifilteredComplex, k: usize, field: Field, p: &[usize]) -> Result<PointHomology> {
    let chains = complex.of_dimension(k);
    let present: Vec<usize> = (0..chains.len()).filter(|&i| below(&chains[i].grade, p)).collect();
    let present_chains: Vec<&GradedSimplex> = present.iter().map(|&i| chains[i]).collect();

    let cycles = if k == 0 {
        Matrix::identity(field, present.len())
    } else {
        boundary(field, &complex.of_dimension(k - 1), &present_chains).nullspace()
    };
    let cycles = embed(field, &cycles, &present, chains.len());

    let higher: Vec<&GradedSimplex> =
        complex.of_dimension(k + 1).into_iter().filter(|s| below(&s.grade, p)).collect();
    let bounds = independent_columns(&boundary(field, &chains, &higher));

    let stacked = bounds.hstack(&cycles)?;
    let pivots = stacked.echelon().pivots;
    let rep_cols: Vec<usize> = pivots.into_iter().filter(|&j| j >= bounds.cols()).map(|j| j - bounds.cols()).collect();
    let reps = cycles.submatrix(&(0..cycles.rows()).collect::<Vec<_>>(), &rep_cols);
    let cycle_basis = reps.hstack(&bounds)?;
    Ok(PointHomology { reps, cycle_basis })
}

/// Degree-`k` homology over `field` as a representation of the grid poset.
pub fn homology_functor(complex: &BifilteredComplex, k: usize, field: Field) -> Result<PosetRep> {
    let shape = complex.shape.clone();
    let points = grid_points(&shape);
    let mut per_point = BTreeMap::new();
    for p in &points {
        per_point.insert(p.clone(), point_homology(complex, k, field, p)?);
    }
    let dims = per_point.iter().map(|(p, h)| (p.clone(), h.reps.cols())).collect();
    let mut maps = BTreeMap::new();
    for p in &points {
        for axis in 0..shape.len() {
            if p[axis] == shape[axis] {
                continue;
            }
            let mut q = p.clone();
            q[axis] += 1;
            let (src, tgt) = (&per_point[p], &per_point[&q]);
            let coords = tgt
                .cycle_basis
                .solve(&src.reps)?
                .ok_or_else(|| Error::InvalidComplex(format!("a cycle at {p:?} is not a cycle at {q:?}")))?;
            let rows: Vec<usize> = (0..tgt.reps.cols()).collect();
            let cols: Vec<usize> = (0..src.reps.cols()).collect();
            maps.insert((p.clone(), axis), coords.submatrix(&rows, &cols));
        }
    }
    PosetRep::new(shape, field, dims, maps)
}

/// `dim H_k` at `p`, from ranks of boundary matrices on the simplices present there.
pub fn betti_number(complex: &BifilteredComplex, k: usize, field: Field, p: &[usize]) -> Result<usize> {
    complex.check_point(p)?;
    let present = |d: usize| -> Vec<&GradedSimplex> {
        complex.of_dimension(d).into_iter().filter(|s| below(&s.grade, p)).collect()
    };
    let chains = present(k);
    let rank_k = if k == 0 { 0 } else { boundary(field, &present(k - 1), &chains).rank() };
    let rank_up = boundary(field, &chains, &present(k + 1)).rank();
    Ok(chains.len() - rank_k - rank_up)
}

/// At every grid point, the alternating sum of Betti numbers against the
/// alternating count of simplices. Returns `(point, homology side, simplex side)`.
pub fn euler_characteristics(complex: &BifilteredComplex, field: Field) -> Result<Vec<(Vec<usize>, i64, i64)>> {
    let top = complex.max_dimension().unwrap_or(0);
    grid_points(&complex.shape)
        .into_iter()
        .map(|p| {
            let sign = |d: usize| if d % 2 == 0 { 1 } else { -1 };
            let mut homology = 0i64;
            for k in 0..=top {
                homology += sign(k) * betti_number(complex, k, field, &p)? as i64;
            }
            let simplices = complex
                .simplices
                .iter()
                .filter(|s| below(&s.grade, &p))
                .map(|s| sign(s.dimension()))
                .sum();
            Ok((p, homology, simplices))
        })
        .collect()
}

pub fn ingest(complex: &BifilteredComplex, k: usize, field: Field) -> Result<PersistenceModule> {
    monotone_import(&homology_functor(complex, k, field)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::k_theory::k0_class;

    fn hollow_then_filled() -> BifilteredComplex {
        let z = vec![0, 0];
        BifilteredComplex::new(
            vec![1, 1],
            vec![
                (vec![0], z.clone()),
                (vec![1], z.clone()),
                (vec![2], z.clone()),
                (vec![0, 1], z.clone()),
                (vec![1, 2], z.clone()),
                (vec![0, 2], z),
                (vec![0, 1, 2], vec![1, 1]),
            ],
        )
        .unwrap()
    }

    fn merging() -> BifilteredComplex {
        BifilteredComplex::new(
            vec![1, 1],
            vec![(vec![0], vec![0, 0]), (vec![1], vec![0, 0]), (vec![0, 1], vec![1, 0])],
        )
        .unwrap()
    }

    #[test]
    fn validation() {
        assert!(BifilteredComplex::new(vec![1], vec![(vec![0, 1], vec![0])]).is_err());
        assert!(BifilteredComplex::new(vec![1], vec![(vec![0], vec![1]), (vec![1], vec![0]), (vec![0, 1], vec![0])]).is_err());
        assert!(BifilteredComplex::new(vec![1], vec![(vec![0], vec![0]), (vec![0], vec![1])]).is_err());
        assert!(BifilteredComplex::new(vec![1], vec![(vec![0], vec![2])]).is_err());
    }

    #[test]
    fn complex_at_examples() {
        let k = hollow_then_filled();
        assert_eq!(k.complex_at(&[1, 0]).unwrap().len(), 6);
        assert_eq!(k.complex_at(&[1, 1]).unwrap().len(), 7);
        let empty = BifilteredComplex::new(vec![1, 1], vec![]).unwrap();
        assert!(empty.complex_at(&[1, 1]).unwrap().is_empty());
        assert!(k.complex_at(&[2, 0]).is_err());
    }

    #[test]
    fn single_vertex() {
        let k = BifilteredComplex::new(vec![1, 1], vec![(vec![7], vec![0, 0])]).unwrap();
        let rep = homology_functor(&k, 0, Field::F2).unwrap();
        assert!(rep.dims().values().all(|&d| d == 1));
        assert!(rep.maps().values().all(|m| *m == Matrix::identity(Field::F2, 1)));
        assert!(k0_class(&ingest(&k, 0, Field::F2).unwrap()).vector().iter().all(|&v| v == 1));
    }

    #[test]
    fn hollow_triangle_loop() {
        let k = hollow_then_filled();
        for field in [Field::F2, Field::Q] {
            let rep = homology_functor(&k, 1, field).unwrap();
            let dims: Vec<usize> = rep.dims().values().copied().collect();
            assert_eq!(dims, vec![1, 1, 1, 0]);
            assert_eq!(rep.edge_map(&[0, 0], 0).unwrap(), &Matrix::identity(field, 1));
            assert_eq!(rep.edge_map(&[0, 0], 1).unwrap(), &Matrix::identity(field, 1));
            let module = ingest(&k, 1, field).unwrap();
            for (cell, &d) in module.dims() {
                let corner = cell.min_corner();
                assert_eq!(d, usize::from(corner != vec![1, 1]), "{cell}");
            }
        }
    }

    #[test]
    fn merging_components() {
        let rep = homology_functor(&merging(), 0, Field::F2).unwrap();
        let dims: Vec<usize> = rep.dims().values().copied().collect();
        assert_eq!(dims, vec![2, 2, 1, 1]);
        assert_eq!(rep.edge_map(&[0, 0], 0).unwrap().rank(), 1);
        assert_eq!(rep.edge_map(&[0, 0], 1).unwrap().rank(), 2);
    }

    #[test]
    fn high_degree_is_zero() {
        assert!(ingest(&hollow_then_filled(), 5, Field::F2).unwrap().dims().values().all(|&d| d == 0));
    }

    #[test]
    fn euler_characteristic_matches() {
        for k in [hollow_then_filled(), merging()] {
            assert!(euler_characteristics(&k, Field::Q).unwrap().iter().all(|(_, h, s)| h == s));
        }
    }

    #[test]
    fn regrading_gives_a_constant_module() {
        let m = ingest(&hollow_then_filled().regraded_to_origin(), 0, Field::F2).unwrap();
        assert!(m.dims().values().all(|&d| d == 1));
    }
}
