//! Persistence modules as representations of the combinatorial entrance path
//! category of a grid cell set.
//!
//! A module stores a vector space dimension on every cell and a generator
//! matrix for every codimension-one face pair `upper -> lower`; all other
//! entrance morphisms are composites of generators. Functoriality reduces to
//! commuting diamonds: between a cell and a codimension-two face of it there
//! are exactly two intermediate cells.
//!
//! Module spaces must be face-convex in the grid hull (closed sets, open sets
//! and their intersections all qualify). On such spaces every cover relation
//! of the face order is a codimension-one pair, so the generators above
//! present the full representation.

mod morphism;
mod poset;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use morphism::{check_ses, ModuleMorphism};
pub use poset::{grid_points, PosetMorphism, PosetRep};

use crate::error::{Error, Result};
use crate::exact_linalg::{Field, Matrix};
use crate::grid_space::{Cell, CellSet, StratifiedGrid};

/// A rule broken by a would-be module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SpaceNotConvex(String),
    MissingDim(Cell),
    StrayDim(Cell),
    MissingGen { upper: Cell, lower: Cell },
    StrayGen { upper: Cell, lower: Cell },
    GenShape { upper: Cell, lower: Cell, expected: (usize, usize), found: (usize, usize) },
    GenField { upper: Cell, lower: Cell },
    Diamond { upper: Cell, lower: Cell },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SpaceNotConvex(why) => write!(f, "space not convex: {why}"),
            Violation::MissingDim(c) => write!(f, "missing dim at {c}"),
            Violation::StrayDim(c) => write!(f, "dim given for {c} outside the space"),
            Violation::MissingGen { upper, lower } => write!(f, "missing gen {upper}>{lower}"),
            Violation::StrayGen { upper, lower } => {
                write!(f, "gen {upper}>{lower} is not a codimension-one pair of the space")
            }
            Violation::GenShape { upper, lower, expected, found } => write!(
                f,
                "gen {upper}>{lower} has shape {}x{}, expected {}x{}",
                found.0, found.1, expected.0, expected.1
            ),
            Violation::GenField { upper, lower } => write!(f, "gen {upper}>{lower} is over the wrong field"),
            Violation::Diamond { upper, lower } => {
                write!(f, "diamond {upper}>{lower} does not commute")
            }
        }
    }
}

/// A representation of the entrance path category of `space`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersistenceModule {
    space: CellSet,
    field: Field,
    dims: BTreeMap<Cell, usize>,
    gens: BTreeMap<(Cell, Cell), Matrix>,
}

impl PersistenceModule {
    /// Assembles a module without checking it; see [`PersistenceModule::validate`].
    pub fn from_parts(
        space: CellSet,
        field: Field,
        dims: BTreeMap<Cell, usize>,
        gens: BTreeMap<(Cell, Cell), Matrix>,
    ) -> PersistenceModule {
        PersistenceModule { space, field, dims, gens }
    }

    /// Assembles a module and rejects it if any violation is found.
    pub fn new(
        space: CellSet,
        field: Field,
        dims: BTreeMap<Cell, usize>,
        gens: BTreeMap<(Cell, Cell), Matrix>,
    ) -> Result<PersistenceModule> {
        let m = PersistenceModule::from_parts(space, field, dims, gens);
        m.ensure_valid()?;
        Ok(m)
    }

    /// The zero module on a space.
    pub fn zero(space: CellSet, field: Field) -> PersistenceModule {
        let dims = space.iter().map(|c| (c.clone(), 0)).collect();
        let gens = codim1_pairs(&space)
            .into_iter()
            .map(|p| (p, Matrix::zeros(field, 0, 0)))
            .collect();
        PersistenceModule { space, field, dims, gens }
    }

    /// Constant module: `F^rank` on every cell with identity generators.
    pub fn constant(space: CellSet, field: Field, rank: usize) -> PersistenceModule {
        let dims = space.iter().map(|c| (c.clone(), rank)).collect();
        let gens = codim1_pairs(&space)
            .into_iter()
            .map(|p| (p, Matrix::identity(field, rank)))
            .collect();
        PersistenceModule { space, field, dims, gens }
    }

    pub fn space(&self) -> &CellSet {
        &self.space
    }

    pub fn grid(&self) -> &Arc<StratifiedGrid> {
        self.space.grid()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &BTreeMap<Cell, usize> {
        &self.dims
    }

    pub fn gens(&self) -> &BTreeMap<(Cell, Cell), Matrix> {
        &self.gens
    }

    /// Dimension at a cell; zero off the space.
    pub fn dim(&self, cell: &Cell) -> usize {
        self.dims.get(cell).copied().unwrap_or(0)
    }

    pub fn gen(&self, upper: &Cell, lower: &Cell) -> Option<&Matrix> {
        self.gens.get(&(upper.clone(), lower.clone()))
    }

    /// Sum of dimensions over all cells.
    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// The entrance morphism `upper -> lower` for a face `lower` of `upper`,
    /// composed along the path that closes coordinates in axis order.
    pub fn map_between(&self, upper: &Cell, lower: &Cell) -> Result<Matrix> {
        if !lower.is_face_of(upper) || !self.space.contains(upper) || !self.space.contains(lower) {
            return Err(Error::InvalidModule(format!("no entrance morphism {upper} -> {lower}")));
        }
        let mut current = upper.clone();
        let mut acc = Matrix::identity(self.field, self.dim(upper));
        for k in 0..upper.ambient_dim() {
            if current.coords()[k] != lower.coords()[k] {
                let mut next = current.coords().to_vec();
                next[k] = lower.coords()[k];
                let next = Cell::new(next);
                let g = self
                    .gen(&current, &next)
                    .ok_or_else(|| Error::InvalidModule(format!("missing gen {current}>{next}")))?;
                acc = g.compose(&acc)?;
                current = next;
            }
        }
        Ok(acc)
    }

    /// Every rule the module breaks. Empty means the module is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if let Err(e) = self.space.check_convex_in(&CellSet::hull(self.grid().clone())) {
            out.push(Violation::SpaceNotConvex(e.to_string()));
        }
        for c in self.space.iter() {
            if !self.dims.contains_key(c) {
                out.push(Violation::MissingDim(c.clone()));
            }
        }
        for c in self.dims.keys() {
            if !self.space.contains(c) {
                out.push(Violation::StrayDim(c.clone()));
            }
        }
        let pairs = codim1_pairs(&self.space);
        for (upper, lower) in &pairs {
            match self.gens.get(&(upper.clone(), lower.clone())) {
                None => out.push(Violation::MissingGen { upper: upper.clone(), lower: lower.clone() }),
                Some(g) => {
                    let expected = (self.dim(lower), self.dim(upper));
                    if g.shape() != expected {
                        out.push(Violation::GenShape {
                            upper: upper.clone(),
                            lower: lower.clone(),
                            expected,
                            found: g.shape(),
                        });
                    } else if g.field() != self.field {
                        out.push(Violation::GenField { upper: upper.clone(), lower: lower.clone() });
                    }
                }
            }
        }
        for (upper, lower) in self.gens.keys() {
            if !pairs.contains(&(upper.clone(), lower.clone())) {
                out.push(Violation::StrayGen { upper: upper.clone(), lower: lower.clone() });
            }
        }
        if out.is_empty() {
            out.extend(self.diamond_violations());
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub(crate) fn ensure_valid(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidModule(v.to_string())),
        }
    }

    fn diamond_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for upper in self.space.iter() {
            for (lower, (mid_a, mid_b)) in codim2_faces(upper) {
                let members = [&lower, &mid_a, &mid_b];
                if !members.iter().all(|c| self.space.contains(c)) {
                    continue;
                }
                let via = |mid: &Cell| -> Matrix {
                    let first = &self.gens[&(upper.clone(), mid.clone())];
                    let second = &self.gens[&(mid.clone(), lower.clone())];
                    second.compose(first).expect("shapes checked")
                };
                if via(&mid_a) != via(&mid_b) {
                    out.push(Violation::Diamond { upper: upper.clone(), lower });
                }
            }
        }
        out
    }

    /// Cellwise direct sum with block-diagonal generators.
    pub fn direct_sum(&self, other: &PersistenceModule) -> Result<PersistenceModule> {
        if self.space != other.space {
            return Err(Error::InvalidModule("direct sum of modules on different spaces".into()));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let dims = self
            .dims
            .iter()
            .map(|(c, d)| (c.clone(), d + other.dim(c)))
            .collect();
        let gens = self
            .gens
            .iter()
            .map(|(k, g)| (k.clone(), g.direct_sum(&other.gens[k])))
            .collect();
        Ok(PersistenceModule { space: self.space.clone(), field: self.field, dims, gens })
    }

    /// Restriction to a face-convex subset of the space.
    pub fn restrict(&self, sub: &CellSet) -> Result<PersistenceModule> {
        sub.require_subset_of(&self.space, "restriction target")?;
        sub.check_convex_in(&self.space)?;
        let dims = sub.iter().map(|c| (c.clone(), self.dim(c))).collect();
        let gens = codim1_pairs(sub)
            .into_iter()
            .map(|k| {
                let g = self.gens[&k].clone();
                (k, g)
            })
            .collect();
        Ok(PersistenceModule { space: sub.clone(), field: self.field, dims, gens })
    }

    /// Extension by zero to a larger space in which the current space is face-convex.
    pub fn extend_by_zero(&self, ambient: &CellSet) -> Result<PersistenceModule> {
        self.space.require_subset_of(ambient, "module space")?;
        self.space.check_convex_in(ambient)?;
        let dims = ambient.iter().map(|c| (c.clone(), self.dim(c))).collect();
        let gens = codim1_pairs(ambient)
            .into_iter()
            .map(|k| {
                let g = match self.gens.get(&k) {
                    Some(g) => g.clone(),
                    None => Matrix::zeros(self.field, self.dim(&k.1), self.dim(&k.0)),
                };
                (k, g)
            })
            .collect();
        Ok(PersistenceModule { space: ambient.clone(), field: self.field, dims, gens })
    }

    /// Replaces the basis at every cell: `new_gen = P_lower * gen * P_upper^{-1}`.
    /// Every matrix in `bases` must be invertible of the cell's dimension.
    pub fn change_basis(&self, bases: &BTreeMap<Cell, Matrix>) -> Result<PersistenceModule> {
        let mut inverses = BTreeMap::new();
        for c in self.space.iter() {
            let p = &bases[c];
            if p.shape() != (self.dim(c), self.dim(c)) {
                return Err(Error::Shape(format!("basis change at {c}")));
            }
            inverses.insert(c.clone(), p.inverse().ok_or(Error::NotInvertible { cell: c.clone() })?);
        }
        let gens = self
            .gens
            .iter()
            .map(|((u, l), g)| {
                let g = bases[l].compose(g)?.compose(&inverses[u])?;
                Ok(((u.clone(), l.clone()), g))
            })
            .collect::<Result<_>>()?;
        Ok(PersistenceModule { gens, ..self.clone() })
    }
}

/// All codimension-one pairs `(upper, lower)` with both cells in the set.
pub fn codim1_pairs(space: &CellSet) -> Vec<(Cell, Cell)> {
    let mut out = Vec::new();
    for upper in space.iter() {
        for lower in upper.facets() {
            if space.contains(&lower) {
                out.push((upper.clone(), lower));
            }
        }
    }
    out
}

/// Codimension-two faces of a cell, each with its two intermediate cells.
fn codim2_faces(cell: &Cell) -> Vec<(Cell, (Cell, Cell))> {
    let odd: Vec<usize> = (0..cell.ambient_dim()).filter(|&k| cell.coords()[k] % 2 == 1).collect();
    let mut out = Vec::new();
    for (a, &i) in odd.iter().enumerate() {
        for &j in &odd[a + 1..] {
            for di in [-1i64, 1] {
                for dj in [-1i64, 1] {
                    let shift = |coords: &mut Vec<usize>, k: usize, d: i64| {
                        coords[k] = (coords[k] as i64 + d) as usize;
                    };
                    let mut lower = cell.coords().to_vec();
                    shift(&mut lower, i, di);
                    shift(&mut lower, j, dj);
                    let mut mid_a = cell.coords().to_vec();
                    shift(&mut mid_a, i, di);
                    let mut mid_b = cell.coords().to_vec();
                    shift(&mut mid_b, j, dj);
                    out.push((Cell::new(lower), (Cell::new(mid_a), Cell::new(mid_b))));
                }
            }
        }
    }
    out
}

/// Indicator module of a face-convex support `support` inside `space`:
/// `F` on the support, zero elsewhere, identities between support cells.
pub fn interval_module(space: &CellSet, support: &CellSet, field: Field) -> Result<PersistenceModule> {
    support.require_subset_of(space, "support")?;
    support.check_convex_in(space)?;
    let dims = space
        .iter()
        .map(|c| (c.clone(), usize::from(support.contains(c))))
        .collect::<BTreeMap<_, _>>();
    let gens = codim1_pairs(space)
        .into_iter()
        .map(|(u, l)| {
            let g = if support.contains(&u) && support.contains(&l) {
                Matrix::identity(field, 1)
            } else {
                Matrix::zeros(field, dims[&l], dims[&u])
            };
            ((u, l), g)
        })
        .collect();
    Ok(PersistenceModule { space: space.clone(), field, dims, gens })
}

/// Imports a monotone grid module onto the full hull of its grid. An open
/// cell takes the value at its lower corner; a generator is the identity
/// when both cells share a lower corner and the poset edge map otherwise.
pub fn monotone_import(rep: &PosetRep) -> Result<PersistenceModule> {
    if let Some(problem) = rep.validate().into_iter().next() {
        return Err(Error::InvalidPosetRep(problem));
    }
    let grid = Arc::new(rep.grid());
    let space = CellSet::hull(grid);
    let field = rep.field();
    let dims = space
        .iter()
        .map(|c| (c.clone(), rep.dim(&c.min_corner())))
        .collect::<BTreeMap<_, _>>();
    let mut gens = BTreeMap::new();
    for (upper, lower) in codim1_pairs(&space) {
        let (from, to) = (upper.min_corner(), lower.min_corner());
        let g = match (0..from.len()).find(|&k| from[k] != to[k]) {
            None => Matrix::identity(field, dims[&upper]),
            Some(k) => rep.edge_map(&from, k).expect("validated rep").clone(),
        };
        gens.insert((upper, lower), g);
    }
    Ok(PersistenceModule { space, field, dims, gens })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(points: usize) -> CellSet {
        CellSet::hull(Arc::new(StratifiedGrid::integer(&[points]).unwrap()))
    }

    fn cells(space: &CellSet, cs: &[&[usize]]) -> CellSet {
        CellSet::new(space.grid().clone(), cs.iter().map(|c| Cell::new(c.to_vec()))).unwrap()
    }

    fn dims_vec(m: &PersistenceModule) -> Vec<usize> {
        m.dims().values().copied().collect()
    }

    #[test]
    fn interval_modules_on_the_line() {
        let x = line(3);
        let full = interval_module(&x, &x, Field::F2).unwrap();
        assert!(full.is_valid());
        assert_eq!(dims_vec(&full), vec![1, 1, 1, 1, 1]);

        let left = interval_module(&x, &cells(&x, &[&[0], &[1]]), Field::F2).unwrap();
        assert!(left.is_valid());
        assert_eq!(dims_vec(&left), vec![1, 1, 0, 0, 0]);
        assert_eq!(left.gen(&Cell::new(vec![1]), &Cell::new(vec![0])).unwrap(), &Matrix::identity(Field::F2, 1));
        assert_eq!(left.gen(&Cell::new(vec![1]), &Cell::new(vec![2])).unwrap().shape(), (0, 1));

        let ends = interval_module(&x, &cells(&x, &[&[0], &[4]]), Field::F2).unwrap();
        assert!(ends.is_valid());
        assert_eq!(dims_vec(&ends), vec![1, 0, 0, 0, 1]);
    }

    #[test]
    fn non_convex_support_is_rejected() {
        let sq = CellSet::hull(Arc::new(StratifiedGrid::integer(&[2, 2]).unwrap()));
        let support = cells(&sq, &[&[1, 1], &[0, 0]]);
        assert!(matches!(interval_module(&sq, &support, Field::F2), Err(Error::NotConvex { .. })));
    }

    #[test]
    fn flipped_diamond_is_reported() {
        let sq = CellSet::hull(Arc::new(StratifiedGrid::integer(&[2, 2]).unwrap()));
        let m = PersistenceModule::constant(sq, Field::F2, 1);
        let mut gens = m.gens().clone();
        let key = (Cell::new(vec![1, 1]), Cell::new(vec![0, 1]));
        gens.insert(key, Matrix::zeros(Field::F2, 1, 1));
        let bad = PersistenceModule::from_parts(m.space().clone(), Field::F2, m.dims().clone(), gens);
        let v = bad.validate();
        assert!(v.contains(&Violation::Diamond { upper: Cell::new(vec![1, 1]), lower: Cell::new(vec![0, 0]) }));
        assert!(v.contains(&Violation::Diamond { upper: Cell::new(vec![1, 1]), lower: Cell::new(vec![0, 2]) }));
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn missing_generator_is_reported() {
        let x = line(2);
        let m = PersistenceModule::constant(x.clone(), Field::Q, 1);
        let mut gens = m.gens().clone();
        gens.remove(&(Cell::new(vec![1]), Cell::new(vec![2])));
        let bad = PersistenceModule::from_parts(x, Field::Q, m.dims().clone(), gens);
        let v = bad.validate();
        assert_eq!(v.len(), 1);
        assert!(v[0].to_string().starts_with("missing gen"));
    }

    #[test]
    fn monotone_import_examples() {
        let f = Field::F2;
        let rep = PosetRep::from_chain(
            f,
            &[1, 1, 0],
            &[Matrix::identity(f, 1), Matrix::zeros(f, 0, 1)],
        )
        .unwrap();
        let m = monotone_import(&rep).unwrap();
        assert!(m.is_valid());
        assert_eq!(dims_vec(&m), vec![1, 1, 1, 1, 0]);

        let zero = PosetRep::zero(f, &[2, 1]);
        assert_eq!(monotone_import(&zero).unwrap().total_dim(), 0);

        let constant = PosetRep::constant(f, &[1, 1], 1);
        let m = monotone_import(&constant).unwrap();
        assert_eq!(dims_vec(&m), vec![1; 9]);
        assert!(m.gens().values().all(|g| *g == Matrix::identity(f, 1)));
    }

    #[test]
    fn restrict_extend_round_trip() {
        let x = line(3);
        let s = cells(&x, &[&[2], &[3], &[4]]);
        let f = PersistenceModule::constant(s.clone(), Field::Q, 2);
        let e = f.extend_by_zero(&x).unwrap();
        assert!(e.is_valid());
        assert_eq!(e.restrict(&s).unwrap(), f);
    }

    #[test]
    fn direct_sum_adds_dimensions() {
        let x = line(3);
        let a = interval_module(&x, &cells(&x, &[&[0], &[1]]), Field::F2).unwrap();
        let b = PersistenceModule::constant(x, Field::F2, 2);
        let s = a.direct_sum(&b).unwrap();
        assert!(s.is_valid());
        assert_eq!(dims_vec(&s), vec![3, 3, 2, 2, 2]);
    }

    #[test]
    fn map_between_composes_generators() {
        let sq = CellSet::hull(Arc::new(StratifiedGrid::integer(&[2, 2]).unwrap()));
        let m = PersistenceModule::constant(sq, Field::Q, 2);
        let g = m.map_between(&Cell::new(vec![1, 1]), &Cell::new(vec![2, 0])).unwrap();
        assert_eq!(g, Matrix::identity(Field::Q, 2));
        assert!(m.map_between(&Cell::new(vec![0, 0]), &Cell::new(vec![1, 1])).is_err());
    }
}
