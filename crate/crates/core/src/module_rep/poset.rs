use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exact_linalg::{Field, Matrix};
use crate::grid_space::{cartesian, StratifiedGrid};

/// A monotone module on the grid poset `[n_1] x ... x [n_d]`, where
/// `[n] = {0 <= 1 <= ... <= n}`. Structure maps are stored for axis-adjacent
/// pairs `p -> p + e_k` only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetRep {
    shape: Vec<usize>,
    field: Field,
    dims: BTreeMap<Vec<usize>, usize>,
    maps: BTreeMap<(Vec<usize>, usize), Matrix>,
}

/// All points of the grid poset with the given shape, lexicographically.
pub fn grid_points(shape: &[usize]) -> Vec<Vec<usize>> {
    let options: Vec<Vec<usize>> = shape.iter().map(|&n| (0..=n).collect()).collect();
    cartesian(&options)
}

fn step(p: &[usize], axis: usize) -> Vec<usize> {
    let mut q = p.to_vec();
    q[axis] += 1;
    q
}

impl PosetRep {
    /// Assembles a representation; maps are keyed by `(source point, axis)`.
    pub fn from_parts(
        shape: Vec<usize>,
        field: Field,
        dims: BTreeMap<Vec<usize>, usize>,
        maps: BTreeMap<(Vec<usize>, usize), Matrix>,
    ) -> PosetRep {
        PosetRep { shape, field, dims, maps }
    }

    pub fn new(
        shape: Vec<usize>,
        field: Field,
        dims: BTreeMap<Vec<usize>, usize>,
        maps: BTreeMap<(Vec<usize>, usize), Matrix>,
    ) -> Result<PosetRep> {
        let rep = PosetRep::from_parts(shape, field, dims, maps);
        match rep.validate().into_iter().next() {
            None => Ok(rep),
            Some(problem) => Err(Error::InvalidPosetRep(problem)),
        }
    }

    /// One-parameter module `V_0 -> V_1 -> ... -> V_n`.
    pub fn from_chain(field: Field, dims: &[usize], maps: &[Matrix]) -> Result<PosetRep> {
        if dims.is_empty() || maps.len() + 1 != dims.len() {
            return Err(Error::InvalidPosetRep(format!(
                "{} spaces need {} maps, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                maps.len()
            )));
        }
        let shape = vec![dims.len() - 1];
        let dims = dims.iter().enumerate().map(|(i, &d)| (vec![i], d)).collect();
        let maps = maps.iter().enumerate().map(|(i, m)| ((vec![i], 0), m.clone())).collect();
        PosetRep::new(shape, field, dims, maps)
    }

    pub fn zero(field: Field, shape: &[usize]) -> PosetRep {
        PosetRep::constant(field, shape, 0)
    }

    /// `F^rank` at every point with identity maps.
    pub fn constant(field: Field, shape: &[usize], rank: usize) -> PosetRep {
        let points = grid_points(shape);
        let dims = points.iter().map(|p| (p.clone(), rank)).collect();
        let mut maps = BTreeMap::new();
        for p in &points {
            for k in 0..shape.len() {
                if p[k] < shape[k] {
                    maps.insert((p.clone(), k), Matrix::identity(field, rank));
                }
            }
        }
        PosetRep { shape: shape.to_vec(), field, dims, maps }
    }

    /// Interval module supported on the box `lo <= p <= hi`.
    pub fn interval(field: Field, shape: &[usize], lo: &[usize], hi: &[usize]) -> Result<PosetRep> {
        let ok = lo.len() == shape.len()
            && hi.len() == shape.len()
            && (0..shape.len()).all(|k| lo[k] <= hi[k] && hi[k] <= shape[k]);
        if !ok {
            return Err(Error::InvalidPosetRep(format!("bad interval {lo:?}..{hi:?} in shape {shape:?}")));
        }
        let inside = |p: &[usize]| (0..p.len()).all(|k| lo[k] <= p[k] && p[k] <= hi[k]);
        let points = grid_points(shape);
        let dims: BTreeMap<_, _> = points.iter().map(|p| (p.clone(), usize::from(inside(p)))).collect();
        let mut maps = BTreeMap::new();
        for p in &points {
            for k in 0..shape.len() {
                if p[k] < shape[k] {
                    let q = step(p, k);
                    let m = if inside(p) && inside(&q) {
                        Matrix::identity(field, 1)
                    } else {
                        Matrix::zeros(field, dims[&q], dims[p])
                    };
                    maps.insert((p.clone(), k), m);
                }
            }
        }
        Ok(PosetRep { shape: shape.to_vec(), field, dims, maps })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &BTreeMap<Vec<usize>, usize> {
        &self.dims
    }

    pub fn maps(&self) -> &BTreeMap<(Vec<usize>, usize), Matrix> {
        &self.maps
    }

    pub fn points(&self) -> Vec<Vec<usize>> {
        grid_points(&self.shape)
    }

    pub fn dim(&self, p: &[usize]) -> usize {
        self.dims.get(p).copied().unwrap_or(0)
    }

    pub fn edge_map(&self, p: &[usize], axis: usize) -> Option<&Matrix> {
        self.maps.get(&(p.to_vec(), axis))
    }

    /// The integer grid `{0..=n_k}` per axis that this poset lives on.
    pub fn grid(&self) -> StratifiedGrid {
        let points: Vec<usize> = self.shape.iter().map(|n| n + 1).collect();
        StratifiedGrid::integer(&points).expect("shape gives nonempty axes")
    }

    fn in_shape(&self, p: &[usize]) -> bool {
        p.len() == self.shape.len() && p.iter().zip(&self.shape).all(|(a, n)| a <= n)
    }

    /// Problems with the data, empty when the representation is valid.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.shape.is_empty() {
            out.push("shape has no axes".to_string());
            return out;
        }
        let points = self.points();
        for p in &points {
            if !self.dims.contains_key(p) {
                out.push(format!("missing dim at {p:?}"));
            }
        }
        for p in self.dims.keys() {
            if !self.in_shape(p) {
                out.push(format!("dim at {p:?} outside shape"));
            }
        }
        for ((p, k), m) in &self.maps {
            if *k >= self.shape.len() || !self.in_shape(p) || p[*k] >= self.shape[*k] {
                out.push(format!("stray map at {p:?} along axis {k}"));
                continue;
            }
            let expected = (self.dim(&step(p, *k)), self.dim(p));
            if m.shape() != expected || m.field() != self.field {
                out.push(format!(
                    "map at {p:?} along axis {k} has shape {:?}, expected {expected:?}",
                    m.shape()
                ));
            }
        }
        for p in &points {
            for k in 0..self.shape.len() {
                if p[k] < self.shape[k] && !self.maps.contains_key(&(p.clone(), k)) {
                    out.push(format!("missing map at {p:?} along axis {k}"));
                }
            }
        }
        if !out.is_empty() {
            return out;
        }
        for p in &points {
            for i in 0..self.shape.len() {
                for j in i + 1..self.shape.len() {
                    if p[i] < self.shape[i] && p[j] < self.shape[j] {
                        let pi = step(p, i);
                        let pj = step(p, j);
                        let a = self.maps[&(pi, j)].compose(&self.maps[&(p.clone(), i)]).expect("shapes");
                        let b = self.maps[&(pj, i)].compose(&self.maps[&(p.clone(), j)]).expect("shapes");
                        if a != b {
                            out.push(format!("square at {p:?} in axes {i},{j} does not commute"));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Composite map from `p` following unit steps along the given axes.
    pub fn map_along(&self, p: &[usize], steps: &[usize]) -> Result<Matrix> {
        let mut current = p.to_vec();
        let mut acc = Matrix::identity(self.field, self.dim(p));
        for &k in steps {
            let m = self
                .edge_map(&current, k)
                .ok_or_else(|| Error::InvalidPosetRep(format!("no step from {current:?} along axis {k}")))?;
            acc = m.compose(&acc)?;
            current = step(&current, k);
        }
        Ok(acc)
    }

    /// Structure map `p -> q` for `p <= q`, along the path that exhausts axis 0 first.
    pub fn map_between(&self, p: &[usize], q: &[usize]) -> Result<Matrix> {
        if !self.in_shape(p) || !self.in_shape(q) || p.iter().zip(q).any(|(a, b)| a > b) {
            return Err(Error::InvalidPosetRep(format!("{p:?} is not below {q:?}")));
        }
        let steps: Vec<usize> = (0..p.len()).flat_map(|k| std::iter::repeat(k).take(q[k] - p[k])).collect();
        self.map_along(p, &steps)
    }

    pub fn direct_sum(&self, other: &PosetRep) -> Result<PosetRep> {
        if self.shape != other.shape || self.field != other.field {
            return Err(Error::InvalidPosetRep("direct sum of incompatible representations".into()));
        }
        let dims = self.dims.iter().map(|(p, d)| (p.clone(), d + other.dim(p))).collect();
        let maps = self
            .maps
            .iter()
            .map(|(k, m)| (k.clone(), m.direct_sum(&other.maps[k])))
            .collect();
        Ok(PosetRep { shape: self.shape.clone(), field: self.field, dims, maps })
    }

    /// Replaces the basis at every point: `new_map = P_q * map * P_p^{-1}`.
    pub fn change_basis(&self, bases: &BTreeMap<Vec<usize>, Matrix>) -> Result<PosetRep> {
        let mut maps = BTreeMap::new();
        for ((p, k), m) in &self.maps {
            let q = step(p, *k);
            let inv = bases[p]
                .inverse()
                .ok_or_else(|| Error::InvalidPosetRep(format!("basis change at {p:?} is singular")))?;
            maps.insert((p.clone(), *k), bases[&q].compose(m)?.compose(&inv)?);
        }
        Ok(PosetRep { maps, ..self.clone() })
    }
}

/// A natural transformation between two representations on the same poset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosetMorphism {
    source: PosetRep,
    target: PosetRep,
    comps: BTreeMap<Vec<usize>, Matrix>,
}

impl PosetMorphism {
    /// Checks shapes and naturality.
    pub fn new(source: PosetRep, target: PosetRep, comps: BTreeMap<Vec<usize>, Matrix>) -> Result<PosetMorphism> {
        if source.shape != target.shape || source.field != target.field {
            return Err(Error::InvalidMorphism("source and target live on different posets".into()));
        }
        for p in source.points() {
            let m = comps
                .get(&p)
                .ok_or_else(|| Error::InvalidMorphism(format!("missing component at {p:?}")))?;
            if m.shape() != (target.dim(&p), source.dim(&p)) {
                return Err(Error::InvalidMorphism(format!("component at {p:?} has wrong shape")));
            }
        }
        for ((p, k), src_map) in &source.maps {
            let q = step(p, *k);
            let lhs = target.maps[&(p.clone(), *k)].compose(&comps[p])?;
            let rhs = comps[&q].compose(src_map)?;
            if lhs != rhs {
                return Err(Error::InvalidMorphism(format!("not natural at {p:?} along axis {k}")));
            }
        }
        Ok(PosetMorphism { source, target, comps })
    }

    pub fn source(&self) -> &PosetRep {
        &self.source
    }

    pub fn target(&self) -> &PosetRep {
        &self.target
    }

    pub fn component(&self, p: &[usize]) -> &Matrix {
        &self.comps[p]
    }

    /// `F -> F + H` onto the first summand.
    pub fn inclusion_first(first: &PosetRep, second: &PosetRep) -> Result<PosetMorphism> {
        let sum = first.direct_sum(second)?;
        let comps = first
            .points()
            .into_iter()
            .map(|p| {
                let (a, b) = (first.dim(&p), second.dim(&p));
                let m = Matrix::identity(first.field, a).vstack(&Matrix::zeros(first.field, b, a)).expect("columns agree");
                (p, m)
            })
            .collect();
        PosetMorphism::new(first.clone(), sum, comps)
    }

    /// `F + H -> H` onto the second summand.
    pub fn projection_second(first: &PosetRep, second: &PosetRep) -> Result<PosetMorphism> {
        let sum = first.direct_sum(second)?;
        let comps = first
            .points()
            .into_iter()
            .map(|p| {
                let (a, b) = (first.dim(&p), second.dim(&p));
                let m = Matrix::zeros(first.field, b, a).hstack(&Matrix::identity(first.field, b)).expect("rows agree");
                (p, m)
            })
            .collect();
        PosetMorphism::new(sum, second.clone(), comps)
    }
}
