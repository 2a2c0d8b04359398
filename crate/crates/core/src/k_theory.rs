//! Classes in `K_0` and `K_1`, one coordinate per stratum.
//!
//! On a grid space the `K_0` class of a module is its dimension vector (one
//! integer per cell), which read as a function on the parameter space is the
//! module's Euler curve or surface. The `K_1` class of an automorphism is the
//! vector of determinants of its components.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact_linalg::{format_rational, Elem};
use crate::grid_space::{Cell, CellSet};
use crate::module_rep::{ModuleMorphism, PersistenceModule};

/// Integer vector indexed by the cells of a space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K0Class {
    space: CellSet,
    values: BTreeMap<Cell, i64>,
}

impl K0Class {
    pub fn zero(space: &CellSet) -> K0Class {
        K0Class {
            space: space.clone(),
            values: space.iter().map(|c| (c.clone(), 0)).collect(),
        }
    }

    /// Builds a class from explicit values; every cell of `space` needs one.
    pub fn from_values(space: &CellSet, values: BTreeMap<Cell, i64>) -> Result<K0Class> {
        if values.len() != space.len() || !values.keys().all(|c| space.contains(c)) {
            return Err(Error::Shape("class values must cover exactly the cells of the space".into()));
        }
        Ok(K0Class { space: space.clone(), values })
    }

    pub fn space(&self) -> &CellSet {
        &self.space
    }

    pub fn values(&self) -> &BTreeMap<Cell, i64> {
        &self.values
    }

    pub fn get(&self, cell: &Cell) -> Option<i64> {
        self.values.get(cell).copied()
    }

    /// Mutable access to one coordinate.
    pub fn get_mut(&mut self, cell: &Cell) -> Option<&mut i64> {
        self.values.get_mut(cell)
    }

    /// Values in lexicographic cell order.
    pub fn vector(&self) -> Vec<i64> {
        self.values.values().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(|&v| v == 0)
    }

    fn combine(&self, other: &K0Class, op: impl Fn(i64, i64) -> i64) -> Result<K0Class> {
        if self.space != other.space {
            return Err(Error::Shape("classes live on different spaces".into()));
        }
        let values = self
            .values
            .iter()
            .map(|(c, &v)| (c.clone(), op(v, other.values[c])))
            .collect();
        Ok(K0Class { space: self.space.clone(), values })
    }

    pub fn add(&self, other: &K0Class) -> Result<K0Class> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &K0Class) -> Result<K0Class> {
        self.combine(other, |a, b| a - b)
    }

    /// Coordinates on a subset of the space.
    pub fn restrict(&self, sub: &CellSet) -> Result<K0Class> {
        sub.require_subset_of(&self.space, "class restriction target")?;
        let values = sub.iter().map(|c| (c.clone(), self.values[c])).collect();
        Ok(K0Class { space: sub.clone(), values })
    }

    /// Concatenates classes on pairwise disjoint pieces into a class on their union.
    pub fn disjoint_union(pieces: &[K0Class]) -> Result<K0Class> {
        let first = pieces.first().ok_or(Error::EmptyCellSet)?;
        let mut space = CellSet::empty(first.space.grid().clone());
        let mut values = BTreeMap::new();
        for p in pieces {
            space = space.union(&p.space)?;
            for (c, &v) in &p.values {
                if values.insert(c.clone(), v).is_some() {
                    return Err(Error::Shape(format!("pieces overlap at {c}")));
                }
            }
        }
        Ok(K0Class { space, values })
    }

    /// `{"cells": [...], "dims": [...]}` in lexicographic cell order.
    pub fn to_json(&self) -> Value {
        json!({
            "cells": self.space.to_json_cells(),
            "dims": self.vector(),
        })
    }
}

/// Unit vector indexed by the cells of a space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct K1Class {
    space: CellSet,
    units: BTreeMap<Cell, Elem>,
}

impl K1Class {
    pub fn space(&self) -> &CellSet {
        &self.space
    }

    pub fn units(&self) -> &BTreeMap<Cell, Elem> {
        &self.units
    }

    pub fn get(&self, cell: &Cell) -> Option<&Elem> {
        self.units.get(cell)
    }

    /// Cellwise product.
    pub fn mul(&self, other: &K1Class) -> Result<K1Class> {
        if self.space != other.space {
            return Err(Error::Shape("classes live on different spaces".into()));
        }
        let units = self
            .units
            .iter()
            .map(|(c, u)| (c.clone(), u * &other.units[c]))
            .collect();
        Ok(K1Class { space: self.space.clone(), units })
    }

    pub fn is_identity(&self) -> bool {
        self.units.values().all(Elem::is_one)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "cells": self.space.to_json_cells(),
            "units": self.units.values().map(Elem::to_json).collect::<Vec<_>>(),
        })
    }
}

/// Dimension vector of a module.
pub fn k0_class(module: &PersistenceModule) -> K0Class {
    K0Class {
        space: module.space().clone(),
        values: module.dims().iter().map(|(c, &d)| (c.clone(), d as i64)).collect(),
    }
}

/// Determinant vector of an automorphism.
pub fn k1_class(auto: &ModuleMorphism) -> Result<K1Class> {
    if auto.source() != auto.target() {
        return Err(Error::InvalidMorphism("not an endomorphism".into()));
    }
    let mut units = BTreeMap::new();
    for (c, m) in auto.comps() {
        let d = m.det()?;
        if d.is_zero() {
            return Err(Error::NotInvertible { cell: c.clone() });
        }
        units.insert(c.clone(), d);
    }
    Ok(K1Class { space: auto.source().space().clone(), units })
}

/// Value of the Euler surface at a point of the hull: the dimension at the
/// cell containing it (zero on cells outside the module's space).
pub fn euler_eval(module: &PersistenceModule, point: &[BigRational]) -> Result<usize> {
    let cell = module.grid().locate(point)?;
    Ok(module.dim(&cell))
}

/// Sampled Euler surface plus the exact per-stratum listing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerTable {
    /// Sample coordinates per axis; empty when the parameter count exceeds 2.
    pub samples: Vec<Vec<BigRational>>,
    /// `values[j][i]` is the value at axis-0 sample `i` and axis-1 sample `j`;
    /// a single row for one parameter.
    pub values: Vec<Vec<usize>>,
    /// `(cell, dimension)` for every cell of the module's space.
    pub listing: Vec<(Cell, usize)>,
}

impl EulerTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match self.samples.len() {
            1 => {
                out.push_str("x,value\n");
                for (x, v) in self.samples[0].iter().zip(&self.values[0]) {
                    let _ = writeln!(out, "{},{v}", format_rational(x));
                }
            }
            2 => {
                out.push_str("axis1\\axis0");
                for x in &self.samples[0] {
                    let _ = write!(out, ",{}", format_rational(x));
                }
                out.push('\n');
                for (y, row) in self.samples[1].iter().zip(&self.values) {
                    out.push_str(&format_rational(y));
                    for v in row {
                        let _ = write!(out, ",{v}");
                    }
                    out.push('\n');
                }
            }
            _ => {}
        }
        if !self.samples.is_empty() {
            out.push('\n');
        }
        out.push_str("cell,dim\n");
        for (c, d) in &self.listing {
            let _ = writeln!(out, "\"{}\",{d}", c.key());
        }
        out
    }
}

/// Samples the Euler surface on a uniform grid of `samples_per_axis` points
/// per axis spanning the hull (one and two parameters), and lists every stratum.
pub fn euler_export(module: &PersistenceModule, samples_per_axis: usize) -> Result<EulerTable> {
    if samples_per_axis < 2 {
        return Err(Error::TooFewSamples(samples_per_axis));
    }
    let listing: Vec<(Cell, usize)> = module.dims().iter().map(|(c, &d)| (c.clone(), d)).collect();
    let dim = module.grid().dim();
    if dim > 2 {
        return Ok(EulerTable { samples: Vec::new(), values: Vec::new(), listing });
    }
    let steps = BigInt::from(samples_per_axis - 1);
    let samples: Vec<Vec<BigRational>> = module
        .grid()
        .bounds()
        .into_iter()
        .map(|(lo, hi)| {
            (0..samples_per_axis)
                .map(|i| &lo + (&hi - &lo) * BigRational::new(BigInt::from(i), steps.clone()))
                .collect()
        })
        .collect();
    let mut values = Vec::new();
    if dim == 1 {
        let row = samples[0]
            .iter()
            .map(|x| euler_eval(module, std::slice::from_ref(x)))
            .collect::<Result<_>>()?;
        values.push(row);
    } else {
        for y in &samples[1] {
            let row = samples[0]
                .iter()
                .map(|x| euler_eval(module, &[x.clone(), y.clone()]))
                .collect::<Result<_>>()?;
            values.push(row);
        }
    }
    Ok(EulerTable { samples, values, listing })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exact_linalg::{Field, Matrix};
    use crate::grid_space::StratifiedGrid;
    use crate::module_rep::{interval_module, monotone_import, PosetRep};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn line(points: usize) -> CellSet {
        CellSet::hull(Arc::new(StratifiedGrid::integer(&[points]).unwrap()))
    }

    fn chain_module() -> PersistenceModule {
        let f = Field::F2;
        let rep = PosetRep::from_chain(f, &[1, 1, 0], &[Matrix::identity(f, 1), Matrix::zeros(f, 0, 1)]).unwrap();
        monotone_import(&rep).unwrap()
    }

    #[test]
    fn k0_examples() {
        let x = line(3);
        let full = interval_module(&x, &x, Field::F2).unwrap();
        assert_eq!(k0_class(&full).vector(), vec![1; 5]);
        assert!(k0_class(&PersistenceModule::zero(x, Field::F2)).is_zero());
        assert_eq!(k0_class(&chain_module()).vector(), vec![1, 1, 1, 1, 0]);
    }

    #[test]
    fn k1_examples() {
        let x = line(3);
        let m = PersistenceModule::constant(x, Field::F5, 1);
        assert!(k1_class(&ModuleMorphism::identity(&m)).unwrap().is_identity());
        let three = Field::F5.from_i64(3);
        let class = k1_class(&ModuleMorphism::scalar(&m, &three)).unwrap();
        assert!(class.units().values().all(|u| *u == three));
        let zero = ModuleMorphism::scalar(&m, &Field::F5.zero());
        assert!(matches!(k1_class(&zero), Err(Error::NotInvertible { .. })));
    }

    #[test]
    fn euler_eval_examples() {
        let m = chain_module();
        assert_eq!(euler_eval(&m, &[q(3, 2)]).unwrap(), 1);
        assert_eq!(euler_eval(&m, &[q(2, 1)]).unwrap(), 0);
        assert!(euler_eval(&m, &[q(5, 2)]).is_err());
        let c = PersistenceModule::constant(line(4), Field::Q, 1);
        assert_eq!(euler_eval(&c, &[q(7, 3)]).unwrap(), 1);
    }

    #[test]
    fn euler_export_of_a_closed_square() {
        let g = Arc::new(StratifiedGrid::integer(&[3, 3]).unwrap());
        let hull = CellSet::hull(g.clone());
        let square = CellSet::new(g, [Cell::new(vec![1, 1])]).unwrap().closure();
        let m = interval_module(&hull, &square, Field::F2).unwrap();
        let table = euler_export(&m, 5).unwrap();
        for (j, row) in table.values.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                let inside = table.samples[0][i] <= q(1, 1) && table.samples[1][j] <= q(1, 1);
                assert_eq!(v, usize::from(inside), "sample ({i},{j})");
            }
        }
        let listed: Vec<i64> = table.listing.iter().map(|(_, d)| *d as i64).collect();
        assert_eq!(listed, k0_class(&m).vector());
        assert!(table.to_csv().starts_with("axis1\\axis0,0,1/2,1,3/2,2\n0,1,1,1,0,0\n"));
        assert!(euler_export(&m, 1).is_err());
    }

    #[test]
    fn class_arithmetic() {
        let x = line(3);
        let a = k0_class(&PersistenceModule::constant(x.clone(), Field::Q, 2));
        let left = x.filter(|c| c.coords()[0] < 2);
        let right = x.filter(|c| c.coords()[0] >= 2);
        let glued = K0Class::disjoint_union(&[a.restrict(&left).unwrap(), a.restrict(&right).unwrap()]).unwrap();
        assert_eq!(glued, a);
        assert!(K0Class::disjoint_union(&[a.clone(), a.clone()]).is_err());
        assert!(a.sub(&a).unwrap().is_zero());
    }
}
