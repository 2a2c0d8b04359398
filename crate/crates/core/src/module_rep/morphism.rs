use std::collections::BTreeMap;

use super::PersistenceModule;
use crate::error::{Error, Result};
use crate::exact_linalg::{Elem, Matrix};
use crate::grid_space::Cell;

/// A natural transformation between two modules on the same space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMorphism {
    source: PersistenceModule,
    target: PersistenceModule,
    comps: BTreeMap<Cell, Matrix>,
}

impl ModuleMorphism {
    /// Checks shapes and that every naturality square commutes.
    pub fn new(
        source: PersistenceModule,
        target: PersistenceModule,
        comps: BTreeMap<Cell, Matrix>,
    ) -> Result<ModuleMorphism> {
        if source.space() != target.space() {
            return Err(Error::InvalidMorphism("source and target live on different spaces".into()));
        }
        if source.field() != target.field() {
            return Err(Error::FieldMismatch(source.field().to_string(), target.field().to_string()));
        }
        for c in source.space().iter() {
            let m = comps
                .get(c)
                .ok_or_else(|| Error::InvalidMorphism(format!("missing component at {c}")))?;
            if m.shape() != (target.dim(c), source.dim(c)) {
                return Err(Error::InvalidMorphism(format!(
                    "component at {c} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.dim(c),
                    source.dim(c)
                )));
            }
        }
        if let Some(extra) = comps.keys().find(|c| !source.space().contains(c)) {
            return Err(Error::InvalidMorphism(format!("component at {extra} outside the space")));
        }
        for ((upper, lower), g_src) in source.gens() {
            let g_tgt = &target.gens()[&(upper.clone(), lower.clone())];
            let lhs = g_tgt.compose(&comps[upper])?;
            let rhs = comps[lower].compose(g_src)?;
            if lhs != rhs {
                return Err(Error::InvalidMorphism(format!("not natural along {upper}>{lower}")));
            }
        }
        Ok(ModuleMorphism { source, target, comps })
    }

    pub fn identity(module: &PersistenceModule) -> ModuleMorphism {
        let one = module.field().one();
        ModuleMorphism::scalar(module, &one)
    }

    /// Multiplication by a scalar at every cell.
    pub fn scalar(module: &PersistenceModule, s: &Elem) -> ModuleMorphism {
        let comps = module
            .dims()
            .iter()
            .map(|(c, &d)| (c.clone(), Matrix::scalar(module.field(), d, s)))
            .collect();
        ModuleMorphism { source: module.clone(), target: module.clone(), comps }
    }

    pub fn source(&self) -> &PersistenceModule {
        &self.source
    }

    pub fn target(&self) -> &PersistenceModule {
        &self.target
    }

    pub fn comps(&self) -> &BTreeMap<Cell, Matrix> {
        &self.comps
    }

    pub fn component(&self, cell: &Cell) -> &Matrix {
        &self.comps[cell]
    }

    /// `self` after `first`.
    pub fn after(&self, first: &ModuleMorphism) -> Result<ModuleMorphism> {
        if first.target != self.source {
            return Err(Error::InvalidMorphism("composing morphisms with mismatched modules".into()));
        }
        let comps = self
            .comps
            .iter()
            .map(|(c, m)| Ok((c.clone(), m.compose(&first.comps[c])?)))
            .collect::<Result<_>>()?;
        Ok(ModuleMorphism { source: first.source.clone(), target: self.target.clone(), comps })
    }

    pub fn is_automorphism(&self) -> bool {
        self.source == self.target && self.comps.values().all(Matrix::is_invertible)
    }

    /// `F -> F + H` onto the first summand.
    pub fn inclusion_first(first: &PersistenceModule, second: &PersistenceModule) -> Result<ModuleMorphism> {
        let sum = first.direct_sum(second)?;
        let f = first.field();
        let comps = first
            .space()
            .iter()
            .map(|c| {
                let (a, b) = (first.dim(c), second.dim(c));
                let m = Matrix::identity(f, a).vstack(&Matrix::zeros(f, b, a))?;
                Ok((c.clone(), m))
            })
            .collect::<Result<_>>()?;
        ModuleMorphism::new(first.clone(), sum, comps)
    }

    /// `F + H -> H` onto the second summand.
    pub fn projection_second(first: &PersistenceModule, second: &PersistenceModule) -> Result<ModuleMorphism> {
        let sum = first.direct_sum(second)?;
        let f = first.field();
        let comps = first
            .space()
            .iter()
            .map(|c| {
                let (a, b) = (first.dim(c), second.dim(c));
                let m = Matrix::zeros(f, b, a).hstack(&Matrix::identity(f, b))?;
                Ok((c.clone(), m))
            })
            .collect::<Result<_>>()?;
        ModuleMorphism::new(sum, second.clone(), comps)
    }
}

/// Pointwise exactness of `0 -> F -> G -> H -> 0`: at every cell the first map
/// is injective, the second surjective, their ranks add up to `dim G`, and
/// the composite vanishes.
pub fn check_ses(first: &ModuleMorphism, second: &ModuleMorphism) -> Result<bool> {
    if first.target != second.source {
        return Err(Error::NotExact("the middle modules differ".into()));
    }
    for c in first.source.space().iter() {
        let phi = &first.comps[c];
        let psi = &second.comps[c];
        let (rank_phi, rank_psi) = (phi.rank(), psi.rank());
        let exact = rank_phi == first.source.dim(c)
            && rank_psi == second.target.dim(c)
            && rank_phi + rank_psi == first.target.dim(c)
            && psi.compose(phi)?.is_zero();
        if !exact {
            return Ok(false);
        }
    }
    Ok(true)
}
