//! Splitting modules along closed substratified spaces.
//!
//! A split of `X` along a closed `A` yields `A` and the connected components
//! of `X \ A`; at the level of `K_0` the class of a module on `X` is the
//! concatenation of the classes of its restrictions to the pieces. The
//! planner in [`slice_plan`] applies such splits with a stack until every
//! piece is a single stratum, slicing perpendicular to a height-realizing
//! axis each time. The cube helpers build the boundary of a cube, the dual
//! graph of its facets, and the ridge cut set of a path unfolding.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grid_space::{Cell, CellSet, StratifiedGrid};
use crate::k_theory::{k0_class, K0Class};
use crate::module_rep::PersistenceModule;

/// One split of `input` along a closed `slice`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitStep {
    pub input: CellSet,
    /// Axis and vertex level of the slicing hyperplane, when there is one.
    pub hyperplane: Option<(usize, usize)>,
    pub slice: CellSet,
    pub remainder_components: Vec<CellSet>,
}

impl SplitStep {
    /// Cell conservation: slice and components partition the input.
    pub fn conserves_cells(&self) -> bool {
        let total = self.slice.len() + self.remainder_components.iter().map(CellSet::len).sum::<usize>();
        let mut union = self.slice.cells().clone();
        for c in &self.remainder_components {
            union.extend(c.iter().cloned());
        }
        total == self.input.len() && &union == self.input.cells()
    }
}

/// Splits `space` along a subset that is closed in it.
pub fn split(space: &CellSet, closed: &CellSet) -> Result<SplitStep> {
    closed.check_closed_in(space)?;
    let rest = space.difference(closed)?;
    Ok(SplitStep {
        input: space.clone(),
        hyperplane: None,
        slice: closed.clone(),
        remainder_components: rest.connected_components(),
    })
}

/// Cells of `space` sitting at vertex level `level` on `axis`.
pub fn hyperplane_slice(space: &CellSet, axis: usize, level: usize) -> Result<CellSet> {
    let dim = space.grid().dim();
    if axis >= dim {
        return Err(Error::AxisOutOfRange { axis, dim });
    }
    if !space.used_levels(axis).contains(&level) {
        return Err(Error::UnusedLevel { axis, level });
    }
    Ok(space.filter(|c| c.coords()[axis] == 2 * level))
}

/// Node of a [`SlicePlan`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanNode {
    pub cells: CellSet,
    pub split: Option<NodeSplit>,
}

/// How a plan node was divided; children are indices into the node list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeSplit {
    pub hyperplane: Option<(usize, usize)>,
    pub slice: CellSet,
    pub slice_parts: Vec<usize>,
    pub components: Vec<usize>,
}

/// A tree of splits reducing a cell set to single-cell leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlicePlan {
    nodes: Vec<PlanNode>,
    order: Vec<usize>,
}

impl SlicePlan {
    pub fn root(&self) -> &CellSet {
        &self.nodes[0].cells
    }

    pub fn nodes(&self) -> &[PlanNode] {
        &self.nodes
    }

    /// Splits in the order the stack processed them.
    pub fn steps(&self) -> Vec<SplitStep> {
        self.order
            .iter()
            .map(|&id| {
                let node = &self.nodes[id];
                let split = node.split.as_ref().expect("ordered nodes are split");
                SplitStep {
                    input: node.cells.clone(),
                    hyperplane: split.hyperplane,
                    slice: split.slice.clone(),
                    remainder_components: split.components.iter().map(|&c| self.nodes[c].cells.clone()).collect(),
                }
            })
            .collect()
    }

    pub fn leaves(&self) -> Vec<&CellSet> {
        self.nodes.iter().filter(|n| n.split.is_none()).map(|n| &n.cells).collect()
    }

    /// Whether the leaves are single cells that together make up the root exactly once.
    pub fn leaves_partition_root(&self) -> bool {
        let leaves = self.leaves();
        let mut seen = BTreeSet::new();
        for leaf in &leaves {
            if leaf.len() != 1 || !seen.insert(leaf.iter().next().expect("one cell").clone()) {
                return false;
            }
        }
        &seen == self.root().cells()
    }

    /// Nested `{"cells", "axis", "level", "slice", "slice_components", "components"}`;
    /// leaves carry only `"cells"`.
    pub fn to_json(&self) -> Value {
        self.node_json(0)
    }

    fn node_json(&self, id: usize) -> Value {
        let node = &self.nodes[id];
        match &node.split {
            None => json!({ "cells": node.cells.to_json_cells() }),
            Some(s) => json!({
                "cells": node.cells.to_json_cells(),
                "axis": s.hyperplane.map(|h| h.0),
                "level": s.hyperplane.map(|h| h.1),
                "slice": s.slice.to_json_cells(),
                "slice_components": s.slice_parts.iter().map(|&c| self.node_json(c)).collect::<Vec<_>>(),
                "components": s.components.iter().map(|&c| self.node_json(c)).collect::<Vec<_>>(),
            }),
        }
    }
}

/// Picks the slicing hyperplane for a piece: height-realizing axes first, then
/// the others, each in index order; on an axis the level is the lower median of
/// the levels where some cell of the piece sits. The first choice that leaves
/// a nonempty remainder wins.
fn choose_hyperplane(piece: &CellSet) -> Option<(usize, usize)> {
    let height = piece.height().ok()?;
    let dim = piece.grid().dim();
    let rest = (0..dim).filter(|k| !height.realizing_axes.contains(k));
    for axis in height.realizing_axes.iter().copied().chain(rest) {
        let levels: Vec<usize> = piece.occupied_levels(axis).into_iter().collect();
        if levels.is_empty() {
            continue;
        }
        let level = levels[(levels.len() - 1) / 2];
        let size = piece.iter().filter(|c| c.coords()[axis] == 2 * level).count();
        if size < piece.len() {
            return Some((axis, level));
        }
    }
    None
}

/// Reduces a cell set to single-cell leaves with a stack of pending pieces.
///
/// A popped piece with one cell becomes a leaf. Otherwise it is sliced at the
/// hyperplane from [`choose_hyperplane`]; the connected components of the
/// slice and of the remainder are pushed back. A piece admitting no proper
/// slice is disconnected, and is split into its components instead.
pub fn slice_plan(space: &CellSet) -> SlicePlan {
    let mut nodes = vec![PlanNode { cells: space.clone(), split: None }];
    let mut order = Vec::new();
    let mut stack = vec![0usize];
    while let Some(id) = stack.pop() {
        let piece = nodes[id].cells.clone();
        if piece.len() <= 1 {
            continue;
        }
        let (hyperplane, slice, slice_parts, rest) = match choose_hyperplane(&piece) {
            Some((axis, level)) => {
                let slice = piece.filter(|c| c.coords()[axis] == 2 * level);
                let parts = slice.connected_components();
                let rest = piece.difference(&slice).expect("same grid");
                (Some((axis, level)), slice, parts, rest)
            }
            None => (None, CellSet::empty(piece.grid().clone()), Vec::new(), piece.clone()),
        };
        let push = |cells: CellSet, nodes: &mut Vec<PlanNode>| {
            nodes.push(PlanNode { cells, split: None });
            nodes.len() - 1
        };
        let slice_ids: Vec<usize> = slice_parts.into_iter().map(|c| push(c, &mut nodes)).collect();
        let comp_ids: Vec<usize> = rest.connected_components().into_iter().map(|c| push(c, &mut nodes)).collect();
        stack.extend(slice_ids.iter().chain(&comp_ids).copied());
        nodes[id].split = Some(NodeSplit { hyperplane, slice, slice_parts: slice_ids, components: comp_ids });
        order.push(id);
    }
    SlicePlan { nodes, order }
}

/// Result of checking one split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepVerdict {
    pub step: usize,
    pub input_cells: usize,
    pub slice_cells: usize,
    pub components: usize,
    pub slice_closed: bool,
    pub mismatches: Vec<Cell>,
}

impl StepVerdict {
    pub fn passed(&self) -> bool {
        self.slice_closed && self.mismatches.is_empty()
    }
}

/// Per-step additivity verdicts for a plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditivityReport {
    pub steps: Vec<StepVerdict>,
    /// Class of the whole module, re-assembled from the single-cell leaves.
    pub assembled: K0Class,
    pub leaves_match: bool,
}

impl AdditivityReport {
    pub fn passed(&self) -> bool {
        self.leaves_match && self.steps.iter().all(StepVerdict::passed)
    }
}

/// Checks, for every split of the plan, that the class of the module on the
/// piece is the concatenation of its classes on the slice and on each
/// remainder component, and that the leaves re-assemble the full class.
pub fn verify_additivity(module: &PersistenceModule, plan: &SlicePlan) -> Result<AdditivityReport> {
    if module.space() != plan.root() {
        return Err(Error::InvalidModule("module space differs from the plan root".into()));
    }
    verify_assembly(plan, &k0_class(module), |piece| Ok(k0_class(&module.restrict(piece)?)))
}

/// Additivity check against an arbitrary class assignment on pieces; the
/// root class is compared with the concatenation of the leaf classes.
pub fn verify_assembly(
    plan: &SlicePlan,
    root_class: &K0Class,
    class_of: impl Fn(&CellSet) -> Result<K0Class>,
) -> Result<AdditivityReport> {
    let mut steps = Vec::new();
    for (index, step) in plan.steps().into_iter().enumerate() {
        let parent = class_of(&step.input)?;
        let mut pieces = Vec::new();
        if !step.slice.is_empty() {
            pieces.push(class_of(&step.slice)?);
        }
        for comp in &step.remainder_components {
            pieces.push(class_of(comp)?);
        }
        let mismatches = match K0Class::disjoint_union(&pieces) {
            Ok(glued) => diff_cells(&parent, &glued),
            Err(_) => step.input.iter().cloned().collect(),
        };
        steps.push(StepVerdict {
            step: index,
            input_cells: step.input.len(),
            slice_cells: step.slice.len(),
            components: step.remainder_components.len(),
            slice_closed: step.slice.is_closed_in(&step.input),
            mismatches,
        });
    }
    let leaf_classes = plan.leaves().into_iter().map(&class_of).collect::<Result<Vec<_>>>()?;
    let assembled = if leaf_classes.is_empty() {
        K0Class::zero(plan.root())
    } else {
        K0Class::disjoint_union(&leaf_classes)?
    };
    let leaves_match = &assembled == root_class;
    Ok(AdditivityReport { steps, assembled, leaves_match })
}

fn diff_cells(a: &K0Class, b: &K0Class) -> Vec<Cell> {
    let cells: BTreeSet<&Cell> = a.values().keys().chain(b.values().keys()).collect();
    cells
        .into_iter()
        .filter(|c| a.get(c) != b.get(c))
        .cloned()
        .collect()
}

/// All cells of the standard `d`-cube `[0,1]^d`.
pub fn cube_hull(d: usize) -> Result<CellSet> {
    if d < 2 {
        return Err(Error::CubeDimension(d));
    }
    Ok(CellSet::hull(Arc::new(StratifiedGrid::integer(&vec![2; d])?)))
}

/// The `d`-cube with its top cell removed.
pub fn cube_boundary(d: usize) -> Result<CellSet> {
    let hull = cube_hull(d)?;
    let top = Cell::new(vec![1; d]);
    Ok(hull.filter(|c| *c != top))
}

/// Facets of a cube boundary, joined when they share a ridge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetDualGraph {
    pub dim: usize,
    pub facets: Vec<Cell>,
    pub adjacency: Vec<Vec<usize>>,
    /// `(i, j, ridge)` for every adjacent pair `i < j`.
    pub ridges: Vec<(usize, usize, Cell)>,
}

impl FacetDualGraph {
    pub fn are_adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency.get(a).is_some_and(|n| n.contains(&b))
    }

    pub fn ridge(&self, a: usize, b: usize) -> Option<&Cell> {
        let (i, j) = (a.min(b), a.max(b));
        self.ridges.iter().find(|r| r.0 == i && r.1 == j).map(|r| &r.2)
    }
}

pub fn facet_dual_graph(d: usize) -> Result<FacetDualGraph> {
    let boundary = cube_boundary(d)?;
    let facets: Vec<Cell> = boundary.iter().filter(|c| c.dimension() == d - 1).cloned().collect();
    let mut adjacency = vec![Vec::new(); facets.len()];
    let mut ridges = Vec::new();
    for i in 0..facets.len() {
        for j in i + 1..facets.len() {
            let (a, b) = (facets[i].coords(), facets[j].coords());
            let closed_a = (0..d).find(|&k| a[k] != 1).expect("facet has a closed axis");
            let closed_b = (0..d).find(|&k| b[k] != 1).expect("facet has a closed axis");
            if closed_a != closed_b {
                let mut ridge = a.to_vec();
                ridge[closed_b] = b[closed_b];
                adjacency[i].push(j);
                adjacency[j].push(i);
                ridges.push((i, j, Cell::new(ridge)));
            }
        }
    }
    Ok(FacetDualGraph { dim: d, facets, adjacency, ridges })
}

/// Every Hamiltonian path of the dual graph, found by backtracking. Each
/// undirected path appears once per direction.
pub fn hamiltonian_paths(graph: &FacetDualGraph) -> Vec<Vec<usize>> {
    fn extend(graph: &FacetDualGraph, path: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if path.len() == graph.facets.len() {
            out.push(path.clone());
            return;
        }
        let last = *path.last().expect("nonempty path");
        for &next in &graph.adjacency[last] {
            if !used[next] {
                used[next] = true;
                path.push(next);
                extend(graph, path, used, out);
                path.pop();
                used[next] = false;
            }
        }
    }
    let mut out = Vec::new();
    for start in 0..graph.facets.len() {
        let mut used = vec![false; graph.facets.len()];
        used[start] = true;
        extend(graph, &mut vec![start], &mut used, &mut out);
    }
    out
}

/// Cut set of a path unfolding: the ridges between adjacent facets that are
/// not consecutive on the path, and the closure of their union.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSet {
    pub cut_ridges: Vec<Cell>,
    pub cells: CellSet,
    /// Dimension of the cut ridges, `d - 2`.
    pub ridge_dimension: usize,
}

pub fn ridge_cut_set(graph: &FacetDualGraph, path: &[usize]) -> Result<CutSet> {
    let n = graph.facets.len();
    if path.len() != n {
        return Err(Error::NotHamiltonian(format!("path visits {} of {n} facets", path.len())));
    }
    let distinct: BTreeSet<usize> = path.iter().copied().collect();
    if distinct.len() != n || distinct.iter().any(|&f| f >= n) {
        return Err(Error::NotHamiltonian("path repeats or invents a facet".into()));
    }
    for w in path.windows(2) {
        if !graph.are_adjacent(w[0], w[1]) {
            return Err(Error::NotHamiltonian(format!("facets {} and {} share no ridge", w[0], w[1])));
        }
    }
    let hinges: BTreeSet<(usize, usize)> = path.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
    let cut_ridges: Vec<Cell> = graph
        .ridges
        .iter()
        .filter(|(i, j, _)| !hinges.contains(&(*i, *j)))
        .map(|(_, _, r)| r.clone())
        .collect();
    let boundary = cube_boundary(graph.dim)?;
    let cells = CellSet::new(boundary.grid().clone(), cut_ridges.iter().cloned())?.closure();
    if !cells.is_closed() {
        return Err(Error::NotClosed {
            cell: cut_ridges[0].clone(),
            face: cut_ridges[0].clone(),
        });
    }
    if !cells.is_connected() {
        return Err(Error::CutSetDisconnected);
    }
    Ok(CutSet { cut_ridges, cells, ridge_dimension: graph.dim - 2 })
}

/// Classes of a module on a cube after removing the interior and cutting the
/// boundary along an unfolding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeSplitReport {
    pub interior: K0Class,
    pub cut: K0Class,
    pub remainder: Vec<K0Class>,
    pub cut_ridges: usize,
    pub assembled: K0Class,
    pub passed: bool,
}

/// Splits the cube hull along its boundary, then the boundary along the cut
/// set of `path`, and re-assembles the module's class from the three kinds of
/// pieces.
pub fn cube_split_check(path: &[usize], module: &PersistenceModule) -> Result<CubeSplitReport> {
    let d = module.grid().dim();
    let hull = cube_hull(d)?;
    if module.space().cells() != hull.cells() || module.grid().points_per_axis() != vec![2; d] {
        return Err(Error::InvalidModule(format!("module does not live on the full {d}-cube")));
    }
    let hull = module.space().clone();
    let boundary_cells = cube_boundary(d)?;
    let boundary = hull.filter(|c| boundary_cells.contains(c));
    let graph = facet_dual_graph(d)?;
    let cut = ridge_cut_set(&graph, path)?;
    let cut_cells = hull.filter(|c| cut.cells.contains(c));

    let outer = split(&hull, &boundary)?;
    let inner = split(&boundary, &cut_cells)?;
    let class_of = |s: &CellSet| -> Result<K0Class> { Ok(k0_class(&module.restrict(s)?)) };

    let interior = class_of(&outer.remainder_components[0])?;
    let cut_class = class_of(&cut_cells)?;
    let remainder = inner
        .remainder_components
        .iter()
        .map(class_of)
        .collect::<Result<Vec<_>>>()?;
    let mut pieces = vec![interior.clone(), cut_class.clone()];
    pieces.extend(remainder.iter().cloned());
    let assembled = K0Class::disjoint_union(&pieces)?;
    let passed = assembled == k0_class(module) && outer.conserves_cells() && inner.conserves_cells();
    Ok(CubeSplitReport {
        interior,
        cut: cut_class,
        remainder,
        cut_ridges: cut.cut_ridges.len(),
        assembled,
        passed,
    })
}
