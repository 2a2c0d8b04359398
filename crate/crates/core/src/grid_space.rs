//! Stratified grid parameter spaces.
//!
//! A grid is a product of finite sets of rationals, one per axis. Its bounded
//! hull is stratified by open cubes, and each stratum is a [`Cell`] given by
//! interleaved integer coordinates: on an axis with `n` values the coordinate
//! ranges over `0..2n-1`, where `2i` is the vertex at the `i`-th value and
//! `2i+1` is the open interval between values `i` and `i+1`.
//!
//! The face relation is coordinatewise: `tau` is a face of `sigma` iff on every
//! axis either the coordinates agree, or `sigma`'s is odd and `tau`'s is one
//! of its two neighbours.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};

/// One stratum of a grid stratification.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell(Vec<usize>);

impl Cell {
    pub fn new(coords: impl Into<Vec<usize>>) -> Cell {
        Cell(coords.into())
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.len()
    }

    /// Number of open (odd) coordinates.
    pub fn dimension(&self) -> usize {
        self.0.iter().filter(|c| *c % 2 == 1).count()
    }

    /// Non-strict face relation: `self` is a face of `other` (or equal to it).
    pub fn is_face_of(&self, other: &Cell) -> bool {
        self.0.len() == other.0.len()
            && self.0.iter().zip(&other.0).all(|(&t, &s)| {
                t == s || (s % 2 == 1 && (t + 1 == s || t == s + 1))
            })
    }

    /// Every face other than the cell itself.
    pub fn proper_faces(&self) -> Vec<Cell> {
        let options: Vec<Vec<usize>> = self
            .0
            .iter()
            .map(|&c| if c % 2 == 1 { vec![c - 1, c, c + 1] } else { vec![c] })
            .collect();
        cartesian(&options)
            .into_iter()
            .map(Cell)
            .filter(|c| c != self)
            .collect()
    }

    /// Faces of codimension one: one open coordinate closed to either endpoint.
    pub fn facets(&self) -> Vec<Cell> {
        let mut out = Vec::new();
        for (k, &c) in self.0.iter().enumerate() {
            if c % 2 == 1 {
                for t in [c - 1, c + 1] {
                    let mut coords = self.0.clone();
                    coords[k] = t;
                    out.push(Cell(coords));
                }
            }
        }
        out
    }

    /// Cells `tau` with `lower <= tau <= self` in the face order, both ends included.
    /// Empty unless `lower` is a face of `self`.
    pub fn cells_between(&self, lower: &Cell) -> Vec<Cell> {
        if !lower.is_face_of(self) {
            return Vec::new();
        }
        let options: Vec<Vec<usize>> = self
            .0
            .iter()
            .zip(&lower.0)
            .map(|(&s, &r)| if s == r { vec![s] } else { vec![r, s] })
            .collect();
        cartesian(&options).into_iter().map(Cell).collect()
    }

    /// Vertex levels touched on `axis`: the level itself for a vertex
    /// coordinate, both endpoints for an open one.
    pub fn levels(&self, axis: usize) -> impl Iterator<Item = usize> {
        let c = self.0[axis];
        let (lo, hi) = if c % 2 == 0 { (c / 2, c / 2) } else { (c / 2, c / 2 + 1) };
        lo..=hi
    }

    /// Grid point at the lower corner: every open coordinate moved down to its lower vertex.
    pub fn min_corner(&self) -> Vec<usize> {
        self.0.iter().map(|c| c / 2).collect()
    }

    /// Comma-joined coordinates, the key format used in JSON files.
    pub fn key(&self) -> String {
        join(&self.0)
    }

    pub fn parse_key(s: &str) -> Result<Cell> {
        parse_tuple(s).map(Cell)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

pub(crate) fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

pub(crate) fn parse_tuple(s: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad coordinate tuple {s:?}")))
        })
        .collect()
}

pub(crate) fn cartesian(options: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for opts in options {
        let mut next = Vec::with_capacity(acc.len() * opts.len());
        for prefix in &acc {
            for &o in opts {
                let mut v = prefix.clone();
                v.push(o);
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

/// A finite, strictly increasing set of values on one axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AxisGrid {
    values: Vec<BigRational>,
}

impl AxisGrid {
    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of interleaved coordinates, `2n - 1`.
    pub fn extent(&self) -> usize {
        2 * self.values.len() - 1
    }

    /// Interleaved coordinate of the stratum containing `x`.
    pub fn locate(&self, x: &BigRational) -> Option<usize> {
        match self.values.binary_search(x) {
            Ok(i) => Some(2 * i),
            Err(0) => None,
            Err(i) if i == self.values.len() => None,
            Err(i) => Some(2 * i - 1),
        }
    }
}

/// Bounded hull of the stratified space defined by one value set per axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StratifiedGrid {
    axes: Vec<AxisGrid>,
}

impl StratifiedGrid {
    pub fn new(axes: Vec<Vec<BigRational>>) -> Result<StratifiedGrid> {
        if axes.is_empty() {
            return Err(Error::NoAxes);
        }
        for (axis, values) in axes.iter().enumerate() {
            if values.is_empty() {
                return Err(Error::EmptyAxis { axis });
            }
            if let Some(position) = values.windows(2).position(|w| w[0] >= w[1]) {
                return Err(Error::UnsortedAxis { axis, position: position + 1 });
            }
        }
        Ok(StratifiedGrid {
            axes: axes.into_iter().map(|values| AxisGrid { values }).collect(),
        })
    }

    /// Grid with values `0, 1, ..., n_k - 1` on axis `k`.
    pub fn integer(points_per_axis: &[usize]) -> Result<StratifiedGrid> {
        StratifiedGrid::new(
            points_per_axis
                .iter()
                .map(|&n| (0..n).map(|i| BigRational::from_integer(i.into())).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[AxisGrid] {
        &self.axes
    }

    pub fn axis(&self, k: usize) -> &AxisGrid {
        &self.axes[k]
    }

    pub fn points_per_axis(&self) -> Vec<usize> {
        self.axes.iter().map(AxisGrid::len).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.axes.iter().map(AxisGrid::extent).product()
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        cell.ambient_dim() == self.dim()
            && cell.coords().iter().zip(&self.axes).all(|(&c, a)| c < a.extent())
    }

    pub fn check_cell(&self, cell: &Cell) -> Result<()> {
        if self.contains(cell) {
            Ok(())
        } else {
            Err(Error::CellOutOfRange { cell: cell.clone() })
        }
    }

    /// All cells in lexicographic coordinate order.
    pub fn cells(&self) -> Vec<Cell> {
        let options: Vec<Vec<usize>> = self.axes.iter().map(|a| (0..a.extent()).collect()).collect();
        cartesian(&options).into_iter().map(Cell).collect()
    }

    /// The unique cell containing a point of the hull.
    pub fn locate(&self, point: &[BigRational]) -> Result<Cell> {
        let outside = || {
            Error::OutsideHull(format!(
                "({})",
                point.iter().map(crate::exact_linalg::format_rational).collect::<Vec<_>>().join(",")
            ))
        };
        if point.len() != self.dim() {
            return Err(outside());
        }
        self.axes
            .iter()
            .zip(point)
            .map(|(a, x)| a.locate(x).ok_or_else(outside))
            .collect::<Result<Vec<_>>>()
            .map(Cell)
    }

    /// Lower and upper hull bounds per axis.
    pub fn bounds(&self) -> Vec<(BigRational, BigRational)> {
        self.axes
            .iter()
            .map(|a| (a.values[0].clone(), a.values[a.len() - 1].clone()))
            .collect()
    }

    /// Representative point inside a cell: the vertex value or the midpoint of the gap.
    pub fn sample_point(&self, cell: &Cell) -> Vec<BigRational> {
        cell.coords()
            .iter()
            .zip(&self.axes)
            .map(|(&c, a)| {
                if c % 2 == 0 {
                    a.values[c / 2].clone()
                } else {
                    (&a.values[c / 2] + &a.values[c / 2 + 1]) / BigRational::from_integer(2.into())
                }
            })
            .collect()
    }
}

/// Builds a grid from per-axis value lists.
pub fn build_grid(axes: Vec<Vec<BigRational>>) -> Result<StratifiedGrid> {
    StratifiedGrid::new(axes)
}

/// Height of a cell set and the axes that realize it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Height {
    pub height: usize,
    pub realizing_axes: BTreeSet<usize>,
}

/// Outcome of [`CellSet::is_cubical_manifold`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldCheck {
    pub is_manifold: bool,
    pub diagnostics: Vec<String>,
}

/// A finite set of cells of one grid: a substratified space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CellSet {
    grid: Arc<StratifiedGrid>,
    cells: BTreeSet<Cell>,
}

impl CellSet {
    pub fn new(grid: Arc<StratifiedGrid>, cells: impl IntoIterator<Item = Cell>) -> Result<CellSet> {
        let cells: BTreeSet<Cell> = cells.into_iter().collect();
        for c in &cells {
            grid.check_cell(c)?;
        }
        Ok(CellSet { grid, cells })
    }

    pub fn hull(grid: Arc<StratifiedGrid>) -> CellSet {
        let cells = grid.cells().into_iter().collect();
        CellSet { grid, cells }
    }

    pub fn empty(grid: Arc<StratifiedGrid>) -> CellSet {
        CellSet { grid, cells: BTreeSet::new() }
    }

    pub fn grid(&self) -> &Arc<StratifiedGrid> {
        &self.grid
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn iter(&self) -> impl Iterator<Item = &Cell> {
        self.cells.iter()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.cells.contains(cell)
    }

    pub fn same_grid(&self, other: &CellSet) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || self.grid == other.grid
    }

    fn with_cells(&self, cells: BTreeSet<Cell>) -> CellSet {
        CellSet { grid: self.grid.clone(), cells }
    }

    /// Cells satisfying a predicate, on the same grid.
    pub fn filter(&self, mut keep: impl FnMut(&Cell) -> bool) -> CellSet {
        self.with_cells(self.cells.iter().filter(|c| keep(c)).cloned().collect())
    }

    pub fn is_subset(&self, other: &CellSet) -> bool {
        self.same_grid(other) && self.cells.is_subset(&other.cells)
    }

    pub fn union(&self, other: &CellSet) -> Result<CellSet> {
        self.require_same_grid(other)?;
        Ok(self.with_cells(self.cells.union(&other.cells).cloned().collect()))
    }

    pub fn difference(&self, other: &CellSet) -> Result<CellSet> {
        self.require_same_grid(other)?;
        Ok(self.with_cells(self.cells.difference(&other.cells).cloned().collect()))
    }

    pub fn intersection(&self, other: &CellSet) -> Result<CellSet> {
        self.require_same_grid(other)?;
        Ok(self.with_cells(self.cells.intersection(&other.cells).cloned().collect()))
    }

    pub(crate) fn require_same_grid(&self, other: &CellSet) -> Result<()> {
        if self.same_grid(other) {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    pub(crate) fn require_subset_of(&self, other: &CellSet, what: &str) -> Result<()> {
        self.require_same_grid(other)?;
        if self.cells.is_subset(&other.cells) {
            Ok(())
        } else {
            Err(Error::NotSubset(what.to_string()))
        }
    }

    /// Number of cells of each dimension, up to the largest dimension present.
    pub fn strata_counts(&self) -> Vec<usize> {
        let mut counts = Vec::new();
        for c in &self.cells {
            let d = c.dimension();
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
        counts
    }

    pub fn closure(&self) -> CellSet {
        let mut cells = self.cells.clone();
        for c in &self.cells {
            cells.extend(c.proper_faces());
        }
        self.with_cells(cells)
    }

    pub fn is_closed(&self) -> bool {
        self.first_missing_face(&|_: &Cell| true).is_none()
    }

    /// Whether every face of a cell of `self` that lies in `ambient` is in `self`.
    pub fn is_closed_in(&self, ambient: &CellSet) -> bool {
        self.check_closed_in(ambient).is_ok()
    }

    pub fn check_closed_in(&self, ambient: &CellSet) -> Result<()> {
        self.require_subset_of(ambient, "subspace")?;
        match self.first_missing_face(&|c: &Cell| ambient.contains(c)) {
            None => Ok(()),
            Some((cell, face)) => Err(Error::NotClosed { cell, face }),
        }
    }

    fn first_missing_face(&self, in_ambient: &dyn Fn(&Cell) -> bool) -> Option<(Cell, Cell)> {
        for c in &self.cells {
            for f in c.proper_faces() {
                if in_ambient(&f) && !self.cells.contains(&f) {
                    return Some((c.clone(), f));
                }
            }
        }
        None
    }

    /// Checks face-convexity inside `ambient`: whenever `lower <= upper` are
    /// both in `self`, every cell of `ambient` between them is in `self` too.
    pub fn check_convex_in(&self, ambient: &CellSet) -> Result<()> {
        self.require_subset_of(ambient, "support")?;
        for upper in &self.cells {
            for lower in upper.proper_faces() {
                if !self.cells.contains(&lower) {
                    continue;
                }
                for between in upper.cells_between(&lower) {
                    if ambient.contains(&between) && !self.cells.contains(&between) {
                        return Err(Error::NotConvex {
                            upper: upper.clone(),
                            between,
                            lower,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Components under the symmetric face relation restricted to the set,
    /// ordered by their smallest cell.
    pub fn connected_components(&self) -> Vec<CellSet> {
        let index: BTreeMap<&Cell, usize> = self.cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut parent: Vec<usize> = (0..self.cells.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (c, &i) in &index {
            for f in c.proper_faces() {
                if let Some(&j) = index.get(&f) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, BTreeSet<Cell>> = BTreeMap::new();
        for (c, &i) in &index {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().insert((*c).clone());
        }
        groups.into_values().map(|cells| self.with_cells(cells)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Necessary conditions for a cubical grid `d`-manifold: nonempty, closed,
    /// pure of dimension `d`, every `(d-1)`-cell on at most two `d`-cells, and no
    /// pinched lower-dimensional cell (its `d`-cells must be connected through
    /// shared `(d-1)`-cells around it).
    pub fn is_cubical_manifold(&self, d: usize) -> ManifoldCheck {
        let mut diagnostics = Vec::new();
        if self.is_empty() {
            diagnostics.push("empty".to_string());
        }
        if d > self.grid.dim() {
            diagnostics.push(format!("dimension {d} exceeds grid dimension {}", self.grid.dim()));
        }
        if let Some((cell, face)) = self.first_missing_face(&|_: &Cell| true) {
            diagnostics.push(format!("not closed: face {face} of {cell} is missing"));
        }
        if !diagnostics.is_empty() {
            return ManifoldCheck { is_manifold: false, diagnostics };
        }

        let top: Vec<&Cell> = self.cells.iter().filter(|c| c.dimension() == d).collect();
        for c in &self.cells {
            if c.dimension() > d || !top.iter().any(|t| c.is_face_of(t)) {
                diagnostics.push(format!("not pure: {c} is not a face of any {d}-cell"));
            }
        }
        if d > 0 {
            for ridge in self.cells.iter().filter(|c| c.dimension() == d - 1) {
                let n = top.iter().filter(|t| ridge.is_face_of(t)).count();
                if n > 2 {
                    diagnostics.push(format!("ridge {ridge} lies on {n} {d}-cells"));
                }
            }
            for c in self.cells.iter().filter(|c| c.dimension() + 2 <= d) {
                let star: Vec<&Cell> = top.iter().copied().filter(|t| c.is_face_of(t)).collect();
                let groups = star_groups(c, &star, &self.cells);
                if groups > 1 {
                    diagnostics.push(format!("pinch at {c}: its {d}-cells form {groups} separate groups"));
                }
            }
        }
        ManifoldCheck { is_manifold: diagnostics.is_empty(), diagnostics }
    }

    /// Vertex levels used on `axis` by any cell, counting endpoints of open coordinates.
    pub fn used_levels(&self, axis: usize) -> BTreeSet<usize> {
        self.cells.iter().flat_map(|c| c.levels(axis)).collect()
    }

    /// Vertex levels on `axis` at which some cell of the set actually sits.
    pub fn occupied_levels(&self, axis: usize) -> BTreeSet<usize> {
        self.cells
            .iter()
            .map(|c| c.coords()[axis])
            .filter(|c| c % 2 == 0)
            .map(|c| c / 2)
            .collect()
    }

    /// Largest number of distinct used levels on any axis, with every axis attaining it.
    pub fn height(&self) -> Result<Height> {
        if self.is_empty() {
            return Err(Error::EmptyCellSet);
        }
        let per_axis: Vec<usize> = (0..self.grid.dim()).map(|k| self.used_levels(k).len()).collect();
        let height = *per_axis.iter().max().expect("grid has an axis");
        let realizing_axes = per_axis
            .iter()
            .enumerate()
            .filter(|(_, &h)| h == height)
            .map(|(k, _)| k)
            .collect();
        Ok(Height { height, realizing_axes })
    }

    pub fn to_json_cells(&self) -> Vec<Vec<usize>> {
        self.cells.iter().map(|c| c.coords().to_vec()).collect()
    }
}

/// Number of groups the top cells around `center` fall into, where two top
/// cells are linked when they share a facet of the set that contains `center`.
fn star_groups(center: &Cell, star: &[&Cell], cells: &BTreeSet<Cell>) -> usize {
    let mut parent: Vec<usize> = (0..star.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for i in 0..star.len() {
        for j in i + 1..star.len() {
            if let Some(shared) = shared_facet(star[i], star[j]) {
                if cells.contains(&shared) && center.is_face_of(&shared) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    (0..star.len()).filter(|&i| find(&mut parent, i) == i).count()
}

/// The common facet of two equal-dimension cells, if they are adjacent across one.
fn shared_facet(a: &Cell, b: &Cell) -> Option<Cell> {
    let diff: Vec<usize> = (0..a.ambient_dim()).filter(|&k| a.coords()[k] != b.coords()[k]).collect();
    match diff.as_slice() {
        [k] => {
            let (x, y) = (a.coords()[*k], b.coords()[*k]);
            if x % 2 == 1 && y % 2 == 1 && x.abs_diff(y) == 2 {
                let mut coords = a.coords().to_vec();
                coords[*k] = x.min(y) + 1;
                Some(Cell::new(coords))
            } else {
                None
            }
        }
        _ => None,
    }
}

impl fmt::Display for CellSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.cells.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(points: &[usize]) -> Arc<StratifiedGrid> {
        Arc::new(StratifiedGrid::integer(points).unwrap())
    }

    fn set(g: &Arc<StratifiedGrid>, cells: &[&[usize]]) -> CellSet {
        CellSet::new(g.clone(), cells.iter().map(|c| Cell::new(c.to_vec()))).unwrap()
    }

    /// Seven closed unit squares: a bottom bar [0,3]x[0,1] and a column [3,4]x[0,4].
    fn l_shape() -> CellSet {
        let g = grid(&[7, 5]);
        let mut squares = Vec::new();
        for x in 0..3 {
            squares.push(Cell::new(vec![2 * x + 1, 1]));
        }
        for y in 0..4 {
            squares.push(Cell::new(vec![7, 2 * y + 1]));
        }
        CellSet::new(g, squares).unwrap().closure()
    }

    #[test]
    fn census_of_the_seven_by_five_grid() {
        let g = grid(&[7, 5]);
        let hull = CellSet::hull(g.clone());
        assert_eq!(hull.strata_counts(), vec![35, 58, 24]);
        assert_eq!(g.total_cells(), 117);
    }

    #[test]
    fn small_grids() {
        let point = grid(&[1]);
        assert_eq!(CellSet::hull(point.clone()).strata_counts(), vec![1]);
        assert_eq!(CellSet::hull(grid(&[2, 2])).strata_counts(), vec![4, 4, 1]);
        assert_eq!(CellSet::hull(grid(&[3])).strata_counts(), vec![3, 2]);
    }

    #[test]
    fn rejects_bad_axes() {
        assert_eq!(StratifiedGrid::new(vec![]), Err(Error::NoAxes));
        assert_eq!(StratifiedGrid::new(vec![vec![]]), Err(Error::EmptyAxis { axis: 0 }));
        let one = BigRational::from_integer(1.into());
        assert_eq!(
            StratifiedGrid::new(vec![vec![one.clone(), one]]),
            Err(Error::UnsortedAxis { axis: 0, position: 1 })
        );
    }

    #[test]
    fn proper_faces_of_square_edge_vertex() {
        let sq = Cell::new(vec![1, 1]);
        let faces = sq.proper_faces();
        assert_eq!(faces.len(), 8);
        assert_eq!(faces.iter().filter(|f| f.dimension() == 1).count(), 4);
        assert_eq!(Cell::new(vec![1, 0]).proper_faces().len(), 2);
        assert!(Cell::new(vec![0, 2]).proper_faces().is_empty());
    }

    #[test]
    fn closure_examples() {
        let g = grid(&[2, 2]);
        let sq = set(&g, &[&[1, 1]]);
        assert!(!sq.is_closed());
        assert_eq!(sq.closure().len(), 9);
        let v = set(&g, &[&[0, 0]]);
        assert!(v.is_closed());
        assert_eq!(v.closure(), v);
        let line = grid(&[3]);
        assert_eq!(set(&line, &[&[1], &[3]]).closure().len(), 5);
    }

    #[test]
    fn components_on_the_line() {
        let line = grid(&[3]);
        assert_eq!(set(&line, &[&[0], &[4]]).connected_components().len(), 2);
        let x = CellSet::hull(line.clone());
        let rest = x.difference(&set(&line, &[&[2]])).unwrap();
        let comps = rest.connected_components();
        assert_eq!(comps, vec![set(&line, &[&[0], &[1]]), set(&line, &[&[3], &[4]])]);
        assert_eq!(CellSet::hull(grid(&[7, 5])).connected_components().len(), 1);
    }

    #[test]
    fn square_with_corner_is_connected() {
        let g = grid(&[2, 2]);
        assert!(set(&g, &[&[1, 1], &[0, 0]]).is_connected());
    }

    #[test]
    fn manifold_checks() {
        let check = l_shape().is_cubical_manifold(2);
        assert!(check.is_manifold, "{:?}", check.diagnostics);

        let g = grid(&[3, 3]);
        let open = set(&g, &[&[1, 1]]);
        let check = open.is_cubical_manifold(2);
        assert!(!check.is_manifold);
        assert!(check.diagnostics[0].starts_with("not closed"));

        let pinched = set(&g, &[&[1, 1], &[3, 3]]).closure();
        let check = pinched.is_cubical_manifold(2);
        assert!(!check.is_manifold);
        assert!(check.diagnostics.iter().any(|d| d.starts_with("pinch at (2,2)")), "{:?}", check.diagnostics);

        let strip = set(&g, &[&[1, 1], &[3, 1]]).closure();
        assert!(strip.is_cubical_manifold(2).is_manifold);
        let dangling = set(&g, &[&[1, 1], &[3, 2]]).closure();
        assert!(!dangling.is_cubical_manifold(2).is_manifold);
    }

    #[test]
    fn ridge_on_three_cells_is_rejected() {
        let g = grid(&[2, 2, 3]);
        let hinge = set(&g, &[&[1, 1, 2], &[1, 2, 1], &[1, 2, 3]]).closure();
        let check = hinge.is_cubical_manifold(2);
        assert!(!check.is_manifold);
        assert!(check.diagnostics.iter().any(|d| d.contains("lies on 3")), "{:?}", check.diagnostics);
    }

    #[test]
    fn heights() {
        let line = CellSet::hull(grid(&[3]));
        let h = line.height().unwrap();
        assert_eq!((h.height, h.realizing_axes), (3, BTreeSet::from([0])));
        let sq = CellSet::hull(grid(&[2, 2]));
        assert_eq!(sq.height().unwrap().realizing_axes, BTreeSet::from([0, 1]));
        let full = CellSet::hull(grid(&[7, 5])).height().unwrap();
        assert_eq!((full.height, full.realizing_axes), (7, BTreeSet::from([0])));
        assert_eq!(l_shape().height().unwrap().height, 5);
        assert!(CellSet::empty(grid(&[2])).height().is_err());
    }

    #[test]
    fn locate_points() {
        let g = grid(&[3]);
        let half = |n: i64| BigRational::new(n.into(), 2.into());
        assert_eq!(g.locate(&[half(3)]).unwrap(), Cell::new(vec![3]));
        assert_eq!(g.locate(&[half(4)]).unwrap(), Cell::new(vec![4]));
        assert!(g.locate(&[half(5)]).is_err());
    }

    #[test]
    fn convexity() {
        let line = grid(&[3]);
        let x = CellSet::hull(line.clone());
        assert!(set(&line, &[&[0], &[4]]).check_convex_in(&x).is_ok());
        let g = grid(&[2, 2]);
        let sq = CellSet::hull(g.clone());
        // square and a corner without the edges between them
        assert!(set(&g, &[&[1, 1], &[0, 0]]).check_convex_in(&sq).is_err());
    }
}
