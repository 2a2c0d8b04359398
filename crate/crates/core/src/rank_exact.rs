//! Segments of grid posets, rank invariants, rank-exactness, and the
//! comparison between rank invariants and per-stratum dimension vectors.
//!
//! A grid stratum is a tuple of spine cells, one per axis: vertex `i` or the
//! edge `{i, i+1}`. Sending each tuple to the segment from its sources to its
//! targets is injective, which turns a rank invariant into a vector indexed
//! by strata.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grid_space::{cartesian, join, parse_tuple, Cell, CellSet};
use crate::k_theory::{k0_class, K0Class};
use crate::module_rep::{grid_points, monotone_import, PosetMorphism, PosetRep};

/// A comparable pair `source <= target` in a grid poset.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
}

impl Segment {
    pub fn new(source: Vec<usize>, target: Vec<usize>) -> Result<Segment> {
        if source.len() != target.len() || source.iter().zip(&target).any(|(a, b)| a > b) {
            return Err(Error::InvalidPosetRep(format!("{source:?} is not below {target:?}")));
        }
        Ok(Segment { source, target })
    }

    /// Unit steps along each axis, axis 0 first.
    pub fn axis_steps(&self) -> Vec<usize> {
        (0..self.source.len())
            .flat_map(|k| std::iter::repeat(k).take(self.target[k] - self.source[k]))
            .collect()
    }

    fn fits(&self, shape: &[usize]) -> bool {
        self.target.len() == shape.len() && self.target.iter().zip(shape).all(|(t, n)| t <= n)
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})->({})", join(&self.source), join(&self.target))
    }
}

/// All segments of `[n_1] x ... x [n_d]`, lexicographic in `(source, target)`.
pub fn segments(shape: &[usize]) -> Vec<Segment> {
    let mut out = Vec::new();
    for p in grid_points(shape) {
        let above: Vec<Vec<usize>> = p.iter().zip(shape).map(|(&a, &n)| (a..=n).collect()).collect();
        for q in cartesian(&above) {
            out.push(Segment { source: p.clone(), target: q });
        }
    }
    out
}

/// `prod (n_k + 1)(n_k + 2) / 2`.
pub fn segment_count(shape: &[usize]) -> usize {
    shape.iter().map(|n| (n + 1) * (n + 2) / 2).product()
}

/// `prod (2 n_k + 1)`.
pub fn strata_count(shape: &[usize]) -> usize {
    shape.iter().map(|n| 2 * n + 1).product()
}

/// Rank of the structure map across every segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankInvariant {
    shape: Vec<usize>,
    values: BTreeMap<Segment, usize>,
}

impl RankInvariant {
    pub fn from_values(shape: Vec<usize>, values: BTreeMap<Segment, usize>) -> Result<RankInvariant> {
        let expected = segments(&shape);
        if values.len() != expected.len() || expected.iter().any(|s| !values.contains_key(s)) {
            return Err(Error::Shape(format!("rank values do not cover the segments of {shape:?}")));
        }
        Ok(RankInvariant { shape, values })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn values(&self) -> &BTreeMap<Segment, usize> {
        &self.values
    }

    pub fn get(&self, seg: &Segment) -> Option<usize> {
        self.values.get(seg).copied()
    }

    pub fn add(&self, other: &RankInvariant) -> Result<RankInvariant> {
        if self.shape != other.shape {
            return Err(Error::Shape(format!("shapes {:?} and {:?}", self.shape, other.shape)));
        }
        let values = self.values.iter().map(|(s, v)| (s.clone(), v + other.values[s])).collect();
        Ok(RankInvariant { shape: self.shape.clone(), values })
    }

    /// One `p;p';value` row per segment, points written as `i,j`.
    pub fn to_csv(&self) -> String {
        self.values
            .iter()
            .map(|(s, v)| format!("{};{};{v}\n", join(&s.source), join(&s.target)))
            .collect()
    }

    pub fn from_csv(shape: &[usize], text: &str) -> Result<RankInvariant> {
        let mut values = BTreeMap::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let parts: Vec<&str> = line.trim().split(';').collect();
            let [p, q, v] = parts[..] else {
                return Err(Error::Parse(format!("expected p;p';value, got {line:?}")));
            };
            let seg = Segment::new(parse_tuple(p)?, parse_tuple(q)?)?;
            let v = v.parse().map_err(|_| Error::Parse(format!("bad rank {v:?}")))?;
            values.insert(seg, v);
        }
        RankInvariant::from_values(shape.to_vec(), values)
    }
}

pub fn rank_invariant(rep: &PosetRep) -> Result<RankInvariant> {
    if let Some(problem) = rep.validate().into_iter().next() {
        return Err(Error::InvalidPosetRep(problem));
    }
    let values = segments(rep.shape())
        .into_iter()
        .map(|s| {
            let r = rep.map_between(&s.source, &s.target)?.rank();
            Ok((s, r))
        })
        .collect::<Result<_>>()?;
    Ok(RankInvariant { shape: rep.shape().to_vec(), values })
}

/// Rank across a segment computed along the given order of unit steps, which
/// must be a rearrangement of the segment's axis steps.
pub fn rank_along(rep: &PosetRep, seg: &Segment, steps: &[usize]) -> Result<usize> {
    let mut sorted = steps.to_vec();
    sorted.sort_unstable();
    if sorted != seg.axis_steps() || !seg.fits(rep.shape()) {
        return Err(Error::InvalidPosetRep(format!("steps {steps:?} do not trace {seg}")));
    }
    Ok(rep.map_along(&seg.source, steps)?.rank())
}

/// Outcome of comparing `Rk G` with `Rk F + Rk H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankExactness {
    pub exact: bool,
    /// Segments where the ranks disagree, with `(Rk G, Rk F + Rk H)`.
    pub failures: Vec<(Segment, usize, usize)>,
}

fn check_poset_ses(phi: &PosetMorphism, psi: &PosetMorphism) -> Result<()> {
    if phi.target() != psi.source() {
        return Err(Error::NotExact("the middle representations differ".into()));
    }
    for p in phi.source().points() {
        let (a, b) = (phi.component(&p), psi.component(&p));
        let (ra, rb) = (a.rank(), b.rank());
        let exact = ra == phi.source().dim(&p)
            && rb == psi.target().dim(&p)
            && ra + rb == phi.target().dim(&p)
            && b.compose(a)?.is_zero();
        if !exact {
            return Err(Error::NotExact(format!("not exact at point {p:?}")));
        }
    }
    Ok(())
}

/// Checks pointwise exactness first, then compares rank invariants segment by segment.
pub fn rank_exactness(phi: &PosetMorphism, psi: &PosetMorphism) -> Result<RankExactness> {
    check_poset_ses(phi, psi)?;
    let rf = rank_invariant(phi.source())?;
    let rg = rank_invariant(phi.target())?;
    let rh = rank_invariant(psi.target())?;
    let failures: Vec<_> = rg
        .values
        .iter()
        .filter_map(|(s, &g)| {
            let sum = rf.values[s] + rh.values[s];
            (g != sum).then(|| (s.clone(), g, sum))
        })
        .collect();
    Ok(RankExactness { exact: failures.is_empty(), failures })
}

pub fn is_rank_exact(phi: &PosetMorphism, psi: &PosetMorphism) -> Result<bool> {
    Ok(rank_exactness(phi, psi)?.exact)
}

/// A cell of the spine of `[n]`: a vertex `i` or the edge `{i, i+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpineCell {
    Vertex(usize),
    Edge(usize),
}

impl SpineCell {
    pub fn source(self) -> usize {
        match self {
            SpineCell::Vertex(i) | SpineCell::Edge(i) => i,
        }
    }

    pub fn target(self) -> usize {
        match self {
            SpineCell::Vertex(i) => i,
            SpineCell::Edge(i) => i + 1,
        }
    }

    /// Interleaved grid coordinate: `2i` for a vertex, `2i + 1` for an edge.
    pub fn coord(self) -> usize {
        match self {
            SpineCell::Vertex(i) => 2 * i,
            SpineCell::Edge(i) => 2 * i + 1,
        }
    }

    pub fn from_coord(c: usize) -> SpineCell {
        if c % 2 == 0 {
            SpineCell::Vertex(c / 2)
        } else {
            SpineCell::Edge(c / 2)
        }
    }

    fn fits(self, n: usize) -> bool {
        self.target() <= n
    }
}

impl fmt::Display for SpineCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpineCell::Vertex(i) => write!(f, "v{i}"),
            SpineCell::Edge(i) => write!(f, "e{i}{}", i + 1),
        }
    }
}

pub fn spine_cells(cell: &Cell) -> Vec<SpineCell> {
    cell.coords().iter().map(|&c| SpineCell::from_coord(c)).collect()
}

pub fn spine_to_cell(cells: &[SpineCell]) -> Cell {
    Cell::new(cells.iter().map(|c| c.coord()).collect::<Vec<_>>())
}

/// Strata of the grid over `shape`, in the same lexicographic order as grid cells.
pub fn strata_index(shape: &[usize]) -> Vec<Vec<SpineCell>> {
    let options: Vec<Vec<usize>> = shape.iter().map(|&n| (0..=2 * n).collect()).collect();
    cartesian(&options)
        .into_iter()
        .map(|coords| coords.into_iter().map(SpineCell::from_coord).collect())
        .collect()
}

/// Sources to targets, axis by axis.
pub fn iota(cells: &[SpineCell], shape: &[usize]) -> Result<Segment> {
    if cells.len() != shape.len() || cells.iter().zip(shape).any(|(c, &n)| !c.fits(n)) {
        let shown: Vec<String> = cells.iter().map(ToString::to_string).collect();
        return Err(Error::Shape(format!("spine cells [{}] outside shape {shape:?}", shown.join(","))));
    }
    Ok(Segment {
        source: cells.iter().map(|c| c.source()).collect(),
        target: cells.iter().map(|c| c.target()).collect(),
    })
}

/// Segments not hit by [`iota`].
pub fn dropped_segments(shape: &[usize]) -> Vec<Segment> {
    let image: std::collections::BTreeSet<Segment> = strata_index(shape)
        .iter()
        .map(|c| iota(c, shape).expect("enumerated strata fit"))
        .collect();
    segments(shape).into_iter().filter(|s| !image.contains(s)).collect()
}

fn hull_of(shape: &[usize]) -> Result<CellSet> {
    let points: Vec<usize> = shape.iter().map(|n| n + 1).collect();
    Ok(CellSet::hull(Arc::new(crate::grid_space::StratifiedGrid::integer(&points)?)))
}

/// Reads off the rank invariant at the image of every stratum.
pub fn project(rank: &RankInvariant) -> Result<K0Class> {
    let space = hull_of(&rank.shape)?;
    let values = space
        .iter()
        .map(|cell| {
            let seg = iota(&spine_cells(cell), &rank.shape)?;
            Ok((cell.clone(), rank.values[&seg] as i64))
        })
        .collect::<Result<_>>()?;
    K0Class::from_values(&space, values)
}

/// Projected rank invariant next to the dimension vector of the imported module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison {
    pub projected: K0Class,
    pub k0: K0Class,
    pub equal: bool,
    pub differing: Vec<Cell>,
}

pub fn compare(rep: &PosetRep) -> Result<Comparison> {
    let projected = project(&rank_invariant(rep)?)?;
    let k0 = k0_class(&monotone_import(rep)?);
    let differing: Vec<Cell> = projected
        .values()
        .iter()
        .filter(|(c, v)| k0.get(c) != Some(**v))
        .map(|(c, _)| c.clone())
        .collect();
    Ok(Comparison { equal: differing.is_empty(), projected, k0, differing })
}
