use thiserror::Error;

use crate::grid_space::Cell;

/// Errors raised by the library. Every variant is a domain error: the input
/// violated a precondition of the operation that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grid needs at least one axis")]
    NoAxes,
    #[error("axis {axis} is empty")]
    EmptyAxis { axis: usize },
    #[error("axis {axis} is not strictly increasing at position {position}")]
    UnsortedAxis { axis: usize, position: usize },
    #[error("cell {cell} is not a cell of the grid")]
    CellOutOfRange { cell: Cell },
    #[error("cell set is empty")]
    EmptyCellSet,
    #[error("cell sets live on different grids")]
    GridMismatch,
    #[error("{0} is not a subset of the ambient space")]
    NotSubset(String),
    #[error("subset is not closed in the ambient space: missing face {face} of {cell}")]
    NotClosed { cell: Cell, face: Cell },
    #[error("support is not face-convex: {between} lies between {upper} and {lower} but is missing")]
    NotConvex { upper: Cell, between: Cell, lower: Cell },
    #[error("level {level} on axis {axis} is not used by the cell set")]
    UnusedLevel { axis: usize, level: usize },
    #[error("axis {axis} out of range for a {dim}-parameter grid")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("unknown field {0:?}; expected F<p> or Q")]
    UnknownField(String),
    #[error("cannot parse {0:?} as a field element")]
    BadScalar(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid poset representation: {0}")]
    InvalidPosetRep(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("component at {cell} is not invertible")]
    NotInvertible { cell: Cell },
    #[error("not a short exact sequence: {0}")]
    NotExact(String),
    #[error("point {0} lies outside the grid hull")]
    OutsideHull(String),
    #[error("need at least 2 samples per axis, got {0}")]
    TooFewSamples(usize),

    #[error("cube dimension must be at least 2, got {0}")]
    CubeDimension(usize),
    #[error("not a Hamiltonian path: {0}")]
    NotHamiltonian(String),
    #[error("cut set is not connected")]
    CutSetDisconnected,

    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("grid point {0} is outside the filtration shape")]
    PointOutOfRange(String),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
