use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("nu = {nu} is outside the supported range {min}..={max}")]
    NuOutOfRange { nu: usize, min: usize, max: usize },

    #[error("vector dimension {0} must be even and between 6 and 16")]
    BadDimension(usize),

    #[error("bits {bits:#x} do not fit in dimension {dim}")]
    BitsOutOfRange { bits: u32, dim: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("right-hand side has {got} entries but the matrix has {rows} rows")]
    RhsLength { rows: usize, got: usize },

    #[error("cannot parse {0:?} as a 0/1 coordinate string")]
    Parse(String),

    #[error("the zero vector is not a vertex")]
    ZeroVector,

    #[error("vertex sets overlap at vertex {0}")]
    OverlappingSets(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("graphs have different orders: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("graph is not labelled by vectors")]
    Unlabelled,

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("invalid special quadruple: {0}")]
    InvalidQuadruple(String),

    #[error("group generation limited to nu <= {max}, got {nu}")]
    GroupTooLarge { nu: usize, max: usize },

    #[error("partition does not cover the vertex set: {0}")]
    BadPartition(String),

    #[error("no cell with id {0}")]
    NoSuchCell(usize),

    #[error(
        "cell {cell} is not a Godsil-McKay cell: vertex {vertex} has {count} neighbours in cell {other} of size {size}"
    )]
    NotGmCell {
        cell: usize,
        vertex: usize,
        other: usize,
        count: usize,
        size: usize,
    },

    #[error(
        "cell {cell} is not a Godsil-McKay cell: remaining cells are not equitable ({reason})"
    )]
    NotGmCellEquitable { cell: usize, reason: String },

    #[error("switching cell {0} does not act uniformly on every other cell")]
    NonUniformSwitch(usize),

    #[error("triple vertices must be distinct: ({0}, {1}, {2})")]
    NonDistinctTriple(usize, usize, usize),

    #[error("exhaustive scan refused for n = {n} (limit {limit}); use sampling")]
    ExhaustiveTooLarge { n: usize, limit: usize },

    #[error("graph has fewer than three vertices")]
    TooSmall,
}
