use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),

    #[error("term {term} has degree {found}, expected {expected}")]
    InhomogeneousTerm {
        term: String,
        found: u32,
        expected: u32,
    },

    #[error("cannot parse polynomial: {0}")]
    Parse(String),

    #[error("zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("grid size n = {n} is too small (need n >= {min})")]
    GridTooSmall { n: u32, min: u32 },

    #[error("point {0:?} is not in the punctured grid")]
    NotInPuncturedGrid([u32; 3]),

    #[error("segment endpoints coincide")]
    CoincidentPoints,

    #[error("segment is collinear with (n,0,0); its linear system forces a = 0")]
    CollinearWithFirstVertex,

    #[error("segment is one of the boundary segments H1, H2, H3")]
    BoundarySegment,

    #[error("point {0:?} is not interior")]
    NotInterior([u32; 3]),

    #[error("degenerate data: {0}")]
    Degenerate(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("input is not squarefree")]
    NotReduced,

    #[error("curve is a union of concurrent lines (partials are linearly dependent)")]
    ConcurrentLines,

    #[error("Hilbert function has not stabilized: {0} at degree {2} vs {1} at degree {3}")]
    PlateauMismatch(u64, u64, u32, u32),

    #[error("point is not a singular point of the curve")]
    NotSingular,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("inconsistent linear system")]
    Inconsistent,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
