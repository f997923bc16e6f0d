use thiserror::Error;

use crate::space::CausalType;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is degenerate: rank {rank} in dimension {dim}")]
    DegenerateGram { rank: usize, dim: usize },
    #[error("plane vectors are linearly dependent")]
    DependentVectors,
    #[error("plane is degenerate (det h = 0)")]
    DegeneratePlane,
    #[error("sampler exhausted after {attempts} attempts looking for a {wanted} plane")]
    SamplerExhausted { wanted: CausalType, attempts: usize },
    #[error("no mixed complex lines")]
    NoMixedComplexLines,
    #[error("map is not self-adjoint")]
    NotSelfAdjoint,
    #[error("map square is not Id, -Id or 0")]
    BadSquare,
    #[error("kernel contains a spacelike vector")]
    SpacelikeKernel,
    #[error("not a pseudo-Hermitian complex structure: {0}")]
    InvalidComplexStructure(&'static str),
    #[error("admissible triple violates {0}")]
    TripleViolation(&'static str),
    #[error("tensors live on different spaces")]
    SpaceMismatch,
    #[error("dense expansion in dimension {dim} exceeds the limit {limit}")]
    DenseTooLarge { dim: usize, limit: usize },
    #[error("curvature operator does not commute with J")]
    NotComplexLinear,
    #[error("non-rational eigenvalues: characteristic polynomial {0}")]
    NonRationalSpectrum(String),
    #[error("invalid example: {0}")]
    InvalidExample(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{path}: {source}")]
    Context { path: String, source: Box<Error> },
}

impl Error {
    /// Stable machine-readable code used in JSON error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotSquare { .. } | Error::DimensionMismatch { .. } => "shape",
            Error::NotSymmetric | Error::DegenerateGram { .. } => "invalid_space",
            Error::DependentVectors | Error::DegeneratePlane => "degenerate_plane",
            Error::SamplerExhausted { .. } => "sampler_exhausted",
            Error::NoMixedComplexLines => "no_mixed_complex_lines",
            Error::NotSelfAdjoint | Error::BadSquare | Error::SpacelikeKernel => "not_admissible",
            Error::InvalidComplexStructure(_) => "invalid_complex_structure",
            Error::TripleViolation(_) => "invalid_triple",
            Error::SpaceMismatch => "space_mismatch",
            Error::DenseTooLarge { .. } => "dense_too_large",
            Error::NotComplexLinear => "not_complex_linear",
            Error::NonRationalSpectrum(_) => "non_rational_spectrum",
            Error::InvalidExample(_) => "invalid_example",
            Error::Parse(_) => "parse",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Context { source, .. } => source.code(),
        }
    }

    /// Prefixes the error with the location it refers to, such as a JSON path.
    pub fn at(self, path: impl Into<String>) -> Self {
        Error::Context {
            path: path.into(),
            source: Box::new(self),
        }
    }
}
