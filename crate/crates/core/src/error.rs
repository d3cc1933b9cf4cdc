use thiserror::Error;

use crate::graph::{Dart, ValidationReport};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("torus basis is singular (det = {det:e})")]
    SingularTorus { det: f64 },

    #[error("invalid torus graph: {0}")]
    InvalidGraph(ValidationReport),

    #[error("expected a vector of length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("stress on edge {edge} is zero")]
    ZeroStress { edge: usize },

    #[error("stress on edge {edge} is not strictly positive ({value})")]
    NonPositiveStress { edge: usize, value: f64 },

    #[error("vector is not a circulation (max vertex imbalance {max_imbalance:e})")]
    NotCirculation { max_imbalance: f64 },

    #[error("stress is not in equilibrium (max residual {max_residual:e}, threshold {threshold:e})")]
    NotEquilibrium { max_residual: f64, threshold: f64 },

    #[error("ambiguous rotation at vertex {vertex}: darts {first:?} and {second:?} leave in the same direction")]
    AmbiguousRotation { vertex: usize, first: Dart, second: Dart },

    #[error("row {row} of the homology matrix sums to {sum} around face {face}")]
    CocirculationViolation { row: usize, face: usize, sum: i64 },

    #[error("face {face} does not close (gap {gap:e})")]
    OpenFace { face: usize, gap: f64 },

    #[error("weighted Laplacian is singular; is the blueprint connected?")]
    SingularLaplacian,

    #[error("dual edge {edge} has non-integral homology (deviation {deviation:e})")]
    NonIntegralDualHomology { edge: usize, deviation: f64 },

    #[error("unknown instance `{0}`")]
    UnknownInstance(String),

    #[error("unknown stress `{0}`")]
    UnknownStress(String),

    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("edge {edge} has a non-integer shift {shift:?}")]
    NonIntegerShift { edge: usize, shift: [f64; 2] },

    #[error("rotation of vertex {vertex} lists dart {dart} more than once")]
    DuplicateRotationEntry { vertex: usize, dart: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
