//! Reciprocal diagrams for geodesic graphs drawn on flat tori.
//!
//! A graph on the flat torus `T_M = R²/MZ²` is stored as a combinatorial map
//! (darts plus a counterclockwise rotation system) together with vertex
//! positions in the reference square `[0,1)²` and an integer homology vector
//! per dart. Given an equilibrium stress the crate decides whether the dual
//! graph can be drawn with every dual edge orthogonal (or parallel) to its
//! primal edge on the same torus, builds such drawings, and checks whether
//! the result is an embedding.
//!
//! Module map:
//!
//! * [`torus`], [`graph`]: flat tori, darts, torus graphs, displacement and
//!   homology matrices.
//! * [`flows`]: circulations, cocirculations and their classes.
//! * [`stress`]: equilibrium checks, the covariance matrix, the space of
//!   equilibrium stresses and harmonic (spring) positioning.
//! * [`reciprocal`]: reciprocality criteria, force tori and dual drawings.
//! * [`analysis`]: embedding tests in the universal cover.
//! * [`document`], [`instances`], [`svg`]: file format, built-in instances and
//!   rendering.

pub mod analysis;
pub mod document;
pub mod error;
pub mod flows;
pub mod geometry;
pub mod graph;
pub mod instances;
pub mod reciprocal;
pub mod stress;
pub mod svg;
pub mod torus;

pub use analysis::{analyze_drawing, face_polygons, is_embedding, DegeneracyReport, FacePolygon};
pub use document::GraphDocument;
pub use error::{Error, Result};
pub use flows::{Circulation, Cocirculation, HomologyClass};
pub use graph::{
    Blueprint, Dart, DisplacementMatrix, FaceStructure, HomologyMatrix, IVec2, TorusGraph,
    ValidationReport, Violation,
};
pub use reciprocal::{
    DualDrawing, FamilyFreedom, OrthogonalOutcome, ReciprocalMode, ReciprocityReport, TorusFamily,
};
pub use stress::{CovarianceMatrix, EquilibriumReport, StressVector};
pub use torus::{FlatTorus, Mat2, Vec2};

/// Default absolute tolerance for geometric comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;
