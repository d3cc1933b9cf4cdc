//! Orthogonal and parallel reciprocal diagrams.
//!
//! Let `Δ` be the reference displacement matrix of `G` on `T_M`, `Ω` the
//! diagonal stress matrix and `C = ΔΩΔᵀ` the covariance matrix.
//!
//! * Parallel: the dual edge of `e` has native displacement `ω_e M Δ_e`. The
//!   resulting force diagram lives on `T_N` with `N = M C`, so `ω` is a
//!   parallel reciprocal stress on some (equivalently, every) flat torus
//!   exactly when `C = I`.
//! * Orthogonal: the dual edge of `e` has native displacement `ω_e J M Δ_e`
//!   with `J` the counterclockwise quarter turn. The force diagram lives on
//!   `T_N` with `N = J M C Jᵀ`. When `det C = 1` this equals `M` precisely for
//!   `M = σ R [[β, −γ], [0, 1]]`; when `det C > 0` a rescaling of `ω` gets
//!   there; when `det C ≤ 0` no scaling does.
//!
//! Dual edge `k` runs from the face right of primal edge `k` to the face on
//! its left, and dual dart ids coincide with primal dart ids.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{wrap_point, Dart, TorusGraph};
use crate::stress::{covariance, require_equilibrium, CovarianceMatrix, StressVector};
use crate::torus::{cross, quarter_turn, rotation, FlatTorus, Mat2, Vec2};
use crate::DEFAULT_TOL;

/// Largest distance from an integer accepted for a dual homology entry.
pub const DUAL_HOMOLOGY_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReciprocalMode {
    Orthogonal,
    Parallel,
}

impl fmt::Display for ReciprocalMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReciprocalMode::Orthogonal => "orthogonal",
            ReciprocalMode::Parallel => "parallel",
        })
    }
}

impl FromStr for ReciprocalMode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "orthogonal" => Ok(ReciprocalMode::Orthogonal),
            "parallel" => Ok(ReciprocalMode::Parallel),
            other => Err(format!("unknown mode `{other}` (expected orthogonal or parallel)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyFreedom {
    /// `σ R · base` for `σ > 0` and any rotation `R`.
    RotationScale,
    /// Any nonsingular matrix.
    AnyNonsingular,
}

/// The set of flat tori on which a stress is reciprocal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusFamily {
    pub base: Mat2,
    pub freedom: FamilyFreedom,
}

impl TorusFamily {
    /// Representative with `σ = 1`, `R = I`.
    pub fn canonical(&self) -> Result<FlatTorus> {
        FlatTorus::new(self.base)
    }

    /// `σ R(angle) · base`.
    pub fn instantiate(&self, sigma: f64, angle: f64) -> Result<FlatTorus> {
        if !(sigma > 0.0) {
            return Err(Error::SingularTorus { det: 0.0 });
        }
        FlatTorus::new(rotation(angle) * self.base * sigma)
    }

    pub fn contains(&self, m: &Mat2, tol: f64) -> bool {
        match self.freedom {
            FamilyFreedom::AnyNonsingular => m.determinant().abs() > crate::torus::SINGULAR_DET,
            FamilyFreedom::RotationScale => {
                let Some(base_inv) = self.base.try_inverse() else {
                    return false;
                };
                is_rotation_scale(&(m * base_inv), tol)
            }
        }
    }
}

/// True if `x = [[a, −b], [b, a]]` with `a² + b² > 0`.
pub fn is_rotation_scale(x: &Mat2, tol: f64) -> bool {
    let scale = x.amax().max(1.0);
    (x[(0, 0)] - x[(1, 1)]).abs() <= tol * scale
        && (x[(0, 1)] + x[(1, 0)]).abs() <= tol * scale
        && x[(0, 0)].hypot(x[(1, 0)]) > tol
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParallelVerdict {
    pub holds: bool,
    pub covariance: CovarianceMatrix,
}

/// `ω` is a parallel reciprocal stress iff `ΔΩΔᵀ = I`; the verdict does not
/// depend on the torus.
pub fn parallel_criterion(g: &TorusGraph, omega: &StressVector, tol: f64) -> Result<ParallelVerdict> {
    require_equilibrium(g, omega, tol)?;
    let c = covariance(g, omega)?;
    Ok(ParallelVerdict {
        holds: c.is_identity(tol),
        covariance: c,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub enum OrthogonalOutcome {
    /// `stress = ω / rescale` is an orthogonal reciprocal stress on every
    /// member of `family`; `covariance` belongs to the rescaled stress.
    Reciprocal {
        family: TorusFamily,
        stress: StressVector,
        rescale: f64,
        covariance: CovarianceMatrix,
    },
    /// `αβ − γ² ≤ 0`: no scaling of the stress is reciprocal on any torus.
    Impossible { det: f64 },
}

pub fn orthogonal_torus_family(
    g: &TorusGraph,
    omega: &StressVector,
    tol: f64,
) -> Result<OrthogonalOutcome> {
    require_equilibrium(g, omega, tol)?;
    let c = covariance(g, omega)?;
    let det = c.det();
    if det <= tol {
        return Ok(OrthogonalOutcome::Impossible { det });
    }
    let (stress, rescale, c) = if (det - 1.0).abs() <= tol {
        (omega.clone(), 1.0, c)
    } else {
        let r = det.sqrt();
        let scaled = omega.scaled(1.0 / r)?;
        let c = covariance(g, &scaled)?;
        (scaled, r, c)
    };
    Ok(OrthogonalOutcome::Reciprocal {
        family: TorusFamily {
            base: Mat2::new(c.beta, -c.gamma, 0.0, 1.0),
            freedom: FamilyFreedom::RotationScale,
        },
        stress,
        rescale,
        covariance: c,
    })
}

/// Family for parallel reciprocality: any torus when `ΔΩΔᵀ = I`.
pub fn parallel_torus_family(g: &TorusGraph, omega: &StressVector, tol: f64) -> Result<Option<TorusFamily>> {
    Ok(parallel_criterion(g, omega, tol)?.holds.then_some(TorusFamily {
        base: Mat2::identity(),
        freedom: FamilyFreedom::AnyNonsingular,
    }))
}

/// Dual displacement rows, one per edge, in native coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct DualDisplacements {
    pub mode: ReciprocalMode,
    pub native: Vec<Vec2>,
}

impl DualDisplacements {
    /// Rows expressed in the reference frame of `target`: `Δ*_nat (Nᵀ)⁻¹`.
    pub fn reference_on(&self, target: &FlatTorus) -> Vec<Vec2> {
        let inv = target.inverse();
        self.native.iter().map(|r| inv * r).collect()
    }
}

/// Parallel: `(MΔΩ)ᵀ`. Orthogonal: `(JMΔΩ)ᵀ`. `M` is the torus of `g`.
pub fn dual_displacements(
    g: &TorusGraph,
    omega: &StressVector,
    mode: ReciprocalMode,
) -> Result<DualDisplacements> {
    g.ensure_valid()?;
    if omega.len() != g.edge_count() {
        return Err(Error::LengthMismatch {
            expected: g.edge_count(),
            found: omega.len(),
        });
    }
    let m = match mode {
        ReciprocalMode::Parallel => *g.torus().basis(),
        ReciprocalMode::Orthogonal => quarter_turn() * g.torus().basis(),
    };
    let native = omega
        .values()
        .iter()
        .enumerate()
        .map(|(e, w)| m * g.displacement(Dart::forward(e)) * *w)
        .collect();
    Ok(DualDisplacements { mode, native })
}

/// `ΩΔᵀ`: parallel dual rows in reference coordinates, independent of the torus.
pub fn parallel_reference_rows(g: &TorusGraph, omega: &StressVector) -> Result<Vec<Vec2>> {
    Ok(dual_displacements(g, omega, ReciprocalMode::Parallel)?.reference_on(g.torus()))
}

/// `N = M ΔΩΔᵀ`.
pub fn parallel_force_torus(g: &TorusGraph, omega: &StressVector) -> Result<FlatTorus> {
    force_torus(g, omega, ReciprocalMode::Parallel)
}

/// `N = J M ΔΩΔᵀ Jᵀ`.
pub fn orthogonal_force_torus(g: &TorusGraph, omega: &StressVector) -> Result<FlatTorus> {
    force_torus(g, omega, ReciprocalMode::Orthogonal)
}

pub fn force_torus(g: &TorusGraph, omega: &StressVector, mode: ReciprocalMode) -> Result<FlatTorus> {
    require_equilibrium(g, omega, DEFAULT_TOL)?;
    let c = covariance(g, omega)?.matrix();
    let m = g.torus().basis();
    let n = match mode {
        ReciprocalMode::Parallel => m * c,
        ReciprocalMode::Orthogonal => {
            let j = quarter_turn();
            j * m * c * j.transpose()
        }
    };
    FlatTorus::new(n)
}

/// A drawing of the dual graph together with its correspondence to the primal.
#[derive(Clone, Debug)]
pub struct DualDrawing {
    pub graph: TorusGraph,
    pub mode: ReciprocalMode,
    /// Dual edge `i` is dual to primal edge `edge_map[i]`.
    pub edge_map: Vec<usize>,
    pub source_torus: FlatTorus,
}

/// Draws the dual of `g` on `target` using the dual displacements of `mode`.
///
/// Dual vertices are placed by integrating reference dual displacements along
/// a BFS tree of the dual graph rooted at face 0 (which sits at the origin),
/// then wrapped into the reference square. Every dual edge then gets the
/// homology vector that reproduces its displacement; this fails with
/// [`Error::NonIntegralDualHomology`] when `target` is not a torus the force
/// diagram lives on.
pub fn build_dual_drawing(
    g: &TorusGraph,
    omega: &StressVector,
    mode: ReciprocalMode,
    target: &FlatTorus,
) -> Result<DualDrawing> {
    require_equilibrium(g, omega, DEFAULT_TOL)?;
    let rows = dual_displacements(g, omega, mode)?.reference_on(target);
    let faces = g.faces()?;
    let nf = faces.count();
    let ne = g.edge_count();
    let dual_ends: Vec<[usize; 2]> = (0..ne)
        .map(|e| {
            let d = Dart::forward(e);
            [faces.right(d), faces.left(d)]
        })
        .collect();

    let mut adjacency: Vec<Vec<(usize, usize, f64)>> = vec![Vec::new(); nf];
    for (e, &[t, h]) in dual_ends.iter().enumerate() {
        adjacency[t].push((e, h, 1.0));
        adjacency[h].push((e, t, -1.0));
    }
    let mut position: Vec<Option<Vec2>> = vec![None; nf];
    if nf > 0 {
        position[0] = Some(Vec2::zeros());
    }
    let mut queue = VecDeque::from([0usize]);
    while let Some(f) = queue.pop_front() {
        let here = position[f].expect("queued faces are placed");
        for &(e, other, sign) in &adjacency[f] {
            if position[other].is_none() {
                position[other] = Some(here + rows[e] * sign);
                queue.push_back(other);
            }
        }
    }
    let wrapped: Vec<(Vec2, _)> = position
        .iter()
        .map(|p| wrap_point(&p.expect("dual graph is connected")))
        .collect();
    let coords: Vec<Vec2> = wrapped.iter().map(|(c, _)| *c).collect();

    let mut homology = Vec::with_capacity(2 * ne);
    for (e, &[t, h]) in dual_ends.iter().enumerate() {
        let l = rows[e] - (coords[h] - coords[t]);
        let rounded = Vec2::new(l.x.round(), l.y.round());
        let deviation = (l - rounded).amax();
        if !(deviation <= DUAL_HOMOLOGY_TOL) {
            return Err(Error::NonIntegralDualHomology { edge: e, deviation });
        }
        let li = [rounded.x as i64, rounded.y as i64];
        homology.push(li);
        homology.push([-li[0], -li[1]]);
    }
    let rotation = faces
        .boundaries()
        .iter()
        .map(|b| b.iter().map(|d| d.rev()).collect())
        .collect();
    let graph = TorusGraph::from_parts(*target, coords, dual_ends, homology, rotation);
    graph.ensure_valid()?;
    Ok(DualDrawing {
        graph,
        mode,
        edge_map: (0..ne).collect(),
        source_torus: *g.torus(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeCheck {
    pub edge: usize,
    /// Sine (parallel) or cosine (orthogonal) of the angle between the dual
    /// edge and the primal edge; zero when the angle condition holds.
    pub angle_error: f64,
    /// `| |e*| − |ω_e| |e| | / (|ω_e| |e|)`.
    pub length_error: f64,
    /// Whether the dual edge points the way the sign of `ω_e` dictates.
    pub direction_ok: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ReciprocityViolation {
    Angle { edge: usize, error: f64 },
    Length { edge: usize, error: f64 },
    Direction { edge: usize },
}

#[derive(Clone, Debug)]
pub struct ReciprocityReport {
    pub mode: ReciprocalMode,
    pub checks: Vec<EdgeCheck>,
    pub violations: Vec<ReciprocityViolation>,
    pub max_angle_error: f64,
    pub max_length_error: f64,
    /// The dual lives on the same flat torus as the primal.
    pub same_torus: bool,
}

impl ReciprocityReport {
    /// Every dual edge satisfies the angle, length and direction conditions.
    pub fn edges_consistent(&self) -> bool {
        self.violations.is_empty()
    }

    /// Edge conditions hold and both drawings share a torus.
    pub fn is_reciprocal(&self) -> bool {
        self.edges_consistent() && self.same_torus
    }

    pub fn max_violation(&self) -> f64 {
        self.max_angle_error.max(self.max_length_error)
    }

    pub fn angle_violations(&self) -> usize {
        self.violations
            .iter()
            .filter(|v| matches!(v, ReciprocityViolation::Angle { .. }))
            .count()
    }

    pub fn length_violations(&self) -> usize {
        self.violations
            .iter()
            .filter(|v| matches!(v, ReciprocityViolation::Length { .. }))
            .count()
    }
}

pub fn verify_reciprocal(
    g: &TorusGraph,
    dual: &DualDrawing,
    omega: &StressVector,
    tol: f64,
) -> Result<ReciprocityReport> {
    verify_reciprocal_as(g, dual, omega, dual.mode, tol)
}

/// Checks every dual edge against its primal edge in native coordinates,
/// using the conditions of `mode` regardless of how `dual` was built.
pub fn verify_reciprocal_as(
    g: &TorusGraph,
    dual: &DualDrawing,
    omega: &StressVector,
    mode: ReciprocalMode,
    tol: f64,
) -> Result<ReciprocityReport> {
    let ne = g.edge_count();
    for n in [omega.len(), dual.edge_map.len(), dual.graph.edge_count()] {
        if n != ne {
            return Err(Error::LengthMismatch { expected: ne, found: n });
        }
    }
    let mut checks = Vec::with_capacity(ne);
    let mut violations = Vec::new();
    for (i, &e) in dual.edge_map.iter().enumerate() {
        if e >= ne {
            return Err(Error::IndexOutOfRange(format!("dual edge {i} maps to {e}")));
        }
        let w = omega.values()[e];
        let primal = g.native_displacement(Dart::forward(e));
        let dual_vec = dual.graph.native_displacement(Dart::forward(i));
        let norms = primal.norm() * dual_vec.norm();
        let (angle_error, signed) = match mode {
            ReciprocalMode::Parallel => (cross(&primal, &dual_vec).abs(), primal.dot(&dual_vec)),
            ReciprocalMode::Orthogonal => (primal.dot(&dual_vec).abs(), cross(&primal, &dual_vec)),
        };
        let angle_error = if norms > 0.0 { angle_error / norms } else { 1.0 };
        let expected_len = w.abs() * primal.norm();
        let length_error = if expected_len > 0.0 {
            (dual_vec.norm() - expected_len).abs() / expected_len
        } else {
            f64::INFINITY
        };
        let direction_ok = signed * w > 0.0;
        if !(angle_error <= tol) {
            violations.push(ReciprocityViolation::Angle {
                edge: i,
                error: angle_error,
            });
        } else if !direction_ok {
            violations.push(ReciprocityViolation::Direction { edge: i });
        }
        if !(length_error <= tol) {
            violations.push(ReciprocityViolation::Length {
                edge: i,
                error: length_error,
            });
        }
        checks.push(EdgeCheck {
            edge: i,
            angle_error,
            length_error,
            direction_ok,
        });
    }
    let max_angle_error = checks.iter().fold(0.0f64, |m, c| m.max(c.angle_error));
    let max_length_error = checks.iter().fold(0.0f64, |m, c| m.max(c.length_error));
    Ok(ReciprocityReport {
        mode,
        checks,
        violations,
        max_angle_error,
        max_length_error,
        same_torus: g.torus().same_lattice(dual.graph.torus(), 1e-6),
    })
}

/// `Λ Λ*`: primal homology rows paired with the dual's integer homology
/// vectors. Rows are the classes of `λ₁` and `λ₂` as circulations in the dual.
pub fn dual_class_pattern(g: &TorusGraph, dual: &DualDrawing) -> Result<[[i64; 2]; 2]> {
    let lambda = g.homology_matrix()?;
    let mut out = [[0i64; 2]; 2];
    for (i, &e) in dual.edge_map.iter().enumerate() {
        let p = lambda.column(e);
        let q = dual.graph.homology(Dart::forward(i));
        for r in 0..2 {
            for c in 0..2 {
                out[r][c] += p[r] * q[c];
            }
        }
    }
    Ok(out)
}

/// `Λ Δ*_ref` with `Δ*_ref` the dual's reference displacement rows.
pub fn dual_reference_pattern(g: &TorusGraph, dual: &DualDrawing) -> Result<Mat2> {
    let lambda = g.homology_matrix()?;
    let mut rows = vec![Vec2::zeros(); g.edge_count()];
    for (i, &e) in dual.edge_map.iter().enumerate() {
        rows[e] = dual.graph.displacement(Dart::forward(i));
    }
    Ok(lambda.times_rows(&rows))
}

/// Class pattern the dual must show: the identity for the rotated (parallel)
/// dual, `[[0, 1], [−1, 0]]` for the standard (orthogonal) dual.
pub fn expected_class_pattern(mode: ReciprocalMode) -> [[i64; 2]; 2] {
    match mode {
        ReciprocalMode::Parallel => [[1, 0], [0, 1]],
        ReciprocalMode::Orthogonal => [[0, 1], [-1, 0]],
    }
}
