//! Equilibrium stresses and the covariance matrix `ΔΩΔᵀ`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::{wrap_point, Blueprint, Dart, TorusGraph};
use crate::torus::{FlatTorus, Mat2, Vec2};

/// Entries with `|ω| <= ZERO_STRESS` count as zero.
pub const ZERO_STRESS: f64 = 1e-12;

/// Relative singular-value cutoff for the stress space.
const RANK_CUTOFF: f64 = 1e-10;

/// One nonzero weight per edge.
#[derive(Clone, Debug, PartialEq)]
pub struct StressVector(Vec<f64>);

impl StressVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(edge) = values
            .iter()
            .position(|x| !x.is_finite() || x.abs() <= ZERO_STRESS)
        {
            return Err(Error::ZeroStress { edge });
        }
        Ok(StressVector(values))
    }

    pub fn uniform(edges: usize, value: f64) -> Result<Self> {
        Self::new(vec![value; edges])
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x > 0.0)
    }

    pub fn scaled(&self, sigma: f64) -> Result<Self> {
        Self::new(self.0.iter().map(|x| x * sigma).collect())
    }

    /// `ω*_e = 1/ω_e`.
    pub fn reciprocal(&self) -> Self {
        StressVector(self.0.iter().map(|x| 1.0 / x).collect())
    }
}

/// `[[α, γ], [γ, β]] = ΔΩΔᵀ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CovarianceMatrix {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl CovarianceMatrix {
    pub fn matrix(&self) -> Mat2 {
        Mat2::new(self.alpha, self.gamma, self.gamma, self.beta)
    }

    /// `αβ − γ²`.
    pub fn det(&self) -> f64 {
        self.alpha * self.beta - self.gamma * self.gamma
    }

    pub fn is_identity(&self, tol: f64) -> bool {
        (self.matrix() - Mat2::identity()).amax() <= tol
    }

    pub fn scaled(&self, sigma: f64) -> Self {
        CovarianceMatrix {
            alpha: self.alpha * sigma,
            beta: self.beta * sigma,
            gamma: self.gamma * sigma,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EquilibriumReport {
    /// `Σ_{d out of p} ω(d) Δ_d` per vertex, reference coordinates.
    pub residuals: Vec<Vec2>,
    /// Largest per-vertex ∞-norm.
    pub max_residual: f64,
    /// `tol · Σ_e |ω_e| ‖Δ_e‖`.
    pub threshold: f64,
}

impl EquilibriumReport {
    pub fn holds(&self) -> bool {
        self.max_residual <= self.threshold
    }
}

fn check_len(g: &TorusGraph, n: usize) -> Result<()> {
    if n != g.edge_count() {
        return Err(Error::LengthMismatch {
            expected: g.edge_count(),
            found: n,
        });
    }
    Ok(())
}

/// Per-vertex residuals for arbitrary (possibly zero) edge weights.
pub fn equilibrium_residuals(g: &TorusGraph, weights: &[f64]) -> Result<Vec<Vec2>> {
    g.ensure_valid()?;
    check_len(g, weights.len())?;
    let mut residuals = vec![Vec2::zeros(); g.vertex_count()];
    for (e, &w) in weights.iter().enumerate() {
        let d = g.displacement(Dart::forward(e));
        let [t, h] = g.ends(e);
        residuals[t] += d * w;
        residuals[h] -= d * w;
    }
    Ok(residuals)
}

pub fn is_equilibrium(g: &TorusGraph, omega: &StressVector, tol: f64) -> Result<EquilibriumReport> {
    weights_equilibrium(g, omega.values(), tol)
}

/// [`is_equilibrium`] for weights that may vanish, such as stress space basis
/// vectors.
pub fn weights_equilibrium(g: &TorusGraph, weights: &[f64], tol: f64) -> Result<EquilibriumReport> {
    let residuals = equilibrium_residuals(g, weights)?;
    let max_residual = residuals.iter().fold(0.0f64, |m, r| m.max(r.amax()));
    let scale: f64 = weights
        .iter()
        .enumerate()
        .map(|(e, w)| w.abs() * g.displacement(Dart::forward(e)).norm())
        .sum();
    Ok(EquilibriumReport {
        residuals,
        max_residual,
        threshold: tol * scale,
    })
}

/// Errors with [`Error::NotEquilibrium`] unless `omega` is an equilibrium stress.
pub fn require_equilibrium(g: &TorusGraph, omega: &StressVector, tol: f64) -> Result<()> {
    let report = is_equilibrium(g, omega, tol)?;
    if report.holds() {
        Ok(())
    } else {
        Err(Error::NotEquilibrium {
            max_residual: report.max_residual,
            threshold: report.threshold,
        })
    }
}

/// `α = Σ ω x²`, `β = Σ ω y²`, `γ = Σ ω x y` over reference displacements.
pub fn covariance(g: &TorusGraph, omega: &StressVector) -> Result<CovarianceMatrix> {
    covariance_of_weights(g, omega.values())
}

pub fn covariance_of_weights(g: &TorusGraph, weights: &[f64]) -> Result<CovarianceMatrix> {
    g.ensure_valid()?;
    check_len(g, weights.len())?;
    let mut c = CovarianceMatrix {
        alpha: 0.0,
        beta: 0.0,
        gamma: 0.0,
    };
    for (e, &w) in weights.iter().enumerate() {
        let d = g.displacement(Dart::forward(e));
        c.alpha += w * d.x * d.x;
        c.beta += w * d.y * d.y;
        c.gamma += w * d.x * d.y;
    }
    Ok(c)
}

/// The 2V×E matrix whose kernel is the space of equilibrium stresses. Rows
/// `2p` and `2p + 1` hold the x and y components of the residual at `p`.
pub fn equilibrium_matrix(g: &TorusGraph) -> Result<DMatrix<f64>> {
    g.ensure_valid()?;
    let mut a = DMatrix::zeros(2 * g.vertex_count(), g.edge_count());
    for e in 0..g.edge_count() {
        let d = g.displacement(Dart::forward(e));
        let [t, h] = g.ends(e);
        a[(2 * t, e)] += d.x;
        a[(2 * t + 1, e)] += d.y;
        a[(2 * h, e)] -= d.x;
        a[(2 * h + 1, e)] -= d.y;
    }
    Ok(a)
}

/// Orthonormal basis of the equilibrium stress space, from the singular value
/// decomposition of the equilibrium matrix. Basis vectors may have zero
/// entries, so they are returned as plain weight vectors.
pub fn stress_space(g: &TorusGraph) -> Result<Vec<Vec<f64>>> {
    let a = equilibrium_matrix(g)?;
    let e = a.ncols();
    if e == 0 {
        return Ok(Vec::new());
    }
    // Pad to at least E rows so that Vᵀ is a full E×E orthogonal matrix.
    let rows = a.nrows().max(e);
    let mut padded = DMatrix::zeros(rows, e);
    padded.view_mut((0, 0), (a.nrows(), e)).copy_from(&a);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested Vᵀ");
    let sigma_max = svd.singular_values.max();
    let cutoff = RANK_CUTOFF * sigma_max.max(f64::MIN_POSITIVE);
    let mut basis: Vec<Vec<f64>> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= cutoff)
        .map(|(i, _)| v_t.row(i).iter().copied().collect())
        .collect();
    // Deterministic sign: first entry of largest magnitude is positive.
    for b in &mut basis {
        let pivot = b
            .iter()
            .copied()
            .fold(0.0f64, |m, x| if x.abs() > m.abs() + 1e-12 { x } else { m });
        if pivot < 0.0 {
            b.iter_mut().for_each(|x| *x = -*x);
        }
    }
    Ok(basis)
}

/// Places the vertices of `blueprint` so that the positive stress `omega` is
/// in equilibrium (weighted Tutte embedding on the torus), with vertex 0 at
/// the origin.
pub fn harmonic_position(
    blueprint: &Blueprint,
    omega: &StressVector,
    torus: FlatTorus,
) -> Result<TorusGraph> {
    harmonic_position_pinned(blueprint, omega, torus, 0)
}

pub fn harmonic_position_pinned(
    blueprint: &Blueprint,
    omega: &StressVector,
    torus: FlatTorus,
    pin: usize,
) -> Result<TorusGraph> {
    let nv = blueprint.vertex_count;
    let ne = blueprint.ends.len();
    if omega.len() != ne {
        return Err(Error::LengthMismatch {
            expected: ne,
            found: omega.len(),
        });
    }
    if blueprint.shifts.len() != ne {
        return Err(Error::LengthMismatch {
            expected: ne,
            found: blueprint.shifts.len(),
        });
    }
    if pin >= nv {
        return Err(Error::IndexOutOfRange(format!("pinned vertex {pin}")));
    }
    if let Some(edge) = omega.values().iter().position(|&w| w <= 0.0) {
        return Err(Error::NonPositiveStress {
            edge,
            value: omega.values()[edge],
        });
    }
    // L x = b with L the weighted Laplacian and b_p = Σ_{d out of p} ω λ(d).
    let mut lap = DMatrix::<f64>::zeros(nv, nv);
    let mut rhs = DMatrix::<f64>::zeros(nv, 2);
    for (e, (&[t, h], s)) in blueprint.ends.iter().zip(&blueprint.shifts).enumerate() {
        if t >= nv || h >= nv {
            return Err(Error::IndexOutOfRange(format!("edge {e} endpoints ({t}, {h})")));
        }
        let w = omega.values()[e];
        lap[(t, t)] += w;
        lap[(h, h)] += w;
        lap[(t, h)] -= w;
        lap[(h, t)] -= w;
        for k in 0..2 {
            rhs[(t, k)] += w * s[k] as f64;
            rhs[(h, k)] -= w * s[k] as f64;
        }
    }
    let keep: Vec<usize> = (0..nv).filter(|&v| v != pin).collect();
    let reduced = lap.select_rows(&keep).select_columns(&keep);
    let reduced_rhs = rhs.select_rows(&keep);
    let chol = reduced.cholesky().ok_or(Error::SingularLaplacian)?;
    let solution = chol.solve(&reduced_rhs);
    if solution.iter().any(|x| !x.is_finite()) {
        return Err(Error::SingularLaplacian);
    }
    let mut unwrapped = vec![Vec2::zeros(); nv];
    for (i, &v) in keep.iter().enumerate() {
        unwrapped[v] = Vec2::new(solution[(i, 0)], solution[(i, 1)]);
    }
    let wrapped: Vec<_> = unwrapped.iter().map(wrap_point).collect();
    let coords = wrapped.iter().map(|(c, _)| *c).collect();
    let mut homology = Vec::with_capacity(2 * ne);
    for (&[t, h], s) in blueprint.ends.iter().zip(&blueprint.shifts) {
        let (kt, kh) = (wrapped[t].1, wrapped[h].1);
        let l = [s[0] + kh[0] - kt[0], s[1] + kh[1] - kt[1]];
        homology.push(l);
        homology.push([-l[0], -l[1]]);
    }
    Ok(TorusGraph::from_parts(
        torus,
        coords,
        blueprint.ends.clone(),
        homology,
        blueprint.rotation.clone(),
    ))
}

/// Projects `v` onto the span of an orthonormal `basis` and returns the
/// residual norm.
pub fn projection_residual(basis: &[Vec<f64>], v: &[f64]) -> f64 {
    let v = DVector::from_column_slice(v);
    let mut proj = DVector::zeros(v.len());
    for b in basis {
        let b = DVector::from_column_slice(b);
        proj += &b * b.dot(&v);
    }
    (v - proj).norm()
}
