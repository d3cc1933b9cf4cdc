//! Circulations, cocirculations and their (co)homology classes.
//!
//! A circulation assigns a flow to every oriented edge so that flow is
//! conserved at each vertex. For any circulation `φ` on a geodesic torus
//! graph, `Δφ = Λφ`: the displacement matrix and the homology matrix agree on
//! cycles, and the common value is the homology class `[φ]`.
//!
//! The two rows `λ₁`, `λ₂` of the homology matrix are cocirculations (they
//! sum to zero around every face). Their cohomology classes are `(0,1)` and
//! `(−1,0)` with respect to the standard dual and `(1,0)`, `(0,1)` with
//! respect to the rotated dual.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Dart, DisplacementMatrix, HomologyMatrix, TorusGraph};
use crate::torus::Vec2;

#[derive(Clone, Debug, PartialEq)]
pub struct Circulation {
    pub phi: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cocirculation {
    pub theta: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HomologyClass(pub Vec2);

/// A row of `Λ` tagged with its cohomology classes.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassifiedCocirculation {
    pub cocirculation: Cocirculation,
    /// Class with respect to the standard dual.
    pub standard_class: HomologyClass,
    /// Class with respect to the rotated dual.
    pub rotated_class: HomologyClass,
}

fn check_len(g: &TorusGraph, v: &[f64]) -> Result<()> {
    if v.len() != g.edge_count() {
        return Err(Error::LengthMismatch {
            expected: g.edge_count(),
            found: v.len(),
        });
    }
    Ok(())
}

/// Net outflow `Σ_{tail=p} φ_e − Σ_{head=p} φ_e` at every vertex.
pub fn vertex_imbalance(g: &TorusGraph, phi: &[f64]) -> Result<Vec<f64>> {
    check_len(g, phi)?;
    let mut out = vec![0.0; g.vertex_count()];
    for (e, &x) in phi.iter().enumerate() {
        let [t, h] = g.ends(e);
        out[t] += x;
        out[h] -= x;
    }
    Ok(out)
}

pub fn is_circulation(g: &TorusGraph, phi: &[f64], tol: f64) -> Result<bool> {
    Ok(vertex_imbalance(g, phi)?.iter().all(|x| x.abs() <= tol))
}

/// `[φ] = Λφ` for a circulation `φ`.
pub fn homology_class(g: &TorusGraph, phi: &[f64], tol: f64) -> Result<HomologyClass> {
    let imbalance = vertex_imbalance(g, phi)?;
    let max_imbalance = imbalance.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    if max_imbalance > tol {
        return Err(Error::NotCirculation { max_imbalance });
    }
    Ok(HomologyClass(g.homology_matrix()?.apply(phi)))
}

/// `‖Δφ − Λφ‖∞`.
pub fn harmonic_defect(delta: &DisplacementMatrix, lambda: &HomologyMatrix, phi: &[f64]) -> f64 {
    (delta.apply(phi) - lambda.apply(phi)).amax()
}

/// True iff `‖Δφ − Λφ‖∞ ≤ tol` with both matrices taken from `g`.
pub fn check_harmonic_identity(g: &TorusGraph, phi: &[f64], tol: f64) -> bool {
    match (g.displacement_matrix(), g.homology_matrix()) {
        (Ok(delta), Ok(lambda)) if phi.len() == g.edge_count() => {
            harmonic_defect(&delta, &lambda, phi) <= tol
        }
        _ => false,
    }
}

/// Signed indicator of the boundary of face `f`: `+1` on edges traversed
/// forward, `−1` on edges traversed backward.
pub fn face_circulation(g: &TorusGraph, f: usize) -> Result<Circulation> {
    let faces = g.faces()?;
    let mut phi = vec![0.0; g.edge_count()];
    for d in faces.boundary(f) {
        phi[d.edge()] += if d.is_forward() { 1.0 } else { -1.0 };
    }
    Ok(Circulation { phi })
}

/// Fundamental cycle basis: a BFS spanning tree from vertex 0, scanning
/// incident edges in index order; each non-tree edge closes one cycle.
pub fn cycle_basis(g: &TorusGraph) -> Result<Vec<Circulation>> {
    g.ensure_valid()?;
    let nv = g.vertex_count();
    let mut incident: Vec<Vec<Dart>> = vec![Vec::new(); nv];
    for e in 0..g.edge_count() {
        let [t, h] = g.ends(e);
        incident[t].push(Dart::forward(e));
        incident[h].push(Dart::backward(e));
    }
    for list in &mut incident {
        list.sort_by_key(|d| (d.edge(), d.id()));
    }
    // parent[v] = dart from parent into v
    let mut parent: Vec<Option<Dart>> = vec![None; nv];
    let mut seen = vec![false; nv];
    let mut tree_edge = vec![false; g.edge_count()];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &d in &incident[v] {
            let w = g.head(d);
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(d);
                tree_edge[d.edge()] = true;
                queue.push_back(w);
            }
        }
    }
    let push_path_to_root = |phi: &mut [f64], mut v: usize, sign: f64| {
        // Adds sign · (path root → v) in terms of tree darts.
        while let Some(d) = parent[v] {
            phi[d.edge()] += sign * if d.is_forward() { 1.0 } else { -1.0 };
            v = g.tail(d);
        }
    };
    let mut basis = Vec::new();
    for e in 0..g.edge_count() {
        if tree_edge[e] {
            continue;
        }
        let [t, h] = g.ends(e);
        let mut phi = vec![0.0; g.edge_count()];
        phi[e] = 1.0;
        // e goes t → h; return h → root → t.
        push_path_to_root(&mut phi, h, -1.0);
        push_path_to_root(&mut phi, t, 1.0);
        basis.push(Circulation { phi });
    }
    Ok(basis)
}

/// Signed sum of `theta` around every face boundary.
pub fn face_sums(g: &TorusGraph, theta: &[f64]) -> Result<Vec<f64>> {
    check_len(g, theta)?;
    let faces = g.faces()?;
    Ok(faces
        .boundaries()
        .iter()
        .map(|b| {
            b.iter()
                .map(|d| {
                    let s = if d.is_forward() { 1.0 } else { -1.0 };
                    s * theta[d.edge()]
                })
                .sum()
        })
        .collect())
}

pub fn is_cocirculation(g: &TorusGraph, theta: &[f64], tol: f64) -> Result<bool> {
    Ok(face_sums(g, theta)?.iter().all(|s| s.abs() <= tol))
}

/// Rows of `Λ` as cocirculations, tagged with their classes. Fails if a row
/// does not sum to zero around some face.
pub fn cocirculation_rows(g: &TorusGraph) -> Result<[ClassifiedCocirculation; 2]> {
    let lambda = g.homology_matrix()?;
    let faces = g.faces()?;
    for row in 0..2 {
        for (f, b) in faces.boundaries().iter().enumerate() {
            let sum: i64 = b
                .iter()
                .map(|d| {
                    let c = lambda.column(d.edge())[row];
                    if d.is_forward() {
                        c
                    } else {
                        -c
                    }
                })
                .sum();
            if sum != 0 {
                return Err(Error::CocirculationViolation { row, face: f, sum });
            }
        }
    }
    let make = |row: usize, standard: Vec2, rotated: Vec2| ClassifiedCocirculation {
        cocirculation: Cocirculation {
            theta: lambda.row(row),
        },
        standard_class: HomologyClass(standard),
        rotated_class: HomologyClass(rotated),
    };
    Ok([
        make(0, Vec2::new(0.0, 1.0), Vec2::new(1.0, 0.0)),
        make(1, Vec2::new(-1.0, 0.0), Vec2::new(0.0, 1.0)),
    ])
}
