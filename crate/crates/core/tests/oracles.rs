//! Independent recomputations of library results.

use std::collections::{BTreeSet, HashMap};
use std::f64::consts::TAU;

use nalgebra::DMatrix;
use torus_mc::analysis::analyze_drawing;
use torus_mc::instances::{grid_graph, k7_graph, k7_negative_stress, k7_uniform_stress, k7_weird_stress};
use torus_mc::reciprocal::{
    build_dual_drawing, orthogonal_force_torus, orthogonal_torus_family, OrthogonalOutcome, ReciprocalMode,
};
use torus_mc::stress::{covariance, is_equilibrium, stress_space};
use torus_mc::torus::rotation;
use torus_mc::{Dart, FlatTorus, Mat2, StressVector, TorusGraph, Vec2};

/// Reference displacement rebuilt from raw coordinates and the shift table.
fn raw_displacement(g: &TorusGraph, e: usize) -> Vec2 {
    let [t, h] = g.ends(e);
    let l = g.homology(Dart::forward(e));
    g.coord(h) + Vec2::new(l[0] as f64, l[1] as f64) - g.coord(t)
}

fn delta_matrix(g: &TorusGraph) -> DMatrix<f64> {
    let mut d = DMatrix::zeros(2, g.edge_count());
    for e in 0..g.edge_count() {
        let v = raw_displacement(g, e);
        d[(0, e)] = v.x;
        d[(1, e)] = v.y;
    }
    d
}

fn covariance_oracle(g: &TorusGraph, omega: &StressVector) -> DMatrix<f64> {
    let d = delta_matrix(g);
    let w = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(omega.values()));
    &d * w * d.transpose()
}

#[test]
fn covariance_matches_matrix_product() {
    let g = k7_graph();
    let cases = [
        (k7_uniform_stress(), [[2.0, 1.0], [1.0, 2.0]], 3.0),
        (k7_weird_stress(), [[5.0 / 7.0, -6.0 / 7.0], [-6.0 / 7.0, 17.0 / 7.0]], 1.0),
        (k7_negative_stress(), [[f64::NAN; 2]; 2], -1.0),
    ];
    for (omega, want, det) in cases {
        let oracle = covariance_oracle(&g, &omega);
        let c = covariance(&g, &omega).unwrap();
        assert!((c.alpha - oracle[(0, 0)]).abs() < 1e-12);
        assert!((c.beta - oracle[(1, 1)]).abs() < 1e-12);
        assert!((c.gamma - oracle[(0, 1)]).abs() < 1e-12);
        assert!((c.det() - det).abs() < 1e-12, "det {}", c.det());
        if !want[0][0].is_nan() {
            for (i, row) in want.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    assert!((oracle[(i, j)] - x).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn equilibrium_matches_vertex_sums() {
    let g = k7_graph();
    for omega in [k7_uniform_stress(), k7_weird_stress(), k7_negative_stress()] {
        let mut sums = vec![Vec2::zeros(); g.vertex_count()];
        for e in 0..g.edge_count() {
            let [t, h] = g.ends(e);
            let v = raw_displacement(&g, e) * omega.values()[e];
            sums[t] += v;
            sums[h] -= v;
        }
        let oracle = sums.iter().fold(0.0f64, |m, s| m.max(s.amax()));
        let report = is_equilibrium(&g, &omega, 1e-9).unwrap();
        assert!(report.holds());
        assert!((report.max_residual - oracle).abs() < 1e-15);
        assert!(oracle < 1e-12);
    }
}

/// Rank by Gaussian elimination with partial pivoting.
fn rank(mut a: DMatrix<f64>, tol: f64) -> usize {
    let (rows, cols) = a.shape();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let (p, best) = (r..rows)
            .map(|i| (i, a[(i, c)].abs()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best <= tol {
            continue;
        }
        a.swap_rows(r, p);
        for i in r + 1..rows {
            let f = a[(i, c)] / a[(r, c)];
            for j in c..cols {
                let v = a[(r, j)];
                a[(i, j)] -= f * v;
            }
        }
        r += 1;
    }
    r
}

#[test]
fn stress_space_dimension_matches_elimination() {
    for g in [k7_graph(), grid_graph(2), grid_graph(3), grid_graph(4)] {
        let mut a = DMatrix::zeros(2 * g.vertex_count(), g.edge_count());
        for e in 0..g.edge_count() {
            let d = raw_displacement(&g, e);
            let [t, h] = g.ends(e);
            a[(2 * t, e)] += d.x;
            a[(2 * t + 1, e)] += d.y;
            a[(2 * h, e)] -= d.x;
            a[(2 * h + 1, e)] -= d.y;
        }
        let nullity = g.edge_count() - rank(a.clone(), 1e-9);
        let basis = stress_space(&g).unwrap();
        assert_eq!(basis.len(), nullity);
        for b in &basis {
            let v = &a * nalgebra::DVector::from_column_slice(b);
            assert!(v.amax() < 1e-10);
            let norm: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-10);
        }
    }
}

fn same_cycle(a: &[Dart], b: &[Dart]) -> bool {
    a.len() == b.len() && (0..a.len()).any(|k| (0..a.len()).all(|i| a[(i + k) % a.len()] == b[i]))
}

#[test]
fn rotation_matches_angle_sort() {
    let tori = [
        Mat2::identity(),
        Mat2::new(2.0, 1.0, 1.0, 2.0),
        rotation(0.9) * Mat2::new(1.0, 0.4, 0.0, 0.7),
    ];
    for m in tori {
        let g = k7_graph().with_torus(FlatTorus::new(m).unwrap()).rotation_from_geometry().unwrap();
        for v in 0..g.vertex_count() {
            let mut darts: Vec<(f64, Dart)> = g
                .darts()
                .filter(|&d| g.tail(d) == v)
                .map(|d| {
                    let n = m * g.displacement(d);
                    (n.y.atan2(n.x).rem_euclid(TAU), d)
                })
                .collect();
            darts.sort_by(|a, b| a.0.total_cmp(&b.0));
            let oracle: Vec<Dart> = darts.into_iter().map(|x| x.1).collect();
            assert!(same_cycle(g.outgoing(v), &oracle), "vertex {v}");
        }
    }
}

#[test]
fn faces_match_independent_traversal() {
    for g in [k7_graph(), grid_graph(3)] {
        let mut prev_ccw: HashMap<usize, usize> = HashMap::new();
        for v in 0..g.vertex_count() {
            let ring = g.outgoing(v);
            for i in 0..ring.len() {
                prev_ccw.insert(ring[(i + 1) % ring.len()].id(), ring[i].id());
            }
        }
        let mut seen = BTreeSet::new();
        let mut oracle = Vec::new();
        for start in 0..g.dart_count() {
            if seen.contains(&start) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut d = start;
            while seen.insert(d) {
                cycle.push(Dart::new(d));
                d = prev_ccw[&(d ^ 1)];
            }
            oracle.push(cycle);
        }
        let faces = g.faces().unwrap();
        assert_eq!(faces.count(), oracle.len());
        for cycle in &oracle {
            let f = faces.left(cycle[0]);
            assert!(same_cycle(faces.boundary(f), cycle));
        }
        if g.vertex_count() == 7 {
            assert_eq!(oracle.len(), 14);
            assert!(oracle.iter().all(|c| c.len() == 3));
        }
        // Every face closes in the universal cover.
        for cycle in &oracle {
            let sum: Vec2 = cycle.iter().map(|&d| g.displacement(d)).sum();
            assert!(sum.amax() < 1e-12);
        }
    }
}

#[test]
fn native_coordinates_are_matrix_products() {
    let m = Mat2::new(2.0, 1.0, 0.5, 3.0);
    let g = k7_graph().with_torus(FlatTorus::new(m).unwrap());
    let native = g.native_coords().unwrap();
    for v in 0..7 {
        let c = g.coord(v);
        let want = Vec2::new(2.0 * c.x + c.y, 0.5 * c.x + 3.0 * c.y);
        assert!((native.points[v] - want).norm() < 1e-15);
    }
    for e in 0..21 {
        let d = raw_displacement(&g, e);
        let want = Vec2::new(2.0 * d.x + d.y, 0.5 * d.x + 3.0 * d.y);
        assert!((native.displacements.column(e) - want).norm() < 1e-15);
    }
}

fn orient(a: Vec2, b: Vec2, c: Vec2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

/// Brute force over all ordered edge pairs and a fixed window of lattice
/// offsets: proper crossings (strict orientation tests) and collinear
/// overlaps of positive length.
fn brute_force(g: &TorusGraph) -> (usize, usize) {
    let m = *g.torus().basis();
    let seg = |e: usize, t: Vec2| {
        let p = g.coord(g.ends(e)[0]) + t;
        (m * p, m * (p + raw_displacement(g, e)))
    };
    let eps = 1e-9;
    let mut crossings = 0;
    let mut overlaps = 0;
    for a in 0..g.edge_count() {
        for b in a..g.edge_count() {
            for tx in -3i32..=3 {
                for ty in -3i32..=3 {
                    if a == b && (tx, ty) <= (0, 0) {
                        continue;
                    }
                    let (p0, p1) = seg(a, Vec2::zeros());
                    let (q0, q1) = seg(b, Vec2::new(tx as f64, ty as f64));
                    let (o1, o2) = (orient(p0, p1, q0), orient(p0, p1, q1));
                    let (o3, o4) = (orient(q0, q1, p0), orient(q0, q1, p1));
                    if o1 * o2 < -eps && o3 * o4 < -eps {
                        crossings += 1;
                    }
                    let len = (p1 - p0).norm();
                    if o1.abs() / len < eps && o2.abs() / len < eps {
                        let dir = (p1 - p0) / len;
                        let (s0, s1) = ((q0 - p0).dot(&dir), (q1 - p0).dot(&dir));
                        let lo = s0.min(s1).max(0.0);
                        let hi = s0.max(s1).min(len);
                        if hi - lo > eps {
                            overlaps += 1;
                        }
                    }
                }
            }
        }
    }
    (crossings, overlaps)
}

#[test]
fn k7_analysis_matches_brute_force() {
    let g = k7_graph();
    assert_eq!(brute_force(&g), (0, 0));
    let report = analyze_drawing(&g, 1e-9).unwrap();
    assert!(report.is_empty());
}

#[test]
fn weird_dual_analysis_matches_brute_force() {
    let g = k7_graph();
    let OrthogonalOutcome::Reciprocal { family, stress, .. } =
        orthogonal_torus_family(&g, &k7_weird_stress(), 1e-9).unwrap()
    else {
        panic!();
    };
    let primal = g.with_torus(family.canonical().unwrap());
    let n = orthogonal_force_torus(&primal, &stress).unwrap();
    let dual = build_dual_drawing(&primal, &stress, ReciprocalMode::Orthogonal, &n).unwrap();
    let (crossings, overlaps) = brute_force(&dual.graph);
    let report = analyze_drawing(&dual.graph, 1e-9).unwrap();
    assert_eq!(report.crossing_edge_pairs.len(), crossings);
    assert_eq!(report.overlapping_edge_pairs.len(), overlaps);
    assert!(overlaps > 0);

    // Coincident dual vertices, by comparing all reference positions modulo 1.
    let nv = dual.graph.vertex_count();
    let mut pairs = 0;
    for a in 0..nv {
        for b in a + 1..nv {
            let d = dual.graph.coord(a) - dual.graph.coord(b);
            let d = Vec2::new(d.x - d.x.round(), d.y - d.y.round());
            if (n.basis() * d).norm() < 1e-9 {
                pairs += 1;
            }
        }
    }
    assert_eq!(report.coincident_vertex_pairs.len(), pairs);
    assert_eq!(pairs, 7);
}
