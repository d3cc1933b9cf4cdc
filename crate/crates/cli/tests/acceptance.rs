//! Acceptance criteria AC1 to AC10. One PASS/FAIL line per criterion; exits
//! nonzero if any fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;
use torus_mc::analysis::{analyze_drawing, is_embedding};
use torus_mc::flows::{cycle_basis, face_sums, harmonic_defect};
use torus_mc::instances::{builtin_instance, grid_graph, k7_graph, k7_negative_stress, k7_uniform_stress, k7_weird_stress};
use torus_mc::reciprocal::{
    build_dual_drawing, dual_reference_pattern, is_rotation_scale, orthogonal_force_torus,
    orthogonal_torus_family, parallel_criterion, parallel_force_torus, verify_reciprocal,
    OrthogonalOutcome, ReciprocalMode,
};
use torus_mc::stress::{covariance, harmonic_position, is_equilibrium};
use torus_mc::{DualDrawing, FlatTorus, Mat2, StressVector, TorusGraph};
use torus_mc_cli::{run, EXIT_IMPOSSIBLE};

const EXACT: f64 = 1e-12;
const VERIFY: f64 = 1e-9;
const HARMONIC: f64 = 1e-10;
const POSITIONED: f64 = 1e-8;
const SEED: u64 = 0x7031_5eed;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn mat_dist(a: &Mat2, b: &Mat2) -> f64 {
    (a - b).amax()
}

fn builtin_graphs() -> Vec<(String, TorusGraph)> {
    let mut out = vec![("k7".to_string(), k7_graph())];
    for n in 1..=6 {
        out.push((format!("grid_{n}"), grid_graph(n)));
    }
    out
}

fn ac1() -> Outcome {
    let c = covariance(&k7_graph(), &k7_uniform_stress()).map_err(err)?;
    let d = mat_dist(&c.matrix(), &Mat2::new(2.0, 1.0, 1.0, 2.0));
    ensure!(d < EXACT, "covariance {} off by {d:e}", c.matrix());
    Ok(format!("max deviation {d:e}"))
}

fn ac2() -> Outcome {
    let g = k7_graph();
    let omega = k7_uniform_stress();
    let n = parallel_force_torus(&g, &omega).map_err(err)?;
    let d = mat_dist(n.basis(), &Mat2::new(2.0, 1.0, 1.0, 2.0));
    ensure!(d < EXACT, "force torus {} off by {d:e}", n.basis());
    let dual = build_dual_drawing(&g, &omega, ReciprocalMode::Parallel, &n).map_err(err)?;
    let report = verify_reciprocal(&g, &dual, &omega, VERIFY).map_err(err)?;
    ensure!(report.edges_consistent(), "violations {:?}", report.violations);
    ensure!(report.max_violation() < VERIFY, "max violation {:e}", report.max_violation());
    ensure!(is_embedding(&dual.graph, VERIFY).map_err(err)?, "dual is not embedded");
    Ok(format!("force torus off by {d:e}, max violation {:e}", report.max_violation()))
}

fn ac3() -> Outcome {
    let g = k7_graph();
    let omega = k7_uniform_stress().scaled(1.0 / 3f64.sqrt()).map_err(err)?;
    let OrthogonalOutcome::Reciprocal { family, stress, rescale, .. } =
        orthogonal_torus_family(&g, &omega, VERIFY).map_err(err)?
    else {
        return Err("family reported impossible".into());
    };
    ensure!((rescale - 1.0).abs() < EXACT, "rescale {rescale}");
    let s3 = 3f64.sqrt();
    let want = Mat2::new(2.0, -1.0, 0.0, s3) / s3;
    ensure!(family.contains(&want, VERIFY), "base {} does not span the expected family", family.base);
    let want_inv = want.try_inverse().ok_or("singular expected torus")?;
    let mut worst = 0.0f64;
    for sigma in [0.5, 1.0, 2.0] {
        for degrees in [0.0f64, 90.0, 137.0] {
            let m = family.instantiate(sigma, degrees.to_radians()).map_err(err)?;
            ensure!(
                is_rotation_scale(&(m.basis() * want_inv), VERIFY),
                "σ={sigma} R={degrees}°: {} is not a rotation-scale of the expected torus",
                m.basis()
            );
            let primal = g.with_torus(m);
            let n = orthogonal_force_torus(&primal, &stress).map_err(err)?;
            let dual = build_dual_drawing(&primal, &stress, ReciprocalMode::Orthogonal, &n).map_err(err)?;
            let report = verify_reciprocal(&primal, &dual, &stress, VERIFY).map_err(err)?;
            ensure!(report.is_reciprocal(), "σ={sigma} R={degrees}°: {:?}", report.violations);
            worst = worst.max(report.max_violation());
        }
    }
    Ok(format!("9 members verified, max violation {worst:e}"))
}

fn ac4() -> Outcome {
    let g = k7_graph();
    let omega = k7_weird_stress();
    let eq = is_equilibrium(&g, &omega, VERIFY).map_err(err)?;
    ensure!(eq.holds() && eq.max_residual < EXACT, "residual {:e}", eq.max_residual);
    let det = covariance(&g, &omega).map_err(err)?.det();
    ensure!((det - 1.0).abs() < EXACT, "det {det}");
    let OrthogonalOutcome::Reciprocal { family, stress, .. } =
        orthogonal_torus_family(&g, &omega, VERIFY).map_err(err)?
    else {
        return Err("family reported impossible".into());
    };
    let primal = g.with_torus(family.canonical().map_err(err)?);
    let n = orthogonal_force_torus(&primal, &stress).map_err(err)?;
    let dual = build_dual_drawing(&primal, &stress, ReciprocalMode::Orthogonal, &n).map_err(err)?;
    let report = verify_reciprocal(&primal, &dual, &stress, VERIFY).map_err(err)?;
    ensure!(report.is_reciprocal(), "violations {:?}", report.violations);
    let d = analyze_drawing(&dual.graph, VERIFY).map_err(err)?;
    let (cv, ov, sf) = (
        d.coincident_vertex_pairs.len(),
        d.overlapping_edge_pairs.len(),
        d.self_intersecting_faces.len(),
    );
    ensure!(cv >= 1 && ov >= 1 && sf >= 1, "coincident {cv}, overlapping {ov}, self-intersecting {sf}");
    Ok(format!("det-1 {:e}; coincident {cv}, overlapping {ov}, self-intersecting faces {sf}", det - 1.0))
}

fn ac5() -> Outcome {
    let det = covariance(&k7_graph(), &k7_negative_stress()).map_err(err)?.det();
    ensure!((det + 1.0).abs() < EXACT, "det {det}");
    let dir = TempDir::new().map_err(err)?;
    let path = dir.path().join("k7.json");
    std::fs::write(&path, builtin_instance("k7_negative").map_err(err)?.to_canonical_string()).map_err(err)?;
    let file = path.to_str().ok_or("non-UTF-8 temp path")?;
    let mut runs = 0;
    for scale in ["0.01", "0.1", "0.5", "1", "2", "10", "1000", "-1", "-3"] {
        for sigma in ["0.5", "1", "4"] {
            let args = [
                "torus-mc", "reciprocal", file, "--stress", "negative", "--mode", "orthogonal",
                "--stress-scale", scale, "--sigma", sigma,
            ];
            let (mut out, mut errs) = (Vec::new(), Vec::new());
            let code = run(args, &mut out, &mut errs);
            ensure!(
                code == EXIT_IMPOSSIBLE,
                "stress scale {scale}, σ {sigma}: exit {code}: {}",
                String::from_utf8_lossy(&errs)
            );
            runs += 1;
        }
    }
    Ok(format!("det+1 {:e}; {runs} invocations exited 2", det + 1.0))
}

fn ac6() -> Outcome {
    let g = k7_graph();
    for sigma in [0.1, 1.0 / 3f64.sqrt(), 1.0, 3.0] {
        let omega = StressVector::uniform(21, sigma).map_err(err)?;
        let v = parallel_criterion(&g, &omega, VERIFY).map_err(err)?;
        ensure!(!v.holds, "σ={sigma} passed the parallel criterion");
    }
    Ok("4 scalings rejected".into())
}

fn ac7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for (name, g) in builtin_graphs() {
        let basis = cycle_basis(&g).map_err(err)?;
        let delta = g.displacement_matrix().map_err(err)?;
        let lambda = g.homology_matrix().map_err(err)?;
        for _ in 0..100 {
            let mut phi = vec![0.0; g.edge_count()];
            for c in &basis {
                let k: f64 = rng.random_range(-5.0..5.0);
                for (p, x) in phi.iter_mut().zip(&c.phi) {
                    *p += k * x;
                }
            }
            let d = harmonic_defect(&delta, &lambda, &phi);
            ensure!(d < HARMONIC, "{name}: defect {d:e}");
            worst = worst.max(d);
        }
    }
    Ok(format!("max defect {worst:e}"))
}

fn parallel_duals() -> Result<Vec<(String, TorusGraph, DualDrawing)>, String> {
    let mut out = Vec::new();
    let g = k7_graph();
    let omega = k7_uniform_stress();
    let n = parallel_force_torus(&g, &omega).map_err(err)?;
    out.push(("k7".into(), g.clone(), build_dual_drawing(&g, &omega, ReciprocalMode::Parallel, &n).map_err(err)?));
    for k in [3, 5] {
        let g = grid_graph(k);
        let omega = StressVector::uniform(g.edge_count(), 1.0).map_err(err)?;
        let n = parallel_force_torus(&g, &omega).map_err(err)?;
        out.push((format!("grid_{k}"), g.clone(), build_dual_drawing(&g, &omega, ReciprocalMode::Parallel, &n).map_err(err)?));
    }
    Ok(out)
}

fn orthogonal_duals() -> Result<Vec<(String, TorusGraph, DualDrawing)>, String> {
    let mut out = Vec::new();
    let g = k7_graph();
    for (name, omega) in [("k7_weird", k7_weird_stress()), ("k7_uniform", k7_uniform_stress())] {
        let OrthogonalOutcome::Reciprocal { family, stress, .. } =
            orthogonal_torus_family(&g, &omega, VERIFY).map_err(err)?
        else {
            return Err(format!("{name}: family reported impossible"));
        };
        let primal = g.with_torus(family.canonical().map_err(err)?);
        let n = orthogonal_force_torus(&primal, &stress).map_err(err)?;
        let dual = build_dual_drawing(&primal, &stress, ReciprocalMode::Orthogonal, &n).map_err(err)?;
        out.push((name.to_string(), primal, dual));
    }
    let g = grid_graph(4);
    let omega = StressVector::uniform(g.edge_count(), 1.0).map_err(err)?;
    let n = orthogonal_force_torus(&g, &omega).map_err(err)?;
    out.push(("grid_4".into(), g.clone(), build_dual_drawing(&g, &omega, ReciprocalMode::Orthogonal, &n).map_err(err)?));
    Ok(out)
}

fn ac8() -> Outcome {
    let mut graphs = 0;
    for (name, g) in builtin_graphs() {
        let lambda = g.homology_matrix().map_err(err)?;
        for row in 0..2 {
            let sums = face_sums(&g, &lambda.row(row)).map_err(err)?;
            ensure!(sums.iter().all(|s| *s == 0.0), "{name}: row {row} face sums {sums:?}");
        }
        graphs += 1;
    }
    let mut worst = 0.0f64;
    for (name, g, dual) in parallel_duals()? {
        let p = dual_reference_pattern(&g, &dual).map_err(err)?;
        let d = mat_dist(&p, &Mat2::identity());
        ensure!(d < VERIFY, "{name}: parallel pattern {p}");
        worst = worst.max(d);
    }
    let rotated = Mat2::new(0.0, 1.0, -1.0, 0.0);
    for (name, g, dual) in orthogonal_duals()? {
        let p = dual_reference_pattern(&g, &dual).map_err(err)?;
        let d = mat_dist(&p, &rotated);
        ensure!(d < VERIFY, "{name}: orthogonal pattern {p}");
        worst = worst.max(d);
    }
    Ok(format!("{graphs} graphs cocirculation-checked, max pattern deviation {worst:e}"))
}

fn ac9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let blueprint = k7_graph().blueprint();
    let mut worst = 0.0f64;
    let mut min_det = f64::INFINITY;
    for trial in 0..20 {
        let values = (0..21).map(|_| rng.random_range(0.05..20.0)).collect();
        let omega = StressVector::new(values).map_err(err)?;
        let g = harmonic_position(&blueprint, &omega, FlatTorus::square()).map_err(err)?;
        let eq = is_equilibrium(&g, &omega, VERIFY).map_err(err)?;
        ensure!(eq.holds() && eq.max_residual < POSITIONED, "trial {trial}: residual {:e}", eq.max_residual);
        ensure!(is_embedding(&g, VERIFY).map_err(err)?, "trial {trial}: not an embedding");
        let det = covariance(&g, &omega).map_err(err)?.det();
        ensure!(det > 0.0, "trial {trial}: det {det}");
        worst = worst.max(eq.max_residual);
        min_det = min_det.min(det);
    }
    Ok(format!("max residual {worst:e}, min det {min_det:e}"))
}

fn ac10() -> Outcome {
    let g = k7_graph();
    let omega = k7_uniform_stress();
    let n = parallel_force_torus(&g, &omega).map_err(err)?;
    let dual = build_dual_drawing(&g, &omega, ReciprocalMode::Parallel, &n).map_err(err)?;
    let eq = is_equilibrium(&dual.graph, &omega.reciprocal(), VERIFY).map_err(err)?;
    ensure!(eq.holds() && eq.max_residual < VERIFY, "residual {:e}", eq.max_residual);
    Ok(format!("residual {:e}", eq.max_residual))
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Outcome); 10] = [
        ("AC1", "K7 uniform covariance", ac1),
        ("AC2", "parallel force torus and embedded dual", ac2),
        ("AC3", "orthogonal family of the scaled uniform stress", ac3),
        ("AC4", "weird stress dual is reciprocal but degenerate", ac4),
        ("AC5", "negative stress admits no orthogonal reciprocal", ac5),
        ("AC6", "uniform stress is never parallel reciprocal", ac6),
        ("AC7", "harmonic identity on random circulations", ac7),
        ("AC8", "cocirculation rows and dual class patterns", ac8),
        ("AC9", "positive stresses give embeddings", ac9),
        ("AC10", "dual of the dual is in equilibrium", ac10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, title, check) in criteria {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        match outcome {
            Ok(detail) => println!("{id} PASS {title}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("{id} FAIL {title}: {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
