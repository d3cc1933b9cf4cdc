//! The `torus-mc` command line.
//!
//! Exit codes: 0 success, 1 error or failed check, 2 when no torus admits the
//! requested reciprocal diagram.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use torus_mc::analysis::{analyze_drawing, DegeneracyReport};
use torus_mc::document::GraphDocument;
use torus_mc::instances::builtin_instance;
use torus_mc::reciprocal::{
    build_dual_drawing, force_torus, orthogonal_force_torus, orthogonal_torus_family,
    parallel_criterion, verify_reciprocal, OrthogonalOutcome, ReciprocalMode, ReciprocityReport,
};
use torus_mc::stress::{covariance, stress_space, weights_equilibrium};
use torus_mc::svg::{render_svg, RenderOptions};
use torus_mc::torus::rotation;
use torus_mc::{DualDrawing, FlatTorus, Mat2, TorusGraph, DEFAULT_TOL};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_IMPOSSIBLE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "torus-mc", version, about = "Reciprocal diagrams of torus graphs")]
pub struct Cli {
    /// Numerical tolerance for every check
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the combinatorial map; exit 0 iff it is a valid torus map
    Validate { file: PathBuf },
    /// Print the covariance matrix of a named stress
    Covariance {
        file: PathBuf,
        #[arg(long)]
        stress: String,
    },
    /// Check that a named stress is in equilibrium
    Equilibrium {
        file: PathBuf,
        #[arg(long)]
        stress: String,
    },
    /// Append a basis of the equilibrium stress space to the document
    StressBasis {
        file: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Build and verify a reciprocal diagram
    Reciprocal {
        file: PathBuf,
        #[arg(long)]
        stress: String,
        #[arg(long)]
        mode: ReciprocalMode,
        /// Scale of the primal torus
        #[arg(long, default_value_t = 1.0)]
        sigma: f64,
        /// Rotation of the primal torus in degrees
        #[arg(long, default_value_t = 0.0)]
        angle: f64,
        /// Factor applied to the stress before anything else
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        stress_scale: f64,
        /// Where to write the dual document; stdout when absent
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print the torus the force diagram lives on
    ForceTorus {
        file: PathBuf,
        #[arg(long)]
        stress: String,
        #[arg(long)]
        mode: ReciprocalMode,
    },
    /// Report degeneracies; exit 0 iff the drawing is an embedding
    Analyze { file: PathBuf },
    /// Render the drawing (and optionally a dual overlay) as SVG
    Render {
        file: PathBuf,
        #[arg(long)]
        dual: Option<PathBuf>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 200.0)]
        scale: f64,
        #[arg(long)]
        labels: bool,
    },
    /// Write a built-in instance (k7_uniform, k7_weird, k7_negative, grid_<n>)
    Instance {
        name: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Document { path: PathBuf, source: torus_mc::Error },
    #[error(transparent)]
    Core(#[from] torus_mc::Error),
    #[error("{0}")]
    Usage(String),
    #[error("writing output: {0}")]
    Output(#[from] io::Error),
}

type CliResult<T> = Result<T, CliError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FAILURE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> CliResult<i32> {
    let tol = cli.tol;
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
    }
    match &cli.command {
        Command::Validate { file } => validate(file, out),
        Command::Covariance { file, stress } => {
            let (doc, g) = load(file)?;
            let c = covariance(&g, &doc.stress(stress)?)?;
            writeln!(
                out,
                "alpha={} beta={} gamma={} det={}",
                fmt_num(c.alpha),
                fmt_num(c.beta),
                fmt_num(c.gamma),
                fmt_num(c.det())
            )?;
            writeln!(out, "matrix={}", fmt_mat(&c.matrix()))?;
            Ok(EXIT_OK)
        }
        Command::Equilibrium { file, stress } => {
            let (doc, g) = load(file)?;
            let weights = doc
                .stresses
                .get(stress)
                .ok_or_else(|| torus_mc::Error::UnknownStress(stress.clone()))?;
            let report = weights_equilibrium(&g, weights, tol)?;
            writeln!(
                out,
                "equilibrium={} max_residual={} threshold={}",
                report.holds(),
                fmt_num(report.max_residual),
                fmt_num(report.threshold)
            )?;
            Ok(if report.holds() { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::StressBasis { file, out: target } => {
            let (mut doc, g) = load(file)?;
            let basis = stress_space(&g)?;
            for (i, b) in basis.iter().enumerate() {
                doc.stresses.insert(format!("basis_{i}"), b.clone());
            }
            writeln!(err, "stress space dimension {}", basis.len())?;
            emit(target.as_deref(), &doc.to_canonical_string(), out)?;
            Ok(EXIT_OK)
        }
        Command::Reciprocal { file, stress, mode, sigma, angle, stress_scale, out: target } => {
            let params = ReciprocalParams {
                mode: *mode,
                sigma: *sigma,
                angle: *angle,
                stress_scale: *stress_scale,
                tol,
            };
            reciprocal(file, stress, &params, target.as_deref(), out, err)
        }
        Command::ForceTorus { file, stress, mode } => {
            let (doc, g) = load(file)?;
            let n = force_torus(&g, &doc.stress(stress)?, *mode)?;
            writeln!(out, "{}", fmt_mat(n.basis()))?;
            Ok(EXIT_OK)
        }
        Command::Analyze { file } => {
            let (_, g) = load(file)?;
            let report = analyze_drawing(&g, tol)?;
            write_degeneracies(&report, out)?;
            Ok(if report.is_empty() { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::Render { file, dual, out: target, scale, labels } => {
            let (_, g) = load(file)?;
            let overlay = match dual {
                Some(path) => Some(load_dual(path)?),
                None => None,
            };
            if !(scale.is_finite() && *scale > 0.0) {
                return Err(CliError::Usage(format!("--scale must be positive, got {scale}")));
            }
            let options = RenderOptions {
                overlay: overlay.as_ref(),
                scale: *scale,
                labels: *labels,
                tol,
            };
            emit(target.as_deref(), &render_svg(&g, &options)?, out)?;
            Ok(EXIT_OK)
        }
        Command::Instance { name, out: target } => {
            let doc = builtin_instance(name)?;
            emit(target.as_deref(), &doc.to_canonical_string(), out)?;
            Ok(EXIT_OK)
        }
    }
}

struct ReciprocalParams {
    mode: ReciprocalMode,
    sigma: f64,
    angle: f64,
    stress_scale: f64,
    tol: f64,
}

fn reciprocal(
    file: &Path,
    stress: &str,
    p: &ReciprocalParams,
    target: Option<&Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CliResult<i32> {
    if !(p.sigma.is_finite() && p.sigma > 0.0) {
        return Err(CliError::Usage(format!("--sigma must be positive, got {}", p.sigma)));
    }
    if !p.angle.is_finite() {
        return Err(CliError::Usage("--angle must be finite".into()));
    }
    let (doc, g) = load(file)?;
    let omega = doc.stress(stress)?.scaled(p.stress_scale)?;
    let outer = rotation(p.angle.to_radians()) * p.sigma;
    // The report goes to stdout only when the document does not.
    let mut report_sink: Vec<u8> = Vec::new();
    let rep: &mut dyn Write = &mut report_sink;

    let (primal, stress_used, n) = match p.mode {
        ReciprocalMode::Parallel => {
            let verdict = parallel_criterion(&g, &omega, p.tol)?;
            let c = verdict.covariance;
            if !verdict.holds {
                writeln!(
                    out,
                    "impossible: parallel reciprocal needs covariance = I, found {} (alpha={} beta={} gamma={}); no torus helps",
                    fmt_mat(&c.matrix()),
                    fmt_num(c.alpha),
                    fmt_num(c.beta),
                    fmt_num(c.gamma)
                )?;
                return Ok(EXIT_IMPOSSIBLE);
            }
            let primal = g.with_torus(g.torus().transformed(&outer)?);
            let n = force_torus(&primal, &omega, ReciprocalMode::Parallel)?;
            writeln!(rep, "verdict=parallel-reciprocal covariance={}", fmt_mat(&c.matrix()))?;
            (primal, omega, n)
        }
        ReciprocalMode::Orthogonal => match orthogonal_torus_family(&g, &omega, p.tol)? {
            OrthogonalOutcome::Impossible { det } => {
                writeln!(
                    out,
                    "impossible: alpha*beta-gamma^2 = {} <= 0; no scaling of this stress is orthogonal reciprocal on any torus",
                    fmt_num(det)
                )?;
                return Ok(EXIT_IMPOSSIBLE);
            }
            OrthogonalOutcome::Reciprocal { family, stress, rescale, covariance } => {
                let m = family.instantiate(p.sigma, p.angle.to_radians())?;
                let primal = g.with_torus(m);
                let n = orthogonal_force_torus(&primal, &stress)?;
                writeln!(
                    rep,
                    "verdict=orthogonal-reciprocal det={} rescale={}",
                    fmt_num(covariance.det() * rescale * rescale),
                    fmt_num(rescale)
                )?;
                writeln!(rep, "family_base={}", fmt_mat(&family.base))?;
                writeln!(rep, "primal_torus={}", fmt_mat(primal.torus().basis()))?;
                (primal, stress, n)
            }
        },
    };
    writeln!(rep, "force_torus={}", fmt_mat(n.basis()))?;
    let dual = build_dual_drawing(&primal, &stress_used, p.mode, &n)?;
    let check = verify_reciprocal(&primal, &dual, &stress_used, p.tol)?;
    write_reciprocity(&check, rep)?;
    let doc = GraphDocument::from_dual(&dual).with_stress("reciprocal", &stress_used.reciprocal());
    let text = doc.to_canonical_string();
    match target {
        Some(path) => {
            write_file(path, &text)?;
            out.write_all(&report_sink)?;
        }
        None => {
            out.write_all(text.as_bytes())?;
            err.write_all(&report_sink)?;
        }
    }
    Ok(if check.is_reciprocal() { EXIT_OK } else { EXIT_FAILURE })
}

fn validate(file: &Path, out: &mut dyn Write) -> CliResult<i32> {
    let (_, g) = load_unchecked(file)?;
    let report = g.validate();
    writeln!(out, "vertices={} edges={}", g.vertex_count(), g.edge_count())?;
    if report.is_empty() {
        let faces = g.faces()?.count();
        writeln!(out, "faces={faces}")?;
        writeln!(out, "valid")?;
        Ok(EXIT_OK)
    } else {
        for v in &report.violations {
            writeln!(out, "violation: {v}")?;
        }
        Ok(EXIT_FAILURE)
    }
}

fn write_reciprocity(r: &ReciprocityReport, out: &mut dyn Write) -> io::Result<()> {
    writeln!(
        out,
        "reciprocal={} mode={} max_angle_error={} max_length_error={} same_torus={}",
        r.is_reciprocal(),
        r.mode,
        fmt_num(r.max_angle_error),
        fmt_num(r.max_length_error),
        r.same_torus
    )?;
    for v in &r.violations {
        writeln!(out, "violation: {v:?}")?;
    }
    Ok(())
}

fn write_degeneracies(r: &DegeneracyReport, out: &mut dyn Write) -> io::Result<()> {
    writeln!(
        out,
        "coincident_vertex_pairs={} crossing_edge_pairs={} overlapping_edge_pairs={} vertex_edge_contacts={} self_intersecting_faces={}",
        r.coincident_vertex_pairs.len(),
        r.crossing_edge_pairs.len(),
        r.overlapping_edge_pairs.len(),
        r.vertex_edge_contacts.len(),
        r.self_intersecting_faces.len()
    )?;
    for c in &r.coincident_vertex_pairs {
        writeln!(out, "coincident {} {} offset={:?}", c.a, c.b, c.offset)?;
    }
    for c in &r.crossing_edge_pairs {
        writeln!(out, "crossing {} {} offset={:?}", c.a, c.b, c.offset)?;
    }
    for o in &r.overlapping_edge_pairs {
        writeln!(out, "overlap {} {} offset={:?}", o.a, o.b, o.offset)?;
    }
    for c in &r.vertex_edge_contacts {
        writeln!(out, "contact vertex={} edge={} offset={:?}", c.vertex, c.edge, c.offset)?;
    }
    for f in &r.self_intersecting_faces {
        writeln!(out, "self-intersecting face {f}")?;
    }
    writeln!(out, "embedding={}", r.is_empty())
}

fn read_document(path: &Path) -> CliResult<GraphDocument> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    GraphDocument::parse(&text).map_err(|source| CliError::Document {
        path: path.to_path_buf(),
        source,
    })
}

fn load_unchecked(path: &Path) -> CliResult<(GraphDocument, TorusGraph)> {
    let doc = read_document(path)?;
    let g = doc.to_graph().map_err(|source| CliError::Document {
        path: path.to_path_buf(),
        source,
    })?;
    Ok((doc, g))
}

fn load(path: &Path) -> CliResult<(GraphDocument, TorusGraph)> {
    let (doc, g) = load_unchecked(path)?;
    g.ensure_valid().map_err(|source| CliError::Document {
        path: path.to_path_buf(),
        source,
    })?;
    Ok((doc, g))
}

fn load_dual(path: &Path) -> CliResult<DualDrawing> {
    let (doc, graph) = load(path)?;
    let record = doc
        .dual
        .ok_or_else(|| CliError::Usage(format!("{}: not a dual document", path.display())))?;
    Ok(DualDrawing {
        graph,
        mode: record.mode,
        edge_map: record.edge_map,
        source_torus: FlatTorus::from_rows(record.source_torus)?,
    })
}

fn write_file(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(target: Option<&Path>, text: &str, out: &mut dyn Write) -> CliResult<()> {
    match target {
        Some(path) => write_file(path, text),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

/// Rounds to 12 significant digits and prints the shortest form that reads
/// back to the rounded value.
pub fn fmt_num(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    let rounded = if rounded == 0.0 { 0.0 } else { rounded };
    let a = rounded.abs();
    if a == 0.0 || (1e-5..1e15).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// `[[a,b],[c,d]]` by rows.
pub fn fmt_mat(m: &Mat2) -> String {
    format!(
        "[[{},{}],[{},{}]]",
        fmt_num(m[(0, 0)]),
        fmt_num(m[(0, 1)]),
        fmt_num(m[(1, 0)]),
        fmt_num(m[(1, 1)])
    )
}
