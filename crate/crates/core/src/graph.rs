//! Geodesic graphs on flat tori.
//!
//! Edge `k` owns darts `2k` (forward, tail to head) and `2k + 1` (backward).
//! Vertex positions live in the reference square `[0,1)²`; the native
//! position of a point is `M · reference`. Each dart carries an integer
//! homology vector `λ(d)` so that its reference displacement is
//! `coords(head) + λ(d) − coords(tail)`.
//!
//! Rotations list the outgoing darts of each vertex in counterclockwise
//! order. The face to the left of `d` is traced by `d ↦ prev(rev(d))`, where
//! `prev` steps clockwise around the tail, so face boundaries come out
//! counterclockwise.

use std::collections::VecDeque;
use std::f64::consts::TAU;
use std::fmt;

use nalgebra::Matrix2xX;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::torus::{cross, FlatTorus, Mat2, Vec2};
use crate::DEFAULT_TOL;

pub type IVec2 = [i64; 2];

/// Two outgoing darts whose normalized cross product is below this are
/// treated as pointing the same way.
const ANGLE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart(usize);

impl Dart {
    pub fn new(id: usize) -> Self {
        Dart(id)
    }

    pub fn forward(edge: usize) -> Self {
        Dart(2 * edge)
    }

    pub fn backward(edge: usize) -> Self {
        Dart(2 * edge + 1)
    }

    pub fn id(self) -> usize {
        self.0
    }

    pub fn edge(self) -> usize {
        self.0 / 2
    }

    pub fn is_forward(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn rev(self) -> Self {
        Dart(self.0 ^ 1)
    }
}

/// One broken invariant of a [`TorusGraph`].
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    SingularTorus { det: f64 },
    CoordinateOutOfRange { vertex: usize },
    EndpointOutOfRange { edge: usize },
    HomologyLength { expected: usize, found: usize },
    HomologyNotAntisymmetric { dart: Dart },
    RotationLength { expected: usize, found: usize },
    RotationMismatch { vertex: usize, dart: usize },
    DartMissingFromRotation { dart: Dart },
    Disconnected { components: usize },
    EulerCharacteristic { vertices: usize, edges: usize, faces: usize },
    ZeroLengthEdge { edge: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SingularTorus { det } => write!(f, "torus basis is singular (det {det:e})"),
            Violation::CoordinateOutOfRange { vertex } => {
                write!(f, "vertex {vertex} lies outside the reference square [0,1)²")
            }
            Violation::EndpointOutOfRange { edge } => {
                write!(f, "edge {edge} references a missing vertex")
            }
            Violation::HomologyLength { expected, found } => {
                write!(f, "expected {expected} dart homology vectors, found {found}")
            }
            Violation::HomologyNotAntisymmetric { dart } => {
                write!(f, "homology of dart {} is not the negation of its reversal", dart.id())
            }
            Violation::RotationLength { expected, found } => {
                write!(f, "expected {expected} rotation lists, found {found}")
            }
            Violation::RotationMismatch { vertex, dart } => write!(
                f,
                "rotation of vertex {vertex} lists dart {dart}, which is repeated, missing or leaves another vertex"
            ),
            Violation::DartMissingFromRotation { dart } => {
                write!(f, "dart {} appears in no rotation", dart.id())
            }
            Violation::Disconnected { components } => {
                write!(f, "graph has {components} connected components")
            }
            Violation::EulerCharacteristic {
                vertices,
                edges,
                faces,
            } => write!(
                f,
                "V - E + F = {vertices} - {edges} + {faces} = {} (torus requires 0)",
                *vertices as i64 - *edges as i64 + *faces as i64
            ),
            Violation::ZeroLengthEdge { edge } => write!(f, "edge {edge} has zero length"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Faces of the combinatorial map.
#[derive(Clone, Debug, PartialEq)]
pub struct FaceStructure {
    face_of: Vec<usize>,
    boundaries: Vec<Vec<Dart>>,
}

impl FaceStructure {
    pub fn count(&self) -> usize {
        self.boundaries.len()
    }

    /// Face to the left of `d`.
    pub fn left(&self, d: Dart) -> usize {
        self.face_of[d.id()]
    }

    /// Face to the right of `d`.
    pub fn right(&self, d: Dart) -> usize {
        self.face_of[d.rev().id()]
    }

    /// Counterclockwise boundary darts of face `f`.
    pub fn boundary(&self, f: usize) -> &[Dart] {
        &self.boundaries[f]
    }

    pub fn boundaries(&self) -> &[Vec<Dart>] {
        &self.boundaries
    }
}

/// 2×E reference displacement matrix; column `e` is the displacement of the
/// forward dart of edge `e`.
#[derive(Clone, Debug, PartialEq)]
pub struct DisplacementMatrix(pub Matrix2xX<f64>);

impl DisplacementMatrix {
    pub fn from_columns(columns: &[Vec2]) -> Self {
        DisplacementMatrix(Matrix2xX::from_columns(columns))
    }

    pub fn ncols(&self) -> usize {
        self.0.ncols()
    }

    pub fn column(&self, e: usize) -> Vec2 {
        self.0.column(e).into_owned()
    }

    /// `Δφ`.
    pub fn apply(&self, phi: &[f64]) -> Vec2 {
        phi.iter()
            .enumerate()
            .fold(Vec2::zeros(), |acc, (e, &x)| acc + self.column(e) * x)
    }
}

/// 2×E integer matrix whose column `e` is the homology vector of the forward
/// dart of edge `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyMatrix {
    columns: Vec<IVec2>,
}

impl HomologyMatrix {
    pub fn from_columns(columns: Vec<IVec2>) -> Self {
        HomologyMatrix { columns }
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, e: usize) -> IVec2 {
        self.columns[e]
    }

    pub fn columns(&self) -> &[IVec2] {
        &self.columns
    }

    /// Row `i` (0 or 1) as a real vector over edges.
    pub fn row(&self, i: usize) -> Vec<f64> {
        self.columns.iter().map(|c| c[i] as f64).collect()
    }

    /// `Λφ`.
    pub fn apply(&self, phi: &[f64]) -> Vec2 {
        self.columns
            .iter()
            .zip(phi)
            .fold(Vec2::zeros(), |acc, (c, &x)| {
                acc + Vec2::new(c[0] as f64, c[1] as f64) * x
            })
    }

    /// `Λ · rows`, where `rows` is an E×2 matrix given row by row.
    pub fn times_rows(&self, rows: &[Vec2]) -> Mat2 {
        let mut out = Mat2::zeros();
        for (c, r) in self.columns.iter().zip(rows) {
            for i in 0..2 {
                out[(i, 0)] += c[i] as f64 * r.x;
                out[(i, 1)] += c[i] as f64 * r.y;
            }
        }
        out
    }
}

/// Native vertex positions and native displacement matrix `MΔ`.
#[derive(Clone, Debug)]
pub struct NativeCoords {
    pub points: Vec<Vec2>,
    pub displacements: DisplacementMatrix,
}

/// Combinatorial data of a torus graph without vertex positions.
#[derive(Clone, Debug, PartialEq)]
pub struct Blueprint {
    pub vertex_count: usize,
    pub ends: Vec<[usize; 2]>,
    /// Homology of the forward dart of each edge.
    pub shifts: Vec<IVec2>,
    pub rotation: Vec<Vec<Dart>>,
}

/// A geodesic drawing of a graph on a flat torus. Immutable; validity is
/// computed once at construction and can be queried with [`validate`](Self::validate).
#[derive(Clone, Debug)]
pub struct TorusGraph {
    torus: FlatTorus,
    coords: Vec<Vec2>,
    ends: Vec<[usize; 2]>,
    dart_homology: Vec<IVec2>,
    rotation: Vec<Vec<Dart>>,
    faces: Option<FaceStructure>,
    report: ValidationReport,
}

impl TorusGraph {
    /// Assembles a graph from raw parts without rejecting anything; violations
    /// end up in [`validate`](Self::validate).
    pub fn from_parts(
        torus: FlatTorus,
        coords: Vec<Vec2>,
        ends: Vec<[usize; 2]>,
        dart_homology: Vec<IVec2>,
        rotation: Vec<Vec<Dart>>,
    ) -> Self {
        let mut g = TorusGraph {
            torus,
            coords,
            ends,
            dart_homology,
            rotation,
            faces: None,
            report: ValidationReport::default(),
        };
        g.report = g.check();
        g
    }

    /// Builds a graph from forward-dart shifts. Without a rotation the
    /// counterclockwise order of outgoing native directions is used.
    pub fn new(
        torus: FlatTorus,
        coords: Vec<Vec2>,
        ends: Vec<[usize; 2]>,
        shifts: Vec<IVec2>,
        rotation: Option<Vec<Vec<Dart>>>,
    ) -> Result<Self> {
        let dart_homology = shifts.iter().flat_map(|&s| [s, neg(s)]).collect();
        match rotation {
            Some(rotation) => Ok(Self::from_parts(torus, coords, ends, dart_homology, rotation)),
            None => {
                let rotation = geometric_rotation(&torus, &coords, &ends, &dart_homology)?;
                Ok(Self::from_parts(torus, coords, ends, dart_homology, rotation))
            }
        }
    }

    pub fn from_blueprint(blueprint: &Blueprint, torus: FlatTorus, coords: Vec<Vec2>) -> Self {
        let dart_homology = blueprint.shifts.iter().flat_map(|&s| [s, neg(s)]).collect();
        Self::from_parts(
            torus,
            coords,
            blueprint.ends.clone(),
            dart_homology,
            blueprint.rotation.clone(),
        )
    }

    pub fn blueprint(&self) -> Blueprint {
        Blueprint {
            vertex_count: self.vertex_count(),
            ends: self.ends.clone(),
            shifts: (0..self.edge_count())
                .map(|e| self.homology(Dart::forward(e)))
                .collect(),
            rotation: self.rotation.clone(),
        }
    }

    pub fn torus(&self) -> &FlatTorus {
        &self.torus
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.ends.len()
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> {
        (0..self.dart_count()).map(Dart::new)
    }

    pub fn coords(&self) -> &[Vec2] {
        &self.coords
    }

    pub fn coord(&self, v: usize) -> Vec2 {
        self.coords[v]
    }

    pub fn ends(&self, e: usize) -> [usize; 2] {
        self.ends[e]
    }

    pub fn tail(&self, d: Dart) -> usize {
        let [t, h] = self.ends[d.edge()];
        if d.is_forward() {
            t
        } else {
            h
        }
    }

    pub fn head(&self, d: Dart) -> usize {
        self.tail(d.rev())
    }

    pub fn homology(&self, d: Dart) -> IVec2 {
        self.dart_homology[d.id()]
    }

    pub fn dart_homology(&self) -> &[IVec2] {
        &self.dart_homology
    }

    pub fn rotation(&self) -> &[Vec<Dart>] {
        &self.rotation
    }

    pub fn outgoing(&self, v: usize) -> &[Dart] {
        &self.rotation[v]
    }

    /// Reference displacement of a dart.
    pub fn displacement(&self, d: Dart) -> Vec2 {
        let l = self.homology(d);
        self.coords[self.head(d)] + Vec2::new(l[0] as f64, l[1] as f64) - self.coords[self.tail(d)]
    }

    pub fn native_displacement(&self, d: Dart) -> Vec2 {
        self.torus.to_native(&self.displacement(d))
    }

    pub fn validate(&self) -> &ValidationReport {
        &self.report
    }

    pub fn is_valid(&self) -> bool {
        self.report.is_empty()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidGraph(self.report.clone()))
        }
    }

    /// Face structure; fails only when the rotation is not a permutation of
    /// the darts.
    pub fn faces(&self) -> Result<&FaceStructure> {
        self.faces
            .as_ref()
            .ok_or_else(|| Error::InvalidGraph(self.report.clone()))
    }

    pub fn displacement_matrix(&self) -> Result<DisplacementMatrix> {
        self.ensure_valid()?;
        Ok(self.displacement_matrix_unchecked())
    }

    pub(crate) fn displacement_matrix_unchecked(&self) -> DisplacementMatrix {
        let cols: Vec<Vec2> = (0..self.edge_count())
            .map(|e| self.displacement(Dart::forward(e)))
            .collect();
        DisplacementMatrix::from_columns(&cols)
    }

    pub fn homology_matrix(&self) -> Result<HomologyMatrix> {
        self.ensure_valid()?;
        Ok(HomologyMatrix::from_columns(
            (0..self.edge_count())
                .map(|e| self.homology(Dart::forward(e)))
                .collect(),
        ))
    }

    pub fn native_coords(&self) -> Result<NativeCoords> {
        let delta = self.displacement_matrix()?;
        Ok(NativeCoords {
            points: self.coords.iter().map(|c| self.torus.to_native(c)).collect(),
            displacements: DisplacementMatrix(self.torus.basis() * delta.0),
        })
    }

    /// The same combinatorics and reference geometry on another torus.
    pub fn with_torus(&self, torus: FlatTorus) -> TorusGraph {
        TorusGraph::from_parts(
            torus,
            self.coords.clone(),
            self.ends.clone(),
            self.dart_homology.clone(),
            self.rotation.clone(),
        )
    }

    /// Replaces the rotation system by the counterclockwise order of outgoing
    /// native displacements.
    pub fn rotation_from_geometry(&self) -> Result<TorusGraph> {
        let rotation = geometric_rotation(&self.torus, &self.coords, &self.ends, &self.dart_homology)?;
        Ok(TorusGraph::from_parts(
            self.torus,
            self.coords.clone(),
            self.ends.clone(),
            self.dart_homology.clone(),
            rotation,
        ))
    }

    /// Re-expresses the drawing in the basis `M·U` for a unimodular integer
    /// matrix `U` (given by rows). Native geometry is unchanged.
    pub fn rebased(&self, unimodular: [[i64; 2]; 2]) -> Result<TorusGraph> {
        let u = Mat2::new(
            unimodular[0][0] as f64,
            unimodular[0][1] as f64,
            unimodular[1][0] as f64,
            unimodular[1][1] as f64,
        );
        let det = unimodular[0][0] * unimodular[1][1] - unimodular[0][1] * unimodular[1][0];
        if det.abs() != 1 {
            return Err(Error::SingularTorus { det: det as f64 });
        }
        let u_inv = u.try_inverse().ok_or(Error::SingularTorus { det: 0.0 })?;
        let torus = FlatTorus::new(self.torus.basis() * u)?;
        let coords: Vec<Vec2> = self
            .coords
            .iter()
            .map(|c| wrap_point(&(u_inv * c)).0)
            .collect();
        let mut homology = Vec::with_capacity(self.dart_count());
        for d in self.darts() {
            let target = u_inv * self.displacement(d);
            let raw = coords[self.head(d)] - coords[self.tail(d)];
            let l = target - raw;
            homology.push([l.x.round() as i64, l.y.round() as i64]);
        }
        Ok(TorusGraph::from_parts(
            torus,
            coords,
            self.ends.clone(),
            homology,
            self.rotation.clone(),
        ))
    }

    fn check(&mut self) -> ValidationReport {
        let mut violations = Vec::new();
        let det = self.torus.det();
        if det.abs() <= crate::torus::SINGULAR_DET {
            violations.push(Violation::SingularTorus { det });
        }
        let nv = self.coords.len();
        for (v, c) in self.coords.iter().enumerate() {
            let inside = |x: f64| x.is_finite() && (0.0..1.0).contains(&x);
            if !inside(c.x) || !inside(c.y) {
                violations.push(Violation::CoordinateOutOfRange { vertex: v });
            }
        }
        let mut ends_ok = true;
        for (e, &[t, h]) in self.ends.iter().enumerate() {
            if t >= nv || h >= nv {
                violations.push(Violation::EndpointOutOfRange { edge: e });
                ends_ok = false;
            }
        }
        let nd = self.dart_count();
        let homology_ok = self.dart_homology.len() == nd;
        if !homology_ok {
            violations.push(Violation::HomologyLength {
                expected: nd,
                found: self.dart_homology.len(),
            });
        } else {
            for e in 0..self.edge_count() {
                let d = Dart::forward(e);
                if self.homology(d.rev()) != neg(self.homology(d)) {
                    violations.push(Violation::HomologyNotAntisymmetric { dart: d });
                }
            }
        }
        let rotation_ok = ends_ok && self.check_rotation(&mut violations);

        if ends_ok {
            let components = count_components(nv, &self.ends);
            if components > 1 {
                violations.push(Violation::Disconnected { components });
            }
        }
        if rotation_ok {
            let faces = trace_faces(&self.rotation, nd, |d| self.tail(d));
            let f = faces.count();
            if nv as i64 - self.edge_count() as i64 + f as i64 != 0 {
                violations.push(Violation::EulerCharacteristic {
                    vertices: nv,
                    edges: self.edge_count(),
                    faces: f,
                });
            }
            self.faces = Some(faces);
        }
        if ends_ok && homology_ok && violations.iter().all(|v| !matches!(v, Violation::CoordinateOutOfRange { .. })) {
            for e in 0..self.edge_count() {
                if self.native_displacement(Dart::forward(e)).norm() <= DEFAULT_TOL {
                    violations.push(Violation::ZeroLengthEdge { edge: e });
                }
            }
        }
        ValidationReport { violations }
    }

    fn check_rotation(&self, violations: &mut Vec<Violation>) -> bool {
        let nv = self.coords.len();
        if self.rotation.len() != nv {
            violations.push(Violation::RotationLength {
                expected: nv,
                found: self.rotation.len(),
            });
            return false;
        }
        let nd = self.dart_count();
        let mut seen = vec![false; nd];
        let mut ok = true;
        for (v, darts) in self.rotation.iter().enumerate() {
            for d in darts {
                if d.id() >= nd || seen[d.id()] || self.tail(*d) != v {
                    violations.push(Violation::RotationMismatch {
                        vertex: v,
                        dart: d.id(),
                    });
                    ok = false;
                } else {
                    seen[d.id()] = true;
                }
            }
        }
        for (d, s) in seen.iter().enumerate() {
            if !s {
                violations.push(Violation::DartMissingFromRotation { dart: Dart::new(d) });
                ok = false;
            }
        }
        ok
    }
}

fn trace_faces(rotation: &[Vec<Dart>], nd: usize, tail: impl Fn(Dart) -> usize) -> FaceStructure {
    let mut pos = vec![0usize; nd];
    for darts in rotation {
        for (i, d) in darts.iter().enumerate() {
            pos[d.id()] = i;
        }
    }
    let prev = |d: Dart| {
        let ring = &rotation[tail(d)];
        ring[(pos[d.id()] + ring.len() - 1) % ring.len()]
    };
    let mut face_of = vec![usize::MAX; nd];
    let mut boundaries = Vec::new();
    for start in 0..nd {
        if face_of[start] != usize::MAX {
            continue;
        }
        let f = boundaries.len();
        let mut orbit = Vec::new();
        let mut d = Dart::new(start);
        while face_of[d.id()] == usize::MAX {
            face_of[d.id()] = f;
            orbit.push(d);
            d = prev(d.rev());
        }
        boundaries.push(orbit);
    }
    FaceStructure { face_of, boundaries }
}

fn count_components(nv: usize, ends: &[[usize; 2]]) -> usize {
    let mut adj = vec![Vec::new(); nv];
    for &[t, h] in ends {
        adj[t].push(h);
        adj[h].push(t);
    }
    let mut seen = vec![false; nv];
    let mut components = 0;
    for s in 0..nv {
        if seen[s] {
            continue;
        }
        components += 1;
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    components
}

fn geometric_rotation(
    torus: &FlatTorus,
    coords: &[Vec2],
    ends: &[[usize; 2]],
    dart_homology: &[IVec2],
) -> Result<Vec<Vec<Dart>>> {
    let nv = coords.len();
    if dart_homology.len() != 2 * ends.len() {
        return Err(Error::LengthMismatch {
            expected: 2 * ends.len(),
            found: dart_homology.len(),
        });
    }
    let mut out: Vec<Vec<(f64, Dart, Vec2)>> = vec![Vec::new(); nv];
    for (e, &[t, h]) in ends.iter().enumerate() {
        if t >= nv || h >= nv {
            return Err(Error::IndexOutOfRange(format!("edge {e} endpoints ({t}, {h})")));
        }
        for (d, from, to) in [(Dart::forward(e), t, h), (Dart::backward(e), h, t)] {
            let l = dart_homology[d.id()];
            let disp = coords[to] + Vec2::new(l[0] as f64, l[1] as f64) - coords[from];
            let native = torus.to_native(&disp);
            out[from].push((angle_key(&native), d, native));
        }
    }
    let mut rotation = Vec::with_capacity(nv);
    for (v, mut darts) in out.into_iter().enumerate() {
        darts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        let k = darts.len();
        if k >= 2 {
            for i in 0..k {
                let (_, da, a) = darts[i];
                let (_, db, b) = darts[(i + 1) % k];
                let scale = a.norm() * b.norm();
                if scale == 0.0 || (cross(&a, &b).abs() <= ANGLE_TOL * scale && a.dot(&b) > 0.0) {
                    return Err(Error::AmbiguousRotation {
                        vertex: v,
                        first: da.min(db),
                        second: da.max(db),
                    });
                }
            }
        }
        rotation.push(darts.into_iter().map(|(_, d, _)| d).collect());
    }
    Ok(rotation)
}

/// Angle in `[0, 2π)`.
fn angle_key(v: &Vec2) -> f64 {
    let a = v.y.atan2(v.x);
    if a < 0.0 {
        a + TAU
    } else {
        a
    }
}

pub(crate) fn neg(v: IVec2) -> IVec2 {
    [-v[0], -v[1]]
}

/// Splits `x` into `(frac, k)` with `x = frac + k`, `frac ∈ [0,1)`.
pub(crate) fn wrap_unit(x: f64) -> (f64, i64) {
    let k = x.floor();
    let mut frac = x - k;
    let mut k = k as i64;
    if frac >= 1.0 {
        frac = 0.0;
        k += 1;
    }
    (frac, k)
}

pub(crate) fn wrap_point(p: &Vec2) -> (Vec2, IVec2) {
    let (x, kx) = wrap_unit(p.x);
    let (y, ky) = wrap_unit(p.y);
    (Vec2::new(x, y), [kx, ky])
}

/// The homology vector making `head + λ − tail` the shortest representative
/// inside `(−1,1)²`; ties go to the lexicographically smallest `λ`.
pub fn shortest_shift(tail: &Vec2, head: &Vec2) -> IVec2 {
    let raw = head - tail;
    let mut best: Option<(f64, IVec2)> = None;
    for lx in -1..=1 {
        for ly in -1..=1 {
            let d = raw + Vec2::new(lx as f64, ly as f64);
            if d.x.abs() >= 1.0 || d.y.abs() >= 1.0 {
                continue;
            }
            let key = (d.norm_squared(), [lx, ly]);
            let better = match &best {
                None => true,
                Some((len, l)) => key.0 < *len || (key.0 == *len && key.1 < *l),
            };
            if better {
                best = Some(key);
            }
        }
    }
    best.map(|b| b.1).unwrap_or([0, 0])
}
