//! Embedding tests for torus drawings.
//!
//! Every edge is lifted to a segment in the universal cover, starting at its
//! tail in the reference square. Two edges can only meet if one of them is
//! moved by a lattice translate that makes their bounding boxes intersect, so
//! the search enumerates exactly those translates. Tests run in native
//! coordinates, where `tol` is an absolute distance.

use crate::error::{Error, Result};
use crate::geometry::{classify_segments, polygon_self_intersects, SegmentRelation};
use crate::graph::{Dart, IVec2, TorusGraph};
use crate::torus::Vec2;

/// Vertex `b` lifted by `offset` lands on vertex `a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VertexCoincidence {
    pub a: usize,
    pub b: usize,
    pub offset: IVec2,
    pub distance: f64,
}

/// Edge `b` lifted by `offset` crosses edge `a` at parameters `s` (on `a`)
/// and `t` (on `b`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeCrossing {
    pub a: usize,
    pub b: usize,
    pub offset: IVec2,
    pub s: f64,
    pub t: f64,
}

/// Edge `b` lifted by `offset` runs along edge `a` on the parameter interval
/// `[lo, hi]` of `a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeOverlap {
    pub a: usize,
    pub b: usize,
    pub offset: IVec2,
    pub lo: f64,
    pub hi: f64,
}

/// A lift of `vertex` (its reference position plus `offset`) touches the
/// interior of the base lift of `edge` at parameter `t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VertexEdgeContact {
    pub vertex: usize,
    pub edge: usize,
    pub offset: IVec2,
    pub t: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DegeneracyReport {
    pub coincident_vertex_pairs: Vec<VertexCoincidence>,
    pub crossing_edge_pairs: Vec<EdgeCrossing>,
    pub overlapping_edge_pairs: Vec<EdgeOverlap>,
    pub vertex_edge_contacts: Vec<VertexEdgeContact>,
    pub self_intersecting_faces: Vec<usize>,
}

impl DegeneracyReport {
    pub fn is_empty(&self) -> bool {
        self.coincident_vertex_pairs.is_empty()
            && self.crossing_edge_pairs.is_empty()
            && self.overlapping_edge_pairs.is_empty()
            && self.vertex_edge_contacts.is_empty()
            && self.self_intersecting_faces.is_empty()
    }
}

/// Closed boundary of a face lifted to the universal cover, in native
/// coordinates. `points[i]` is the tail of the `i`-th boundary dart.
#[derive(Clone, Debug, PartialEq)]
pub struct FacePolygon {
    pub face: usize,
    pub darts: Vec<Dart>,
    pub points: Vec<Vec2>,
}

pub fn face_polygons(g: &TorusGraph, tol: f64) -> Result<Vec<FacePolygon>> {
    let faces = g.faces()?;
    let m = g.torus().basis();
    let mut out = Vec::with_capacity(faces.count());
    for (f, boundary) in faces.boundaries().iter().enumerate() {
        let mut p = m * g.coord(g.tail(boundary[0]));
        let mut points = Vec::with_capacity(boundary.len());
        let mut perimeter = 0.0;
        for &d in boundary {
            points.push(p);
            let step = g.native_displacement(d);
            perimeter += step.norm();
            p += step;
        }
        let gap = (p - points[0]).norm();
        if gap > tol * perimeter.max(1.0) {
            return Err(Error::OpenFace { face: f, gap });
        }
        out.push(FacePolygon {
            face: f,
            darts: boundary.clone(),
            points,
        });
    }
    Ok(out)
}

struct Lift {
    tail: usize,
    head: usize,
    /// Reference endpoints of the base lift.
    p0: Vec2,
    p1: Vec2,
    lo: Vec2,
    hi: Vec2,
}

fn lifts(g: &TorusGraph) -> Vec<Lift> {
    (0..g.edge_count())
        .map(|e| {
            let [tail, head] = g.ends(e);
            let p0 = g.coord(tail);
            let p1 = p0 + g.displacement(Dart::forward(e));
            Lift {
                tail,
                head,
                p0,
                p1,
                lo: p0.inf(&p1),
                hi: p0.sup(&p1),
            }
        })
        .collect()
}

fn ivec(v: &Vec2) -> IVec2 {
    [v.x.round() as i64, v.y.round() as i64]
}

fn lexicographically_positive(t: IVec2) -> bool {
    t[0] > 0 || (t[0] == 0 && t[1] > 0)
}

/// Finds every coincidence, crossing, overlap, vertex-on-edge contact and
/// self-intersecting face of the drawing.
///
/// Edges sharing a vertex at the same lift are allowed to touch there. Two
/// distinct vertices at the same point are reported once, as a coincidence,
/// not again for each pair of incident edges.
pub fn analyze_drawing(g: &TorusGraph, tol: f64) -> Result<DegeneracyReport> {
    g.ensure_valid()?;
    let m = *g.torus().basis();
    let native = |p: &Vec2| m * p;
    // Reference slack covering a native distance of `tol`.
    let slack = tol * g.torus().inverse().norm() + 1e-9;
    let mut report = DegeneracyReport::default();

    let nv = g.vertex_count();
    for a in 0..nv {
        for b in a + 1..nv {
            let d = g.coord(a) - g.coord(b);
            for tx in -1..=1 {
                for ty in -1..=1 {
                    let t = Vec2::new(tx as f64, ty as f64);
                    let distance = native(&(d - t)).norm();
                    if distance <= tol {
                        report.coincident_vertex_pairs.push(VertexCoincidence {
                            a,
                            b,
                            offset: [tx, ty],
                            distance,
                        });
                    }
                }
            }
        }
    }

    let lifted = lifts(g);
    let mut contacts: Vec<VertexEdgeContact> = Vec::new();
    for (a, la) in lifted.iter().enumerate() {
        for (b, lb) in lifted.iter().enumerate().skip(a) {
            let x_range = (la.lo.x - lb.hi.x - slack).ceil() as i64..=(la.hi.x - lb.lo.x + slack).floor() as i64;
            let y_range = (la.lo.y - lb.hi.y - slack).ceil() as i64..=(la.hi.y - lb.lo.y + slack).floor() as i64;
            for tx in x_range {
                for ty in y_range.clone() {
                    let offset = [tx, ty];
                    if a == b && !lexicographically_positive(offset) {
                        continue;
                    }
                    let shift = Vec2::new(tx as f64, ty as f64);
                    let (q0, q1) = (lb.p0 + shift, lb.p1 + shift);
                    let rel = classify_segments(native(&la.p0), native(&la.p1), native(&q0), native(&q1), tol);
                    match rel {
                        SegmentRelation::Disjoint => {}
                        SegmentRelation::Crossing { s, t } => {
                            report.crossing_edge_pairs.push(EdgeCrossing { a, b, offset, s, t });
                        }
                        SegmentRelation::Overlap { lo, hi } => {
                            report.overlapping_edge_pairs.push(EdgeOverlap { a, b, offset, lo, hi });
                        }
                        SegmentRelation::Touching { s, t } => {
                            let at_a = endpoint_of(la, s, native(&(la.p1 - la.p0)).norm(), tol);
                            let at_b = endpoint_of(lb, t, native(&(q1 - q0)).norm(), tol);
                            match (at_a, at_b) {
                                // Shared vertex at the same lift, or distinct
                                // coincident vertices (listed above).
                                (Some(_), Some(_)) => {}
                                (Some((v, p)), None) => contacts.push(VertexEdgeContact {
                                    vertex: v,
                                    edge: b,
                                    offset: ivec(&(p - g.coord(v) - shift)),
                                    t,
                                }),
                                (None, Some((v, p))) => contacts.push(VertexEdgeContact {
                                    vertex: v,
                                    edge: a,
                                    offset: ivec(&(p + shift - g.coord(v))),
                                    t: s,
                                }),
                                (None, None) => {
                                    report.crossing_edge_pairs.push(EdgeCrossing { a, b, offset, s, t });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    contacts.sort_by(|x, y| {
        (x.vertex, x.edge, x.offset)
            .cmp(&(y.vertex, y.edge, y.offset))
            .then(x.t.total_cmp(&y.t))
    });
    contacts.dedup_by(|x, y| (x.vertex, x.edge, x.offset) == (y.vertex, y.edge, y.offset));
    report.vertex_edge_contacts = contacts;

    for poly in face_polygons(g, tol)? {
        if polygon_self_intersects(&poly.points, tol) {
            report.self_intersecting_faces.push(poly.face);
        }
    }
    Ok(report)
}

/// The vertex and its reference lift when parameter `s` sits at an end of
/// the base lift `l`.
fn endpoint_of(l: &Lift, s: f64, native_len: f64, tol: f64) -> Option<(usize, Vec2)> {
    let eps = if native_len > 0.0 { tol / native_len } else { 1.0 };
    if s <= eps {
        Some((l.tail, l.p0))
    } else if s >= 1.0 - eps {
        Some((l.head, l.p1))
    } else {
        None
    }
}

/// True iff the drawing has no degeneracies of any kind.
pub fn is_embedding(g: &TorusGraph, tol: f64) -> Result<bool> {
    Ok(analyze_drawing(g, tol)?.is_empty())
}
