//! Tolerance-based segment predicates used by the drawing analysis.
//!
//! All tolerances are absolute distances in the plane. Parameters along a
//! segment are converted with the segment length, so a parameter counts as an
//! endpoint when the corresponding point lies within `tol` of that endpoint.

use crate::torus::{cross, Vec2};

/// How two closed segments `p0p1` and `q0q1` meet.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SegmentRelation {
    Disjoint,
    /// Interiors cross at a single point with parameters `s` on `p` and `t` on `q`.
    Crossing { s: f64, t: f64 },
    /// Single contact point where at least one parameter is at an endpoint.
    Touching { s: f64, t: f64 },
    /// Collinear overlap of positive length; `[lo, hi]` is the shared
    /// parameter interval along `p`.
    Overlap { lo: f64, hi: f64 },
}

impl SegmentRelation {
    pub fn is_disjoint(&self) -> bool {
        matches!(self, SegmentRelation::Disjoint)
    }
}

pub fn classify_segments(p0: Vec2, p1: Vec2, q0: Vec2, q1: Vec2, tol: f64) -> SegmentRelation {
    let d1 = p1 - p0;
    let d2 = q1 - q0;
    let len1 = d1.norm();
    let len2 = d2.norm();
    if len1 <= tol || len2 <= tol {
        return classify_degenerate(p0, p1, q0, q1, tol);
    }
    let w = q0 - p0;
    let denom = cross(&d1, &d2);
    if denom.abs() <= tol * len1.max(len2) {
        // Parallel within tolerance; only collinear pairs can meet.
        let offset = cross(&d1, &w).abs() / len1;
        let offset_end = cross(&d1, &(q1 - p0)).abs() / len1;
        if offset.max(offset_end) > tol {
            return SegmentRelation::Disjoint;
        }
        let l2 = len1 * len1;
        let a = w.dot(&d1) / l2;
        let b = (q1 - p0).dot(&d1) / l2;
        let lo = a.min(b).max(0.0);
        let hi = a.max(b).min(1.0);
        let overlap = (hi - lo) * len1;
        if overlap > tol {
            return SegmentRelation::Overlap { lo, hi };
        }
        if overlap < -tol {
            return SegmentRelation::Disjoint;
        }
        let s = ((lo + hi) / 2.0).clamp(0.0, 1.0);
        let point = p0 + d1 * s;
        let t = ((point - q0).dot(&d2) / (len2 * len2)).clamp(0.0, 1.0);
        return SegmentRelation::Touching { s, t };
    }
    let s = cross(&w, &d2) / denom;
    let t = cross(&w, &d1) / denom;
    let es = tol / len1;
    let et = tol / len2;
    if s < -es || s > 1.0 + es || t < -et || t > 1.0 + et {
        return SegmentRelation::Disjoint;
    }
    let s_inner = s > es && s < 1.0 - es;
    let t_inner = t > et && t < 1.0 - et;
    if s_inner && t_inner {
        SegmentRelation::Crossing { s, t }
    } else {
        SegmentRelation::Touching {
            s: s.clamp(0.0, 1.0),
            t: t.clamp(0.0, 1.0),
        }
    }
}

fn classify_degenerate(p0: Vec2, p1: Vec2, q0: Vec2, q1: Vec2, tol: f64) -> SegmentRelation {
    let (point, s_fixed, seg0, seg1, swap) = if (p1 - p0).norm() <= tol {
        (p0, 0.0, q0, q1, false)
    } else {
        (q0, 0.0, p0, p1, true)
    };
    let d = seg1 - seg0;
    let l2 = d.norm_squared();
    let t = if l2 == 0.0 {
        0.0
    } else {
        ((point - seg0).dot(&d) / l2).clamp(0.0, 1.0)
    };
    if (seg0 + d * t - point).norm() > tol {
        return SegmentRelation::Disjoint;
    }
    if swap {
        SegmentRelation::Touching { s: t, t: s_fixed }
    } else {
        SegmentRelation::Touching { s: s_fixed, t }
    }
}

/// True if the closed polygon `points[0] → points[1] → … → points[0]` is not
/// simple: two non-adjacent sides meet, adjacent sides fold back onto each
/// other, or two corners coincide.
pub fn polygon_self_intersects(points: &[Vec2], tol: f64) -> bool {
    let k = points.len();
    if k < 3 {
        return k == 2 || k == 1;
    }
    for i in 0..k {
        for j in i + 1..k {
            if (points[i] - points[j]).norm() <= tol {
                return true;
            }
        }
    }
    let side = |i: usize| (points[i], points[(i + 1) % k]);
    for i in 0..k {
        for j in i + 1..k {
            let (p0, p1) = side(i);
            let (q0, q1) = side(j);
            let adjacent = j == i + 1 || (i == 0 && j == k - 1);
            let rel = classify_segments(p0, p1, q0, q1, tol);
            if adjacent {
                if matches!(rel, SegmentRelation::Overlap { .. } | SegmentRelation::Crossing { .. }) {
                    return true;
                }
            } else if !rel.is_disjoint() {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: f64, y: f64) -> Vec2 {
        Vec2::new(x, y)
    }

    #[test]
    fn proper_crossing() {
        let r = classify_segments(v(0.0, 0.0), v(1.0, 1.0), v(0.0, 1.0), v(1.0, 0.0), 1e-9);
        match r {
            SegmentRelation::Crossing { s, t } => {
                assert!((s - 0.5).abs() < 1e-12 && (t - 0.5).abs() < 1e-12)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn shared_endpoint_is_touching() {
        let r = classify_segments(v(0.0, 0.0), v(1.0, 0.0), v(1.0, 0.0), v(1.0, 1.0), 1e-9);
        assert!(matches!(r, SegmentRelation::Touching { s, t } if s == 1.0 && t == 0.0));
    }

    #[test]
    fn t_junction_is_touching() {
        let r = classify_segments(v(0.0, 0.0), v(2.0, 0.0), v(1.0, 0.0), v(1.0, 1.0), 1e-9);
        assert!(matches!(r, SegmentRelation::Touching { t, .. } if t == 0.0));
    }

    #[test]
    fn collinear_overlap_and_gap() {
        let r = classify_segments(v(0.0, 0.0), v(2.0, 0.0), v(1.0, 0.0), v(3.0, 0.0), 1e-9);
        assert!(matches!(r, SegmentRelation::Overlap { lo, hi } if lo == 0.5 && hi == 1.0));
        let r = classify_segments(v(0.0, 0.0), v(1.0, 0.0), v(2.0, 0.0), v(3.0, 0.0), 1e-9);
        assert!(r.is_disjoint());
        let r = classify_segments(v(0.0, 0.0), v(1.0, 0.0), v(1.0, 0.0), v(3.0, 0.0), 1e-9);
        assert!(matches!(r, SegmentRelation::Touching { .. }));
    }

    #[test]
    fn parallel_offset_is_disjoint() {
        let r = classify_segments(v(0.0, 0.0), v(1.0, 0.0), v(0.0, 1e-6), v(1.0, 1e-6), 1e-9);
        assert!(r.is_disjoint());
    }

    #[test]
    fn relation_is_symmetric() {
        let cases = [
            (v(0.0, 0.0), v(1.0, 1.0), v(0.0, 1.0), v(1.0, 0.0)),
            (v(0.0, 0.0), v(2.0, 0.0), v(1.0, 0.0), v(3.0, 0.0)),
            (v(0.0, 0.0), v(2.0, 0.0), v(1.0, 0.0), v(1.0, 1.0)),
            (v(0.0, 0.0), v(1.0, 0.0), v(0.0, 1.0), v(1.0, 1.0)),
        ];
        for (a, b, c, d) in cases {
            let fwd = classify_segments(a, b, c, d, 1e-9);
            let bwd = classify_segments(c, d, a, b, 1e-9);
            assert_eq!(std::mem::discriminant(&fwd), std::mem::discriminant(&bwd));
        }
    }

    #[test]
    fn polygons() {
        let square = [v(0.0, 0.0), v(1.0, 0.0), v(1.0, 1.0), v(0.0, 1.0)];
        assert!(!polygon_self_intersects(&square, 1e-9));
        let bowtie = [v(0.0, 0.0), v(1.0, 1.0), v(1.0, 0.0), v(0.0, 1.0)];
        assert!(polygon_self_intersects(&bowtie, 1e-9));
        let folded = [v(0.0, 0.0), v(2.0, 0.0), v(1.0, 0.0), v(1.0, 1.0)];
        assert!(polygon_self_intersects(&folded, 1e-9));
        let pinched = [v(0.0, 0.0), v(1.0, 0.0), v(0.5, 0.5), v(1.0, 1.0), v(0.0, 1.0), v(0.5, 0.5)];
        assert!(polygon_self_intersects(&pinched, 1e-9));
    }
}
