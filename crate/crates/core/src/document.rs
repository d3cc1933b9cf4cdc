//! JSON document format for torus graphs and their stresses.
//!
//! Canonical form: keys sorted, two-space indentation, containers holding only
//! scalars written on one line, every real number written with 17 significant
//! digits (`1.4285714285714285e-1`). Parsing a canonical document and writing
//! it back reproduces it byte for byte.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graph::{Dart, TorusGraph};
use crate::reciprocal::{DualDrawing, ReciprocalMode};
use crate::stress::StressVector;
use crate::torus::{FlatTorus, Vec2};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeRecord {
    pub tail: usize,
    pub head: usize,
    pub shift: [i64; 2],
}

/// Present when the document holds a dual drawing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualRecord {
    pub mode: ReciprocalMode,
    /// Dual edge `i` corresponds to primal edge `edge_map[i]`.
    pub edge_map: Vec<usize>,
    pub source_torus: [[f64; 2]; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphDocument {
    pub version: u32,
    /// Basis matrix by rows; its columns generate the lattice.
    pub torus: [[f64; 2]; 2],
    pub vertices: Vec<[f64; 2]>,
    pub edges: Vec<EdgeRecord>,
    /// Counterclockwise outgoing dart ids per vertex; derived from geometry
    /// when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rotation: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub stresses: BTreeMap<String, Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualRecord>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    tail: usize,
    head: usize,
    shift: [f64; 2],
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    version: u32,
    torus: [[f64; 2]; 2],
    vertices: Vec<[f64; 2]>,
    edges: Vec<RawEdge>,
    #[serde(default)]
    rotation: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    stresses: BTreeMap<String, Vec<f64>>,
    #[serde(default)]
    dual: Option<DualRecord>,
}

impl GraphDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawDocument = serde_json::from_str(text)?;
        if raw.version != FORMAT_VERSION {
            return Err(Error::Malformed(format!(
                "unsupported version {} (expected {FORMAT_VERSION})",
                raw.version
            )));
        }
        if raw.torus.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Malformed("non-finite torus entry".into()));
        }
        let nv = raw.vertices.len();
        let ne = raw.edges.len();
        if raw.vertices.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Malformed("non-finite vertex coordinate".into()));
        }
        let mut edges = Vec::with_capacity(ne);
        for (e, r) in raw.edges.iter().enumerate() {
            if r.tail >= nv || r.head >= nv {
                return Err(Error::IndexOutOfRange(format!(
                    "edge {e} joins {} and {} but there are {nv} vertices",
                    r.tail, r.head
                )));
            }
            let integral = |x: f64| x.is_finite() && x.fract() == 0.0 && x.abs() < 1e15;
            if !integral(r.shift[0]) || !integral(r.shift[1]) {
                return Err(Error::NonIntegerShift {
                    edge: e,
                    shift: r.shift,
                });
            }
            edges.push(EdgeRecord {
                tail: r.tail,
                head: r.head,
                shift: [r.shift[0] as i64, r.shift[1] as i64],
            });
        }
        if let Some(rotation) = &raw.rotation {
            if rotation.len() != nv {
                return Err(Error::Malformed(format!(
                    "rotation has {} entries for {nv} vertices",
                    rotation.len()
                )));
            }
            let mut seen = BTreeSet::new();
            for (v, darts) in rotation.iter().enumerate() {
                for &d in darts {
                    if d >= 2 * ne {
                        return Err(Error::IndexOutOfRange(format!(
                            "rotation of vertex {v} lists dart {d} but there are {} darts",
                            2 * ne
                        )));
                    }
                    if !seen.insert(d) {
                        return Err(Error::DuplicateRotationEntry { vertex: v, dart: d });
                    }
                }
            }
        }
        for (name, values) in &raw.stresses {
            if values.len() != ne {
                return Err(Error::Malformed(format!(
                    "stress `{name}` has {} entries for {ne} edges",
                    values.len()
                )));
            }
            if values.iter().any(|x| !x.is_finite()) {
                return Err(Error::Malformed(format!("stress `{name}` has a non-finite entry")));
            }
        }
        if let Some(dual) = &raw.dual {
            if dual.edge_map.len() != ne || dual.edge_map.iter().any(|&e| e >= ne) {
                return Err(Error::IndexOutOfRange("dual edge map".into()));
            }
        }
        Ok(GraphDocument {
            version: raw.version,
            torus: raw.torus,
            vertices: raw.vertices,
            edges,
            rotation: raw.rotation,
            stresses: raw.stresses,
            dual: raw.dual,
        })
    }

    pub fn from_graph(g: &TorusGraph) -> Self {
        GraphDocument {
            version: FORMAT_VERSION,
            torus: g.torus().rows(),
            vertices: g.coords().iter().map(|c| [c.x, c.y]).collect(),
            edges: (0..g.edge_count())
                .map(|e| {
                    let [tail, head] = g.ends(e);
                    EdgeRecord {
                        tail,
                        head,
                        shift: g.homology(Dart::forward(e)),
                    }
                })
                .collect(),
            rotation: Some(
                g.rotation()
                    .iter()
                    .map(|r| r.iter().map(|d| d.id()).collect())
                    .collect(),
            ),
            stresses: BTreeMap::new(),
            dual: None,
        }
    }

    pub fn from_dual(dual: &DualDrawing) -> Self {
        let mut doc = Self::from_graph(&dual.graph);
        doc.dual = Some(DualRecord {
            mode: dual.mode,
            edge_map: dual.edge_map.clone(),
            source_torus: dual.source_torus.rows(),
        });
        doc
    }

    pub fn with_stress(mut self, name: &str, omega: &StressVector) -> Self {
        self.stresses.insert(name.to_string(), omega.values().to_vec());
        self
    }

    pub fn to_graph(&self) -> Result<TorusGraph> {
        let torus = FlatTorus::from_rows(self.torus)?;
        let coords = self.vertices.iter().map(|p| Vec2::new(p[0], p[1])).collect();
        let ends = self.edges.iter().map(|e| [e.tail, e.head]).collect();
        let shifts = self.edges.iter().map(|e| e.shift).collect();
        let rotation = self
            .rotation
            .as_ref()
            .map(|r| r.iter().map(|l| l.iter().map(|&d| Dart::new(d)).collect()).collect());
        TorusGraph::new(torus, coords, ends, shifts, rotation)
    }

    pub fn stress(&self, name: &str) -> Result<StressVector> {
        let values = self
            .stresses
            .get(name)
            .ok_or_else(|| Error::UnknownStress(name.to_string()))?;
        StressVector::new(values.clone())
    }

    pub fn to_canonical_string(&self) -> String {
        let value = serde_json::to_value(self).expect("documents serialize to JSON");
        let mut out = String::new();
        write_value(&value, 0, &mut out);
        out.push('\n');
        out
    }
}

/// Parses and re-serializes a document in canonical form.
pub fn canonicalize(text: &str) -> Result<String> {
    Ok(GraphDocument::parse(text)?.to_canonical_string())
}

/// 17 significant digits in exponent form; `-0` prints as `0`.
pub fn format_real(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(is_scalar),
        Value::Object(map) => map.values().all(|x| {
            is_scalar(x) || matches!(x, Value::Array(items) if items.iter().all(is_scalar))
        }),
        _ => true,
    }
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&format_real(n.as_f64().unwrap_or(0.0)));
            } else {
                let _ = write!(out, "{n}");
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
            } else if is_flat(v) {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_value(item, indent, out);
                }
                out.push(']');
            } else {
                out.push_str("[\n");
                for (i, item) in items.iter().enumerate() {
                    push_indent(out, indent + 2);
                    write_value(item, indent + 2, out);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                push_indent(out, indent);
                out.push(']');
            }
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
            } else if is_flat(v) && map.len() <= 4 {
                out.push('{');
                for (i, (k, item)) in map.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    let _ = write!(out, "{}: ", Value::String(k.clone()));
                    write_value(item, indent, out);
                }
                out.push('}');
            } else {
                out.push_str("{\n");
                for (i, (k, item)) in map.iter().enumerate() {
                    push_indent(out, indent + 2);
                    let _ = write!(out, "{}: ", Value::String(k.clone()));
                    write_value(item, indent + 2, out);
                    out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
                }
                push_indent(out, indent);
                out.push('}');
            }
        }
        other => {
            let _ = write!(out, "{other}");
        }
    }
}

fn push_indent(out: &mut String, n: usize) {
    out.extend(std::iter::repeat(' ').take(n));
}
