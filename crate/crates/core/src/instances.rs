//! Built-in instances: the symmetric K₇ on the square torus and square grids.

use crate::document::GraphDocument;
use crate::error::{Error, Result};
use crate::graph::{shortest_shift, TorusGraph};
use crate::stress::StressVector;
use crate::torus::{FlatTorus, Vec2};

/// Edge classes of the symmetric K₇. Edge `i → i+k` has reference
/// displacement `(1,3)/7`, `(2,−1)/7` or `(3,2)/7` for `k = 1, 2, 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K7Class {
    /// `i → i+1`, displacement `(1,3)/7`.
    Slope3,
    /// `i → i+2`, displacement `(2,−1)/7`.
    SlopeMinusHalf,
    /// `i → i+3`, displacement `(3,2)/7`.
    SlopeTwoThirds,
}

impl K7Class {
    pub const ALL: [K7Class; 3] = [K7Class::Slope3, K7Class::SlopeMinusHalf, K7Class::SlopeTwoThirds];

    pub fn step(self) -> usize {
        match self {
            K7Class::Slope3 => 1,
            K7Class::SlopeMinusHalf => 2,
            K7Class::SlopeTwoThirds => 3,
        }
    }

    /// Edges `7(k−1) .. 7k` belong to the class with step `k`.
    pub fn of_edge(e: usize) -> K7Class {
        K7Class::ALL[e / 7]
    }
}

pub const NAMES: [&str; 4] = ["k7_uniform", "k7_weird", "k7_negative", "grid_<n>"];

/// `v_i = (i/7, 3i/7 mod 1)` with edges `i → i+1`, `i → i+2`, `i → i+3`
/// (indices mod 7) and shortest-representative shifts.
pub fn k7_graph() -> TorusGraph {
    let coords: Vec<Vec2> = (0..7)
        .map(|i| Vec2::new(i as f64 / 7.0, ((3 * i) % 7) as f64 / 7.0))
        .collect();
    let mut ends = Vec::with_capacity(21);
    let mut shifts = Vec::with_capacity(21);
    for class in K7Class::ALL {
        for i in 0..7 {
            let j = (i + class.step()) % 7;
            ends.push([i, j]);
            shifts.push(shortest_shift(&coords[i], &coords[j]));
        }
    }
    TorusGraph::new(FlatTorus::square(), coords, ends, shifts, None)
        .expect("K7 outgoing directions are distinct")
}

/// Class-constant stress on K₇.
pub fn k7_class_stress(weights: &[(K7Class, f64)]) -> StressVector {
    let values = (0..21)
        .map(|e| {
            let c = K7Class::of_edge(e);
            weights
                .iter()
                .find(|(k, _)| *k == c)
                .map(|(_, w)| *w)
                .unwrap_or(1.0)
        })
        .collect();
    StressVector::new(values).expect("class weights are nonzero")
}

pub fn k7_uniform_stress() -> StressVector {
    StressVector::uniform(21, 1.0).expect("nonzero")
}

/// 2 on slope 3, −1 on slope 2/3, 3 on slope −1/2.
pub fn k7_weird_stress() -> StressVector {
    k7_class_stress(&[
        (K7Class::Slope3, 2.0),
        (K7Class::SlopeTwoThirds, -1.0),
        (K7Class::SlopeMinusHalf, 3.0),
    ])
}

/// 1 on slopes 3 and 2/3, −1 on slope −1/2.
pub fn k7_negative_stress() -> StressVector {
    k7_class_stress(&[
        (K7Class::Slope3, 1.0),
        (K7Class::SlopeTwoThirds, 1.0),
        (K7Class::SlopeMinusHalf, -1.0),
    ])
}

/// `n × n` square grid: vertex `j·n + i` at `(i/n, j/n)`; edge `v` steps
/// right by `1/n` and edge `n² + v` steps up by `1/n`.
pub fn grid_graph(n: usize) -> TorusGraph {
    assert!(n >= 1, "grid size must be positive");
    let coords: Vec<Vec2> = (0..n * n)
        .map(|v| Vec2::new((v % n) as f64 / n as f64, (v / n) as f64 / n as f64))
        .collect();
    let mut ends = Vec::with_capacity(2 * n * n);
    let mut shifts = Vec::with_capacity(2 * n * n);
    for v in 0..n * n {
        let (i, j) = (v % n, v / n);
        ends.push([v, j * n + (i + 1) % n]);
        shifts.push([i64::from(i + 1 == n), 0]);
    }
    for v in 0..n * n {
        let (i, j) = (v % n, v / n);
        ends.push([v, ((j + 1) % n) * n + i]);
        shifts.push([0, i64::from(j + 1 == n)]);
    }
    TorusGraph::new(FlatTorus::square(), coords, ends, shifts, None)
        .expect("grid outgoing directions are distinct")
}

fn k7_document() -> GraphDocument {
    GraphDocument::from_graph(&k7_graph())
        .with_stress("uniform", &k7_uniform_stress())
        .with_stress("weird", &k7_weird_stress())
        .with_stress("negative", &k7_negative_stress())
}

/// Looks up a built-in instance by name: `k7_uniform`, `k7_weird`,
/// `k7_negative` or `grid_<n>` for `n ≥ 1`. Every K₇ document carries all
/// three named stresses.
pub fn builtin_instance(name: &str) -> Result<GraphDocument> {
    match name {
        "k7_uniform" | "k7_weird" | "k7_negative" => Ok(k7_document()),
        _ => {
            let n = name
                .strip_prefix("grid_")
                .and_then(|s| s.parse::<usize>().ok())
                .filter(|&n| (1..=64).contains(&n))
                .ok_or_else(|| Error::UnknownInstance(name.to_string()))?;
            let g = grid_graph(n);
            let uniform = StressVector::uniform(g.edge_count(), 1.0)?;
            Ok(GraphDocument::from_graph(&g).with_stress("uniform", &uniform))
        }
    }
}

/// The stress a built-in instance is named after.
pub fn default_stress_name(name: &str) -> &'static str {
    match name {
        "k7_weird" => "weird",
        "k7_negative" => "negative",
        _ => "uniform",
    }
}
