//! Inputs shared by the benchmarks.

use torus_mc::instances::{grid_graph, k7_graph, k7_uniform_stress, k7_weird_stress};
use torus_mc::{StressVector, TorusGraph};

/// K₇ with the uniform stress and with the (2, −1, 3) class stress.
pub fn k7_fixtures() -> [(TorusGraph, StressVector); 2] {
    [(k7_graph(), k7_uniform_stress()), (k7_graph(), k7_weird_stress())]
}

/// `n × n` grid with the uniform stress.
pub fn grid_fixture(n: usize) -> (TorusGraph, StressVector) {
    let g = grid_graph(n);
    let omega = StressVector::uniform(g.edge_count(), 1.0).expect("nonzero");
    (g, omega)
}
