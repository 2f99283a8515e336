//! The five-vertex reference graph used across tests and documentation.

use std::f64::consts::FRAC_PI_4;

use crate::gain::{GainGraph, UnitGain};

/// Five vertices, edges `1-2`, `2-3`, `3-4`, `1-4`, `1-5`, with
/// `φ(1→2) = φ(1→4) = 1` and `φ(2→3) = φ(3→4) = φ(1→5) = e^{iπ/4}`.
///
/// Its cycle `1-2-3-4-1` has gain `i`, so it is unbalanced, and the two
/// geodesics between 1 and 3 carry the distinct gains `e^{±iπ/4}`.
pub fn example_graph() -> GainGraph {
    let q = UnitGain::from_angle(FRAC_PI_4);
    GainGraph::new(
        5,
        [
            (1, 2, UnitGain::ONE),
            (2, 3, q),
            (3, 4, q),
            (1, 4, UnitGain::ONE),
            (1, 5, q),
        ],
    )
    .expect("reference graph is simple")
}
