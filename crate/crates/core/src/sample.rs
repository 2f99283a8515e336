//! Seeded random instances: gain graphs, weights, orderings, switchings and
//! Hermitian matrices. Used by the randomized verification commands and tests.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::gain::{GainGraph, SwitchingFunction, UnitGain, VertexOrdering, WeightedGainGraph};
use crate::linalg::{CMatrix, HermitianMatrix};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_gain<R: Rng>(rng: &mut R) -> UnitGain {
    UnitGain::from_angle(rng.gen_range(0.0..TAU))
}

/// Edge pairs of a random spanning tree on `1..=n`.
fn random_tree_edges<R: Rng>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    (1..n)
        .map(|i| {
            let parent = order[rng.gen_range(0..i)];
            (parent.min(order[i]), parent.max(order[i]))
        })
        .collect()
}

/// Random tree plus each remaining pair independently with probability `p`.
fn random_connected_pairs<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<(usize, usize)> {
    let mut pairs = random_tree_edges(rng, n);
    for u in 1..=n {
        for v in u + 1..=n {
            if !pairs.contains(&(u, v)) && rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    pairs.sort_unstable();
    pairs
}

fn with_random_gains<R: Rng>(rng: &mut R, n: usize, pairs: &[(usize, usize)]) -> GainGraph {
    GainGraph::new(n, pairs.iter().map(|&(u, v)| (u, v, random_gain(rng))))
        .expect("simple by construction")
}

/// Connected graph with uniformly random gains.
pub fn random_connected_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> GainGraph {
    let pairs = random_connected_pairs(rng, n, p);
    with_random_gains(rng, n, &pairs)
}

pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> GainGraph {
    let pairs = random_tree_edges(rng, n);
    with_random_gains(rng, n, &pairs)
}

/// Balanced graph: an all-positive connected graph under a random switching.
pub fn random_balanced_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> GainGraph {
    let positive = random_connected_graph(rng, n, p).underlying();
    let xi = random_switching(rng, n);
    positive.switch(&xi).expect("switching length matches")
}

/// Connected graph with random gains and at least one unbalanced cycle; `n ≥ 3`.
pub fn random_unbalanced_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> GainGraph {
    assert!(n >= 3, "an unbalanced graph needs a cycle");
    loop {
        let g = random_connected_graph(rng, n, p);
        if g.edge_count() >= n && !g.is_balanced() {
            return g;
        }
    }
}

/// Cycle `1 - 2 - … - n - 1` with random gains.
pub fn random_cycle<R: Rng>(rng: &mut R, n: usize) -> GainGraph {
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|v| (v, v + 1)).collect();
    pairs.push((1, n));
    with_random_gains(rng, n, &pairs)
}

/// Weights drawn uniformly from `[0.5, 2]`.
pub fn random_weights<R: Rng>(rng: &mut R, m: usize) -> Vec<f64> {
    (0..m).map(|_| rng.gen_range(0.5..=2.0)).collect()
}

pub fn with_random_weights<R: Rng>(rng: &mut R, g: GainGraph) -> WeightedGainGraph {
    let w = random_weights(rng, g.edge_count());
    WeightedGainGraph::new(g, w).expect("weights are positive")
}

pub fn random_switching<R: Rng>(rng: &mut R, n: usize) -> SwitchingFunction {
    SwitchingFunction::new((0..n).map(|_| random_gain(rng)).collect())
}

pub fn random_ordering<R: Rng>(rng: &mut R, n: usize) -> VertexOrdering {
    let mut seq: Vec<usize> = (1..=n).collect();
    seq.shuffle(rng);
    VertexOrdering::from_sequence(&seq).expect("shuffle is a permutation")
}

/// Hermitian matrix with entries uniform in the unit square.
pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> HermitianMatrix {
    let mut m = CMatrix::zeros(n, n);
    for j in 0..n {
        m[(j, j)] = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
        for k in j + 1..n {
            let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            m[(j, k)] = z;
            m[(k, j)] = z.conj();
        }
    }
    HermitianMatrix::new(m).expect("built conjugate symmetric")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_respect_their_contracts() {
        let mut r = rng(1);
        for n in 3..=8 {
            assert!(random_connected_graph(&mut r, n, 0.3).is_connected());
            let t = random_tree(&mut r, n);
            assert!(t.is_connected() && t.edge_count() == n - 1);
            assert!(random_balanced_graph(&mut r, n, 0.5).is_balanced());
            assert!(!random_unbalanced_graph(&mut r, n, 0.5).is_balanced());
            assert_eq!(random_cycle(&mut r, n).edge_count(), n);
        }
    }

    #[test]
    fn seeds_are_reproducible() {
        let a = random_connected_graph(&mut rng(42), 6, 0.5);
        let b = random_connected_graph(&mut rng(42), 6, 0.5);
        assert_eq!(a, b);
    }
}
