//! Reference data shared by the acceptance suite: the five-vertex example
//! graph with its printed matrices, and the fixed-seed balance corpus.

use std::f64::consts::FRAC_PI_4;
use std::path::PathBuf;

use gainlap::prelude::*;
use gainlap::sample;
use num_complex::Complex64;

/// Entry `k · e^{i s π/4}` written as `(k, s)`.
pub type Cell = (f64, i32);

pub fn build(cells: [[Cell; 5]; 5]) -> CMatrix {
    CMatrix::from_fn(5, 5, |r, c| {
        let (k, s) = cells[r][c];
        Complex64::from_polar(k, s as f64 * FRAC_PI_4)
    })
}

pub fn golden_d_max() -> CMatrix {
    build([
        [(0., 0), (1., 0), (2., 1), (1., 0), (1., 1)],
        [(1., 0), (0., 0), (1., 1), (2., 0), (2., 1)],
        [(2., -1), (1., -1), (0., 0), (1., 1), (3., 0)],
        [(1., 0), (2., 0), (1., -1), (0., 0), (2., 1)],
        [(1., -1), (2., -1), (3., 0), (2., -1), (0., 0)],
    ])
}

pub fn golden_d_max_reverse() -> CMatrix {
    build([
        [(0., 0), (1., 0), (2., -1), (1., 0), (1., 1)],
        [(1., 0), (0., 0), (1., 1), (2., 0), (2., 1)],
        [(2., 1), (1., -1), (0., 0), (1., 1), (3., 0)],
        [(1., 0), (2., 0), (1., -1), (0., 0), (2., 1)],
        [(1., -1), (2., -1), (3., 0), (2., -1), (0., 0)],
    ])
}

pub fn golden_dl_max() -> CMatrix {
    build([
        [(5., 0), (-1., 0), (-2., 1), (-1., 0), (-1., 1)],
        [(-1., 0), (6., 0), (-1., 1), (-2., 0), (-2., 1)],
        [(-2., -1), (-1., -1), (7., 0), (-1., 1), (-3., 0)],
        [(-1., 0), (-2., 0), (-1., -1), (6., 0), (-2., 1)],
        [(-1., -1), (-2., -1), (-3., 0), (-2., -1), (8., 0)],
    ])
}

pub fn golden_dl_max_reverse() -> CMatrix {
    build([
        [(5., 0), (-1., 0), (-2., -1), (-1., 0), (-1., 1)],
        [(-1., 0), (6., 0), (-1., 1), (-2., 0), (-2., 1)],
        [(-2., 1), (-1., -1), (7., 0), (-1., 1), (-3., 0)],
        [(-1., 0), (-2., 0), (-1., -1), (6., 0), (-2., 1)],
        [(-1., -1), (-2., -1), (-3., 0), (-2., -1), (8., 0)],
    ])
}

pub fn example_file() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/gfig.json")
}

pub fn example_graph() -> GainGraph {
    let bytes = std::fs::read(example_file()).unwrap();
    gainlap_cli::document::parse_graph(&bytes).unwrap().graph()
}

/// Every simple cycle once, as a vertex list starting at its smallest vertex.
pub fn simple_cycles(g: &GainGraph) -> Vec<Vec<usize>> {
    fn extend(g: &GainGraph, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let start = path[0];
        let last = *path.last().unwrap();
        for &(y, _) in g.neighbors(last) {
            if y == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if y > start && !path.contains(&y) {
                path.push(y);
                extend(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 1..=g.vertex_count() {
        extend(g, &mut vec![s], &mut out);
    }
    out
}

/// Half balanced (switched all-positive), half with an unbalanced cycle; `3 ≤ n ≤ 7`.
pub fn balance_corpus() -> Vec<(GainGraph, VertexOrdering, bool)> {
    let mut rng = sample::rng(0xBA1A);
    (0..200)
        .map(|i| {
            let n = 3 + i % 5;
            let balanced = i % 2 == 0;
            let g = if balanced {
                sample::random_balanced_graph(&mut rng, n, 0.5)
            } else {
                sample::random_unbalanced_graph(&mut rng, n, 0.5)
            };
            let ord = sample::random_ordering(&mut rng, n);
            (g, ord, balanced)
        })
        .collect()
}
