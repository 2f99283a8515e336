//! Spanning 1-forests: enumeration, cycle extraction and the determinant
//! expansion of a weighted gain Laplacian as a sum over them.

use itertools::Itertools;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gain::WeightedGainGraph;
use crate::laplacian::weighted_laplacian;
use crate::linalg::{det_lu, CMatrix};

pub const DEFAULT_MAX_VERTICES: usize = 10;
pub const DEFAULT_SUBSET_BUDGET: u128 = 10_000_000;

/// Hard limits on exhaustive subset enumeration. Exceeding either is an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_vertices: usize,
    pub subset_budget: u128,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_vertices: DEFAULT_MAX_VERTICES,
            subset_budget: DEFAULT_SUBSET_BUDGET,
        }
    }
}

/// One connected unicyclic component of a 1-forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneTree {
    pub vertices: Vec<usize>,
    /// Cycle vertex sequence, starting at its smallest vertex.
    pub cycle: Vec<usize>,
}

/// A spanning 1-forest, as edge indices into the host graph plus its components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForest {
    pub edges: Vec<usize>,
    pub components: Vec<OneTree>,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Vertex lists of the components of an `n`-edge subset, provided every
/// component has as many edges as vertices.
fn unicyclic_components(wg: &WeightedGainGraph, edges: &[usize]) -> Option<Vec<Vec<usize>>> {
    let n = wg.vertex_count();
    if edges.len() != n {
        return None;
    }
    let all = wg.graph().edges();
    let mut dsu = Dsu::new(n);
    for &i in edges {
        let e = all.get(i)?;
        dsu.union(e.u - 1, e.v - 1);
    }
    let mut vcount = vec![0usize; n];
    let mut ecount = vec![0usize; n];
    for v in 0..n {
        vcount[dsu.find(v)] += 1;
    }
    for &i in edges {
        ecount[dsu.find(all[i].u - 1)] += 1;
    }
    if (0..n).any(|r| vcount[r] > 0 && vcount[r] != ecount[r]) {
        return None;
    }
    let mut comps: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        comps[dsu.find(v)].push(v + 1);
    }
    Some(comps.into_iter().filter(|c| !c.is_empty()).collect())
}

/// True iff `edges` has exactly `n` edges and every component is a 1-tree.
pub fn is_spanning_one_forest(wg: &WeightedGainGraph, edges: &[usize]) -> bool {
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == edges.len() && unicyclic_components(wg, edges).is_some()
}

/// Peels degree-one vertices; what remains of a 1-tree is its cycle, returned
/// as a vertex sequence from the smallest cycle vertex towards its smaller neighbour.
fn extract_cycle(wg: &WeightedGainGraph, edges: &[usize], component: &[usize]) -> Vec<usize> {
    let all = wg.graph().edges();
    let n = wg.vertex_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for &i in edges {
        let e = all[i];
        if component.contains(&e.u) {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n + 1];
    let mut leaves: Vec<usize> = component
        .iter()
        .copied()
        .filter(|&v| degree[v] == 1)
        .collect();
    while let Some(v) = leaves.pop() {
        removed[v] = true;
        for &y in &adj[v] {
            if !removed[y] {
                degree[y] -= 1;
                if degree[y] == 1 {
                    leaves.push(y);
                }
            }
        }
    }
    let on_cycle = |v: usize| !removed[v];
    let start = *component
        .iter()
        .find(|&&v| on_cycle(v))
        .expect("1-tree has a cycle");
    let mut cycle = vec![start];
    let mut prev = start;
    let mut cur = adj[start]
        .iter()
        .copied()
        .filter(|&y| on_cycle(y))
        .min()
        .expect("cycle vertex has two cycle neighbours");
    while cur != start {
        cycle.push(cur);
        let next = adj[cur]
            .iter()
            .copied()
            .find(|&y| on_cycle(y) && y != prev)
            .expect("cycle continues");
        prev = cur;
        cur = next;
    }
    cycle
}

fn build_forest(wg: &WeightedGainGraph, edges: Vec<usize>) -> Option<OneForest> {
    let comps = unicyclic_components(wg, &edges)?;
    let components = comps
        .into_iter()
        .map(|vertices| {
            let cycle = extract_cycle(wg, &edges, &vertices);
            OneTree { vertices, cycle }
        })
        .collect();
    Some(OneForest { edges, components })
}

/// Decomposes an edge subset into a spanning 1-forest, if it is one.
pub fn as_one_forest(wg: &WeightedGainGraph, edges: &[usize]) -> Option<OneForest> {
    if !is_spanning_one_forest(wg, edges) {
        return None;
    }
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    build_forest(wg, sorted)
}

fn check_limits(wg: &WeightedGainGraph, limits: &EnumerationLimits) -> Result<()> {
    let n = wg.vertex_count();
    let m = wg.graph().edge_count();
    if n > limits.max_vertices {
        return Err(Error::TooLarge {
            reason: format!("{n} vertices exceeds the limit of {}", limits.max_vertices),
        });
    }
    let subsets = binomial(m, n);
    if subsets > limits.subset_budget {
        return Err(Error::TooLarge {
            reason: format!(
                "C({m}, {n}) = {subsets} subsets exceeds the budget of {}",
                limits.subset_budget
            ),
        });
    }
    Ok(())
}

/// Lazily yields every spanning 1-forest in lexicographic order of edge indices.
pub fn enumerate_spanning_one_forests<'a>(
    wg: &'a WeightedGainGraph,
    limits: &EnumerationLimits,
) -> Result<impl Iterator<Item = OneForest> + 'a> {
    check_limits(wg, limits)?;
    let n = wg.vertex_count();
    Ok((0..wg.graph().edge_count())
        .combinations(n)
        .filter_map(move |subset| build_forest(wg, subset)))
}

/// `Π w(e) · Π_components 2(1 - Re φ(C))`.
pub fn forest_weight(forest: &OneForest, wg: &WeightedGainGraph) -> f64 {
    let weights: f64 = forest.edges.iter().map(|&i| wg.weights()[i]).product();
    let cycles: f64 = forest
        .components
        .iter()
        .map(|t| {
            let gain = wg
                .graph()
                .cycle_gain(&t.cycle)
                .expect("extracted cycle is a cycle of the host");
            2.0 * (1.0 - gain.re())
        })
        .product();
    weights * cycles
}

/// Laplacian determinant as a sum of forest weights over all spanning 1-forests.
pub fn det_via_forests(wg: &WeightedGainGraph, limits: &EnumerationLimits) -> Result<f64> {
    Ok(enumerate_spanning_one_forests(wg, limits)?
        .map(|f| forest_weight(&f, wg))
        .sum())
}

/// Closed form for a graph that is itself a 1-forest (including a single cycle
/// or 1-tree); `None` otherwise.
pub fn one_forest_closed_form(wg: &WeightedGainGraph) -> Option<f64> {
    let all: Vec<usize> = (0..wg.graph().edge_count()).collect();
    as_one_forest(wg, &all).map(|f| forest_weight(&f, wg))
}

pub fn det_direct(m: &CMatrix) -> Complex64 {
    det_lu(m)
}

/// Laplacian determinant via LU; real part only.
pub fn laplacian_det(wg: &WeightedGainGraph) -> f64 {
    det_lu(weighted_laplacian(wg).matrix()).re
}
