//! Complex unit gain graphs: the circle-group gains, the graph itself, its
//! weighted variant, vertex orderings, and switching.
//!
//! Vertices are identified by `1..=n` throughout the public API. Each
//! undirected edge stores a single gain for its `u < v` orientation; the
//! opposite orientation is always read back as the conjugate.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance on `|gain - 1|` used by every balance decision.
pub const BALANCE_TOL: f64 = 1e-9;

/// Maximum deviation of `|z|` from 1 accepted by [`normalize_gain`] in strict mode.
pub const STRICT_MODULUS_TOL: f64 = 1e-6;

/// An element of the circle group: a complex number of modulus one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitGain(Complex64);

impl UnitGain {
    pub const ONE: UnitGain = UnitGain(Complex64 { re: 1.0, im: 0.0 });

    /// `e^{iθ}`.
    pub fn from_angle(theta: f64) -> Self {
        UnitGain(Complex64::from_polar(1.0, theta))
    }

    /// Normalizes `z` onto the unit circle without a modulus check.
    pub fn new(z: Complex64) -> Result<Self> {
        normalize_gain(z, false)
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn re(self) -> f64 {
        self.0.re
    }

    pub fn im(self) -> f64 {
        self.0.im
    }

    pub fn arg(self) -> f64 {
        self.0.arg()
    }

    /// Group inverse, which for unit gains is the conjugate.
    pub fn inv(self) -> Self {
        UnitGain(self.0.conj())
    }

    pub fn is_one(self, tol: f64) -> bool {
        (self.0 - Complex64::new(1.0, 0.0)).norm() <= tol
    }
}

impl Default for UnitGain {
    fn default() -> Self {
        UnitGain::ONE
    }
}

impl Mul for UnitGain {
    type Output = UnitGain;

    fn mul(self, rhs: UnitGain) -> UnitGain {
        UnitGain(self.0 * rhs.0)
    }
}

impl fmt::Display for UnitGain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Projects `z` onto the unit circle.
///
/// With `strict` set, inputs whose modulus is further than
/// [`STRICT_MODULUS_TOL`] from one are rejected instead of rescaled.
pub fn normalize_gain(z: Complex64, strict: bool) -> Result<UnitGain> {
    let modulus = z.norm();
    if modulus == 0.0 || !modulus.is_finite() {
        return Err(Error::ZeroGain);
    }
    if strict && (modulus - 1.0).abs() > STRICT_MODULUS_TOL {
        return Err(Error::NonUnitGain { modulus });
    }
    if modulus == 1.0 {
        return Ok(UnitGain(z));
    }
    Ok(UnitGain(z / modulus))
}

/// An undirected edge together with the gain of its `u -> v` orientation (`u < v`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GainEdge {
    pub u: usize,
    pub v: usize,
    pub gain: UnitGain,
}

impl GainEdge {
    /// Gain of the orientation starting at `from`.
    pub fn gain_from(&self, from: usize) -> UnitGain {
        if from == self.u {
            self.gain
        } else {
            self.gain.inv()
        }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// A simple graph on vertices `1..=n` with a unit gain on every oriented edge.
#[derive(Clone, Debug, PartialEq)]
pub struct GainGraph {
    n: usize,
    edges: Vec<GainEdge>,
    index: BTreeMap<(usize, usize), usize>,
    // adjacency[v - 1] = (neighbour, edge index), neighbours ascending
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl GainGraph {
    /// Builds a graph from `(u, v, gain of u -> v)` triples.
    ///
    /// Triples with `u > v` are stored flipped with the conjugate gain.
    /// Loops and repeated vertex pairs are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, UnitGain)>,
    {
        let mut stored = Vec::new();
        let mut index = BTreeMap::new();
        let mut adjacency = vec![Vec::new(); n];
        for (a, b, gain) in edges {
            for x in [a, b] {
                if x == 0 || x > n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if a == b {
                return Err(Error::SelfLoop { vertex: a });
            }
            let (u, v, gain) = if a < b {
                (a, b, gain)
            } else {
                (b, a, gain.inv())
            };
            if index.insert((u, v), stored.len()).is_some() {
                return Err(Error::DuplicateEdge { u, v });
            }
            adjacency[u - 1].push((v, stored.len()));
            adjacency[v - 1].push((u, stored.len()));
            stored.push(GainEdge { u, v, gain });
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(GainGraph {
            n,
            edges: stored,
            index,
            adjacency,
        })
    }

    /// The same underlying graph with every gain equal to one.
    pub fn underlying(&self) -> GainGraph {
        self.with_gains(|_| UnitGain::ONE)
    }

    fn with_gains(&self, mut f: impl FnMut(&GainEdge) -> UnitGain) -> GainGraph {
        let mut out = self.clone();
        for e in &mut out.edges {
            e.gain = f(e);
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[GainEdge] {
        &self.edges
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        let key = if a < b { (a, b) } else { (b, a) };
        self.index.get(&key).copied()
    }

    /// Neighbours of `v` (ascending) paired with the connecting edge index.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v - 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v - 1].len()
    }

    /// Gain of the oriented edge `from -> to`, if the vertices are adjacent.
    pub fn gain(&self, from: usize, to: usize) -> Option<UnitGain> {
        self.edge_index(from, to)
            .map(|i| self.edges[i].gain_from(from))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components as ascending vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 1..=self.n {
            if seen[start - 1] {
                continue;
            }
            seen[start - 1] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in self.neighbors(x) {
                    if !seen[y - 1] {
                        seen[y - 1] = true;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Product of the oriented edge gains along `walk`.
    pub fn path_gain(&self, walk: &[usize]) -> Result<UnitGain> {
        let first = *walk.first().ok_or(Error::EmptyWalk)?;
        self.check_vertex(first)?;
        let mut acc = UnitGain::ONE;
        for pair in walk.windows(2) {
            self.check_vertex(pair[1])?;
            let g = self.gain(pair[0], pair[1]).ok_or(Error::NotAWalk {
                from: pair[0],
                to: pair[1],
            })?;
            acc = acc * g;
        }
        Ok(acc)
    }

    /// Gain of a cycle given as its vertex sequence, either open
    /// (`[a, b, c]`) or explicitly closed (`[a, b, c, a]`).
    pub fn cycle_gain(&self, cycle: &[usize]) -> Result<UnitGain> {
        let body = match cycle {
            [first, .., last] if first == last => &cycle[..cycle.len() - 1],
            _ => cycle,
        };
        if body.len() < 3 {
            return Err(Error::NotACycle(format!(
                "needs at least 3 distinct vertices, got {}",
                body.len()
            )));
        }
        let mut sorted = body.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != body.len() {
            return Err(Error::NotACycle("repeated vertex".into()));
        }
        let mut closed = body.to_vec();
        closed.push(body[0]);
        self.path_gain(&closed).map_err(|e| match e {
            Error::NotAWalk { from, to } => {
                Error::NotACycle(format!("{from} and {to} are not adjacent"))
            }
            other => other,
        })
    }

    /// Finds a potential `θ` with `gain(u -> v) = θ(u)⁻¹ θ(v)` on every edge,
    /// or `None` when some cycle is unbalanced.
    pub fn balancing_potential(&self) -> Option<SwitchingFunction> {
        let mut theta: Vec<Option<UnitGain>> = vec![None; self.n];
        for start in 1..=self.n {
            if theta[start - 1].is_some() {
                continue;
            }
            theta[start - 1] = Some(UnitGain::ONE);
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                let tx = theta[x - 1].expect("visited vertex has a potential");
                for &(y, e) in self.neighbors(x) {
                    let g = self.edges[e].gain_from(x);
                    let predicted = tx * g;
                    match theta[y - 1] {
                        None => {
                            theta[y - 1] = Some(predicted);
                            queue.push_back(y);
                        }
                        Some(ty) => {
                            if (ty.value() - predicted.value()).norm() > BALANCE_TOL {
                                return None;
                            }
                        }
                    }
                }
            }
        }
        Some(SwitchingFunction(
            theta.into_iter().map(|t| t.unwrap_or_default()).collect(),
        ))
    }

    /// True iff every cycle has gain one (within [`BALANCE_TOL`]).
    pub fn is_balanced(&self) -> bool {
        self.balancing_potential().is_some()
    }

    /// Applies `φ^ξ(u -> v) = ξ(u)⁻¹ φ(u -> v) ξ(v)`.
    pub fn switch(&self, xi: &SwitchingFunction) -> Result<GainGraph> {
        if xi.len() != self.n {
            return Err(Error::SwitchingLength {
                expected: self.n,
                found: xi.len(),
            });
        }
        Ok(self.with_gains(|e| xi.at(e.u).inv() * e.gain * xi.at(e.v)))
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v == 0 || v > self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }
}

/// A gain graph with a strictly positive weight on each undirected edge.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedGainGraph {
    base: GainGraph,
    weights: Vec<f64>,
}

impl WeightedGainGraph {
    /// `weights` is aligned with `base.edges()`.
    pub fn new(base: GainGraph, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != base.edge_count() {
            return Err(Error::WeightCount {
                expected: base.edge_count(),
                found: weights.len(),
            });
        }
        for (e, &w) in base.edges().iter().zip(&weights) {
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidWeight {
                    u: e.u,
                    v: e.v,
                    weight: w,
                });
            }
        }
        Ok(WeightedGainGraph { base, weights })
    }

    pub fn unit(base: GainGraph) -> Self {
        let weights = vec![1.0; base.edge_count()];
        WeightedGainGraph { base, weights }
    }

    pub fn graph(&self) -> &GainGraph {
        &self.base
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn vertex_count(&self) -> usize {
        self.base.vertex_count()
    }

    pub fn weight(&self, a: usize, b: usize) -> Option<f64> {
        self.base.edge_index(a, b).map(|i| self.weights[i])
    }

    /// `gain(from -> to) · w({from, to})`.
    pub fn weighted_gain(&self, from: usize, to: usize) -> Option<Complex64> {
        let i = self.base.edge_index(from, to)?;
        Some(self.base.edges()[i].gain_from(from).value() * self.weights[i])
    }

    /// Sub-graph on the same vertex set keeping only the listed edge indices.
    pub fn edge_subgraph(&self, edges: &[usize]) -> Result<WeightedGainGraph> {
        let all = self.base.edges();
        let mut triples = Vec::with_capacity(edges.len());
        let mut weights = Vec::with_capacity(edges.len());
        for &i in edges {
            let e = all.get(i).ok_or(Error::UnknownEdge { index: i })?;
            triples.push((e.u, e.v, e.gain));
            weights.push(self.weights[i]);
        }
        let base = GainGraph::new(self.base.vertex_count(), triples)?;
        WeightedGainGraph::new(base, weights)
    }
}

/// A total order on `1..=n`, stored as the rank of each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexOrdering {
    rank: Vec<usize>,
}

impl VertexOrdering {
    /// The standard ordering `1 < 2 < … < n`.
    pub fn standard(n: usize) -> Self {
        VertexOrdering {
            rank: (1..=n).collect(),
        }
    }

    /// `ranks[v - 1]` is the position of vertex `v`; must be a permutation of `1..=n`.
    pub fn from_ranks(ranks: Vec<usize>) -> Result<Self> {
        let n = ranks.len();
        let mut seen = vec![false; n];
        for &r in &ranks {
            if r == 0 || r > n {
                return Err(Error::InvalidOrdering(format!("rank {r} outside 1..={n}")));
            }
            if std::mem::replace(&mut seen[r - 1], true) {
                return Err(Error::InvalidOrdering(format!("rank {r} repeated")));
            }
        }
        Ok(VertexOrdering { rank: ranks })
    }

    /// Builds the ordering in which `sequence[0]` is smallest.
    pub fn from_sequence(sequence: &[usize]) -> Result<Self> {
        let n = sequence.len();
        let mut ranks = vec![0; n];
        for (pos, &v) in sequence.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::InvalidOrdering(format!(
                    "vertex {v} outside 1..={n}"
                )));
            }
            if ranks[v - 1] != 0 {
                return Err(Error::InvalidOrdering(format!("vertex {v} repeated")));
            }
            ranks[v - 1] = pos + 1;
        }
        Ok(VertexOrdering { rank: ranks })
    }

    pub fn len(&self) -> usize {
        self.rank.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v - 1]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Strict comparison `a < b` under this ordering.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.rank[a - 1] < self.rank[b - 1]
    }

    /// The ordering with every comparison flipped.
    pub fn reverse(&self) -> Self {
        let n = self.rank.len();
        VertexOrdering {
            rank: self.rank.iter().map(|r| n + 1 - r).collect(),
        }
    }

    /// Vertices listed from smallest to largest.
    pub fn sequence(&self) -> Vec<usize> {
        let mut seq = vec![0; self.rank.len()];
        for (i, &r) in self.rank.iter().enumerate() {
            seq[r - 1] = i + 1;
        }
        seq
    }
}

/// A vertex-indexed family of unit gains `ξ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SwitchingFunction(Vec<UnitGain>);

impl SwitchingFunction {
    pub fn new(values: Vec<UnitGain>) -> Self {
        SwitchingFunction(values)
    }

    pub fn identity(n: usize) -> Self {
        SwitchingFunction(vec![UnitGain::ONE; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `ξ(v)` for a 1-based vertex.
    pub fn at(&self, v: usize) -> UnitGain {
        self.0[v - 1]
    }

    pub fn values(&self) -> &[UnitGain] {
        &self.0
    }
}
