//! Hop distances, geodesic enumeration and the gain distance matrices built
//! from lexicographically extremal geodesic gains.

use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gain::{GainGraph, UnitGain, VertexOrdering, WeightedGainGraph};
use crate::linalg::{CMatrix, HermitianMatrix};

/// Default cap on the number of geodesics enumerated per vertex pair.
pub const DEFAULT_PATH_CAP: usize = 1_000_000;

/// Two reals closer than this compare equal in the lexicographic order.
pub const LEX_TIE_BAND: f64 = 1e-12;

/// Entrywise tolerance for matrix equality predicates.
pub const MATRIX_EQ_TOL: f64 = 1e-9;

/// Which lexicographic extreme an auxiliary gain selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Max,
    Min,
}

impl Mode {
    pub const BOTH: [Mode; 2] = [Mode::Max, Mode::Min];
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Max => "max",
            Mode::Min => "min",
        })
    }
}

/// Lexicographic order on complex numbers: real part first, then imaginary,
/// with differences below [`LEX_TIE_BAND`] treated as ties.
pub fn lex_cmp(a: Complex64, b: Complex64) -> Ordering {
    fn banded(x: f64, y: f64) -> Ordering {
        if (x - y).abs() <= LEX_TIE_BAND {
            Ordering::Equal
        } else {
            x.total_cmp(&y)
        }
    }
    banded(a.re, b.re).then_with(|| banded(a.im, b.im))
}

/// Lexicographic extreme of `gains` under `mode`; `None` if empty.
pub fn select_extreme(gains: &[Complex64], mode: Mode) -> Option<Complex64> {
    let it = gains.iter().copied();
    match mode {
        Mode::Max => it.max_by(|a, b| lex_cmp(*a, *b)),
        Mode::Min => it.min_by(|a, b| lex_cmp(*a, *b)),
    }
}

/// All-pairs hop distances of a connected graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTable {
    n: usize,
    d: Vec<usize>,
}

impl DistanceTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> usize {
        self.d[(u - 1) * self.n + (v - 1)]
    }

    /// Transmission of `v`: sum of its distances to every vertex.
    pub fn transmission(&self, v: usize) -> usize {
        self.d[(v - 1) * self.n..v * self.n].iter().sum()
    }

    pub fn diameter(&self) -> usize {
        self.d.iter().copied().max().unwrap_or(0)
    }
}

fn bfs(g: &GainGraph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[source - 1] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[x - 1].expect("queued vertices are reached");
        for &(y, _) in g.neighbors(x) {
            if dist[y - 1].is_none() {
                dist[y - 1] = Some(dx + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

fn bfs_connected(g: &GainGraph, source: usize) -> Result<Vec<usize>> {
    bfs(g, source)
        .into_iter()
        .enumerate()
        .map(|(i, d)| {
            d.ok_or(Error::Disconnected {
                u: source,
                v: i + 1,
            })
        })
        .collect()
}

fn check_vertex(g: &GainGraph, v: usize) -> Result<()> {
    if v == 0 || v > g.vertex_count() {
        Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.vertex_count(),
        })
    } else {
        Ok(())
    }
}

/// Hop distances by breadth-first search from every vertex.
pub fn shortest_distances(g: &GainGraph) -> Result<DistanceTable> {
    let n = g.vertex_count();
    let mut d = Vec::with_capacity(n * n);
    for s in 1..=n {
        d.extend(bfs_connected(g, s)?);
    }
    Ok(DistanceTable { n, d })
}

/// Depth-first walk over the geodesic DAG from `from` to `to`.
///
/// `to_target[x - 1]` is the hop distance from `x` to `to`; a step `a -> b`
/// is on some geodesic iff `to_target[b] + 1 == to_target[a]`.
fn walk_geodesics(
    g: &GainGraph,
    from: usize,
    to: usize,
    to_target: &[usize],
    cap: usize,
    mut visit: impl FnMut(&[usize], UnitGain),
) -> Result<usize> {
    let mut count = 0usize;
    let mut path = vec![from];
    // explicit stack of (vertex, next neighbour slot, gain so far)
    let mut stack: Vec<(usize, usize, UnitGain)> = vec![(from, 0, UnitGain::ONE)];
    while let Some(top) = stack.last_mut() {
        let (x, slot, acc) = *top;
        if x == to {
            count += 1;
            if count > cap {
                return Err(Error::PathExplosion {
                    u: from,
                    v: to,
                    cap,
                });
            }
            visit(&path, acc);
            stack.pop();
            path.pop();
            continue;
        }
        let nbrs = g.neighbors(x);
        let next = nbrs[slot..]
            .iter()
            .position(|&(y, _)| to_target[y - 1] + 1 == to_target[x - 1]);
        match next {
            Some(offset) => {
                top.1 = slot + offset + 1;
                let (y, e) = nbrs[slot + offset];
                let step = g.edges()[e].gain_from(x);
                stack.push((y, 0, acc * step));
                path.push(y);
            }
            None => {
                stack.pop();
                path.pop();
            }
        }
    }
    Ok(count)
}

/// Every shortest `u -> v` path as a vertex sequence, at most `cap` of them.
pub fn enumerate_shortest_paths(
    g: &GainGraph,
    u: usize,
    v: usize,
    cap: usize,
) -> Result<Vec<Vec<usize>>> {
    check_vertex(g, u)?;
    check_vertex(g, v)?;
    let to_target = bfs_connected(g, v)?;
    let mut paths = Vec::new();
    walk_geodesics(g, u, v, &to_target, cap.max(1), |p, _| {
        paths.push(p.to_vec())
    })?;
    Ok(paths)
}

/// Gains of all `from -> to` geodesics (with multiplicity).
fn geodesic_gains(
    g: &GainGraph,
    from: usize,
    to: usize,
    to_target: &[usize],
    cap: usize,
) -> Result<Vec<Complex64>> {
    let mut gains = Vec::new();
    walk_geodesics(g, from, to, to_target, cap, |_, acc| {
        gains.push(acc.value())
    })?;
    Ok(gains)
}

/// Hop distances plus the multiset of geodesic gains for every vertex pair.
///
/// Everything the gain distance matrices need, for any ordering and mode,
/// is derived from this table without re-enumerating paths.
#[derive(Clone, Debug)]
pub struct GeodesicTable {
    distances: DistanceTable,
    // pair (a, b) with a < b, oriented a -> b, stored at index of (a, b) in row-major upper triangle
    gains: Vec<Vec<Complex64>>,
}

impl GeodesicTable {
    pub fn new(g: &GainGraph) -> Result<Self> {
        Self::with_cap(g, DEFAULT_PATH_CAP)
    }

    pub fn with_cap(g: &GainGraph, cap: usize) -> Result<Self> {
        let distances = shortest_distances(g)?;
        let n = g.vertex_count();
        let mut gains = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for b in 1..=n {
            let to_target: Vec<usize> = (1..=n).map(|x| distances.get(x, b)).collect();
            for a in 1..b {
                gains.push(geodesic_gains(g, a, b, &to_target, cap.max(1))?);
            }
        }
        Ok(GeodesicTable { distances, gains })
    }

    pub fn distances(&self) -> &DistanceTable {
        &self.distances
    }

    pub fn n(&self) -> usize {
        self.distances.n()
    }

    /// Geodesic gains oriented `from -> to`.
    pub fn gains(&self, from: usize, to: usize) -> Vec<Complex64> {
        if from == to {
            return vec![Complex64::new(1.0, 0.0)];
        }
        let (a, b) = if from < to { (from, to) } else { (to, from) };
        let stored = &self.gains[(b - 1) * (b - 2) / 2 + (a - 1)];
        if from < to {
            stored.clone()
        } else {
            stored.iter().map(|z| z.conj()).collect()
        }
    }

    /// The auxiliary gain of `(u, v)`; zero on the diagonal.
    pub fn auxiliary_gain(
        &self,
        ord: &VertexOrdering,
        mode: Mode,
        u: usize,
        v: usize,
    ) -> Complex64 {
        if u == v {
            return Complex64::new(0.0, 0.0);
        }
        if ord.precedes(u, v) {
            select_extreme(&self.gains(u, v), mode).expect("connected pair has a geodesic")
        } else {
            self.auxiliary_gain(ord, mode, v, u).conj()
        }
    }

    pub fn gain_distance_matrix(&self, ord: &VertexOrdering, mode: Mode) -> GainDistanceMatrix {
        let n = self.n();
        let m = CMatrix::from_fn(n, n, |r, c| {
            self.auxiliary_gain(ord, mode, r + 1, c + 1) * self.distances.get(r + 1, c + 1) as f64
        });
        GainDistanceMatrix {
            matrix: HermitianMatrix::new(m).expect("auxiliary gains are conjugate symmetric"),
            mode,
            ordering: ord.clone(),
        }
    }

    /// True iff every pair's geodesics share a single gain (within [`MATRIX_EQ_TOL`]).
    pub fn all_geodesic_gains_agree(&self) -> bool {
        self.gains
            .iter()
            .all(|gs| gs.iter().all(|z| (z - gs[0]).norm() <= MATRIX_EQ_TOL))
    }

    pub fn associated_complete_graph(&self, ord: &VertexOrdering, mode: Mode) -> WeightedGainGraph {
        let n = self.n();
        let mut edges = Vec::new();
        let mut weights = Vec::new();
        for u in 1..=n {
            for v in u + 1..=n {
                let z = self.auxiliary_gain(ord, mode, u, v);
                edges.push((
                    u,
                    v,
                    UnitGain::new(z).expect("auxiliary gain of a connected pair is nonzero"),
                ));
                weights.push(self.distances.get(u, v) as f64);
            }
        }
        let base = GainGraph::new(n, edges).expect("complete graph is simple");
        WeightedGainGraph::new(base, weights)
            .expect("distances between distinct vertices are positive")
    }
}

/// A gain distance matrix together with the mode and ordering that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct GainDistanceMatrix {
    pub matrix: HermitianMatrix,
    pub mode: Mode,
    pub ordering: VertexOrdering,
}

impl GainDistanceMatrix {
    pub fn approx_eq(&self, other: &GainDistanceMatrix) -> bool {
        self.matrix.max_abs_diff(&other.matrix) <= MATRIX_EQ_TOL
    }
}

/// Diagonal matrix of vertex transmissions.
#[derive(Clone, Debug, PartialEq)]
pub struct TransmissionMatrix(Vec<f64>);

impl TransmissionMatrix {
    pub fn from_distances(d: &DistanceTable) -> Self {
        TransmissionMatrix((1..=d.n()).map(|v| d.transmission(v) as f64).collect())
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.0
    }

    pub fn to_matrix(&self) -> CMatrix {
        CMatrix::from_diagonal(&self.0)
    }
}

pub fn auxiliary_gain(
    g: &GainGraph,
    ord: &VertexOrdering,
    mode: Mode,
    u: usize,
    v: usize,
) -> Result<Complex64> {
    check_vertex(g, u)?;
    check_vertex(g, v)?;
    if u == v {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let (a, b) = if ord.precedes(u, v) { (u, v) } else { (v, u) };
    let to_target = bfs_connected(g, b)?;
    let chosen = select_extreme(
        &geodesic_gains(g, a, b, &to_target, DEFAULT_PATH_CAP)?,
        mode,
    )
    .expect("connected pair has a geodesic");
    Ok(if (u, v) == (a, b) {
        chosen
    } else {
        chosen.conj()
    })
}

pub fn gain_distance_matrix(
    g: &GainGraph,
    ord: &VertexOrdering,
    mode: Mode,
) -> Result<GainDistanceMatrix> {
    Ok(GeodesicTable::new(g)?.gain_distance_matrix(ord, mode))
}

pub fn transmission_matrix(g: &GainGraph) -> Result<TransmissionMatrix> {
    Ok(TransmissionMatrix::from_distances(&shortest_distances(g)?))
}

/// Both mode matrices coincide under `ord` and under its reverse.
pub fn is_ordering_independent(g: &GainGraph, ord: &VertexOrdering) -> Result<bool> {
    let table = GeodesicTable::new(g)?;
    Ok(ordering_independent(&table, ord))
}

pub(crate) fn ordering_independent(table: &GeodesicTable, ord: &VertexOrdering) -> bool {
    let rev = ord.reverse();
    Mode::BOTH.iter().all(|&mode| {
        table
            .gain_distance_matrix(ord, mode)
            .approx_eq(&table.gain_distance_matrix(&rev, mode))
    })
}

/// `D^max = D^min` under `ord`.
pub fn is_compatible(g: &GainGraph, ord: &VertexOrdering) -> Result<bool> {
    let table = GeodesicTable::new(g)?;
    Ok(compatible(&table, ord))
}

pub(crate) fn compatible(table: &GeodesicTable, ord: &VertexOrdering) -> bool {
    table
        .gain_distance_matrix(ord, Mode::Max)
        .approx_eq(&table.gain_distance_matrix(ord, Mode::Min))
}

/// Complete graph whose edge gains are the auxiliary gains and whose weights are hop distances.
pub fn associated_complete_graph(
    g: &GainGraph,
    ord: &VertexOrdering,
    mode: Mode,
) -> Result<WeightedGainGraph> {
    Ok(GeodesicTable::new(g)?.associated_complete_graph(ord, mode))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::example_graph;
    use std::f64::consts::FRAC_PI_4;

    fn e(theta: f64) -> Complex64 {
        Complex64::from_polar(1.0, theta)
    }

    #[test]
    fn distances() {
        let g = example_graph();
        let d = shortest_distances(&g).unwrap();
        assert_eq!(d.get(3, 5), 3);
        assert_eq!(d.get(4, 4), 0);
        let path = GainGraph::new(3, [(1, 2, UnitGain::ONE), (2, 3, UnitGain::ONE)]).unwrap();
        assert_eq!(shortest_distances(&path).unwrap().get(1, 3), 2);
        let split = GainGraph::new(3, [(1, 2, UnitGain::ONE)]).unwrap();
        assert!(matches!(
            shortest_distances(&split),
            Err(Error::Disconnected { .. })
        ));
    }

    #[test]
    fn geodesic_enumeration() {
        let g = example_graph();
        let mut p = enumerate_shortest_paths(&g, 1, 3, 10).unwrap();
        p.sort();
        assert_eq!(p, vec![vec![1, 2, 3], vec![1, 4, 3]]);
        assert_eq!(
            enumerate_shortest_paths(&g, 2, 2, 10).unwrap(),
            vec![vec![2]]
        );
        assert_eq!(
            enumerate_shortest_paths(&g, 1, 2, 10).unwrap(),
            vec![vec![1, 2]]
        );
        assert_eq!(
            enumerate_shortest_paths(&g, 1, 3, 1),
            Err(Error::PathExplosion { u: 1, v: 3, cap: 1 })
        );
    }

    #[test]
    fn geodesic_enumeration_matches_brute_force() {
        // oracle: all simple paths, filtered to minimum length
        fn simple_paths(
            g: &GainGraph,
            path: &mut Vec<usize>,
            to: usize,
            out: &mut Vec<Vec<usize>>,
        ) {
            let x = *path.last().unwrap();
            if x == to {
                out.push(path.clone());
                return;
            }
            for &(y, _) in g.neighbors(x) {
                if !path.contains(&y) {
                    path.push(y);
                    simple_paths(g, path, to, out);
                    path.pop();
                }
            }
        }
        let g = crate::sample::random_connected_graph(&mut crate::sample::rng(11), 7, 0.5);
        for u in 1..=7 {
            for v in 1..=7 {
                let mut all = Vec::new();
                simple_paths(&g, &mut vec![u], v, &mut all);
                let best = all.iter().map(Vec::len).min().unwrap();
                let mut want: Vec<_> = all.into_iter().filter(|p| p.len() == best).collect();
                want.sort();
                let mut got = enumerate_shortest_paths(&g, u, v, 1000).unwrap();
                got.sort();
                assert_eq!(got, want, "pair ({u},{v})");
            }
        }
    }

    #[test]
    fn auxiliary_gain_examples() {
        let g = example_graph();
        let std = VertexOrdering::standard(5);
        let rev = std.reverse();
        let close = |a: Complex64, b: Complex64| (a - b).norm() < 1e-12;
        assert!(close(
            auxiliary_gain(&g, &std, Mode::Max, 1, 3).unwrap(),
            e(FRAC_PI_4)
        ));
        assert!(close(
            auxiliary_gain(&g, &rev, Mode::Max, 1, 3).unwrap(),
            e(-FRAC_PI_4)
        ));
        assert!(close(
            auxiliary_gain(&g, &std, Mode::Min, 1, 3).unwrap(),
            e(-FRAC_PI_4)
        ));
        assert_eq!(
            auxiliary_gain(&g, &std, Mode::Max, 2, 2).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        let t = GeodesicTable::new(&g).unwrap();
        for u in 1..=5 {
            for v in 1..=5 {
                for mode in Mode::BOTH {
                    for o in [&std, &rev] {
                        assert_eq!(
                            t.auxiliary_gain(o, mode, u, v),
                            auxiliary_gain(&g, o, mode, u, v).unwrap()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn single_edge_matrix() {
        let i = UnitGain::from_angle(std::f64::consts::FRAC_PI_2);
        let g = GainGraph::new(2, [(1, 2, i)]).unwrap();
        for mode in Mode::BOTH {
            let d = gain_distance_matrix(&g, &VertexOrdering::standard(2), mode).unwrap();
            let want = CMatrix::from_rows(&[
                vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)],
                vec![Complex64::new(0.0, -1.0), Complex64::new(0.0, 0.0)],
            ]);
            assert!(d.matrix.max_abs_diff(&want) < 1e-15);
        }
        assert!(is_ordering_independent(&g, &VertexOrdering::standard(2)).unwrap());
    }

    #[test]
    fn transmissions() {
        assert_eq!(
            transmission_matrix(&example_graph()).unwrap().diagonal(),
            &[5.0, 6.0, 7.0, 6.0, 8.0]
        );
        let edge = GainGraph::new(2, [(1, 2, UnitGain::ONE)]).unwrap();
        assert_eq!(transmission_matrix(&edge).unwrap().diagonal(), &[1.0, 1.0]);
        let tri = GainGraph::new(
            3,
            [
                (1, 2, UnitGain::ONE),
                (2, 3, UnitGain::ONE),
                (1, 3, UnitGain::ONE),
            ],
        )
        .unwrap();
        assert_eq!(
            transmission_matrix(&tri).unwrap().diagonal(),
            &[2.0, 2.0, 2.0]
        );
    }

    #[test]
    fn predicates_on_example_graph() {
        let g = example_graph();
        let std = VertexOrdering::standard(5);
        assert!(!is_ordering_independent(&g, &std).unwrap());
        assert!(!is_compatible(&g, &std).unwrap());
    }

    #[test]
    fn trees_and_positive_graphs_are_compatible() {
        let mut rng = crate::sample::rng(5);
        for n in 2..=7 {
            let tree = crate::sample::random_tree(&mut rng, n);
            let ord = crate::sample::random_ordering(&mut rng, n);
            assert!(is_compatible(&tree, &ord).unwrap());
            let pos = crate::sample::random_connected_graph(&mut rng, n, 0.6).underlying();
            assert!(is_compatible(&pos, &ord).unwrap());
            assert!(is_ordering_independent(&pos, &ord).unwrap());
        }
    }

    #[test]
    fn associated_complete_graph_entries() {
        let g = example_graph();
        let k = associated_complete_graph(&g, &VertexOrdering::standard(5), Mode::Max).unwrap();
        assert_eq!(k.graph().edge_count(), 10);
        assert!((k.graph().gain(3, 5).unwrap().value() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(k.weight(3, 5), Some(3.0));

        let k3 = GainGraph::new(
            3,
            [
                (1, 2, UnitGain::ONE),
                (2, 3, UnitGain::ONE),
                (1, 3, UnitGain::ONE),
            ],
        )
        .unwrap();
        let assoc =
            associated_complete_graph(&k3, &VertexOrdering::standard(3), Mode::Min).unwrap();
        assert!(assoc.weights().iter().all(|&w| w == 1.0));
        assert!(assoc.graph().edges().iter().all(|e| e.gain.is_one(1e-15)));
    }

    #[test]
    fn lex_order_and_tie_band() {
        assert_eq!(
            lex_cmp(Complex64::new(0.5, -1.0), Complex64::new(0.6, -2.0)),
            Ordering::Less
        );
        assert_eq!(
            lex_cmp(Complex64::new(0.5, 0.1), Complex64::new(0.5 + 1e-14, -0.1)),
            Ordering::Greater
        );
        assert_eq!(
            lex_cmp(Complex64::new(0.5, 0.1), Complex64::new(0.5, 0.1 + 1e-13)),
            Ordering::Equal
        );
    }
}
