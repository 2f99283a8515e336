//! Adjacency, Laplacian and incidence matrices of weighted gain graphs, and
//! their distance counterparts built on the associated complete graph.

use num_complex::Complex64;

use crate::distance::{GeodesicTable, Mode, TransmissionMatrix};
use crate::error::{Error, Result};
use crate::gain::{GainGraph, VertexOrdering, WeightedGainGraph};
use crate::linalg::{CMatrix, HermitianMatrix};

/// Tail and head of each edge, aligned with the graph's edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation(Vec<(usize, usize)>);

impl Orientation {
    /// Tail is the endpoint that comes first under `ord`.
    pub fn by_ordering(g: &GainGraph, ord: &VertexOrdering) -> Self {
        Orientation(
            g.edges()
                .iter()
                .map(|e| {
                    if ord.precedes(e.u, e.v) {
                        (e.u, e.v)
                    } else {
                        (e.v, e.u)
                    }
                })
                .collect(),
        )
    }

    /// Explicit `(tail, head)` pairs; each must match the endpoints of the aligned edge.
    pub fn new(g: &GainGraph, arcs: Vec<(usize, usize)>) -> Result<Self> {
        if arcs.len() != g.edge_count() {
            return Err(Error::DimensionMismatch {
                left: g.edge_count(),
                right: arcs.len(),
            });
        }
        for (i, (e, &(t, h))) in g.edges().iter().zip(&arcs).enumerate() {
            let ok = (t, h) == (e.u, e.v) || (t, h) == (e.v, e.u);
            if !ok {
                return Err(Error::UnknownEdge { index: i });
            }
        }
        Ok(Orientation(arcs))
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.0
    }
}

/// An `n × m` incidence matrix and the oriented edge behind each column.
#[derive(Clone, Debug, PartialEq)]
pub struct IncidenceMatrix {
    pub matrix: CMatrix,
    pub arcs: Vec<(usize, usize)>,
}

impl IncidenceMatrix {
    /// `H · H*`.
    pub fn gram(&self) -> CMatrix {
        &self.matrix * &self.matrix.conj_transpose()
    }
}

pub fn weighted_adjacency(wg: &WeightedGainGraph) -> HermitianMatrix {
    let n = wg.vertex_count();
    let mut a = CMatrix::zeros(n, n);
    for (e, &w) in wg.graph().edges().iter().zip(wg.weights()) {
        let z = e.gain.value() * w;
        a[(e.u - 1, e.v - 1)] = z;
        a[(e.v - 1, e.u - 1)] = z.conj();
    }
    HermitianMatrix::new(a).expect("adjacency is conjugate symmetric by construction")
}

/// Weighted degree matrix minus the weighted adjacency.
pub fn weighted_laplacian(wg: &WeightedGainGraph) -> HermitianMatrix {
    let mut l = weighted_adjacency(wg)
        .into_inner()
        .scale(Complex64::new(-1.0, 0.0));
    for (e, &w) in wg.graph().edges().iter().zip(wg.weights()) {
        l[(e.u - 1, e.u - 1)] += w;
        l[(e.v - 1, e.v - 1)] += w;
    }
    HermitianMatrix::new(l).expect("laplacian is conjugate symmetric by construction")
}

/// Column `e` holds `√w` at the tail and `-gain(tail -> head)⁻¹ √w` at the head.
pub fn weighted_incidence(wg: &WeightedGainGraph, orientation: &Orientation) -> IncidenceMatrix {
    let g = wg.graph();
    let n = g.vertex_count();
    let arcs = orientation.arcs().to_vec();
    let mut h = CMatrix::zeros(n, arcs.len());
    for (col, ((&(tail, head), e), &w)) in arcs.iter().zip(g.edges()).zip(wg.weights()).enumerate()
    {
        let root = w.sqrt();
        h[(tail - 1, col)] = Complex64::new(root, 0.0);
        h[(head - 1, col)] = -e.gain_from(tail).inv().value() * root;
    }
    IncidenceMatrix { matrix: h, arcs }
}

/// `max |L - H H*|` under an explicit orientation.
pub fn factorization_residual_with(wg: &WeightedGainGraph, orientation: &Orientation) -> f64 {
    weighted_laplacian(wg).max_abs_diff(&weighted_incidence(wg, orientation).gram())
}

/// `max |L - H H*|` with edges oriented from smaller to larger vertex.
pub fn factorization_residual(wg: &WeightedGainGraph) -> f64 {
    let ord = VertexOrdering::standard(wg.vertex_count());
    factorization_residual_with(wg, &Orientation::by_ordering(wg.graph(), &ord))
}

/// Incidence matrix of the associated complete graph, one column per vertex
/// pair, tail first under `ord`, columns sorted by `(tail rank, head rank)`.
pub fn distance_incidence_from(
    table: &GeodesicTable,
    ord: &VertexOrdering,
    mode: Mode,
) -> IncidenceMatrix {
    let complete = table.associated_complete_graph(ord, mode);
    let n = complete.vertex_count();
    let seq = ord.sequence();
    let mut arcs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for (i, &tail) in seq.iter().enumerate() {
        for &head in &seq[i + 1..] {
            arcs.push((tail, head));
        }
    }
    let mut h = CMatrix::zeros(n, arcs.len());
    for (col, &(tail, head)) in arcs.iter().enumerate() {
        let root = complete.weight(tail, head).expect("complete graph").sqrt();
        let gain = complete.graph().gain(tail, head).expect("complete graph");
        h[(tail - 1, col)] = Complex64::new(root, 0.0);
        h[(head - 1, col)] = -gain.inv().value() * root;
    }
    IncidenceMatrix { matrix: h, arcs }
}

pub fn distance_incidence(
    g: &GainGraph,
    ord: &VertexOrdering,
    mode: Mode,
) -> Result<IncidenceMatrix> {
    Ok(distance_incidence_from(&GeodesicTable::new(g)?, ord, mode))
}

/// Transmission matrix minus the gain distance matrix.
pub fn distance_laplacian_from(
    table: &GeodesicTable,
    ord: &VertexOrdering,
    mode: Mode,
) -> HermitianMatrix {
    let tr = TransmissionMatrix::from_distances(table.distances()).to_matrix();
    let d = table.gain_distance_matrix(ord, mode);
    HermitianMatrix::new(&tr - &d.matrix).expect("difference of Hermitian matrices")
}

pub fn distance_laplacian(
    g: &GainGraph,
    ord: &VertexOrdering,
    mode: Mode,
) -> Result<HermitianMatrix> {
    Ok(distance_laplacian_from(&GeodesicTable::new(g)?, ord, mode))
}

pub fn distance_factorization_residual(
    g: &GainGraph,
    ord: &VertexOrdering,
    mode: Mode,
) -> Result<f64> {
    let table = GeodesicTable::new(g)?;
    Ok(distance_laplacian_from(&table, ord, mode)
        .max_abs_diff(&distance_incidence_from(&table, ord, mode).gram()))
}
