//! Gain distance matrices and gain distance Laplacians of complex unit gain
//! graphs, with the machinery to check their determinant, rank, balance and
//! switching properties numerically.
//!
//! ```
//! use gainlap::prelude::*;
//!
//! let g = gainlap::fixtures::example_graph();
//! let ord = VertexOrdering::standard(5);
//! let dl = distance_laplacian(&g, &ord, Mode::Max).unwrap();
//! assert_eq!(numerical_rank(&dl, None), 5);
//! assert!(!g.is_balanced());
//! ```

pub mod distance;
pub mod error;
pub mod fixtures;
pub mod forest;
pub mod gain;
pub mod laplacian;
pub mod linalg;
pub mod sample;
pub mod spectral;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::distance::{
        associated_complete_graph, auxiliary_gain, enumerate_shortest_paths, gain_distance_matrix,
        is_compatible, is_ordering_independent, shortest_distances, transmission_matrix,
        DistanceTable, GainDistanceMatrix, GeodesicTable, Mode, TransmissionMatrix,
    };
    pub use crate::error::{Error, Result};
    pub use crate::forest::{
        det_direct, det_via_forests, enumerate_spanning_one_forests, forest_weight,
        is_spanning_one_forest, EnumerationLimits, OneForest,
    };
    pub use crate::gain::{
        normalize_gain, GainGraph, SwitchingFunction, UnitGain, VertexOrdering, WeightedGainGraph,
    };
    pub use crate::laplacian::{
        distance_factorization_residual, distance_incidence, distance_laplacian,
        factorization_residual, weighted_adjacency, weighted_incidence, weighted_laplacian,
        IncidenceMatrix, Orientation,
    };
    pub use crate::linalg::{CMatrix, HermitianMatrix};
    pub use crate::spectral::{
        balance_by_cospectrality, balance_by_singularity, hermitian_spectrum, is_cospectral,
        numerical_rank, switching_similarity_check, Spectrum, SwitchingOutcome,
    };
}
