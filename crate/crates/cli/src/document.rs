//! JSON graph documents: parsing, validation and emission.

use std::collections::HashSet;

use gainlap::prelude::*;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::result::Result;
use thiserror::Error;

/// Allowed distance of a rectangular gain's modulus from one.
pub const MODULUS_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GainSpec {
    Polar { theta: f64 },
    Rect { re: f64, im: f64 },
}

impl GainSpec {
    pub fn raw(self) -> Complex64 {
        match self {
            GainSpec::Polar { theta } => Complex64::from_polar(1.0, theta),
            GainSpec::Rect { re, im } => Complex64::new(re, im),
        }
    }

    pub fn to_gain(self) -> UnitGain {
        match self {
            GainSpec::Polar { theta } => UnitGain::from_angle(theta),
            GainSpec::Rect { re, im } => {
                normalize_gain(Complex64::new(re, im), false).expect("validated gain")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub u: usize,
    pub v: usize,
    pub gain: GainSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    n: usize,
    edges: Vec<EdgeSpec>,
    #[serde(default)]
    weights: Option<Vec<f64>>,
    #[serde(default)]
    ordering: Option<Vec<usize>>,
}

/// A validated graph file. `ordering` lists the vertices from smallest to largest.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphDocument {
    pub n: usize,
    pub edges: Vec<EdgeSpec>,
    pub weights: Vec<f64>,
    pub ordering: Vec<usize>,
}

#[derive(Debug, Error, PartialEq)]
#[error("parse error at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Error, PartialEq)]
pub enum ValidationError {
    #[error("n must be at least 1")]
    EmptyGraph,
    #[error("edge {index}: endpoints must satisfy 1 <= u < v <= n, got u={u}, v={v}, n={n}")]
    EndpointOrder {
        index: usize,
        u: usize,
        v: usize,
        n: usize,
    },
    #[error("edge {index}: duplicate pair {{{u}, {v}}}")]
    DuplicatePair { index: usize, u: usize, v: usize },
    #[error("edge {index}: gain modulus {modulus} is not within 1e-6 of 1")]
    NonUnitGain { index: usize, modulus: f64 },
    #[error("edge {index}: gain is not finite")]
    NonFiniteGain { index: usize },
    #[error("weights: expected {expected} entries aligned with edges, found {found}")]
    WeightCount { expected: usize, found: usize },
    #[error("weights: entry {index} is {weight}, weights must be positive")]
    NonPositiveWeight { index: usize, weight: f64 },
    #[error("ordering: not a permutation of 1..={n}")]
    NotAPermutation { n: usize },
}

#[derive(Debug, Error, PartialEq)]
pub enum DocumentError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid graph: {0}")]
    Validation(#[from] ValidationError),
}

pub fn parse_graph(bytes: &[u8]) -> Result<GraphDocument, DocumentError> {
    let raw: RawDocument = serde_json::from_slice(bytes).map_err(|e| ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(validate(raw)?)
}

fn validate(raw: RawDocument) -> Result<GraphDocument, ValidationError> {
    let n = raw.n;
    if n == 0 {
        return Err(ValidationError::EmptyGraph);
    }
    let mut seen = HashSet::new();
    for (index, e) in raw.edges.iter().enumerate() {
        if e.u < 1 || e.u >= e.v || e.v > n {
            return Err(ValidationError::EndpointOrder {
                index,
                u: e.u,
                v: e.v,
                n,
            });
        }
        if !seen.insert((e.u, e.v)) {
            return Err(ValidationError::DuplicatePair {
                index,
                u: e.u,
                v: e.v,
            });
        }
        let z = e.gain.raw();
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(ValidationError::NonFiniteGain { index });
        }
        if let GainSpec::Rect { .. } = e.gain {
            let modulus = z.norm();
            if (modulus - 1.0).abs() > MODULUS_TOL {
                return Err(ValidationError::NonUnitGain { index, modulus });
            }
        }
    }
    let m = raw.edges.len();
    let weights = raw.weights.unwrap_or_else(|| vec![1.0; m]);
    if weights.len() != m {
        return Err(ValidationError::WeightCount {
            expected: m,
            found: weights.len(),
        });
    }
    if let Some((index, &weight)) = weights
        .iter()
        .enumerate()
        .find(|(_, w)| !(**w > 0.0 && w.is_finite()))
    {
        return Err(ValidationError::NonPositiveWeight { index, weight });
    }
    let ordering = raw.ordering.unwrap_or_else(|| (1..=n).collect());
    if VertexOrdering::from_sequence(&ordering).map_or(true, |o| o.len() != n) {
        return Err(ValidationError::NotAPermutation { n });
    }
    Ok(GraphDocument {
        n,
        edges: raw.edges,
        weights,
        ordering,
    })
}

impl GraphDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn graph(&self) -> GainGraph {
        GainGraph::new(
            self.n,
            self.edges.iter().map(|e| (e.u, e.v, e.gain.to_gain())),
        )
        .expect("validated document")
    }

    pub fn weighted(&self) -> WeightedGainGraph {
        WeightedGainGraph::new(self.graph(), self.weights.clone()).expect("validated weights")
    }

    pub fn vertex_ordering(&self) -> VertexOrdering {
        VertexOrdering::from_sequence(&self.ordering).expect("validated ordering")
    }

    pub fn from_weighted(wg: &WeightedGainGraph, ord: &VertexOrdering) -> Self {
        let edges = wg
            .graph()
            .edges()
            .iter()
            .map(|e| EdgeSpec {
                u: e.u,
                v: e.v,
                gain: GainSpec::Rect {
                    re: e.gain.re(),
                    im: e.gain.im(),
                },
            })
            .collect();
        GraphDocument {
            n: wg.vertex_count(),
            edges,
            weights: wg.weights().to_vec(),
            ordering: ord.sequence(),
        }
    }
}
