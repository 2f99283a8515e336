//! Hermitian eigenvalues (cyclic complex Jacobi), numerical rank,
//! cospectrality, and the spectral balance characterizations.

use num_complex::Complex64;

use crate::distance::{compatible, ordering_independent, GeodesicTable, Mode};
use crate::error::{Error, Result};
use crate::gain::{GainGraph, SwitchingFunction, VertexOrdering};
use crate::laplacian::distance_laplacian_from;
use crate::linalg::{det_lu, CMatrix, HermitianMatrix};

const MAX_SWEEPS: usize = 100;

/// Similarity residual accepted by the switching check.
pub const SIMILARITY_TOL: f64 = 1e-10;

/// Eigenvalues in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest `|λ|`, i.e. the spectral norm of the matrix.
    pub fn spectral_radius(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// `max_i |λ_i - μ_i|`; infinite when the lengths differ.
    pub fn max_gap(&self, other: &Spectrum) -> f64 {
        if self.len() != other.len() {
            return f64::INFINITY;
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Eigenvalues with the unitary matrix whose columns are the eigenvectors.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub spectrum: Spectrum,
    pub vectors: CMatrix,
}

impl EigenDecomposition {
    /// Largest `‖M x - λ x‖` over all computed pairs.
    pub fn max_residual(&self, m: &CMatrix) -> f64 {
        let n = m.rows();
        (0..n)
            .map(|k| {
                let x: Vec<Complex64> = (0..n).map(|r| self.vectors[(r, k)]).collect();
                let mx = m.mul_vec(&x);
                let lambda = self.spectrum.values()[k];
                mx.iter()
                    .zip(&x)
                    .map(|(a, b)| (a - b * lambda).norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(0.0, f64::max)
    }
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                s += a[(p, q)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi sweeps on a copy of `m`; deterministic for a given input.
pub fn hermitian_eigen(m: &HermitianMatrix) -> EigenDecomposition {
    let n = m.dim();
    let mut a = m.matrix().clone();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius_norm();
    let target = (n as f64) * f64::EPSILON * scale;
    let negligible = 1e-2 * f64::EPSILON * scale;

    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= negligible {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // phase that makes the (p, q) entry real and positive
                let phase = apq / r;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (theta * theta + 1.0).sqrt())
                } else {
                    -1.0 / (-theta + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // U restricted to (p, q) columns
                let upp = Complex64::new(c, 0.0);
                let upq = Complex64::new(s, 0.0);
                let uqp = -phase.conj() * s;
                let uqq = phase.conj() * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * upp + akq * uqp;
                    a[(k, q)] = akp * upq + akq * uqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = upp.conj() * apk + uqp.conj() * aqk;
                    a[(q, k)] = upq.conj() * apk + uqq.conj() * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * upp + vkq * uqp;
                    v[(k, q)] = vkp * upq + vkq * uqq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = CMatrix::from_fn(n, n, |r, k| v[(r, order[k])]);
    EigenDecomposition {
        spectrum: Spectrum(values),
        vectors,
    }
}

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_spectrum(m: &HermitianMatrix) -> Spectrum {
    hermitian_eigen(m).spectrum
}

/// Validating entry point for a raw matrix.
pub fn spectrum_of(m: &CMatrix) -> Result<Spectrum> {
    Ok(hermitian_spectrum(&HermitianMatrix::new(m.clone())?))
}

/// Count of eigenvalues with `|λ| > tol`; the default tolerance is
/// `1e-8 · max(1, max|λ|)`.
pub fn numerical_rank(m: &HermitianMatrix, tol: Option<f64>) -> usize {
    let spec = hermitian_spectrum(m);
    let tol = tol.unwrap_or_else(|| 1e-8 * spec.spectral_radius().max(1.0));
    spec.values().iter().filter(|x| x.abs() > tol).count()
}

/// Sorted spectra agree within `tol`, by default `1e-8 · (1 + ‖A‖)`.
pub fn is_cospectral(a: &HermitianMatrix, b: &HermitianMatrix, tol: Option<f64>) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let sa = hermitian_spectrum(a);
    let sb = hermitian_spectrum(b);
    let tol = tol.unwrap_or_else(|| 1e-8 * (1.0 + sa.spectral_radius()));
    Ok(sa.max_gap(&sb) <= tol)
}

/// Threshold below which a determinant counts as zero: `1e-8 · Π max(1, ‖row_j‖)`.
pub fn singularity_threshold(m: &CMatrix) -> f64 {
    1e-8 * (0..m.rows())
        .map(|r| m.row_norm(r).max(1.0))
        .product::<f64>()
}

/// Outcome of testing balance through singularity of both distance Laplacians.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularityVerdict {
    pub det_max: f64,
    pub det_min: f64,
    pub singular_max: bool,
    pub singular_min: bool,
    pub rank_max: usize,
    pub rank_min: usize,
    /// Decided by the ranks: both equal `n - 1`.
    pub balanced: bool,
    /// The determinant tests agree with the rank verdict.
    pub det_consistent: bool,
    /// The verdict matches potential-based balance detection.
    pub agrees_with_potential: bool,
}

pub fn balance_by_singularity(g: &GainGraph, ord: &VertexOrdering) -> Result<SingularityVerdict> {
    let table = GeodesicTable::new(g)?;
    let n = g.vertex_count();
    let dl_max = distance_laplacian_from(&table, ord, Mode::Max);
    let dl_min = distance_laplacian_from(&table, ord, Mode::Min);
    let det_max = det_lu(&dl_max).re;
    let det_min = det_lu(&dl_min).re;
    let singular_max = det_max.abs() <= singularity_threshold(&dl_max);
    let singular_min = det_min.abs() <= singularity_threshold(&dl_min);
    let rank_max = numerical_rank(&dl_max, None);
    let rank_min = numerical_rank(&dl_min, None);
    let balanced = rank_max + 1 == n && rank_min + 1 == n;
    Ok(SingularityVerdict {
        det_max,
        det_min,
        singular_max,
        singular_min,
        rank_max,
        rank_min,
        balanced,
        det_consistent: singular_max == balanced && singular_min == balanced,
        agrees_with_potential: balanced == g.is_balanced(),
    })
}

/// Outcome of testing balance through cospectrality with the underlying graph.
#[derive(Clone, Debug, PartialEq)]
pub struct CospectralVerdict {
    /// `DL^max = DL^min` entrywise.
    pub modes_agree: bool,
    /// `DL^max` is cospectral to the distance Laplacian of the underlying graph.
    pub cospectral: bool,
    pub spectrum_gap: f64,
    pub balanced: bool,
}

pub fn balance_by_cospectrality(g: &GainGraph, ord: &VertexOrdering) -> Result<CospectralVerdict> {
    let table = GeodesicTable::new(g)?;
    let dl_max = distance_laplacian_from(&table, ord, Mode::Max);
    let dl_min = distance_laplacian_from(&table, ord, Mode::Min);
    let modes_agree = dl_max.max_abs_diff(&dl_min) <= crate::distance::MATRIX_EQ_TOL;
    let plain = GeodesicTable::new(&g.underlying())?;
    let dl_plain = distance_laplacian_from(&plain, ord, Mode::Max);
    let s = hermitian_spectrum(&dl_max);
    let spectrum_gap = s.max_gap(&hermitian_spectrum(&dl_plain));
    let cospectral = spectrum_gap <= 1e-8 * (1.0 + s.spectral_radius());
    Ok(CospectralVerdict {
        modes_agree,
        cospectral,
        spectrum_gap,
        balanced: modes_agree && cospectral,
    })
}

/// What the switching check measured once its hypothesis held.
#[derive(Clone, Debug, PartialEq)]
pub struct SwitchingReport {
    pub compatible_after: bool,
    /// `max |D(Θ^ξ) - S⁻¹ D(Θ) S|` with `S = diag(ξ)`.
    pub similarity_residual: f64,
    /// Largest eigenvalue gap between `DL(Θ)` and `DL(Θ^ξ)`.
    pub spectrum_gap: f64,
    pub spectrum_tol: f64,
}

impl SwitchingReport {
    pub fn passed(&self) -> bool {
        self.compatible_after
            && self.similarity_residual <= SIMILARITY_TOL
            && self.spectrum_gap <= self.spectrum_tol
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SwitchingOutcome {
    /// The input is not compatible and ordering independent, so nothing is judged.
    HypothesisNotMet {
        compatible: bool,
        ordering_independent: bool,
    },
    Checked(SwitchingReport),
}

/// Conjugates by the diagonal switching matrix: `S⁻¹ M S` with `S = diag(ξ)`,
/// entry `(j, k)` becoming `conj(ξ_j) m_jk ξ_k`.
pub fn switch_matrix(m: &CMatrix, xi: &SwitchingFunction) -> CMatrix {
    CMatrix::from_fn(m.rows(), m.cols(), |j, k| {
        xi.at(j + 1).inv().value() * m[(j, k)] * xi.at(k + 1).value()
    })
}

pub fn switching_similarity_check(
    g: &GainGraph,
    ord: &VertexOrdering,
    xi: &SwitchingFunction,
) -> Result<SwitchingOutcome> {
    let before = GeodesicTable::new(g)?;
    let is_compatible = compatible(&before, ord);
    let is_independent = ordering_independent(&before, ord);
    if !(is_compatible && is_independent) {
        return Ok(SwitchingOutcome::HypothesisNotMet {
            compatible: is_compatible,
            ordering_independent: is_independent,
        });
    }
    let switched = g.switch(xi)?;
    let after = GeodesicTable::new(&switched)?;
    let compatible_after = compatible(&after, ord);

    let d_before = before.gain_distance_matrix(ord, Mode::Max);
    let d_after = after.gain_distance_matrix(ord, Mode::Max);
    let similarity_residual = d_after
        .matrix
        .max_abs_diff(&switch_matrix(&d_before.matrix, xi));

    let s_before = hermitian_spectrum(&distance_laplacian_from(&before, ord, Mode::Max));
    let s_after = hermitian_spectrum(&distance_laplacian_from(&after, ord, Mode::Max));
    Ok(SwitchingOutcome::Checked(SwitchingReport {
        compatible_after,
        similarity_residual,
        spectrum_gap: s_before.max_gap(&s_after),
        spectrum_tol: 1e-8 * (1.0 + s_before.spectral_radius()),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gain::UnitGain;
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn herm(rows: &[Vec<Complex64>]) -> HermitianMatrix {
        HermitianMatrix::new(CMatrix::from_rows(rows)).unwrap()
    }

    fn i_gain() -> UnitGain {
        UnitGain::from_angle(FRAC_PI_2)
    }

    #[test]
    fn spectrum_examples() {
        let d = HermitianMatrix::new(CMatrix::from_diagonal(&[5.0, 6.0, 7.0, 6.0, 8.0])).unwrap();
        assert_eq!(hermitian_spectrum(&d).values(), &[5.0, 6.0, 6.0, 7.0, 8.0]);

        let m = herm(&[
            vec![c(1.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(1.0, 0.0)],
        ]);
        let s = hermitian_spectrum(&m);
        assert!((s.values()[0] - 0.0).abs() < 1e-14 && (s.values()[1] - 2.0).abs() < 1e-14);

        let (t, m1) = (c(2.0, 0.0), c(-1.0, 0.0));
        let k3 = herm(&[vec![t, m1, m1], vec![m1, t, m1], vec![m1, m1, t]]);
        let s = hermitian_spectrum(&k3);
        for (a, b) in s.values().iter().zip([0.0, 3.0, 3.0]) {
            assert!((a - b).abs() < 1e-13);
        }
        assert!(spectrum_of(&CMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(2.0, 0.0), c(0.0, 0.0)]
        ]))
        .is_err());
    }

    #[test]
    fn eigenvectors_are_accurate() {
        let g = crate::fixtures::example_graph();
        let dl = crate::laplacian::distance_laplacian(&g, &VertexOrdering::standard(5), Mode::Max)
            .unwrap();
        let e = hermitian_eigen(&dl);
        let norm = e.spectrum.spectral_radius();
        assert!(e.max_residual(dl.matrix()) <= 1e-10 * norm);
        // trace identity: eigenvalues sum to the transmissions
        assert!((e.spectrum.sum() - 32.0).abs() < 1e-10);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(
            numerical_rank(&HermitianMatrix::new(CMatrix::zeros(3, 3)).unwrap(), None),
            0
        );
        let g = crate::fixtures::example_graph();
        let dl = crate::laplacian::distance_laplacian(&g, &VertexOrdering::standard(5), Mode::Max)
            .unwrap();
        assert_eq!(numerical_rank(&dl, None), 5);
        let positive = crate::fixtures::example_graph().underlying();
        let dl = crate::laplacian::distance_laplacian(
            &positive,
            &VertexOrdering::standard(5),
            Mode::Max,
        )
        .unwrap();
        assert_eq!(numerical_rank(&dl, None), 4);
    }

    #[test]
    fn cospectral_examples() {
        let single = GainGraph::new(2, [(1, 2, i_gain())]).unwrap();
        let ord2 = VertexOrdering::standard(2);
        let a = crate::laplacian::distance_laplacian(&single, &ord2, Mode::Max).unwrap();
        let b =
            crate::laplacian::distance_laplacian(&single.underlying(), &ord2, Mode::Max).unwrap();
        assert!(is_cospectral(&a, &a, None).unwrap());
        assert!(is_cospectral(&a, &b, None).unwrap());

        let tri = GainGraph::new(
            3,
            [
                (1, 2, UnitGain::ONE),
                (2, 3, UnitGain::ONE),
                (1, 3, i_gain()),
            ],
        )
        .unwrap();
        let ord3 = VertexOrdering::standard(3);
        let a = crate::laplacian::distance_laplacian(&tri, &ord3, Mode::Max).unwrap();
        let b = crate::laplacian::distance_laplacian(&tri.underlying(), &ord3, Mode::Max).unwrap();
        assert!(!is_cospectral(&a, &b, None).unwrap());
        let small = HermitianMatrix::new(CMatrix::identity(2)).unwrap();
        assert!(matches!(
            is_cospectral(&a, &small, None),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn singularity_verdicts() {
        let single = GainGraph::new(2, [(1, 2, i_gain())]).unwrap();
        let v = balance_by_singularity(&single, &VertexOrdering::standard(2)).unwrap();
        assert!(v.balanced && v.singular_max && v.singular_min && v.agrees_with_potential);
        assert_eq!((v.rank_max, v.rank_min), (1, 1));
        assert!(v.det_max.abs() < 1e-15);

        let g = crate::fixtures::example_graph();
        let v = balance_by_singularity(&g, &VertexOrdering::standard(5)).unwrap();
        assert!(!v.balanced && !v.singular_max && v.agrees_with_potential && v.det_consistent);
        assert_eq!(v.rank_max, 5);

        let tri = GainGraph::new(
            3,
            [
                (1, 2, UnitGain::ONE),
                (2, 3, UnitGain::ONE),
                (1, 3, UnitGain::ONE),
            ],
        )
        .unwrap();
        let v = balance_by_singularity(&tri, &VertexOrdering::standard(3)).unwrap();
        assert!(v.balanced);
        assert_eq!(v.rank_max, 2);
    }

    #[test]
    fn cospectrality_verdicts() {
        let single = GainGraph::new(2, [(1, 2, i_gain())]).unwrap();
        assert!(
            balance_by_cospectrality(&single, &VertexOrdering::standard(2))
                .unwrap()
                .balanced
        );
        let tri = GainGraph::new(
            3,
            [
                (1, 2, UnitGain::ONE),
                (2, 3, UnitGain::ONE),
                (1, 3, i_gain()),
            ],
        )
        .unwrap();
        let v = balance_by_cospectrality(&tri, &VertexOrdering::standard(3)).unwrap();
        assert!(v.modes_agree && !v.cospectral && !v.balanced);
        let mut rng = crate::sample::rng(3);
        for n in 2..=7 {
            let g = crate::sample::random_connected_graph(&mut rng, n, 0.5).underlying();
            let xi = crate::sample::random_switching(&mut rng, n);
            let ord = crate::sample::random_ordering(&mut rng, n);
            assert!(
                balance_by_cospectrality(&g.switch(&xi).unwrap(), &ord)
                    .unwrap()
                    .balanced
            );
        }
    }

    #[test]
    fn switching_examples() {
        let single = GainGraph::new(2, [(1, 2, i_gain())]).unwrap();
        let xi = SwitchingFunction::new(vec![UnitGain::ONE, UnitGain::from_angle(-FRAC_PI_2)]);
        match switching_similarity_check(&single, &VertexOrdering::standard(2), &xi).unwrap() {
            SwitchingOutcome::Checked(r) => assert!(r.passed(), "{r:?}"),
            other => panic!("unexpected {other:?}"),
        }
        let switched = single.switch(&xi).unwrap();
        let d = crate::distance::gain_distance_matrix(
            &switched,
            &VertexOrdering::standard(2),
            Mode::Max,
        )
        .unwrap();
        let want = CMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.0)],
        ]);
        assert!(d.matrix.max_abs_diff(&want) < 1e-15);

        let c4 = GainGraph::new(
            4,
            [
                (1, 2, UnitGain::ONE),
                (2, 3, UnitGain::ONE),
                (3, 4, UnitGain::ONE),
                (1, 4, UnitGain::ONE),
            ],
        )
        .unwrap();
        let mut rng = crate::sample::rng(9);
        let xi = crate::sample::random_switching(&mut rng, 4);
        match switching_similarity_check(&c4, &VertexOrdering::standard(4), &xi).unwrap() {
            SwitchingOutcome::Checked(r) => assert!(r.passed(), "{r:?}"),
            other => panic!("unexpected {other:?}"),
        }

        let g = crate::fixtures::example_graph();
        let xi = crate::sample::random_switching(&mut rng, 5);
        assert!(matches!(
            switching_similarity_check(&g, &VertexOrdering::standard(5), &xi).unwrap(),
            SwitchingOutcome::HypothesisNotMet {
                compatible: false,
                ..
            }
        ));
    }
}
