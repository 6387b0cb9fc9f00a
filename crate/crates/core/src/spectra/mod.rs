//! Exact characteristic polynomials, numeric eigenvalues, and closed-form
//! spectra for the cell graphs.
//!
//! The characteristic polynomial `det(tI - M)` is the canonical spectrum:
//! two graphs are cospectral exactly when their polynomials agree. Numeric
//! eigenvalues are for display and are always reported alongside the
//! residual of the exact polynomial at each value.

mod charpoly;
mod closed;
mod jacobi;
mod poly;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::matrix::IntMatrix;

pub use closed::{closed_to_poly, ev1_spectrum, quotient_spectrum, srg_spectrum, ClosedEigenvalue, ClosedSpectrum};
pub use poly::IntPolynomial;

/// Largest dimension for which reports include the exact polynomial by
/// default (144 = 12^2 cells).
pub const EXACT_DIM_CAP: usize = 150;

#[derive(Debug, Error, PartialEq)]
pub enum SpectraError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("polynomials have different degrees ({0:?} vs {1:?})")]
    DegreeMismatch(Option<usize>, Option<usize>),
    #[error("infeasible SRG parameters ({n}, {k}, {lambda}, {mu}): multiplicities s = {s}, t = {t}")]
    InfeasibleSrg { n: i64, k: i64, lambda: i64, mu: i64, s: f64, t: f64 },
    #[error("line {line} of the spectrum has negative multiplicity {mult} (eigenvalue {eigenvalue})")]
    NegativeMultiplicity { line: usize, eigenvalue: i64, mult: i64 },
    #[error("surd eigenvalue {eigenvalue} has multiplicity {mult} but its conjugate has {conj_mult}")]
    UnmatchedSurd { eigenvalue: String, mult: u64, conj_mult: u64 },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("exact characteristic polynomial requested for dimension {dim} above the cap {cap}")]
    TooLarge { dim: usize, cap: usize },
}

/// `det(tI - M)`, exactly.
pub fn charpoly_exact(m: &IntMatrix) -> IntPolynomial {
    charpoly::charpoly_multimodular(m)
}

/// Exact coefficient equality of two characteristic polynomials.
pub fn cospectral(a: &IntPolynomial, b: &IntPolynomial) -> Result<bool, SpectraError> {
    if a.degree() != b.degree() {
        return Err(SpectraError::DegreeMismatch(a.degree(), b.degree()));
    }
    Ok(a == b)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Jacobi stops once the off-diagonal norm is below `jacobi * ||M||`.
    pub jacobi: f64,
    /// Sorted eigenvalues within this distance of a group's first member
    /// join that group.
    pub group: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { jacobi: 1e-12, group: 1e-6 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericEigenvalue {
    pub value: f64,
    pub mult: usize,
}

/// Numeric spectrum, paired with the exact polynomial when it was computed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumReport {
    pub charpoly: Option<IntPolynomial>,
    pub numeric: Vec<NumericEigenvalue>,
    /// Largest [`IntPolynomial::relative_residual`] over the reported values.
    pub residual: Option<f64>,
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs().len()))?;
        for c in self.coeffs() {
            seq.serialize_element(&c.to_string())?;
        }
        seq.end()
    }
}

/// Grouped eigenvalues of a symmetric matrix, in decreasing order.
pub fn numeric_eigenvalues(m: &IntMatrix, tol: Tolerances) -> Result<Vec<NumericEigenvalue>, SpectraError> {
    if !m.is_symmetric() {
        return Err(SpectraError::NotSymmetric);
    }
    let n = m.dim();
    let data: Vec<f64> = (0..n * n).map(|k| m.get(k / n, k % n) as f64).collect();
    let mut values = jacobi::jacobi_eigenvalues(data, n, tol.jacobi);
    values.sort_by(|a, b| b.total_cmp(a));

    let mut groups: Vec<Vec<f64>> = Vec::new();
    for v in values {
        match groups.last_mut() {
            Some(g) if (g[0] - v).abs() <= tol.group => g.push(v),
            _ => groups.push(vec![v]),
        }
    }
    Ok(groups
        .into_iter()
        .map(|g| NumericEigenvalue { value: g.iter().sum::<f64>() / g.len() as f64, mult: g.len() })
        .collect())
}

/// Numeric spectrum plus the exact polynomial (skipped when `exact` is false).
pub fn numeric_spectrum(m: &IntMatrix, tol: Tolerances, exact: bool) -> Result<SpectrumReport, SpectraError> {
    let numeric = numeric_eigenvalues(m, tol)?;
    let charpoly = exact.then(|| charpoly_exact(m));
    let residual = charpoly
        .as_ref()
        .map(|p| numeric.iter().map(|e| p.relative_residual(e.value)).fold(0.0, f64::max));
    Ok(SpectrumReport { charpoly, numeric, residual })
}
