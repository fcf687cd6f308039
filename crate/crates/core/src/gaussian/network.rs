use nalgebra::{DMatrix, DVector};

use super::coupling::CouplingMatrix;
use crate::error::{Error, Result};

const ORTHOGONALITY_TOL: f64 = 1e-12;

/// Real orthogonal mode-mixing matrix `U`, acting as `b = U·a`.
#[derive(Debug, Clone, PartialEq)]
pub struct PassiveNetwork {
    matrix: DMatrix<f64>,
}

impl PassiveNetwork {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let n = matrix.nrows();
        if n == 0 || matrix.ncols() != n {
            return Err(Error::invalid("network matrix must be square and non-empty"));
        }
        let defect = (&matrix * matrix.transpose() - DMatrix::<f64>::identity(n, n)).amax();
        if !(defect <= ORTHOGONALITY_TOL) {
            return Err(Error::invalid(format!("network matrix is not orthogonal (defect {defect:e})")));
        }
        Ok(Self { matrix })
    }

    pub fn identity(n: usize) -> Self {
        Self { matrix: DMatrix::identity(n, n) }
    }

    /// Lossless 50:50 beam splitter with rows `(1, 1)/√2` and `(1, −1)/√2`.
    pub fn balanced_beam_splitter() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self { matrix: DMatrix::from_row_slice(2, 2, &[h, h, h, -h]) }
    }

    pub fn size(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }
}

/// Coupling matrix of the transformed Hamiltonian: `G′ = U·G·Uᵀ`.
pub fn apply_network(g: &CouplingMatrix, u: &PassiveNetwork) -> Result<CouplingMatrix> {
    if g.size() != u.size() {
        return Err(Error::invalid(format!(
            "network acts on {} modes, coupling matrix has {}",
            u.size(),
            g.size()
        )));
    }
    let m = u.matrix();
    CouplingMatrix::new(m * g.entries() * m.transpose())
}

/// N-port splitter whose first column is `(1, …, 1)/√n`.
///
/// The remaining columns come from Gram–Schmidt on `e₂, …, eₙ`. Conjugating
/// `diag(−κ, κ, …, κ)` only depends on the first column, so any completion
/// gives the same transformed coupling matrix.
pub fn make_nsplitter(n: usize) -> Result<PassiveNetwork> {
    if n < 2 {
        return Err(Error::invalid(format!("splitter needs n >= 2, got {n}")));
    }
    let mut columns: Vec<DVector<f64>> = Vec::with_capacity(n);
    columns.push(DVector::from_element(n, 1.0 / (n as f64).sqrt()));
    for k in 1..n {
        let mut v = DVector::zeros(n);
        v[k] = 1.0;
        // Two passes of modified Gram-Schmidt.
        for _ in 0..2 {
            for c in &columns {
                let proj = c.dot(&v);
                v.axpy(-proj, c, 1.0);
            }
        }
        let norm = v.norm();
        columns.push(v / norm);
    }
    PassiveNetwork::new(DMatrix::from_columns(&columns))
}
