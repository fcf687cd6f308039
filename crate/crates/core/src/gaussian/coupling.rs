use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::format::matrix_to_csv;

/// Tolerance (relative to the largest entry) below which an input matrix is
/// accepted as symmetric and then symmetrized exactly.
const SYMMETRY_TOL: f64 = 1e-12;

/// Real symmetric matrix of downconversion rates `Gᵢⱼ = βχ` (inverse time).
///
/// Off-diagonal entries are two-mode squeezing terms `i Gᵢⱼ aᵢ†aⱼ†`, diagonal
/// entries are single-mode squeezing terms `(i/2) Gᵢᵢ aᵢ†²` (plus H.c.).
/// Symmetry is exact: the stored matrix always equals its transpose bit for
/// bit.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingMatrix {
    entries: DMatrix<f64>,
}

impl CouplingMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let n = entries.nrows();
        if n == 0 || entries.ncols() != n {
            return Err(Error::invalid(format!(
                "coupling matrix must be square and non-empty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("coupling matrix has non-finite entries"));
        }
        let scale = entries.amax().max(f64::MIN_POSITIVE);
        for i in 0..n {
            for j in (i + 1)..n {
                if (entries[(i, j)] - entries[(j, i)]).abs() > SYMMETRY_TOL * scale {
                    return Err(Error::invalid(format!(
                        "coupling matrix is not symmetric at ({i}, {j}): {} vs {}",
                        entries[(i, j)],
                        entries[(j, i)]
                    )));
                }
            }
        }
        let mut sym = entries.clone();
        for i in 0..n {
            for j in (i + 1)..n {
                let v = 0.5 * (entries[(i, j)] + entries[(j, i)]);
                sym[(i, j)] = v;
                sym[(j, i)] = v;
            }
        }
        Ok(Self { entries: sym })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("coupling matrix rows must all have length N"));
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn zeros(n: usize) -> Result<Self> {
        Self::new(DMatrix::zeros(n, n))
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        Self::new(DMatrix::from_fn(n, n, |i, j| if i == j { diag[i] } else { 0.0 }))
    }

    /// Adds `value` to the `(i, j)` and `(j, i)` entries (once on the diagonal).
    pub fn add_coupling(&mut self, i: usize, j: usize, value: f64) -> Result<()> {
        let n = self.size();
        if i >= n || j >= n {
            return Err(Error::invalid(format!("mode index out of range for N = {n}")));
        }
        if !value.is_finite() {
            return Err(Error::invalid("coupling value must be finite"));
        }
        self.entries[(i, j)] += value;
        if i != j {
            self.entries[(j, i)] += value;
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.entries.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_entries(self) -> DMatrix<f64> {
        self.entries
    }

    /// Row-major CSV dump at full round-trip precision.
    pub fn to_csv(&self) -> String {
        matrix_to_csv(&self.entries)
    }
}

/// Coupling matrix of `H_N`: every pair of modes coupled at rate `kappa`,
/// no degenerate terms.
pub fn complete_graph_coupling(n: usize, kappa: f64) -> Result<CouplingMatrix> {
    if n < 2 {
        return Err(Error::invalid(format!("complete graph needs n >= 2, got {n}")));
    }
    if !kappa.is_finite() {
        return Err(Error::invalid("kappa must be finite"));
    }
    CouplingMatrix::new(DMatrix::from_fn(n, n, |i, j| if i == j { 0.0 } else { kappa }))
}

/// Nearest-neighbour chain `1–2–…–n`, each link at rate `kappa`.
pub fn chain_coupling(n: usize, kappa: f64) -> Result<CouplingMatrix> {
    if n < 2 {
        return Err(Error::invalid(format!("chain needs n >= 2, got {n}")));
    }
    if !kappa.is_finite() {
        return Err(Error::invalid("kappa must be finite"));
    }
    CouplingMatrix::new(DMatrix::from_fn(n, n, |i, j| {
        if i.abs_diff(j) == 1 {
            kappa
        } else {
            0.0
        }
    }))
}
