use nalgebra::{DMatrix, DVector};

use super::dynamics::symplectic_form;
use super::eigen::symmetric_eigen;
use crate::error::{Error, Result};

const STATE_TOL: f64 = 1e-9;

/// Gaussian state over `N` modes in XXPP ordering.
///
/// The covariance uses the symmetrized convention
/// `covᵢⱼ = ½⟨{ΔRᵢ, ΔRⱼ}⟩`, so the vacuum is `I/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

impl GaussianState {
    pub fn vacuum(n: usize) -> Self {
        Self { mean: DVector::zeros(2 * n), cov: DMatrix::identity(2 * n, 2 * n) * 0.5 }
    }

    /// Validates symmetry, positive definiteness and the uncertainty relation
    /// `cov + (i/2)Ω ⪰ 0`.
    pub fn new(mean: DVector<f64>, cov: DMatrix<f64>) -> Result<Self> {
        let dim = mean.len();
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::invalid(format!("mean vector length must be 2N, got {dim}")));
        }
        if cov.nrows() != dim || cov.ncols() != dim {
            return Err(Error::invalid("covariance shape does not match mean vector"));
        }
        if mean.iter().chain(cov.iter()).any(|v| !v.is_finite()) {
            return Err(Error::invalid("state has non-finite entries"));
        }
        let scale = cov.amax().max(1.0);
        if (&cov - cov.transpose()).amax() > STATE_TOL * scale {
            return Err(Error::invalid("covariance matrix is not symmetric"));
        }
        let cov = (&cov + cov.transpose()) * 0.5;
        if cov.clone().cholesky().is_none() {
            return Err(Error::invalid("covariance matrix is not positive definite"));
        }
        let state = Self { mean, cov };
        let min = state.uncertainty_min_eigenvalue()?;
        if min < -STATE_TOL * scale {
            return Err(Error::invalid(format!(
                "covariance violates the uncertainty relation (min eigenvalue {min:e})"
            )));
        }
        Ok(state)
    }

    pub(crate) fn from_parts_unchecked(mean: DVector<f64>, cov: DMatrix<f64>) -> Self {
        Self { mean, cov }
    }

    pub fn mode_count(&self) -> usize {
        self.mean.len() / 2
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    /// Smallest eigenvalue of the Hermitian matrix `cov + (i/2)Ω`.
    ///
    /// Computed through the real embedding `[[A, −B], [B, A]]` of `A + iB`,
    /// whose spectrum is that of the Hermitian matrix with each value doubled.
    pub fn uncertainty_min_eigenvalue(&self) -> Result<f64> {
        let d = self.cov.nrows();
        let b = symplectic_form(d / 2) * 0.5;
        let mut real = DMatrix::zeros(2 * d, 2 * d);
        real.view_mut((0, 0), (d, d)).copy_from(&self.cov);
        real.view_mut((d, d), (d, d)).copy_from(&self.cov);
        real.view_mut((0, d), (d, d)).copy_from(&(-&b));
        real.view_mut((d, 0), (d, d)).copy_from(&b);
        let (values, _) = symmetric_eigen(&real)?;
        Ok(values.min())
    }

    /// `det(2·cov)`, equal to 1 for pure states.
    pub fn det_two_cov(&self) -> f64 {
        (&self.cov * 2.0).determinant()
    }

    pub fn purity(&self) -> f64 {
        1.0 / self.det_two_cov().sqrt()
    }
}

/// The operator `Σ xᵢXᵢ + Σ pᵢPᵢ`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointQuadrature {
    x: DVector<f64>,
    p: DVector<f64>,
}

impl JointQuadrature {
    pub fn new(x: DVector<f64>, p: DVector<f64>) -> Result<Self> {
        if x.len() != p.len() || x.is_empty() {
            return Err(Error::invalid("x and p coefficient vectors must be non-empty and equal length"));
        }
        if x.iter().chain(p.iter()).any(|v| !v.is_finite()) {
            return Err(Error::invalid("quadrature coefficients must be finite"));
        }
        if x.iter().chain(p.iter()).all(|&v| v == 0.0) {
            return Err(Error::invalid("quadrature needs at least one nonzero coefficient"));
        }
        Ok(Self { x, p })
    }

    pub fn from_slices(x: &[f64], p: &[f64]) -> Result<Self> {
        Self::new(DVector::from_column_slice(x), DVector::from_column_slice(p))
    }

    pub fn x_only(x: &[f64]) -> Result<Self> {
        Self::from_slices(x, &vec![0.0; x.len()])
    }

    pub fn p_only(p: &[f64]) -> Result<Self> {
        Self::from_slices(&vec![0.0; p.len()], p)
    }

    /// `Xᵢ − Xⱼ` (0-based indices).
    pub fn x_difference(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n || i == j {
            return Err(Error::invalid(format!("invalid mode pair ({i}, {j}) for N = {n}")));
        }
        let mut x = vec![0.0; n];
        x[i] = 1.0;
        x[j] = -1.0;
        Self::x_only(&x)
    }

    /// `P₁ + … + P_N`.
    pub fn p_sum(n: usize) -> Result<Self> {
        Self::p_only(&vec![1.0; n])
    }

    pub fn mode_count(&self) -> usize {
        self.x.len()
    }

    pub fn x_coeffs(&self) -> &DVector<f64> {
        &self.x
    }

    pub fn p_coeffs(&self) -> &DVector<f64> {
        &self.p
    }

    /// `(x, p)` concatenated in XXPP ordering.
    pub fn coefficients(&self) -> DVector<f64> {
        let n = self.x.len();
        DVector::from_fn(2 * n, |k, _| if k < n { self.x[k] } else { self.p[k - n] })
    }
}

/// `cᵀ·cov·c`.
pub fn joint_variance(state: &GaussianState, q: &JointQuadrature) -> Result<f64> {
    if state.mode_count() != q.mode_count() {
        return Err(Error::invalid(format!(
            "quadrature has {} modes, state has {}",
            q.mode_count(),
            state.mode_count()
        )));
    }
    let c = q.coefficients();
    Ok(c.dot(&(state.cov() * &c)).max(0.0))
}
