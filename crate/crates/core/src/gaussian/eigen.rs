use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::coupling::CouplingMatrix;
use super::state::JointQuadrature;
use crate::error::{Error, Result};

/// Zero-eigenvalue tolerance, relative to the spectral radius.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

const EIGEN_EPS: f64 = 1e-15;
const EIGEN_MAX_ITER: usize = 10_000;

/// How a joint mode of `G` behaves under the evolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeClass {
    /// `λ > 0`: `vᵀP` decays as `e^{−λt}`.
    PSqueezed,
    /// `λ < 0`: `vᵀX` decays as `e^{−|λ|t}`.
    XSqueezed,
    /// `λ = 0` within tolerance: a constant of motion.
    Constant,
}

impl ModeClass {
    pub fn as_str(self) -> &'static str {
        match self {
            ModeClass::PSqueezed => "P-squeezed",
            ModeClass::XSqueezed => "X-squeezed",
            ModeClass::Constant => "constant",
        }
    }
}

/// Spectral decomposition of a coupling matrix, eigenvalues sorted descending.
#[derive(Debug, Clone)]
pub struct EigenmodeReport {
    pub eigenvalues: DVector<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `eigenvalues`.
    pub eigenvectors: DMatrix<f64>,
    pub classes: Vec<ModeClass>,
}

/// One entry of an [`EigenmodeReport`].
#[derive(Debug, Clone)]
pub struct Eigenmode {
    pub eigenvalue: f64,
    pub vector: DVector<f64>,
    pub class: ModeClass,
}

impl Eigenmode {
    /// The quadrature combination that is squeezed (`vᵀX` for constant modes).
    pub fn squeezed_quadrature(&self) -> JointQuadrature {
        let zero = DVector::zeros(self.vector.len());
        match self.class {
            ModeClass::PSqueezed => JointQuadrature::new(zero, self.vector.clone()),
            ModeClass::XSqueezed | ModeClass::Constant => JointQuadrature::new(self.vector.clone(), zero),
        }
        .expect("unit eigenvector is a valid quadrature")
    }

    /// The conjugate (anti-squeezed) quadrature combination.
    pub fn antisqueezed_quadrature(&self) -> JointQuadrature {
        let zero = DVector::zeros(self.vector.len());
        match self.class {
            ModeClass::PSqueezed => JointQuadrature::new(self.vector.clone(), zero),
            ModeClass::XSqueezed | ModeClass::Constant => JointQuadrature::new(zero, self.vector.clone()),
        }
        .expect("unit eigenvector is a valid quadrature")
    }

    pub fn squeezing_rate(&self) -> f64 {
        match self.class {
            ModeClass::Constant => 0.0,
            _ => self.eigenvalue.abs(),
        }
    }

    /// Variance of the squeezed quadrature at time `t` for a vacuum input.
    pub fn vacuum_variance(&self, t: f64) -> f64 {
        0.5 * (-2.0 * self.squeezing_rate() * t).exp()
    }
}

impl EigenmodeReport {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn mode(&self, k: usize) -> Eigenmode {
        Eigenmode {
            eigenvalue: self.eigenvalues[k],
            vector: self.eigenvectors.column(k).into_owned(),
            class: self.classes[k],
        }
    }

    pub fn modes(&self) -> impl Iterator<Item = Eigenmode> + '_ {
        (0..self.len()).map(|k| self.mode(k))
    }

    pub fn count(&self, class: ModeClass) -> usize {
        self.classes.iter().filter(|&&c| c == class).count()
    }

    /// `V·diag(λ)·Vᵀ`.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        &self.eigenvectors * DMatrix::from_diagonal(&self.eigenvalues) * self.eigenvectors.transpose()
    }
}

pub(crate) fn symmetric_eigen(m: &DMatrix<f64>) -> Result<(DVector<f64>, DMatrix<f64>)> {
    let eig = SymmetricEigen::try_new(m.clone(), EIGEN_EPS, EIGEN_MAX_ITER)
        .ok_or_else(|| Error::Numeric("symmetric eigensolver did not converge".into()))?;
    Ok((eig.eigenvalues, eig.eigenvectors))
}

/// Full eigen-decomposition of `g` with each eigenvalue classified.
///
/// `zero_tol` is relative to the spectral radius; an all-zero matrix yields
/// only constant modes. Eigenvectors are sign-normalized so that their first
/// non-negligible component is positive.
pub fn eigenmodes(g: &CouplingMatrix, zero_tol: f64) -> Result<EigenmodeReport> {
    if !(zero_tol >= 0.0) {
        return Err(Error::invalid(format!("zero tolerance must be >= 0, got {zero_tol}")));
    }
    let n = g.size();
    let (values, vectors) = symmetric_eigen(g.entries())?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));

    let radius = values.amax();
    let eigenvalues = DVector::from_iterator(n, order.iter().map(|&k| values[k]));
    let mut eigenvectors = DMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = vectors.column(src).into_owned();
        if let Some(first) = col.iter().copied().find(|v| v.abs() > 1e-12) {
            if first < 0.0 {
                col.neg_mut();
            }
        }
        eigenvectors.set_column(dst, &col);
    }
    let classes = eigenvalues
        .iter()
        .map(|&lambda| {
            if lambda.abs() <= zero_tol * radius || radius == 0.0 {
                ModeClass::Constant
            } else if lambda > 0.0 {
                ModeClass::PSqueezed
            } else {
                ModeClass::XSqueezed
            }
        })
        .collect();

    Ok(EigenmodeReport { eigenvalues, eigenvectors, classes })
}
