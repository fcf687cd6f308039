use nalgebra::{DMatrix, DVector};

use super::coupling::CouplingMatrix;
use super::eigen::symmetric_eigen;
use super::state::GaussianState;
use crate::error::{Error, Result};

/// Largest `|λ_max·t|` accepted by [`propagator`]; anti-squeezed variances
/// grow as `e^{2|λ|t}` and leave double precision not far beyond this.
pub const DEFAULT_EXPONENT_CAP: f64 = 50.0;

/// `Ω = [[0, I], [−I, 0]]` in XXPP ordering.
pub fn symplectic_form(n: usize) -> DMatrix<f64> {
    let mut omega = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        omega[(k, n + k)] = 1.0;
        omega[(n + k, k)] = -1.0;
    }
    omega
}

/// Phase-space propagator `S = blockdiag(e^{Gt}, e^{−Gt})`.
pub fn propagator(g: &CouplingMatrix, t: f64) -> Result<DMatrix<f64>> {
    propagator_with_cap(g, t, DEFAULT_EXPONENT_CAP)
}

/// [`propagator`] with an explicit cap on `|λ_max·t|`.
pub fn propagator_with_cap(g: &CouplingMatrix, t: f64, cap: f64) -> Result<DMatrix<f64>> {
    if !t.is_finite() {
        return Err(Error::invalid(format!("time must be finite, got {t}")));
    }
    let n = g.size();
    let (values, vectors) = symmetric_eigen(g.entries())?;
    if let Some(&worst) = values.iter().max_by(|a, b| a.abs().total_cmp(&b.abs())) {
        if (worst * t).abs() > cap {
            return Err(Error::range(format!(
                "eigenvalue {worst} at t = {t} gives |lambda*t| = {} above the cap {cap}",
                (worst * t).abs()
            )));
        }
    }
    let grow = DMatrix::from_diagonal(&values.map(|l| (l * t).exp()));
    let shrink = DMatrix::from_diagonal(&values.map(|l| (-l * t).exp()));
    let vt = vectors.transpose();
    let x_block = &vectors * grow * &vt;
    let p_block = &vectors * shrink * &vt;

    let mut s = DMatrix::zeros(2 * n, 2 * n);
    s.view_mut((0, 0), (n, n)).copy_from(&x_block);
    s.view_mut((n, n), (n, n)).copy_from(&p_block);
    Ok(s)
}

/// Heisenberg-picture evolution of a Gaussian state under `g` for time `t`.
pub fn evolve(state: &GaussianState, g: &CouplingMatrix, t: f64) -> Result<GaussianState> {
    if state.mode_count() != g.size() {
        return Err(Error::invalid(format!(
            "state has {} modes, coupling matrix has {}",
            state.mode_count(),
            g.size()
        )));
    }
    let s = propagator(g, t)?;
    let mean: DVector<f64> = &s * state.mean();
    let cov = &s * state.cov() * s.transpose();
    let cov = (&cov + cov.transpose()) * 0.5;
    Ok(GaussianState::from_parts_unchecked(mean, cov))
}
