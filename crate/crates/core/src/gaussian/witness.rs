use super::state::{joint_variance, GaussianState, JointQuadrature};
use crate::error::{Error, Result};

/// Separability bound for the pair witness with unit gains (vacuum
/// variance 1/2 convention).
pub const DEFAULT_WITNESS_THRESHOLD: f64 = 1.0;

/// Pair inseparability witness
/// `Var(Xᵢ − Xⱼ) + Var(Pᵢ + Pⱼ + Σₖ gₖPₖ)`, where `k` runs over the
/// remaining modes in ascending order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub threshold: f64,
}

impl Default for Witness {
    fn default() -> Self {
        Self { threshold: DEFAULT_WITNESS_THRESHOLD }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessValue {
    pub value: f64,
    pub threshold: f64,
}

impl WitnessValue {
    pub fn violated(&self) -> bool {
        self.value < self.threshold
    }
}

impl Witness {
    pub fn evaluate(&self, state: &GaussianState, i: usize, j: usize, gains: &[f64]) -> Result<WitnessValue> {
        let n = state.mode_count();
        if i == j {
            return Err(Error::invalid("witness pair needs two distinct modes"));
        }
        if i >= n || j >= n {
            return Err(Error::invalid(format!("mode pair ({i}, {j}) out of range for N = {n}")));
        }
        if gains.len() != n - 2 {
            return Err(Error::invalid(format!(
                "expected {} gains (one per remaining mode), got {}",
                n - 2,
                gains.len()
            )));
        }
        let x_diff = JointQuadrature::x_difference(n, i, j)?;
        let mut p = vec![0.0; n];
        p[i] = 1.0;
        p[j] = 1.0;
        for (k, g) in (0..n).filter(|&k| k != i && k != j).zip(gains) {
            p[k] = *g;
        }
        let p_sum = JointQuadrature::p_only(&p)?;
        let value = joint_variance(state, &x_diff)? + joint_variance(state, &p_sum)?;
        Ok(WitnessValue { value, threshold: self.threshold })
    }
}

/// [`Witness::evaluate`] with the default threshold (0-based mode indices).
pub fn witness_pair(state: &GaussianState, i: usize, j: usize, gains: &[f64]) -> Result<WitnessValue> {
    Witness::default().evaluate(state, i, j, gains)
}
