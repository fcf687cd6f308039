//! Quasi-phase-matching design: refractive indices, phase mismatch, poling
//! periods, SHG temperature tuning curves and the search for poling periods
//! where two interactions phase-match at one temperature.
//!
//! Units: wavelengths and periods in µm, wave vectors in rad/µm, crystal
//! lengths in mm, temperatures in °C, nonlinear coefficients in pm/V.

mod concur;
mod curve;
mod interaction;
mod sellmeier;

pub use crate::catalog::TensorLabel;
pub use concur::{find_concurrences, lobe_temperature, sidelobe_argument, Concurrence, ConcurrenceOptions};
pub use curve::{shg_curve, sinc, Peak, TuningCurve};
pub use interaction::{delta_k, peak_ratio, phase_matching_temperature, qpm_period, QpmInteraction};
pub use sellmeier::{refractive_index, AxisCoefficients, SellmeierSet, SHIPPED_RTA_TOML};
