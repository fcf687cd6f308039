use std::f64::consts::{PI, TAU};

use super::sellmeier::SellmeierSet;
use crate::catalog::TensorLabel;
use crate::error::{Error, Result};

/// Quasi-phase-matched SHG of `fundamental` through one tensor element at
/// grating order `order` (odd, 50% duty cycle).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QpmInteraction {
    pub label: TensorLabel,
    /// Fundamental vacuum wavelength, µm.
    pub fundamental: f64,
    pub order: u32,
    /// Relevant tensor element, pm/V.
    pub d_coefficient: f64,
}

impl QpmInteraction {
    pub fn new(label: TensorLabel, fundamental: f64, order: u32, d_coefficient: f64) -> Result<Self> {
        if !matches!(label, TensorLabel::Yzy | TensorLabel::Zzz | TensorLabel::Yyy) {
            return Err(Error::invalid(format!("QPM interactions support yzy, zzz and yyy, not {label}")));
        }
        if order == 0 || order.is_multiple_of(2) {
            return Err(Error::invalid(format!("QPM order must be odd and positive, got {order}")));
        }
        if !(fundamental > 0.0) || !fundamental.is_finite() {
            return Err(Error::invalid(format!("fundamental wavelength must be positive, got {fundamental}")));
        }
        if !d_coefficient.is_finite() {
            return Err(Error::invalid("d coefficient must be finite"));
        }
        Ok(Self { label, fundamental, order, d_coefficient })
    }

    /// Takes `d` from the dataset's nonlinear section.
    pub fn from_dataset(set: &SellmeierSet, label: TensorLabel, fundamental: f64, order: u32) -> Result<Self> {
        let d = set
            .nonlinear_coefficient(label)
            .ok_or_else(|| Error::invalid(format!("dataset has no nonlinear coefficient for {label}")))?;
        Self::new(label, fundamental, order, d)
    }

    /// `2d/(mπ)`.
    pub fn d_eff(&self) -> f64 {
        2.0 * self.d_coefficient / (self.order as f64 * PI)
    }

    /// Grating vector magnitude `2πm/Λ`.
    pub fn grating_k(&self, period: f64) -> f64 {
        TAU * self.order as f64 / period
    }
}

/// `k_pump − k_signal − k_idler` without any grating contribution.
pub(crate) fn bare_mismatch(s: &SellmeierSet, q: &QpmInteraction, temp: f64) -> Result<f64> {
    let lf = q.fundamental;
    let lp = lf / 2.0;
    s.check_wavelength(lf)?;
    s.check_wavelength(lp)?;
    s.check_temperature(temp)?;
    let (a, b) = q.label.photon_polarizations();
    let k = |pol, lambda: f64| TAU * s.index_unchecked(pol, lambda, temp) / lambda;
    Ok(k(q.label.pump_polarization(), lp) - k(a, lf) - k(b, lf))
}

/// Phase mismatch `Δk = k_p − k_s − k_i − 2πm/Λ` in rad/µm.
pub fn delta_k(s: &SellmeierSet, q: &QpmInteraction, period: f64, temp: f64) -> Result<f64> {
    if !(period > 0.0) || !period.is_finite() {
        return Err(Error::invalid(format!("poling period must be positive, got {period}")));
    }
    Ok(bare_mismatch(s, q, temp)? - q.grating_k(period))
}

/// Poling period that zeroes `Δk` at `temp`.
pub fn qpm_period(s: &SellmeierSet, q: &QpmInteraction, temp: f64) -> Result<f64> {
    let bare = bare_mismatch(s, q, temp)?;
    if !(bare > 0.0) {
        return Err(Error::NoSolution(format!(
            "{} bare mismatch {bare} rad/um is not positive at {temp} C",
            q.label
        )));
    }
    Ok(TAU * q.order as f64 / bare)
}

/// Temperature in `t_range` where `Δk = 0` for a fixed period.
pub fn phase_matching_temperature(s: &SellmeierSet, q: &QpmInteraction, period: f64, t_range: (f64, f64)) -> Result<f64> {
    let f = |t: f64| delta_k(s, q, period, t);
    bisect(&f, t_range.0, t_range.1)?.ok_or_else(|| {
        Error::NoSolution(format!(
            "{} does not phase-match between {} and {} C at period {period} um",
            q.label, t_range.0, t_range.1
        ))
    })
}

/// Root of `f` in `[lo, hi]` when the endpoints bracket one.
pub(crate) fn bisect(f: &dyn Fn(f64) -> Result<f64>, lo: f64, hi: f64) -> Result<Option<f64>> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a)?, f(b)?);
    if fa == 0.0 {
        return Ok(Some(a));
    }
    if fb == 0.0 {
        return Ok(Some(b));
    }
    if fa.signum() == fb.signum() {
        return Ok(None);
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(Some(mid));
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(Some(0.5 * (a + b)))
}

/// Ratio of ideal peak SHG powers, `(d_eff(q1)/d_eff(q2))² = (m₂d₁/(m₁d₂))²`.
pub fn peak_ratio(q1: &QpmInteraction, q2: &QpmInteraction) -> Result<f64> {
    if q1.d_coefficient == 0.0 || q2.d_coefficient == 0.0 {
        return Err(Error::invalid("peak ratio needs nonzero d coefficients"));
    }
    let r = (q2.order as f64 * q1.d_coefficient) / (q1.order as f64 * q2.d_coefficient);
    Ok(r * r)
}
