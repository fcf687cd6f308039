use std::f64::consts::PI;
use std::fmt::Write as _;

use super::interaction::{bare_mismatch, QpmInteraction};
use super::sellmeier::SellmeierSet;
use crate::error::{Error, Result};
use crate::format::fmt12;

/// `sin(x)/x`, with the removable singularity filled in.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-8 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// A local maximum of a tuning curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub temperature: f64,
    /// 0 for the main lobe, ±j for the j-th side lobe; the sign follows
    /// that of `Δk`.
    pub lobe: i32,
    pub value: f64,
}

/// SHG power versus temperature, `d_eff²·L²·sinc²(Δk·L/2)` with `d_eff` in
/// pm/V and `L` in mm (pump power and focusing constants dropped).
#[derive(Debug, Clone, PartialEq)]
pub struct TuningCurve {
    pub temperatures: Vec<f64>,
    pub power: Vec<f64>,
    /// Sorted by temperature.
    pub peaks: Vec<Peak>,
    pub length_mm: f64,
    pub period_um: f64,
    /// `d_eff²·L²`, the value at exact phase matching.
    pub peak_power: f64,
}

impl TuningCurve {
    pub fn main_peak(&self) -> Option<&Peak> {
        self.peaks.iter().filter(|p| p.lobe == 0).max_by(|a, b| a.value.total_cmp(&b.value))
    }

    /// Full width at half maximum of the main lobe, interpolated linearly
    /// between samples.
    pub fn main_lobe_fwhm(&self) -> Option<f64> {
        let peak = self.main_peak()?;
        let half = 0.5 * peak.value;
        let t = &self.temperatures;
        let p = &self.power;
        let centre = t.iter().position(|&x| x >= peak.temperature)?;
        let mut right = None;
        for k in centre.max(1)..t.len() {
            if p[k] < half && p[k - 1] >= half {
                right = Some(t[k - 1] + (half - p[k - 1]) / (p[k] - p[k - 1]) * (t[k] - t[k - 1]));
                break;
            }
        }
        let mut left = None;
        for k in (1..=centre.min(t.len() - 1)).rev() {
            if p[k - 1] < half && p[k] >= half {
                left = Some(t[k - 1] + (half - p[k - 1]) / (p[k] - p[k - 1]) * (t[k] - t[k - 1]));
                break;
            }
        }
        Some(right? - left?)
    }

    /// Power relative to exact phase matching, `sinc²(Δk·L/2)`.
    pub fn normalized_power(&self) -> Vec<f64> {
        self.power.iter().map(|p| p / self.peak_power).collect()
    }

    /// CSV with header `temperature_C,power_normalized` (relative to exact
    /// phase matching), then one `#peak,T,lobe,relative,absolute` comment
    /// line per peak.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("temperature_C,power_normalized\n");
        for (t, p) in self.temperatures.iter().zip(self.normalized_power()) {
            let _ = writeln!(out, "{},{}", fmt12(*t), fmt12(p));
        }
        for pk in &self.peaks {
            let _ = writeln!(
                out,
                "#peak,{},{},{},{}",
                fmt12(pk.temperature),
                pk.lobe,
                fmt12(pk.value / self.peak_power),
                fmt12(pk.value)
            );
        }
        out
    }
}

/// `Δk·L/2` (dimensionless) with `L` in mm.
pub(crate) fn half_phase(s: &SellmeierSet, q: &QpmInteraction, period: f64, length_mm: f64, temp: f64) -> Result<f64> {
    Ok((bare_mismatch(s, q, temp)? - q.grating_k(period)) * length_mm * 500.0)
}

pub(crate) fn curve_power(q: &QpmInteraction, length_mm: f64, x: f64) -> f64 {
    let a = q.d_eff() * length_mm * sinc(x);
    a * a
}

fn lobe_of(x: f64) -> i32 {
    let j = (x.abs() / PI).floor() as i32;
    if x < 0.0 {
        -j
    } else {
        j
    }
}

/// Samples the tuning curve at `steps` evenly spaced temperatures across
/// `t_range` (inclusive) and locates its lobes.
pub fn shg_curve(
    s: &SellmeierSet,
    q: &QpmInteraction,
    period: f64,
    length_mm: f64,
    t_range: (f64, f64),
    steps: usize,
) -> Result<TuningCurve> {
    if steps < 2 {
        return Err(Error::invalid(format!("a tuning curve needs at least 2 steps, got {steps}")));
    }
    if !(length_mm > 0.0) || !length_mm.is_finite() {
        return Err(Error::invalid(format!("crystal length must be positive, got {length_mm}")));
    }
    if !(period > 0.0) || !period.is_finite() {
        return Err(Error::invalid(format!("poling period must be positive, got {period}")));
    }
    let (t0, t1) = t_range;
    if !(t1 > t0) {
        return Err(Error::invalid(format!("empty temperature range [{t0}, {t1}]")));
    }
    s.check_temperature(t0)?;
    s.check_temperature(t1)?;

    let h = (t1 - t0) / (steps - 1) as f64;
    let temperatures: Vec<f64> = (0..steps).map(|k| if k + 1 == steps { t1 } else { t0 + h * k as f64 }).collect();
    let power = temperatures
        .iter()
        .map(|&t| Ok(curve_power(q, length_mm, half_phase(s, q, period, length_mm, t)?)))
        .collect::<Result<Vec<_>>>()?;

    let mut peaks = Vec::new();
    for k in 1..steps - 1 {
        let (a, b, c) = (power[k - 1], power[k], power[k + 1]);
        if !(b > a && b >= c) {
            continue;
        }
        let denom = a - 2.0 * b + c;
        let shift = if denom < 0.0 { (0.5 * (a - c) / denom).clamp(-0.5, 0.5) } else { 0.0 };
        let temperature = temperatures[k] + shift * h;
        let x = half_phase(s, q, period, length_mm, temperature)?;
        peaks.push(Peak { temperature, lobe: lobe_of(x), value: curve_power(q, length_mm, x) });
    }
    let l = q.d_eff() * length_mm;
    Ok(TuningCurve { temperatures, power, peaks, length_mm, period_um: period, peak_power: l * l })
}
