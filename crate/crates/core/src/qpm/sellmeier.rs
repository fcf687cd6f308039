use serde::Deserialize;

use crate::catalog::{Polarization, TensorLabel};
use crate::error::{Error, Result};

/// The bundled RTA-class dataset.
pub const SHIPPED_RTA_TOML: &str = include_str!("../../data/rta.toml");

/// Dispersion and thermo-optic coefficients for one crystal axis.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisCoefficients {
    /// `[A, B, C, D]` of `n² = A + B/(λ² − C) − Dλ²`.
    pub sellmeier: [f64; 4],
    /// `dn/dT = Σₖ cₖ λ⁻ᵏ`.
    pub thermo_optic: Vec<f64>,
}

impl AxisCoefficients {
    fn bare_index(&self, lambda: f64) -> f64 {
        let [a, b, c, d] = self.sellmeier;
        let l2 = lambda * lambda;
        (a + b / (l2 - c) - d * l2).sqrt()
    }

    fn dn_dt(&self, lambda: f64) -> f64 {
        self.thermo_optic.iter().enumerate().map(|(k, c)| c * lambda.powi(-(k as i32))).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct Axes {
    y: AxisCoefficients,
    z: AxisCoefficients,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct Nonlinear {
    yzy: Option<f64>,
    zzz: Option<f64>,
    yyy: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSet {
    material: String,
    citation: String,
    reference_temperature_c: f64,
    wavelength_range_um: [f64; 2],
    temperature_range_c: [f64; 2],
    axis: Axes,
    nonlinear: Option<Nonlinear>,
}

/// Temperature-dependent refractive indices of a biaxial crystal for
/// light polarized along y and z.
#[derive(Debug, Clone, PartialEq)]
pub struct SellmeierSet {
    pub material: String,
    pub citation: String,
    pub reference_temperature: f64,
    pub wavelength_range: (f64, f64),
    pub temperature_range: (f64, f64),
    pub y: AxisCoefficients,
    pub z: AxisCoefficients,
    /// Optional nonlinear coefficients (pm/V) keyed by tensor label.
    pub nonlinear: Vec<(TensorLabel, f64)>,
}

impl SellmeierSet {
    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: RawSet = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let mut nonlinear = Vec::new();
        if let Some(nl) = raw.nonlinear {
            for (label, v) in [(TensorLabel::Yzy, nl.yzy), (TensorLabel::Zzz, nl.zzz), (TensorLabel::Yyy, nl.yyy)] {
                if let Some(v) = v {
                    nonlinear.push((label, v));
                }
            }
        }
        let set = Self {
            material: raw.material,
            citation: raw.citation,
            reference_temperature: raw.reference_temperature_c,
            wavelength_range: (raw.wavelength_range_um[0], raw.wavelength_range_um[1]),
            temperature_range: (raw.temperature_range_c[0], raw.temperature_range_c[1]),
            y: raw.axis.y,
            z: raw.axis.z,
            nonlinear,
        };
        set.validate()?;
        Ok(set)
    }

    pub fn from_path(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn shipped_rta() -> Result<Self> {
        Self::from_toml(SHIPPED_RTA_TOML)
    }

    /// Checks ranges, coefficient finiteness and `n > 1` on a grid spanning
    /// the validity box.
    pub fn validate(&self) -> Result<()> {
        let (l0, l1) = self.wavelength_range;
        let (t0, t1) = self.temperature_range;
        if !(l0 > 0.0 && l1 > l0 && l1.is_finite()) {
            return Err(Error::Parse(format!("empty or invalid wavelength range [{l0}, {l1}]")));
        }
        if !(t1 > t0 && t0.is_finite() && t1.is_finite()) {
            return Err(Error::Parse(format!("empty or invalid temperature range [{t0}, {t1}]")));
        }
        if !self.reference_temperature.is_finite() {
            return Err(Error::Parse("reference temperature must be finite".into()));
        }
        for (name, axis) in [("y", &self.y), ("z", &self.z)] {
            if axis.sellmeier.iter().chain(&axis.thermo_optic).any(|v| !v.is_finite()) {
                return Err(Error::Parse(format!("axis {name} has non-finite coefficients")));
            }
            if l0 * l0 <= axis.sellmeier[2] {
                return Err(Error::Parse(format!("axis {name}: Sellmeier pole lies inside the wavelength range")));
            }
        }
        if self.nonlinear.iter().any(|(_, d)| !d.is_finite()) {
            return Err(Error::Parse("nonlinear coefficients must be finite".into()));
        }
        const GRID: usize = 24;
        for i in 0..=GRID {
            let lambda = l0 + (l1 - l0) * i as f64 / GRID as f64;
            for k in 0..=GRID {
                let temp = t0 + (t1 - t0) * k as f64 / GRID as f64;
                for pol in [Polarization::Y, Polarization::Z] {
                    let n = self.index_unchecked(pol, lambda, temp);
                    if !(n > 1.0) {
                        return Err(Error::Parse(format!(
                            "n_{pol}({lambda} um, {temp} C) = {n} is not above 1"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn axis(&self, pol: Polarization) -> &AxisCoefficients {
        match pol {
            Polarization::Y => &self.y,
            Polarization::Z => &self.z,
        }
    }

    pub fn nonlinear_coefficient(&self, label: TensorLabel) -> Option<f64> {
        self.nonlinear.iter().find(|(l, _)| *l == label).map(|(_, d)| *d)
    }

    pub(crate) fn index_unchecked(&self, pol: Polarization, lambda: f64, temp: f64) -> f64 {
        let axis = self.axis(pol);
        axis.bare_index(lambda) + axis.dn_dt(lambda) * (temp - self.reference_temperature)
    }

    pub(crate) fn check_wavelength(&self, lambda: f64) -> Result<()> {
        let (lo, hi) = self.wavelength_range;
        if !(lambda >= lo) {
            return Err(Error::range(format!("wavelength {lambda} um is below the lower bound {lo} um")));
        }
        if !(lambda <= hi) {
            return Err(Error::range(format!("wavelength {lambda} um is above the upper bound {hi} um")));
        }
        Ok(())
    }

    pub(crate) fn check_temperature(&self, temp: f64) -> Result<()> {
        let (lo, hi) = self.temperature_range;
        if !(temp >= lo) {
            return Err(Error::range(format!("temperature {temp} C is below the lower bound {lo} C")));
        }
        if !(temp <= hi) {
            return Err(Error::range(format!("temperature {temp} C is above the upper bound {hi} C")));
        }
        Ok(())
    }
}

/// `n(λ, T) = n₀(λ) + (dn/dT)(λ)·(T − T_ref)` along `axis`.
pub fn refractive_index(s: &SellmeierSet, axis: Polarization, lambda: f64, temp: f64) -> Result<f64> {
    s.check_wavelength(lambda)?;
    s.check_temperature(temp)?;
    Ok(s.index_unchecked(axis, lambda, temp))
}
