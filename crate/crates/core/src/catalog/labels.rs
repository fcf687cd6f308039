use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarization {
    Y,
    Z,
}

impl Polarization {
    pub fn as_char(self) -> char {
        match self {
            Polarization::Y => 'y',
            Polarization::Z => 'z',
        }
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Polarization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "y" | "Y" => Ok(Polarization::Y),
            "z" | "Z" => Ok(Polarization::Z),
            other => Err(Error::Parse(format!("unknown polarization {other:?}"))),
        }
    }
}

/// χ⁽²⁾ tensor element, written pump polarization first.
///
/// `Yzy` couples a y-polarized pump to one y and one z photon, `Zzz` a z pump
/// to two z photons, and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorLabel {
    Yzy,
    Zzz,
    Yyy,
    Yzz,
    Zyy,
}

impl TensorLabel {
    pub const ALL: [TensorLabel; 5] =
        [TensorLabel::Yzy, TensorLabel::Zzz, TensorLabel::Yyy, TensorLabel::Yzz, TensorLabel::Zyy];

    pub fn pump_polarization(self) -> Polarization {
        match self {
            TensorLabel::Yzy | TensorLabel::Yyy | TensorLabel::Yzz => Polarization::Y,
            TensorLabel::Zzz | TensorLabel::Zyy => Polarization::Z,
        }
    }

    /// Polarizations of the two downconverted photons (unordered).
    pub fn photon_polarizations(self) -> (Polarization, Polarization) {
        use Polarization::*;
        match self {
            TensorLabel::Yzy => (Y, Z),
            TensorLabel::Zzz | TensorLabel::Yzz => (Z, Z),
            TensorLabel::Yyy | TensorLabel::Zyy => (Y, Y),
        }
    }

    /// Whether a pump of polarization `pump` can drive photons `a`, `b`.
    pub fn couples(self, pump: Polarization, a: Polarization, b: Polarization) -> bool {
        let (p, q) = self.photon_polarizations();
        pump == self.pump_polarization() && ((a, b) == (p, q) || (a, b) == (q, p))
    }

    pub fn as_str(self) -> &'static str {
        match self {
            TensorLabel::Yzy => "yzy",
            TensorLabel::Zzz => "zzz",
            TensorLabel::Yyy => "yyy",
            TensorLabel::Yzz => "yzz",
            TensorLabel::Zyy => "zyy",
        }
    }
}

impl fmt::Display for TensorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TensorLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TensorLabel::ALL
            .into_iter()
            .find(|l| l.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown tensor label {s:?}")))
    }
}

/// Cavity mode at `ω₀ + freq_index·Δ` with a given polarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModeLabel {
    pub freq_index: i32,
    pub polarization: Polarization,
}

impl ModeLabel {
    pub fn new(freq_index: i32, polarization: Polarization) -> Self {
        Self { freq_index, polarization }
    }

    pub fn y(freq_index: i32) -> Self {
        Self::new(freq_index, Polarization::Y)
    }

    pub fn z(freq_index: i32) -> Self {
        Self::new(freq_index, Polarization::Z)
    }
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.polarization, self.freq_index)
    }
}

/// Undepleted pump at `2ω₀ + freq_index·Δ`.
///
/// The amplitude is a non-negative real; the frozen pump phase (0 or π) is
/// carried by `phase_flipped`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PumpField {
    pub freq_index: i32,
    pub polarization: Polarization,
    pub amplitude: f64,
    #[serde(default)]
    pub phase_flipped: bool,
}

impl PumpField {
    pub fn new(freq_index: i32, polarization: Polarization, amplitude: f64) -> Result<Self> {
        if !(amplitude >= 0.0) || !amplitude.is_finite() {
            return Err(Error::invalid(format!("pump amplitude must be finite and >= 0, got {amplitude}")));
        }
        Ok(Self { freq_index, polarization, amplitude, phase_flipped: false })
    }

    /// Identity of the pump field irrespective of its amplitude.
    pub fn key(&self) -> (i32, Polarization) {
        (self.freq_index, self.polarization)
    }

    pub fn sign(&self) -> f64 {
        if self.phase_flipped {
            -1.0
        } else {
            1.0
        }
    }
}

impl fmt::Display for PumpField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.freq_index, self.polarization)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChiElement {
    pub label: TensorLabel,
    pub value: f64,
    #[serde(default = "default_true")]
    pub phase_matched: bool,
}

fn default_true() -> bool {
    true
}

impl ChiElement {
    pub fn new(label: TensorLabel, value: f64, phase_matched: bool) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::invalid(format!("chi value for {label} must be finite")));
        }
        Ok(Self { label, value, phase_matched })
    }

    pub fn matched(label: TensorLabel, value: f64) -> Result<Self> {
        Self::new(label, value, true)
    }
}

/// One downconversion term `i κ a_A† a_B† + H.c.` (degenerate when A = B).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InteractionTerm {
    pub mode_a: ModeLabel,
    pub mode_b: ModeLabel,
    pub pump: PumpField,
    pub chi: ChiElement,
    /// Signed rate `sign·β·χ`.
    pub strength: f64,
}

impl InteractionTerm {
    pub fn new(mode_a: ModeLabel, mode_b: ModeLabel, pump: PumpField, chi: ChiElement) -> Result<Self> {
        if pump.freq_index != mode_a.freq_index + mode_b.freq_index {
            return Err(Error::invalid(format!(
                "pump {pump} does not conserve energy for modes {mode_a}, {mode_b}"
            )));
        }
        if !chi.label.couples(pump.polarization, mode_a.polarization, mode_b.polarization) {
            return Err(Error::invalid(format!(
                "{} cannot couple pump {pump} to modes {mode_a}, {mode_b}",
                chi.label
            )));
        }
        let (mode_a, mode_b) = if mode_b < mode_a { (mode_b, mode_a) } else { (mode_a, mode_b) };
        Ok(Self { mode_a, mode_b, pump, chi, strength: pump.sign() * pump.amplitude * chi.value })
    }

    pub fn is_degenerate(&self) -> bool {
        self.mode_a == self.mode_b
    }

    /// Recomputes the strength for a new pump amplitude.
    pub fn with_pump(mut self, pump: PumpField) -> Self {
        self.pump = pump;
        self.strength = pump.sign() * pump.amplitude * self.chi.value;
        self
    }
}
