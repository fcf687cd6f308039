//! Scenario files: which coupling matrix to build, the κt grid and what to
//! report.
//!
//! ```toml
//! [scenario]
//! kind = "h3"          # h1 | h2_chain | h3 | hN | h3_experimental |
//!                      # h4_experimental | vlb_transformed | singly_pumped | custom
//! kappa = 1.0
//!
//! [time]
//! kappa_t = [0.0, 0.5] # or: start, stop, steps
//!
//! [witness]
//! pairs = [[1, 2]]     # 1-based; default: every pair
//! threshold = 1.0
//!
//! [[quadrature]]       # optional extra joint quadratures
//! name = "X1mX3"
//! x = [1.0, 0.0, -1.0]
//! ```

use std::path::Path;

use concur_core::catalog::{
    build_h3_experimental_with, build_h4_experimental_with, default_chis, enumerate_terms, singly_pumped_graph, ChiElement,
    CouplingGraph, ModeLabel, Polarization, PumpField, TensorLabel,
};
use concur_core::gaussian::{apply_network, chain_coupling, complete_graph_coupling, make_nsplitter, CouplingMatrix, DEFAULT_WITNESS_THRESHOLD};
use concur_core::{Error, Result};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
pub enum Kind {
    #[serde(rename = "h1")]
    H1,
    #[serde(rename = "h2_chain")]
    H2Chain,
    #[serde(rename = "h3")]
    H3,
    #[serde(rename = "hN")]
    HN,
    #[serde(rename = "h3_experimental")]
    H3Experimental,
    #[serde(rename = "h4_experimental")]
    H4Experimental,
    #[serde(rename = "vlb_transformed")]
    VlbTransformed,
    #[serde(rename = "singly_pumped")]
    SinglyPumped,
    #[serde(rename = "custom")]
    Custom,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::H1 => "h1",
            Kind::H2Chain => "h2_chain",
            Kind::H3 => "h3",
            Kind::HN => "hN",
            Kind::H3Experimental => "h3_experimental",
            Kind::H4Experimental => "h4_experimental",
            Kind::VlbTransformed => "vlb_transformed",
            Kind::SinglyPumped => "singly_pumped",
            Kind::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub kind: Kind,
    #[serde(default = "one")]
    pub kappa: f64,
    /// Mode count for hN, h2_chain and vlb_transformed.
    pub n: Option<usize>,
    /// Explicit coupling matrix for `custom`.
    pub coupling: Option<Vec<Vec<f64>>>,
    /// Frequency indices used by `check` when the scenario has no mode
    /// labels of its own; default `0..N`.
    pub frequencies: Option<Vec<i32>>,
    // singly_pumped
    pub comb: Option<[i32; 2]>,
    pub pump_index: Option<i32>,
    pub polarization: Option<Polarization>,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub kappa_t: Option<Vec<f64>>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub steps: Option<usize>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessSettings {
    #[serde(default = "yes")]
    pub enabled: bool,
    pub pairs: Option<Vec<[usize; 2]>>,
    /// Gains on the remaining modes, in ascending mode order; default 1.
    pub gains: Option<Vec<f64>>,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
}

fn yes() -> bool {
    true
}

fn default_threshold() -> f64 {
    DEFAULT_WITNESS_THRESHOLD
}

impl Default for WitnessSettings {
    fn default() -> Self {
        Self { enabled: true, pairs: None, gains: None, threshold: DEFAULT_WITNESS_THRESHOLD }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureSpec {
    pub name: String,
    pub x: Option<Vec<f64>>,
    pub p: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeSpec {
    pub freq: i32,
    pub pol: Polarization,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PumpSpec {
    pub freq: i32,
    pub pol: Polarization,
    pub amplitude: f64,
    #[serde(default)]
    pub phase_flipped: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChiSpec {
    pub label: TensorLabel,
    pub value: f64,
    #[serde(default = "yes")]
    pub phase_matched: bool,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub time: Option<TimeGrid>,
    #[serde(default)]
    pub witness: WitnessSettings,
    #[serde(default)]
    pub quadrature: Vec<QuadratureSpec>,
    /// Mode, pump and χ tables for `custom` (instead of `coupling`) and to
    /// override the experimental builders' χ values.
    #[serde(default)]
    pub modes: Vec<ModeSpec>,
    #[serde(default)]
    pub pumps: Vec<PumpSpec>,
    #[serde(default)]
    pub chis: Vec<ChiSpec>,
}

/// A scenario turned into a coupling matrix.
#[derive(Debug, Clone)]
pub struct Built {
    pub coupling: CouplingMatrix,
    /// Mode labels when the scenario defines them.
    pub graph: Option<CouplingGraph>,
    pub modes: Vec<ModeLabel>,
    pub contaminants: usize,
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    fn validate(&self) -> Result<()> {
        let s = &self.scenario;
        let invalid = |m: String| Err(Error::InvalidArgument(m));
        if !(s.kappa > 0.0) || !s.kappa.is_finite() {
            return invalid(format!("kappa must be positive, got {}", s.kappa));
        }
        let needs_n = matches!(s.kind, Kind::HN | Kind::VlbTransformed);
        if needs_n && s.n.is_none() {
            return invalid(format!("scenario {} needs n", s.kind.as_str()));
        }
        if !needs_n && s.kind != Kind::H2Chain && s.n.is_some() {
            return invalid(format!("scenario {} does not take n", s.kind.as_str()));
        }
        let custom_tables = !self.modes.is_empty() || !self.pumps.is_empty();
        match s.kind {
            Kind::Custom => match (&s.coupling, custom_tables) {
                (Some(_), true) => return invalid("custom scenario takes either coupling or modes/pumps, not both".into()),
                (None, false) => return invalid("custom scenario needs coupling or modes/pumps/chis tables".into()),
                (None, true) if self.modes.is_empty() || self.chis.is_empty() => {
                    return invalid("custom mode tables need [[modes]] and [[chis]] entries".into())
                }
                _ => {}
            },
            Kind::SinglyPumped => {
                if s.comb.is_none() || s.pump_index.is_none() {
                    return invalid("singly_pumped needs comb = [lo, hi] and pump_index".into());
                }
            }
            _ => {
                if s.coupling.is_some() || custom_tables {
                    return invalid(format!("scenario {} does not take coupling or mode/pump tables", s.kind.as_str()));
                }
            }
        }
        if !matches!(s.kind, Kind::SinglyPumped) && (s.comb.is_some() || s.pump_index.is_some() || s.polarization.is_some()) {
            return invalid("comb, pump_index and polarization belong to singly_pumped".into());
        }
        if !self.chis.is_empty() && !matches!(s.kind, Kind::Custom | Kind::H3Experimental | Kind::H4Experimental) {
            return invalid(format!("scenario {} does not take chis", s.kind.as_str()));
        }
        if let Some(t) = &self.time {
            match (&t.kappa_t, t.start, t.stop, t.steps) {
                (Some(v), None, None, None) => {
                    if v.is_empty() || v.iter().any(|x| !x.is_finite()) {
                        return invalid("time.kappa_t must be a non-empty list of finite values".into());
                    }
                }
                (None, Some(a), Some(b), Some(n)) => {
                    if n < 2 || !(b > a) {
                        return invalid("time grid needs stop > start and steps >= 2".into());
                    }
                }
                _ => return invalid("time takes either kappa_t or start/stop/steps".into()),
            }
        }
        for q in &self.quadrature {
            if q.name.is_empty() || !q.name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return invalid(format!("quadrature name {:?} must be alphanumeric", q.name));
            }
            if q.x.is_none() && q.p.is_none() {
                return invalid(format!("quadrature {} needs x or p coefficients", q.name));
            }
        }
        Ok(())
    }

    /// Grid of κt values; default 0 to 1 in steps of 0.1.
    pub fn kappa_t_grid(&self) -> Vec<f64> {
        match &self.time {
            Some(TimeGrid { kappa_t: Some(v), .. }) => v.clone(),
            Some(TimeGrid { start: Some(a), stop: Some(b), steps: Some(n), .. }) => {
                (0..*n).map(|k| if k + 1 == *n { *b } else { a + (b - a) * k as f64 / (*n - 1) as f64 }).collect()
            }
            _ => (0..=10).map(|k| k as f64 / 10.0).collect(),
        }
    }

    fn chis(&self) -> Result<Vec<ChiElement>> {
        self.chis.iter().map(|c| ChiElement::new(c.label, c.value, c.phase_matched)).collect()
    }

    pub fn build(&self) -> Result<Built> {
        let s = &self.scenario;
        let k = s.kappa;
        let plain = |coupling: CouplingMatrix| -> Result<Built> {
            let n = coupling.size();
            let freqs: Vec<i32> = match &s.frequencies {
                Some(f) if f.len() == n => f.clone(),
                Some(f) => return Err(Error::InvalidArgument(format!("{} frequencies for {n} modes", f.len()))),
                None => (0..n as i32).collect(),
            };
            Ok(Built { coupling, graph: None, modes: freqs.into_iter().map(ModeLabel::z).collect(), contaminants: 0 })
        };
        let graph_built = |graph: CouplingGraph, contaminants: usize| -> Result<Built> {
            let coupling = graph.coupling_matrix()?;
            let modes = graph.vertices().to_vec();
            Ok(Built { coupling, graph: Some(graph), modes, contaminants })
        };
        match s.kind {
            Kind::H1 => plain(complete_graph_coupling(2, k)?),
            Kind::H2Chain => plain(chain_coupling(s.n.unwrap_or(3), k)?),
            Kind::H3 => plain(complete_graph_coupling(3, k)?),
            Kind::HN => plain(complete_graph_coupling(s.n.expect("validated"), k)?),
            Kind::VlbTransformed => {
                let n = s.n.expect("validated");
                let mut diag = vec![k; n];
                if let Some(first) = diag.first_mut() {
                    *first = -k;
                }
                plain(apply_network(&CouplingMatrix::from_diagonal(&diag)?, &make_nsplitter(n)?)?)
            }
            Kind::H3Experimental | Kind::H4Experimental => {
                let chis = if self.chis.is_empty() {
                    let mut c = default_chis();
                    if s.kind == Kind::H3Experimental {
                        c.retain(|c| c.label != TensorLabel::Yyy);
                    }
                    c
                } else {
                    self.chis()?
                };
                let b = if s.kind == Kind::H3Experimental {
                    build_h3_experimental_with(k, &chis)?
                } else {
                    build_h4_experimental_with(k, &chis)?
                };
                graph_built(b.graph, b.contaminants.len())
            }
            Kind::SinglyPumped => {
                let [lo, hi] = s.comb.expect("validated");
                let g = singly_pumped_graph(lo, hi, s.pump_index.expect("validated"), s.polarization.unwrap_or(Polarization::Z), k)?;
                graph_built(g, 0)
            }
            Kind::Custom => match &s.coupling {
                Some(rows) => plain(CouplingMatrix::from_rows(rows)?),
                None => {
                    let modes: Vec<ModeLabel> = self.modes.iter().map(|m| ModeLabel::new(m.freq, m.pol)).collect();
                    let pumps = self
                        .pumps
                        .iter()
                        .map(|p| {
                            let mut f = PumpField::new(p.freq, p.pol, p.amplitude)?;
                            f.phase_flipped = p.phase_flipped;
                            Ok(f)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    graph_built(enumerate_terms(&modes, &pumps, &self.chis()?)?, 0)
                }
            },
        }
    }
}
