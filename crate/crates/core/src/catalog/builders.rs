use super::graph::{enumerate_terms, CouplingGraph};
use super::labels::{ChiElement, InteractionTerm, ModeLabel, Polarization, PumpField, TensorLabel};
use crate::error::{Error, Result};
use crate::gaussian::CouplingMatrix;

/// Relative nonlinear coefficients used by the experimental builders when
/// none are supplied: yzy, zzz and yyy (the latter from a z-cut crystal
/// rotated by 90°), in units of the yzy element.
pub fn default_chis() -> Vec<ChiElement> {
    vec![
        ChiElement { label: TensorLabel::Yzy, value: 1.0, phase_matched: true },
        ChiElement { label: TensorLabel::Zzz, value: 3.7268, phase_matched: true },
        ChiElement { label: TensorLabel::Yyy, value: 3.7268, phase_matched: true },
    ]
}

/// Pump amplitudes that bring every term to `|β·χ| = kappa`.
///
/// One entry per distinct pump, in order of first appearance in `terms`.
/// Terms sharing a pump must carry the same signed χ; otherwise no single
/// amplitude serves them all and the pump is reported as unbalanceable.
pub fn balance_pumps(terms: &[InteractionTerm], kappa: f64) -> Result<Vec<PumpField>> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::invalid(format!("target kappa must be positive, got {kappa}")));
    }
    let mut out: Vec<(PumpField, f64)> = Vec::new();
    for term in terms {
        let chi = term.chi.value;
        if chi == 0.0 {
            return Err(Error::invalid(format!("term {}–{} has zero chi", term.mode_a, term.mode_b)));
        }
        match out.iter().find(|(p, _)| p.key() == term.pump.key()) {
            Some((pump, shared)) => {
                if (shared - chi).abs() > 1e-12 * shared.abs().max(chi.abs()) {
                    return Err(Error::Unbalanceable {
                        pump: pump.to_string(),
                        reason: format!("drives terms with chi {shared} and {chi}"),
                    });
                }
            }
            None => {
                let mut pump = term.pump;
                pump.amplitude = kappa / chi.abs();
                out.push((pump, chi));
            }
        }
    }
    Ok(out.into_iter().map(|(p, _)| p).collect())
}

/// Result of an experimental builder.
#[derive(Debug, Clone)]
pub struct ExperimentalBuild {
    /// Every term the pumps drive among the modes, contaminants included.
    pub graph: CouplingGraph,
    pub coupling: CouplingMatrix,
    /// Balanced pump fields, in design order.
    pub pumps: Vec<PumpField>,
    /// Terms beyond the intended complete graph.
    pub contaminants: Vec<InteractionTerm>,
}

impl ExperimentalBuild {
    pub fn is_contaminated(&self) -> bool {
        !self.contaminants.is_empty()
    }
}

type DesignTerm = (ModeLabel, ModeLabel, (i32, Polarization), TensorLabel);

fn build_design(
    modes: &[ModeLabel],
    pump_keys: &[(i32, Polarization)],
    design: &[DesignTerm],
    chis: &[ChiElement],
    kappa: f64,
) -> Result<ExperimentalBuild> {
    if !(kappa > 0.0) || !kappa.is_finite() {
        return Err(Error::invalid(format!("target kappa must be positive, got {kappa}")));
    }
    let unit_pumps: Vec<PumpField> =
        pump_keys.iter().map(|&(f, p)| PumpField::new(f, p, 1.0)).collect::<Result<_>>()?;
    let raw = enumerate_terms(modes, &unit_pumps, chis)?;

    let is_design = |e: &InteractionTerm| {
        design.iter().any(|&(a, b, key, label)| {
            let (a, b) = if b < a { (b, a) } else { (a, b) };
            e.mode_a == a && e.mode_b == b && e.pump.key() == key && e.chi.label == label
        })
    };
    let intended: Vec<InteractionTerm> = raw.edges().iter().copied().filter(|e| is_design(e)).collect();
    if intended.len() != design.len() {
        return Err(Error::NoSolution(format!(
            "only {} of {} design terms are phase-matched with the given chi set",
            intended.len(),
            design.len()
        )));
    }
    let balanced = balance_pumps(&intended, kappa)?;
    let pumps: Vec<PumpField> = pump_keys
        .iter()
        .map(|k| *balanced.iter().find(|p| p.key() == *k).expect("every design pump drives a term"))
        .collect();

    let edges: Vec<InteractionTerm> = raw
        .edges()
        .iter()
        .map(|e| e.with_pump(*pumps.iter().find(|p| p.key() == e.pump.key()).expect("known pump")))
        .collect();
    let contaminants = edges.iter().copied().filter(|e| !is_design(e)).collect();
    let graph = CouplingGraph::new(modes.to_vec(), edges)?;
    let coupling = graph.coupling_matrix()?;
    Ok(ExperimentalBuild { graph, coupling, pumps, contaminants })
}

/// Three-mode entangler from concurrent zzz and yzy downconversion.
///
/// Modes `a_y(ω₀), a_z(ω₀), a_z(ω₁)`; pumps `β_y(2ω₀)`, `β_y(ω₀+ω₁)`,
/// `β_z(ω₀+ω₁)`.
pub fn build_h3_experimental(kappa: f64) -> Result<ExperimentalBuild> {
    let chis: Vec<ChiElement> =
        default_chis().into_iter().filter(|c| c.label != TensorLabel::Yyy).collect();
    build_h3_experimental_with(kappa, &chis)
}

pub fn build_h3_experimental_with(kappa: f64, chis: &[ChiElement]) -> Result<ExperimentalBuild> {
    use Polarization::*;
    let (y0, z0, z1) = (ModeLabel::y(0), ModeLabel::z(0), ModeLabel::z(1));
    let pumps = [(0, Y), (1, Y), (1, Z)];
    let design = [
        (y0, z0, (0, Y), TensorLabel::Yzy),
        (y0, z1, (1, Y), TensorLabel::Yzy),
        (z0, z1, (1, Z), TensorLabel::Zzz),
    ];
    build_design(&[y0, z0, z1], &pumps, &design, chis, kappa)
}

/// Four-mode entangler from yzy, zzz and yyy over equally spaced modes
/// `a_y(ω₀), a_z(ω₁), a_y(ω₂), a_z(ω₃)` with five pumps; the `ω₁+ω₂`
/// pump drives two terms.
pub fn build_h4_experimental(kappa: f64) -> Result<ExperimentalBuild> {
    build_h4_experimental_with(kappa, &default_chis())
}

pub fn build_h4_experimental_with(kappa: f64, chis: &[ChiElement]) -> Result<ExperimentalBuild> {
    use Polarization::*;
    let (y0, z1, y2, z3) = (ModeLabel::y(0), ModeLabel::z(1), ModeLabel::y(2), ModeLabel::z(3));
    let pumps = [(1, Y), (2, Y), (3, Y), (4, Z), (5, Y)];
    let design = [
        (y0, z1, (1, Y), TensorLabel::Yzy),
        (y0, y2, (2, Y), TensorLabel::Yyy),
        (z1, y2, (3, Y), TensorLabel::Yzy),
        (y0, z3, (3, Y), TensorLabel::Yzy),
        (z1, z3, (4, Z), TensorLabel::Zzz),
        (y2, z3, (5, Y), TensorLabel::Yzy),
    ];
    build_design(&[y0, z1, y2, z3], &pumps, &design, chis, kappa)
}

/// Single-polarization comb `k_lo..=k_hi` driven by one pump at
/// `2ω₀ + pump_index·Δ` (even index: degenerate case, odd: nondegenerate).
pub fn singly_pumped_graph(k_lo: i32, k_hi: i32, pump_index: i32, pol: Polarization, beta: f64) -> Result<CouplingGraph> {
    if k_hi < k_lo {
        return Err(Error::invalid("empty comb range"));
    }
    let modes: Vec<ModeLabel> = (k_lo..=k_hi).map(|k| ModeLabel::new(k, pol)).collect();
    let label = match pol {
        Polarization::Y => TensorLabel::Yyy,
        Polarization::Z => TensorLabel::Zzz,
    };
    let pump = PumpField::new(pump_index, pol, beta)?;
    enumerate_terms(&modes, &[pump], &[ChiElement::matched(label, 1.0)?])
}
