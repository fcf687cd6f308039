use super::labels::ModeLabel;
use crate::error::{Error, Result};
use crate::gaussian::CouplingMatrix;

/// Nonzero coupling entries that would share the pump at
/// `2ω₀ + pump_index·Δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PumpGroup {
    pub pump_index: i32,
    /// `(i, j, Gᵢⱼ)` with `i <= j`.
    pub entries: Vec<(usize, usize, f64)>,
}

impl PumpGroup {
    pub fn has_mixed_signs(&self) -> bool {
        self.entries.iter().any(|e| e.2 > 0.0) && self.entries.iter().any(|e| e.2 < 0.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealizabilityVerdict {
    pub groups: Vec<PumpGroup>,
    /// Groups whose entries need opposite interaction phases.
    pub conflicts: Vec<PumpGroup>,
}

impl RealizabilityVerdict {
    pub fn is_realizable(&self) -> bool {
        self.conflicts.is_empty()
    }
}

/// Checks whether a signed coupling matrix can come from concurrent
/// downconversion with frozen pump phases.
///
/// All terms driven by one pump inherit that pump's phase, so inside each
/// pump-frequency group (`k_i + k_j`) the nonzero entries must agree in
/// sign.
pub fn realizability_check(desired: &CouplingMatrix, modes: &[ModeLabel]) -> Result<RealizabilityVerdict> {
    let n = desired.size();
    if modes.len() != n {
        return Err(Error::invalid(format!("{} mode labels for a {n}x{n} coupling matrix", modes.len())));
    }
    let floor = 1e-12 * desired.entries().amax();
    let mut groups: Vec<PumpGroup> = Vec::new();
    for i in 0..n {
        for j in i..n {
            let v = desired.get(i, j);
            if v.abs() <= floor || v == 0.0 {
                continue;
            }
            let pump_index = modes[i].freq_index + modes[j].freq_index;
            match groups.iter_mut().find(|g| g.pump_index == pump_index) {
                Some(g) => g.entries.push((i, j, v)),
                None => groups.push(PumpGroup { pump_index, entries: vec![(i, j, v)] }),
            }
        }
    }
    groups.sort_by_key(|g| g.pump_index);
    let conflicts = groups.iter().filter(|g| g.has_mixed_signs()).cloned().collect();
    Ok(RealizabilityVerdict { groups, conflicts })
}
