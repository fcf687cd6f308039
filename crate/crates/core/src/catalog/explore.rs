//! Exploratory search over mode/pump/χ configurations for complete coupling
//! graphs. Findings describe what the enumeration produced for the given
//! search space; they are not impossibility results.

use std::collections::HashSet;

use super::graph::enumerate_terms;
use super::labels::{ChiElement, InteractionTerm, ModeLabel, PumpField, TensorLabel};
use super::realize::{realizability_check, RealizabilityVerdict};
use crate::error::{Error, Result};

pub const MAX_SEARCH_MODES: usize = 12;
pub const MAX_SEARCH_PUMPS: usize = 12;

#[derive(Debug, Clone)]
pub struct ExplorationSpace {
    pub modes: Vec<ModeLabel>,
    pub pumps: Vec<PumpField>,
    pub chi_sets: Vec<Vec<ChiElement>>,
}

/// Outcome for one mode subset and one χ set.
#[derive(Debug, Clone)]
pub struct CandidateReport {
    pub modes: Vec<ModeLabel>,
    pub chis: Vec<TensorLabel>,
    /// Pumps that drive at least one wanted pair; others are left off.
    pub pumps: Vec<PumpField>,
    pub terms: Vec<InteractionTerm>,
    pub missing_edges: Vec<(ModeLabel, ModeLabel)>,
    pub degenerate_terms: Vec<InteractionTerm>,
    /// Pumps driving both a wanted pair and a degenerate term: switching the
    /// degenerate term off would also switch off the wanted pair.
    pub shared_pump_conflicts: Vec<PumpField>,
    pub sign_verdict: RealizabilityVerdict,
}

impl CandidateReport {
    pub fn covers_complete_graph(&self) -> bool {
        self.missing_edges.is_empty()
    }

    pub fn is_clean(&self) -> bool {
        self.covers_complete_graph()
            && self.degenerate_terms.is_empty()
            && self.shared_pump_conflicts.is_empty()
            && self.sign_verdict.is_realizable()
    }

    pub fn summary(&self) -> String {
        let modes: Vec<String> = self.modes.iter().map(ToString::to_string).collect();
        let chis: Vec<&str> = self.chis.iter().map(|c| c.as_str()).collect();
        let missing: Vec<String> = self.missing_edges.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        let degenerate: Vec<String> = self.degenerate_terms.iter().map(|t| format!("{}@{}", t.mode_a, t.pump)).collect();
        let conflicts: Vec<String> = self.shared_pump_conflicts.iter().map(ToString::to_string).collect();
        format!(
            "modes [{}] chis [{}]: {} terms, missing [{}], degenerate [{}], shared-pump conflicts [{}], sign conflicts {}",
            modes.join(" "),
            chis.join(" "),
            self.terms.len(),
            missing.join(" "),
            degenerate.join(" "),
            conflicts.join("; "),
            self.sign_verdict.conflicts.len()
        )
    }
}

#[derive(Debug, Clone)]
pub struct ExplorationReport {
    pub target_size: usize,
    pub candidates: Vec<CandidateReport>,
}

impl ExplorationReport {
    pub fn clean(&self) -> impl Iterator<Item = &CandidateReport> {
        self.candidates.iter().filter(|c| c.is_clean())
    }
}

/// Every `target_size`-subset of `space.modes` crossed with every χ set.
pub fn explore_complete_graphs(space: &ExplorationSpace, target_size: usize) -> Result<ExplorationReport> {
    if space.modes.len() > MAX_SEARCH_MODES || space.pumps.len() > MAX_SEARCH_PUMPS {
        return Err(Error::range(format!(
            "search space of {} modes / {} pumps exceeds the {MAX_SEARCH_MODES}/{MAX_SEARCH_PUMPS} cap",
            space.modes.len(),
            space.pumps.len()
        )));
    }
    if target_size < 2 || target_size > space.modes.len() {
        return Err(Error::invalid(format!(
            "target size {target_size} needs 2 <= size <= {} modes",
            space.modes.len()
        )));
    }
    if space.chi_sets.is_empty() {
        return Err(Error::invalid("no chi sets to explore"));
    }
    let mut candidates = Vec::new();
    for subset in combinations(space.modes.len(), target_size) {
        let modes: Vec<ModeLabel> = subset.iter().map(|&i| space.modes[i]).collect();
        for chis in &space.chi_sets {
            candidates.push(examine(&modes, &space.pumps, chis)?);
        }
    }
    Ok(ExplorationReport { target_size, candidates })
}

/// [`explore_complete_graphs`] for five-mode targets.
pub fn explore_n5(space: &ExplorationSpace) -> Result<ExplorationReport> {
    explore_complete_graphs(space, 5)
}

fn examine(modes: &[ModeLabel], pumps: &[PumpField], chis: &[ChiElement]) -> Result<CandidateReport> {
    let raw = enumerate_terms(modes, pumps, chis)?;
    let useful: HashSet<_> = raw.edges().iter().filter(|e| !e.is_degenerate()).map(|e| e.pump.key()).collect();
    let used_pumps: Vec<PumpField> = pumps.iter().copied().filter(|p| useful.contains(&p.key())).collect();
    let terms: Vec<InteractionTerm> =
        raw.edges().iter().copied().filter(|e| useful.contains(&e.pump.key())).collect();

    let covered: HashSet<(ModeLabel, ModeLabel)> =
        terms.iter().filter(|e| !e.is_degenerate()).map(|e| (e.mode_a, e.mode_b)).collect();
    let mut missing_edges = Vec::new();
    for (i, &a) in modes.iter().enumerate() {
        for &b in &modes[i + 1..] {
            let key = if b < a { (b, a) } else { (a, b) };
            if !covered.contains(&key) {
                missing_edges.push((a, b));
            }
        }
    }
    let degenerate_terms: Vec<InteractionTerm> = terms.iter().copied().filter(|e| e.is_degenerate()).collect();
    let shared_pump_conflicts = used_pumps
        .iter()
        .copied()
        .filter(|p| degenerate_terms.iter().any(|d| d.pump.key() == p.key()))
        .collect();

    let graph = super::graph::CouplingGraph::new(modes.to_vec(), terms.clone())?;
    let sign_verdict = realizability_check(&graph.coupling_matrix()?, modes)?;
    Ok(CandidateReport {
        modes: modes.to_vec(),
        chis: chis.iter().filter(|c| c.phase_matched).map(|c| c.label).collect(),
        pumps: used_pumps,
        terms,
        missing_edges,
        degenerate_terms,
        shared_pump_conflicts,
        sign_verdict,
    })
}

/// Index combinations in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
