use std::collections::HashSet;

use super::labels::{ChiElement, InteractionTerm, ModeLabel, PumpField};
use crate::error::{Error, Result};
use crate::format::fmt12;
use crate::gaussian::CouplingMatrix;

/// Modes plus the downconversion terms connecting them. Self-loops are
/// degenerate (single-mode squeezing) terms.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingGraph {
    vertices: Vec<ModeLabel>,
    edges: Vec<InteractionTerm>,
}

impl CouplingGraph {
    pub fn new(vertices: Vec<ModeLabel>, edges: Vec<InteractionTerm>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(*v) {
                return Err(Error::invalid(format!("duplicate mode {v}")));
            }
        }
        for e in &edges {
            if !seen.contains(&e.mode_a) || !seen.contains(&e.mode_b) {
                return Err(Error::invalid(format!(
                    "edge {}–{} references a mode outside the vertex set",
                    e.mode_a, e.mode_b
                )));
            }
        }
        Ok(Self { vertices, edges })
    }

    pub fn vertices(&self) -> &[ModeLabel] {
        &self.vertices
    }

    pub fn edges(&self) -> &[InteractionTerm] {
        &self.edges
    }

    pub fn vertex_index(&self, mode: &ModeLabel) -> Option<usize> {
        self.vertices.iter().position(|v| v == mode)
    }

    pub fn self_loops(&self) -> impl Iterator<Item = &InteractionTerm> {
        self.edges.iter().filter(|e| e.is_degenerate())
    }

    /// Distinct pump fields driving at least one edge, in first-use order.
    pub fn pumps(&self) -> Vec<PumpField> {
        let mut out: Vec<PumpField> = Vec::new();
        for e in &self.edges {
            if !out.iter().any(|p| p.key() == e.pump.key()) {
                out.push(e.pump);
            }
        }
        out
    }

    /// Unordered vertex pairs (i < j) joined by at least one edge.
    pub fn connected_pairs(&self) -> HashSet<(usize, usize)> {
        self.edges
            .iter()
            .filter(|e| !e.is_degenerate())
            .map(|e| {
                let a = self.vertex_index(&e.mode_a).expect("edge endpoints are vertices");
                let b = self.vertex_index(&e.mode_b).expect("edge endpoints are vertices");
                (a.min(b), a.max(b))
            })
            .collect()
    }

    /// True when every pair of distinct vertices is joined by an edge.
    pub fn is_complete(&self) -> bool {
        let n = self.vertices.len();
        self.connected_pairs().len() == n * (n - 1) / 2
    }

    /// Coupling matrix in vertex order; parallel edges add up.
    pub fn coupling_matrix(&self) -> Result<CouplingMatrix> {
        let mut g = CouplingMatrix::zeros(self.vertices.len())?;
        for e in &self.edges {
            let a = self.vertex_index(&e.mode_a).expect("edge endpoints are vertices");
            let b = self.vertex_index(&e.mode_b).expect("edge endpoints are vertices");
            g.add_coupling(a, b, e.strength)?;
        }
        Ok(g)
    }

    /// One line per term: `pumpIndex pol | modeA | modeB | sign | kappa`.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let sign = if e.strength < 0.0 { '-' } else { '+' };
            out.push_str(&format!(
                "{} | {} | {} | {} | {}\n",
                e.pump,
                e.mode_a,
                e.mode_b,
                sign,
                fmt12(e.strength.abs())
            ));
        }
        out
    }
}

/// Every energy-conserving, polarization-consistent, phase-matched term
/// among `modes`, driven by `pumps` through `chis`.
///
/// Output order: pump order, then chi order, then vertex order of the pair.
pub fn enumerate_terms(modes: &[ModeLabel], pumps: &[PumpField], chis: &[ChiElement]) -> Result<CouplingGraph> {
    if modes.is_empty() {
        return Err(Error::invalid("mode list is empty"));
    }
    let mut labels = HashSet::new();
    for c in chis {
        if !labels.insert(c.label) {
            return Err(Error::invalid(format!("duplicate tensor label {}", c.label)));
        }
    }
    let mut edges = Vec::new();
    for pump in pumps {
        for chi in chis.iter().filter(|c| c.phase_matched) {
            for (a, ma) in modes.iter().enumerate() {
                for mb in &modes[a..] {
                    if ma.freq_index + mb.freq_index != pump.freq_index {
                        continue;
                    }
                    if !chi.label.couples(pump.polarization, ma.polarization, mb.polarization) {
                        continue;
                    }
                    edges.push(InteractionTerm::new(*ma, *mb, *pump, *chi)?);
                }
            }
        }
    }
    CouplingGraph::new(modes.to_vec(), edges)
}

/// Undirected connected components; self-loops never merge anything.
///
/// Components are listed by their first vertex, members in vertex order.
pub fn connected_components(g: &CouplingGraph) -> Vec<Vec<ModeLabel>> {
    let n = g.vertices().len();
    let mut parent: Vec<usize> = (0..n).collect();

    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }

    for (a, b) in g.connected_pairs() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    let mut comps: Vec<(usize, Vec<ModeLabel>)> = Vec::new();
    for v in 0..n {
        let root = find(&mut parent, v);
        match comps.iter_mut().find(|(r, _)| *r == root) {
            Some((_, members)) => members.push(g.vertices()[v]),
            None => comps.push((root, vec![g.vertices()[v]])),
        }
    }
    comps.into_iter().map(|(_, m)| m).collect()
}
