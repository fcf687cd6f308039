//! Bookkeeping for concurrent downconversion in a multimode resonator.
//!
//! Frequencies live on an integer lattice. A cavity mode with index `k` sits
//! at `ω₀ + kΔ` (Δ the free spectral range, identical for both
//! polarizations); a pump with index `p` sits at `2ω₀ + pΔ`, i.e. its half
//! frequency lies on the half-FSR lattice `ω₀ + pΔ/2`. Energy conservation
//! for a downconversion term is then the exact integer identity
//! `p = k_a + k_b`.

mod builders;
mod explore;
mod graph;
mod labels;
mod realize;

pub use builders::{
    balance_pumps, build_h3_experimental, build_h3_experimental_with, build_h4_experimental,
    build_h4_experimental_with, default_chis, singly_pumped_graph, ExperimentalBuild,
};
pub use explore::{explore_complete_graphs, explore_n5, CandidateReport, ExplorationReport, ExplorationSpace};
pub use graph::{connected_components, enumerate_terms, CouplingGraph};
pub use labels::{ChiElement, InteractionTerm, ModeLabel, Polarization, PumpField, TensorLabel};
pub use realize::{realizability_check, PumpGroup, RealizabilityVerdict};
