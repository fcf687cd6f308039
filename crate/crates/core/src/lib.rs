//! Simulation of multipartite continuous-variable entanglement produced by
//! concurrent second-order nonlinear interactions inside a single parametric
//! amplifier, plus tooling to design the quasi-phase-matched crystal that
//! makes those interactions happen at the same temperature.
//!
//! Conventions used everywhere in this crate:
//!
//! * ħ = 1, quadratures `X = (a + a†)/√2`, `P = i(a† − a)/√2`, so the vacuum
//!   variance of every quadrature is 1/2.
//! * Phase-space vectors are ordered `(X₁..X_N, P₁..P_N)` ("XXPP").
//! * A quadratic downconversion Hamiltonian is represented by a real
//!   symmetric coupling matrix `G` through
//!   `H = (i/2) Σᵢⱼ Gᵢⱼ (aᵢ†aⱼ† − aᵢaⱼ)`.
//!
//! Modules:
//!
//! * [`gaussian`] — coupling matrices, Gaussian states, symplectic evolution,
//!   eigenmode classification, passive networks and inseparability witnesses.
//! * [`catalog`] — optical mode / pump / χ⁽²⁾ bookkeeping, term enumeration,
//!   coupling graphs, the three- and four-mode builders and the shared-pump
//!   realizability check.
//! * [`qpm`] — Sellmeier datasets, phase mismatch, poling periods, SHG
//!   temperature tuning curves and concurrence search.
//! * [`fock`] — a truncated number-basis simulator used as an independent
//!   oracle for [`gaussian`].
//! * [`verify`] — the Gaussian-versus-Fock agreement suite.

pub mod catalog;
pub mod error;
pub mod fock;
pub mod format;
pub mod gaussian;
pub mod qpm;
pub mod verify;

pub use error::{Error, Result};
pub use gaussian::{
    complete_graph_coupling, CouplingMatrix, EigenmodeReport, GaussianState, JointQuadrature,
    ModeClass, PassiveNetwork,
};
