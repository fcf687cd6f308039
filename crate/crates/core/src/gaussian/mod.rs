//! Gaussian-state dynamics of quadratic downconversion Hamiltonians.
//!
//! A Hamiltonian `H = (i/2) Σᵢⱼ Gᵢⱼ (aᵢ†aⱼ† − aᵢaⱼ)` generates the Heisenberg
//! equations `ȧ = G a†`, hence `X(t) = e^{Gt} X` and `P(t) = e^{−Gt} P`. The
//! phase-space propagator is therefore block diagonal in XXPP ordering and
//! every eigenvector `v` of `G` with eigenvalue `λ` gives a pair of joint
//! quadratures `vᵀX`, `vᵀP` that are scaled by `e^{±λt}`.

mod coupling;
mod dynamics;
mod eigen;
mod network;
mod state;
mod witness;

pub use coupling::{chain_coupling, complete_graph_coupling, CouplingMatrix};
pub use dynamics::{evolve, propagator, propagator_with_cap, symplectic_form, DEFAULT_EXPONENT_CAP};
pub use eigen::{eigenmodes, Eigenmode, EigenmodeReport, ModeClass, DEFAULT_ZERO_TOL};
pub use network::{apply_network, make_nsplitter, PassiveNetwork};
pub use state::{joint_variance, GaussianState, JointQuadrature};
pub use witness::{witness_pair, Witness, WitnessValue, DEFAULT_WITNESS_THRESHOLD};
