//! Simulation toolkit for a cross-cavity beam splitter that separates two-mode
//! light into its bright (symmetric) and dark (antisymmetric) collective
//! components.
//!
//! A Λ-type atom sits at the crossing of two identical two-sided cavities. With
//! the atom in `|g1⟩` the bright collective mode is reflected (for large
//! cooperativity) and the dark mode is transmitted; with the atom in `|g2⟩` the
//! device is a passthrough.
//!
//! The crate is split into:
//!
//! * [`model`]: system parameters, the Gaussian single-photon pulse, input
//!   superpositions and time grids. All rates are in units of the total cavity
//!   field decay rate κ.
//! * [`transfer`]: linearized (Holstein-Primakoff) frequency-domain reflection
//!   and transmission coefficients of the bright/dark channels.
//! * [`dynamics`]: exact single-excitation evolution driven by a Gaussian pulse,
//!   output waveforms and a norm budget.
//! * [`analysis`]: target-state probabilities, cooperativity sweeps, port
//!   statistics.
//! * [`fock`]: dense truncated two-mode Fock space used as a brute-force check
//!   of the collective-state algebra.

pub mod analysis;
pub mod dynamics;
pub mod error;
pub mod fock;
pub mod model;
pub mod quad;
pub mod transfer;

pub use num_complex::Complex64;

pub use analysis::{
    p_target_exact, p_target_hp, sweep_cooperativity, w_state_fidelity, w_state_port_statistics,
    PortStatistics, SweepRow,
};
pub use dynamics::{
    integrate, integrate_driven, norm_budget, steady_envelope_check, BranchDrive, NormBudget,
    Trajectory,
};
pub use error::{Error, Result};
pub use model::{
    collective_amplitudes, cooperativity, effective_coupling, gaussian_amplitude, port_amplitudes,
    GridOptions, InputSuperposition, Pulse, SystemParams, TimeGrid,
};
pub use transfer::{
    coefficients_at, output_collective_state, resonant_coefficients, AtomBranch, PortAmplitudes,
    TransferCoefficients,
};
