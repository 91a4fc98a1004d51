//! Shared fixtures for the benchmarks.

use darkbright::{AtomBranch, Complex64, InputSuperposition, Pulse, SystemParams, TimeGrid};

/// Reference regime: `C = 20`, `Γ = 0.1κ`, photon in port `a`, atom in `|g1⟩`.
pub fn reference(kappa_tau_p: f64) -> (SystemParams, InputSuperposition, Pulse, TimeGrid) {
    let params = SystemParams::with_cooperativity(20.0, 1.0, 0.1).expect("valid parameters");
    let input = InputSuperposition::with_atom(
        AtomBranch::G1,
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
    )
    .expect("normalized input");
    let pulse = Pulse::from_duration(0.0, kappa_tau_p).expect("positive duration");
    let grid = TimeGrid::for_pulse(&params, &pulse).expect("grid");
    (params, input, pulse, grid)
}
