//! Target-state probabilities, cooperativity sweeps and port statistics.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::dynamics::{integrate, norm_budget, Trajectory};
use crate::error::{Error, Result};
use crate::model::{cooperativity, GridOptions, InputSuperposition, Pulse, SystemParams, TimeGrid};
use crate::quad::trapezoid_by;
use crate::transfer::AtomBranch;

/// Tolerance on the injected norm of the `k = 1` drive.
const DRIVE_NORM_TOL: f64 = 1e-6;

/// Linearized probability of the reflected-bright / transmitted-dark target:
/// `(|μ−|² + |μ+|² C/(1+C))²`.
pub fn p_target_hp(mu_plus: Complex64, mu_minus: Complex64, c: f64) -> f64 {
    let bright = c / (1.0 + c);
    (mu_minus.norm_sqr() + mu_plus.norm_sqr() * bright).powi(2)
}

/// Probability that the output pulse is in the target state, from the exact
/// `|g1⟩`-branch waveforms:
/// `∫ |(μ−*[α_out^t − β_out^t] − μ+*[α_out^r + β_out^r]) / √2|² dt`.
pub fn p_target_exact(traj: &Trajectory, mu_plus: Complex64, mu_minus: Complex64) -> Result<f64> {
    let w = traj.branch(AtomBranch::G1);
    let injected = traj.integrate_sq(&[&w.in_a, &w.in_b]);
    if (injected - 1.0).abs() > DRIVE_NORM_TOL {
        return Err(Error::NotNormalized {
            what: "trajectory |g1⟩ drive",
            norm_sq: injected,
        });
    }
    let (mp, mm) = (mu_plus.conj(), mu_minus.conj());
    Ok(trapezoid_by(traj.len(), traj.grid.dt(), |i| {
        let dark = w.out_a_t[i] - w.out_b_t[i];
        let bright = w.out_a_r[i] + w.out_b_r[i];
        ((mm * dark - mp * bright) * FRAC_1_SQRT_2).norm_sqr()
    }))
}

/// One point of a cooperativity sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub c: f64,
    pub p_hp: f64,
    pub p_exact: f64,
    pub abs_diff: f64,
    pub atomic_loss: f64,
}

/// Runs the exact dynamics for each cooperativity in `c_values`, with the atom
/// in `|g1⟩` and the photon in ports `(mu_a, mu_b)`.
///
/// `template` fixes κ and Γ; `g = √(CκΓ/2)` is solved per row. Rows are
/// computed in parallel and returned in input order.
pub fn sweep_cooperativity(
    template: &SystemParams,
    mu_a: Complex64,
    mu_b: Complex64,
    c_values: &[f64],
    pulse: &Pulse,
    grid: &GridOptions,
) -> Result<Vec<SweepRow>> {
    cooperativity(template)?;
    if let Some(bad) = c_values.iter().find(|c| !c.is_finite() || **c <= 0.0) {
        return Err(Error::InvalidParameter {
            name: "c_values",
            reason: format!("cooperativities must be positive, got {bad}"),
        });
    }
    if c_values.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter {
            name: "c_values",
            reason: "cooperativities must be sorted".into(),
        });
    }
    let input = InputSuperposition::with_atom(AtomBranch::G1, mu_a, mu_b)?;

    c_values
        .par_iter()
        .map(|&c| {
            sweep_row(template, &input, c, pulse, grid).map_err(|e| Error::SweepRow {
                c,
                source: Box::new(e),
            })
        })
        .collect()
}

fn sweep_row(
    template: &SystemParams,
    input: &InputSuperposition,
    c: f64,
    pulse: &Pulse,
    grid: &GridOptions,
) -> Result<SweepRow> {
    let (mu_plus, mu_minus) = (input.mu_plus(), input.mu_minus());
    let params =
        template.with_coupling((c * template.kappa_a() * template.gamma() / 2.0).sqrt())?;
    let grid = TimeGrid::for_pulse_with(&params, pulse, grid)?;
    let traj = integrate(&params, input, pulse, &grid)?;
    let p_exact = p_target_exact(&traj, mu_plus, mu_minus)?;
    let p_hp = p_target_hp(mu_plus, mu_minus, c);
    let budget = norm_budget(&traj, &params)?;
    Ok(SweepRow {
        c,
        p_hp,
        p_exact,
        abs_diff: (p_hp - p_exact).abs(),
        atomic_loss: budget.atomic_loss,
    })
}

/// Integrated output norm per port, summed over both atomic branches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortStatistics {
    pub n_ar: f64,
    pub n_br: f64,
    pub n_at: f64,
    pub n_bt: f64,
}

impl PortStatistics {
    pub fn total(&self) -> f64 {
        self.n_ar + self.n_br + self.n_at + self.n_bt
    }
}

pub fn w_state_port_statistics(traj: &Trajectory) -> PortStatistics {
    let port = |f: fn(&crate::dynamics::BranchWaveforms) -> &[Complex64]| {
        traj.branches
            .iter()
            .map(|b| traj.integrate_sq(&[f(b)]))
            .sum::<f64>()
    };
    PortStatistics {
        n_ar: port(|b| &b.out_a_r),
        n_br: port(|b| &b.out_b_r),
        n_at: port(|b| &b.out_a_t),
        n_bt: port(|b| &b.out_b_t),
    }
}

/// Overlap of the `|g1⟩` output with the ideal four-port W state
/// `½(−|r_a⟩ − |r_b⟩ + |t_a⟩ − |t_b⟩)` carrying the input envelope.
pub fn w_state_fidelity(traj: &Trajectory) -> Result<f64> {
    let pulse = traj.pulse.ok_or(Error::InvalidParameter {
        name: "trajectory",
        reason: "no pulse envelope recorded".into(),
    })?;
    let w = traj.branch(AtomBranch::G1);
    let weights = [-0.5, -0.5, 0.5, -0.5];
    let outs = w.outputs();
    let dt = traj.grid.dt();
    let n = traj.len();
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, t) in traj.grid.times().enumerate() {
        let end = if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
        let env = pulse.amplitude(t);
        for (wt, out) in weights.iter().zip(outs.iter()) {
            acc += end * wt * env * out[i];
        }
    }
    Ok((acc * dt).norm_sqr())
}
