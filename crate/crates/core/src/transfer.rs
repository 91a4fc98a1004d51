//! Linearized (Holstein-Primakoff) reflection and transmission coefficients of
//! the bright (`+`) and dark (`−`) collective channels.
//!
//! Coefficients follow the `e^{-iωt}` convention of the time-domain
//! equations, so a detuned drive `α_in(t) ∝ e^{-iΔt}` leaves the cavity as
//! `x(Δ)·α_in(t)` in steady state.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::SystemParams;

/// Which metastable ground state the atom occupies.
///
/// In `G1` the atom couples to the cavities with strength `g`; in `G2` it is
/// decoupled (effective coupling zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AtomBranch {
    G1,
    G2,
}

impl AtomBranch {
    pub const ALL: [AtomBranch; 2] = [AtomBranch::G1, AtomBranch::G2];

    /// Zero-based index `k - 1`.
    pub fn index(self) -> usize {
        match self {
            AtomBranch::G1 => 0,
            AtomBranch::G2 => 1,
        }
    }

    pub fn effective_coupling(self, g: f64) -> f64 {
        match self {
            AtomBranch::G1 => g,
            AtomBranch::G2 => 0.0,
        }
    }
}

/// Bright/dark reflection (`x`) and transmission (`y`) amplitudes at detuning `delta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferCoefficients {
    pub x_plus: Complex64,
    pub x_minus: Complex64,
    pub y_plus: Complex64,
    pub y_minus: Complex64,
    pub delta: f64,
}

impl TransferCoefficients {
    /// `|x+|² + |y+|²`; below one by the fraction scattered by the atom.
    pub fn bright_flux(&self) -> f64 {
        self.x_plus.norm_sqr() + self.y_plus.norm_sqr()
    }

    /// `|x−|² + |y−|²`; one for symmetric cavities.
    pub fn dark_flux(&self) -> f64 {
        self.x_minus.norm_sqr() + self.y_minus.norm_sqr()
    }
}

/// Coefficients for identical cavities at detuning `delta = ω − ω_c`.
///
/// The reflection and transmission mirrors may differ (`κ_r ≠ κ_t`), but both
/// cavities must share `g` and the per-mirror rates.
pub fn coefficients_at(
    params: &SystemParams,
    branch: AtomBranch,
    delta: f64,
) -> Result<TransferCoefficients> {
    if !params.identical_cavities() {
        return Err(Error::NonIdenticalCavities);
    }
    if !delta.is_finite() {
        return Err(Error::InvalidParameter {
            name: "delta",
            reason: format!("must be finite, got {delta}"),
        });
    }
    let kr = params.kappa_a_r;
    let kt = params.kappa_a_t;
    let kappa = Complex64::new(kr + kt, -delta);
    let kbar = Complex64::new(kr - kt, delta);
    let trans = 2.0 * (kr * kt).sqrt();

    let x_minus = kbar / kappa;
    let y_minus = trans / kappa;

    let g = branch.effective_coupling(params.g_a);
    let (x_plus, y_plus) = if g == 0.0 {
        (x_minus, y_minus)
    } else {
        let atom = Complex64::new(params.gamma(), -delta);
        let g2 = 2.0 * g * g;
        let den = kappa * atom + g2;
        ((kbar * atom - g2) / den, trans * atom / den)
    };

    Ok(TransferCoefficients {
        x_plus,
        x_minus,
        y_plus,
        y_minus,
        delta,
    })
}

/// Coefficients at `Δ = 0`.
pub fn resonant_coefficients(
    params: &SystemParams,
    branch: AtomBranch,
) -> Result<TransferCoefficients> {
    coefficients_at(params, branch, 0.0)
}

/// Outgoing single-photon amplitudes in the four ports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PortAmplitudes {
    pub reflected_a: Complex64,
    pub reflected_b: Complex64,
    pub transmitted_a: Complex64,
    pub transmitted_b: Complex64,
}

impl PortAmplitudes {
    pub fn norm_sqr(&self) -> f64 {
        self.as_array().iter().map(|z| z.norm_sqr()).sum()
    }

    /// `[reflected_a, reflected_b, transmitted_a, transmitted_b]`
    pub fn as_array(&self) -> [Complex64; 4] {
        [
            self.reflected_a,
            self.reflected_b,
            self.transmitted_a,
            self.transmitted_b,
        ]
    }
}

/// Applies the collective coefficients to an input `(μ+, μ−)` and rotates the
/// result back to the port basis.
pub fn output_collective_state(
    coeffs: &TransferCoefficients,
    mu_plus: Complex64,
    mu_minus: Complex64,
) -> PortAmplitudes {
    let (rp, rm) = (coeffs.x_plus * mu_plus, coeffs.x_minus * mu_minus);
    let (tp, tm) = (coeffs.y_plus * mu_plus, coeffs.y_minus * mu_minus);
    PortAmplitudes {
        reflected_a: (rp + rm) * FRAC_1_SQRT_2,
        reflected_b: (rp - rm) * FRAC_1_SQRT_2,
        transmitted_a: (tp + tm) * FRAC_1_SQRT_2,
        transmitted_b: (tp - tm) * FRAC_1_SQRT_2,
    }
}
