//! Physical parameters, the single-photon pulse and input-state descriptions.
//!
//! Rates are expressed in units of a reference rate (the total field decay
//! rate κ of one cavity in all the default constructors), times in its inverse.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::{Matrix3, Schur};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::transfer::AtomBranch;

/// Tolerance for algebraic normalization identities.
pub const NORM_TOL: f64 = 1e-12;

/// Couplings and decay rates of the cross-cavity system.
///
/// `kappa_{a,b}_{r,t}` are per-mirror field decay rates; the total decay of
/// cavity `a` is `kappa_a_r + kappa_a_t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams {
    pub g_a: f64,
    pub g_b: f64,
    pub kappa_a_r: f64,
    pub kappa_a_t: f64,
    pub kappa_b_r: f64,
    pub kappa_b_t: f64,
    pub gamma_1: f64,
    pub gamma_2: f64,
}

fn non_negative(name: &'static str, v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::InvalidParameter {
            name,
            reason: format!("must be finite and non-negative, got {v}"),
        });
    }
    Ok(())
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if !v.is_finite() || v <= 0.0 {
        return Err(Error::InvalidParameter {
            name,
            reason: format!("must be finite and positive, got {v}"),
        });
    }
    Ok(())
}

impl SystemParams {
    /// Builds and validates a general parameter set.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        g_a: f64,
        g_b: f64,
        kappa_a_r: f64,
        kappa_a_t: f64,
        kappa_b_r: f64,
        kappa_b_t: f64,
        gamma_1: f64,
        gamma_2: f64,
    ) -> Result<Self> {
        let p = Self {
            g_a,
            g_b,
            kappa_a_r,
            kappa_a_t,
            kappa_b_r,
            kappa_b_t,
            gamma_1,
            gamma_2,
        };
        p.validate()?;
        Ok(p)
    }

    /// Identical symmetric cavities: `g_a = g_b = g`, every mirror at `kappa / 2`,
    /// all atomic decay into `|g1⟩`.
    pub fn symmetric(g: f64, kappa: f64, gamma: f64) -> Result<Self> {
        Self::new(
            g,
            g,
            kappa / 2.0,
            kappa / 2.0,
            kappa / 2.0,
            kappa / 2.0,
            gamma,
            0.0,
        )
    }

    /// Symmetric cavities with `g` chosen so that `2g²/(κΓ) = c`.
    pub fn with_cooperativity(c: f64, kappa: f64, gamma: f64) -> Result<Self> {
        non_negative("cooperativity", c)?;
        positive("gamma", gamma)?;
        positive("kappa", kappa)?;
        Self::symmetric((c * kappa * gamma / 2.0).sqrt(), kappa, gamma)
    }

    pub fn validate(&self) -> Result<()> {
        non_negative("g_a", self.g_a)?;
        non_negative("g_b", self.g_b)?;
        positive("kappa_a_r", self.kappa_a_r)?;
        positive("kappa_a_t", self.kappa_a_t)?;
        positive("kappa_b_r", self.kappa_b_r)?;
        positive("kappa_b_t", self.kappa_b_t)?;
        non_negative("gamma_1", self.gamma_1)?;
        non_negative("gamma_2", self.gamma_2)?;
        Ok(())
    }

    /// Total atomic decay rate Γ = Γ₁ + Γ₂.
    pub fn gamma(&self) -> f64 {
        self.gamma_1 + self.gamma_2
    }

    pub fn kappa_a(&self) -> f64 {
        self.kappa_a_r + self.kappa_a_t
    }

    pub fn kappa_b(&self) -> f64 {
        self.kappa_b_r + self.kappa_b_t
    }

    /// Same couplings, and the same decay rate per mirror side on both cavities.
    pub fn identical_cavities(&self) -> bool {
        self.g_a == self.g_b && self.kappa_a_r == self.kappa_b_r && self.kappa_a_t == self.kappa_b_t
    }

    /// Identical cavities whose reflection and transmission mirrors also match.
    pub fn symmetric_identical(&self) -> bool {
        self.identical_cavities() && self.kappa_a_r == self.kappa_a_t
    }

    /// Same system with a different (common) coupling.
    pub fn with_coupling(&self, g: f64) -> Result<Self> {
        let p = Self {
            g_a: g,
            g_b: g,
            ..*self
        };
        p.validate()?;
        Ok(p)
    }

    /// Largest rate in the problem, used to size the integration step.
    pub fn fastest_rate(&self) -> f64 {
        let g = (self.g_a * self.g_a + self.g_b * self.g_b).sqrt();
        self.kappa_a().max(self.kappa_b()).max(self.gamma()).max(g)
    }

    /// Smallest decay rate of the linear single-excitation system.
    ///
    /// The atom is only included when it couples to a cavity; an uncoupled
    /// excited state is never populated.
    pub fn slowest_decay_rate(&self) -> f64 {
        let kappa_min = self.kappa_a().min(self.kappa_b());
        if self.g_a == 0.0 && self.g_b == 0.0 {
            return kappa_min;
        }
        let i = Complex64::i();
        let re = |x: f64| Complex64::new(x, 0.0);
        let m = Matrix3::new(
            re(-self.gamma()),
            -i * self.g_a,
            -i * self.g_b,
            -i * self.g_a,
            re(-self.kappa_a()),
            re(0.0),
            -i * self.g_b,
            re(0.0),
            re(-self.kappa_b()),
        );
        Schur::new(m)
            .eigenvalues()
            .map(|ev| ev.iter().map(|l| -l.re).fold(kappa_min, f64::min))
            .unwrap_or(kappa_min)
    }
}

/// Cooperativity `C = 2g²/(κΓ)` of the atom with the symmetric collective mode.
pub fn cooperativity(params: &SystemParams) -> Result<f64> {
    if !params.symmetric_identical() {
        return Err(Error::RequiresSymmetricCavities);
    }
    let gamma = params.gamma();
    if gamma <= 0.0 {
        return Err(Error::UndefinedCooperativity);
    }
    Ok(2.0 * params.g_a * params.g_a / (params.kappa_a() * gamma))
}

/// Collective coupling `g·√N` of `n_atoms` identical atoms.
pub fn effective_coupling(g: f64, n_atoms: u32) -> Result<f64> {
    if n_atoms == 0 {
        return Err(Error::InvalidParameter {
            name: "n_atoms",
            reason: "need at least one atom".into(),
        });
    }
    non_negative("g", g)?;
    Ok(g * f64::from(n_atoms).sqrt())
}

/// Square-normalized Gaussian single-photon envelope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pulse {
    /// Arrival time of the maximum.
    pub t0: f64,
    /// Gaussian width parameter η.
    pub eta: f64,
}

impl Pulse {
    pub fn new(t0: f64, eta: f64) -> Result<Self> {
        if !t0.is_finite() {
            return Err(Error::InvalidParameter {
                name: "t0",
                reason: format!("must be finite, got {t0}"),
            });
        }
        positive("eta", eta)?;
        Ok(Self { t0, eta })
    }

    /// Pulse with amplitude FWHM `tau_p`.
    pub fn from_duration(t0: f64, tau_p: f64) -> Result<Self> {
        positive("tau_p", tau_p)?;
        Self::new(t0, tau_p / (2.0 * (2.0 * std::f64::consts::LN_2).sqrt()))
    }

    /// Amplitude full width at half maximum, `2η√(2 ln 2)`.
    pub fn tau_p(&self) -> f64 {
        2.0 * self.eta * (2.0 * std::f64::consts::LN_2).sqrt()
    }

    #[inline]
    pub fn amplitude(&self, t: f64) -> f64 {
        let s = (t - self.t0) / self.eta;
        (self.eta * PI.sqrt()).powf(-0.5) * (-0.5 * s * s).exp()
    }

    /// Power spectral density `|ξ(ω)|²` of the envelope (unitary transform).
    pub fn spectral_density(&self, omega: f64) -> f64 {
        self.eta / PI.sqrt() * (-(self.eta * omega).powi(2)).exp()
    }
}

/// `α_in(t) = (η√π)^(-1/2) exp(-(t-t0)²/(2η²))`.
pub fn gaussian_amplitude(pulse: &Pulse, t: f64) -> f64 {
    pulse.amplitude(t)
}

/// Port amplitudes `(μa, μb)` to collective amplitudes `(μ+, μ−)`.
pub fn collective_amplitudes(mu_a: Complex64, mu_b: Complex64) -> Result<(Complex64, Complex64)> {
    let n = mu_a.norm_sqr() + mu_b.norm_sqr();
    if (n - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized {
            what: "port amplitudes (μa, μb)",
            norm_sq: n,
        });
    }
    Ok(rotate(mu_a, mu_b))
}

/// Inverse of [`collective_amplitudes`].
pub fn port_amplitudes(mu_plus: Complex64, mu_minus: Complex64) -> (Complex64, Complex64) {
    rotate(mu_plus, mu_minus)
}

// The 2×2 Hadamard-type rotation is its own inverse.
#[inline]
pub(crate) fn rotate(u: Complex64, v: Complex64) -> (Complex64, Complex64) {
    ((u + v) * FRAC_1_SQRT_2, (u - v) * FRAC_1_SQRT_2)
}

/// Atom ground-state amplitudes and incoming-photon port amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InputSuperposition {
    pub lambda_1: Complex64,
    pub lambda_2: Complex64,
    pub mu_a: Complex64,
    pub mu_b: Complex64,
}

impl InputSuperposition {
    pub fn new(
        lambda_1: Complex64,
        lambda_2: Complex64,
        mu_a: Complex64,
        mu_b: Complex64,
    ) -> Result<Self> {
        let nl = lambda_1.norm_sqr() + lambda_2.norm_sqr();
        if (nl - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                what: "atomic amplitudes (λ1, λ2)",
                norm_sq: nl,
            });
        }
        let nm = mu_a.norm_sqr() + mu_b.norm_sqr();
        if (nm - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized {
                what: "port amplitudes (μa, μb)",
                norm_sq: nm,
            });
        }
        Ok(Self {
            lambda_1,
            lambda_2,
            mu_a,
            mu_b,
        })
    }

    /// Atom definitely in `branch`, photon in ports `(mu_a, mu_b)`.
    pub fn with_atom(branch: AtomBranch, mu_a: Complex64, mu_b: Complex64) -> Result<Self> {
        let (one, zero) = (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0));
        match branch {
            AtomBranch::G1 => Self::new(one, zero, mu_a, mu_b),
            AtomBranch::G2 => Self::new(zero, one, mu_a, mu_b),
        }
    }

    /// Same as [`with_atom`](Self::with_atom) but from collective amplitudes.
    pub fn from_collective(
        branch: AtomBranch,
        mu_plus: Complex64,
        mu_minus: Complex64,
    ) -> Result<Self> {
        let (mu_a, mu_b) = port_amplitudes(mu_plus, mu_minus);
        Self::with_atom(branch, mu_a, mu_b)
    }

    pub fn mu_plus(&self) -> Complex64 {
        rotate(self.mu_a, self.mu_b).0
    }

    pub fn mu_minus(&self) -> Complex64 {
        rotate(self.mu_a, self.mu_b).1
    }

    pub fn lambda(&self, branch: AtomBranch) -> Complex64 {
        match branch {
            AtomBranch::G1 => self.lambda_1,
            AtomBranch::G2 => self.lambda_2,
        }
    }
}

/// Knobs for [`TimeGrid::for_pulse_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridOptions {
    /// Half-width of the pulse window in units of η.
    pub window_factor: f64,
    /// Ring-down margin after the pulse window; `None` picks
    /// `10 / min(κ_min, slowest system decay rate)`.
    pub ring_down: Option<f64>,
    /// `dt = min(1/fastest_rate, η) / dt_factor`.
    pub dt_factor: f64,
}

impl Default for GridOptions {
    fn default() -> Self {
        Self {
            window_factor: 5.0,
            ring_down: None,
            dt_factor: 50.0,
        }
    }
}

/// Ring-down margins are capped here; longer tails are caught by the
/// residual check in the integrator.
const MAX_RING_DOWN: f64 = 1.0e4;

/// Uniform time grid `t_start + i·dt`, `i = 0..=steps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    dt: f64,
    steps: usize,
}

impl TimeGrid {
    /// Grid from `t_start` in steps of `dt` covering at least `t_end`.
    pub fn new(t_start: f64, t_end: f64, dt: f64) -> Result<Self> {
        if !t_start.is_finite() || !t_end.is_finite() || t_end <= t_start {
            return Err(Error::InvalidGrid(format!(
                "need finite t_start < t_end, got [{t_start}, {t_end}]"
            )));
        }
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::InvalidGrid(format!("dt must be positive, got {dt}")));
        }
        let steps = ((t_end - t_start) / dt - 1e-9).ceil().max(1.0);
        if steps > 5.0e8 {
            return Err(Error::InvalidGrid(format!("{steps} steps is too many")));
        }
        Ok(Self {
            t_start,
            dt,
            steps: steps as usize,
        })
    }

    /// Default grid for `pulse` driving `params`.
    pub fn for_pulse(params: &SystemParams, pulse: &Pulse) -> Result<Self> {
        Self::for_pulse_with(params, pulse, &GridOptions::default())
    }

    pub fn for_pulse_with(
        params: &SystemParams,
        pulse: &Pulse,
        opts: &GridOptions,
    ) -> Result<Self> {
        positive("window_factor", opts.window_factor)?;
        positive("dt_factor", opts.dt_factor)?;
        let min_ring_down = min_ring_down(params);
        let ring_down = match opts.ring_down {
            Some(r) => {
                positive("ring_down", r)?;
                r
            }
            None => (10.0 / params.slowest_decay_rate())
                .max(min_ring_down)
                .min(MAX_RING_DOWN),
        };
        let half = opts.window_factor * pulse.eta;
        let dt = (1.0 / params.fastest_rate()).min(pulse.eta) / opts.dt_factor;
        // Start one step before the window edge so the window is strictly covered.
        Self::new(pulse.t0 - half - dt, pulse.t0 + half + ring_down, dt)
    }

    /// Checks that the grid starts before the pulse and leaves room for
    /// the cavities to ring down.
    pub fn check_covers(&self, params: &SystemParams, pulse: &Pulse) -> Result<()> {
        let lead = pulse.t0 - 5.0 * pulse.eta;
        if self.t_start >= lead {
            return Err(Error::InvalidGrid(format!(
                "t_start = {} must precede t0 - 5η = {lead}",
                self.t_start
            )));
        }
        let tail = pulse.t0 + 5.0 * pulse.eta + min_ring_down(params);
        if self.t_end() < tail {
            return Err(Error::InvalidGrid(format!(
                "t_end = {} must reach t0 + 5η + 10/κ_min = {tail}",
                self.t_end()
            )));
        }
        Ok(())
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.time(self.steps)
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Number of grid points (`steps + 1`).
    pub fn len(&self) -> usize {
        self.steps + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn time(&self, i: usize) -> f64 {
        self.t_start + i as f64 * self.dt
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.time(i))
    }

    /// Same span with half the step.
    pub fn refined(&self) -> Self {
        Self {
            t_start: self.t_start,
            dt: self.dt / 2.0,
            steps: self.steps * 2,
        }
    }
}

fn min_ring_down(params: &SystemParams) -> f64 {
    10.0 / params.kappa_a().min(params.kappa_b())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn cooperativity_examples() {
        let p = SystemParams::symmetric(1.0, 1.0, 0.1).unwrap();
        assert!((cooperativity(&p).unwrap() - 20.0).abs() < 1e-12);
        let p = SystemParams::symmetric(0.0, 1.0, 0.1).unwrap();
        assert_eq!(cooperativity(&p).unwrap(), 0.0);
        let p = SystemParams::symmetric(1.0 / SQRT_2, 1.0, 1.0).unwrap();
        assert!((cooperativity(&p).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cooperativity_rejects_asymmetric_and_lossless_atom() {
        let mut p = SystemParams::symmetric(1.0, 1.0, 0.1).unwrap();
        p.g_b = 0.9;
        assert_eq!(cooperativity(&p), Err(Error::RequiresSymmetricCavities));
        let p = SystemParams::new(1.0, 1.0, 0.3, 0.7, 0.3, 0.7, 0.1, 0.0).unwrap();
        assert_eq!(cooperativity(&p), Err(Error::RequiresSymmetricCavities));
        let p = SystemParams::symmetric(1.0, 1.0, 0.0).unwrap();
        assert_eq!(cooperativity(&p), Err(Error::UndefinedCooperativity));
    }

    #[test]
    fn with_cooperativity_round_trips() {
        for c_val in [0.1, 1.0, 20.0, 100.0] {
            let p = SystemParams::with_cooperativity(c_val, 1.0, 0.1).unwrap();
            assert!((cooperativity(&p).unwrap() - c_val).abs() < 1e-12 * c_val.max(1.0));
        }
        // the headline anchor: C = 20 at Γ = 0.1κ is g = κ
        let p = SystemParams::with_cooperativity(20.0, 1.0, 0.1).unwrap();
        assert!((p.g_a - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_rates() {
        assert!(SystemParams::new(1.0, 1.0, 0.0, 0.5, 0.5, 0.5, 0.1, 0.0).is_err());
        assert!(SystemParams::new(-1.0, 1.0, 0.5, 0.5, 0.5, 0.5, 0.1, 0.0).is_err());
        assert!(SystemParams::new(1.0, 1.0, 0.5, f64::NAN, 0.5, 0.5, 0.1, 0.0).is_err());
        assert!(SystemParams::new(1.0, 1.0, 0.5, 0.5, 0.5, 0.5, -0.1, 0.0).is_err());
    }

    #[test]
    fn effective_coupling_examples() {
        assert_eq!(effective_coupling(0.7, 1).unwrap(), 0.7);
        assert!((effective_coupling(1.0, 4).unwrap() - 2.0).abs() < 1e-15);
        assert!(effective_coupling(1.0, 0).is_err());
        let g = effective_coupling(1.0, 2).unwrap();
        let p = SystemParams::symmetric(g, 1.0, 0.1).unwrap();
        assert!((cooperativity(&p).unwrap() - 40.0).abs() < 1e-12);
    }

    #[test]
    fn gaussian_peak_and_duration() {
        let pulse = Pulse::new(3.0, 2.5).unwrap();
        let peak = (2.5 * PI.sqrt()).powf(-0.5);
        assert!((gaussian_amplitude(&pulse, 3.0) - peak).abs() < 1e-15);
        let p2 = Pulse::from_duration(0.0, 100.0).unwrap();
        assert!((p2.tau_p() - 100.0).abs() < 1e-12);
        assert!(Pulse::new(0.0, 0.0).is_err());
        assert!(Pulse::new(f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn gaussian_normalization_by_trapezoid() {
        let pulse = Pulse::new(1.5, 4.0).unwrap();
        let n = 16_001;
        let dt = 16.0 * pulse.eta / (n - 1) as f64;
        let t0 = pulse.t0 - 8.0 * pulse.eta;
        let norm =
            crate::quad::trapezoid_by(n, dt, |i| pulse.amplitude(t0 + i as f64 * dt).powi(2));
        assert!((norm - 1.0).abs() < 1e-9, "{norm}");
    }

    #[test]
    fn gaussian_fwhm_by_bisection() {
        let pulse = Pulse::from_duration(0.0, 10.0).unwrap();
        let half = 0.5 * pulse.amplitude(0.0);
        let (mut lo, mut hi) = (0.0, 10.0 * pulse.eta);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if pulse.amplitude(mid) > half {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((2.0 * lo - 10.0).abs() < 1e-10);
    }

    #[test]
    fn spectral_density_is_normalized() {
        let pulse = Pulse::new(0.0, 3.0).unwrap();
        let n = 20_001;
        let w0 = -10.0 / pulse.eta;
        let dw = 20.0 / pulse.eta / (n - 1) as f64;
        let s = crate::quad::trapezoid_by(n, dw, |i| pulse.spectral_density(w0 + i as f64 * dw));
        assert!((s - 1.0).abs() < 1e-12);
    }

    #[test]
    fn collective_examples() {
        let h = FRAC_1_SQRT_2;
        let (p, m) = collective_amplitudes(c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!((p - c(h, 0.0)).norm() < 1e-15 && (m - c(h, 0.0)).norm() < 1e-15);
        let (p, m) = collective_amplitudes(c(h, 0.0), c(h, 0.0)).unwrap();
        assert!((p - c(1.0, 0.0)).norm() < 1e-15 && m.norm() < 1e-15);
        let (p, m) = collective_amplitudes(c(h, 0.0), c(-h, 0.0)).unwrap();
        assert!(p.norm() < 1e-15 && (m - c(1.0, 0.0)).norm() < 1e-15);
        assert!(matches!(
            collective_amplitudes(c(1.0, 0.0), c(1.0, 0.0)),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn input_superposition_validation() {
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        assert!(InputSuperposition::new(one, zero, one, zero).is_ok());
        assert!(InputSuperposition::new(one, one, one, zero).is_err());
        assert!(InputSuperposition::new(one, zero, one, one).is_err());
        let s = InputSuperposition::from_collective(AtomBranch::G1, zero, one).unwrap();
        assert!((s.mu_a - c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert!((s.mu_b + c(FRAC_1_SQRT_2, 0.0)).norm() < 1e-15);
        assert_eq!(s.lambda(AtomBranch::G1), one);
    }

    #[test]
    fn default_grid_satisfies_invariants() {
        let p = SystemParams::symmetric(1.0, 1.0, 0.1).unwrap();
        let pulse = Pulse::from_duration(0.0, 100.0).unwrap();
        let grid = TimeGrid::for_pulse(&p, &pulse).unwrap();
        grid.check_covers(&p, &pulse).unwrap();
        assert!(grid.dt() <= (1.0f64 / p.kappa_a()).min(pulse.eta) / 50.0);
        assert_eq!(grid.refined().t_end(), grid.t_end());
    }

    #[test]
    fn grid_coverage_errors() {
        let p = SystemParams::symmetric(1.0, 1.0, 0.1).unwrap();
        let pulse = Pulse::new(0.0, 2.0).unwrap();
        let early = TimeGrid::new(-9.0, 100.0, 0.01).unwrap();
        assert!(matches!(
            early.check_covers(&p, &pulse),
            Err(Error::InvalidGrid(_))
        ));
        let short = TimeGrid::new(-20.0, 15.0, 0.01).unwrap();
        assert!(matches!(
            short.check_covers(&p, &pulse),
            Err(Error::InvalidGrid(_))
        ));
        assert!(TimeGrid::new(1.0, 0.0, 0.1).is_err());
        assert!(TimeGrid::new(0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn slowest_rate_of_weakly_coupled_atom() {
        // C = 0.1: the atom-like mode decays at ≈ Γ(1 + C)
        let p = SystemParams::with_cooperativity(0.1, 1.0, 0.1).unwrap();
        let r = p.slowest_decay_rate();
        assert!((r - 0.11).abs() < 2e-3, "{r}");
        let empty = SystemParams::symmetric(0.0, 1.0, 0.0).unwrap();
        assert_eq!(empty.slowest_decay_rate(), 1.0);
    }
}
