//! Exact single-excitation dynamics of the atom + cavities driven by a
//! single-photon pulse.
//!
//! The excitation lives in one of five amplitudes: the excited atom `c_e`, or
//! one photon in cavity `a`/`b` with the atom in `|g_k⟩` (`c_a^k`, `c_b^k`).
//! Spontaneous emission is a non-Hermitian damping of `c_e`. The `k = 2`
//! branch never couples to the atom.
//!
//! ```text
//! ċ_e   = −Γ c_e − i g_a c_a¹ − i g_b c_b¹
//! ċ_a¹  = −i g_a c_e − κ_a c_a¹ + √(2κ_a^r) α_in¹(t)
//! ċ_b¹  = −i g_b c_e − κ_b c_b¹ + √(2κ_b^r) β_in¹(t)
//! ċ_a²  =            − κ_a c_a² + √(2κ_a^r) α_in²(t)
//! ċ_b²  =            − κ_b c_b² + √(2κ_b^r) β_in²(t)
//! ```
//!
//! Output fields follow from the mirror boundary conditions
//! `α_out^r = √(2κ_a^r) c_a − α_in`, `α_out^t = √(2κ_a^t) c_a` (same for `b`).

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{InputSuperposition, Pulse, SystemParams, TimeGrid};
use crate::quad::trapezoid_by;
use crate::transfer::{output_collective_state, AtomBranch, TransferCoefficients};

/// Maximum allowed disagreement between the `dt` and `dt/2` solutions.
pub const STEP_HALVING_TOL: f64 = 1e-7;
/// Maximum residual norm left in the system at the end of the grid.
pub const RING_DOWN_TOL: f64 = 1e-4;
/// Maximum mismatch between the norm budget and the injected norm.
pub const BUDGET_TOL: f64 = 1e-4;

type State = [Complex64; 5];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Incoming field amplitudes at cavities `a` and `b` for one atomic branch.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BranchDrive {
    pub alpha: Complex64,
    pub beta: Complex64,
}

/// Amplitudes and waveforms conditioned on the atom ending in `|g_k⟩`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BranchWaveforms {
    pub c_a: Vec<Complex64>,
    pub c_b: Vec<Complex64>,
    pub in_a: Vec<Complex64>,
    pub in_b: Vec<Complex64>,
    pub out_a_r: Vec<Complex64>,
    pub out_a_t: Vec<Complex64>,
    pub out_b_r: Vec<Complex64>,
    pub out_b_t: Vec<Complex64>,
}

impl BranchWaveforms {
    fn with_capacity(n: usize) -> Self {
        let v = || Vec::with_capacity(n);
        Self {
            c_a: v(),
            c_b: v(),
            in_a: v(),
            in_b: v(),
            out_a_r: v(),
            out_a_t: v(),
            out_b_r: v(),
            out_b_t: v(),
        }
    }

    /// `[out_a_r, out_b_r, out_a_t, out_b_t]`
    pub fn outputs(&self) -> [&[Complex64]; 4] {
        [&self.out_a_r, &self.out_b_r, &self.out_a_t, &self.out_b_t]
    }
}

/// Solution of one driven run, sampled on the integration grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub grid: TimeGrid,
    pub c_e: Vec<Complex64>,
    /// Indexed by [`AtomBranch::index`].
    pub branches: [BranchWaveforms; 2],
    /// Input state, when the run was driven by [`integrate`].
    pub input: Option<InputSuperposition>,
    pub pulse: Option<Pulse>,
    /// Largest step-halving disagreement seen during verification.
    pub step_halving_error: f64,
}

impl Trajectory {
    pub fn branch(&self, branch: AtomBranch) -> &BranchWaveforms {
        &self.branches[branch.index()]
    }

    pub fn len(&self) -> usize {
        self.c_e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c_e.is_empty()
    }

    /// Integrated norm of the incoming drive over the grid, both branches.
    pub fn input_norm(&self) -> f64 {
        self.branches
            .iter()
            .map(|b| self.integrate_sq(&[&b.in_a, &b.in_b]))
            .sum()
    }

    /// Norm still held by the atom and cavities at the last grid point.
    pub fn final_norm(&self) -> f64 {
        let last = self.len() - 1;
        self.c_e[last].norm_sqr()
            + self
                .branches
                .iter()
                .map(|b| b.c_a[last].norm_sqr() + b.c_b[last].norm_sqr())
                .sum::<f64>()
    }

    /// `∫ Σ |series|² dt` by the trapezoid rule.
    pub fn integrate_sq(&self, series: &[&[Complex64]]) -> f64 {
        trapezoid_by(self.len(), self.grid.dt(), |i| {
            series.iter().map(|s| s[i].norm_sqr()).sum()
        })
    }
}

#[derive(Debug, Clone, Copy)]
struct Rates {
    gamma: f64,
    g_a: f64,
    g_b: f64,
    kappa_a: f64,
    kappa_b: f64,
    in_a: f64,
    in_b: f64,
}

impl Rates {
    fn new(p: &SystemParams) -> Self {
        Self {
            gamma: p.gamma(),
            g_a: p.g_a,
            g_b: p.g_b,
            kappa_a: p.kappa_a(),
            kappa_b: p.kappa_b(),
            in_a: (2.0 * p.kappa_a_r).sqrt(),
            in_b: (2.0 * p.kappa_b_r).sqrt(),
        }
    }

    #[inline]
    fn rhs(&self, y: &State, d: &[BranchDrive; 2]) -> State {
        let mi = Complex64::new(0.0, -1.0);
        let [ce, ca1, cb1, ca2, cb2] = *y;
        [
            -self.gamma * ce + mi * (self.g_a * ca1 + self.g_b * cb1),
            mi * self.g_a * ce - self.kappa_a * ca1 + self.in_a * d[0].alpha,
            mi * self.g_b * ce - self.kappa_b * cb1 + self.in_b * d[0].beta,
            -self.kappa_a * ca2 + self.in_a * d[1].alpha,
            -self.kappa_b * cb2 + self.in_b * d[1].beta,
        ]
    }
}

#[inline]
fn axpy(y: &State, h: f64, k: &State) -> State {
    std::array::from_fn(|j| y[j] + h * k[j])
}

/// Fixed-step classical RK4 from a zero state; the drive is evaluated at the
/// stage times.
fn solve<F>(rates: &Rates, grid: &TimeGrid, drive: &F) -> Vec<State>
where
    F: Fn(f64) -> [BranchDrive; 2],
{
    let h = grid.dt();
    let mut out = Vec::with_capacity(grid.len());
    let mut y = [ZERO; 5];
    out.push(y);
    let mut d0 = drive(grid.time(0));
    for i in 0..grid.steps() {
        let t = grid.time(i);
        let d_mid = drive(t + 0.5 * h);
        let d1 = drive(grid.time(i + 1));
        let k1 = rates.rhs(&y, &d0);
        let k2 = rates.rhs(&axpy(&y, 0.5 * h, &k1), &d_mid);
        let k3 = rates.rhs(&axpy(&y, 0.5 * h, &k2), &d_mid);
        let k4 = rates.rhs(&axpy(&y, h, &k3), &d1);
        y = std::array::from_fn(|j| y[j] + h / 6.0 * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]));
        out.push(y);
        d0 = d1;
    }
    out
}

/// Integrates the five amplitudes under an arbitrary drive.
///
/// The solution is recomputed with half the step and rejected if the two
/// disagree by more than [`STEP_HALVING_TOL`] anywhere on the grid, or if
/// more than [`RING_DOWN_TOL`] of norm is still inside at the end.
pub fn integrate_driven<F>(params: &SystemParams, grid: &TimeGrid, drive: F) -> Result<Trajectory>
where
    F: Fn(f64) -> [BranchDrive; 2],
{
    params.validate()?;
    let rates = Rates::new(params);
    let coarse = solve(&rates, grid, &drive);
    let fine = solve(&rates, &grid.refined(), &drive);
    let disagreement = coarse
        .iter()
        .zip(fine.iter().step_by(2))
        .flat_map(|(c, f)| c.iter().zip(f).map(|(x, y)| (x - y).norm()))
        // NaN must survive the reduction
        .fold(0.0, |m, d| if d > m || d.is_nan() { d } else { m });
    if disagreement.is_nan() || disagreement > STEP_HALVING_TOL {
        return Err(Error::IntegrationAccuracy {
            disagreement,
            tolerance: STEP_HALVING_TOL,
        });
    }

    let n = grid.len();
    let mut c_e = Vec::with_capacity(n);
    let mut branches = [
        BranchWaveforms::with_capacity(n),
        BranchWaveforms::with_capacity(n),
    ];
    let out_a_t = (2.0 * params.kappa_a_t).sqrt();
    let out_b_t = (2.0 * params.kappa_b_t).sqrt();
    for (i, y) in coarse.iter().enumerate() {
        let d = drive(grid.time(i));
        c_e.push(y[0]);
        for (k, w) in branches.iter_mut().enumerate() {
            let (ca, cb) = (y[1 + 2 * k], y[2 + 2 * k]);
            w.c_a.push(ca);
            w.c_b.push(cb);
            w.in_a.push(d[k].alpha);
            w.in_b.push(d[k].beta);
            w.out_a_r.push(rates.in_a * ca - d[k].alpha);
            w.out_b_r.push(rates.in_b * cb - d[k].beta);
            w.out_a_t.push(out_a_t * ca);
            w.out_b_t.push(out_b_t * cb);
        }
    }
    let traj = Trajectory {
        grid: *grid,
        c_e,
        branches,
        input: None,
        pulse: None,
        step_halving_error: disagreement,
    };
    let residual = traj.final_norm();
    if residual.is_nan() || residual > RING_DOWN_TOL {
        return Err(Error::RingDown {
            residual,
            tolerance: RING_DOWN_TOL,
        });
    }
    Ok(traj)
}

/// Integrates the response to a Gaussian single photon prepared in `input`.
///
/// Branch `k` is driven by `λ_k μ_a α_in(t)` at cavity `a` and
/// `λ_k μ_b α_in(t)` at cavity `b`.
pub fn integrate(
    params: &SystemParams,
    input: &InputSuperposition,
    pulse: &Pulse,
    grid: &TimeGrid,
) -> Result<Trajectory> {
    params.validate()?;
    grid.check_covers(params, pulse)?;
    let weights = [
        (input.lambda_1 * input.mu_a, input.lambda_1 * input.mu_b),
        (input.lambda_2 * input.mu_a, input.lambda_2 * input.mu_b),
    ];
    let mut traj = integrate_driven(params, grid, |t| {
        let env = pulse.amplitude(t);
        weights.map(|(wa, wb)| BranchDrive {
            alpha: wa * env,
            beta: wb * env,
        })
    })?;
    traj.input = Some(*input);
    traj.pulse = Some(*pulse);
    Ok(traj)
}

/// Where the injected probability went.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormBudget {
    pub reflected: f64,
    pub transmitted: f64,
    pub atomic_loss: f64,
    pub residual: f64,
    /// Norm injected by the drive over the grid.
    pub input: f64,
}

impl NormBudget {
    pub fn total(&self) -> f64 {
        self.reflected + self.transmitted + self.atomic_loss + self.residual
    }
}

/// Splits the injected norm into reflected, transmitted, scattered by the
/// atom (`2Γ∫|c_e|²`) and still inside at the end of the grid.
pub fn norm_budget(traj: &Trajectory, params: &SystemParams) -> Result<NormBudget> {
    let reflected = traj
        .branches
        .iter()
        .map(|b| traj.integrate_sq(&[&b.out_a_r, &b.out_b_r]))
        .sum();
    let transmitted = traj
        .branches
        .iter()
        .map(|b| traj.integrate_sq(&[&b.out_a_t, &b.out_b_t]))
        .sum();
    let atomic_loss = 2.0 * params.gamma() * traj.integrate_sq(&[&traj.c_e]);
    let budget = NormBudget {
        reflected,
        transmitted,
        atomic_loss,
        residual: traj.final_norm(),
        input: traj.input_norm(),
    };
    let mismatch = (budget.total() - budget.input).abs();
    if mismatch.is_nan() || mismatch > BUDGET_TOL {
        return Err(Error::BudgetMismatch {
            total: budget.total(),
            input: budget.input,
        });
    }
    Ok(budget)
}

/// Largest deviation of the output waveforms from the steady-state
/// prediction `port amplitude × α_in(t)` built from `coeffs`.
///
/// Meant for runs with the atom in a definite ground state; the branch that
/// carries the excitation is picked from `|λ1|`. Requires a trajectory that
/// was driven by a pulse.
pub fn steady_envelope_check(
    traj: &Trajectory,
    coeffs: &TransferCoefficients,
    input: &InputSuperposition,
) -> Result<f64> {
    let pulse = traj.pulse.ok_or(Error::InvalidParameter {
        name: "trajectory",
        reason: "no pulse envelope recorded".into(),
    })?;
    let branch = if input.lambda_1.norm() > 0.5 {
        AtomBranch::G1
    } else {
        AtomBranch::G2
    };
    let lambda = input.lambda(branch);
    let ports = output_collective_state(coeffs, input.mu_plus(), input.mu_minus()).as_array();
    // as_array order: r_a, r_b, t_a, t_b, matching BranchWaveforms::outputs
    let outs = traj.branch(branch).outputs();
    let mut worst: f64 = 0.0;
    for (i, t) in traj.grid.times().enumerate() {
        let env = pulse.amplitude(t);
        for (p, out) in ports.iter().zip(outs.iter()) {
            worst = worst.max((out[i] - lambda * p * env).norm());
        }
    }
    Ok(worst)
}
