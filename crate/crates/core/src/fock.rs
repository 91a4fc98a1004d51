//! Dense truncated two-mode Fock space.
//!
//! Used as a brute-force check of the collective-mode algebra: bright states
//! `(X₊†)^N/√N! |0,0⟩` and dark states `(X₋†)^N/√N! |0,0⟩` with
//! `X± = (a ± b)/√2`, their (in)visibility to the atom coupling `a + b`, and
//! the decomposition of coherent pairs `|α, ±α⟩`.

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest tolerated truncation tail for coherent states.
pub const MAX_TAIL: f64 = 1e-10;

/// Default photon-number cutoff per mode.
pub const DEFAULT_CUTOFF: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollectiveKind {
    Bright,
    Dark,
}

impl CollectiveKind {
    fn sign(self) -> f64 {
        match self {
            CollectiveKind::Bright => 1.0,
            CollectiveKind::Dark => -1.0,
        }
    }
}

/// Relative phase of a coherent pair `|α, ±α⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairPhase {
    Same,
    Opposite,
}

/// Two bosonic modes truncated at `cutoff` photons each, basis `|n_a, n_b⟩`.
#[derive(Debug, Clone)]
pub struct FockSpace {
    cutoff: usize,
    a: DMatrix<Complex64>,
    b: DMatrix<Complex64>,
}

impl FockSpace {
    pub fn new(cutoff: usize) -> Result<Self> {
        if cutoff == 0 {
            return Err(Error::Truncation("cutoff must be at least 1".into()));
        }
        let d = cutoff + 1;
        let dim = d * d;
        let mut a = DMatrix::zeros(dim, dim);
        let mut b = DMatrix::zeros(dim, dim);
        for na in 0..d {
            for nb in 0..d {
                let col = na * d + nb;
                if na > 0 {
                    a[((na - 1) * d + nb, col)] = Complex64::new((na as f64).sqrt(), 0.0);
                }
                if nb > 0 {
                    b[(na * d + nb - 1, col)] = Complex64::new((nb as f64).sqrt(), 0.0);
                }
            }
        }
        Ok(Self { cutoff, a, b })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn dim(&self) -> usize {
        (self.cutoff + 1).pow(2)
    }

    /// Basis index of `|n_a, n_b⟩`.
    pub fn index(&self, na: usize, nb: usize) -> usize {
        na * (self.cutoff + 1) + nb
    }

    pub fn a(&self) -> &DMatrix<Complex64> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<Complex64> {
        &self.b
    }

    /// `X± = (a ± b)/√2`.
    pub fn collective(&self, kind: CollectiveKind) -> DMatrix<Complex64> {
        (&self.a + &self.b * Complex64::from(kind.sign())) * Complex64::from(FRAC_1_SQRT_2)
    }

    /// Total photon number `a†a + b†b`.
    pub fn number(&self) -> DMatrix<Complex64> {
        self.a.adjoint() * &self.a + self.b.adjoint() * &self.b
    }

    pub fn vacuum(&self) -> TwoModeState {
        self.basis(0, 0)
    }

    pub fn basis(&self, na: usize, nb: usize) -> TwoModeState {
        let mut v = DVector::zeros(self.dim());
        v[self.index(na, nb)] = Complex64::new(1.0, 0.0);
        TwoModeState { amplitudes: v }
    }
}

/// State vector over `|n_a, n_b⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeState {
    pub amplitudes: DVector<Complex64>,
}

impl TwoModeState {
    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &TwoModeState) -> Complex64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn apply(&self, op: &DMatrix<Complex64>) -> TwoModeState {
        TwoModeState {
            amplitudes: op * &self.amplitudes,
        }
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `(X±†)^N/√N! |0,0⟩`.
pub fn build_collective_state(
    space: &FockSpace,
    kind: CollectiveKind,
    n: usize,
) -> Result<TwoModeState> {
    if n > space.cutoff {
        return Err(Error::Truncation(format!(
            "{n}-photon collective state does not fit under cutoff {}",
            space.cutoff
        )));
    }
    let raise = space.collective(kind).adjoint();
    let mut v = space.vacuum().amplitudes;
    for _ in 0..n {
        v = &raise * v;
    }
    v /= Complex64::from(factorial(n).sqrt());
    Ok(TwoModeState { amplitudes: v })
}

/// `‖(a + b)|Ψ^N⟩‖` for the collective family `kind`.
///
/// Zero for every dark state; `√(2N)` for bright states.
pub fn coupling_norm(space: &FockSpace, kind: CollectiveKind, n: usize) -> Result<f64> {
    if n + 1 > space.cutoff {
        return Err(Error::Truncation(format!(
            "need N ≤ cutoff − 1 = {}, got N = {n}",
            space.cutoff - 1
        )));
    }
    let state = build_collective_state(space, kind, n)?;
    let coupling = space.a() + space.b();
    Ok(state.apply(&coupling).norm())
}

/// `‖(a + b)|Ψ_D^N⟩‖`, the residual of the atom coupling on a dark state.
pub fn coupling_annihilates_dark(space: &FockSpace, n: usize) -> Result<f64> {
    coupling_norm(space, CollectiveKind::Dark, n)
}

/// Single-mode coherent-state tail mass beyond `cutoff`:
/// `e^{−|α|²} Σ_{n>cutoff} |α|^{2n}/n!`.
pub fn coherent_tail(alpha: Complex64, cutoff: usize) -> f64 {
    let x = alpha.norm_sqr();
    let mut term = (-x).exp();
    let mut kept = 0.0;
    for n in 0..=cutoff {
        if n > 0 {
            term *= x / n as f64;
        }
        kept += term;
    }
    // sum the tail directly; subtracting from 1 loses it to rounding
    let mut tail = 0.0;
    for n in cutoff + 1..cutoff + 200 {
        term *= x / n as f64;
        tail += term;
        if term < 1e-300 || term < tail * 1e-17 {
            break;
        }
    }
    if tail == 0.0 {
        (1.0 - kept).max(0.0)
    } else {
        tail
    }
}

/// Projections of `|α, ±α⟩` onto both collective families.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentPairProjection {
    /// `⟨Ψ^N|α, ±α⟩` for the family matching the phase (bright for `Same`).
    pub matching: Vec<Complex64>,
    /// Projections onto the other family; zero in exact arithmetic.
    pub opposite: Vec<Complex64>,
    /// Upper bound on the two-mode norm lost to truncation.
    pub tail_bound: f64,
}

/// Builds `|α⟩ ⊗ |±α⟩ = e^{−|α|²} exp(α(a† ± b†))|0,0⟩` by its series in the
/// truncated space and projects it onto `|Ψ_B^N⟩`, `|Ψ_D^N⟩`, `N ≤ n_max`.
pub fn coherent_pair_coefficients(
    alpha: Complex64,
    phase: PairPhase,
    n_max: usize,
    space: &FockSpace,
) -> Result<CoherentPairProjection> {
    if n_max > space.cutoff {
        return Err(Error::Truncation(format!(
            "n_max = {n_max} exceeds cutoff {}",
            space.cutoff
        )));
    }
    let tail_bound = 2.0 * coherent_tail(alpha, space.cutoff);
    if tail_bound > MAX_TAIL {
        return Err(Error::Truncation(format!(
            "coherent tail {tail_bound:.3e} beyond cutoff {} exceeds {MAX_TAIL:.0e}",
            space.cutoff
        )));
    }
    let (matching_kind, opposite_kind, sign) = match phase {
        PairPhase::Same => (CollectiveKind::Bright, CollectiveKind::Dark, 1.0),
        PairPhase::Opposite => (CollectiveKind::Dark, CollectiveKind::Bright, -1.0),
    };
    let raise = (space.a() + space.b() * Complex64::from(sign)).adjoint() * alpha;
    let mut term = space.vacuum().amplitudes;
    let mut state = term.clone();
    for k in 1..=2 * space.cutoff {
        term = &raise * term / Complex64::from(k as f64);
        state += &term;
    }
    state *= Complex64::from((-alpha.norm_sqr()).exp());
    let state = TwoModeState { amplitudes: state };

    let project = |kind| -> Result<Vec<Complex64>> {
        (0..=n_max)
            .map(|n| Ok(build_collective_state(space, kind, n)?.inner(&state)))
            .collect()
    };
    Ok(CoherentPairProjection {
        matching: project(matching_kind)?,
        opposite: project(opposite_kind)?,
        tail_bound,
    })
}

/// Overlaps of single-photon port states with the `N = 1` collective states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitReport {
    /// `⟨Ψ_B¹|a†|0,0⟩`
    pub a_bright: Complex64,
    /// `⟨Ψ_D¹|a†|0,0⟩`
    pub a_dark: Complex64,
    /// `⟨Ψ_B¹|b†|0,0⟩`
    pub b_bright: Complex64,
    /// `⟨Ψ_D¹|b†|0,0⟩`
    pub b_dark: Complex64,
    /// `⟨Ψ_B¹|Ψ_D¹⟩`
    pub mutual: Complex64,
}

/// Decomposes a photon in port `a` (and `b`) into bright and dark parts.
pub fn single_photon_split_oracle(space: &FockSpace) -> Result<SplitReport> {
    let bright = build_collective_state(space, CollectiveKind::Bright, 1)?;
    let dark = build_collective_state(space, CollectiveKind::Dark, 1)?;
    let vac = space.vacuum();
    let in_a = vac.apply(&space.a().adjoint());
    let in_b = vac.apply(&space.b().adjoint());
    Ok(SplitReport {
        a_bright: bright.inner(&in_a),
        a_dark: dark.inner(&in_a),
        b_bright: bright.inner(&in_b),
        b_dark: dark.inner(&in_b),
        mutual: bright.inner(&dark),
    })
}
