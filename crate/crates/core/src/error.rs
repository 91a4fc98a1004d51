use thiserror::Error;

/// Errors raised by parameter validation and the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("{what} not normalized (norm² = {norm_sq})")]
    NotNormalized { what: &'static str, norm_sq: f64 },

    #[error("cooperativity requires identical symmetric cavities (g_a = g_b, all four κ equal)")]
    RequiresSymmetricCavities,

    #[error("cooperativity undefined for Γ = 0")]
    UndefinedCooperativity,

    #[error(
        "collective modes decouple only for identical cavities (g_a = g_b, κ_a = κ_b per mirror)"
    )]
    NonIdenticalCavities,

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("integration accuracy check failed: step-halving disagreement {disagreement:.3e} exceeds {tolerance:.1e}")]
    IntegrationAccuracy { disagreement: f64, tolerance: f64 },

    #[error("grid too short for ring-down: residual norm {residual:.3e} exceeds {tolerance:.1e}")]
    RingDown { residual: f64, tolerance: f64 },

    #[error("norm budget does not close: total {total:.9} differs from input norm {input:.9}")]
    BudgetMismatch { total: f64, input: f64 },

    #[error("Fock-space truncation violated: {0}")]
    Truncation(String),

    #[error("sweep row C = {c}: {source}")]
    SweepRow { c: f64, source: Box<Error> },
}

pub type Result<T> = std::result::Result<T, Error>;
