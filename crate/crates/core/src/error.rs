//! Error type shared by all modules.

/// Errors produced by model construction, signal evaluation, and estimation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A parameter lies outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// `q` is within the exclusion margin of a singular parameter value
    /// where the growth rate blows up.
    #[error("q = {q} is within {margin:e} of the singular value {singular}")]
    SingularParameter { q: f64, singular: f64, margin: f64 },

    /// An estimated growth rate has no preimage in the prior set.
    /// Carries the raw estimate so sweeps can record it and move on.
    #[error("growth rate {f_hat} is outside the range of the growth map on the prior set")]
    PriorSet { f_hat: f64 },

    /// The far window carries essentially no signal, so the norm ratio is
    /// meaningless. A zero output carries no information.
    #[error("far-window norm {norm_far:e} below {threshold:e}; signal too weak to identify")]
    ZeroSignal { norm_far: f64, threshold: f64 },

    /// An observation coefficient is far below the model's own lower bound,
    /// which signals a misconfigured model rather than bad data.
    #[error("observation coefficient |κ_{n}| = {kappa:e} below half the model bound {bound:e}")]
    CoefficientDegeneracy { n: i64, kappa: f64, bound: f64 },

    /// The disturbance-case error bound is undefined because the measured
    /// norm does not exceed the disturbance energy (SNR too low).
    #[error("error bound unavailable: window norm {norm:e} ≤ disturbance energy {energy:e}")]
    BoundUnavailable { norm: f64, energy: f64 },

    /// A window is too short for the Ingham inequality at the given gap.
    #[error("window length {length} ≤ 2π/γ = {required} required by the frequency gap")]
    GapWindow { length: f64, required: f64 },

    /// An exponential overflowed the representable range.
    #[error("exponent {exponent} exceeds the representable range")]
    Overflow { exponent: f64 },

    /// A quadrature or series evaluation produced a non-finite value.
    #[error("numerical error: {0}")]
    Numerical(String),

    /// Malformed configuration or input file.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
