//! Error type shared by every module in the crate.

use thiserror::Error;

/// All the ways a computation in this crate can fail.
///
/// Display strings start with a stable lowercase category token
/// (`domain:`, `resonance:`, ...) so callers can map failures onto
/// machine-readable channels without matching on variants.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter is outside the range where the model is defined.
    #[error("domain: {name} = {value} violates {requirement}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    /// A dispersion symbol was asked for a derivative where it has none.
    #[error("domain: symbol is not differentiable at xi = {xi}: {detail}")]
    NonDifferentiable { xi: f64, detail: &'static str },

    /// Could not parse a symbol specification string.
    #[error("usage: cannot parse symbol {input:?}: {detail}")]
    SymbolParse { input: String, detail: &'static str },

    /// A denominator of the small-amplitude expansion vanishes (harmonic
    /// resonance), so the expansion and the reduced pencil do not exist.
    #[error("resonance: at kappa = {kappa}, {detail}")]
    Resonance { kappa: f64, detail: &'static str },

    /// Root bracketing failed: no sign change over the scanned interval.
    #[error("bracket: no sign change of the target function on [{lo}, {hi}]")]
    NoBracket { lo: f64, hi: f64 },

    /// An iteration stopped without reaching its tolerance.
    #[error("convergence: stopped after {iterations} iterations with residual {residual:.3e} (tolerance {tol:.3e})")]
    NoConvergence {
        iterations: u32,
        residual: f64,
        tol: f64,
    },

    /// Incompatible truncation sizes or vector lengths.
    #[error("dimension: {detail} (needed {needed}, got {got})")]
    DimensionMismatch {
        needed: usize,
        got: usize,
        detail: &'static str,
    },

    /// A computation produced NaN/inf or an algebraic step broke down.
    #[error("numerical: {detail}")]
    Numerical { detail: &'static str },

    /// The Krein signature is only defined on the imaginary axis.
    #[error("numerical: eigenvalue has real part {re:.3e}; signature needs a purely imaginary, simple eigenvalue")]
    NotPurelyImaginary { re: f64 },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable category token (first word of the display).
    pub fn category(&self) -> &'static str {
        match self {
            Error::InvalidParameter { .. } | Error::NonDifferentiable { .. } => "domain",
            Error::SymbolParse { .. } => "usage",
            Error::Resonance { .. } => "resonance",
            Error::NoBracket { .. } => "bracket",
            Error::NoConvergence { .. } => "convergence",
            Error::DimensionMismatch { .. } => "dimension",
            Error::Numerical { .. } | Error::NotPurelyImaginary { .. } => "numerical",
        }
    }
}
