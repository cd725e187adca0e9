//! Closed-form modulational (Benjamin–Feir) instability indices.
//!
//! For each model the sign of a single scalar decides the stability of
//! small-amplitude periodic traveling waves of wavenumber `kappa`:
//!
//! * [`gamma_index`] is the classical index; the wave is modulationally
//!   unstable iff `Gamma(kappa) < 0`.
//! * [`lambda_index`] is the coefficient of `a^2` in the expansion of the
//!   discriminant of the reduced spectral problem (see the `reduction`
//!   module); it carries the same sign as `Gamma` — its positive prefactor
//!   bundles the curvature and group-velocity factors — and quantifies how
//!   fast the three near-origin eigenvalues leave the imaginary axis.
//!
//! Model-specialized closed forms ([`lambda_fkdv`], [`lambda_ilw`],
//! [`gamma_ilw`]) are provided where the general expressions simplify; they
//! agree with the generic routines wherever both apply and stay finite in
//! regimes (large `kappa * depth`) where naive evaluation overflows.

use crate::dispersion::Symbol;
use crate::error::{Error, Result};

fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            requirement: "positive and finite",
        })
    }
}

/// Modulational instability index
/// `Gamma(z) = 3 alpha(z) - 2 alpha(2z) - 1 + z alpha'(z)`.
///
/// Requires `z > 0`. Behavior for the water-wave symbol: `Gamma(z)/z^2 ->
/// 1/2` as `z -> 0`, `Gamma -> -1` as `z -> inf`, with a single simple root
/// in between.
pub fn gamma_index(sym: &Symbol, z: f64) -> Result<f64> {
    sym.validate()?;
    require_positive("z", z)?;
    Ok(3.0 * sym.alpha(z) - 2.0 * sym.alpha(2.0 * z) - 1.0 + z * sym.alpha_d1(z)?)
}

/// Discriminant slope
/// `Lambda(kappa) = 2 (2 kappa alpha' + kappa^2 alpha'') *
/// (alpha - 1 + kappa alpha')^3 * Gamma(kappa) / (alpha - alpha(2 kappa))`
/// (all symbol values at `kappa` unless noted).
///
/// Fails with a resonance error when the small-amplitude expansion breaks
/// down (`alpha(kappa) = alpha(2 kappa)`, only approachable here via
/// underflow as `kappa -> 0`).
pub fn lambda_index(sym: &Symbol, kappa: f64) -> Result<f64> {
    sym.validate()?;
    require_positive("kappa", kappa)?;
    let a = sym.alpha(kappa);
    let a2 = sym.alpha(2.0 * kappa);
    let ad1 = sym.alpha_d1(kappa)?;
    let ad2 = sym.alpha_d2(kappa)?;
    let delta = a - a2;
    if delta.abs() < f64::MIN_POSITIVE {
        return Err(Error::Resonance {
            kappa,
            detail: "alpha(kappa) - alpha(2 kappa) vanishes",
        });
    }
    let curvature = 2.0 * kappa * ad1 + kappa * kappa * ad2;
    let group = a - 1.0 + kappa * ad1;
    let gamma = 3.0 * a - 2.0 * a2 - 1.0 + kappa * ad1;
    Ok(2.0 * curvature * group.powi(3) * gamma / delta)
}

/// Depth-scaled instability index for the intermediate long wave model,
/// a positive multiple of `Gamma` for [`Symbol::Ilw`] evaluated at
/// `y = kappa * depth`:
/// `1 - 2y^2 - cosh(2y) + 2y sinh(2y)`.
///
/// Positive for every `y != 0` (series `2y^4 + (4/9) y^6 + ...`), so ILW
/// waves are spectrally stable at small amplitude for all wavenumbers and
/// depths. Evaluated by series below `|y| = 0.1` where the closed form
/// cancels catastrophically.
pub fn gamma_ilw(y: f64) -> f64 {
    let y = y.abs();
    if y < 0.1 {
        let s = y * y;
        s * s * (2.0 + s * (4.0 / 9.0 + s * (2.0 / 45.0 + s * (4.0 / 1575.0))))
    } else {
        1.0 - 2.0 * y * y - (2.0 * y).cosh() + 2.0 * y * (2.0 * y).sinh()
    }
}

/// Closed form of [`lambda_index`] for the fractional KdV symbol:
/// `Lambda = 2 kappa^(4 sigma) sigma (1+sigma)^4 (2^(sigma+1) - 3 - sigma)
/// / (2^sigma - 1)`.
///
/// Sign is that of `2^(sigma+1) - sigma - 3`: negative (unstable) for
/// `sigma < 1`, zero at `sigma = 1`, positive (stable) for `sigma > 1` —
/// independent of `kappa`.
pub fn lambda_fkdv(sigma: f64, kappa: f64) -> Result<f64> {
    Symbol::fractional_kdv(sigma)?;
    require_positive("kappa", kappa)?;
    let s1 = 1.0 + sigma;
    Ok(2.0 * kappa.powf(4.0 * sigma) * sigma * s1.powi(4) * (2f64.powf(sigma + 1.0) - 3.0 - sigma)
        / (2f64.powf(sigma) - 1.0))
}

/// Closed form of [`lambda_index`] for the intermediate long wave symbol,
/// written without growing exponentials so it stays finite for arbitrarily
/// large `y = kappa * depth` (the textbook `sinh^12` form overflows near
/// `y = 60`). With `q = exp(-2y)`:
///
/// ```text
/// A = [(4y^2 - 1)(q + q^2) + (1 + q^3) - 8y (q - q^2)] / 2
/// G = (1 - 2y^2) q - (1 + q^2)/2 + y (1 - q^2)
/// Lambda = 128 A^2 G^3 / (depth^4 (1 - q)^12)
/// ```
pub fn lambda_ilw(depth: f64, kappa: f64) -> Result<f64> {
    Symbol::ilw(depth)?;
    require_positive("kappa", kappa)?;
    let y = kappa * depth;
    let q = (-2.0 * y).exp();
    let a_hat = 0.5 * ((4.0 * y * y - 1.0) * (q + q * q) + (1.0 + q * q * q) - 8.0 * y * (q - q * q));
    let g_hat = (1.0 - 2.0 * y * y) * q - 0.5 * (1.0 + q * q) + y * (1.0 - q * q);
    let denom = depth.powi(4) * (1.0 - q).powi(12);
    Ok(128.0 * a_hat * a_hat * g_hat.powi(3) / denom)
}

/// Verdict of the sign test on [`gamma_index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityClass {
    /// `Gamma(kappa) < 0`: sideband perturbations grow.
    ModulationallyUnstable,
    /// `Gamma(kappa) > 0`: spectrally stable near the origin.
    SpectrallyStable,
    /// `|Gamma(kappa)|` at or below the tie tolerance: the quadratic-order
    /// theory does not decide.
    Inconclusive,
}

impl std::fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            StabilityClass::ModulationallyUnstable => "modulationally-unstable",
            StabilityClass::SpectrallyStable => "spectrally-stable",
            StabilityClass::Inconclusive => "inconclusive",
        })
    }
}

/// Default tie tolerance for [`classify`]: `Gamma` values this close to
/// zero are rounding-level for O(1) symbol values.
pub const DEFAULT_TIE_TOL: f64 = 1e-12;

/// Classify the small-amplitude wave of wavenumber `kappa` by the sign of
/// [`gamma_index`], with `|Gamma| <= tie_tol` reported as inconclusive.
pub fn classify(sym: &Symbol, kappa: f64, tie_tol: f64) -> Result<StabilityClass> {
    let g = gamma_index(sym, kappa)?;
    Ok(if g.abs() <= tie_tol {
        StabilityClass::Inconclusive
    } else if g < 0.0 {
        StabilityClass::ModulationallyUnstable
    } else {
        StabilityClass::SpectrallyStable
    })
}
