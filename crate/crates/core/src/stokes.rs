//! Small-amplitude periodic traveling waves ("Stokes waves").
//!
//! A `2*pi/kappa`-periodic traveling wave of speed `c` with profile
//! `w(z) = sum_n w_n cos(n z)` (in the scaled variable `z = kappa x`)
//! satisfies, mode by mode,
//!
//! ```text
//! (alpha(kappa m) - c) e_m + (e * e)_m = (1 - c)^2 b delta_{m0},
//! ```
//!
//! where `e_m` are the symmetric exponential coefficients of `w`, `*` is
//! convolution, and `b` parametrizes the constant of integration (`b = 0`
//! selects the zero-mean-at-leading-order branch). The amplitude parameter
//! `a` fixes the first cosine harmonic: `w_1 = a`.
//!
//! [`asymptotic_wave`] evaluates the quadratic-order bifurcation expansion;
//! [`solve_wave`] corrects it to spectral accuracy with a Newton iteration
//! on a Galerkin truncation. Both are valid in the small-amplitude regime;
//! amplitudes are capped at 0.2 where the expansion ansatz (and the
//! uniqueness of the Newton target) is safe.

use nalgebra::{DMatrix, DVector};

use crate::dispersion::Symbol;
use crate::error::{Error, Result};
use crate::fourier::{
    cos_from_exp, effective_len, eval_cos_series, exp_from_cos, self_convolution, sym_l2_norm,
};

/// Largest supported `|a|` and `|b|`.
pub const AMPLITUDE_CAP: f64 = 0.2;

/// Coefficients below this threshold are treated as numerically absent
/// when measuring a wave's effective bandwidth.
pub const BANDWIDTH_TOL: f64 = 1e-13;

/// A periodic traveling wave in scaled cosine coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct TravelingWave {
    /// Dispersion symbol of the governing model.
    pub symbol: Symbol,
    /// Wavenumber of the fundamental harmonic.
    pub kappa: f64,
    /// Amplitude parameter: the first cosine coefficient `w_1`.
    pub a: f64,
    /// Constant-of-integration parameter.
    pub b: f64,
    /// Wave speed.
    pub c: f64,
    /// Cosine coefficients `w_0 ..= w_N` of the profile.
    pub cos_coeffs: Vec<f64>,
    /// Full spectral residual norm of the traveling-wave equations
    /// (modes `0 ..= 2N`) at these coefficients.
    pub residual_norm: f64,
    /// Newton iterations spent (0 for expansion-only waves).
    pub iterations: u32,
}

impl TravelingWave {
    /// Evaluate the profile at scaled position `z`.
    pub fn eval(&self, z: f64) -> f64 {
        eval_cos_series(&self.cos_coeffs, z)
    }

    /// Number of leading cosine modes above the bandwidth threshold
    /// (the index of the highest active harmonic plus one; 0 for the
    /// zero wave).
    pub fn effective_modes(&self) -> usize {
        effective_len(&self.cos_coeffs, BANDWIDTH_TOL)
    }
}

fn check_wave_params(sym: &Symbol, kappa: f64, a: f64, b: f64) -> Result<()> {
    sym.validate()?;
    if !(kappa.is_finite() && kappa > 0.0) {
        return Err(Error::InvalidParameter {
            name: "kappa",
            value: kappa,
            requirement: "positive and finite",
        });
    }
    if !(a.is_finite() && a.abs() <= AMPLITUDE_CAP) {
        return Err(Error::InvalidParameter {
            name: "a",
            value: a,
            requirement: "|a| <= 0.2",
        });
    }
    if !(b.is_finite() && b.abs() <= AMPLITUDE_CAP) {
        return Err(Error::InvalidParameter {
            name: "b",
            value: b,
            requirement: "|b| <= 0.2",
        });
    }
    Ok(())
}

/// The two denominators of the bifurcation expansion; both vanish only in
/// the (unsupported) resonant regimes, reachable here just by underflow.
fn expansion_denominators(sym: &Symbol, kappa: f64) -> Result<(f64, f64)> {
    let beta = 1.0 - sym.alpha(kappa);
    let delta = sym.alpha(kappa) - sym.alpha(2.0 * kappa);
    if beta.abs() < f64::MIN_POSITIVE {
        return Err(Error::Resonance {
            kappa,
            detail: "alpha(kappa) - alpha(0) vanishes",
        });
    }
    if delta.abs() < f64::MIN_POSITIVE {
        return Err(Error::Resonance {
            kappa,
            detail: "alpha(kappa) - alpha(2 kappa) vanishes",
        });
    }
    Ok((beta, delta))
}

/// Full spectral residual (modes `0 ..= 2N`) of the traveling-wave
/// equations for given exponential coefficients and speed.
fn residual_modes(sym: &Symbol, kappa: f64, b: f64, e: &[f64], c: f64) -> Vec<f64> {
    let n = e.len() - 1;
    let conv = self_convolution(e);
    let mut r = conv;
    for (m, rm) in r.iter_mut().enumerate() {
        if m <= n {
            *rm += (sym.alpha(kappa * m as f64) - c) * e[m];
        }
        if m == 0 {
            *rm -= (1.0 - c) * (1.0 - c) * b;
        }
    }
    r
}

/// Quadratic-order bifurcation expansion of the wave with parameters
/// `(a, b)` at wavenumber `kappa`:
///
/// ```text
/// w  = (1-alpha)(b - 3 b^2) - a^2/(2 beta) + a cos z + a^2/(2 delta) cos 2z
/// c  = alpha + 2 beta b - 6 beta b^2 - a^2/beta + a^2/(2 delta)
/// ```
///
/// with `beta = 1 - alpha(kappa)` and `delta = alpha(kappa) -
/// alpha(2 kappa)`. The stored residual is the exact spectral residual of
/// these coefficients, which is `O((|a| + |b|)^3)`.
pub fn asymptotic_wave(sym: &Symbol, kappa: f64, a: f64, b: f64) -> Result<TravelingWave> {
    check_wave_params(sym, kappa, a, b)?;
    let (beta, delta) = expansion_denominators(sym, kappa)?;
    let alpha = sym.alpha(kappa);
    let mut e = vec![0.0; 3];
    e[0] = beta * (b - 3.0 * b * b) - 0.5 * a * a / beta;
    e[1] = 0.5 * a;
    e[2] = 0.25 * a * a / delta;
    let c = alpha + 2.0 * beta * b - 6.0 * beta * b * b + a * a * (0.5 / delta - 1.0 / beta);
    let residual_norm = sym_l2_norm(&residual_modes(sym, kappa, b, &e, c));
    Ok(TravelingWave {
        symbol: *sym,
        kappa,
        a,
        b,
        c,
        cos_coeffs: cos_from_exp(&e),
        residual_norm,
        iterations: 0,
    })
}

/// Solve the Galerkin truncation (modes `0 ..= n` plus the amplitude
/// normalization `w_1 = a`) by Newton iteration seeded with
/// [`asymptotic_wave`], to full-residual tolerance `tol`.
///
/// Converges in a handful of iterations throughout the supported amplitude
/// range; the zero wave (`a = b = 0`) is exact at the seed and spends no
/// iterations. Fails with a convergence error after 50 iterations and with
/// a numerical error if the Jacobian becomes singular.
pub fn solve_wave(sym: &Symbol, kappa: f64, a: f64, b: f64, n: usize, tol: f64) -> Result<TravelingWave> {
    check_wave_params(sym, kappa, a, b)?;
    if n < 2 {
        return Err(Error::DimensionMismatch {
            needed: 2,
            got: n,
            detail: "Galerkin truncation must include modes 0..=2",
        });
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            requirement: "positive and finite",
        });
    }
    let seed = asymptotic_wave(sym, kappa, a, b)?;
    let mut e = vec![0.0; n + 1];
    e[..3].copy_from_slice(&exp_from_cos(&seed.cos_coeffs));
    let mut c = seed.c;

    let alphas: Vec<f64> = (0..=n).map(|m| sym.alpha(kappa * m as f64)).collect();
    const MAX_ITERS: u32 = 50;
    let mut residual_norm = f64::INFINITY;
    for iterations in 0..=MAX_ITERS {
        let full = residual_modes(sym, kappa, b, &e, c);
        residual_norm = sym_l2_norm(&full);
        if !residual_norm.is_finite() {
            return Err(Error::Numerical {
                detail: "traveling-wave residual became non-finite",
            });
        }
        if residual_norm <= tol {
            return Ok(TravelingWave {
                symbol: *sym,
                kappa,
                a,
                b,
                c,
                cos_coeffs: cos_from_exp(&e),
                residual_norm,
                iterations,
            });
        }
        if iterations == MAX_ITERS {
            break;
        }

        // Galerkin system: residual modes 0..=n plus the normalization row.
        let dim = n + 2;
        let mut rhs = DVector::<f64>::zeros(dim);
        for m in 0..=n {
            rhs[m] = -full[m];
        }
        rhs[n + 1] = -(2.0 * e[1] - a);
        let at = |i: usize| if i <= n { e[i] } else { 0.0 };
        let jac = DMatrix::<f64>::from_fn(dim, dim, |r, col| {
            if r == n + 1 {
                // Normalization row: w_1 = 2 e_1 = a.
                return if col == 1 { 2.0 } else { 0.0 };
            }
            if col == n + 1 {
                // Speed column: d/dc of mode r.
                return -e[r] + if r == 0 { 2.0 * (1.0 - c) * b } else { 0.0 };
            }
            let linear = if r == col { alphas[r] - c } else { 0.0 };
            let conv = if col == 0 {
                2.0 * at(r)
            } else {
                2.0 * (at(r.abs_diff(col)) + at(r + col))
            };
            linear + conv
        });
        let delta = jac.lu().solve(&rhs).ok_or(Error::Numerical {
            detail: "singular Jacobian in the traveling-wave Newton solve",
        })?;
        for m in 0..=n {
            e[m] += delta[m];
        }
        c += delta[n + 1];
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERS,
        residual: residual_norm,
        tol,
    })
}

/// Recompute the full spectral residual norm of a wave from its stored
/// coefficients (useful after transformations).
pub fn wave_residual(wave: &TravelingWave) -> Result<f64> {
    wave.symbol.validate()?;
    let e = exp_from_cos(&wave.cos_coeffs);
    Ok(sym_l2_norm(&residual_modes(
        &wave.symbol,
        wave.kappa,
        wave.b,
        &e,
        wave.c,
    )))
}

/// Apply the Galilean symmetry with velocity parameter `v`: the profile
/// gains the constant `v`, the speed shifts by `2v`, and the
/// constant-of-integration parameter is remapped so that the traveling-wave
/// equations hold exactly for the shifted triple. The spectral residual is
/// preserved to rounding.
///
/// Fails if the shifted speed reaches `c = 1`, where the parametrization
/// of the constant by `b` degenerates.
pub fn galilean_shift(wave: &TravelingWave, v: f64) -> Result<TravelingWave> {
    if !v.is_finite() {
        return Err(Error::InvalidParameter {
            name: "v",
            value: v,
            requirement: "finite",
        });
    }
    let c_new = wave.c + 2.0 * v;
    let denom = (1.0 - c_new) * (1.0 - c_new);
    if denom < f64::MIN_POSITIVE {
        return Err(Error::Numerical {
            detail: "Galilean shift lands on c = 1 where b is not defined",
        });
    }
    let old = 1.0 - wave.c;
    let b_new = (old * old * wave.b + old * v - v * v) / denom;
    let mut cos_coeffs = wave.cos_coeffs.clone();
    cos_coeffs[0] += v;
    let mut shifted = TravelingWave {
        symbol: wave.symbol,
        kappa: wave.kappa,
        a: wave.a,
        b: b_new,
        c: c_new,
        cos_coeffs,
        residual_norm: 0.0,
        iterations: wave.iterations,
    };
    shifted.residual_norm = wave_residual(&shifted)?;
    Ok(shifted)
}
