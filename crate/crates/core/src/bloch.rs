//! Bloch–Floquet spectra of the linearization about a traveling wave.
//!
//! Linearizing the evolution about a wave `w` with speed `c` and looking
//! for solutions `e^(mu t) e^(i tau z) phi(z)` with `phi` `2*pi`-periodic
//! and Floquet exponent `tau in [-1/2, 1/2]` yields, in Fourier
//! coordinates, the truncated matrix eigenvalue problem `mu phi = L phi`
//! with
//!
//! ```text
//! L[m, l] = i (m + tau) [ (c - alpha(kappa (m + tau))) delta_{ml} - 2 e_{|m-l|} ],
//! ```
//!
//! `m, l = -n ..= n`, where `e` are the wave's symmetric exponential
//! coefficients (Hill's method). `L = i D H` with `D = diag(m + tau)` real
//! and `H` real symmetric, so eigenvalues are computed from the real matrix
//! `D H` and come in `{mu, -conj(mu)}` pairs; `H` doubles as the energy
//! quadratic form whose sign on eigenvectors is the Krein signature.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

use crate::error::{Error, Result};
use crate::fourier::exp_from_cos;
use crate::stokes::TravelingWave;

/// Truncated Bloch operator at one Floquet exponent.
#[derive(Debug, Clone)]
pub struct BlochMatrix {
    /// Floquet exponent in `[-1/2, 1/2]`.
    pub tau: f64,
    /// Wavenumber of the underlying wave.
    pub kappa: f64,
    /// Wave speed.
    pub c: f64,
    /// Amplitude parameter of the underlying wave.
    pub amplitude: f64,
    /// Truncation half-width: modes `-n ..= n`.
    pub n: usize,
    /// Real symmetric factor `H` (the energy form).
    h: DMatrix<f64>,
    /// Diagonal weights `m + tau`.
    weights: DVector<f64>,
}

impl BlochMatrix {
    /// Full matrix dimension `2n + 1`.
    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    /// The real symmetric factor `H`.
    pub fn h_matrix(&self) -> &DMatrix<f64> {
        &self.h
    }

    /// The real product `G = D H`; the Bloch operator is `L = i G`.
    pub fn real_factor(&self) -> DMatrix<f64> {
        let mut g = self.h.clone();
        for (r, mut row) in g.row_iter_mut().enumerate() {
            row *= self.weights[r];
        }
        g
    }

    /// The complex Bloch operator `L = i D H`.
    pub fn operator(&self) -> DMatrix<Complex<f64>> {
        let g = self.real_factor();
        DMatrix::from_fn(g.nrows(), g.ncols(), |r, s| Complex::new(0.0, g[(r, s)]))
    }
}

/// Sign of the energy quadratic form on an eigenvector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KreinSignature {
    Negative,
    /// Form magnitude at rounding level (degenerate or collision point).
    Zero,
    Positive,
}

/// Eigenvalues and growth summaries of one Bloch slice.
#[derive(Debug, Clone)]
pub struct SpectrumSlice {
    /// Floquet exponent of the slice.
    pub tau: f64,
    /// All `2n + 1` eigenvalues, sorted by modulus (ties by imaginary,
    /// then real part).
    pub eigenvalues: Vec<Complex<f64>>,
    /// Largest real part over the whole slice.
    pub max_growth: f64,
    /// Largest real part over the origin window
    /// `|mu| < 10 |tau| (1 + |a|)`; 0 when the window is empty
    /// (in particular at `tau = 0`).
    pub origin_growth: f64,
    /// The three eigenvalues closest to the origin.
    pub near_origin: Vec<Complex<f64>>,
    /// Deviation from symmetry about the imaginary axis:
    /// `max_j min_k |mu_j + conj(mu_k)|`.
    pub symmetry_defect: f64,
}

/// Assemble the truncated Bloch operator of `wave` at Floquet exponent
/// `tau` with modes `-n ..= n`.
///
/// Requires `tau in [-1/2, 1/2]` and a truncation wide enough to keep the
/// wave's self-interaction unaliased: `n >= 2 * effective_modes` and
/// `n >= 2`.
pub fn assemble_bloch(wave: &TravelingWave, tau: f64, n: usize) -> Result<BlochMatrix> {
    wave.symbol.validate()?;
    if !(tau.is_finite() && (-0.5..=0.5).contains(&tau)) {
        return Err(Error::InvalidParameter {
            name: "tau",
            value: tau,
            requirement: "tau in [-1/2, 1/2]",
        });
    }
    let needed = (2 * wave.effective_modes()).max(2);
    if n < needed {
        return Err(Error::DimensionMismatch {
            needed,
            got: n,
            detail: "Bloch truncation below twice the wave bandwidth",
        });
    }
    let e = exp_from_cos(&wave.cos_coeffs);
    let dim = 2 * n + 1;
    let sn = n as i64;
    let weights = DVector::from_fn(dim, |r, _| (r as i64 - sn) as f64 + tau);
    let h = DMatrix::from_fn(dim, dim, |r, s| {
        let m = r as i64 - sn;
        let l = s as i64 - sn;
        let gap = m.abs_diff(l) as usize;
        let conv = if gap < e.len() { -2.0 * e[gap] } else { 0.0 };
        if m == l {
            wave.c - wave.symbol.alpha(wave.kappa * weights[r]) + conv
        } else {
            conv
        }
    });
    Ok(BlochMatrix {
        tau,
        kappa: wave.kappa,
        c: wave.c,
        amplitude: wave.a,
        n,
        h,
        weights,
    })
}

/// Diagonalize one Bloch slice.
pub fn spectrum(bm: &BlochMatrix) -> Result<SpectrumSlice> {
    let g = bm.real_factor();
    let schur = nalgebra::linalg::Schur::try_new(g, f64::EPSILON, 10_000).ok_or(Error::Numerical {
        detail: "Schur iteration for the Bloch spectrum did not converge",
    })?;
    let lambdas = schur.complex_eigenvalues();
    let mut eigenvalues: Vec<Complex<f64>> = lambdas
        .iter()
        .map(|l| Complex::new(-l.im, l.re)) // mu = i * lambda
        .collect();
    if eigenvalues.iter().any(|m| !m.re.is_finite() || !m.im.is_finite()) {
        return Err(Error::Numerical {
            detail: "Bloch spectrum contains non-finite eigenvalues",
        });
    }
    eigenvalues.sort_by(|x, y| {
        x.norm()
            .total_cmp(&y.norm())
            .then(x.im.total_cmp(&y.im))
            .then(x.re.total_cmp(&y.re))
    });
    let max_growth = eigenvalues.iter().map(|m| m.re).fold(f64::NEG_INFINITY, f64::max);
    let window = 10.0 * bm.tau.abs() * (1.0 + bm.amplitude.abs());
    let origin_growth = eigenvalues
        .iter()
        .filter(|m| m.norm() < window)
        .map(|m| m.re)
        .fold(0.0f64, f64::max);
    let near_origin = eigenvalues.iter().take(3).copied().collect();
    let symmetry_defect = eigenvalues
        .iter()
        .map(|x| {
            eigenvalues
                .iter()
                .map(|y| (x + y.conj()).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0f64, f64::max);
    Ok(SpectrumSlice {
        tau: bm.tau,
        eigenvalues,
        max_growth,
        origin_growth,
        near_origin,
        symmetry_defect,
    })
}

/// Assemble and diagonalize a slice per Floquet exponent in `taus`.
pub fn growth_scan(wave: &TravelingWave, taus: &[f64], n: usize) -> Result<Vec<SpectrumSlice>> {
    taus.iter()
        .map(|&tau| spectrum(&assemble_bloch(wave, tau, n)?))
        .collect()
}

/// Krein signature of a simple, purely imaginary eigenvalue `mu` of the
/// slice: the sign of the energy form `<phi, H phi>` on its eigenvector.
///
/// Returns the signature and the (normalized) form value. Fails when
/// `|Re mu| > 1e-8` — off-axis eigenvalues carry no signature — or when
/// inverse iteration cannot isolate the eigenvector.
pub fn krein_signature(bm: &BlochMatrix, mu: Complex<f64>) -> Result<(KreinSignature, f64)> {
    if mu.re.abs() > 1e-8 {
        return Err(Error::NotPurelyImaginary { re: mu.re });
    }
    // mu = i * lambda with lambda real on the axis.
    let lambda = mu.im;
    let g = bm.real_factor();
    let dim = g.nrows();
    let ident = DMatrix::<f64>::identity(dim, dim);

    // Inverse iteration on G - lambda I with a deterministic start vector;
    // nudge the shift if it is exactly singular.
    let mut shift = lambda;
    let mut lu = (g.clone() - ident.scale(shift)).lu();
    if !lu.is_invertible() {
        shift += 1e-12 * (1.0 + lambda.abs());
        lu = (g.clone() - ident.scale(shift)).lu();
        if !lu.is_invertible() {
            return Err(Error::Numerical {
                detail: "inverse iteration shift is singular",
            });
        }
    }
    let mut v = DVector::from_fn(dim, |r, _| 1.0 + 0.5 * ((r + 1) as f64).sin());
    v /= v.norm();
    for _ in 0..6 {
        let w = lu.solve(&v).ok_or(Error::Numerical {
            detail: "inverse iteration solve failed",
        })?;
        let norm = w.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::Numerical {
                detail: "inverse iteration produced a degenerate vector",
            });
        }
        v = w / norm;
    }
    // Accept only a genuine eigenvector.
    let residual = (&g * &v - v.scale(lambda)).norm();
    let scale = g.iter().fold(0.0f64, |acc, &x| acc.max(x.abs())).max(1.0);
    if residual > 1e-6 * scale {
        return Err(Error::Numerical {
            detail: "inverse iteration did not converge to an eigenvector",
        });
    }
    let form = (v.transpose() * bm.h_matrix() * &v)[(0, 0)];
    let sig = if form.abs() < 1e-10 {
        KreinSignature::Zero
    } else if form < 0.0 {
        KreinSignature::Negative
    } else {
        KreinSignature::Positive
    };
    Ok((sig, form))
}
