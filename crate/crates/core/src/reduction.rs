//! Finite-dimensional reduction of the near-origin Bloch spectrum.
//!
//! For small amplitude `a` and Floquet exponent `tau`, exactly three Bloch
//! eigenvalues stay near the origin. Projecting the Bloch operator onto the
//! kernel-adapted basis
//!
//! ```text
//! phi_1 = cos z - a/(2 delta) + (a/delta) cos 2z
//! phi_2 = sin z + (a/delta) sin 2z
//! phi_3 = 1,                       delta = alpha(kappa) - alpha(2 kappa),
//! ```
//!
//! gives a 3x3 pencil `det(B - mu I_a) = 0` whose roots track those
//! eigenvalues to `O(tau^3 + a^2)`. On the imaginary axis `mu = i lambda`
//! the pencil determinant reduces to a real cubic; the sign of the
//! discriminant of its `tau`-normalized version decides stability near the
//! origin: three real roots (positive discriminant) mean three imaginary
//! eigenvalues, a complex pair (negative discriminant) means sideband
//! growth. The discriminant expands as
//! `Delta = Delta_0 + Lambda(kappa) a^2 + O(a^2 (a^2 + tau^2))`, which is
//! how the closed-form index [`crate::indices::lambda_index`] arises.

use nalgebra::{DVector, Matrix3};
use num_complex::Complex;

use crate::bloch::assemble_bloch;
use crate::dispersion::Symbol;
use crate::error::{Error, Result};
use crate::indices::lambda_index;
use crate::stokes::{TravelingWave, AMPLITUDE_CAP};

type C64 = Complex<f64>;
type CMat3 = Matrix3<C64>;

const ZERO_C: C64 = Complex::new(0.0, 0.0);
const I_C: C64 = Complex::new(0.0, 1.0);

/// Auxiliary Floquet exponent used to take `tau -> 0` limits of the
/// normalized cubic coefficients by Richardson extrapolation (they are
/// even functions of `tau`, so the error is `O(step^4)`).
const RICHARDSON_STEP: f64 = 1e-3;

/// The three-member basis of the reduction at one `(kappa, a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisTriple {
    pub kappa: f64,
    pub a: f64,
    /// Complex exponential coefficients of `phi_1, phi_2, phi_3` on modes
    /// `-2 ..= 2` (index `m + 2`).
    pub phi: [[C64; 5]; 3],
}

impl BasisTriple {
    /// Embed member `j` (0-based) into the Fourier coordinates of a Bloch
    /// truncation with modes `-n ..= n`.
    pub fn embed(&self, j: usize, n: usize) -> DVector<C64> {
        let dim = 2 * n + 1;
        let mut v = DVector::from_element(dim, ZERO_C);
        for (k, &coeff) in self.phi[j].iter().enumerate() {
            let m = k as i64 - 2 + n as i64;
            v[m as usize] = coeff;
        }
        v
    }
}

/// Build the reduction basis at wavenumber `kappa` and amplitude `a`.
pub fn basis(sym: &Symbol, kappa: f64, a: f64) -> Result<BasisTriple> {
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
    let delta = sym.alpha(kappa) - sym.alpha(2.0 * kappa);
    if delta.abs() < f64::MIN_POSITIVE {
        return Err(Error::Resonance {
            kappa,
            detail: "alpha(kappa) - alpha(2 kappa) vanishes",
        });
    }
    let g = a / (2.0 * delta);
    let re = |x: f64| Complex::new(x, 0.0);
    let im = |x: f64| Complex::new(0.0, x);
    Ok(BasisTriple {
        kappa,
        a,
        phi: [
            // cos z - 2g * (1/2 ... ) : e_{+-2} = g, e_{+-1} = 1/2, e_0 = -g
            [re(g), re(0.5), re(-g), re(0.5), re(g)],
            // sin z + 2g sin 2z : e_{+-1} = -+i/2, e_{+-2} = -+ i g
            [im(g), im(0.5), ZERO_C, im(-0.5), im(-g)],
            [ZERO_C, ZERO_C, re(1.0), ZERO_C, ZERO_C],
        ],
    })
}

/// The reduced pencil at one `(tau, a)`, with its cubic reduction.
#[derive(Debug, Clone)]
pub struct ReducedPencil {
    pub tau: f64,
    pub a: f64,
    /// Projected operator matrix `B`.
    pub b_matrix: CMat3,
    /// Projected mass matrix `I_a` (identity plus `O(a)` coupling).
    pub mass_matrix: CMat3,
    /// Real cubic coefficients `c_0 ..= c_3` of
    /// `i det(B - i lambda I_a) = c_3 lambda^3 + c_2 lambda^2 - c_1 lambda - c_0`,
    /// indexed by power of `lambda`.
    pub cubic: [f64; 4],
    /// Floquet-normalized coefficients `d_j = c_j / tau^(3-j)` (all even in
    /// `tau`; at `tau = 0` the limits are taken by extrapolation).
    pub scaled: [f64; 4],
    /// Largest imaginary leftover discarded when realizing the cubic —
    /// rounding-level by construction of the pencil.
    pub coeff_residual: f64,
    /// Discriminant of the normalized cubic: positive for three separated
    /// imaginary eigenvalues, negative when a growing sideband pair has
    /// split off.
    pub discriminant: f64,
}

/// Exact polynomial expansion of `det(B - mu I_a)` over the six
/// permutations. Interpolation through sample values of the determinant is
/// catastrophically ill-conditioned here (the low-order coefficients are
/// `O(tau^3)` below the leading one); the expansion keeps every coefficient
/// at full relative precision.
fn cubic_coefficients(b: &CMat3, ia: &CMat3) -> ([f64; 4], f64) {
    const PERMS: [([usize; 3], f64); 6] = [
        ([0, 1, 2], 1.0),
        ([1, 2, 0], 1.0),
        ([2, 0, 1], 1.0),
        ([0, 2, 1], -1.0),
        ([1, 0, 2], -1.0),
        ([2, 1, 0], -1.0),
    ];
    let mut p = [ZERO_C; 4];
    for (cols, sign) in PERMS {
        // Product of the three linear factors (B[r][c] - mu Ia[r][c]).
        let mut acc = [Complex::new(sign, 0.0), ZERO_C, ZERO_C, ZERO_C];
        for (r, &c) in cols.iter().enumerate() {
            let lin0 = b[(r, c)];
            let lin1 = -ia[(r, c)];
            let mut next = [ZERO_C; 4];
            for (deg, &coeff) in acc.iter().enumerate() {
                next[deg] += coeff * lin0;
                if deg + 1 < 4 {
                    next[deg + 1] += coeff * lin1;
                }
            }
            acc = next;
        }
        for (slot, term) in p.iter_mut().zip(acc) {
            *slot += term;
        }
    }
    // On mu = i lambda the polynomial i * P(i lambda) is real; collect the
    // real parts by power and track what is thrown away.
    let c = [p[0].im, p[1].re, p[2].im, p[3].re];
    let residual = p[0]
        .re
        .abs()
        .max(p[1].im.abs())
        .max(p[2].re.abs())
        .max(p[3].im.abs());
    (c, residual)
}

fn scaled_from_cubic(c: &[f64; 4], tau: f64) -> [f64; 4] {
    [c[0] / tau.powi(3), c[1] / (tau * tau), c[2] / tau, c[3]]
}

/// Discriminant of the normalized cubic `d_3 l^3 - d_2 l^2 - d_1 l + d_0`
/// (sign conventions match the `scaled` coefficients).
fn discriminant_from_scaled(d: &[f64; 4]) -> f64 {
    let (d0, d1, d2, d3) = (d[0], d[1], d[2], d[3]);
    18.0 * d3 * d2 * d1 * d0 + d2 * d2 * d1 * d1 + 4.0 * d2 * d2 * d2 * d0
        + 4.0 * d3 * d1 * d1 * d1
        - 27.0 * d3 * d3 * d0 * d0
}

/// Shared assembly: matrices at the target `tau` plus, when `tau = 0`,
/// extrapolated limits of the normalized coefficients.
fn pencil_from_generator(
    tau: f64,
    a: f64,
    gen: &mut dyn FnMut(f64) -> Result<(CMat3, CMat3)>,
) -> Result<ReducedPencil> {
    let (b, ia) = gen(tau)?;
    let (cubic, coeff_residual) = cubic_coefficients(&b, &ia);
    let scaled = if tau != 0.0 {
        scaled_from_cubic(&cubic, tau)
    } else {
        let step = RICHARDSON_STEP;
        let coarse = {
            let (b, ia) = gen(step)?;
            scaled_from_cubic(&cubic_coefficients(&b, &ia).0, step)
        };
        let fine = {
            let (b, ia) = gen(0.5 * step)?;
            scaled_from_cubic(&cubic_coefficients(&b, &ia).0, 0.5 * step)
        };
        let mut d = [0.0; 4];
        for j in 0..4 {
            d[j] = (4.0 * fine[j] - coarse[j]) / 3.0;
        }
        d[3] = cubic[3]; // exact at tau = 0
        d
    };
    let discriminant = discriminant_from_scaled(&scaled);
    Ok(ReducedPencil {
        tau,
        a,
        b_matrix: b,
        mass_matrix: ia,
        cubic,
        scaled,
        coeff_residual,
        discriminant,
    })
}

fn closed_form_matrices(sym: &Symbol, kappa: f64, tau: f64, a: f64) -> Result<(CMat3, CMat3)> {
    let alpha = sym.alpha(kappa);
    let delta = alpha - sym.alpha(2.0 * kappa);
    let w0 = sym.omega(kappa, 0, tau);
    let w1 = sym.omega(kappa, 1, tau);
    let wm1 = sym.omega(kappa, -1, tau);
    let half_sum = 0.5 * (w1 + wm1);
    let half_dif = 0.5 * (w1 - wm1);
    let coupling = 1.0 + 0.5 * (alpha - 1.0) / delta;

    let mut b = CMat3::zeros();
    b[(0, 0)] = I_C * half_sum;
    b[(0, 1)] = Complex::new(half_dif, 0.0);
    b[(1, 0)] = Complex::new(-half_dif, 0.0);
    b[(1, 1)] = I_C * half_sum;
    b[(2, 2)] = I_C * w0;
    b[(1, 2)] += Complex::new(2.0 * a, 0.0);
    b[(0, 2)] += -I_C * (2.0 * tau * a * coupling);
    b[(2, 0)] += -I_C * (tau * a * coupling);

    let mut ia = CMat3::identity();
    ia[(0, 2)] = Complex::new(-a / delta, 0.0);
    ia[(2, 0)] = Complex::new(-a / (2.0 * delta), 0.0);
    Ok((b, ia))
}

/// Closed-form reduced pencil at `(kappa, tau, a)`: exact dispersion
/// frequencies on the diagonal blocks plus the `O(a)` couplings through the
/// second harmonic and the mean. Agrees with the full Bloch spectrum near
/// the origin to `O(tau^3 + a^2)`.
pub fn pencil_closed_form(sym: &Symbol, kappa: f64, tau: f64, a: f64) -> Result<ReducedPencil> {
    basis(sym, kappa, a)?; // validates parameters, including resonance
    if !(tau.is_finite() && (-0.5..=0.5).contains(&tau)) {
        return Err(Error::InvalidParameter {
            name: "tau",
            value: tau,
            requirement: "tau in [-1/2, 1/2]",
        });
    }
    pencil_from_generator(tau, a, &mut |t| closed_form_matrices(sym, kappa, t, a))
}

/// Reduced pencil measured from the assembled Bloch operator: weak-form
/// entries `B[j][k] = <phi_j, L phi_k> / <phi_j, phi_j>` and
/// `I_a[j][k] = <phi_j, phi_k> / <phi_j, phi_j>` (first slot conjugated).
///
/// This is the independent numerical route to the same pencil; it agrees
/// with [`pencil_closed_form`] exactly at `a = 0` and to `O(a^2 + tau a)`
/// otherwise.
pub fn pencil_numeric(wave: &TravelingWave, tau: f64, n: usize) -> Result<ReducedPencil> {
    let triple = basis(&wave.symbol, wave.kappa, wave.a)?;
    let phi: Vec<DVector<C64>> = (0..3).map(|j| triple.embed(j, n)).collect();
    let norms: Vec<C64> = phi.iter().map(|p| p.dotc(p)).collect();
    let mut gen = |t: f64| -> Result<(CMat3, CMat3)> {
        let op = assemble_bloch(wave, t, n)?.operator();
        let images: Vec<DVector<C64>> = phi.iter().map(|p| &op * p).collect();
        let b = CMat3::from_fn(|j, k| phi[j].dotc(&images[k]) / norms[j]);
        let ia = CMat3::from_fn(|j, k| phi[j].dotc(&phi[k]) / norms[j]);
        Ok((b, ia))
    };
    pencil_from_generator(tau, wave.a, &mut gen)
}

/// The three pencil roots `mu = i lambda` (eigenvalue approximations near
/// the origin), sorted by imaginary part then real part.
pub fn pencil_roots(pencil: &ReducedPencil) -> Result<[C64; 3]> {
    let c = &pencil.cubic;
    if c[3].abs() < 1e-6 {
        return Err(Error::Numerical {
            detail: "degenerate cubic: leading pencil coefficient vanished",
        });
    }
    // Real cubic r(lambda) = c3 l^3 + c2 l^2 - c1 l - c0, made monic.
    let q2 = c[2] / c[3];
    let q1 = -c[1] / c[3];
    let q0 = -c[0] / c[3];
    let companion =
        nalgebra::Matrix3::new(0.0, 0.0, -q0, 1.0, 0.0, -q1, 0.0, 1.0, -q2);
    let schur = nalgebra::linalg::Schur::try_new(companion, f64::EPSILON, 10_000).ok_or(
        Error::Numerical {
            detail: "cubic root iteration did not converge",
        },
    )?;
    let lambdas = schur.complex_eigenvalues();
    let mut roots: Vec<C64> = lambdas.iter().map(|l| I_C * l).collect();
    roots.sort_by(|x, y| x.im.total_cmp(&y.im).then(x.re.total_cmp(&y.re)));
    Ok([roots[0], roots[1], roots[2]])
}

/// Two-route decomposition of the pencil discriminant.
#[derive(Debug, Clone, Copy)]
pub struct DiscriminantExpansion {
    pub tau: f64,
    pub a: f64,
    /// Discriminant of the full closed-form pencil at `(tau, a)`.
    pub delta_full: f64,
    /// Zero-amplitude discriminant from the product formula
    /// `((w0-w1)(w0-w_-1)(w1-w_-1))^2 / tau^6` — an independent route that
    /// never forms the pencil.
    pub delta_zero_amplitude: f64,
    /// The amplitude slope `Lambda(kappa)` of the `a^2` term.
    pub lambda_slope: f64,
    /// `delta_full - delta_zero_amplitude - lambda_slope a^2`, of size
    /// `O(a^2 (a^2 + tau^2))`.
    pub remainder: f64,
}

/// Zero-amplitude discriminant via the product of dispersion-frequency
/// differences (exact, no pencil assembly). Zero at `tau = 0`, where the
/// two sideband frequencies collide at linear order.
pub fn product_discriminant(sym: &Symbol, kappa: f64, tau: f64) -> Result<f64> {
    sym.validate()?;
    if tau == 0.0 {
        return Ok(0.0);
    }
    let w0 = sym.omega(kappa, 0, tau);
    let w1 = sym.omega(kappa, 1, tau);
    let wm1 = sym.omega(kappa, -1, tau);
    let prod = (w0 - w1) * (w0 - wm1) * (w1 - wm1) / tau.powi(3);
    Ok(prod * prod)
}

/// Expand the discriminant at `(kappa, tau, a)` into the zero-amplitude
/// part, the `Lambda a^2` slope, and the higher-order remainder.
pub fn discriminant_expansion(
    sym: &Symbol,
    kappa: f64,
    tau: f64,
    a: f64,
) -> Result<DiscriminantExpansion> {
    let full = pencil_closed_form(sym, kappa, tau, a)?;
    let delta_zero_amplitude = product_discriminant(sym, kappa, tau)?;
    let lambda_slope = lambda_index(sym, kappa)?;
    let remainder = full.discriminant - delta_zero_amplitude - lambda_slope * a * a;
    Ok(DiscriminantExpansion {
        tau,
        a,
        delta_full: full.discriminant,
        delta_zero_amplitude,
        lambda_slope,
        remainder,
    })
}

/// One term of a real trigonometric polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrigTerm {
    Const,
    Cos(u8),
    Sin(u8),
}

/// A short real trigonometric polynomial (canonically ordered, zero
/// coefficients dropped).
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    pub terms: Vec<(TrigTerm, f64)>,
}

impl TrigPoly {
    fn new(terms: &[(TrigTerm, f64)]) -> Self {
        TrigPoly {
            terms: terms.iter().copied().filter(|(_, c)| *c != 0.0).collect(),
        }
    }

    /// Evaluate at scaled position `z`.
    pub fn eval(&self, z: f64) -> f64 {
        self.terms
            .iter()
            .map(|(t, c)| match t {
                TrigTerm::Const => *c,
                TrigTerm::Cos(k) => c * (*k as f64 * z).cos(),
                TrigTerm::Sin(k) => c * (*k as f64 * z).sin(),
            })
            .sum()
    }

    /// Complex exponential coefficients on modes `-n ..= n`.
    pub fn embed(&self, n: usize) -> DVector<C64> {
        let mut v = DVector::from_element(2 * n + 1, ZERO_C);
        for (t, c) in &self.terms {
            match t {
                TrigTerm::Const => v[n] += Complex::new(*c, 0.0),
                TrigTerm::Cos(k) => {
                    v[n + *k as usize] += Complex::new(0.5 * c, 0.0);
                    v[n - *k as usize] += Complex::new(0.5 * c, 0.0);
                }
                TrigTerm::Sin(k) => {
                    v[n + *k as usize] += Complex::new(0.0, -0.5 * c);
                    v[n - *k as usize] += Complex::new(0.0, 0.5 * c);
                }
            }
        }
        v
    }
}

/// Images of `{1, cos z, sin z, cos 2z, sin 2z}` under the three
/// coefficient operators of the Floquet–Taylor split
/// `L_tau = M_0 + i tau M_1 - (tau^2 / 2) M_2 + O(a^2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorActions {
    /// The probed inputs, in order.
    pub inputs: [TrigTerm; 5],
    /// Transport part `M_0` applied to each input.
    pub order0: [TrigPoly; 5],
    /// First Floquet derivative `M_1` applied to each input.
    pub order1: [TrigPoly; 5],
    /// Second Floquet derivative `M_2` applied to each input.
    pub order2: [TrigPoly; 5],
}

/// Tabulate the operator actions at `(kappa, a)` through first order in the
/// amplitude. The diagonal entries of `M_1`/`M_2` are the first and second
/// Floquet–Taylor coefficients of the dispersion frequencies
/// `omega(kappa, n, tau)`; the off-diagonal entries are the `O(a)`
/// couplings through the wave profile.
pub fn operator_actions(sym: &Symbol, kappa: f64, a: f64) -> Result<OperatorActions> {
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
    let alpha = sym.alpha(kappa);
    let delta = alpha - sym.alpha(2.0 * kappa);
    let ad1 = sym.alpha_d1(kappa)?;
    let ad2 = sym.alpha_d2(kappa)?;
    let ad1_2 = sym.alpha_d1(2.0 * kappa)?;
    let ad2_2 = sym.alpha_d2(2.0 * kappa)?;
    // Diagonal Floquet-Taylor coefficients.
    let m1_1 = -kappa * ad1; // d/dtau omega(kappa, 1, .) at 0
    let m1_2 = delta - 2.0 * kappa * ad1_2; // d/dtau omega(kappa, 2, .) at 0
    let m2_1 = 2.0 * kappa * ad1 + kappa * kappa * ad2;
    let m2_2 = 2.0 * (kappa * ad1_2 + kappa * kappa * ad2_2);

    use TrigTerm::*;
    let inputs = [Const, Cos(1), Sin(1), Cos(2), Sin(2)];
    let order0 = [
        TrigPoly::new(&[(Sin(1), 2.0 * a)]),
        TrigPoly::new(&[(Sin(2), 2.0 * a)]),
        TrigPoly::new(&[(Cos(2), -2.0 * a)]),
        TrigPoly::new(&[(Sin(2), -2.0 * delta), (Sin(1), a), (Sin(3), 3.0 * a)]),
        TrigPoly::new(&[(Cos(2), 2.0 * delta), (Cos(1), -a), (Cos(3), -3.0 * a)]),
    ];
    let order1 = [
        TrigPoly::new(&[(Const, alpha - 1.0), (Cos(1), -2.0 * a)]),
        TrigPoly::new(&[(Cos(1), m1_1), (Const, -a), (Cos(2), -a)]),
        TrigPoly::new(&[(Sin(1), m1_1), (Sin(2), -a)]),
        TrigPoly::new(&[(Cos(2), m1_2), (Cos(1), -a), (Cos(3), -a)]),
        TrigPoly::new(&[(Sin(2), m1_2), (Sin(1), -a), (Sin(3), -a)]),
    ];
    let order2 = [
        TrigPoly::new(&[]),
        TrigPoly::new(&[(Sin(1), -m2_1)]),
        TrigPoly::new(&[(Cos(1), m2_1)]),
        TrigPoly::new(&[(Sin(2), -m2_2)]),
        TrigPoly::new(&[(Cos(2), m2_2)]),
    ];
    Ok(OperatorActions {
        inputs,
        order0,
        order1,
        order2,
    })
}
