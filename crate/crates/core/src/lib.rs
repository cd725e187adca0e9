//! Modulational instability of small-amplitude periodic traveling waves in
//! Whitham-type nonlocal dispersive equations.
//!
//! The model family is `w_t + (alpha(D) w + w^2)_x = 0`, where `alpha(D)` is
//! a Fourier multiplier acting by `alpha(xi)` on frequency `xi`. Supported
//! multipliers: the Whitham kernel `sqrt(tanh(xi)/xi)`, fractional KdV
//! `1 - |xi|^sigma`, finite-depth intermediate long wave, and the KdV/BBM
//! polynomial and rational approximations ([`Symbol`]).
//!
//! For each multiplier the crate answers, along several independent routes,
//! whether the `2 pi / kappa`-periodic small-amplitude wave train is
//! modulationally unstable:
//!
//! * **Closed-form indices** ([`indices`]): the sideband index
//!   `Gamma(kappa)`, whose negativity marks instability, and the
//!   discriminant slope `Lambda(kappa)` that carries the same sign; both
//!   are explicit in `alpha` and its derivatives.
//! * **Critical wavenumber** ([`criticality`]): bracketed root-finding for
//!   the stability threshold, e.g. `kappa_c ≈ 1.146` for the Whitham
//!   equation.
//! * **Wave solves** ([`stokes`]): Newton–Galerkin computation of periodic
//!   traveling waves in cosine coordinates, seeded by their small-amplitude
//!   asymptotics.
//! * **Bloch spectra** ([`bloch`]): Fourier–Floquet truncation of the
//!   linearization about a computed wave, eigenvalue slices across the
//!   Floquet exponent, growth rates, and Krein signatures.
//! * **Near-origin reduction** ([`reduction`]): the 3x3 pencil whose cubic
//!   discriminant reproduces the Bloch verdict near the spectral origin and
//!   connects it back to `Lambda(kappa)`.
//!
//! The routes cross-validate: the index sign, the discriminant sign, and
//! the presence of near-origin growth in the assembled Bloch spectrum agree
//! wherever they are all defined.
//!
//! # Example
//!
//! ```
//! use whitham_mi::indices::DEFAULT_TIE_TOL;
//! use whitham_mi::{classify, critical_wavenumber, Symbol, StabilityClass};
//!
//! let sym = Symbol::Whitham;
//! let root = critical_wavenumber(&sym, None, 1e-12).unwrap();
//! assert!((root.root - 1.146).abs() < 1e-3);
//! assert_eq!(
//!     classify(&sym, 1.0, DEFAULT_TIE_TOL).unwrap(),
//!     StabilityClass::SpectrallyStable
//! );
//! assert_eq!(
//!     classify(&sym, 1.2, DEFAULT_TIE_TOL).unwrap(),
//!     StabilityClass::ModulationallyUnstable
//! );
//! ```

pub mod bloch;
pub mod criticality;
pub mod dispersion;
pub mod error;
pub mod indices;
pub mod reduction;
pub mod stokes;

mod fourier;

pub use bloch::{
    assemble_bloch, growth_scan, krein_signature, spectrum, BlochMatrix, KreinSignature,
    SpectrumSlice,
};
pub use criticality::{critical_wavenumber, RootResult};
pub use dispersion::Symbol;
pub use error::{Error, Result};
pub use indices::{classify, gamma_index, lambda_index, StabilityClass};
pub use reduction::{
    discriminant_expansion, pencil_closed_form, pencil_numeric, pencil_roots, ReducedPencil,
};
pub use stokes::{asymptotic_wave, galilean_shift, solve_wave, TravelingWave};
