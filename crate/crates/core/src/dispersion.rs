//! Dispersion symbols of the supported model equations.
//!
//! Every model here is a nonlocal equation of the form
//! `u_t + (M u + u^2)_x = 0`, where `M` is the Fourier multiplier with an
//! even, real symbol `alpha(xi)` normalized so that `alpha(0) = 1`. The
//! [`Symbol`] enum carries the symbol family and its parameters and exposes
//! the symbol value and its first two derivatives, which is all the rest of
//! the crate needs.

use crate::error::{Error, Result};

/// Dispersion symbol `alpha(xi)` of one of the supported models.
///
/// All symbols are even in `xi` with `alpha(0) = 1`, so the first derivative
/// is odd and the second even; the accessors preserve those symmetries
/// exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Symbol {
    /// Full gravity-water-wave dispersion `sqrt(tanh(xi)/xi)`.
    Whitham,
    /// Fractional KdV-type symbol `1 - |xi|^sigma` with `sigma > 1/2`.
    FractionalKdv { sigma: f64 },
    /// Intermediate long wave symbol `1 + 1/depth - xi*coth(xi*depth)`
    /// for fluid depth `depth > 0`.
    Ilw { depth: f64 },
    /// Weak-dispersion KdV truncation `1 - xi^2/6`.
    Kdv,
    /// BBM (regularized long wave) symbol `1/(1 + xi^2/6)`.
    Bbm,
}

/// Below this threshold the Whitham symbol (and the ILW symbol in the
/// variable `y = xi*depth`) switch to even Maclaurin series; relative
/// agreement with the closed forms at the switchover is ~1e-16 while the
/// closed forms alone would lose digits to cancellation.
const SERIES_THRESHOLD: f64 = 1e-2;

impl Symbol {
    /// Fractional KdV symbol; requires `sigma > 1/2` (below that the
    /// quadratic nonlinearity is no longer controlled by the dispersion).
    pub fn fractional_kdv(sigma: f64) -> Result<Self> {
        if !sigma.is_finite() || sigma <= 0.5 {
            return Err(Error::InvalidParameter {
                name: "sigma",
                value: sigma,
                requirement: "1/2 < sigma < inf",
            });
        }
        Ok(Symbol::FractionalKdv { sigma })
    }

    /// Intermediate long wave symbol; requires `depth > 0` and finite.
    pub fn ilw(depth: f64) -> Result<Self> {
        if !depth.is_finite() || depth <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "depth",
                value: depth,
                requirement: "0 < depth < inf",
            });
        }
        Ok(Symbol::Ilw { depth })
    }

    /// Check parameter ranges (useful on enum values built directly).
    pub fn validate(&self) -> Result<()> {
        match *self {
            Symbol::FractionalKdv { sigma } => Symbol::fractional_kdv(sigma).map(|_| ()),
            Symbol::Ilw { depth } => Symbol::ilw(depth).map(|_| ()),
            Symbol::Whitham | Symbol::Kdv | Symbol::Bbm => Ok(()),
        }
    }

    /// Parse `"whitham" | "kdv" | "bbm" | "fkdv:<sigma>" | "ilw:<depth>"`
    /// (ASCII case-insensitive).
    pub fn parse(input: &str) -> Result<Self> {
        let s = input.trim().to_ascii_lowercase();
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim())),
            None => (s.as_str(), None),
        };
        let parse_param = |p: Option<&str>| -> Result<f64> {
            let text = p.ok_or_else(|| Error::SymbolParse {
                input: input.to_string(),
                detail: "missing parameter after ':'",
            })?;
            text.parse::<f64>().map_err(|_| Error::SymbolParse {
                input: input.to_string(),
                detail: "parameter is not a number",
            })
        };
        match name {
            "whitham" | "kdv" | "bbm" => {
                if param.is_some() {
                    return Err(Error::SymbolParse {
                        input: input.to_string(),
                        detail: "this symbol takes no parameter",
                    });
                }
                Ok(match name {
                    "whitham" => Symbol::Whitham,
                    "kdv" => Symbol::Kdv,
                    _ => Symbol::Bbm,
                })
            }
            "fkdv" => Symbol::fractional_kdv(parse_param(param)?),
            "ilw" => Symbol::ilw(parse_param(param)?),
            _ => Err(Error::SymbolParse {
                input: input.to_string(),
                detail: "unknown symbol name (expected whitham, fkdv:<sigma>, ilw:<depth>, kdv, bbm)",
            }),
        }
    }

    /// Symbol value `alpha(xi)`.
    pub fn alpha(&self, xi: f64) -> f64 {
        match *self {
            Symbol::Whitham => whitham_alpha(xi.abs()),
            Symbol::FractionalKdv { sigma } => 1.0 - xi.abs().powf(sigma),
            Symbol::Ilw { depth } => ilw_alpha(xi.abs(), depth),
            Symbol::Kdv => 1.0 - xi * xi / 6.0,
            Symbol::Bbm => 1.0 / (1.0 + xi * xi / 6.0),
        }
    }

    /// First derivative `alpha'(xi)` (odd in `xi`).
    ///
    /// Fails with a domain error only for the fractional KdV symbol at
    /// `xi = 0` with `sigma <= 1`, where `|xi|^sigma` has a corner or cusp.
    pub fn alpha_d1(&self, xi: f64) -> Result<f64> {
        let x = xi.abs();
        let sign = if xi < 0.0 { -1.0 } else { 1.0 };
        let odd = match *self {
            Symbol::Whitham => whitham_alpha_d1(x),
            Symbol::FractionalKdv { sigma } => {
                if x == 0.0 {
                    if sigma > 1.0 {
                        0.0
                    } else {
                        return Err(Error::NonDifferentiable {
                            xi,
                            detail: "|xi|^sigma has no derivative at 0 for sigma <= 1",
                        });
                    }
                } else {
                    -sigma * x.powf(sigma - 1.0)
                }
            }
            Symbol::Ilw { depth } => ilw_alpha_d1(x, depth),
            Symbol::Kdv => -x / 3.0,
            Symbol::Bbm => {
                let u = 1.0 + x * x / 6.0;
                -(x / 3.0) / (u * u)
            }
        };
        Ok(sign * odd)
    }

    /// Second derivative `alpha''(xi)` (even in `xi`).
    ///
    /// Fails with a domain error only for the fractional KdV symbol at
    /// `xi = 0` with `sigma < 2` (except the corner cases handled by
    /// `sigma = 2`, which gives exactly `-2`, and `sigma > 2`, which gives 0).
    pub fn alpha_d2(&self, xi: f64) -> Result<f64> {
        let x = xi.abs();
        match *self {
            Symbol::Whitham => Ok(whitham_alpha_d2(x)),
            Symbol::FractionalKdv { sigma } => {
                if x == 0.0 {
                    if sigma > 2.0 {
                        Ok(0.0)
                    } else if sigma == 2.0 {
                        Ok(-2.0)
                    } else {
                        Err(Error::NonDifferentiable {
                            xi,
                            detail: "|xi|^sigma has no second derivative at 0 for sigma < 2",
                        })
                    }
                } else {
                    Ok(-sigma * (sigma - 1.0) * x.powf(sigma - 2.0))
                }
            }
            Symbol::Ilw { depth } => Ok(ilw_alpha_d2(x, depth)),
            Symbol::Kdv => Ok(-1.0 / 3.0),
            Symbol::Bbm => {
                let u = 1.0 + x * x / 6.0;
                Ok((x * x / 6.0 - 1.0 / 3.0) / (u * u * u))
            }
        }
    }

    /// Linear dispersion relation of the Bloch problem on the zero wave:
    /// the n-th sideband at Floquet exponent `tau` oscillates with frequency
    /// `omega = (n + tau) * (alpha(kappa) - alpha(kappa*(n + tau)))`.
    pub fn omega(&self, kappa: f64, n: i64, tau: f64) -> f64 {
        let m = n as f64 + tau;
        m * (self.alpha(kappa) - self.alpha(kappa * m))
    }
}

impl std::fmt::Display for Symbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            Symbol::Whitham => write!(f, "whitham"),
            Symbol::FractionalKdv { sigma } => write!(f, "fkdv:{sigma}"),
            Symbol::Ilw { depth } => write!(f, "ilw:{depth}"),
            Symbol::Kdv => write!(f, "kdv"),
            Symbol::Bbm => write!(f, "bbm"),
        }
    }
}

/// `sqrt(tanh(x)/x)` for `x >= 0`, series below the switchover.
fn whitham_alpha(x: f64) -> f64 {
    if x < SERIES_THRESHOLD {
        let s = x * x;
        // Maclaurin series of sqrt(tanh(x)/x); coefficients are exact
        // rationals of the expansion, truncation error ~x^10 < 1e-20.
        1.0 + s * (-1.0 / 6.0
            + s * (19.0 / 360.0 + s * (-55.0 / 3024.0 + s * (11813.0 / 1814400.0))))
    } else {
        (x.tanh() / x).sqrt()
    }
}

/// Derivative of `sqrt(tanh(x)/x)` for `x >= 0` via `t = tanh(x)/x`:
/// `alpha' = t' / (2 alpha)` with `t' = (x(1 - T^2) - T)/x^2`, `T = tanh x`.
fn whitham_alpha_d1(x: f64) -> f64 {
    if x < SERIES_THRESHOLD {
        let s = x * x;
        x * (-1.0 / 3.0
            + s * (19.0 / 90.0 + s * (-55.0 / 504.0 + s * (11813.0 / 226800.0))))
    } else {
        let t = x.tanh();
        let sech2 = 1.0 - t * t;
        let td1 = (x * sech2 - t) / (x * x);
        td1 / (2.0 * whitham_alpha(x))
    }
}

/// Second derivative for `x >= 0`: from `t = alpha^2` follows
/// `t'' = 2 alpha'^2 + 2 alpha alpha''`, so
/// `alpha'' = (t'' - 2 alpha'^2)/(2 alpha)` with
/// `t'' = 2 (T - x sech^2 - x^2 T sech^2)/x^3`.
fn whitham_alpha_d2(x: f64) -> f64 {
    if x < SERIES_THRESHOLD {
        let s = x * x;
        -1.0 / 3.0 + s * (19.0 / 30.0 + s * (-275.0 / 504.0 + s * (11813.0 / 32400.0)))
    } else {
        let t = x.tanh();
        let sech2 = 1.0 - t * t;
        let td2 = 2.0 * (t - x * sech2 - x * x * t * sech2) / (x * x * x);
        let a = whitham_alpha(x);
        let ad1 = whitham_alpha_d1(x);
        (td2 - 2.0 * ad1 * ad1) / (2.0 * a)
    }
}

/// `1 + 1/depth - x*coth(x*depth)` for `x >= 0`, series in `y = x*depth`
/// below the switchover.
fn ilw_alpha(x: f64, depth: f64) -> f64 {
    let y = x * depth;
    if y < SERIES_THRESHOLD {
        // y*coth(y) = 1 + y^2/3 - y^4/45 + 2 y^6/945 - y^8/4725 + O(y^10)
        let s = y * y;
        1.0 - s * (1.0 / 3.0 + s * (-1.0 / 45.0 + s * (2.0 / 945.0 + s * (-1.0 / 4725.0))))
            / depth
    } else {
        1.0 + 1.0 / depth - x / y.tanh()
    }
}

/// `d/dx` of the ILW symbol for `x >= 0`: `y csch^2(y) - coth(y)`, `y = x*depth`.
fn ilw_alpha_d1(x: f64, depth: f64) -> f64 {
    let y = x * depth;
    if y < SERIES_THRESHOLD {
        let s = y * y;
        -y * (2.0 / 3.0 + s * (-4.0 / 45.0 + s * (4.0 / 315.0 + s * (-8.0 / 4725.0))))
    } else {
        let csch = 1.0 / y.sinh();
        y * csch * csch - 1.0 / y.tanh()
    }
}

/// `d^2/dx^2` of the ILW symbol for `x >= 0`:
/// `2 depth csch^2(y) (1 - y coth(y))`, `y = x*depth`.
fn ilw_alpha_d2(x: f64, depth: f64) -> f64 {
    let y = x * depth;
    if y < SERIES_THRESHOLD {
        let s = y * y;
        -depth * (2.0 / 3.0 + s * (-4.0 / 15.0 + s * (4.0 / 63.0 + s * (-8.0 / 675.0))))
    } else {
        let csch = 1.0 / y.sinh();
        2.0 * depth * csch * csch * (1.0 - y / y.tanh())
    }
}

#[cfg(test)]
// Reference constants below keep their full decimal expansions; the digits
// past f64 resolution document the independently computed values.
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn all_symbols() -> Vec<Symbol> {
        vec![
            Symbol::Whitham,
            Symbol::fractional_kdv(0.6).unwrap(),
            Symbol::fractional_kdv(1.5).unwrap(),
            Symbol::fractional_kdv(2.0).unwrap(),
            Symbol::ilw(0.5).unwrap(),
            Symbol::ilw(2.0).unwrap(),
            Symbol::Kdv,
            Symbol::Bbm,
        ]
    }

    #[test]
    fn whitham_matches_high_precision_reference() {
        // Reference values computed with 40-digit arithmetic.
        let cases = [
            (0.5, 0.9613710597474939161061),
            (1.0, 0.8726936208978296915436),
            (1.5, 0.7768089656386424750434),
            (2.0, 0.6942721296710018749168),
            (0.3, 0.9854146546024688684156),
            (1.3, 0.8141645833015234746824),
        ];
        for (xi, want) in cases {
            assert_relative_eq!(Symbol::Whitham.alpha(xi), want, max_relative = 1e-15);
        }
        assert_relative_eq!(
            Symbol::Whitham.alpha_d1(1.0).unwrap(),
            -0.1957272324222327747167,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            Symbol::Whitham.alpha_d1(1.146).unwrap(),
            -0.1958911550678525957144,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            Symbol::Whitham.alpha_d2(1.0).unwrap(),
            -0.01895205716930122671813,
            max_relative = 1e-12
        );
    }

    #[test]
    fn ilw_matches_high_precision_reference() {
        let sym = Symbol::ilw(2.0).unwrap();
        assert_relative_eq!(sym.alpha(1.0), 0.4626852792724519041222, max_relative = 1e-15);
        assert_relative_eq!(
            sym.alpha_d1(1.0).unwrap(),
            -0.8852710610514058973711,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            sym.alpha_d2(1.0).unwrap(),
            -0.3267811861491228446340,
            max_relative = 1e-13
        );
    }

    #[test]
    fn derivatives_match_finite_differences() {
        // Internal consistency of every closed-form derivative against
        // central differences of alpha itself.
        let grid: [f64; 7] = [0.037, 0.2, 0.7, 1.0, 1.9, 3.5, 7.0];
        for sym in all_symbols() {
            for &xi in &grid {
                let h1 = 1e-6 * xi.max(1.0);
                let fd1 = (sym.alpha(xi + h1) - sym.alpha(xi - h1)) / (2.0 * h1);
                assert_relative_eq!(
                    sym.alpha_d1(xi).unwrap(),
                    fd1,
                    max_relative = 1e-7,
                    epsilon = 1e-9
                );
                let h2 = 1e-4 * xi.max(1.0);
                let fd2 =
                    (sym.alpha(xi + h2) - 2.0 * sym.alpha(xi) + sym.alpha(xi - h2)) / (h2 * h2);
                assert_relative_eq!(
                    sym.alpha_d2(xi).unwrap(),
                    fd2,
                    max_relative = 1e-5,
                    epsilon = 1e-7
                );
            }
        }
    }

    #[test]
    fn series_branch_is_continuous_at_switchover() {
        // Evaluate just inside and outside the series window; the gap is
        // small enough that the functions' own slopes contribute under
        // 1e-14, so any visible jump is a branch mismatch.
        let below = SERIES_THRESHOLD * (1.0 - 1e-12);
        let above = SERIES_THRESHOLD * (1.0 + 1e-12);
        assert_abs_diff_eq!(
            Symbol::Whitham.alpha(below),
            Symbol::Whitham.alpha(above),
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            Symbol::Whitham.alpha_d1(below).unwrap(),
            Symbol::Whitham.alpha_d1(above).unwrap(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            Symbol::Whitham.alpha_d2(below).unwrap(),
            Symbol::Whitham.alpha_d2(above).unwrap(),
            epsilon = 1e-10
        );
        // ILW switches in y = xi*depth; pick depth so the window edge sits
        // at xi = 2e-3.
        let sym = Symbol::ilw(5.0).unwrap();
        let (b, a) = (2e-3 * (1.0 - 1e-12), 2e-3 * (1.0 + 1e-12));
        assert_abs_diff_eq!(sym.alpha(b), sym.alpha(a), epsilon = 1e-13);
        assert_abs_diff_eq!(
            sym.alpha_d1(b).unwrap(),
            sym.alpha_d1(a).unwrap(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            sym.alpha_d2(b).unwrap(),
            sym.alpha_d2(a).unwrap(),
            epsilon = 1e-10
        );
    }

    #[test]
    fn symmetry_and_normalization() {
        for sym in all_symbols() {
            assert_eq!(sym.alpha(0.0), 1.0, "{sym}: alpha(0) != 1");
            for &xi in &[0.004, 0.3, 1.1, 4.0] {
                assert_eq!(sym.alpha(xi), sym.alpha(-xi), "{sym}: alpha not even");
                assert_eq!(
                    sym.alpha_d1(xi).unwrap(),
                    -sym.alpha_d1(-xi).unwrap(),
                    "{sym}: alpha' not odd"
                );
                assert_eq!(
                    sym.alpha_d2(xi).unwrap(),
                    sym.alpha_d2(-xi).unwrap(),
                    "{sym}: alpha'' not even"
                );
            }
        }
    }

    #[test]
    fn monotone_decay_on_positive_axis() {
        // All supported symbols decrease strictly away from xi = 0.
        for sym in all_symbols() {
            let mut prev = sym.alpha(1e-3);
            for i in 1..=400 {
                let xi = 1e-3 + 0.05 * i as f64;
                let cur = sym.alpha(xi);
                assert!(cur < prev, "{sym}: alpha not decreasing at xi = {xi}");
                prev = cur;
            }
        }
    }

    #[test]
    fn fractional_kdv_corner_cases() {
        let corner = Symbol::fractional_kdv(1.0).unwrap();
        assert!(matches!(
            corner.alpha_d1(0.0),
            Err(Error::NonDifferentiable { .. })
        ));
        let smooth = Symbol::fractional_kdv(1.5).unwrap();
        assert_eq!(smooth.alpha_d1(0.0).unwrap(), 0.0);
        assert!(matches!(
            smooth.alpha_d2(0.0),
            Err(Error::NonDifferentiable { .. })
        ));
        assert_eq!(Symbol::fractional_kdv(2.0).unwrap().alpha_d2(0.0).unwrap(), -2.0);
        assert_eq!(Symbol::fractional_kdv(2.5).unwrap().alpha_d2(0.0).unwrap(), 0.0);
        assert!(Symbol::fractional_kdv(0.5).is_err());
        assert!(Symbol::fractional_kdv(f64::NAN).is_err());
    }

    #[test]
    fn ilw_limits() {
        // Small depth*xi behaves like KdV with depth absorbed: alpha'' -> -2 depth/3.
        let sym = Symbol::ilw(0.7).unwrap();
        assert_relative_eq!(sym.alpha_d2(0.0).unwrap(), -2.0 * 0.7 / 3.0, max_relative = 1e-14);
        // Deep water: alpha(xi) -> 1 + 1/depth - |xi|.
        let deep = Symbol::ilw(30.0).unwrap();
        assert_relative_eq!(deep.alpha(3.0), 1.0 + 1.0 / 30.0 - 3.0, max_relative = 1e-12);
        // No overflow far out even for large depth.
        let big = Symbol::ilw(100.0).unwrap();
        assert!(big.alpha(500.0).is_finite());
        assert!(big.alpha_d1(500.0).unwrap().is_finite());
        assert!(big.alpha_d2(500.0).unwrap().is_finite());
        assert!(Symbol::ilw(0.0).is_err());
        assert!(Symbol::ilw(-1.0).is_err());
        assert!(Symbol::ilw(f64::INFINITY).is_err());
    }

    #[test]
    fn omega_reference_values() {
        assert_relative_eq!(
            Symbol::Whitham.omega(1.0, 1, 0.5),
            0.1438269828887808247503,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            Symbol::ilw(2.0).unwrap().omega(1.0, -1, 0.3),
            0.1726678983439344063641,
            max_relative = 1e-14
        );
        // omega(kappa, 0, 0) = 0 exactly for every symbol.
        for sym in all_symbols() {
            assert_eq!(sym.omega(1.3, 0, 0.0), 0.0);
        }
    }

    #[test]
    fn parse_round_trip() {
        let cases = [
            ("whitham", Symbol::Whitham),
            ("  WHITHAM ", Symbol::Whitham),
            ("kdv", Symbol::Kdv),
            ("bbm", Symbol::Bbm),
            ("fkdv:1.5", Symbol::FractionalKdv { sigma: 1.5 }),
            ("FKdV: 2", Symbol::FractionalKdv { sigma: 2.0 }),
            ("ilw:0.5", Symbol::Ilw { depth: 0.5 }),
        ];
        for (text, want) in cases {
            let got = Symbol::parse(text).unwrap();
            assert_eq!(got, want, "parsing {text:?}");
            // Display must parse back to the same symbol.
            assert_eq!(Symbol::parse(&got.to_string()).unwrap(), got);
        }
        for bad in ["", "water", "fkdv", "fkdv:zero", "fkdv:0.4", "ilw:-2", "kdv:1"] {
            assert!(Symbol::parse(bad).is_err(), "parsing {bad:?} should fail");
        }
    }
}
