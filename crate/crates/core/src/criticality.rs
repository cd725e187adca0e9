//! Sign scans and bracketed root finding for the stability indices.
//!
//! The instability index changes sign at isolated critical wavenumbers; this
//! module locates them with a derivative-free hybrid of secant steps and
//! bisection safeguarded by a sign-change bracket.

use crate::dispersion::Symbol;
use crate::error::{Error, Result};
use crate::indices::gamma_index;

/// Outcome of a bracketed root solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    /// Best root estimate.
    pub root: f64,
    /// Final sign-change bracket around the root.
    pub bracket: (f64, f64),
    /// Function value at `root`.
    pub residual: f64,
    /// Number of function evaluations spent inside the solve (excluding
    /// the two endpoint evaluations).
    pub iterations: u32,
    /// Whether the function crosses zero with a clearly nonzero slope at
    /// the root (central-difference slope above `1e-8` in magnitude).
    pub transversal: bool,
}

/// Default search interval for [`critical_wavenumber`].
pub const DEFAULT_INTERVAL: (f64, f64) = (0.01, 50.0);

/// Default number of grid points for the bracketing scan.
pub const DEFAULT_SCAN_POINTS: usize = 5000;

/// Scan `f` on a uniform `points`-point grid over `[lo, hi]` and return the
/// consecutive grid pairs across which `f` changes sign.
///
/// Non-finite values are skipped (a sign change is only reported between
/// two finite evaluations of opposite strict sign); an exact zero at a grid
/// point is returned as the degenerate bracket `(x, x)`. An empty result
/// means no sign change was detected, which is not an error.
pub fn scan_sign_changes<F>(f: F, lo: f64, hi: f64, points: usize) -> Result<Vec<(f64, f64)>>
where
    F: Fn(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidParameter {
            name: "interval",
            value: lo,
            requirement: "finite lo < hi",
        });
    }
    if points < 2 {
        return Err(Error::DimensionMismatch {
            needed: 2,
            got: points,
            detail: "sign scan needs at least two grid points",
        });
    }
    let step = (hi - lo) / (points - 1) as f64;
    let mut out = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..points {
        let x = if i + 1 == points { hi } else { lo + step * i as f64 };
        let y = f(x);
        if !y.is_finite() {
            prev = None;
            continue;
        }
        if y == 0.0 {
            out.push((x, x));
            prev = None;
            continue;
        }
        if let Some((px, py)) = prev {
            if (py < 0.0) != (y < 0.0) {
                out.push((px, x));
            }
        }
        prev = Some((x, y));
    }
    Ok(out)
}

/// Find a root of `f` inside the sign-change bracket `[lo, hi]` by secant
/// steps that fall back to bisection whenever they leave the bracket.
///
/// `rtol` is the relative width tolerance: the solve stops once the bracket
/// width is at most `rtol * max(1, |midpoint|)` (or the width cannot shrink
/// further in f64). Fails if the endpoints do not straddle zero or no
/// convergence is reached in 200 evaluations.
pub fn find_root<F>(f: F, lo: f64, hi: f64, rtol: f64) -> Result<RootResult>
where
    F: Fn(f64) -> f64,
{
    if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
        return Err(Error::InvalidParameter {
            name: "interval",
            value: lo,
            requirement: "finite lo <= hi",
        });
    }
    if !(rtol.is_finite() && rtol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "rtol",
            value: rtol,
            requirement: "positive and finite",
        });
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if !fa.is_finite() || !fb.is_finite() {
        return Err(Error::Numerical {
            detail: "root bracket endpoint evaluated to a non-finite value",
        });
    }
    let finish = |root: f64, residual: f64, bracket: (f64, f64), iters: u32| {
        let h = 1e-6 * root.abs().max(1.0);
        let slope = (f(root + h) - f(root - h)) / (2.0 * h);
        RootResult {
            root,
            bracket,
            residual,
            iterations: iters,
            transversal: slope.is_finite() && slope.abs() > 1e-8,
        }
    };
    if fa == 0.0 {
        return Ok(finish(a, 0.0, (a, a), 0));
    }
    if fb == 0.0 {
        return Ok(finish(b, 0.0, (b, b), 0));
    }
    if (fa < 0.0) == (fb < 0.0) {
        return Err(Error::NoBracket { lo, hi });
    }

    const MAX_EVALS: u32 = 200;
    for iters in 1..=MAX_EVALS {
        let mid = 0.5 * (a + b);
        if (b - a).abs() <= rtol * mid.abs().max(1.0) || mid <= a || mid >= b {
            let (root, residual) = if fa.abs() <= fb.abs() { (a, fa) } else { (b, fb) };
            return Ok(finish(root, residual, (a, b), iters - 1));
        }
        // Secant candidate; bisect when it is outside the open bracket
        // or numerically useless.
        let mut x = b - fb * (b - a) / (fb - fa);
        if !x.is_finite() || x <= a || x >= b {
            x = mid;
        }
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::Numerical {
                detail: "root refinement evaluated to a non-finite value",
            });
        }
        if fx == 0.0 {
            return Ok(finish(x, 0.0, (x, x), iters));
        }
        if (fx < 0.0) == (fa < 0.0) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_EVALS,
        residual: 0.5 * (b - a).abs(),
        tol: rtol,
    })
}

/// Locate the critical wavenumber of a symbol: the root of its instability
/// index `Gamma` on `interval` (default [`DEFAULT_INTERVAL`]).
///
/// The interval is first scanned on a [`DEFAULT_SCAN_POINTS`]-point grid;
/// the first sign change found is refined with [`find_root`] at relative
/// tolerance `rtol`. Fails with a bracket error when `Gamma` does not
/// change sign there (e.g. every wavenumber stable).
pub fn critical_wavenumber(
    sym: &Symbol,
    interval: Option<(f64, f64)>,
    rtol: f64,
) -> Result<RootResult> {
    sym.validate()?;
    let (lo, hi) = interval.unwrap_or(DEFAULT_INTERVAL);
    if !(lo.is_finite() && hi.is_finite() && 0.0 < lo && lo < hi) {
        return Err(Error::InvalidParameter {
            name: "interval",
            value: lo,
            requirement: "0 < lo < hi, finite",
        });
    }
    let g = |z: f64| gamma_index(sym, z).unwrap_or(f64::NAN);
    let brackets = scan_sign_changes(g, lo, hi, DEFAULT_SCAN_POINTS)?;
    let &(blo, bhi) = brackets.first().ok_or(Error::NoBracket { lo, hi })?;
    find_root(g, blo, bhi, rtol)
}

#[cfg(test)]
// Reference constants below keep their full decimal expansions; the digits
// past f64 resolution document the independently computed values.
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    #[test]
    fn finds_elementary_roots() {
        let r = find_root(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert_relative_eq!(r.root, std::f64::consts::SQRT_2, max_relative = 1e-13);
        assert!(r.iterations < 60);
        assert!(r.transversal);
        assert!(r.bracket.0 <= r.root && r.root <= r.bracket.1);

        let r = find_root(|x| x.cos(), 1.0, 2.0, 1e-14).unwrap();
        assert_relative_eq!(r.root, std::f64::consts::FRAC_PI_2, max_relative = 1e-13);
    }

    #[test]
    fn rejects_bad_brackets() {
        assert!(matches!(
            find_root(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::NoBracket { .. })
        ));
        assert!(find_root(|x| x, 1.0, 0.0, 1e-12).is_err());
        assert!(find_root(|x| x, -1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn scan_reports_brackets_and_skips_non_finite() {
        // sin has roots at pi and 2 pi inside [1, 7].
        let br = scan_sign_changes(|x| x.sin(), 1.0, 7.0, 601).unwrap();
        assert_eq!(br.len(), 2);
        assert!(br[0].0 < std::f64::consts::PI && std::f64::consts::PI < br[0].1);
        // A NaN gap breaks the pairing instead of producing a false bracket.
        let gapped = |x: f64| if (1.0..2.0).contains(&x) { f64::NAN } else { x - 1.5 };
        let br = scan_sign_changes(gapped, 0.0, 3.0, 31).unwrap();
        assert!(br.is_empty());
        assert!(scan_sign_changes(|x| x, 0.0, 1.0, 1).is_err());
    }

    #[test]
    fn water_wave_critical_wavenumber() {
        // 40-digit reference root of the instability index.
        let r = critical_wavenumber(&Symbol::Whitham, None, 1e-12).unwrap();
        assert_relative_eq!(r.root, 1.146036640013951475, max_relative = 1e-10);
        assert!(r.residual.abs() < 1e-12);
        assert!(r.transversal, "index must cross zero transversally");
        assert!(r.bracket.0 >= DEFAULT_INTERVAL.0 && r.bracket.1 <= DEFAULT_INTERVAL.1);
    }

    #[test]
    fn water_wave_index_changes_sign_exactly_once() {
        let g = |z: f64| gamma_index(&Symbol::Whitham, z).unwrap();
        let br = scan_sign_changes(g, 0.01, 50.0, 5000).unwrap();
        assert_eq!(br.len(), 1);
    }

    #[test]
    fn stable_symbols_have_no_critical_wavenumber() {
        // KdV truncation: Gamma = z^2/2 > 0 on the whole interval.
        assert!(matches!(
            critical_wavenumber(&Symbol::Kdv, None, 1e-12),
            Err(Error::NoBracket { .. })
        ));
        let stable = Symbol::fractional_kdv(1.5).unwrap();
        assert!(matches!(
            critical_wavenumber(&stable, None, 1e-12),
            Err(Error::NoBracket { .. })
        ));
    }

    #[test]
    fn bbm_critical_wavenumber_is_bracketed() {
        // The regularized-long-wave symbol destabilizes at moderate
        // wavenumbers; the root lies between 1 and sqrt(3).
        let r = critical_wavenumber(&Symbol::Bbm, None, 1e-12).unwrap();
        assert!(r.root > 1.0 && r.root < 3f64.sqrt(), "root = {}", r.root);
        assert_abs_diff_eq!(
            gamma_index(&Symbol::Bbm, r.root).unwrap(),
            0.0,
            epsilon = 1e-11
        );
    }
}
