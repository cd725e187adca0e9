//! Browser bindings for the `whitham-mi` stability toolkit.
//!
//! Each export takes plain scalars/strings and returns one JSON string, so
//! the page needs no binding glue beyond `JSON.parse`. Failures come back
//! as `{"error": "..."}` instead of thrown exceptions, letting the page
//! surface them inline.
//!
//! On non-wasm targets the same functions compile as ordinary Rust, which
//! is how the JSON contract is unit-tested.

use serde_json::json;
use whitham_mi::bloch::{assemble_bloch, spectrum};
use whitham_mi::criticality::critical_wavenumber;
use whitham_mi::indices::{classify, gamma_index, lambda_index, DEFAULT_TIE_TOL};
use whitham_mi::reduction::{pencil_closed_form, product_discriminant};
use whitham_mi::stokes::solve_wave;
use whitham_mi::Symbol;

#[cfg(target_arch = "wasm32")]
use wasm_bindgen::prelude::wasm_bindgen;

fn error_json(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn grid(lo: f64, hi: f64, n: u32) -> Option<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite() && lo < hi && n >= 2) {
        return None;
    }
    Some(
        (0..n)
            .map(|i| lo + (hi - lo) * f64::from(i) / f64::from(n - 1))
            .collect(),
    )
}

/// Sideband index `Gamma` over a wavenumber grid, plus the critical
/// wavenumber when the sign changes inside the window.
///
/// Returns `{"z": [...], "gamma": [...], "classification": [...],
/// "critical": number|null}`.
#[cfg_attr(target_arch = "wasm32", wasm_bindgen)]
pub fn stability_curve(symbol: &str, lo: f64, hi: f64, n: u32) -> String {
    let sym = match Symbol::parse(symbol) {
        Ok(s) => s,
        Err(e) => return error_json(e),
    };
    let Some(zs) = grid(lo, hi, n) else {
        return error_json("grid must satisfy lo < hi (finite) and n >= 2");
    };
    let mut gammas = Vec::with_capacity(zs.len());
    let mut classes = Vec::with_capacity(zs.len());
    for &z in &zs {
        match (gamma_index(&sym, z), classify(&sym, z, DEFAULT_TIE_TOL)) {
            (Ok(g), Ok(c)) => {
                gammas.push(g);
                classes.push(c.to_string());
            }
            (Err(e), _) | (_, Err(e)) => return error_json(e),
        }
    }
    let critical = critical_wavenumber(&sym, Some((lo.max(1e-6), hi)), 1e-12)
        .ok()
        .map(|r| r.root);
    json!({
        "symbol": sym.to_string(),
        "z": zs,
        "gamma": gammas,
        "classification": classes,
        "critical": critical,
    })
    .to_string()
}

/// Solve one small-amplitude periodic traveling wave and sweep its Bloch
/// spectra over a Floquet grid.
///
/// Returns the sampled profile, the wave metadata, and per-`tau` spectrum
/// slices `{"tau", "re", "im", "max_growth"}` together with the overall
/// maximal growth rate.
#[cfg_attr(target_arch = "wasm32", wasm_bindgen)]
pub fn wave_and_spectrum(
    symbol: &str,
    kappa: f64,
    a: f64,
    modes: u32,
    tau_lo: f64,
    tau_hi: f64,
    tau_n: u32,
) -> String {
    let sym = match Symbol::parse(symbol) {
        Ok(s) => s,
        Err(e) => return error_json(e),
    };
    let Some(taus) = grid(tau_lo, tau_hi, tau_n) else {
        return error_json("tau grid must satisfy lo < hi (finite) and n >= 2");
    };
    let n = modes as usize;
    let wave = match solve_wave(&sym, kappa, a, 0.0, n, 1e-12) {
        Ok(w) => w,
        Err(e) => return error_json(e),
    };
    const SAMPLES: usize = 256;
    let zs: Vec<f64> = (0..SAMPLES)
        .map(|i| 2.0 * std::f64::consts::PI * i as f64 / SAMPLES as f64)
        .collect();
    let ws: Vec<f64> = zs.iter().map(|&z| wave.eval(z)).collect();

    let mut slices = Vec::with_capacity(taus.len());
    let mut overall: f64 = 0.0;
    for &tau in &taus {
        let slice = match assemble_bloch(&wave, tau, n).and_then(|bm| spectrum(&bm)) {
            Ok(s) => s,
            Err(e) => return error_json(e),
        };
        overall = overall.max(slice.max_growth);
        slices.push(json!({
            "tau": tau,
            "re": slice.eigenvalues.iter().map(|mu| mu.re).collect::<Vec<_>>(),
            "im": slice.eigenvalues.iter().map(|mu| mu.im).collect::<Vec<_>>(),
            "max_growth": slice.max_growth,
        }));
    }
    json!({
        "symbol": sym.to_string(),
        "kappa": kappa,
        "a": wave.a,
        "c": wave.c,
        "residual_norm": wave.residual_norm,
        "profile": { "z": zs, "w": ws },
        "slices": slices,
        "overall_max_growth": overall,
    })
    .to_string()
}

/// Discriminant of the reduced 3x3 pencil over a wavenumber grid, with the
/// zero-amplitude reference value and the amplitude slope `Lambda`.
///
/// Returns `{"kappa": [...], "delta": [...], "delta_tau0": [...],
/// "lambda": [...], "classification": [...]}`.
#[cfg_attr(target_arch = "wasm32", wasm_bindgen)]
pub fn pencil_summary(symbol: &str, lo: f64, hi: f64, n: u32, tau: f64, a: f64) -> String {
    let sym = match Symbol::parse(symbol) {
        Ok(s) => s,
        Err(e) => return error_json(e),
    };
    let Some(kappas) = grid(lo, hi, n) else {
        return error_json("grid must satisfy lo < hi (finite) and n >= 2");
    };
    let mut deltas = Vec::with_capacity(kappas.len());
    let mut deltas0 = Vec::with_capacity(kappas.len());
    let mut lambdas = Vec::with_capacity(kappas.len());
    let mut classes = Vec::with_capacity(kappas.len());
    for &kappa in &kappas {
        let pencil = match pencil_closed_form(&sym, kappa, tau, a) {
            Ok(p) => p,
            Err(e) => return error_json(e),
        };
        let d0 = match product_discriminant(&sym, kappa, tau) {
            Ok(d) => d,
            Err(e) => return error_json(e),
        };
        let lam = match lambda_index(&sym, kappa) {
            Ok(l) => l,
            Err(e) => return error_json(e),
        };
        classes.push(
            if pencil.discriminant.abs() <= DEFAULT_TIE_TOL {
                "inconclusive"
            } else if pencil.discriminant < 0.0 {
                "modulationally-unstable"
            } else {
                "spectrally-stable"
            }
            .to_string(),
        );
        deltas.push(pencil.discriminant);
        deltas0.push(d0);
        lambdas.push(lam);
    }
    json!({
        "symbol": sym.to_string(),
        "tau": tau,
        "a": a,
        "kappa": kappas,
        "delta": deltas,
        "delta_tau0": deltas0,
        "lambda": lambdas,
        "classification": classes,
    })
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).expect("export returns valid JSON")
    }

    #[test]
    fn stability_curve_reports_sign_change_and_critical_root() {
        let v = parse(&stability_curve("whitham", 0.1, 2.0, 40));
        assert!(v.get("error").is_none(), "{v}");
        let gamma: Vec<f64> = v["gamma"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x.as_f64().unwrap())
            .collect();
        assert_eq!(gamma.len(), 40);
        assert!(gamma.first().unwrap() > &0.0);
        assert!(gamma.last().unwrap() < &0.0);
        let critical = v["critical"].as_f64().expect("root inside the window");
        assert!((1.145..1.147).contains(&critical));
        assert_eq!(v["classification"][0], "spectrally-stable");
        assert_eq!(v["classification"][39], "modulationally-unstable");
    }

    #[test]
    fn stability_curve_without_sign_change_has_null_critical() {
        let v = parse(&stability_curve("ilw:0.5", 0.1, 2.0, 10));
        assert!(v["critical"].is_null());
    }

    #[test]
    fn wave_and_spectrum_carries_profile_and_growth() {
        let v = parse(&wave_and_spectrum("whitham", 2.0, 0.02, 32, 0.0125, 0.1, 8));
        assert!(v.get("error").is_none(), "{v}");
        assert!(v["residual_norm"].as_f64().unwrap() <= 1e-12);
        assert_eq!(v["profile"]["z"].as_array().unwrap().len(), 256);
        assert_eq!(v["profile"]["w"].as_array().unwrap().len(), 256);
        let slices = v["slices"].as_array().unwrap();
        assert_eq!(slices.len(), 8);
        assert_eq!(slices[0]["re"].as_array().unwrap().len(), 2 * 32 + 1);
        assert!(v["overall_max_growth"].as_f64().unwrap() > 1e-8);
    }

    #[test]
    fn pencil_summary_flips_classification_across_the_critical_wavenumber() {
        let v = parse(&pencil_summary("whitham", 1.096, 1.196, 11, 0.01, 0.02));
        assert!(v.get("error").is_none(), "{v}");
        let classes = v["classification"].as_array().unwrap();
        assert_eq!(classes[0], "spectrally-stable");
        assert_eq!(classes[10], "modulationally-unstable");
        assert_eq!(v["delta"].as_array().unwrap().len(), 11);
    }

    #[test]
    fn failures_are_reported_as_error_objects() {
        let v = parse(&stability_curve("nosuch", 0.1, 2.0, 10));
        assert!(v["error"].as_str().unwrap().contains("symbol"));
        let v = parse(&stability_curve("whitham", 2.0, 0.1, 10));
        assert!(v.get("error").is_some());
        let v = parse(&wave_and_spectrum("whitham", 1.0, 0.9, 16, 0.0, 0.1, 3));
        assert!(v.get("error").is_some(), "amplitude cap enforced");
    }
}
