//! Small helpers for even real trigonometric polynomials.
//!
//! Wave profiles are stored as cosine coefficients `w(z) = sum_n w_n cos(nz)`
//! (`n = 0..=N`). For convolutions and norms it is easier to work with the
//! symmetric exponential coefficients `e_n` of `w(z) = sum_(|n|<=N) e_|n|
//! e^(inz)`: `e_0 = w_0` and `e_n = w_n / 2` for `n >= 1`.

/// Exponential coefficients `[e_0, ..., e_N]` from cosine coefficients.
pub(crate) fn exp_from_cos(cos: &[f64]) -> Vec<f64> {
    cos.iter()
        .enumerate()
        .map(|(n, &w)| if n == 0 { w } else { 0.5 * w })
        .collect()
}

/// Cosine coefficients from exponential coefficients `[e_0, ..., e_N]`.
pub(crate) fn cos_from_exp(e: &[f64]) -> Vec<f64> {
    e.iter()
        .enumerate()
        .map(|(n, &en)| if n == 0 { en } else { 2.0 * en })
        .collect()
}

/// Exponential coefficients of `w^2` on modes `0..=2N` given those of `w`
/// on modes `0..=N` (both symmetric): `(e*e)_m = sum_j e_|j| e_|m-j|`.
pub(crate) fn self_convolution(e: &[f64]) -> Vec<f64> {
    let n = e.len() - 1;
    let big = n as i64;
    let mut out = vec![0.0; 2 * n + 1];
    for (m, slot) in out.iter_mut().enumerate() {
        let m = m as i64;
        let mut acc = 0.0;
        for j in -big..=big {
            let k = m - j;
            if k.abs() <= big {
                acc += e[j.unsigned_abs() as usize] * e[k.unsigned_abs() as usize];
            }
        }
        *slot = acc;
    }
    out
}

/// L2 norm (over one period, normalized) of the even function whose
/// symmetric exponential coefficients on modes `0..=M` are `modes`:
/// `sqrt(m_0^2 + 2 sum_(m>=1) m_m^2)`.
pub(crate) fn sym_l2_norm(modes: &[f64]) -> f64 {
    let mut acc = modes[0] * modes[0];
    for &v in &modes[1..] {
        acc += 2.0 * v * v;
    }
    acc.sqrt()
}

/// Evaluate `sum_n cos[n] * cos(n z)`.
pub(crate) fn eval_cos_series(cos: &[f64], z: f64) -> f64 {
    cos.iter()
        .enumerate()
        .map(|(n, &w)| w * (n as f64 * z).cos())
        .sum()
}

/// Index of the last entry with `|value| > tol`, plus one (0 for none):
/// the effective bandwidth of a coefficient vector.
pub(crate) fn effective_len(coeffs: &[f64], tol: f64) -> usize {
    coeffs
        .iter()
        .rposition(|v| v.abs() > tol)
        .map_or(0, |i| i + 1)
}
