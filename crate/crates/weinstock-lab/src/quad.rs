//! Adaptive Simpson quadrature.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("adaptive quadrature exceeded depth {0} without reaching the tolerance")]
    QuadratureFailure(u32),
}

const MAX_DEPTH: u32 = 48;

/// Integrate `f` over `[a, b]` to absolute tolerance `tol` by adaptive
/// Simpson with Richardson acceptance (`|S2 − S1| ≤ 15 tol` on each panel).
pub fn adaptive_simpson(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<f64, QuadratureError> {
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, 0)
}

/// Integrate over `[0, 2π]` with panels split at the listed interior break
/// points (used to isolate cusps of the integrand).
pub fn adaptive_simpson_periodic(
    f: &dyn Fn(f64) -> f64,
    breaks: &[f64],
    tol: f64,
) -> Result<f64, QuadratureError> {
    let mut knots = vec![0.0];
    knots.extend_from_slice(breaks);
    knots.push(std::f64::consts::TAU);
    let per_panel = tol / (knots.len() - 1) as f64;
    let mut total = 0.0;
    for w in knots.windows(2) {
        total += adaptive_simpson(f, w[0], w[1], per_panel)?;
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64, QuadratureError> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth >= MAX_DEPTH {
        return Err(QuadratureError::QuadratureFailure(depth));
    }
    let half = 0.5 * tol;
    Ok(recurse(f, a, m, fa, flm, fm, left, half, depth + 1)?
        + recurse(f, m, b, fm, frm, fb, right, half, depth + 1)?)
}
