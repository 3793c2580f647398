//! Complex log-gamma, digamma and trigamma, plus the entropy of a
//! single-mode Gaussian state as a function of its phase-space volume.
//!
//! All three gamma-family functions use the same scheme: shift the argument
//! upward with the recurrence until `|w| >= 12` (and `Re w >= 0`), then sum
//! the Stirling-type asymptotic series through the B₁₄ Bernoulli term. At
//! `|w| >= 12` the first omitted term is below 1e-17 relative.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex argument/result type of the special functions.
pub type ComplexValue = Complex64;

const SHIFT_RADIUS: f64 = 12.0;

// Recurrence shifts are linear in -Re z; this bounds the work per call.
const MAX_LEFT_SHIFT: f64 = 1.0e6;

/// B₂, B₄, …, B₁₄.
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

fn check_argument(z: ComplexValue) -> Result<()> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::NonFinite(z));
    }
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole(z));
    }
    if z.re < -MAX_LEFT_SHIFT {
        return Err(Error::Domain(format!(
            "argument {z} too far into the left half-plane for upward recurrence"
        )));
    }
    Ok(())
}

/// Number of unit shifts needed before the asymptotic series is accurate.
fn shift_count(z: ComplexValue) -> usize {
    let mut w = z;
    let mut n = 0;
    while w.re < 0.0 || w.norm() < SHIFT_RADIUS {
        w.re += 1.0;
        n += 1;
    }
    n
}

fn ensure_finite(z: ComplexValue, value: ComplexValue) -> Result<ComplexValue> {
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::Domain(format!("non-finite result at z = {z}")))
    }
}

/// Principal branch of `ln Γ(z)`: analytic in the plane cut along the
/// non-positive real axis and real for real `z > 0`.
pub fn log_gamma(z: ComplexValue) -> Result<ComplexValue> {
    check_argument(z)?;
    let n = shift_count(z);
    let mut correction = Complex64::new(0.0, 0.0);
    let mut w = z;
    for _ in 0..n {
        correction += w.ln();
        w.re += 1.0;
    }

    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        series += power * (b / (two_k * (two_k - 1.0)));
        power *= inv2;
    }
    let stirling = (w - 0.5) * w.ln() - w + HALF_LN_2PI + series;
    ensure_finite(z, stirling - correction)
}

/// Digamma function `ψ(z) = d ln Γ(z) / dz`.
pub fn digamma(z: ComplexValue) -> Result<ComplexValue> {
    check_argument(z)?;
    let n = shift_count(z);
    let mut correction = Complex64::new(0.0, 0.0);
    let mut w = z;
    for _ in 0..n {
        correction += w.inv();
        w.re += 1.0;
    }

    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv2;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let two_k = 2.0 * (k as f64 + 1.0);
        series += power * (b / two_k);
        power *= inv2;
    }
    let asymptotic = w.ln() - inv * 0.5 - series;
    ensure_finite(z, asymptotic - correction)
}

/// Trigamma function `ψ₁(z) = dψ(z) / dz`.
pub fn trigamma(z: ComplexValue) -> Result<ComplexValue> {
    check_argument(z)?;
    let n = shift_count(z);
    let mut correction = Complex64::new(0.0, 0.0);
    let mut w = z;
    for _ in 0..n {
        correction += (w * w).inv();
        w.re += 1.0;
    }

    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv2 * inv;
    for b in BERNOULLI.iter() {
        series += power * *b;
        power *= inv2;
    }
    let asymptotic = inv + inv2 * 0.5 + series;
    ensure_finite(z, asymptotic + correction)
}

/// Slack below 1/2 that is attributed to rounding rather than to an
/// unphysical state.
pub const HEISENBERG_SLACK: f64 = 1e-12;

/// Von Neumann entropy (in nats) of a single-mode Gaussian state with
/// phase-space volume `v`:
/// `S(v) = (v + ½) ln(v + ½) − (v − ½) ln(v − ½)`.
///
/// Values of `v` within [`HEISENBERG_SLACK`] below ½ are treated as the pure
/// state. Anything smaller is a domain error.
pub fn entropy_kernel(v: f64) -> Result<f64> {
    if !v.is_finite() || v < 0.5 - HEISENBERG_SLACK {
        return Err(Error::Domain(format!(
            "entropy kernel needs v >= 1/2, got {v}"
        )));
    }
    let x = (v - 0.5).max(0.0);
    if x == 0.0 {
        return Ok(0.0);
    }
    // S = (x + 1) ln(x + 1) − x ln x, arranged to avoid cancellation at both ends.
    let s = if x < 1.0 {
        (x + 1.0) * x.ln_1p() - x * x.ln()
    } else {
        x.ln() + (x + 1.0) * x.recip().ln_1p()
    };
    Ok(s)
}

/// `ln(2 sinh(x/2))` for `x > 0`, stable for large `x`.
pub(crate) fn ln_two_sinh_half(x: f64) -> f64 {
    0.5 * x + (-(-x).exp()).ln_1p()
}

/// `coth(x)` for `x > 0`, stable for large `x`.
pub(crate) fn coth(x: f64) -> f64 {
    let e = (-2.0 * x).exp();
    (1.0 + e) / (1.0 - e)
}

/// `arccoth(x)` for `x > 1`.
pub(crate) fn arccoth(x: f64) -> f64 {
    x.recip().atanh()
}

pub(crate) const TWO_PI: f64 = 2.0 * PI;
