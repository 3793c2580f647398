//! Adaptive Simpson quadrature with interval bisection.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimpsonConfig {
    /// Target error relative to the magnitude of the integral.
    pub rel_tol: f64,
    /// Absolute error floor.
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for SimpsonConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-14,
            max_depth: 40,
        }
    }
}

struct Panel {
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Integrate `f` over `[a, b]`. A reversed interval gives exactly the
/// negated result of the forward one.
pub fn adaptive_simpson<F>(mut f: F, a: f64, b: f64, config: &SimpsonConfig) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return adaptive_simpson(f, b, a, config).map(|v| -v);
    }

    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a)?, f(m)?, f(b)?);
    let whole = simpson(a, b, fa, fm, fb);

    // The tolerance is relative to a coarse estimate of the integral, and is
    // split between halves on the way down.
    let tol = (config.rel_tol * whole.abs()).max(config.abs_tol);
    let root = Panel {
        a,
        b,
        fa,
        fm,
        fb,
        whole,
    };
    refine(&mut f, root, tol, config.max_depth, (a, b))
}

fn refine<F>(f: &mut F, p: Panel, tol: f64, depth: u32, span: (f64, f64)) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let m = 0.5 * (p.a + p.b);
    let lm = 0.5 * (p.a + m);
    let rm = 0.5 * (m + p.b);
    let (flm, frm) = (f(lm)?, f(rm)?);
    let left = simpson(p.a, m, p.fa, flm, p.fm);
    let right = simpson(m, p.b, p.fm, frm, p.fb);
    let diff = left + right - p.whole;

    if diff.abs() <= 15.0 * tol {
        return Ok(left + right + diff / 15.0);
    }
    if depth == 0 || !(m > p.a && m < p.b) {
        return Err(Error::Quadrature {
            a: span.0,
            b: span.1,
        });
    }
    let l = refine(
        f,
        Panel {
            a: p.a,
            b: m,
            fa: p.fa,
            fm: flm,
            fb: p.fm,
            whole: left,
        },
        0.5 * tol,
        depth - 1,
        span,
    )?;
    let r = refine(
        f,
        Panel {
            a: m,
            b: p.b,
            fa: p.fm,
            fm: frm,
            fb: p.fb,
            whole: right,
        },
        0.5 * tol,
        depth - 1,
        span,
    )?;
    Ok(l + r)
}
