//! Roots of a monic cubic via companion-matrix eigenvalues with Newton
//! polishing.

use nalgebra::Matrix3;
use num_complex::Complex64;

const POLISH_STEPS: usize = 4;

/// Roots of `x³ + c2 x² + c1 x + c0`, ordered as follows: three real roots
/// ascending, or one real root followed by the conjugate pair with the
/// positive imaginary part first. Conjugate pairs are exact conjugates.
pub(crate) fn monic_cubic_roots(c2: f64, c1: f64, c0: f64) -> [Complex64; 3] {
    // Scale x = s·y so the eigenproblem sees coefficients of order one.
    let s = [c2.abs(), c1.abs().sqrt(), c0.abs().cbrt()]
        .into_iter()
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let (a2, a1, a0) = (c2 / s, c1 / (s * s), c0 / (s * s * s));

    #[rustfmt::skip]
    let companion = Matrix3::new(
        0.0, 0.0, -a0,
        1.0, 0.0, -a1,
        0.0, 1.0, -a2,
    );
    let mut eig: Vec<Complex64> = companion
        .complex_eigenvalues()
        .iter()
        .map(|z| z * s)
        .collect();

    let poly = |x: Complex64| ((x + c2) * x + c1) * x + c0;
    let dpoly = |x: Complex64| (3.0 * x + 2.0 * c2) * x + c1;

    eig.sort_by(|a, b| a.im.abs().total_cmp(&b.im.abs()));
    // Near a double root the eigenvalues carry O(sqrt(eps)) imaginary noise.
    let real_count = eig.iter().filter(|z| z.im.abs() <= 1e-10 * s).count();

    let polish = |mut x: Complex64, real: bool| {
        for _ in 0..POLISH_STEPS {
            let d = dpoly(x);
            if d.norm() == 0.0 {
                break;
            }
            let step = poly(x) / d;
            let next = if real {
                Complex64::new(x.re - step.re, 0.0)
            } else {
                x - step
            };
            if !(next.re.is_finite() && next.im.is_finite()) {
                break;
            }
            if poly(next).norm() >= poly(x).norm() {
                break;
            }
            x = next;
        }
        x
    };

    let mut roots = if real_count >= 2 {
        let mut r = [
            polish(Complex64::new(eig[0].re, 0.0), true),
            polish(Complex64::new(eig[1].re, 0.0), true),
            polish(Complex64::new(eig[2].re, 0.0), true),
        ];
        r.sort_by(|a, b| a.re.total_cmp(&b.re));
        r
    } else {
        let real = polish(Complex64::new(eig[0].re, 0.0), true);
        let upper = if eig[1].im > 0.0 { eig[1] } else { eig[2] };
        let upper = polish(upper, false);
        [real, upper, upper.conj()]
    };
    // a real root pushed off the axis cannot happen, but keep the layout exact
    for r in roots.iter_mut().take(if real_count >= 2 { 3 } else { 1 }) {
        r.im = 0.0;
    }
    roots
}
