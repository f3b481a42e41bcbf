//! Complex-valued helpers that `num-complex` does not provide with the
//! accuracy the scattering formulas need.

use num_complex::Complex64;
use std::f64::consts::PI;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `(sin(πu), cos(πu))` with exact zeros at integer and half-integer `u`.
pub fn sincospi(u: f64) -> (f64, f64) {
    // reduce to r in [-1, 1]
    let r = u - 2.0 * (u / 2.0).round();
    let (sign, r) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    // r in [0, 1]; sin is odd in r, cos is even
    let (s, co) = if r <= 0.25 {
        ((PI * r).sin(), (PI * r).cos())
    } else if r <= 0.75 {
        let d = PI * (r - 0.5);
        (d.cos(), -d.sin())
    } else {
        let d = PI * (1.0 - r);
        (d.sin(), -d.cos())
    };
    (sign * s, co)
}

/// `e^{iz} - 1` without cancellation for small `|z|`.
pub fn expm1_i(z: Complex64) -> Complex64 {
    // e^{i(a+ib)} = e^{-b} (cos a + i sin a)
    let (a, b) = (z.re, z.im);
    let em = (-b).exp_m1();
    let half = (0.5 * a).sin();
    let re = em * a.cos() - 2.0 * half * half;
    let im = (em + 1.0) * a.sin();
    c(re, im)
}

/// Phase-scaled trigonometric functions of a complex argument.
///
/// Returns `(w·cos φ, w·sin φ, w)` where `w = e^{iσφ}` and `σ = ±1` is picked
/// so that `|w| ≤ 1`. Ratios of `cos φ` and `sin φ` stay finite even when
/// `|Im φ|` is far beyond the overflow point of `cosh`.
pub fn scaled_cos_sin(phi: Complex64) -> (Complex64, Complex64, Complex64) {
    let sigma = if phi.im >= 0.0 { 1.0 } else { -1.0 };
    let e = expm1_i(phi * (2.0 * sigma)); // w² - 1
    let w = (I * phi * sigma).exp();
    let cos_w = ONE + e * 0.5;
    // w·sin φ = σ (w² - 1) / (2i)
    let sin_w = e * sigma / (I * 2.0);
    (cos_w, sin_w, w)
}

/// Principal complex arccos, given `1 - z` and `1 + z` separately so callers
/// that know them more accurately than `z` itself can pass them in.
///
/// Real part lies in `[0, π]`. Follows Kahan's formulation.
pub fn acos_parts(one_minus: Complex64, one_plus: Complex64) -> Complex64 {
    let sm = one_minus.sqrt();
    let sp = one_plus.sqrt();
    let re = 2.0 * sm.re.atan2(sp.re);
    let im = (sp.conj() * sm).im.asinh();
    c(re, im)
}

pub fn acos(z: Complex64) -> Complex64 {
    acos_parts(ONE - z, ONE + z)
}

/// Complex tangent that stays finite for large imaginary parts.
pub fn tan(z: Complex64) -> Complex64 {
    let (x2, y2) = (2.0 * z.re, 2.0 * z.im);
    if y2.abs() > 40.0 {
        // cosh dominates: tan → i·sign(y)
        let e = (-y2.abs()).exp();
        let re = 2.0 * x2.sin() * e;
        let im = y2.signum() * (1.0 - 2.0 * x2.cos() * e);
        return c(re, im);
    }
    let den = x2.cos() + y2.cosh();
    c(x2.sin() / den, y2.sinh() / den)
}

/// Relative comparison helper used by tests and invariant checks.
pub fn rel_diff(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm()).max(1e-300);
    (a - b).norm() / scale
}
