//! Gamma-function helpers. Values are computed in MPFR at 128 bits and
//! rounded once, so each call is correctly rounded up to the final cast.

use rug::Float;

const PREC: u32 = 128;

pub fn gamma(x: f64) -> f64 {
    Float::with_val(PREC, x).gamma().to_f64()
}

pub fn ln_gamma(x: f64) -> f64 {
    Float::with_val(PREC, x).ln_gamma().to_f64()
}

/// Γ(a)/Γ(b) for positive a, b.
pub fn gamma_ratio(a: f64, b: f64) -> f64 {
    let la = Float::with_val(PREC, a).ln_gamma();
    let lb = Float::with_val(PREC, b).ln_gamma();
    (la - lb).exp().to_f64()
}

/// Rising factorial (a)_m.
pub fn pochhammer(a: f64, m: usize) -> f64 {
    (0..m).fold(1.0, |acc, i| acc * (a + i as f64))
}

/// Γ(a)/Γ(b) in arbitrary precision.
pub fn gamma_ratio_big(a: &Float, b: &Float) -> Float {
    let prec = a.prec().max(b.prec());
    let la = Float::with_val(prec, a.ln_gamma_ref());
    let lb = Float::with_val(prec, b.ln_gamma_ref());
    (la - lb).exp()
}
