//! Arbitrary-precision versions of the Γ-ratio sequences, used where f64
//! cancellation is too severe (third differences) and as reference values.

use rug::Float;

use crate::special::gamma_ratio_big;

fn f(prec: u32, v: f64) -> Float {
    Float::with_val(prec, v)
}

pub fn phi(x: &Float, lambda: &Float) -> Float {
    let prec = x.prec();
    let half = f(prec, 0.5);
    let a = gamma_ratio_big(&Float::with_val(prec, x + 1u32), &Float::with_val(prec, x + &half));
    let b = gamma_ratio_big(
        &Float::with_val(prec, Float::with_val(prec, x + &half) + lambda),
        &Float::with_val(prec, x + lambda),
    );
    let d = Float::with_val(prec, x + Float::with_val(prec, lambda * &half));
    a * b / d
}

pub fn psi(x: &Float, lambda: &Float) -> Float {
    let prec = x.prec();
    let p = phi(x, lambda);
    let x2 = Float::with_val(prec, x * x);
    let corr = Float::with_val(prec, &p / (x2 * 32u32));
    let core = Float::with_val(prec, 1u32 - &p) + corr;
    core * x * Float::with_val(prec, x + lambda)
}

pub fn alpha_sq(n: usize, lambda: f64, prec: u32) -> Float {
    phi(&f(prec, 0.5 * n as f64), &f(prec, lambda))
}

pub fn beta(n: usize, lambda: f64, prec: u32) -> Float {
    psi(&f(prec, 0.5 * n as f64), &f(prec, lambda)) * 4u32
}

pub fn delta3_psi(x: f64, lambda: f64, prec: u32) -> Float {
    let l = f(prec, lambda);
    let p = |k: f64| psi(&f(prec, x + k), &l);
    let (p0, p1, p2, p3) = (p(0.0), p(1.0), p(2.0), p(3.0));
    p3 - p2 * 3u32 + p1 * 3u32 - p0
}
