//! Exact rational values for non-negative integer λ, where every Γ ratio in
//! α_n² collapses to a product of rationals.

use rug::Rational;

/// Some(λ) when λ is a non-negative integer small enough to be exact.
pub fn integer_lambda(lambda: f64) -> Option<u32> {
    if lambda >= 0.0 && lambda <= 1e6 && lambda.fract() == 0.0 {
        Some(lambda as u32)
    } else {
        None
    }
}

/// Γ(a+m)/Γ(a) for rational a and integer m.
fn gamma_shift(a: &Rational, m: i64) -> Rational {
    let mut r = Rational::from(1);
    if m >= 0 {
        for i in 0..m {
            r *= Rational::from(a + i);
        }
    } else {
        for i in 1..=-m {
            r /= Rational::from(a - i);
        }
    }
    r
}

fn q(v: i64) -> Rational {
    Rational::from(v)
}

fn half(v: i64) -> Rational {
    Rational::from((2 * v + 1, 2))
}

/// α_n² for integer λ >= 0, n >= 1.
pub fn alpha_sq(n: usize, lambda: u32) -> Rational {
    assert!(n >= 1, "alpha_sq needs n >= 1");
    let l = lambda as i64;
    let m = (n / 2) as i64;
    if n % 2 == 0 {
        // 2 [Γ(m+1)/Γ(m+λ)] [Γ(m+λ+1/2)/Γ(m+1/2)] / (2m+λ)
        let r1 = gamma_shift(&q(m + l), 1 - l);
        let r2 = gamma_shift(&half(m), l);
        r1 * r2 * 2u32 / q(2 * m + l)
    } else {
        // 2 [Γ(m+3/2)/Γ(m+λ+1/2)] [Γ(m+1+λ)/Γ(m+1)] / (2m+λ+1)
        let r1 = gamma_shift(&half(m + l), 1 - l);
        let r2 = gamma_shift(&q(m + 1), l);
        r1 * r2 * 2u32 / q(2 * m + l + 1)
    }
}

/// β_λ(n) = (1 - α_n²(1 - 1/(8n²))) n(n+2λ).
pub fn beta(n: usize, lambda: u32) -> Rational {
    let nn = n as i64;
    let a = alpha_sq(n, lambda);
    let corr = Rational::from(1) - Rational::from((1, 8 * nn * nn));
    (Rational::from(1) - a * corr) * q(nn * (nn + 2 * lambda as i64))
}

pub fn beta_inf(lambda: u32) -> Rational {
    let t = 2 * lambda as i64 - 1;
    Rational::from((t * t, 8))
}

/// (γ_n^n)² = x_n = 1 - λ(λ-1)/((n+λ)(n+λ+1)).
pub fn gamma_nn_sq(n: usize, lambda: &Rational) -> Rational {
    let a = Rational::from(lambda + n as u64);
    let b = Rational::from(&a + 1u32);
    let num = Rational::from(lambda * Rational::from(lambda - 1u32));
    Rational::from(1) - num / (a * b)
}

/// Φ_λ at a half-integer argument n/2.
pub fn phi_half(n: usize, lambda: u32) -> Rational {
    alpha_sq(n, lambda)
}

/// Ψ_λ(n/2) = β_λ(n)/4.
pub fn psi_half(n: usize, lambda: u32) -> Rational {
    beta(n, lambda) / 4u32
}
