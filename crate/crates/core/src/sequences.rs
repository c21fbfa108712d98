//! The constant sequences of the Gegenbauer Hardy-Rellich problem.
//!
//! α_n² = Φ_λ(n/2) with
//!   Φ_λ(x) = Γ(x+1) Γ(x+1/2+λ) / ((x+λ/2) Γ(x+1/2) Γ(x+λ)),
//! β_λ(n) = (1 - α_n² (1 - 1/(8n²))) n(n+2λ), and Ψ_λ(x) = β_λ(2x)/4.
//!
//! Φ is evaluated in log space: an asymptotic series at large argument and
//! the multiplicative recurrence
//!   Φ(x+1)/Φ(x) = 1 + λ(λ-1) / ((x+λ)(2x+1)(2x+λ+2))
//! run backwards from there. This keeps 1 - α_n² accurate to full relative
//! precision at every n, which β needs since it multiplies by n².

use crate::error::{check_lambda, Error, Result};
use crate::special::gamma_ratio;
use rug::Float;

// B_0 .. B_24
const BERNOULLI: [f64; 25] = [
    1.0,
    -0.5,
    1.0 / 6.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    1.0 / 42.0,
    0.0,
    -1.0 / 30.0,
    0.0,
    5.0 / 66.0,
    0.0,
    -691.0 / 2730.0,
    0.0,
    7.0 / 6.0,
    0.0,
    -3617.0 / 510.0,
    0.0,
    43867.0 / 798.0,
    0.0,
    -174611.0 / 330.0,
    0.0,
    854513.0 / 138.0,
    0.0,
    -236364091.0 / 2730.0,
];

fn bernoulli_poly(n: usize, x: f64) -> f64 {
    let mut binom = 1.0;
    let mut sum = 0.0;
    for (j, b) in BERNOULLI.iter().enumerate().take(n + 1) {
        sum += binom * b * x.powi((n - j) as i32);
        binom = binom * (n - j) as f64 / (j + 1) as f64;
    }
    sum
}

fn series_start(lambda: f64) -> f64 {
    500f64.max(40.0 * lambda.abs())
}

/// ln Φ_λ(x) for large x from Stirling's series of the four Γ factors.
fn ln_phi_asymptotic(x: f64, lambda: f64) -> f64 {
    let mut sum = 0.0;
    let mut xpow = 1.0;
    let mut last = f64::INFINITY;
    for k in 1..24usize {
        xpow /= x;
        let j = k + 1;
        let s = bernoulli_poly(j, 1.0) - bernoulli_poly(j, 0.5) + bernoulli_poly(j, lambda + 0.5)
            - bernoulli_poly(j, lambda);
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        let coef = sign * (s / (k * j) as f64 - (0.5 * lambda).powi(k as i32) / k as f64);
        let term = coef * xpow;
        if term.abs() > last && k > 4 {
            break;
        }
        sum += term;
        last = term.abs();
        if k >= 3 && term.abs() <= 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// ln of the step ratio Φ(x+1)/Φ(x).
fn ln_step(x: f64, lambda: f64) -> f64 {
    (lambda * (lambda - 1.0) / ((x + lambda) * (2.0 * x + 1.0) * (2.0 * x + lambda + 2.0))).ln_1p()
}

fn check_phi_arg(x: f64, lambda: f64) -> Result<()> {
    if x > 0.0 && x + lambda > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            value: x,
            domain: "x > max(0, -λ)",
        })
    }
}

pub fn ln_phi(x: f64, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_phi_arg(x, lambda)?;
    Ok(ln_phi_unchecked(x, lambda))
}

pub(crate) fn ln_phi_unchecked(x: f64, lambda: f64) -> f64 {
    if lambda == 0.0 || lambda == 1.0 {
        return 0.0;
    }
    let x0 = series_start(lambda);
    if x >= x0 {
        return ln_phi_asymptotic(x, lambda);
    }
    let steps = (x0 - x).ceil() as usize;
    let mut acc = 0.0;
    for i in (0..steps).rev() {
        acc += ln_step(x + i as f64, lambda);
    }
    ln_phi_asymptotic(x + steps as f64, lambda) - acc
}

pub fn phi(x: f64, lambda: f64) -> Result<f64> {
    Ok(ln_phi(x, lambda)?.exp())
}

/// Φ_λ(x) directly from the Γ functions (reference route, MPFR-backed).
pub fn phi_gamma(x: f64, lambda: f64) -> f64 {
    let xb = Float::with_val(128, x);
    let lb = Float::with_val(128, lambda);
    crate::bigfloat::phi(&xb, &lb).to_f64()
}

pub fn psi(x: f64, lambda: f64) -> Result<f64> {
    let l = ln_phi(x, lambda)?;
    Ok((-l.exp_m1() + l.exp() / (32.0 * x * x)) * x * (x + lambda))
}

fn check_index(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Domain {
            value: 0.0,
            domain: "n >= 1",
        })
    } else {
        Ok(())
    }
}

/// α_n² = Φ_λ(n/2), n >= 1.
pub fn alpha_sq(n: usize, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_index(n)?;
    Ok(ln_phi_unchecked(0.5 * n as f64, lambda).exp())
}

pub fn alpha(n: usize, lambda: f64) -> Result<f64> {
    Ok(alpha_sq(n, lambda)?.sqrt())
}

/// γ_n^n, the off-diagonal coupling of the zonal x₁ identity; equals
/// 2 a_n for the orthonormal Jacobi entries and α_n α_{n+1} for n >= 1.
pub fn gamma_nn(n: usize, lambda: f64) -> f64 {
    2.0 * crate::gegenbauer::jacobi_offdiag(n, lambda)
}

/// x_n = (γ_n^n)² = 1 - λ(λ-1)/((n+λ)(n+λ+1)).
pub fn x_n(n: usize, lambda: f64) -> f64 {
    let nf = n as f64;
    1.0 - lambda * (lambda - 1.0) / ((nf + lambda) * (nf + lambda + 1.0))
}

/// β_λ(n) = (1 - α_n²(1 - 1/(8n²))) n(n+2λ).
pub fn beta(n: usize, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_index(n)?;
    Ok(beta_unchecked(n, lambda))
}

pub(crate) fn beta_unchecked(n: usize, lambda: f64) -> f64 {
    let nf = n as f64;
    let l = ln_phi_unchecked(0.5 * nf, lambda);
    (-l.exp_m1() + l.exp() / (8.0 * nf * nf)) * nf * (nf + 2.0 * lambda)
}

pub fn beta_inf(lambda: f64) -> f64 {
    (2.0 * lambda - 1.0).powi(2) / 8.0
}

/// γ_λ(n) = (1 - γ_n^n) n(n+2λ).
pub fn gamma_lower(n: usize, lambda: f64) -> f64 {
    let nf = n as f64;
    let one_minus_x = lambda * (lambda - 1.0) / ((nf + lambda) * (nf + lambda + 1.0));
    // 1 - sqrt(x) = (1 - x)/(1 + sqrt(x)) avoids cancellation
    one_minus_x / (1.0 + x_n(n, lambda).sqrt()) * nf * (nf + 2.0 * lambda)
}

/// C'_λ = λ(λ-1) x_1 / (2(1 + sqrt(x_1))), a lower bound for γ_λ(n), n >= 1.
pub fn gamma_lower_bound(lambda: f64) -> f64 {
    let x1 = x_n(1, lambda);
    0.5 * lambda * (lambda - 1.0) * x1 / (1.0 + x1.sqrt())
}

/// F_λ(x), the sextic numerator of the third difference of Ψ_λ as published.
pub fn f_poly(x: f64, lambda: f64) -> f64 {
    let l = lambda;
    let l2 = l * l;
    let l3 = l2 * l;
    let l4 = l3 * l;
    let l5 = l4 * l;
    let l6 = l5 * l;
    let c0 = -l * (1.0 + l) * (2.0 + l) * (4.0 + l) * (37.0 - 77.0 * l + 37.0 * l2);
    let c1 = -568.0 + 308.0 * l + 1346.0 * l2 + 325.0 * l3 - 574.0 * l4 - 501.0 * l5;
    let c2 = 4.0 * (72.0 + 386.0 * l + 3.0 * l2 - 280.0 * l3 - 227.0 * l4 + 48.0 * l5 + 8.0 * l6);
    let c3 = 4.0 * (270.0 - 97.0 * l - 394.0 * l2 - 251.0 * l3 + 80.0 * l4 + 104.0 * l5);
    let c4 = 16.0 * (-10.0 - 79.0 * l - 49.0 * l2 - 8.0 * l3 + 48.0 * l4);
    let c5 = 128.0 * (-4.0 - 3.0 * l - 2.0 * l2 + 3.0 * l3);
    let c6 = -128.0;
    [c0, c1, c2, c3, c4, c5, c6]
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * x + c)
}

/// The published regrouping of F_λ in terms of (x - 3λ³).
pub fn f_poly_regrouped(x: f64, lambda: f64) -> f64 {
    let l = lambda;
    let p = |c: &[f64]| c.iter().rev().fold(0.0, |acc, a| acc * l + a);
    let u = x - 3.0 * l.powi(3);
    let k4 = p(&[4.0, 3.0, 2.0]);
    let k3 = p(&[10.0, 79.0, 49.0, 104.0, 24.0, 48.0]);
    let k2 = p(&[-270.0, 97.0, 394.0, 371.0, 868.0, 484.0, 1248.0, 288.0, 576.0]);
    let k1 = p(&[
        -72.0, -386.0, -3.0, -530.0, 518.0, 1134.0, 1105.0, 2604.0, 1452.0, 3744.0, 864.0, 1728.0,
    ]);
    let k0 = p(&[
        568.0, -308.0, -1346.0, -1189.0, -4058.0, 465.0, -6360.0, 6216.0, 13608.0, 13260.0,
        31248.0, 17424.0, 44928.0, 10368.0, 20736.0,
    ]);
    let c = l * (1.0 + l) * (2.0 + l) * (4.0 + l) * (37.0 - 77.0 * l + 37.0 * l * l);
    -128.0 * u * x.powi(5) - 128.0 * k4 * u * x.powi(4) - 16.0 * k3 * u * x.powi(3)
        - 4.0 * k2 * u * x * x
        - 4.0 * k1 * u * x
        - k0 * x
        - c
}

/// Factor relating F_λ to Δ³Ψ_λ:
/// Δ³Ψ = F · Γ(x)Γ(x+λ+1/2) / (128 (λ+2x)(λ+2x+2)(λ+2x+4)(λ+2x+6) Γ(x+7/2)Γ(x+λ+3)).
pub fn f_prefactor(x: f64, lambda: f64) -> f64 {
    let d = 128.0
        * (lambda + 2.0 * x)
        * (lambda + 2.0 * x + 2.0)
        * (lambda + 2.0 * x + 4.0)
        * (lambda + 2.0 * x + 6.0);
    gamma_ratio(x, x + 3.5) * gamma_ratio(x + lambda + 0.5, x + lambda + 3.0) / d
}

/// Third forward difference of Ψ_λ, in 256-bit arithmetic.
pub fn delta3_psi(x: f64, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_phi_arg(x, lambda)?;
    Ok(crate::bigfloat::delta3_psi(x, lambda, 256).to_f64())
}

/// One row of a sequence table.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceRow {
    pub n: usize,
    pub alpha_sq: f64,
    pub beta: f64,
    pub gamma_nn: f64,
    pub gamma_lower: f64,
    pub x_n: f64,
    /// exact α_n² and β_λ(n) when λ is a non-negative integer
    pub exact: Option<(rug::Rational, rug::Rational)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequenceTable {
    pub lambda: f64,
    pub rows: Vec<SequenceRow>,
}

impl SequenceTable {
    pub fn build(lambda: f64, n_max: usize, exact: bool) -> Result<Self> {
        check_lambda(lambda)?;
        let int_lambda = crate::exact::integer_lambda(lambda);
        if exact && int_lambda.is_none() {
            return Err(Error::ExactUnavailable("a non-negative integer λ"));
        }
        let rows = (1..=n_max)
            .map(|n| {
                let exact = match (exact, int_lambda) {
                    (true, Some(li)) => Some((
                        crate::exact::alpha_sq(n, li),
                        crate::exact::beta(n, li),
                    )),
                    _ => None,
                };
                SequenceRow {
                    n,
                    alpha_sq: ln_phi_unchecked(0.5 * n as f64, lambda).exp(),
                    beta: beta_unchecked(n, lambda),
                    gamma_nn: gamma_nn(n, lambda),
                    gamma_lower: gamma_lower(n, lambda),
                    x_n: x_n(n, lambda),
                    exact,
                }
            })
            .collect();
        Ok(Self { lambda, rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const LAMBDAS: [f64; 7] = [0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0];

    #[test]
    fn alpha_against_gamma_closed_form() {
        for &l in &[-0.3, 0.25, 0.5, 0.7, 1.5, 2.0, 3.0, 3.7] {
            for n in 1..200 {
                let x = 0.5 * n as f64;
                let a = alpha_sq(n, l).unwrap();
                assert!((a / phi_gamma(x, l) - 1.0).abs() < 1e-13, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn alpha_trivial_cases() {
        for n in 1..50 {
            assert_eq!(alpha_sq(n, 0.0).unwrap(), 1.0);
            assert_eq!(alpha_sq(n, 1.0).unwrap(), 1.0);
        }
    }

    #[test]
    fn factorization_of_coupling() {
        for &l in &LAMBDAS {
            for n in 1..=10_000 {
                let g = gamma_nn(n, l);
                let p = alpha(n, l).unwrap() * alpha(n + 1, l).unwrap();
                assert!((g - p).abs() <= 1e-12 * g, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn parity_monotonicity_of_alpha() {
        for &l in &[-0.3, 0.25, 0.5, 0.75, 1.25, 2.0, 3.0] {
            for n in 1..300 {
                let a = alpha_sq(n, l).unwrap();
                let b = alpha_sq(n + 2, l).unwrap();
                if (0.0..=1.0).contains(&l) {
                    assert!(b <= a, "n={n} l={l}");
                } else {
                    assert!(b >= a, "n={n} l={l}");
                }
            }
        }
    }

    #[test]
    fn step_ratio_matches_gamma_route() {
        for &l in &[0.3, 1.7, 2.5] {
            for &x in &[0.5, 1.0, 3.25, 10.0] {
                let r = phi_gamma(x + 1.0, l) / phi_gamma(x, l);
                assert!((r - ln_step(x, l).exp()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn series_and_recurrence_agree_at_switch() {
        for &l in &[0.3, 2.0, 3.7] {
            let x0 = series_start(l);
            let direct = ln_phi_asymptotic(x0 - 0.5, l);
            let rec = ln_phi_unchecked(x0 - 0.5, l);
            assert!((direct - rec).abs() <= 1e-15 * direct.abs().max(1e-300) + 1e-22);
        }
    }

    #[test]
    fn phi_asymptotic_coefficient() {
        for &l in &LAMBDAS {
            let c = (l - l * l) / 8.0;
            for &x in &[1e3, 1e4] {
                let v = x * x * ln_phi(x, l).unwrap().exp_m1();
                assert!((v - c).abs() < 1e-2 * c.abs().max(1e-3), "x={x} l={l} v={v}");
            }
        }
    }

    #[test]
    fn beta_limit_and_rate() {
        for &l in &LAMBDAS {
            let lim = beta_inf(l);
            let mut c_max: f64 = 0.0;
            for n in 100..=4000 {
                c_max = c_max.max((beta(n, l).unwrap() - lim).abs() * n as f64);
            }
            assert!(c_max < 10.0 * (1.0 + l * l * l), "l={l} C={c_max}");
            // error shrinks by ~10 over a decade
            let e1 = (beta(1000, l).unwrap() - lim).abs();
            let e2 = (beta(10_000, l).unwrap() - lim).abs();
            assert!(e2 <= e1 + 1e-13, "l={l}");
        }
    }

    #[test]
    fn lambda_one_closed_form() {
        for n in 1..500 {
            let exact = (n as f64 + 2.0) / (8.0 * n as f64);
            assert!((beta(n, 1.0).unwrap() - exact).abs() < 1e-14);
            let x = 0.5 * n as f64;
            assert!((psi(x, 1.0).unwrap() - (x + 1.0) / (32.0 * x)).abs() < 1e-14);
        }
    }

    #[test]
    fn beta_is_four_psi() {
        for &l in &LAMBDAS {
            for n in 1..100 {
                let b = beta(n, l).unwrap();
                let p = 4.0 * psi(0.5 * n as f64, l).unwrap();
                assert!((b - p).abs() < 1e-12 * b.abs().max(1.0));
            }
        }
    }

    #[test]
    fn gamma_lower_forms() {
        for &l in &[1.5, 2.0, 3.0, 4.5] {
            let cp = gamma_lower_bound(l);
            for n in 1..=1000 {
                let nf = n as f64;
                let direct = (1.0 - gamma_nn(n, l)) * nf * (nf + 2.0 * l);
                let x = x_n(n, l);
                let alt = l * (l - 1.0) * x * nf / (nf + 1.0) / (1.0 + x.sqrt());
                let g = gamma_lower(n, l);
                assert!((g - direct).abs() < 1e-9 * g.abs().max(1.0));
                assert!((g - alt).abs() < 1e-12 * g.abs());
                assert!(g >= cp * (1.0 - 1e-14), "n={n} l={l}");
            }
        }
    }

    #[test]
    fn regrouped_matches_sextic() {
        for &l in &[0.0, 0.3, 0.6, 1.0, 2.0, 3.0] {
            for &x in &[0.1, 1.0, 2.5, 17.0, 90.0] {
                let a = f_poly(x, l);
                let b = f_poly_regrouped(x, l);
                assert!((a - b).abs() <= 1e-10 * a.abs().max(b.abs()).max(1.0), "x={x} l={l}");
            }
        }
    }

    #[test]
    fn delta3_psi_lambda_one() {
        // Ψ_1(x) = (x+1)/(32x), so Δ³Ψ_1(x) = -6 / (32 x(x+1)(x+2)(x+3))
        for &x in &[0.5, 1.0, 4.0, 30.0] {
            let exact = -6.0 / (32.0 * x * (x + 1.0) * (x + 2.0) * (x + 3.0));
            assert!((delta3_psi(x, 1.0).unwrap() / exact - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn table_exact_payload() {
        let t = SequenceTable::build(2.0, 4, true).unwrap();
        assert_eq!(t.rows[1].exact.as_ref().unwrap().1, rug::Rational::from((141, 128)));
        assert!(SequenceTable::build(0.5, 4, true).is_err());
    }

    #[test]
    fn domain_errors() {
        assert!(beta(0, 1.0).is_err());
        assert!(alpha_sq(3, -0.5).is_err());
        assert!(phi(-1.0, 1.5).is_err());
    }

    proptest! {
        #[test]
        fn phi_matches_gamma(x in 0.5f64..400.0, l in -0.4f64..4.0) {
            let a = phi(x, l).unwrap();
            prop_assert!((a / phi_gamma(x, l) - 1.0).abs() < 1e-13);
        }
    }
}
