//! Gegenbauer polynomials C_n^λ on [-1, 1] with the normalized weight
//! c_λ (1 - t²)^{λ-1/2}.
//!
//! At λ = 0 the family is replaced by the Chebyshev polynomials T_n, with
//! h_0 = 1 and h_n = 1/2. The orthonormal recurrence below needs no special
//! case: its first off-diagonal entry is 1/sqrt(2(λ+1)) for every λ.

use rug::Rational;

use crate::error::{check_lambda, Error, Result};
use crate::quadrature::{gauss_rule, QuadratureRule};
use crate::special::gamma_ratio;

/// Orthogonality weight (1 - t²)^{λ-1/2}, unnormalized.
pub fn weight(t: f64, lambda: f64) -> f64 {
    (1.0 - t * t).powf(lambda - 0.5)
}

/// c_λ = Γ(λ+1) / (sqrt(π) Γ(λ+1/2)), making c_λ ∫ w_λ = 1.
pub fn weight_normalizer(lambda: f64) -> f64 {
    gamma_ratio(lambda + 1.0, lambda + 0.5) / std::f64::consts::PI.sqrt()
}

fn check_t(t: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::Domain {
            value: t,
            domain: "[-1, 1]",
        })
    }
}

/// C_n^λ(t) by the three-term recurrence.
pub fn eval(n: usize, lambda: f64, t: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_t(t)?;
    Ok(eval_unchecked(n, lambda, t))
}

pub(crate) fn eval_unchecked(n: usize, lambda: f64, t: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let chebyshev = lambda == 0.0;
    let mut prev = 1.0;
    let mut cur = if chebyshev { t } else { 2.0 * lambda * t };
    for k in 2..=n {
        let kf = k as f64;
        let next = if chebyshev {
            2.0 * t * cur - prev
        } else {
            (2.0 * (kf + lambda - 1.0) * t * cur - (kf + 2.0 * lambda - 2.0) * prev) / kf
        };
        prev = cur;
        cur = next;
    }
    cur
}

/// h_n^λ = c_λ ∫ (C_n^λ)² w_λ = λ (2λ)_n / ((n+λ) n!).
pub fn norm(n: usize, lambda: f64) -> f64 {
    if lambda == 0.0 {
        return if n == 0 { 1.0 } else { 0.5 };
    }
    let mut h = lambda / (n as f64 + lambda);
    for i in 0..n {
        h *= (2.0 * lambda + i as f64) / (i as f64 + 1.0);
    }
    h
}

/// h_n^λ as an exact rational for rational λ.
pub fn norm_exact(n: usize, lambda: &Rational) -> Result<Rational> {
    if *lambda <= Rational::from((-1, 2)) {
        return Err(Error::InvalidLambda(lambda.to_f64()));
    }
    if *lambda == 0 {
        return Ok(if n == 0 {
            Rational::from(1)
        } else {
            Rational::from((1, 2))
        });
    }
    let mut h = Rational::from(lambda / Rational::from(lambda + n as u64));
    let two_lambda = Rational::from(lambda * 2u32);
    for i in 0..n as u64 {
        h *= Rational::from(&two_lambda + i);
        h /= i + 1;
    }
    Ok(h)
}

/// Coefficients of t C_n = A_n C_{n+1} + B_n C_{n-1}.
pub fn three_term(n: usize, lambda: f64) -> (f64, f64) {
    let nf = n as f64;
    if lambda == 0.0 {
        return if n == 0 { (1.0, 0.0) } else { (0.5, 0.5) };
    }
    (
        (nf + 1.0) / (2.0 * (nf + lambda)),
        (nf + 2.0 * lambda - 1.0) / (2.0 * (nf + lambda)),
    )
}

/// Off-diagonal entry a_n of the Jacobi matrix of the orthonormal family:
/// t p_n = a_n p_{n+1} + a_{n-1} p_{n-1}.
pub fn jacobi_offdiag(n: usize, lambda: f64) -> f64 {
    if n == 0 {
        return (0.5 / (lambda + 1.0)).sqrt();
    }
    let nf = n as f64;
    0.5 * ((nf + 1.0) * (nf + 2.0 * lambda) / ((nf + lambda) * (nf + lambda + 1.0))).sqrt()
}

/// Orthonormal values p_0(t), ..., p_{n_max}(t), p_n = C_n^λ / sqrt(h_n^λ).
pub fn orthonormal_values(n_max: usize, lambda: f64, t: f64) -> Vec<f64> {
    let mut p = Vec::with_capacity(n_max + 1);
    p.push(1.0);
    if n_max == 0 {
        return p;
    }
    let a0 = jacobi_offdiag(0, lambda);
    p.push(t / a0);
    let mut a_prev = a0;
    for n in 1..n_max {
        let a = jacobi_offdiag(n, lambda);
        let next = (t * p[n] - a_prev * p[n - 1]) / a;
        p.push(next);
        a_prev = a;
    }
    p
}

/// Orthonormal Gegenbauer expansion f(t) = Σ f̂_n p_n(t).
#[derive(Debug, Clone, PartialEq)]
pub struct ZonalCoeffs {
    lambda: f64,
    coeffs: Vec<f64>,
}

impl ZonalCoeffs {
    pub fn new(lambda: f64, coeffs: Vec<f64>) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(Self { lambda, coeffs })
    }

    pub fn zeros(lambda: f64, max_degree: usize) -> Result<Self> {
        Self::new(lambda, vec![0.0; max_degree + 1])
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn mean(&self) -> f64 {
        self.coeffs.first().copied().unwrap_or(0.0)
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// Evaluate Σ f̂_n p_n(t) by Clenshaw summation.
    pub fn synthesize(&self, t: f64) -> Result<f64> {
        check_t(t)?;
        Ok(self.synthesize_unchecked(t))
    }

    pub(crate) fn synthesize_unchecked(&self, t: f64) -> f64 {
        let n = self.coeffs.len();
        if n == 0 {
            return 0.0;
        }
        // p_{k+1} = (t/a_k) p_k - (a_{k-1}/a_k) p_{k-1}
        let a: Vec<f64> = (0..n).map(|k| jacobi_offdiag(k, self.lambda)).collect();
        let mut b1 = 0.0;
        let mut b2 = 0.0;
        for k in (0..n).rev() {
            let alpha = t / a[k];
            let beta_next = if k + 1 < n { -a[k] / a[k + 1] } else { 0.0 };
            let b0 = self.coeffs[k] + alpha * b1 + beta_next * b2;
            b2 = b1;
            b1 = b0;
        }
        b1
    }

    /// Project f onto degrees 0..=max_degree with a Gauss rule of
    /// max_degree + 32 points.
    pub fn analyze<F: Fn(f64) -> f64>(f: F, lambda: f64, max_degree: usize) -> Result<Self> {
        Self::analyze_with_points(f, lambda, max_degree, max_degree + 32)
    }

    /// Projection with an explicit number of Gauss points. The rule is
    /// checked against the orthonormality of p_0..p_{max_degree}.
    pub fn analyze_with_points<F: Fn(f64) -> f64>(
        f: F,
        lambda: f64,
        max_degree: usize,
        points: usize,
    ) -> Result<Self> {
        check_lambda(lambda)?;
        if points <= max_degree {
            return Err(Error::TruncationTooSmall {
                size: points,
                reason: format!("need more than {max_degree} quadrature points"),
            });
        }
        let rule = gauss_rule(lambda, points)?;
        Self::analyze_with_rule(f, lambda, max_degree, &rule)
    }

    pub fn analyze_with_rule<F: Fn(f64) -> f64>(
        f: F,
        lambda: f64,
        max_degree: usize,
        rule: &QuadratureRule,
    ) -> Result<Self> {
        let mut coeffs = vec![0.0; max_degree + 1];
        let mut gram = vec![0.0; max_degree + 1];
        for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
            let p = orthonormal_values(max_degree, lambda, x);
            let fx = f(x);
            for n in 0..=max_degree {
                coeffs[n] += w * fx * p[n];
                gram[n] += w * p[n] * p[n];
            }
        }
        let residual = gram.iter().map(|g| (g - 1.0).abs()).fold(0.0, f64::max);
        if residual > 1e-10 {
            return Err(Error::OrthogonalityLoss(residual));
        }
        Self::new(lambda, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const LAMBDAS: [f64; 6] = [0.0, 0.25, 0.5, 1.0, 1.5, 3.0];

    #[test]
    fn low_degree_closed_forms() {
        for &l in &LAMBDAS[1..] {
            let t = 0.37;
            assert!((eval(1, l, t).unwrap() - 2.0 * l * t).abs() < 1e-15);
            let c2 = 2.0 * l * (l + 1.0) * t * t - l;
            assert!((eval(2, l, t).unwrap() - c2).abs() < 1e-14);
        }
        // Chebyshev convention
        assert!((eval(3, 0.0, 0.2).unwrap() - (4.0 * 0.008 - 0.6)).abs() < 1e-15);
    }

    #[test]
    fn endpoint_value_is_pochhammer_ratio() {
        for &l in &LAMBDAS[1..] {
            let mut expect = 1.0;
            for n in 0..30usize {
                let got = eval(n, l, 1.0).unwrap();
                assert!((got / expect - 1.0).abs() < 1e-12, "n={n} l={l}");
                expect *= (2.0 * l + n as f64) / (n as f64 + 1.0);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(eval(2, 0.5, 1.5).is_err());
        assert!(eval(2, -0.5, 0.0).is_err());
        assert!(ZonalCoeffs::zeros(-0.7, 3).is_err());
    }

    #[test]
    fn norm_against_quadrature() {
        for &l in &LAMBDAS {
            let rule = gauss_rule(l, 60).unwrap();
            for n in 0..40 {
                let q: f64 = rule
                    .nodes
                    .iter()
                    .zip(&rule.weights)
                    .map(|(&x, &w)| w * eval_unchecked(n, l, x).powi(2))
                    .sum();
                assert!((q / norm(n, l) - 1.0).abs() < 1e-12, "n={n} l={l}");
            }
        }
    }

    #[test]
    fn norm_exact_matches_float() {
        for (p, q) in [(1, 2), (2, 3), (1, 1), (3, 1), (0, 1)] {
            let l = Rational::from((p, q));
            for n in 0..20 {
                let e = norm_exact(n, &l).unwrap().to_f64();
                assert!((e / norm(n, l.to_f64()) - 1.0).abs() < 1e-14);
            }
        }
        assert_eq!(norm_exact(3, &Rational::from(1)).unwrap(), 1);
    }

    #[test]
    fn orthonormality_on_gauss_rule() {
        for &l in &LAMBDAS {
            let rule = gauss_rule(l, 40).unwrap();
            let vals: Vec<Vec<f64>> = rule
                .nodes
                .iter()
                .map(|&x| orthonormal_values(30, l, x))
                .collect();
            for m in 0..=30 {
                for n in 0..=30 {
                    let ip: f64 = vals
                        .iter()
                        .zip(&rule.weights)
                        .map(|(p, w)| w * p[m] * p[n])
                        .sum();
                    let expect = if m == n { 1.0 } else { 0.0 };
                    assert!((ip - expect).abs() < 1e-12, "m={m} n={n} l={l}");
                }
            }
        }
    }

    #[test]
    fn three_term_relation_holds() {
        for &l in &LAMBDAS {
            for n in 1..200 {
                let (a, b) = three_term(n, l);
                for &t in &[-0.93, -0.2, 0.41, 0.999] {
                    let lhs = t * eval_unchecked(n, l, t);
                    let rhs = a * eval_unchecked(n + 1, l, t) + b * eval_unchecked(n - 1, l, t);
                    let scale = lhs.abs().max(1.0);
                    assert!((lhs - rhs).abs() <= 1e-12 * scale, "n={n} l={l} t={t}");
                }
            }
        }
    }

    #[test]
    fn clenshaw_matches_direct_sum() {
        let l = 0.75;
        let c: Vec<f64> = (0..25).map(|k| 1.0 / (k as f64 + 1.0)).collect();
        let f = ZonalCoeffs::new(l, c.clone()).unwrap();
        for &t in &[-1.0, -0.3, 0.0, 0.8, 1.0] {
            let p = orthonormal_values(24, l, t);
            let direct: f64 = c.iter().zip(&p).map(|(a, b)| a * b).sum();
            assert!((f.synthesize(t).unwrap() - direct).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn analyze_synthesize_round_trip(
            l in -0.45f64..4.0,
            c in proptest::collection::vec(-1.0f64..1.0, 1..20),
        ) {
            let f = ZonalCoeffs::new(l, c.clone()).unwrap();
            let g = ZonalCoeffs::analyze(|t| f.synthesize_unchecked(t), l, c.len() - 1).unwrap();
            for (a, b) in c.iter().zip(g.coeffs()) {
                prop_assert!((a - b).abs() < 1e-11);
            }
        }

        #[test]
        fn parity(n in 0usize..60, l in 0.0f64..3.0, t in 0.0f64..1.0) {
            let a = eval_unchecked(n, l, t);
            let b = eval_unchecked(n, l, -t);
            let s = if n % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!((a - s * b).abs() <= 1e-12 * a.abs().max(1.0));
        }
    }
}
