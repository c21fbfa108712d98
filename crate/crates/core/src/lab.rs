//! Functionals and test families for the Hardy-Rellich and uncertainty
//! inequalities: J(f), τ(f), uncertainty products, heat kernels, extremal
//! sequences, the discrete Hardy lemma and the circle/zonal counterexamples.

use num_complex::Complex64;
use rug::Rational;

use crate::certify::{tau_min, Precision};
use crate::error::{check_lambda, Error, Result};
use crate::fourier::FourierCoeffs;
use crate::gegenbauer::{self, ZonalCoeffs};
use crate::sequences::{gamma_nn, ln_phi_unchecked};
use crate::sphere::{
    basis_norm, harmonic_dim_raw, sphere_lambda, sphere_quadrature, x1_form, x1_form_zonal,
    SphereCoeffs, SphereRule, SpectralMultiplier,
};

fn zero_mean_check(mean: f64, norm: f64) -> Result<()> {
    if mean.abs() > 1e-14 * norm.max(1e-300) {
        Err(Error::NonZeroMean(mean))
    } else {
        Ok(())
    }
}

/// J(f) = ‖g‖² - (1/ω)∫ x₁ g², g = (-Δ)^{1/2} f, for zero-mean zonal f.
pub fn functional_j_zonal(f: &ZonalCoeffs) -> Result<f64> {
    zero_mean_check(f.mean(), f.norm_sq().sqrt())?;
    let g = SpectralMultiplier::new(0.5, f.lambda())?.apply_zonal(f)?;
    Ok(g.norm_sq() - x1_form_zonal(&g, &g)?)
}

pub fn functional_j(f: &SphereCoeffs) -> Result<f64> {
    zero_mean_check(f.mean(), f.norm_sq().sqrt())?;
    let g = SpectralMultiplier::new(0.5, f.lambda())?.apply_sphere(f)?;
    Ok(g.norm_sq() - x1_form(&g, &g)?)
}

/// Basis values at the nodes of a sphere rule, for repeated synthesis of
/// band-limited functions (d <= 4).
#[derive(Debug, Clone)]
pub struct SphereEvaluator {
    pub rule: SphereRule,
    max_degree: usize,
    /// normalized basis values, one row per node, columns in coefficient order
    table: Vec<Vec<f64>>,
}

impl SphereEvaluator {
    /// Rule exact for products of two functions of degree <= max_degree and one
    /// extra coordinate factor.
    pub fn new(dim: usize, max_degree: usize) -> Result<Self> {
        let rule = sphere_quadrature(dim, 2 * max_degree + 1)?;
        let l = sphere_lambda(dim);
        let mut cols = vec![];
        for n in 0..=max_degree {
            for k in 0..=n {
                let h = basis_norm(n, k, l)?.sqrt();
                for j in 0..harmonic_dim_raw(n - k, dim - 1) {
                    cols.push((n, k, j, h));
                }
            }
        }
        let table = rule
            .points
            .iter()
            .map(|p| {
                cols.iter()
                    .map(|&(n, k, j, h)| crate::sphere::eval_basis(n, k, j, p).map(|v| v / h))
                    .collect::<Result<Vec<f64>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            rule,
            max_degree,
            table,
        })
    }

    pub fn values(&self, f: &SphereCoeffs) -> Result<Vec<f64>> {
        if f.dim() != self.rule.dim || f.max_degree() > self.max_degree {
            return Err(Error::InvalidArgument("evaluator shape mismatch".into()));
        }
        let c = f.data();
        Ok(self
            .table
            .iter()
            .map(|row| row.iter().zip(c).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// ((1/ω)∫ x_i f², i = 1..d) with f not normalized.
    pub fn moments(&self, f: &SphereCoeffs) -> Result<Vec<f64>> {
        let v = self.values(f)?;
        let mut m = vec![0.0; self.rule.dim];
        for ((p, w), fv) in self.rule.points.iter().zip(&self.rule.weights).zip(&v) {
            for (mi, xi) in m.iter_mut().zip(p) {
                *mi += w * xi * fv * fv;
            }
        }
        Ok(m)
    }
}

/// First component of τ(f) = (1/ω)∫ x|f|² / ‖f‖², any d, from coefficients.
pub fn tau_first(f: &SphereCoeffs) -> Result<f64> {
    let n2 = f.norm_sq();
    if n2 == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(x1_form(f, f)? / n2)
}

/// Full τ(f) for d <= 4 by quadrature.
pub fn tau_vector(f: &SphereCoeffs) -> Result<Vec<f64>> {
    let ev = SphereEvaluator::new(f.dim(), f.max_degree())?;
    tau_vector_with(&ev, f)
}

pub fn tau_vector_with(ev: &SphereEvaluator, f: &SphereCoeffs) -> Result<Vec<f64>> {
    let n2 = f.norm_sq();
    if n2 == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(ev.moments(f)?.into_iter().map(|m| m / n2).collect())
}

/// τ(f) for an evaluable f on S^{d-1}, d <= 4, using a rule exact to `order`.
pub fn tau_vector_fn<F: Fn(&[f64]) -> f64>(f: F, dim: usize, order: usize) -> Result<Vec<f64>> {
    let rule = sphere_quadrature(dim, order)?;
    let mut m = vec![0.0; dim];
    let mut n2 = 0.0;
    for (p, w) in rule.points.iter().zip(&rule.weights) {
        let v = f(p);
        n2 += w * v * v;
        for (mi, xi) in m.iter_mut().zip(p) {
            *mi += w * xi * v * v;
        }
    }
    if n2 == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(m.into_iter().map(|x| x / n2).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct UncertaintyReport {
    pub dim: usize,
    pub norm_sq: f64,
    /// τ of the normalized function
    pub tau: Vec<f64>,
    pub tau_norm: f64,
    /// ‖∇f‖² / ‖f‖²
    pub grad_sq: f64,
    /// 1 - ‖τ‖, the minimal localization of the normalized function
    pub localization: f64,
    pub product: f64,
    pub zero_mean: bool,
    /// (1 - ‖τ‖²) ‖∇f‖²
    pub weak_lhs: f64,
    /// ((d-1)/2)² ‖τ‖²
    pub weak_rhs: f64,
    pub bounds: BdConstant,
}

impl UncertaintyReport {
    fn build(dim: usize, norm_sq: f64, tau: Vec<f64>, grad_sq: f64, mean: f64) -> Result<Self> {
        let tau_norm = tau.iter().map(|t| t * t).sum::<f64>().sqrt();
        let localization = 1.0 - tau_norm;
        Ok(Self {
            dim,
            norm_sq,
            tau_norm,
            tau,
            grad_sq,
            localization,
            product: localization * grad_sq,
            zero_mean: mean.abs() <= 1e-14 * norm_sq.sqrt(),
            weak_lhs: (1.0 - tau_norm * tau_norm) * grad_sq,
            weak_rhs: ((dim as f64 - 1.0) / 2.0).powi(2) * tau_norm * tau_norm,
            bounds: bd_constant(dim)?,
        })
    }
}

pub fn uncertainty_product(f: &SphereCoeffs) -> Result<UncertaintyReport> {
    let ev = SphereEvaluator::new(f.dim(), f.max_degree())?;
    uncertainty_product_with(&ev, f)
}

pub fn uncertainty_product_with(ev: &SphereEvaluator, f: &SphereCoeffs) -> Result<UncertaintyReport> {
    let n2 = f.norm_sq();
    if n2 == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let tau = tau_vector_with(ev, f)?;
    UncertaintyReport::build(f.dim(), n2, tau, f.grad_sq() / n2, f.mean())
}

/// Zonal version: τ = (τ₁, 0, ...) and the reference constant is B_λ.
pub fn uncertainty_product_zonal(f: &ZonalCoeffs) -> Result<ZonalUncertainty> {
    let n2 = f.norm_sq();
    if n2 == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let l = f.lambda();
    let tau1 = x1_form_zonal(f, f)? / n2;
    let grad: f64 = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| n as f64 * (n as f64 + 2.0 * l) * c * c)
        .sum::<f64>()
        / n2;
    let loc = 1.0 - tau1.abs();
    Ok(ZonalUncertainty {
        lambda: l,
        tau1,
        grad_sq: grad,
        localization: loc,
        product: loc * grad,
        zero_mean: f.mean().abs() <= 1e-14 * n2.sqrt(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZonalUncertainty {
    pub lambda: f64,
    pub tau1: f64,
    pub grad_sq: f64,
    pub localization: f64,
    pub product: f64,
    pub zero_mean: bool,
}

pub fn uncertainty_product_circle(f: &FourierCoeffs) -> Result<UncertaintyReport> {
    let n2 = f.norm_sq();
    if n2 == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let tau = f.first_moments().iter().map(|m| m / n2).collect();
    UncertaintyReport::build(2, n2, tau, f.grad_sq() / n2, f.mean().norm())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BdConstant {
    pub dim: usize,
    /// (d-1)(1 - 2/sqrt(d+3)) for d >= 3; 1/8 for d = 2
    pub value: f64,
    /// root in (0, 2) of (d-1)/4 (1-t)²/(2-t) = t
    pub t_star: f64,
    pub lower: f64,
    pub upper: f64,
}

pub fn bd_constant(dim: usize) -> Result<BdConstant> {
    if dim < 2 {
        return Err(Error::InvalidDimension(dim));
    }
    let d = dim as f64;
    let t_star = 1.0 - 2.0 / (d + 3.0).sqrt();
    let value = if dim == 2 { 0.125 } else { (d - 1.0) * t_star };
    Ok(BdConstant {
        dim,
        value,
        t_star,
        lower: (d - 3.0).powi(2) / 8.0,
        upper: (d - 1.0).powi(2) / 8.0,
    })
}

/// B_λ for the zonal uncertainty inequality: 2 - 2√6/3 at λ = 1/2, otherwise
/// the reciprocal of the zero-mean Hardy-Rellich constant, inf_n β_λ(n).
pub fn b_lambda(lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if lambda == 0.5 {
        return Ok(2.0 - 2.0 * 6f64.sqrt() / 3.0);
    }
    Ok(tau_min(lambda, Precision::Float64)?.value)
}

/// The heat kernel at the pole, q_t = Σ e^{-n(n+2λ)t} Z_n with
/// Z_n = (n+λ)/λ C_n^λ (2 T_n at λ = 0, n >= 1).
#[derive(Debug, Clone, PartialEq)]
pub struct HeatFamily {
    pub lambda: f64,
    pub t: f64,
    /// drop the constant term, giving a zero-mean function
    pub zero_mean: bool,
    pub truncation: usize,
}

impl HeatFamily {
    pub fn new(lambda: f64, t: f64, zero_mean: bool) -> Result<Self> {
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidLambda(lambda));
        }
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Domain {
                value: t,
                domain: "t > 0",
            });
        }
        let truncation = (40.0 / t).sqrt().ceil() as usize;
        Ok(Self {
            lambda,
            t,
            zero_mean,
            truncation,
        })
    }

    /// e^{-n(n+2λ)t}
    pub fn multiplier(&self, n: usize) -> f64 {
        (-(n as f64) * (n as f64 + 2.0 * self.lambda) * self.t).exp()
    }

    /// log of the squared orthonormal coefficient, e^{-2n(n+2λ)t} (n+λ)²/λ² h_n
    fn ln_coeff_sq(&self, n: usize) -> f64 {
        let l = self.lambda;
        let nf = n as f64;
        let base = if n == 0 {
            0.0
        } else if l == 0.0 {
            2f64.ln()
        } else {
            // (n+λ)(2λ)_n / (λ n!)
            (nf + l).ln() - l.ln() + crate::special::ln_gamma(2.0 * l + nf)
                - crate::special::ln_gamma(2.0 * l)
                - crate::special::ln_gamma(nf + 1.0)
        };
        base - 2.0 * nf * (nf + 2.0 * l) * self.t
    }

    pub fn coeffs(&self) -> Result<ZonalCoeffs> {
        let n_max = self.truncation;
        let mut c: Vec<f64> = (0..=n_max).map(|n| (0.5 * self.ln_coeff_sq(n)).exp()).collect();
        if self.zero_mean {
            c[0] = 0.0;
        }
        let norm: f64 = c.iter().map(|v| v * v).sum();
        // tail beyond the truncation, bounded by a geometric series
        let next = self.ln_coeff_sq(n_max + 1).exp();
        let ratio = (self.ln_coeff_sq(n_max + 2) - self.ln_coeff_sq(n_max + 1)).exp();
        let tail = if ratio < 1.0 { next / (1.0 - ratio) } else { f64::INFINITY };
        if tail > 1e-12 * norm {
            return Err(Error::TruncationInsufficient {
                degree: n_max,
                tail: tail / norm,
            });
        }
        ZonalCoeffs::new(self.lambda, c)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeatRow {
    pub t: f64,
    /// ‖sqrt(1-x₁) q_t‖² / ‖q_t‖²
    pub localization: f64,
    /// ‖(-Δ)^{1/2} q_t‖² / ‖q_t‖²
    pub gradient: f64,
    pub product: f64,
    /// localization / (2t), tends to (λ+1/2)/2
    pub localization_scaled: f64,
    /// 2t · gradient, tends to λ+1/2
    pub gradient_scaled: f64,
    /// τ₁(q_t)/‖q_t‖², tends to 1
    pub tau_ratio: f64,
}

pub fn heat_row(family: &HeatFamily) -> Result<HeatRow> {
    let q = family.coeffs()?;
    let z = uncertainty_product_zonal(&q)?;
    let t = family.t;
    Ok(HeatRow {
        t,
        localization: z.localization,
        gradient: z.grad_sq,
        product: z.product,
        localization_scaled: z.localization / (2.0 * t),
        gradient_scaled: 2.0 * t * z.grad_sq,
        tau_ratio: z.tau1,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeatLimits {
    pub lambda: f64,
    pub rows: Vec<HeatRow>,
    pub limit_localization: f64,
    pub limit_gradient: f64,
    pub limit_product: f64,
    /// Aitken-extrapolated values over the last three rows, if available
    pub extrapolated: Option<(f64, f64, f64)>,
}

fn aitken(a: f64, b: f64, c: f64) -> f64 {
    let d = (c - b) - (b - a);
    if d.abs() < 1e-300 {
        c
    } else {
        c - (c - b).powi(2) / d
    }
}

/// Heat-kernel ratios over a list of t values (full kernel, mean included).
pub fn heat_limits(lambda: f64, t_list: &[f64]) -> Result<HeatLimits> {
    let mut ts = t_list.to_vec();
    ts.sort_by(|a, b| b.total_cmp(a));
    let rows = ts
        .iter()
        .map(|&t| heat_row(&HeatFamily::new(lambda, t, false)?))
        .collect::<Result<Vec<_>>>()?;
    let extrapolated = (rows.len() >= 3).then(|| {
        let r = &rows[rows.len() - 3..];
        (
            aitken(r[0].localization_scaled, r[1].localization_scaled, r[2].localization_scaled),
            aitken(r[0].gradient_scaled, r[1].gradient_scaled, r[2].gradient_scaled),
            aitken(r[0].product, r[1].product, r[2].product),
        )
    });
    Ok(HeatLimits {
        lambda,
        rows,
        limit_localization: (lambda + 0.5) / 2.0,
        limit_gradient: lambda + 0.5,
        limit_product: (2.0 * lambda + 1.0).powi(2) / 8.0,
        extrapolated,
    })
}

pub const EXTREMAL_LIMIT: usize = 10_000_000;

fn extremal_g(n: usize, n0: usize, big_n: usize) -> f64 {
    let nf = n as f64;
    if n < n0 {
        0.0
    } else if n <= big_n {
        nf.sqrt()
    } else if n <= big_n * big_n + big_n {
        (big_n as f64 - nf / big_n as f64 + 1.0).sqrt()
    } else {
        0.0
    }
}

fn extremal_pre(lambda: f64, n0: usize, big_n: usize) -> Result<()> {
    check_lambda(lambda)?;
    if n0 < 1 || big_n < 2 * n0 {
        return Err(Error::InvalidArgument(format!(
            "extremal family needs N₀ >= 1 and N >= 2N₀, got N₀ = {n0}, N = {big_n}"
        )));
    }
    Ok(())
}

/// f̂_n = ĝ_n / (α_n sqrt(n(n+2λ))) for the sharpness family.
pub fn extremal_family(lambda: f64, n0: usize, big_n: usize) -> Result<ZonalCoeffs> {
    extremal_pre(lambda, n0, big_n)?;
    let top = big_n * big_n + big_n;
    if top + 1 > EXTREMAL_LIMIT {
        return Err(Error::MemoryGuard {
            requested: top + 1,
            limit: EXTREMAL_LIMIT,
        });
    }
    let c = (0..=top)
        .map(|n| {
            if n == 0 {
                return 0.0;
            }
            let b = extremal_g(n, n0, big_n) / ln_phi_unchecked(0.5 * n as f64, lambda).exp().sqrt();
            b / (n as f64 * (n as f64 + 2.0 * lambda)).sqrt()
        })
        .collect();
    ZonalCoeffs::new(lambda, c)
}

/// ‖f‖² / J_λ(f) for the extremal family, streamed without materializing it.
pub fn extremal_ratio(lambda: f64, n0: usize, big_n: usize) -> Result<f64> {
    extremal_pre(lambda, n0, big_n)?;
    let top = big_n * big_n + big_n;
    let b = |n: usize| extremal_g(n, n0, big_n) / (0.5 * ln_phi_unchecked(0.5 * n as f64, lambda)).exp();
    let mut norm = 0.0;
    let mut diag = 0.0;
    let mut off = 0.0;
    let mut cur = b(n0);
    for n in n0..=top {
        let next = if n < top { b(n + 1) } else { 0.0 };
        let nf = n as f64;
        norm += cur * cur / (nf * (nf + 2.0 * lambda));
        diag += cur * cur;
        off += gamma_nn(n, lambda) * cur * next;
        cur = next;
    }
    Ok(norm / (diag - off))
}

/// (Σ_{N₀}^{N} 1/(4n), Σ_n (ĝ_n - ĝ_{n+1})²) for the extremal ĝ.
pub fn extremal_log_sums(n0: usize, big_n: usize) -> Result<(f64, f64)> {
    extremal_pre(0.0, n0, big_n)?;
    let harmonic = (n0..=big_n).map(|n| 0.25 / n as f64).sum();
    let top = big_n * big_n + big_n;
    let diffs = (n0 - 1..=top)
        .map(|n| (extremal_g(n, n0, big_n) - extremal_g(n + 1, n0, big_n)).powi(2))
        .sum();
    Ok((harmonic, diffs))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardyMargin {
    /// Σ (1 - 1/(8n²)) a_n² - Σ |a_n a_{n+1}|
    pub lemma: f64,
    /// 4 Σ a_n² - Σ_n ((1/n) Σ_{k<=n} |a_k|)²
    pub classical: f64,
    pub norm_sq: f64,
}

impl HardyMargin {
    pub fn holds(&self) -> bool {
        let tol = 1e-12 * self.norm_sq.max(1e-300);
        self.lemma >= -tol && self.classical >= -tol
    }
}

/// Σ_{n>m} 1/n².
fn inverse_square_tail(m: usize) -> f64 {
    let start = m.max(20);
    let head: f64 = (m + 1..=start).map(|n| 1.0 / (n as f64).powi(2)).sum();
    let x = start as f64;
    head + 1.0 / x - 0.5 / (x * x) + 1.0 / (6.0 * x.powi(3)) - 1.0 / (30.0 * x.powi(5))
        + 1.0 / (42.0 * x.powi(7))
}

/// Margins of the discrete Hardy lemma and the p = 2 Hardy inequality for
/// a_1, a_2, ... (zero beyond the slice).
pub fn hardy_check(a: &[f64]) -> HardyMargin {
    let mut rhs = 0.0;
    let mut lhs = 0.0;
    let mut norm = 0.0;
    let mut avg = 0.0;
    let mut partial = 0.0;
    for (i, &v) in a.iter().enumerate() {
        let n = (i + 1) as f64;
        rhs += (1.0 - 1.0 / (8.0 * n * n)) * v * v;
        if let Some(&w) = a.get(i + 1) {
            lhs += (v * w).abs();
        }
        norm += v * v;
        partial += v.abs();
        avg += (partial / n).powi(2);
    }
    avg += partial * partial * inverse_square_tail(a.len());
    HardyMargin {
        lemma: rhs - lhs,
        classical: 4.0 * norm - avg,
        norm_sq: norm,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErratumRow {
    pub eps: f64,
    pub tau: [f64; 2],
    pub grad_sq: f64,
    /// (1 - ‖τ‖) ‖∇f‖² / ‖τ‖ for the normalized function
    pub ratio: f64,
    pub ratio_over_eps: f64,
    /// (1 - ‖τ‖²) ‖∇f‖² and ‖τ‖²/4
    pub weak: (f64, f64),
}

/// f = 1 + ε sin θ on the circle, computed from its Fourier coefficients.
pub fn erratum_counterexample(eps_list: &[f64]) -> Result<Vec<ErratumRow>> {
    eps_list
        .iter()
        .map(|&eps| {
            if !(eps > 0.0 && eps < 1.0) {
                return Err(Error::Domain {
                    value: eps,
                    domain: "(0, 1)",
                });
            }
            let mut f = FourierCoeffs::zeros(1);
            f.set(0, Complex64::new(1.0, 0.0));
            f.set(1, Complex64::new(0.0, -0.5 * eps));
            f.set(-1, Complex64::new(0.0, 0.5 * eps));
            let u = uncertainty_product_circle(&f)?;
            let ratio = u.localization * u.grad_sq / u.tau_norm;
            Ok(ErratumRow {
                eps,
                tau: [u.tau[0], u.tau[1]],
                grad_sq: u.grad_sq,
                ratio,
                ratio_over_eps: ratio / eps,
                weak: (u.weak_lhs, u.weak_rhs),
            })
        })
        .collect()
}

/// f = C_n^λ(x₁) + x₁^k as exact Gegenbauer data.
#[derive(Debug, Clone, PartialEq)]
pub struct ZonalFamilyExact {
    pub lambda: Rational,
    /// coefficients in the unnormalized basis C_j^λ
    pub coeffs: Vec<Rational>,
    pub norm_sq: Rational,
    /// c_λ ∫ t f² w_λ
    pub first_moment: Rational,
    pub grad_sq: Rational,
    pub mean: Rational,
}

fn three_term_exact(n: usize, lambda: &Rational) -> (Rational, Rational) {
    let den = Rational::from(lambda + n as u64) * 2u32;
    let a = Rational::from(n as u64 + 1) / &den;
    let b = (Rational::from(lambda * 2u32) + (n as i64 - 1)) / den;
    (a, b)
}

/// Coefficients of Y + Q with Y = C_n^λ and Q = t^k, for rational λ > 0.
pub fn prop1_family(lambda: &Rational, n: usize, k: usize) -> Result<ZonalFamilyExact> {
    if *lambda <= 0 {
        return Err(Error::ExactUnavailable("λ > 0"));
    }
    let top = n.max(k);
    let mut q = vec![Rational::from(0); top + 2];
    q[0] = Rational::from(1);
    for _ in 0..k {
        let mut next = vec![Rational::from(0); top + 2];
        for (j, c) in q.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let (a, b) = three_term_exact(j, lambda);
            next[j + 1] += Rational::from(c * &a);
            if j > 0 {
                next[j - 1] += Rational::from(c * &b);
            }
        }
        q = next;
    }
    q[n] += 1u32;
    let h: Vec<Rational> = (0..top + 2)
        .map(|j| gegenbauer::norm_exact(j, lambda))
        .collect::<Result<_>>()?;
    let mut norm_sq = Rational::from(0);
    let mut grad_sq = Rational::from(0);
    let mut first_moment = Rational::from(0);
    for j in 0..=top {
        let w = Rational::from(&q[j] * &q[j]) * &h[j];
        let eig = Rational::from(lambda * 2u32) + j as u64;
        grad_sq += Rational::from(&w * &eig) * j as u64;
        norm_sq += w;
        let (a, b) = three_term_exact(j, lambda);
        let mut inner = Rational::from(&a * &q[j + 1]) * &h[j + 1];
        if j > 0 {
            inner += Rational::from(&b * &q[j - 1]) * &h[j - 1];
        }
        first_moment += inner * &q[j];
    }
    q.truncate(top + 1);
    Ok(ZonalFamilyExact {
        lambda: lambda.clone(),
        mean: q[0].clone(),
        coeffs: q,
        norm_sq,
        first_moment,
        grad_sq,
    })
}
