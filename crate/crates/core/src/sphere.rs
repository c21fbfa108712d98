//! Spherical-harmonic coefficient algebra on S^{d-1}.
//!
//! Basis: P^n_{j,k}(x) = C_k^{n-k+λ}(x₁) (sin θ)^{n-k} Y_j^{n-k}(ξ) with
//! λ = (d-2)/2, x = (cos θ, sin θ ξ) and Y_j^m an orthonormal basis of
//! degree-m harmonics on S^{d-2}. Coefficients are taken against the
//! normalized basis P / sqrt(H_k^n) under the normalized surface measure.
//!
//! H_k^n = (c_λ / c_μ) h_k^μ with μ = n-k+λ; the ratio c_λ/c_μ equals
//! (λ+1/2)_m / (λ+1)_m, m = n-k, and is 1 on the zonal entries k = n.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gegenbauer::{self, ZonalCoeffs};
use crate::quadrature::gauss_rule;

fn binom_u128(a: i64, b: u64) -> u128 {
    if a < 0 || (a as u64) < b {
        return 0;
    }
    let a = a as u128;
    let b = b as u128;
    let mut r: u128 = 1;
    for i in 0..b {
        r = r * (a - i) / (i + 1);
    }
    r
}

/// a_n^d for d >= 1 (d = 1 is the 0-sphere: a_0 = a_1 = 1).
pub(crate) fn harmonic_dim_raw(n: usize, d: usize) -> usize {
    let top = n as i64 + d as i64 - 1;
    (binom_u128(top, d as u64 - 1) - binom_u128(top - 2, d as u64 - 1)) as usize
}

/// Dimension of the space of degree-n spherical harmonics on S^{d-1}.
pub fn harmonic_dim(n: usize, d: usize) -> Result<u64> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    Ok(harmonic_dim_raw(n, d) as u64)
}

pub fn sphere_lambda(d: usize) -> f64 {
    (d as f64 - 2.0) / 2.0
}

/// c_λ / c_{λ+m} = (λ+1/2)_m / (λ+1)_m
fn measure_ratio(m: usize, lambda: f64) -> f64 {
    (0..m).fold(1.0, |acc, i| {
        acc * (lambda + 0.5 + i as f64) / (lambda + 1.0 + i as f64)
    })
}

/// H_k^n, the squared norm of P^n_{j,k}.
pub fn basis_norm(n: usize, k: usize, lambda: f64) -> Result<f64> {
    if k > n {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds n = {n}")));
    }
    let m = n - k;
    Ok(measure_ratio(m, lambda) * gegenbauer::norm(k, m as f64 + lambda))
}

/// γ_k^n = sqrt((2n-k+2λ)(k+1) / ((n+λ)(n+λ+1))); the n = 0 value is the
/// limit sqrt(2/(λ+1)), which also covers d = 2.
pub fn coupling_gamma(n: usize, k: usize, lambda: f64) -> f64 {
    if n == 0 {
        return (2.0 / (lambda + 1.0)).sqrt();
    }
    let (n, k) = (n as f64, k as f64);
    ((2.0 * n - k + 2.0 * lambda) * (k + 1.0) / ((n + lambda) * (n + lambda + 1.0))).sqrt()
}

/// (A_k^n, B_k^n) with x₁ P^n_{j,k} = A P^{n+1}_{j,k+1} + B P^{n-1}_{j,k-1}.
pub fn three_term_sphere(n: usize, k: usize, lambda: f64) -> (f64, f64) {
    let m = n - k;
    gegenbauer::three_term(k, m as f64 + lambda)
}

/// Coefficients f̂^n_{j,k}, 0 <= k <= n <= N, 0 <= j < a^{d-1}_{n-k}.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereCoeffs {
    dim: usize,
    max_degree: usize,
    /// start of each (n, k) block, row-major over n then k
    starts: Vec<usize>,
    data: Vec<f64>,
}

impl SphereCoeffs {
    pub fn zeros(dim: usize, max_degree: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        let mut starts = Vec::with_capacity((max_degree + 1) * (max_degree + 2) / 2 + 1);
        let mut pos = 0;
        for n in 0..=max_degree {
            for k in 0..=n {
                starts.push(pos);
                pos += harmonic_dim_raw(n - k, dim - 1);
            }
        }
        starts.push(pos);
        Ok(Self {
            dim,
            max_degree,
            starts,
            data: vec![0.0; pos],
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lambda(&self) -> f64 {
        sphere_lambda(self.dim)
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    fn slot(n: usize, k: usize) -> usize {
        n * (n + 1) / 2 + k
    }

    fn range(&self, n: usize, k: usize) -> std::ops::Range<usize> {
        let s = Self::slot(n, k);
        self.starts[s]..self.starts[s + 1]
    }

    pub fn block(&self, n: usize, k: usize) -> &[f64] {
        &self.data[self.range(n, k)]
    }

    pub fn block_mut(&mut self, n: usize, k: usize) -> &mut [f64] {
        let r = self.range(n, k);
        &mut self.data[r]
    }

    /// all coefficients of degree n, contiguous
    pub fn degree(&self, n: usize) -> &[f64] {
        let a = self.starts[Self::slot(n, 0)];
        let b = self.starts[Self::slot(n, n) + 1];
        &self.data[a..b]
    }

    pub fn degree_mut(&mut self, n: usize) -> &mut [f64] {
        let a = self.starts[Self::slot(n, 0)];
        let b = self.starts[Self::slot(n, n) + 1];
        &mut self.data[a..b]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn mean(&self) -> f64 {
        self.data[0]
    }

    pub fn norm_sq(&self) -> f64 {
        self.data.iter().map(|c| c * c).sum()
    }

    /// ‖∇f‖² = Σ n(n+2λ) |f̂^n|²
    pub fn grad_sq(&self) -> f64 {
        let l = self.lambda();
        (1..=self.max_degree)
            .map(|n| {
                let w = n as f64 * (n as f64 + 2.0 * l);
                w * self.degree(n).iter().map(|c| c * c).sum::<f64>()
            })
            .sum()
    }

    /// Embed a zonal expansion: f̂^n_{0,n} = f̂_n.
    pub fn from_zonal(dim: usize, f: &ZonalCoeffs) -> Result<Self> {
        if (f.lambda() - sphere_lambda(dim)).abs() > 1e-15 {
            return Err(Error::MultiplierMismatch(format!(
                "zonal λ = {} does not match d = {dim}",
                f.lambda()
            )));
        }
        let mut s = Self::zeros(dim, f.max_degree())?;
        for (n, &c) in f.coeffs().iter().enumerate() {
            s.block_mut(n, n)[0] = c;
        }
        Ok(s)
    }
}

/// (1/ω) ∫ x₁ f g for any f, g, including the mean terms.
pub fn x1_form(a: &SphereCoeffs, b: &SphereCoeffs) -> Result<f64> {
    if a.dim != b.dim {
        return Err(Error::InvalidArgument("dimension mismatch".into()));
    }
    let l = a.lambda();
    let top = a.max_degree.min(b.max_degree);
    let mut sum = 0.0;
    for n in 0..top {
        for k in 0..=n {
            let g = coupling_gamma(n, k, l);
            let (a0, a1) = (a.block(n, k), a.block(n + 1, k + 1));
            let (b0, b1) = (b.block(n, k), b.block(n + 1, k + 1));
            let mut s = 0.0;
            for j in 0..a0.len() {
                s += a0[j] * b1[j] + b0[j] * a1[j];
            }
            sum += 0.5 * g * s;
        }
    }
    // coefficients above the common degree still couple to degree top
    let (hi, lo) = if a.max_degree > b.max_degree { (a, b) } else { (b, a) };
    if hi.max_degree > top {
        let n = top;
        for k in 0..=n {
            let g = coupling_gamma(n, k, l);
            let (x, y) = (lo.block(n, k), hi.block(n + 1, k + 1));
            sum += 0.5 * g * x.iter().zip(y).map(|(p, q)| p * q).sum::<f64>();
        }
    }
    Ok(sum)
}

/// Σ γ_k^n f̂^n_{j,k} ĝ^{n+1}_{j,k+1} (symmetrized); both functions must have zero mean.
pub fn x1_bilinear_form(a: &SphereCoeffs, b: &SphereCoeffs) -> Result<f64> {
    for f in [a, b] {
        if f.mean().abs() > 1e-14 * f.norm_sq().sqrt().max(1e-300) {
            return Err(Error::NonZeroMean(f.mean()));
        }
    }
    x1_form(a, b)
}

/// Zonal analogue: (c_λ ∫ t f g w_λ) = Σ γ_n^n (â_n b̂_{n+1} + â_{n+1} b̂_n)/2.
pub fn x1_form_zonal(a: &ZonalCoeffs, b: &ZonalCoeffs) -> Result<f64> {
    if a.lambda() != b.lambda() {
        return Err(Error::InvalidArgument("λ mismatch".into()));
    }
    let l = a.lambda();
    let (ca, cb) = (a.coeffs(), b.coeffs());
    let mut sum = 0.0;
    for n in 0..ca.len().max(cb.len()).saturating_sub(1) {
        let g = crate::sequences::gamma_nn(n, l);
        let get = |c: &[f64], i: usize| c.get(i).copied().unwrap_or(0.0);
        sum += 0.5 * g * (get(ca, n) * get(cb, n + 1) + get(ca, n + 1) * get(cb, n));
    }
    Ok(sum)
}

pub fn x1_bilinear_form_zonal(a: &ZonalCoeffs, b: &ZonalCoeffs) -> Result<f64> {
    for f in [a, b] {
        if f.mean().abs() > 1e-14 * f.norm_sq().sqrt().max(1e-300) {
            return Err(Error::NonZeroMean(f.mean()));
        }
    }
    x1_form_zonal(a, b)
}

/// (-Δ)^r acting by n(n+2λ)^r on degree n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralMultiplier {
    pub exponent: f64,
    pub lambda: f64,
}

impl SpectralMultiplier {
    pub fn new(exponent: f64, lambda: f64) -> Result<Self> {
        crate::error::check_lambda(lambda)?;
        Ok(Self { exponent, lambda })
    }

    pub fn factor(&self, n: usize) -> f64 {
        if self.exponent == 0.0 {
            return 1.0;
        }
        if n == 0 {
            return 0.0;
        }
        (n as f64 * (n as f64 + 2.0 * self.lambda)).powf(self.exponent)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.lambda != other.lambda {
            return Err(Error::MultiplierMismatch(format!(
                "λ = {} vs {}",
                self.lambda, other.lambda
            )));
        }
        Self::new(self.exponent + other.exponent, self.lambda)
    }

    fn check(&self, lambda: f64, mean: f64) -> Result<()> {
        if (lambda - self.lambda).abs() > 1e-15 {
            return Err(Error::MultiplierMismatch(format!(
                "multiplier λ = {} applied to λ = {lambda}",
                self.lambda
            )));
        }
        if self.exponent < 0.0 && mean != 0.0 {
            return Err(Error::NonZeroMean(mean));
        }
        Ok(())
    }

    pub fn apply_zonal(&self, f: &ZonalCoeffs) -> Result<ZonalCoeffs> {
        self.check(f.lambda(), f.mean())?;
        let c = f
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, c)| c * self.factor(n))
            .collect();
        ZonalCoeffs::new(f.lambda(), c)
    }

    pub fn apply_sphere(&self, f: &SphereCoeffs) -> Result<SphereCoeffs> {
        self.check(f.lambda(), f.mean())?;
        let mut g = f.clone();
        for n in 0..=f.max_degree() {
            let s = self.factor(n);
            for c in g.degree_mut(n) {
                *c *= s;
            }
        }
        Ok(g)
    }
}

/// Enumerate the (k', j') pairs of degree-m harmonics in dimension d-1,
/// in the order used for the j index of dimension d.
fn harmonic_index(d_sub: usize, m: usize, j: usize) -> Option<(usize, usize)> {
    let mut rest = j;
    for k in 0..=m {
        let len = harmonic_dim_raw(m - k, d_sub - 1);
        if rest < len {
            return Some((k, rest));
        }
        rest -= len;
    }
    None
}

fn check_pointwise_dim(d: usize) -> Result<()> {
    if !(2..=4).contains(&d) {
        return Err(Error::DimensionUnsupported("pointwise evaluation", d));
    }
    Ok(())
}

/// P^n_{j,k}(x) at a unit vector x of R^d, d <= 4 (unnormalized).
pub fn eval_basis(n: usize, k: usize, j: usize, x: &[f64]) -> Result<f64> {
    let d = x.len();
    check_pointwise_dim(d)?;
    if k > n || j >= harmonic_dim_raw(n - k, d - 1) {
        return Err(Error::InvalidArgument(format!(
            "no basis element (n={n}, k={k}, j={j}) in d={d}"
        )));
    }
    Ok(eval_basis_unchecked(n, k, j, x))
}

fn eval_basis_unchecked(n: usize, k: usize, j: usize, x: &[f64]) -> f64 {
    let d = x.len();
    let lambda = sphere_lambda(d);
    let m = n - k;
    let x0 = x[0].clamp(-1.0, 1.0);
    let radial = gegenbauer::eval_unchecked(k, m as f64 + lambda, x0);
    if m == 0 {
        return radial;
    }
    if d == 2 {
        return radial * x[1];
    }
    let r = x[1..].iter().map(|v| v * v).sum::<f64>().sqrt();
    if r == 0.0 {
        return 0.0;
    }
    let xi: Vec<f64> = x[1..].iter().map(|v| v / r).collect();
    let (k2, j2) = harmonic_index(d - 1, m, j).expect("index checked by caller");
    let h = basis_norm(m, k2, sphere_lambda(d - 1)).expect("k2 <= m");
    radial * r.powi(m as i32) * eval_basis_unchecked(m, k2, j2, &xi) / h.sqrt()
}

/// Product Gauss rule on S^{d-1}, d <= 4, exact for polynomials of degree <= order.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereRule {
    pub dim: usize,
    pub points: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

pub fn sphere_quadrature(d: usize, order: usize) -> Result<SphereRule> {
    check_pointwise_dim(d)?;
    if d == 2 {
        let m = order + 1;
        let points = (0..m)
            .map(|i| {
                let phi = 2.0 * PI * (i as f64 + 0.5) / m as f64;
                vec![phi.cos(), phi.sin()]
            })
            .collect();
        return Ok(SphereRule {
            dim: 2,
            points,
            weights: vec![1.0 / m as f64; m],
        });
    }
    let sub = sphere_quadrature(d - 1, order)?;
    let g = gauss_rule(sphere_lambda(d), order / 2 + 1)?;
    let mut points = Vec::with_capacity(g.nodes.len() * sub.points.len());
    let mut weights = Vec::with_capacity(points.capacity());
    for (&t, &wt) in g.nodes.iter().zip(&g.weights) {
        let s = (1.0 - t * t).sqrt();
        for (xi, &wx) in sub.points.iter().zip(&sub.weights) {
            let mut p = Vec::with_capacity(d);
            p.push(t);
            p.extend(xi.iter().map(|v| s * v));
            points.push(p);
            weights.push(wt * wx);
        }
    }
    Ok(SphereRule {
        dim: d,
        points,
        weights,
    })
}

impl SphereRule {
    pub fn integrate<F: Fn(&[f64]) -> f64>(&self, f: F) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * f(p))
            .sum()
    }
}

impl SphereCoeffs {
    /// Evaluate Σ f̂ P/sqrt(H) at a unit vector, d <= 4.
    pub fn synthesize(&self, x: &[f64]) -> Result<f64> {
        check_pointwise_dim(self.dim)?;
        if x.len() != self.dim {
            return Err(Error::InvalidArgument("point dimension mismatch".into()));
        }
        let l = self.lambda();
        let mut sum = 0.0;
        for n in 0..=self.max_degree {
            for k in 0..=n {
                let h = basis_norm(n, k, l)?.sqrt();
                for (j, c) in self.block(n, k).iter().enumerate() {
                    if *c != 0.0 {
                        sum += c * eval_basis_unchecked(n, k, j, x) / h;
                    }
                }
            }
        }
        Ok(sum)
    }

    /// Project f onto degrees <= max_degree with a rule exact to 2 max_degree + 8.
    pub fn analyze<F: Fn(&[f64]) -> f64>(f: F, dim: usize, max_degree: usize) -> Result<Self> {
        let rule = sphere_quadrature(dim, 2 * max_degree + 8)?;
        let mut s = Self::zeros(dim, max_degree)?;
        let l = s.lambda();
        let values: Vec<f64> = rule.points.iter().map(|p| f(p)).collect();
        for n in 0..=max_degree {
            for k in 0..=n {
                let h = basis_norm(n, k, l)?.sqrt();
                let len = s.block(n, k).len();
                for j in 0..len {
                    let c: f64 = rule
                        .points
                        .iter()
                        .zip(&rule.weights)
                        .zip(&values)
                        .map(|((p, w), v)| w * v * eval_basis_unchecked(n, k, j, p))
                        .sum();
                    s.block_mut(n, k)[j] = c / h;
                }
            }
        }
        Ok(s)
    }
}
