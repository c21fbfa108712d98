//! Threshold indices, minimal constants and truncated Rayleigh-quotient
//! certification of the Hardy-Rellich constant.

use rug::Rational;

use crate::eigen::SymTridiagonal;
use crate::error::{check_lambda, Error, Result};
use crate::exact;
use crate::sequences::{beta_inf, beta_unchecked, gamma_nn};

/// Arithmetic used for the sequence scans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precision {
    Float64,
    /// MPFR with the given number of bits
    BigFloat(u32),
    /// exact rationals; requires a non-negative integer λ
    Exact,
}

/// β_λ(1..=n_max) with β_∞ in a common representation.
enum BetaScan {
    Float(Vec<f64>, f64),
    Exact(Vec<Rational>, Rational),
}

impl BetaScan {
    fn new(lambda: f64, n_max: usize, precision: Precision) -> Result<Self> {
        match precision {
            Precision::Float64 => Ok(BetaScan::Float(
                (1..=n_max).map(|n| beta_unchecked(n, lambda)).collect(),
                beta_inf(lambda),
            )),
            Precision::BigFloat(bits) => Ok(BetaScan::Float(
                (1..=n_max)
                    .map(|n| crate::bigfloat::beta(n, lambda, bits).to_f64())
                    .collect(),
                beta_inf(lambda),
            )),
            Precision::Exact => {
                let li = exact::integer_lambda(lambda)
                    .ok_or(Error::ExactUnavailable("a non-negative integer λ"))?;
                Ok(BetaScan::Exact(
                    (1..=n_max).map(|n| exact::beta(n, li)).collect(),
                    exact::beta_inf(li),
                ))
            }
        }
    }

    fn len(&self) -> usize {
        match self {
            BetaScan::Float(v, _) => v.len(),
            BetaScan::Exact(v, _) => v.len(),
        }
    }

    /// β(n) >= β_∞, n 1-based
    fn above_limit(&self, n: usize) -> bool {
        match self {
            BetaScan::Float(v, lim) => v[n - 1] >= lim - 1e-12 * lim.max(1.0),
            BetaScan::Exact(v, lim) => v[n - 1] >= *lim,
        }
    }

    /// β(n+2) <= β(n)
    fn step_down(&self, n: usize) -> bool {
        match self {
            BetaScan::Float(v, _) => v[n + 1] <= v[n - 1] + 1e-14 * v[n - 1].abs().max(1.0),
            BetaScan::Exact(v, _) => v[n + 1] <= v[n - 1],
        }
    }

    fn value(&self, n: usize) -> f64 {
        match self {
            BetaScan::Float(v, _) => v[n - 1],
            BetaScan::Exact(v, _) => v[n - 1].to_f64(),
        }
    }

    fn exact_value(&self, n: usize) -> Option<Rational> {
        match self {
            BetaScan::Exact(v, _) => Some(v[n - 1].clone()),
            BetaScan::Float(..) => None,
        }
    }
}

/// Last index that must be scanned before the monotone tail takes over.
/// The tail is provably monotone for n >= 6λ³; the scan runs past that.
pub fn scan_limit(lambda: f64) -> usize {
    let cube = if lambda > 0.0 { 6.0 * lambda.powi(3) } else { 0.0 };
    (cube.ceil() as usize + 8).max(16)
}

#[derive(Debug, Clone, PartialEq)]
pub struct NLambda {
    pub lambda: f64,
    /// smallest n₀ >= 0 with β_λ(n) >= β_∞ for every n >= max(n₀, 1)
    pub n0: usize,
    pub scanned_to: usize,
    pub precision: Precision,
}

fn certify_tail(scan: &BetaScan) -> Result<()> {
    let n_max = scan.len();
    for n in (n_max - 9)..=(n_max - 2) {
        if !scan.step_down(n) || !scan.above_limit(n) {
            return Err(Error::TailNotCertified(n_max));
        }
    }
    Ok(())
}

pub fn find_n_lambda(lambda: f64, precision: Precision) -> Result<NLambda> {
    check_lambda(lambda)?;
    let n_max = scan_limit(lambda);
    let scan = BetaScan::new(lambda, n_max, precision)?;
    certify_tail(&scan)?;
    let n0 = (1..=n_max)
        .rev()
        .find(|&n| !scan.above_limit(n))
        .map_or(0, |n| n + 1);
    Ok(NLambda {
        lambda,
        n0,
        scanned_to: n_max,
        precision,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct TauMin {
    pub lambda: f64,
    pub value: f64,
    pub exact: Option<Rational>,
    /// index attaining the infimum; None when it is the limit β_∞
    pub argmin: Option<usize>,
}

/// inf_{n>=1} β_λ(n).
pub fn tau_min(lambda: f64, precision: Precision) -> Result<TauMin> {
    check_lambda(lambda)?;
    let n_max = scan_limit(lambda);
    let scan = BetaScan::new(lambda, n_max, precision)?;
    certify_tail(&scan)?;
    let mut best = 1;
    for n in 2..=n_max {
        if scan.value(n) < scan.value(best) {
            best = n;
        }
    }
    if scan.above_limit(best) {
        let exact = match &scan {
            BetaScan::Exact(_, lim) => Some(lim.clone()),
            BetaScan::Float(..) => None,
        };
        return Ok(TauMin {
            lambda,
            value: beta_inf(lambda),
            exact,
            argmin: None,
        });
    }
    Ok(TauMin {
        lambda,
        value: scan.value(best),
        exact: scan.exact_value(best),
        argmin: Some(best),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HardyVerdict {
    /// C_λ = 8/(2λ-1)² is the optimal constant on the class f̂_n = 0, n <= n₀
    Finite { constant: f64, n0: usize },
    /// λ = 1/2: no finite constant on any class
    NoFiniteConstant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardyConstant {
    pub lambda: f64,
    pub verdict: HardyVerdict,
    /// 1/τ on the zero-mean class, when τ > 0
    pub zero_mean_constant: Option<f64>,
    pub tau: TauMin,
}

pub fn hardy_rellich_constant(lambda: f64, precision: Precision) -> Result<HardyConstant> {
    check_lambda(lambda)?;
    let tau = tau_min(lambda, precision)?;
    let verdict = if lambda == 0.5 {
        HardyVerdict::NoFiniteConstant
    } else {
        HardyVerdict::Finite {
            constant: 8.0 / (2.0 * lambda - 1.0).powi(2),
            n0: find_n_lambda(lambda, precision)?.n0,
        }
    };
    let zero_mean_constant = (tau.value > 0.0).then(|| 1.0 / tau.value);
    Ok(HardyConstant {
        lambda,
        verdict,
        zero_mean_constant,
        tau,
    })
}

/// C_λ as an exact rational for integer λ.
pub fn hardy_constant_exact(lambda: u32) -> Rational {
    Rational::from(1) / exact::beta_inf(lambda)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lambda0 {
    /// boundary of monotone decrease of both parity subsequences of β_λ
    pub estimate: f64,
    pub bracket: (f64, f64),
    /// boundary of n(λ) = 0 (every β_λ(n) above its limit)
    pub n_lambda_zero_boundary: f64,
}

fn parity_monotone(lambda: f64) -> bool {
    let n_max = scan_limit(lambda).max(64);
    let b: Vec<f64> = (1..=n_max + 2).map(|n| beta_unchecked(n, lambda)).collect();
    (0..n_max).all(|i| b[i + 2] <= b[i])
}

fn all_above_limit(lambda: f64) -> bool {
    let lim = beta_inf(lambda);
    (1..=scan_limit(lambda).max(64)).all(|n| beta_unchecked(n, lambda) >= lim)
}

fn boundary(grid: &[f64], pred: impl Fn(f64) -> bool) -> Result<(f64, (f64, f64))> {
    let flags: Vec<bool> = grid.iter().map(|&l| pred(l)).collect();
    let first_false = flags.iter().position(|f| !f).ok_or(Error::BracketFailure)?;
    if first_false == 0 || flags[first_false..].iter().any(|&f| f) {
        return Err(Error::BracketFailure);
    }
    let bracket = (grid[first_false - 1], grid[first_false]);
    let (mut lo, mut hi) = bracket;
    while hi - lo > 1e-8 {
        let mid = 0.5 * (lo + hi);
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((0.5 * (lo + hi), bracket))
}

/// Locate λ₀, the largest λ for which β_λ decreases along both parities.
pub fn scan_lambda0(grid: &[f64]) -> Result<Lambda0> {
    if grid.len() < 2 || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("grid must be increasing".into()));
    }
    for &l in grid {
        check_lambda(l)?;
    }
    let (estimate, bracket) = boundary(grid, parity_monotone)?;
    let (n_lambda_zero_boundary, _) = boundary(grid, all_above_limit)?;
    Ok(Lambda0 {
        estimate,
        bracket,
        n_lambda_zero_boundary,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificateRow {
    pub size: usize,
    pub mu: f64,
    pub constant: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CertificateVerdict {
    /// μ_N decreases towards β_∞ = 1/C_λ
    Converging { limit_constant: f64 },
    /// λ = 1/2: μ_N → 0
    Diverging,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificateReport {
    pub lambda: f64,
    pub n0: usize,
    pub n_lambda: usize,
    pub beta_inf: f64,
    pub rows: Vec<CertificateRow>,
    pub monotone: bool,
    /// μ_N >= β_∞ for every N; None when n₀ < n(λ) (no bound claimed)
    pub bound_ok: Option<bool>,
    /// least-squares (intercept, slope) of C(N) against ln N
    pub log_fit: (f64, f64),
    pub verdict: CertificateVerdict,
}

impl CertificateReport {
    /// μ_N must not increase with N, and must stay above β_∞ once n₀ >= n(λ).
    pub fn violated(&self) -> bool {
        !self.monotone || self.bound_ok == Some(false)
    }
}

/// Smallest generalized eigenvalue of (A, B) over indices n₀ < n <= N, where
/// A is tridiagonal with unit diagonal and off-diagonal -γ_n^n/2, and
/// B = diag(1/(n(n+2λ))). Solved through the congruence B^{-1/2} A B^{-1/2}.
pub fn rayleigh_mu(lambda: f64, n0: usize, size: usize) -> Result<f64> {
    check_lambda(lambda)?;
    let first = n0 + 1;
    if size < first {
        return Err(Error::TruncationTooSmall {
            size,
            reason: format!("need N >= n0 + 1 = {}", first),
        });
    }
    let w: Vec<f64> = (first..=size)
        .map(|n| n as f64 * (n as f64 + 2.0 * lambda))
        .collect();
    let off: Vec<f64> = (first..size)
        .zip(w.windows(2))
        .map(|(n, ww)| -0.5 * gamma_nn(n, lambda) * (ww[0] * ww[1]).sqrt())
        .collect();
    let t = SymTridiagonal::new(w, off)?;
    t.smallest_eigenvalue(1e-13)
}

pub fn rayleigh_certify(lambda: f64, n0: usize, sizes: &[usize]) -> Result<CertificateReport> {
    check_lambda(lambda)?;
    let n_lambda = find_n_lambda(lambda, Precision::Float64)?.n0;
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let rows = sizes
        .iter()
        .map(|&size| {
            let mu = rayleigh_mu(lambda, n0, size)?;
            Ok(CertificateRow {
                size,
                mu,
                constant: 1.0 / mu,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let lim = beta_inf(lambda);
    let monotone = rows.windows(2).all(|w| w[1].mu <= w[0].mu + 1e-12);
    let bound_ok = (n0 >= n_lambda).then(|| rows.iter().all(|r| r.mu >= lim - 1e-10));
    let log_fit = linear_fit(
        &rows.iter().map(|r| (r.size as f64).ln()).collect::<Vec<_>>(),
        &rows.iter().map(|r| r.constant).collect::<Vec<_>>(),
    );
    let verdict = if lambda == 0.5 {
        CertificateVerdict::Diverging
    } else {
        CertificateVerdict::Converging {
            limit_constant: 1.0 / lim,
        }
    };
    Ok(CertificateReport {
        lambda,
        n0,
        n_lambda,
        beta_inf: lim,
        rows,
        monotone,
        bound_ok,
        log_fit,
        verdict,
    })
}

fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    if x.len() < 2 {
        return (y.first().copied().unwrap_or(f64::NAN), 0.0);
    }
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (my - slope * mx, slope)
}
