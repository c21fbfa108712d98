//! Verification suites. Each check is a self-contained numeric experiment
//! with a pass flag, a short human-readable detail and an anchor naming the
//! statement it exercises. Random corpora are driven by a ChaCha8 stream
//! seeded from the caller, so repeated runs are identical.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Rational;
use serde::Serialize;

use crate::certify::{
    find_n_lambda, hardy_rellich_constant, rayleigh_certify, scan_lambda0, tau_min, HardyVerdict,
    Precision,
};
use crate::error::Result;
use crate::exact;
use crate::fourier::FourierCoeffs;
use crate::gegenbauer::{self, ZonalCoeffs};
use crate::lab::{
    b_lambda, bd_constant, erratum_counterexample, extremal_log_sums, extremal_ratio,
    functional_j_zonal, hardy_check, heat_limits, prop1_family, uncertainty_product_circle,
    uncertainty_product_with, uncertainty_product_zonal, SphereEvaluator,
};
use crate::quadrature::gauss_rule;
use crate::sequences::{
    alpha, beta, beta_inf, delta3_psi, f_poly, f_prefactor, gamma_nn,
};
use crate::special::gamma_ratio;
use crate::sphere::{sphere_quadrature, x1_bilinear_form, x1_form_zonal, SphereCoeffs};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub check: String,
    pub pass: bool,
    pub detail: String,
    pub anchor: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Constants,
    Sharpness,
    Uncertainty,
    Erratum,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Identities,
        Suite::Constants,
        Suite::Sharpness,
        Suite::Uncertainty,
        Suite::Erratum,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Constants => "constants",
            Suite::Sharpness => "sharpness",
            Suite::Uncertainty => "uncertainty",
            Suite::Erratum => "erratum",
        }
    }

    /// Parses a suite name; "all" yields every suite.
    pub fn parse(name: &str) -> Option<Vec<Suite>> {
        if name == "all" {
            return Some(Self::ALL.to_vec());
        }
        Self::ALL.iter().find(|s| s.name() == name).map(|&s| vec![s])
    }

    pub fn run(self, seed: u64) -> Vec<Check> {
        let mut out = Recorder::new(self.name());
        let res = match self {
            Suite::Identities => identities(&mut out, seed),
            Suite::Constants => constants(&mut out),
            Suite::Sharpness => sharpness(&mut out, seed),
            Suite::Uncertainty => uncertainty(&mut out, seed),
            Suite::Erratum => erratum(&mut out),
        };
        if let Err(e) = res {
            out.push("suite completed", false, format!("aborted: {e}"), "library error");
        }
        out.checks
    }
}

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: &'static str) -> Self {
        Self {
            suite,
            checks: vec![],
        }
    }

    fn push(&mut self, check: impl Into<String>, pass: bool, detail: String, anchor: &'static str) {
        self.checks.push(Check {
            suite: self.suite,
            check: check.into(),
            pass,
            detail,
            anchor,
        });
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn random_sphere(d: usize, deg: usize, rng: &mut ChaCha8Rng) -> Result<SphereCoeffs> {
    let mut s = SphereCoeffs::zeros(d, deg)?;
    for c in s.data_mut().iter_mut().skip(1) {
        *c = rng.gen_range(-1.0..1.0);
    }
    Ok(s)
}

fn random_zonal(lambda: f64, deg: usize, rng: &mut ChaCha8Rng) -> Result<ZonalCoeffs> {
    let mut c: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-1.0..1.0)).collect();
    c[0] = 0.0;
    ZonalCoeffs::new(lambda, c)
}

fn identities(out: &mut Recorder, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut worst = 0.0f64;
    for &l in &[0.1, 0.5, 1.0, 2.0, 3.7] {
        let rule = gauss_rule(l, 40)?;
        let vals: Vec<Vec<f64>> = rule
            .nodes
            .iter()
            .map(|&t| gegenbauer::orthonormal_values(30, l, t))
            .collect();
        for m in 0..=30 {
            for n in 0..=30 {
                let q: f64 = vals
                    .iter()
                    .zip(&rule.weights)
                    .map(|(v, w)| w * v[m] * v[n])
                    .sum();
                worst = worst.max((q - if m == n { 1.0 } else { 0.0 }).abs());
            }
        }
    }
    out.push(
        "Gegenbauer orthonormality, degrees <= 30",
        worst <= 1e-10,
        format!("max deviation {worst:.2e}"),
        "Gegenbauer orthogonality relation",
    );

    let mut worst = 0.0f64;
    for &l in &[0.25, 1.0, 2.5] {
        for i in 0..=20 {
            let t = -1.0 + 0.1 * i as f64;
            for n in 1..200 {
                let (a, b) = gegenbauer::three_term(n, l);
                let lhs = t * gegenbauer::eval(n, l, t)?;
                let rhs = a * gegenbauer::eval(n + 1, l, t)? + b * gegenbauer::eval(n - 1, l, t)?;
                worst = worst.max((lhs - rhs).abs() / lhs.abs().max(1.0));
            }
        }
    }
    out.push(
        "three-term relation, n < 200",
        worst <= 1e-12,
        format!("max scaled residual {worst:.2e}"),
        "three-term relation",
    );

    let mut worst = 0.0f64;
    for &l in &[0.0, 0.5, 1.0, 3.7] {
        let rule = gauss_rule(l, 12)?;
        for k in 0..=rule.exact_degree / 2 {
            // c_λ ∫ t^{2k} w_λ = (1/2)_k / (λ+1)_k
            let exact = gegenbauer_moment(k, l);
            let q = rule.integrate(|t| t.powi(2 * k as i32));
            worst = worst.max((q - exact).abs());
        }
    }
    out.push(
        "Gauss rule moments",
        worst <= 1e-12,
        format!("max moment error {worst:.2e}"),
        "normalized Gegenbauer weight",
    );

    let mut worst = 0.0f64;
    for &l in &[0.0, 0.5, 1.0, 2.0] {
        let c: Vec<f64> = (0..=12).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let f = ZonalCoeffs::new(l, c)?;
        let g = ZonalCoeffs::analyze(|t| f.synthesize_unchecked(t), l, 12)?;
        for (a, b) in f.coeffs().iter().zip(g.coeffs()) {
            worst = worst.max((a - b).abs());
        }
    }
    out.push(
        "analyze after synthesize is the identity",
        worst <= 1e-12,
        format!("max coefficient error {worst:.2e}"),
        "Gegenbauer expansion",
    );

    for d in [3usize, 4] {
        let deg = 6;
        let rule = sphere_quadrature(d, 2 * deg + 1)?;
        let mut worst_x1 = 0.0f64;
        let mut worst_parseval = 0.0f64;
        for _ in 0..100 {
            let f = random_sphere(d, deg, &mut rng)?;
            let g = random_sphere(d, deg, &mut rng)?;
            let fv: Vec<f64> = rule.points.iter().map(|p| f.synthesize(p)).collect::<Result<_>>()?;
            let gv: Vec<f64> = rule.points.iter().map(|p| g.synthesize(p)).collect::<Result<_>>()?;
            let mut q_x1 = 0.0;
            let mut q_l2 = 0.0;
            for (((p, w), a), b) in rule.points.iter().zip(&rule.weights).zip(&fv).zip(&gv) {
                q_x1 += w * p[0] * a * b;
                q_l2 += w * a * a;
            }
            let scale = f.norm_sq().sqrt() * g.norm_sq().sqrt();
            worst_x1 = worst_x1.max((x1_bilinear_form(&f, &g)? - q_x1).abs() / scale);
            worst_parseval = worst_parseval.max((f.norm_sq() - q_l2).abs() / f.norm_sq());
        }
        out.push(
            format!("x1 bilinear form, coefficients vs quadrature, d = {d}"),
            worst_x1 <= 1e-10,
            format!("100 zero-mean pairs, max relative error {worst_x1:.2e}"),
            "x1 identity on the sphere",
        );
        out.push(
            format!("Parseval, d = {d}"),
            worst_parseval <= 1e-10,
            format!("100 samples, max relative error {worst_parseval:.2e}"),
            "projection and Parseval",
        );
    }

    let mut worst = 0.0f64;
    for &l in &[0.0, 0.25, 0.5, 1.0, 2.5] {
        let rule = gauss_rule(l, 24)?;
        for _ in 0..20 {
            let f = random_zonal(l, 20, &mut rng)?;
            let g = random_zonal(l, 20, &mut rng)?;
            let q = rule.integrate(|t| t * f.synthesize_unchecked(t) * g.synthesize_unchecked(t));
            let scale = f.norm_sq().sqrt() * g.norm_sq().sqrt();
            worst = worst.max((x1_form_zonal(&f, &g)? - q).abs() / scale);
        }
    }
    out.push(
        "zonal x1 identity, 5 values of λ",
        worst <= 1e-10,
        format!("max relative error {worst:.2e}"),
        "zonal x1 identity",
    );

    let mut worst = 0.0f64;
    for _ in 0..20 {
        let m = 8;
        let mut f = FourierCoeffs::zeros(m);
        let mut g = FourierCoeffs::zeros(m);
        for n in -(m as i64)..=m as i64 {
            if n != 0 {
                f.set(n, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
                g.set(n, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            }
        }
        let pts = 64;
        let mut q = 0.0;
        for i in 0..pts {
            let th = 2.0 * PI * i as f64 / pts as f64;
            q += th.cos() * (f.eval(th) * g.eval(th).conj()).re / pts as f64;
        }
        worst = worst.max((f.x1_bilinear_form(&g)? - q).abs());
    }
    out.push(
        "circle x1 identity via Fourier coefficients",
        worst <= 1e-12,
        format!("max error {worst:.2e}"),
        "Fourier form of the x1 identity",
    );

    let mut worst = 0.0f64;
    for &l in &[0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0] {
        let mut prev = alpha(1, l)?;
        for n in 1..=10_000 {
            let next = alpha(n + 1, l)?;
            let g = gamma_nn(n, l);
            worst = worst.max(rel(prev * next, g));
            prev = next;
        }
    }
    let mut exact_ok = true;
    for li in 1..=3u32 {
        let lr = Rational::from(li);
        for n in 1..=60 {
            let prod = exact::alpha_sq(n, li) * exact::alpha_sq(n + 1, li);
            exact_ok &= prod == exact::gamma_nn_sq(n, &lr);
        }
    }
    out.push(
        "factorization γ_n^n = α_n α_{n+1}, n <= 10^4",
        worst <= 1e-12 && exact_ok,
        format!("max relative error {worst:.2e}; exact for λ = 1, 2, 3: {exact_ok}"),
        "α factorization of the coupling coefficients",
    );
    Ok(())
}

fn gegenbauer_moment(k: usize, lambda: f64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (0.5 + i as f64) / (lambda + 1.0 + i as f64))
}

/// (d-1)(1 - 7√π Γ(d/2) / (4d Γ((d-1)/2)))
pub fn tau_formula(d: usize) -> f64 {
    let df = d as f64;
    (df - 1.0) * (1.0 - 7.0 * PI.sqrt() * gamma_ratio(df / 2.0, (df - 1.0) / 2.0) / (4.0 * df))
}

/// Sample points x >= 3λ³ used for the sextic checks.
pub fn sextic_grid(lambda: f64) -> Vec<f64> {
    let x0 = 3.0 * lambda.powi(3);
    (0..60)
        .map(|i| x0 + 0.05 * i as f64 * (1.0 + x0) * (1.0 + 0.1 * i as f64))
        .filter(|&x| x > 0.0)
        .collect()
}

fn constants(out: &mut Recorder) -> Result<()> {
    let mut got = vec![];
    for (l, p) in [
        (0.5, Precision::BigFloat(256)),
        (1.0, Precision::Exact),
        (2.0 / 3.0, Precision::BigFloat(256)),
        (1.5, Precision::BigFloat(256)),
        (2.0, Precision::Exact),
    ] {
        got.push(find_n_lambda(l, p)?.n0);
    }
    out.push(
        "threshold indices n(λ)",
        got == [0, 0, 0, 0, 4],
        format!("n(1/2), n(1), n(2/3), n(3/2), n(2) = {got:?}"),
        "threshold index n(λ)",
    );

    let t6 = tau_min(2.0, Precision::Exact)?;
    let b23 = exact::beta(3, 2);
    let b24 = exact::beta(4, 2);
    let ok = t6.exact == Some(Rational::from((141, 128)))
        && b23 == Rational::from((28, 25))
        && b24 == Rational::from((163, 144));
    out.push(
        "exact β values at λ = 2",
        ok,
        format!(
            "τ_6 = {}, β_2(3) = {b23}, β_2(4) = {b24}",
            t6.exact.map_or("-".into(), |r| r.to_string())
        ),
        "minimal β for d = 6",
    );

    let mut worst = 0.0f64;
    let mut argmins = vec![];
    for d in 7..=10 {
        let t = tau_min((d as f64 - 2.0) / 2.0, Precision::Float64)?;
        worst = worst.max((t.value - tau_formula(d)).abs());
        argmins.push(t.argmin);
    }
    out.push(
        "τ_d = β_λ(1) for d = 7..10",
        worst <= 1e-12 && argmins.iter().all(|a| *a == Some(1)),
        format!("max error {worst:.2e}, argmins {argmins:?}"),
        "closed form of τ_d",
    );

    let grid: Vec<f64> = (0..14).map(|i| 1.1 + 0.1 * i as f64).collect();
    let l0 = scan_lambda0(&grid)?;
    out.push(
        "λ₀ boundary",
        (l0.estimate - 1.8258).abs() <= 1e-3 && l0.estimate >= 1.824 && l0.estimate <= 1.827,
        format!(
            "λ₀ = {:.6} (parity monotone); n(λ) = 0 boundary at {:.6}",
            l0.estimate, l0.n_lambda_zero_boundary
        ),
        "λ₀ remark",
    );

    let c4 = hardy_rellich_constant(1.0, Precision::Exact)?;
    let c6 = hardy_rellich_constant(2.0, Precision::Exact)?;
    let c3 = hardy_rellich_constant(0.5, Precision::Float64)?;
    let ok = matches!(c4.verdict, HardyVerdict::Finite { constant, n0: 0 } if constant == 8.0)
        && matches!(c6.verdict, HardyVerdict::Finite { constant, n0: 4 } if (constant - 8.0 / 9.0).abs() < 1e-15)
        && c3.verdict == HardyVerdict::NoFiniteConstant;
    out.push(
        "Hardy-Rellich constants for d = 3, 4, 6",
        ok,
        format!("d=4: {:?}; d=6: {:?}; d=3: {:?}", c4.verdict, c6.verdict, c3.verdict),
        "optimal constant 8/(d-3)²",
    );

    let mut ok = true;
    let mut detail = vec![];
    for &l in &[0.0, 0.25, 1.5, 2.0, 3.0] {
        let lim = beta_inf(l);
        let e: Vec<f64> = [100usize, 1000, 10_000]
            .iter()
            .map(|&n| Ok((beta(n, l)? - lim).abs()))
            .collect::<Result<_>>()?;
        // n·|β(n) - β_∞| stays bounded; λ = 0 is exactly constant
        ok &= e[1] <= e[0] && e[2] <= e[1] && e[2] * 10_000.0 <= e[0] * 100.0 * 1.5;
        detail.push(format!("λ={l}: {:.1e}", e[2]));
    }
    out.push(
        "β_λ(n) → (2λ-1)²/8 at rate 1/n",
        ok,
        format!("|β(10^4) - β_∞|: {}", detail.join(", ")),
        "limit of β",
    );

    let mut ok = true;
    let mut worst = f64::NEG_INFINITY;
    for l in [0.6f64, 1.0, 2.0, 3.0] {
        let start = (3.0 * l.powi(3)).ceil() as usize;
        for n in start.max(1)..start + 400 {
            let d = beta(n + 2, l)? - beta(n, l)?;
            worst = worst.max(d / beta(n, l)?.abs().max(1e-300));
            ok &= d <= 1e-14 * beta(n, l)?.abs();
        }
    }
    out.push(
        "β tail decreasing along both parities beyond 3λ³",
        ok,
        format!("max relative step {worst:.2e}"),
        "tail monotonicity of β",
    );

    let mut bad = vec![];
    for &l in &[0.6, 1.0, 2.0, 3.0] {
        for x in sextic_grid(l) {
            if f_poly(x, l) >= 0.0 {
                bad.push((l, x));
            }
        }
    }
    out.push(
        "sextic F_λ(x) < 0 for x >= 3λ³",
        bad.is_empty(),
        match bad.first() {
            None => "all samples negative".into(),
            Some((l, x)) => format!(
                "{} non-negative samples, first at λ = {l}, x = {x:.4} (F = {:.4e})",
                bad.len(),
                f_poly(*x, *l)
            ),
        },
        "sextic sign bound",
    );

    let mut worst = 0.0f64;
    for &l in &[0.6, 1.0, 2.0, 3.0] {
        for x in [1.0, 2.5, 5.0, 10.0, 40.0] {
            let lhs = delta3_psi(x, l)?;
            let rhs = f_prefactor(x, l) * f_poly(x, l);
            worst = worst.max(rel(rhs, lhs));
        }
    }
    out.push(
        "Δ³Ψ_λ equals the prefactor times F_λ",
        worst <= 1e-8,
        format!("max relative mismatch {worst:.3e}"),
        "third difference of Ψ",
    );
    Ok(())
}

fn sharpness(out: &mut Recorder, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let sizes = [64usize, 256, 1024, 4096];

    for &l in &[0.0, 1.0] {
        let r = rayleigh_certify(l, 0, &sizes)?;
        let c = r.rows.last().map_or(f64::NAN, |r| r.constant);
        let rising = r.rows.windows(2).all(|w| w[1].constant >= w[0].constant);
        out.push(
            format!("C(N) → 8 at λ = {l}"),
            rising && rel(c, 8.0) <= 0.05 && r.bound_ok == Some(true),
            format!(
                "C(N) = {}",
                r.rows.iter().map(|r| format!("{:.4}", r.constant)).collect::<Vec<_>>().join(", ")
            ),
            "optimal constant 8/(2λ-1)²",
        );
    }

    let r = rayleigh_certify(0.5, 0, &[256, 1024, 4096])?;
    let growth = r.rows[2].constant / r.rows[0].constant;
    out.push(
        "C(N) diverges at λ = 1/2",
        growth >= 1.2 && r.log_fit.1 > 0.0 && r.monotone,
        format!("C(4096)/C(256) = {growth:.4}, slope in ln N = {:.4}", r.log_fit.1),
        "failure in dimension three",
    );

    let mut worst = f64::INFINITY;
    for &l in &[0.0, 1.0, 1.5, 2.0] {
        let n0 = find_n_lambda(l, Precision::Float64)?.n0;
        let r = rayleigh_certify(l, n0, &sizes)?;
        for row in &r.rows {
            worst = worst.min(row.mu - r.beta_inf);
        }
    }
    out.push(
        "μ_N >= β_∞ with n₀ = n(λ)",
        worst >= -1e-10,
        format!("min μ_N - β_∞ = {worst:.3e}"),
        "sufficiency of the Hardy-Rellich bound",
    );

    let r1 = extremal_ratio(0.5, 1, 64)?;
    let r4 = extremal_ratio(0.5, 1, 256)?;
    out.push(
        "extremal ratio grows at λ = 1/2",
        r4 > r1,
        format!("ratio(64) = {r1:.4}, ratio(256) = {r4:.4}"),
        "extremal family",
    );

    let ratios: Vec<f64> = (6..=12)
        .map(|p| extremal_ratio(0.0, 1, 1 << p))
        .collect::<Result<_>>()?;
    let rising = ratios.windows(2).all(|w| w[1] > w[0]);
    let last = *ratios.last().unwrap_or(&f64::NAN);
    out.push(
        "circle extremal ratio reaches 7.5 at N = 2^12",
        rising && last >= 7.5 && last < 8.0,
        format!("ratios for N = 2^6..2^12: {}", fmt_list(&ratios)),
        "sharpness of 1/8 on the circle",
    );

    // both sums are ln N / 4 + O(1)
    let mut ok = true;
    let mut detail = vec![];
    let mut offsets = vec![];
    for p in [8u32, 10, 12] {
        let n = 1usize << p;
        let (h, d) = extremal_log_sums(1, n)?;
        let q = 0.25 * (n as f64).ln();
        ok &= (h - q - 0.25 * 0.5772156649015329).abs() < 1e-3;
        offsets.push(d - q);
        detail.push(format!("N=2^{p}: Σ1/(4n) - ln N/4 = {:.5}, Σ(Δĝ)² - ln N/4 = {:.5}", h - q, d - q));
    }
    ok &= (offsets[2] - offsets[1]).abs() < (offsets[1] - offsets[0]).abs() && (offsets[2] - offsets[1]).abs() < 0.01;
    out.push(
        "extremal log sums",
        ok,
        detail.join("; "),
        "extremal family asymptotics",
    );

    let unit = hardy_check(&[1.0]);
    let inv: Vec<f64> = (1..=10_000).map(|n| 1.0 / n as f64).collect();
    let h = hardy_check(&inv);
    let mut all = unit.holds() && h.holds() && (unit.lemma - 0.875).abs() < 1e-15;
    let mut worst = f64::INFINITY;
    for _ in 0..100_000 {
        let len = rng.gen_range(1..24);
        let a: Vec<f64> = (0..len).map(|_| rng.gen_range(-1e3..1e3)).collect();
        let m = hardy_check(&a);
        all &= m.holds();
        worst = worst.min(m.lemma.min(m.classical) / m.norm_sq);
    }
    out.push(
        "discrete Hardy lemma margins",
        all,
        format!("unit margin {:.4}, 1/n margin {:.4e}, min scaled random margin {worst:.3e}", unit.lemma, h.lemma),
        "discrete Hardy lemma",
    );

    let mut worst = f64::INFINITY;
    for &l in &[0.0, 1.0] {
        for _ in 0..1000 {
            let deg = rng.gen_range(1..24);
            let f = random_zonal(l, deg, &mut rng)?;
            if f.norm_sq() == 0.0 {
                continue;
            }
            let j = functional_j_zonal(&f)?;
            worst = worst.min((8.0 * j - f.norm_sq()) / f.norm_sq());
        }
    }
    out.push(
        "‖f‖² <= 8 J_λ(f) on random zero-mean f, λ = 0, 1",
        worst >= -1e-12,
        format!("min scaled margin {worst:.3e}"),
        "zonal Hardy-Rellich inequality",
    );
    Ok(())
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(", ")
}

fn uncertainty(out: &mut Recorder, seed: u64) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));

    for d in [3usize, 4] {
        let ev = SphereEvaluator::new(d, 4)?;
        let b = bd_constant(d)?;
        let mut viol_b = 0;
        let mut viol_w = 0;
        let mut min_p = f64::INFINITY;
        for _ in 0..1000 {
            let deg = rng.gen_range(1..=4);
            let mut f = SphereCoeffs::zeros(d, 4)?;
            for n in 1..=deg {
                for c in f.degree_mut(n) {
                    *c = rng.gen_range(-1.0..1.0);
                }
            }
            let u = uncertainty_product_with(&ev, &f)?;
            min_p = min_p.min(u.product);
            viol_b += usize::from(u.product < b.value - 1e-10);
            viol_w += usize::from(u.weak_lhs < u.weak_rhs - 1e-10);
        }
        out.push(
            format!("uncertainty product >= B_d, d = {d}"),
            viol_b == 0,
            format!("1000 samples, {viol_b} violations, min product {min_p:.4}, B_d = {:.6}", b.value),
            "uncertainty constant B_d",
        );
        out.push(
            format!("(1-‖τ‖²)‖∇f‖² >= ((d-1)/2)²‖τ‖², d = {d}"),
            viol_w == 0,
            format!("1000 samples, {viol_w} violations"),
            "weak uncertainty inequality",
        );
    }

    let b3 = bd_constant(3)?.value;
    let mut worst_t: f64 = 0.0;
    for d in 3..=50 {
        let b = bd_constant(d)?;
        let df = d as f64;
        let t = b.t_star;
        worst_t = worst_t.max(((df - 1.0) / 4.0 * (1.0 - t).powi(2) / (2.0 - t) - t).abs());
        worst_t = worst_t.max((b.value - (df - 1.0) * t).abs());
    }
    let ordered = [2usize, 4, 5].iter().all(|&d| {
        bd_constant(d).map_or(false, |b| b.lower <= b.value && b.value <= b.upper)
    });
    out.push(
        "B_d closed form, fixed point and bounds",
        (b3 - (2.0 - 2.0 * 6f64.sqrt() / 3.0)).abs() <= 1e-12 && worst_t <= 1e-12 && ordered,
        format!("B_3 = {b3:.15}, fixed-point residual {worst_t:.2e}, bounds ordered {ordered}"),
        "uncertainty constant B_d",
    );

    let mut worst = 0.0f64;
    for &l in &[0.5, 1.0] {
        let d = (2.0 * l + 2.0) as usize;
        let rule = sphere_quadrature(d, 15)?;
        for _ in 0..20 {
            let c: Vec<f64> = (0..=6).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let f = ZonalCoeffs::new(l, c)?;
            let z = uncertainty_product_zonal(&f)?;
            let n2 = f.norm_sq();
            let s = SphereCoeffs::from_zonal(d, &f)?;
            let vals: Vec<f64> = rule.points.iter().map(|p| s.synthesize(p)).collect::<Result<_>>()?;
            let loc = |sign: f64| -> f64 {
                rule.points
                    .iter()
                    .zip(&rule.weights)
                    .zip(&vals)
                    .map(|((p, w), v)| w * (1.0 - sign * p[0]) * v * v)
                    .sum::<f64>()
                    / n2
            };
            let min_pole = loc(1.0).min(loc(-1.0));
            worst = worst.max((min_pole - z.localization).abs());
        }
    }
    out.push(
        "1 - ‖τ‖ equals the minimal pole localization",
        worst <= 1e-10,
        format!("max error {worst:.2e}"),
        "equivalent form of the localization",
    );

    let mut min_p = f64::INFINITY;
    for _ in 0..1000 {
        let m = rng.gen_range(1..12);
        let mut f = FourierCoeffs::zeros(m);
        for n in 1..=m as i64 {
            f.set(n, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            f.set(-n, Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        }
        min_p = min_p.min(uncertainty_product_circle(&f)?.product);
    }
    out.push(
        "circle uncertainty product >= 1/8",
        min_p >= 0.125 - 1e-12,
        format!("1000 zero-mean samples, min product {min_p:.5}"),
        "uncertainty constant on the circle",
    );

    let ts = [1e-1, 1e-2, 1e-3, 1e-4];
    for &l in &[0.5, 1.0, 2.0] {
        let h = heat_limits(l, &ts)?;
        let last = h.rows.last().expect("non-empty t list");
        let ok = rel(last.localization_scaled, h.limit_localization) <= 0.02
            && rel(last.gradient_scaled, h.limit_gradient) <= 0.02
            && rel(last.product, h.limit_product) <= 0.02;
        out.push(
            format!("heat kernel limits, λ = {l}"),
            ok,
            format!(
                "t = 1e-4: loc/(2t) = {:.5} (→ {:.4}), 2t·grad = {:.5} (→ {:.4}), product = {:.5} (→ {:.4})",
                last.localization_scaled,
                h.limit_localization,
                last.gradient_scaled,
                h.limit_gradient,
                last.product,
                h.limit_product
            ),
            "heat kernel optimality",
        );
        let bl = b_lambda(l)?;
        let above = h.rows.iter().all(|r| r.product >= bl - 1e-10);
        let toward = h
            .rows
            .windows(2)
            .all(|w| (w[1].product - h.limit_product).abs() <= (w[0].product - h.limit_product).abs() + 1e-10);
        out.push(
            format!("heat product approaches its limit and stays above B_λ, λ = {l}"),
            above && toward,
            format!("products {}, B_λ = {bl:.5}", fmt_list(&h.rows.iter().map(|r| r.product).collect::<Vec<_>>())),
            "heat kernel optimality",
        );
    }
    Ok(())
}

fn erratum(out: &mut Recorder) -> Result<()> {
    let fam = prop1_family(&Rational::from((1, 2)), 4, 2)?;
    out.push(
        "τ(f) = 0 for C_4 + x₁² at λ = 1/2",
        fam.first_moment == 0,
        format!("first moment = {} (exact), ‖f‖² = {}", fam.first_moment, fam.norm_sq),
        "vanishing first moment family",
    );
    let mut all_zero = true;
    for (num, den) in [(1, 2), (1, 1), (3, 2), (2, 1)] {
        let l = Rational::from((num, den));
        for n in 2..=8 {
            for k in (0..=n - 2).step_by(2) {
                all_zero &= prop1_family(&l, n, k)?.first_moment == 0;
            }
        }
    }
    out.push(
        "τ(f) = 0 across the even family, k <= n - 2",
        all_zero,
        format!("λ ∈ {{1/2, 1, 3/2, 2}}, n <= 8: all zero = {all_zero}"),
        "vanishing first moment family",
    );
    // τ = 0 collapses the weak inequality to a trivial statement
    let grad = fam.grad_sq.to_f64() / fam.norm_sq.to_f64();
    out.push(
        "weak inequality is trivial on the vanishing family",
        fam.first_moment == 0 && grad > 0.0,
        format!("right side 0, left side ‖∇f‖²/‖f‖² = {grad:.6}"),
        "weak uncertainty inequality",
    );

    let rows = erratum_counterexample(&[0.1, 1e-2, 1e-3])?;
    let r01 = &rows[0];
    let e: f64 = 0.1;
    let tau_cf = e / (1.0 + e * e / 2.0);
    let grad_cf = (e * e / 2.0) / (1.0 + e * e / 2.0);
    out.push(
        "circle counterexample closed forms at ε = 0.1",
        r01.tau[0].abs() < 1e-15 && rel(r01.tau[1], tau_cf) < 1e-13 && rel(r01.grad_sq, grad_cf) < 1e-13,
        format!("τ = ({:.3e}, {:.12}), ‖∇f‖² = {:.12}", r01.tau[0], r01.tau[1], r01.grad_sq),
        "circle counterexample",
    );
    let r3 = &rows[2];
    out.push(
        "R(ε)/ε → 1/2 and R(10^-3) < 10^-2",
        (r3.ratio_over_eps - 0.5).abs() <= 0.025 && r3.ratio < 1e-2,
        format!(
            "R/ε = {}",
            rows.iter().map(|r| format!("{:.6} at ε={:e}", r.ratio_over_eps, r.eps)).collect::<Vec<_>>().join(", ")
        ),
        "withdrawn uncertainty bound",
    );
    Ok(())
}
