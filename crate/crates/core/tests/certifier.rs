use hardy_sphere::certify::{
    find_n_lambda, hardy_constant_exact, hardy_rellich_constant, rayleigh_certify, rayleigh_mu,
    scan_lambda0, tau_min, CertificateVerdict, HardyVerdict, Precision,
};
use hardy_sphere::exact;
use hardy_sphere::sequences::{
    alpha, alpha_sq, beta, beta_inf, delta3_psi, gamma_lower, gamma_lower_bound, gamma_nn, phi, psi,
    x_n, SequenceTable,
};
use hardy_sphere::Error;
use nalgebra::DMatrix;
use rug::Rational;

#[test]
fn alpha_examples() {
    for n in 1..500 {
        assert!((alpha(n, 1.0).unwrap() - 1.0).abs() < 1e-15);
    }
    assert_eq!(exact::alpha_sq(1, 2), Rational::from((8, 9)));
    assert!((alpha_sq(1, 2.0).unwrap() - 8.0 / 9.0).abs() < 1e-15);
    assert!(alpha(0, 2.0).is_err());
    // log-space evaluation stays finite far out
    assert!((alpha_sq(10_000_000, 2.5).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn phi_and_psi_examples() {
    for x in [0.3, 1.0, 7.5, 250.0, 1e5] {
        assert!((phi(x, 1.0).unwrap() - 1.0).abs() < 1e-15);
    }
    for &l in &[0.3, 2.0, 3.7] {
        for x in [0.5, 2.0, 17.25, 300.0] {
            let r = phi(x + 1.0, l).unwrap() / phi(x, l).unwrap();
            let e = 1.0 + l * (l - 1.0) / ((x + l) * (2.0 * x + 1.0) * (2.0 * x + l + 2.0));
            assert!((r - e).abs() < 1e-14);
        }
    }
    assert!((4.0 * psi(1.0, 2.0).unwrap() - 141.0 / 128.0).abs() < 1e-14);
    assert_eq!(exact::psi_half(2, 2) * 4u32, Rational::from((141, 128)));
    // integer and half-integer arguments hit α² and β
    for n in 1..40 {
        let x = 0.5 * n as f64;
        assert!((phi(x, 2.5).unwrap() - alpha_sq(n, 2.5).unwrap()).abs() < 1e-15);
        assert!((4.0 * psi(x, 2.5).unwrap() - beta(n, 2.5).unwrap()).abs() < 1e-11);
    }
}

#[test]
fn phi_second_order_coefficient() {
    // x²(Φ_λ(x) - 1) → (λ - λ²)/8
    for &l in &[0.25, 0.5, 2.0, 3.0] {
        let c = (l - l * l) / 8.0;
        let err = |x: f64| (x * x * (phi(x, l).unwrap() - 1.0) - c).abs();
        let (e3, e4) = (err(1e3), err(1e4));
        assert!(e4 < 1e-3 && e4 < e3 / 5.0, "λ={l}: {e3:e} {e4:e}");
    }
}

#[test]
fn beta_examples() {
    for n in 1..200usize {
        let e = (n as f64 + 2.0) / (8.0 * n as f64);
        assert!((beta(n, 1.0).unwrap() - e).abs() < 1e-14);
        assert_eq!(exact::beta(n, 1), Rational::from((n as i64 + 2, 8 * n as i64)));
    }
    assert_eq!(exact::beta(1, 1), Rational::from((3, 8)));
    assert_eq!(exact::beta(2, 2), Rational::from((141, 128)));
    assert_eq!(exact::beta(3, 2), Rational::from((28, 25)));
    assert_eq!(exact::beta(4, 2), Rational::from((163, 144)));
    assert!(exact::beta(3, 2) < exact::beta_inf(2) && exact::beta_inf(2) < exact::beta(4, 2));
    assert_eq!(beta_inf(2.0), 9.0 / 8.0);
}

#[test]
fn gamma_lower_examples() {
    for n in 1..50 {
        assert_eq!(gamma_lower(n, 1.0), 0.0);
    }
    assert!((x_n(1, 2.0) - 5.0 / 6.0).abs() < 1e-15);
    for &l in &[0.3, 2.0, 4.0] {
        for n in 1..100 {
            let x = 1.0 - l * (l - 1.0) / ((n as f64 + l) * (n as f64 + l + 1.0));
            assert!((x_n(n, l) - x).abs() < 1e-15);
            assert!((gamma_nn(n, l).powi(2) - x).abs() < 1e-14);
        }
    }
    // positive for λ(λ-1) > 0 and bounded below by the constant from x₁
    let l = 3.0;
    let b = gamma_lower_bound(l);
    for n in 1..200 {
        assert!(gamma_lower(n, l) >= b - 1e-12);
    }
}

#[test]
fn third_difference_at_lambda_one() {
    // Ψ_1(x) = (x+1)/(32x), so Δ³Ψ_1(x) = -6/(32 x(x+1)(x+2)(x+3))
    for x in [0.5, 1.0, 3.25, 20.0] {
        let e = -6.0 / (32.0 * x * (x + 1.0) * (x + 2.0) * (x + 3.0));
        assert!((delta3_psi(x, 1.0).unwrap() / e - 1.0).abs() < 1e-12);
    }
}

#[test]
fn sequence_table_invariants() {
    for &l in &[0.0, 0.25, 1.0, 2.0, 3.0] {
        let t = SequenceTable::build(l, 400, false).unwrap();
        for w in t.rows.windows(2) {
            let p = w[0].alpha_sq.sqrt() * w[1].alpha_sq.sqrt();
            assert!((p - w[0].gamma_nn).abs() <= 1e-12 * w[0].gamma_nn);
        }
        let last = t.rows.last().unwrap();
        assert!((last.beta - beta_inf(l)).abs() < 1e-2);
    }
    let t = SequenceTable::build(2.0, 10, true).unwrap();
    assert_eq!(t.rows[1].exact.as_ref().unwrap().1, Rational::from((141, 128)));
    assert!(matches!(SequenceTable::build(0.5, 10, true), Err(Error::ExactUnavailable(_))));
}

#[test]
fn alpha_parity_monotonicity() {
    for &l in &[-0.3, 0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0] {
        let a: Vec<f64> = (1..=2002).map(|n| alpha_sq(n, l).unwrap()).collect();
        for i in 0..2000 {
            if (0.0..=1.0).contains(&l) {
                assert!(a[i + 2] <= a[i] + 1e-15, "λ={l} n={}", i + 1);
            } else {
                assert!(a[i + 2] >= a[i] - 1e-15, "λ={l} n={}", i + 1);
            }
        }
    }
}

#[test]
fn beta_limit_rate() {
    for &l in &[0.25, 0.5, 1.5, 2.0, 3.0] {
        let lim = beta_inf(l);
        let c: Vec<f64> = [100usize, 1000, 10_000, 100_000]
            .iter()
            .map(|&n| n as f64 * (beta(n, l).unwrap() - lim).abs())
            .collect();
        // n|β(n) - β_∞| settles to a constant
        for w in c.windows(3) {
            assert!((w[2] - w[1]).abs() <= 0.2 * (w[1] - w[0]).abs() + 1e-9, "λ={l}: {c:?}");
        }
    }
}

#[test]
fn threshold_examples() {
    for (l, p) in [
        (0.5, Precision::BigFloat(200)),
        (1.0, Precision::Exact),
        (2.0 / 3.0, Precision::BigFloat(200)),
        (1.5, Precision::BigFloat(200)),
    ] {
        assert_eq!(find_n_lambda(l, p).unwrap().n0, 0, "λ={l}");
    }
    let n2 = find_n_lambda(2.0, Precision::Exact).unwrap();
    assert_eq!(n2.n0, 4);
    // n(λ) stays below 3λ³/2
    for &l in &[2.0, 2.5, 3.0, 4.0] {
        let n = find_n_lambda(l, Precision::Float64).unwrap().n0;
        assert!(n as f64 <= 1.5 * l * l * l, "λ={l} n={n}");
    }
}

#[test]
fn constant_examples() {
    let t6 = tau_min(2.0, Precision::Exact).unwrap();
    assert_eq!(t6.exact, Some(Rational::from((141, 128))));
    let c4 = hardy_rellich_constant(1.0, Precision::Exact).unwrap();
    assert_eq!(c4.verdict, HardyVerdict::Finite { constant: 8.0, n0: 0 });
    assert_eq!(hardy_constant_exact(1), 8);
    assert_eq!(hardy_constant_exact(2), Rational::from((8, 9)));
    let c3 = hardy_rellich_constant(0.5, Precision::Float64).unwrap();
    assert_eq!(c3.verdict, HardyVerdict::NoFiniteConstant);
}

#[test]
fn lambda0_examples() {
    assert_eq!(find_n_lambda(1.5, Precision::Float64).unwrap().n0, 0);
    assert!(find_n_lambda(2.0, Precision::Float64).unwrap().n0 > 0);
    let grid: Vec<f64> = (0..14).map(|i| 1.1 + 0.1 * i as f64).collect();
    let l0 = scan_lambda0(&grid).unwrap();
    assert!((l0.estimate - 1.8258).abs() < 1e-3);
    assert!(l0.bracket.0 < l0.estimate && l0.estimate < l0.bracket.1);
    assert!(matches!(scan_lambda0(&[1.1, 1.2]), Err(Error::BracketFailure)));
}

fn dense_mu(lambda: f64, n0: usize, size: usize) -> f64 {
    let idx: Vec<usize> = (n0 + 1..=size).collect();
    let m = idx.len();
    let w: Vec<f64> = idx.iter().map(|&n| n as f64 * (n as f64 + 2.0 * lambda)).collect();
    let mut a = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        a[(i, i)] = w[i];
        if i + 1 < m {
            let v = -0.5 * gamma_nn(idx[i], lambda) * (w[i] * w[i + 1]).sqrt();
            a[(i, i + 1)] = v;
            a[(i + 1, i)] = v;
        }
    }
    a.symmetric_eigenvalues().min()
}

#[test]
fn rayleigh_against_dense_solver() {
    for &l in &[0.0, 0.5, 1.0, 2.0] {
        for &(n0, size) in &[(0usize, 16usize), (0, 64), (4, 40)] {
            let mu = rayleigh_mu(l, n0, size).unwrap();
            let d = dense_mu(l, n0, size);
            assert!((mu - d).abs() < 1e-10 * d.abs().max(1.0), "λ={l} N={size}");
        }
    }
}

#[test]
fn rayleigh_examples() {
    let r = rayleigh_certify(1.0, 0, &[16, 64, 256, 1024]).unwrap();
    assert!(r.monotone);
    assert_eq!(r.bound_ok, Some(true));
    assert!(r.rows.iter().all(|row| row.mu >= 0.125));
    assert!(matches!(r.verdict, CertificateVerdict::Converging { limit_constant } if limit_constant == 8.0));

    let r = rayleigh_certify(0.5, 0, &[64, 256, 1024]).unwrap();
    assert_eq!(r.verdict, CertificateVerdict::Diverging);
    assert!(r.rows[1].mu < r.rows[0].mu && r.rows[2].mu < r.rows[1].mu);
    assert!(r.log_fit.1 > 0.0);

    for &l in &[0.0, 1.0, 2.0] {
        let n0 = 3;
        let single = rayleigh_mu(l, n0, n0 + 1).unwrap();
        let e = (n0 as f64 + 1.0) * (n0 as f64 + 1.0 + 2.0 * l);
        assert!((single - e).abs() < 1e-10 * e);
    }
    assert!(matches!(rayleigh_mu(1.0, 5, 5), Err(Error::TruncationTooSmall { .. })));
}

#[test]
fn below_threshold_no_bound_is_claimed() {
    // n₀ < n(2) = 4: μ_N drops below β_∞ and the report does not claim the bound
    let r = rayleigh_certify(2.0, 0, &[64]).unwrap();
    assert_eq!(r.bound_ok, None);
    assert!(!r.violated());
    let r = rayleigh_certify(2.0, 4, &[64, 256]).unwrap();
    assert_eq!(r.bound_ok, Some(true));
}
