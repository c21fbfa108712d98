use std::f64::consts::PI;

use hardy_sphere::gegenbauer::{self, ZonalCoeffs};
use hardy_sphere::lab::HeatFamily;
use hardy_sphere::quadrature::gauss_rule;
use hardy_sphere::sphere::{
    basis_norm, coupling_gamma, eval_basis, harmonic_dim, sphere_quadrature, x1_bilinear_form_zonal,
    x1_form_zonal, SpectralMultiplier, SphereCoeffs,
};
use hardy_sphere::Error;
use proptest::prelude::*;
use rug::Rational;

#[test]
fn gegenbauer_values() {
    assert_eq!(gegenbauer::eval(0, 0.7, 0.3).unwrap(), 1.0);
    assert!((gegenbauer::eval(1, 1.0, 0.5).unwrap() - 1.0).abs() < 1e-15);
    let th = PI / 5.0;
    let v = gegenbauer::eval(3, 1.0, th.cos()).unwrap();
    assert!((v - (4.0 * th).sin() / th.sin()).abs() < 1e-14);
    assert!(gegenbauer::eval(2, 1.0, 1.2).is_err());
}

#[test]
fn gegenbauer_large_degree_is_bounded() {
    // |C_n^1(cos θ)| = |sin((n+1)θ)/sin θ|
    let th: f64 = 0.37;
    let n = 10_000;
    let v = gegenbauer::eval(n, 1.0, th.cos()).unwrap();
    let exact = ((n + 1) as f64 * th).sin() / th.sin();
    assert!((v - exact).abs() < 1e-9);
}

#[test]
fn gegenbauer_norms() {
    assert_eq!(gegenbauer::norm(0, 0.7), 1.0);
    assert!((gegenbauer::norm(1, 1.0) - 1.0).abs() < 1e-15);
    // h_2^2 = 2·(4·5)/(4·2) = 5
    assert!((gegenbauer::norm(2, 2.0) - 5.0).abs() < 1e-14);
    assert_eq!(gegenbauer::norm_exact(2, &Rational::from(2)).unwrap(), 5);
    let rule = gauss_rule(2.0, 3).unwrap();
    let q = rule.integrate(|t| gegenbauer::eval(2, 2.0, t).unwrap().powi(2));
    assert!((q - 5.0).abs() < 1e-13);
    // Chebyshev convention at λ = 0
    assert_eq!(gegenbauer::norm(0, 0.0), 1.0);
    assert_eq!(gegenbauer::norm(5, 0.0), 0.5);
}

#[test]
fn gauss_rule_examples() {
    let r = gauss_rule(0.5, 2).unwrap();
    assert!((r.integrate(|t| t * t) - 1.0 / 3.0).abs() < 1e-15);
    assert_eq!(r.exact_degree, 3);
    let r = gauss_rule(1.0, 8).unwrap();
    assert!((r.integrate(|_| 1.0) - 1.0).abs() < 1e-15);
    let q = r.integrate(|t| gegenbauer::eval(3, 1.0, t).unwrap() * gegenbauer::eval(5, 1.0, t).unwrap());
    assert!(q.abs() < 1e-13);
    assert!(gauss_rule(1.0, 0).is_err());
    assert!(gauss_rule(-0.5, 3).is_err());
}

#[test]
fn analyze_examples() {
    let l = 1.3;
    let h2 = gegenbauer::norm(2, l).sqrt();
    let c = ZonalCoeffs::analyze(|t| gegenbauer::eval(2, l, t).unwrap() / h2, l, 5).unwrap();
    for (n, v) in c.coeffs().iter().enumerate() {
        assert!((v - if n == 2 { 1.0 } else { 0.0 }).abs() < 1e-13);
    }
    let c = ZonalCoeffs::analyze(|t| t, 1.0, 4).unwrap();
    for (n, v) in c.coeffs().iter().enumerate() {
        assert_eq!(n == 1, v.abs() > 1e-14);
    }
}

#[test]
fn heat_kernel_coefficients_by_analysis() {
    let (l, t) = (1.5, 0.1);
    let fam = HeatFamily::new(l, t, false).unwrap();
    let n_max = fam.truncation;
    let q = |x: f64| {
        (0..=n_max)
            .map(|n| fam.multiplier(n) * (n as f64 + l) / l * gegenbauer::eval(n, l, x).unwrap())
            .sum::<f64>()
    };
    let c = ZonalCoeffs::analyze(q, l, n_max).unwrap();
    let expect = fam.coeffs().unwrap();
    for (n, (a, b)) in c.coeffs().iter().zip(expect.coeffs()).enumerate() {
        let closed = fam.multiplier(n) * (n as f64 + l) / l * gegenbauer::norm(n, l).sqrt();
        assert!((a - closed).abs() < 1e-10 * closed.max(1.0), "n={n}");
        assert!((b - closed).abs() < 1e-12 * closed.max(1.0), "n={n}");
    }
}

#[test]
fn synthesize_examples() {
    let e0 = ZonalCoeffs::new(0.8, vec![1.0]).unwrap();
    assert_eq!(e0.synthesize(0.42).unwrap(), 1.0);
    let odd = ZonalCoeffs::new(1.0, vec![0.0, 1.0]).unwrap();
    assert_eq!(odd.synthesize(0.0).unwrap(), 0.0);
    // random degree-6 polynomial
    let p = |t: f64| 0.3 - 1.1 * t + 0.7 * t.powi(2) + 2.0 * t.powi(3) - 0.4 * t.powi(5) + 0.9 * t.powi(6);
    for &l in &[0.0, 0.5, 2.0] {
        let c = ZonalCoeffs::analyze(p, l, 6).unwrap();
        for i in 0..=20 {
            let t = -1.0 + 0.1 * i as f64;
            assert!((c.synthesize(t).unwrap() - p(t)).abs() < 1e-12);
        }
    }
}

#[test]
fn harmonic_dimensions() {
    assert_eq!(harmonic_dim(1, 3).unwrap(), 3);
    assert_eq!(harmonic_dim(5, 2).unwrap(), 2);
    assert_eq!(harmonic_dim(2, 4).unwrap(), 9);
    assert!(matches!(harmonic_dim(2, 1), Err(Error::InvalidDimension(1))));
}

#[test]
fn basis_norm_examples() {
    for &l in &[0.5, 1.0, 2.5] {
        for n in 0..6 {
            assert_eq!(basis_norm(n, n, l).unwrap(), gegenbauer::norm(n, l));
        }
    }
    // the squared norm against the normalized sphere measure carries the
    // ratio c_λ/c_{n-k+λ}; for d = 4 and the constant C_0 this is 35/64
    assert!((basis_norm(3, 0, 1.0).unwrap() - 35.0 / 64.0).abs() < 1e-15);
    let rule = sphere_quadrature(3, 8).unwrap();
    let q = rule.integrate(|x| eval_basis(2, 1, 0, x).unwrap().powi(2));
    assert!((q - basis_norm(2, 1, 0.5).unwrap()).abs() < 1e-13);
}

#[test]
fn basis_evaluation() {
    let x = [0.6, 0.0, 0.8];
    assert_eq!(eval_basis(0, 0, 0, &x).unwrap(), 1.0);
    assert!((eval_basis(1, 1, 0, &x).unwrap() - 2.0 * 0.5 * 0.6).abs() < 1e-15);
    let rule = sphere_quadrature(3, 6).unwrap();
    let ip = rule.integrate(|p| eval_basis(2, 0, 0, p).unwrap() * eval_basis(2, 1, 0, p).unwrap());
    assert!(ip.abs() < 1e-14);
    assert!(eval_basis(1, 0, 0, &[1.0, 0.0, 0.0, 0.0, 0.0]).is_err());
}

#[test]
fn coupling_examples() {
    for n in 0..20 {
        assert!((coupling_gamma(n, n, 1.0) - 1.0).abs() < 1e-15);
    }
    assert!((coupling_gamma(1, 0, 1.0) - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
    for &l in &[1.0, 1.5, 2.0, 7.0 / 3.0, 4.0] {
        for n in 0..=500 {
            for k in 0..n {
                assert!(coupling_gamma(n, k, l) <= coupling_gamma(n, k + 1, l) + 1e-15);
            }
        }
    }
}

#[test]
fn zonal_x1_examples() {
    let f = ZonalCoeffs::new(0.5, vec![0.0, 1.0]).unwrap();
    assert_eq!(x1_form_zonal(&f, &f).unwrap(), 0.0);
    let f = ZonalCoeffs::new(1.0, vec![0.0, 1.0, 1.0]).unwrap();
    assert!((x1_bilinear_form_zonal(&f, &f).unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn sphere_quadrature_examples() {
    let r = sphere_quadrature(3, 4).unwrap();
    assert!((r.integrate(|_| 1.0) - 1.0).abs() < 1e-15);
    assert!((r.integrate(|x| x[0] * x[0]) - 1.0 / 3.0).abs() < 1e-15);
    assert!((r.integrate(|x| x[2] * x[2]) - 1.0 / 3.0).abs() < 1e-15);
    assert!(sphere_quadrature(5, 4).is_err());
}

#[test]
fn multiplier_examples() {
    let m = SpectralMultiplier::new(1.0, 1.0).unwrap();
    let f = ZonalCoeffs::new(1.0, vec![0.0, 1.0, 2.0]).unwrap();
    let g = m.apply_zonal(&f).unwrap();
    assert_eq!(g.coeffs(), &[0.0, 3.0, 16.0]);
    let neg = SpectralMultiplier::new(-0.5, 1.0).unwrap();
    let with_mean = ZonalCoeffs::new(1.0, vec![1.0, 1.0]).unwrap();
    assert!(matches!(neg.apply_zonal(&with_mean), Err(Error::NonZeroMean(_))));
    // gradient norm is the half-power norm
    let mut s = SphereCoeffs::zeros(3, 3).unwrap();
    for (i, c) in s.data_mut().iter_mut().enumerate().skip(1) {
        *c = 1.0 / i as f64;
    }
    let half = SpectralMultiplier::new(0.5, 0.5).unwrap().apply_sphere(&s).unwrap();
    assert!((half.norm_sq() - s.grad_sq()).abs() < 1e-14);
}

proptest! {
    #[test]
    fn multiplier_composition(r in -2.0f64..2.0, q in -2.0f64..2.0,
                              c in proptest::collection::vec(-1.0f64..1.0, 2..12)) {
        let mut c = c;
        c[0] = 0.0;
        let f = ZonalCoeffs::new(0.75, c).unwrap();
        let a = SpectralMultiplier::new(r, 0.75).unwrap();
        let b = SpectralMultiplier::new(q, 0.75).unwrap();
        let two = b.apply_zonal(&a.apply_zonal(&f).unwrap()).unwrap();
        let one = a.compose(&b).unwrap().apply_zonal(&f).unwrap();
        prop_assert_eq!(a.compose(&b).unwrap().exponent, r + q);
        for (x, y) in two.coeffs().iter().zip(one.coeffs()) {
            prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
        }
    }

    #[test]
    fn zonal_round_trip(l in 0.0f64..4.0, c in proptest::collection::vec(-1.0f64..1.0, 1..30)) {
        let f = ZonalCoeffs::new(l, c).unwrap();
        let n = f.max_degree();
        let g = ZonalCoeffs::analyze(|t| f.synthesize(t).unwrap(), l, n).unwrap();
        for (x, y) in f.coeffs().iter().zip(g.coeffs()) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }
}
