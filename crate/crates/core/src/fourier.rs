//! Complex Fourier coefficients on the circle, f(θ) = Σ_{|n|<=N} f̂_n e^{inθ}.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct FourierCoeffs {
    max_freq: usize,
    /// f̂_{-N}, ..., f̂_N
    coeffs: Vec<Complex64>,
}

impl FourierCoeffs {
    pub fn new(max_freq: usize, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != 2 * max_freq + 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                2 * max_freq + 1,
                coeffs.len()
            )));
        }
        Ok(Self { max_freq, coeffs })
    }

    pub fn zeros(max_freq: usize) -> Self {
        Self {
            max_freq,
            coeffs: vec![Complex64::new(0.0, 0.0); 2 * max_freq + 1],
        }
    }

    pub fn max_freq(&self) -> usize {
        self.max_freq
    }

    pub fn get(&self, n: i64) -> Complex64 {
        let i = n + self.max_freq as i64;
        if i < 0 || i as usize >= self.coeffs.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[i as usize]
        }
    }

    pub fn set(&mut self, n: i64, v: Complex64) {
        let i = (n + self.max_freq as i64) as usize;
        self.coeffs[i] = v;
    }

    /// Coefficients of a real trigonometric polynomial sampled on 4N+4 points.
    pub fn from_fn<F: Fn(f64) -> f64>(f: F, max_freq: usize) -> Self {
        let m = 4 * max_freq + 4;
        let samples: Vec<f64> = (0..m).map(|i| f(2.0 * PI * i as f64 / m as f64)).collect();
        let mut out = Self::zeros(max_freq);
        for n in -(max_freq as i64)..=max_freq as i64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, v) in samples.iter().enumerate() {
                let th = 2.0 * PI * i as f64 / m as f64;
                acc += Complex64::from_polar(*v, -(n as f64) * th);
            }
            out.set(n, acc / m as f64);
        }
        out
    }

    pub fn eval(&self, theta: f64) -> Complex64 {
        (-(self.max_freq as i64)..=self.max_freq as i64)
            .map(|n| self.get(n) * Complex64::from_polar(1.0, n as f64 * theta))
            .sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn mean(&self) -> Complex64 {
        self.get(0)
    }

    pub fn grad_sq(&self) -> f64 {
        (-(self.max_freq as i64)..=self.max_freq as i64)
            .map(|n| (n * n) as f64 * self.get(n).norm_sqr())
            .sum()
    }

    /// S = Σ f̂_n conj(ĝ_{n+1}); for f = g,
    /// (1/2π)∫ cos θ |f|² = Re S and (1/2π)∫ sin θ |f|² = Im S.
    pub fn shifted_product(&self, g: &Self) -> Complex64 {
        let top = self.max_freq.max(g.max_freq) as i64;
        (-top - 1..=top)
            .map(|n| self.get(n) * g.get(n + 1).conj())
            .sum()
    }

    /// (1/2π) ∫ cos θ f conj(g), real part of the symmetrized sum.
    pub fn x1_form(&self, g: &Self) -> f64 {
        0.5 * (self.shifted_product(g) + g.shifted_product(self)).re
    }

    pub fn x1_bilinear_form(&self, g: &Self) -> Result<f64> {
        for f in [self, g] {
            if f.mean().norm() > 1e-14 * f.norm_sq().sqrt().max(1e-300) {
                return Err(Error::NonZeroMean(f.mean().norm()));
            }
        }
        Ok(self.x1_form(g))
    }

    /// ((1/2π)∫ cos θ |f|², (1/2π)∫ sin θ |f|²)
    pub fn first_moments(&self) -> [f64; 2] {
        let s = self.shifted_product(self);
        [s.re, s.im]
    }
}
