//! Gauss-Gegenbauer rules by Golub-Welsch: nodes are the eigenvalues of the
//! Jacobi matrix, weights the squared first eigenvector components. Weights
//! sum to one (normalized measure).

use crate::eigen::tridiagonal_eigen_first_row;
use crate::error::{check_lambda, Error, Result};
use crate::gegenbauer::jacobi_offdiag;

#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Polynomials of degree <= exact_degree are integrated exactly.
    pub exact_degree: usize,
}

pub fn gauss_rule(lambda: f64, m: usize) -> Result<QuadratureRule> {
    check_lambda(lambda)?;
    if m == 0 {
        return Err(Error::InvalidArgument("quadrature needs at least one node".into()));
    }
    let diag = vec![0.0; m];
    let off: Vec<f64> = (0..m - 1).map(|n| jacobi_offdiag(n, lambda)).collect();
    let (vals, first) = tridiagonal_eigen_first_row(&diag, &off)?;
    let mut pairs: Vec<(f64, f64)> = vals
        .into_iter()
        .zip(first)
        .map(|(x, z)| (x, z * z))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut nodes: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let mut weights: Vec<f64> = pairs.iter().map(|p| p.1).collect();
    // the weight is even; enforce the symmetry exactly
    for i in 0..m / 2 {
        let j = m - 1 - i;
        let x = 0.5 * (nodes[j] - nodes[i]);
        let w = 0.5 * (weights[i] + weights[j]);
        nodes[i] = -x;
        nodes[j] = x;
        weights[i] = w;
        weights[j] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    let total: f64 = weights.iter().sum();
    for w in &mut weights {
        *w /= total;
    }
    Ok(QuadratureRule {
        nodes,
        weights,
        exact_degree: 2 * m - 1,
    })
}

impl QuadratureRule {
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}
