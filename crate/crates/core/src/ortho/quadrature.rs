//! Gauss quadrature from the truncated Jacobi matrix (Golub–Welsch).

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::OrthoFamily;
use crate::{Error, Result};

/// Residual bound `‖Jv − θv‖` each eigenpair must meet.
pub const EIGEN_RESIDUAL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Quadrature {
    pub family: OrthoFamily,
    /// Ascending.
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Largest eigenpair residual observed.
    pub max_residual: f64,
}

impl Quadrature {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `Σ wₖ f(xₖ)`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(*x)).sum()
    }
}

/// `n`-point Gauss rule for the family's normalized (`m₀ = 1`) functional.
pub fn golub_welsch(family: OrthoFamily, n: usize) -> Result<Quadrature> {
    if n == 0 {
        return Err(Error::InvalidParameter("quadrature needs at least one node".into()));
    }
    let jd = family.three_term().jacobi(n);
    let mut j = DMatrix::<f64>::zeros(n, n);
    for (k, b) in jd.offdiag_float.iter().enumerate() {
        j[(k, k + 1)] = *b;
        j[(k + 1, k)] = *b;
    }
    let eig = SymmetricEigen::try_new(j.clone(), f64::EPSILON, 10_000).ok_or_else(|| Error::EigenNonconvergence {
        size: n,
        reason: "QR iteration did not converge".into(),
    })?;
    let mut max_residual = 0.0f64;
    let mut pairs: Vec<(f64, f64)> = Vec::with_capacity(n);
    for k in 0..n {
        let theta = eig.eigenvalues[k];
        let v = eig.eigenvectors.column(k);
        let r = (&j * v - v * theta).norm();
        max_residual = max_residual.max(r);
        pairs.push((theta, v[0] * v[0] / v.norm_squared()));
    }
    if max_residual.is_nan() || max_residual > EIGEN_RESIDUAL_TOL {
        return Err(Error::EigenNonconvergence {
            size: n,
            reason: format!("eigenpair residual {max_residual:e} exceeds {EIGEN_RESIDUAL_TOL:e}"),
        });
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (nodes, weights) = pairs.into_iter().unzip();
    Ok(Quadrature {
        family,
        nodes,
        weights,
        max_residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadOrthogonality {
    pub n_quad: usize,
    pub max_deg: usize,
    /// `max_{i≠j} |Σ wₖ pᵢ(xₖ) pⱼ(xₖ)|`.
    pub max_offdiag: f64,
    /// `min_i Σ wₖ pᵢ(xₖ)²`.
    pub min_diag: f64,
}

/// Discrete Gram matrix of `p₀ ..= p_{max_deg}` under the `n_quad`-point rule.
pub fn quad_orthogonality(family: OrthoFamily, n_quad: usize, max_deg: usize) -> Result<QuadOrthogonality> {
    if n_quad <= max_deg {
        return Err(Error::InvalidParameter(format!(
            "need more nodes than the degree: n_quad = {n_quad}, max_deg = {max_deg}"
        )));
    }
    let quad = golub_welsch(family, n_quad)?;
    let polys = family.polys(max_deg);
    let values: Vec<Vec<f64>> = polys
        .iter()
        .map(|p| quad.nodes.iter().map(|&x| p.evaluate_f64(x)).collect())
        .collect();
    let mut max_offdiag = 0.0f64;
    let mut min_diag = f64::INFINITY;
    for i in 0..=max_deg {
        for j in i..=max_deg {
            let g: f64 = (0..n_quad).map(|k| quad.weights[k] * values[i][k] * values[j][k]).sum();
            if i == j {
                min_diag = min_diag.min(g);
            } else {
                max_offdiag = max_offdiag.max(g.abs());
            }
        }
    }
    Ok(QuadOrthogonality {
        n_quad,
        max_deg,
        max_offdiag,
        min_diag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_rule_by_hand() {
        let q = golub_welsch(OrthoFamily::QBar, 2).unwrap();
        let x = (7.0f64 / 32.0).sqrt();
        assert!((q.nodes[0] + x).abs() < 1e-15);
        assert!((q.nodes[1] - x).abs() < 1e-15);
        for w in &q.weights {
            assert!((w - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn twenty_point_rule() {
        for fam in OrthoFamily::ALL {
            let q = golub_welsch(fam, 20).unwrap();
            assert!((q.weights.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            for k in 0..20 {
                assert!((q.nodes[k] + q.nodes[19 - k]).abs() < 1e-12);
            }
            let o = quad_orthogonality(fam, 20, 8).unwrap();
            assert!(o.max_offdiag <= 1e-10, "{o:?}");
            assert!(o.min_diag > 0.0);
        }
        assert!(quad_orthogonality(OrthoFamily::Q, 5, 5).is_err());
        assert!(golub_welsch(OrthoFamily::Q, 0).is_err());
    }

    #[test]
    fn reproduces_moments() {
        let m = super::super::moments(OrthoFamily::Q, 12);
        let q = golub_welsch(OrthoFamily::Q, 8).unwrap();
        for (k, mk) in m.iter().enumerate() {
            let approx = q.integrate(|x| x.powi(k as i32));
            assert!((approx - crate::exact::to_f64(mk)).abs() < 1e-14, "k={k}");
        }
    }
}
