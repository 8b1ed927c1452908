//! Least-squares primitives on centered rows (no intercept).

use nalgebra::{DMatrix, DVector};

use crate::error::{LingamError, Result};

/// Gram matrices whose reciprocal condition number (smallest over largest
/// eigenvalue) falls below this are rejected as singular.
pub const MIN_RECIPROCAL_CONDITION: f64 = 1e-10;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Regression coefficient `cov(xi, xj) / var(xj)` for centered rows.
pub fn simple_coefficient(xi: &[f64], xj: &[f64]) -> Result<f64> {
    let var = dot(xj, xj);
    if var == 0.0 {
        return Err(LingamError::ZeroVariance);
    }
    Ok(dot(xi, xj) / var)
}

/// Regresses `xi` on `xj` and returns the coefficient and the residual
/// `xi - coef * xj`. Both rows must already be centered.
pub fn simple_residual(xi: &[f64], xj: &[f64]) -> Result<(f64, Vec<f64>)> {
    let coef = simple_coefficient(xi, xj)?;
    let residual = xi.iter().zip(xj).map(|(a, b)| a - coef * b).collect();
    Ok((coef, residual))
}

/// In-place form of [`simple_residual`]; returns the coefficient.
pub fn residualize_in_place(xi: &mut [f64], xj: &[f64]) -> Result<f64> {
    let coef = simple_coefficient(xi, xj)?;
    xi.iter_mut().zip(xj).for_each(|(a, b)| *a -= coef * b);
    Ok(coef)
}

/// Solves the normal equations for `y ~ sum_k coefs[k] * predictors[k]`.
///
/// Requires fewer predictors than observations and a Gram matrix whose
/// reciprocal condition number is at least [`MIN_RECIPROCAL_CONDITION`].
pub fn multi_least_squares(y: &[f64], predictors: &[&[f64]]) -> Result<Vec<f64>> {
    let k = predictors.len();
    let n = y.len();
    if let Some(bad) = predictors.iter().find(|p| p.len() != n) {
        return Err(LingamError::DimensionMismatch {
            expected: format!("{n} observations per predictor"),
            found: bad.len().to_string(),
        });
    }
    if k >= n {
        return Err(LingamError::TooFewObservations { predictors: k, observations: n });
    }
    if k == 0 {
        return Ok(Vec::new());
    }

    let mut gram = DMatrix::zeros(k, k);
    for a in 0..k {
        for b in a..k {
            let v = dot(predictors[a], predictors[b]);
            gram[(a, b)] = v;
            gram[(b, a)] = v;
        }
    }
    let rhs = DVector::from_iterator(k, predictors.iter().map(|p| dot(p, y)));

    let eigen = gram.clone().symmetric_eigen();
    let max = eigen.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let min = eigen.eigenvalues.iter().fold(f64::INFINITY, |m, &v| m.min(v));
    let rcond = if max > 0.0 { min / max } else { 0.0 };
    if !(rcond >= MIN_RECIPROCAL_CONDITION) {
        return Err(LingamError::SingularDesign { rcond });
    }

    let chol = gram.cholesky().ok_or(LingamError::SingularDesign { rcond })?;
    Ok(chol.solve(&rhs).iter().copied().collect())
}
