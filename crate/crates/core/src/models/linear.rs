//! Ridge regression with an unpenalized intercept.

use nalgebra::{DMatrix, DVector};

use crate::{Error, Result};

/// Returns `(intercept, coefficients)`. Centering removes the intercept from
/// the penalty.
pub(crate) fn solve_ridge(x: &[Vec<f64>], y: &[f64], d: usize, lambda: f64) -> Result<(f64, Vec<f64>)> {
    let n = x.len();
    let x_mean: Vec<f64> = (0..d)
        .map(|j| x.iter().map(|r| r[j]).sum::<f64>() / n as f64)
        .collect();
    let y_mean = y.iter().sum::<f64>() / n as f64;

    let mut gram = DMatrix::<f64>::zeros(d, d);
    let mut rhs = DVector::<f64>::zeros(d);
    let mut centred = vec![0.0; d];
    for (row, &yi) in x.iter().zip(y) {
        for j in 0..d {
            centred[j] = row[j] - x_mean[j];
        }
        let yc = yi - y_mean;
        for a in 0..d {
            rhs[a] += centred[a] * yc;
            for b in a..d {
                gram[(a, b)] += centred[a] * centred[b];
            }
        }
    }
    for a in 0..d {
        for b in 0..a {
            gram[(a, b)] = gram[(b, a)];
        }
        gram[(a, a)] += lambda;
    }

    let singular = || {
        Error::Singular(format!(
            "normal equations are singular at lambda = {lambda}; use lambda > 0"
        ))
    };
    let chol = gram.clone().cholesky().ok_or_else(singular)?;
    let l = chol.l();
    let diag: Vec<f64> = (0..d).map(|i| l[(i, i)] * l[(i, i)]).collect();
    let max = diag.iter().copied().fold(0.0, f64::max);
    if diag.iter().any(|&v| !(v > 1e-12 * max.max(f64::MIN_POSITIVE))) {
        return Err(singular());
    }
    let beta = chol.solve(&rhs);
    if beta.iter().any(|b| !b.is_finite()) {
        return Err(Error::Numerical("ridge solution is not finite".into()));
    }
    let intercept = y_mean - beta.iter().zip(&x_mean).map(|(b, m)| b * m).sum::<f64>();
    Ok((intercept, beta.iter().copied().collect()))
}
