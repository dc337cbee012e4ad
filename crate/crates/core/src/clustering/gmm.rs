use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::check_dims;
use super::kmeans::kmeans_fit;
use crate::{Error, Result};

pub const VARIANCE_FLOOR: f64 = 1e-6;

/// Components with less total responsibility than this are degenerate.
const MIN_COMPONENT_MASS: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GmmConfig {
    pub k: usize,
    pub seed: u64,
    pub max_iter: usize,
    /// Stop when the log-likelihood gain of an iteration drops below this.
    pub tol: f64,
    pub variance_floor: f64,
}

impl GmmConfig {
    pub fn new(k: usize, seed: u64) -> Self {
        Self {
            k,
            seed,
            max_iter: 200,
            tol: 1e-7,
            variance_floor: VARIANCE_FLOOR,
        }
    }
}

/// Gaussian mixture with diagonal covariances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GmmModel {
    pub weights: Vec<f64>,
    pub means: Vec<Vec<f64>>,
    pub variances: Vec<Vec<f64>>,
    pub log_likelihood_trace: Vec<f64>,
    pub seed: u64,
    pub iterations_run: usize,
    /// Number of degenerate components that were re-initialized.
    pub reinitialized: usize,
}

impl GmmModel {
    pub fn k(&self) -> usize {
        self.weights.len()
    }

    pub fn dim(&self) -> usize {
        self.means.first().map_or(0, Vec::len)
    }

    fn log_joint(&self, p: &[f64], out: &mut [f64]) {
        for (c, slot) in out.iter_mut().enumerate() {
            *slot = self.weights[c].ln() + log_gauss_diag(p, &self.means[c], &self.variances[c]);
        }
    }

    /// Posterior component probabilities for one point.
    pub fn posterior(&self, p: &[f64]) -> Vec<f64> {
        let mut lj = vec![0.0; self.k()];
        self.log_joint(p, &mut lj);
        let lse = log_sum_exp(&lj);
        lj.iter().map(|v| (v - lse).exp()).collect()
    }

    pub fn log_likelihood(&self, x: &[Vec<f64>]) -> f64 {
        let mut lj = vec![0.0; self.k()];
        x.iter()
            .map(|p| {
                self.log_joint(p, &mut lj);
                log_sum_exp(&lj)
            })
            .sum()
    }
}

fn log_gauss_diag(p: &[f64], mean: &[f64], var: &[f64]) -> f64 {
    let mut acc = 0.0;
    for ((x, m), v) in p.iter().zip(mean).zip(var) {
        let d = x - m;
        acc += d * d / v + v.ln();
    }
    -0.5 * (acc + p.len() as f64 * (2.0 * PI).ln())
}

fn log_sum_exp(v: &[f64]) -> f64 {
    let max = v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    max + v.iter().map(|x| (x - max).exp()).sum::<f64>().ln()
}

pub fn gmm_fit(x: &[Vec<f64>], k: usize, seed: u64) -> Result<GmmModel> {
    gmm_fit_with(x, &GmmConfig::new(k, seed))
}

/// Expectation-maximization starting from a k-means solution.
pub fn gmm_fit_with(x: &[Vec<f64>], cfg: &GmmConfig) -> Result<GmmModel> {
    let k = cfg.k;
    if k == 0 || k > x.len() {
        return Err(Error::InvalidInput(format!(
            "k = {k} must lie in 1..={} for a mixture fit",
            x.len()
        )));
    }
    let dim = check_dims(x)?;
    let n = x.len();
    let floor = cfg.variance_floor;

    let global_var = column_variance(x, dim, floor);
    let init = kmeans_fit(x, k, cfg.seed)?;
    let mut counts = vec![0usize; k];
    for &l in &init.labels {
        counts[l] += 1;
    }
    let mut variances = vec![vec![0.0; dim]; k];
    for (p, &l) in x.iter().zip(&init.labels) {
        for ((v, a), m) in variances[l].iter_mut().zip(p).zip(&init.centroids[l]) {
            *v += (a - m) * (a - m);
        }
    }
    for (c, var) in variances.iter_mut().enumerate() {
        if counts[c] < 2 {
            var.clone_from(&global_var);
        } else {
            for v in var.iter_mut() {
                *v = (*v / counts[c] as f64).max(floor);
            }
        }
    }
    let mut model = GmmModel {
        weights: counts.iter().map(|&c| c.max(1) as f64).collect(),
        means: init.centroids,
        variances,
        log_likelihood_trace: Vec::new(),
        seed: cfg.seed,
        iterations_run: 0,
        reinitialized: 0,
    };
    let total: f64 = model.weights.iter().sum();
    model.weights.iter_mut().for_each(|w| *w /= total);

    let mut resp = vec![vec![0.0; k]; n];
    let mut point_ll = vec![0.0; n];
    let mut reinit_done = vec![false; k];

    for _ in 0..cfg.max_iter {
        model.iterations_run += 1;

        // E-step
        let mut ll = 0.0;
        for (i, p) in x.iter().enumerate() {
            model.log_joint(p, &mut resp[i]);
            let lse = log_sum_exp(&resp[i]);
            for r in resp[i].iter_mut() {
                *r = (*r - lse).exp();
            }
            point_ll[i] = lse;
            ll += lse;
        }
        if !ll.is_finite() {
            return Err(Error::Numerical("mixture log-likelihood is not finite".into()));
        }
        let gain = model.log_likelihood_trace.last().map(|prev| ll - prev);
        model.log_likelihood_trace.push(ll);
        if gain.is_some_and(|g| g < cfg.tol) {
            break;
        }

        // M-step
        for c in 0..k {
            let mass: f64 = resp.iter().map(|r| r[c]).sum();
            if mass < MIN_COMPONENT_MASS {
                if reinit_done[c] {
                    return Err(Error::Numerical(format!(
                        "mixture component {c} collapsed twice"
                    )));
                }
                reinit_done[c] = true;
                model.reinitialized += 1;
                // restart the component on the worst-explained point
                let worst = point_ll
                    .iter()
                    .enumerate()
                    .min_by(|a, b| a.1.total_cmp(b.1))
                    .map_or(0, |(i, _)| i);
                model.means[c] = x[worst].clone();
                model.variances[c] = global_var.clone();
                model.weights[c] = 1.0 / n as f64;
                continue;
            }
            let mut mean = vec![0.0; dim];
            for (p, r) in x.iter().zip(&resp) {
                let w = r[c];
                for (m, v) in mean.iter_mut().zip(p) {
                    *m += w * v;
                }
            }
            mean.iter_mut().for_each(|m| *m /= mass);
            let mut var = vec![0.0; dim];
            for (p, r) in x.iter().zip(&resp) {
                let w = r[c];
                for ((s, v), m) in var.iter_mut().zip(p).zip(&mean) {
                    *s += w * (v - m) * (v - m);
                }
            }
            var.iter_mut().for_each(|s| *s = (*s / mass).max(floor));
            model.weights[c] = mass / n as f64;
            model.means[c] = mean;
            model.variances[c] = var;
        }
        let total: f64 = model.weights.iter().sum();
        model.weights.iter_mut().for_each(|w| *w /= total);
    }
    Ok(model)
}

fn column_variance(x: &[Vec<f64>], dim: usize, floor: f64) -> Vec<f64> {
    let n = x.len() as f64;
    let mut mean = vec![0.0; dim];
    for p in x {
        for (m, v) in mean.iter_mut().zip(p) {
            *m += v / n;
        }
    }
    let mut var = vec![0.0; dim];
    for p in x {
        for ((s, v), m) in var.iter_mut().zip(p).zip(&mean) {
            *s += (v - m) * (v - m) / n;
        }
    }
    var.into_iter().map(|v| v.max(floor)).collect()
}
