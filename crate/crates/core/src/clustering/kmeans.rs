use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{check_dims, nearest, sq_dist};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KMeansConfig {
    pub k: usize,
    pub seed: u64,
    pub max_iter: usize,
    /// Stop once no centroid moves farther than this.
    pub tol: f64,
}

impl KMeansConfig {
    pub fn new(k: usize, seed: u64) -> Self {
        Self {
            k,
            seed,
            max_iter: 300,
            tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KMeansModel {
    pub centroids: Vec<Vec<f64>>,
    /// Sum of squared distances of the training points to their centroid.
    pub inertia: f64,
    pub iterations_run: usize,
    pub seed: u64,
    /// Training labels under the final centroids.
    pub labels: Vec<usize>,
    /// Inertia after every centroid update, then the final inertia.
    pub inertia_trace: Vec<f64>,
}

impl KMeansModel {
    pub fn k(&self) -> usize {
        self.centroids.len()
    }
}

pub fn kmeans_fit(x: &[Vec<f64>], k: usize, seed: u64) -> Result<KMeansModel> {
    kmeans_fit_with(x, &KMeansConfig::new(k, seed))
}

pub fn kmeans_fit_with(x: &[Vec<f64>], cfg: &KMeansConfig) -> Result<KMeansModel> {
    let k = cfg.k;
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    if k > x.len() {
        return Err(Error::InvalidInput(format!(
            "k = {k} exceeds the number of points ({})",
            x.len()
        )));
    }
    let dim = check_dims(x)?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    let mut centroids = plus_plus_init(x, k, &mut rng);
    let mut labels = assign_all(x, &centroids);
    let mut trace = Vec::new();
    let mut iterations = 0;

    while iterations < cfg.max_iter {
        iterations += 1;
        reseed_empty(x, &centroids, &mut labels, k);
        let updated = means(x, &labels, k, dim);
        trace.push(cost(x, &labels, &updated));
        let shift = centroids
            .iter()
            .zip(&updated)
            .map(|(a, b)| sq_dist(a, b).sqrt())
            .fold(0.0, f64::max);
        centroids = updated;
        labels = assign_all(x, &centroids);
        if shift < cfg.tol {
            break;
        }
    }

    let inertia = cost(x, &labels, &centroids);
    trace.push(inertia);
    Ok(KMeansModel {
        centroids,
        inertia,
        iterations_run: iterations,
        seed: cfg.seed,
        labels,
        inertia_trace: trace,
    })
}

/// k-means++ seeding: each new centre is drawn with probability
/// proportional to its squared distance from the nearest chosen centre.
pub(crate) fn plus_plus_init(x: &[Vec<f64>], k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = x.len();
    let mut chosen = vec![rng.gen_range(0..n)];
    let mut d2: Vec<f64> = x.iter().map(|p| sq_dist(p, &x[chosen[0]])).collect();
    while chosen.len() < k {
        let total: f64 = d2.iter().sum();
        let next = if total > 0.0 {
            let mut target = rng.gen::<f64>() * total;
            let mut pick = n - 1;
            for (i, &w) in d2.iter().enumerate() {
                if w <= 0.0 {
                    continue;
                }
                if target < w {
                    pick = i;
                    break;
                }
                target -= w;
            }
            if d2[pick] <= 0.0 {
                // rounding left us on a zero-weight tail
                pick = d2.iter().rposition(|&w| w > 0.0).unwrap_or(pick);
            }
            pick
        } else {
            // every point coincides with a centre; take unused indices in order
            (0..n).find(|i| !chosen.contains(i)).unwrap_or(0)
        };
        chosen.push(next);
        for (i, p) in x.iter().enumerate() {
            d2[i] = d2[i].min(sq_dist(p, &x[next]));
        }
    }
    chosen.into_iter().map(|i| x[i].clone()).collect()
}

fn assign_all(x: &[Vec<f64>], centroids: &[Vec<f64>]) -> Vec<usize> {
    x.iter().map(|p| nearest(p, centroids).0).collect()
}

fn means(x: &[Vec<f64>], labels: &[usize], k: usize, dim: usize) -> Vec<Vec<f64>> {
    let mut sums = vec![vec![0.0; dim]; k];
    let mut counts = vec![0usize; k];
    for (p, &l) in x.iter().zip(labels) {
        counts[l] += 1;
        for (s, v) in sums[l].iter_mut().zip(p) {
            *s += v;
        }
    }
    for (s, &c) in sums.iter_mut().zip(&counts) {
        if c > 0 {
            for v in s.iter_mut() {
                *v /= c as f64;
            }
        }
    }
    sums
}

fn cost(x: &[Vec<f64>], labels: &[usize], centroids: &[Vec<f64>]) -> f64 {
    x.iter()
        .zip(labels)
        .map(|(p, &l)| sq_dist(p, &centroids[l]))
        .sum()
}

/// Give every empty cluster the point farthest from its current centroid,
/// taken from a cluster that keeps at least one member.
fn reseed_empty(x: &[Vec<f64>], centroids: &[Vec<f64>], labels: &mut [usize], k: usize) {
    let mut counts = vec![0usize; k];
    for &l in labels.iter() {
        counts[l] += 1;
    }
    for empty in 0..k {
        if counts[empty] > 0 {
            continue;
        }
        let mut best: Option<(usize, f64)> = None;
        for (i, p) in x.iter().enumerate() {
            if counts[labels[i]] < 2 {
                continue;
            }
            let d = sq_dist(p, &centroids[labels[i]]);
            if best.is_none_or(|(_, bd)| d > bd) {
                best = Some((i, d));
            }
        }
        if let Some((i, _)) = best {
            counts[labels[i]] -= 1;
            labels[i] = empty;
            counts[empty] = 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[f64]) -> Vec<Vec<f64>> {
        v.iter().map(|&x| vec![x]).collect()
    }

    #[test]
    fn two_groups_on_a_line() {
        let x = pts(&[0.0, 1.0, 10.0, 11.0]);
        for seed in 0..10 {
            let m = kmeans_fit(&x, 2, seed).unwrap();
            let mut c: Vec<f64> = m.centroids.iter().map(|c| c[0]).collect();
            c.sort_by(f64::total_cmp);
            assert_eq!(c, vec![0.5, 10.5]);
            assert!((m.inertia - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn single_cluster_is_the_mean() {
        let x = vec![vec![1.0, 2.0], vec![3.0, 6.0], vec![5.0, 1.0]];
        let m = kmeans_fit(&x, 1, 3).unwrap();
        assert!((m.centroids[0][0] - 3.0).abs() < 1e-12);
        assert!((m.centroids[0][1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn one_point_per_cluster() {
        let x = pts(&[0.0, 4.0, 9.0, 20.0]);
        let m = kmeans_fit(&x, 4, 1).unwrap();
        assert_eq!(m.inertia, 0.0);
    }

    #[test]
    fn duplicate_points_still_fill_every_cluster() {
        let x = pts(&[1.0, 1.0, 1.0, 1.0]);
        let m = kmeans_fit(&x, 3, 0).unwrap();
        assert_eq!(m.inertia, 0.0);
        assert_eq!(m.k(), 3);
    }

    #[test]
    fn too_many_clusters() {
        assert!(kmeans_fit(&pts(&[1.0, 2.0]), 3, 0).is_err());
        assert!(kmeans_fit(&pts(&[1.0, 2.0]), 0, 0).is_err());
    }
}
