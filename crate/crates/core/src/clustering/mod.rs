//! Clustering of description vectors: K-Means, diagonal Gaussian mixtures,
//! the mean silhouette coefficient and silhouette-based choice of `k`.

mod gmm;
mod kmeans;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use gmm::{gmm_fit, gmm_fit_with, GmmConfig, GmmModel, VARIANCE_FLOOR};
pub use kmeans::{kmeans_fit, kmeans_fit_with, KMeansConfig, KMeansModel};

use crate::{Error, Result};

pub(crate) fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Index of the closest centre (lowest index on ties) and its squared distance.
pub(crate) fn nearest(p: &[f64], centres: &[Vec<f64>]) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for (i, c) in centres.iter().enumerate() {
        let d = sq_dist(p, c);
        if d < best.1 {
            best = (i, d);
        }
    }
    best
}

pub(crate) fn check_dims(x: &[Vec<f64>]) -> Result<usize> {
    let dim = x.first().map_or(0, Vec::len);
    for p in x {
        if p.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.len(),
            });
        }
        if p.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput("non-finite coordinate".into()));
        }
    }
    Ok(dim)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClusterAlgo {
    KMeans,
    Gmm,
}

impl fmt::Display for ClusterAlgo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClusterAlgo::KMeans => "kmeans",
            ClusterAlgo::Gmm => "gmm",
        })
    }
}

impl FromStr for ClusterAlgo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kmeans" => Ok(ClusterAlgo::KMeans),
            "gmm" => Ok(ClusterAlgo::Gmm),
            other => Err(Error::InvalidInput(format!("unknown clustering algorithm `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "algo", rename_all = "lowercase")]
pub enum ClusterModel {
    KMeans(KMeansModel),
    Gmm(GmmModel),
}

impl ClusterModel {
    pub fn fit(algo: ClusterAlgo, x: &[Vec<f64>], k: usize, seed: u64) -> Result<Self> {
        Ok(match algo {
            ClusterAlgo::KMeans => ClusterModel::KMeans(kmeans_fit(x, k, seed)?),
            ClusterAlgo::Gmm => ClusterModel::Gmm(gmm_fit(x, k, seed)?),
        })
    }

    pub fn k(&self) -> usize {
        match self {
            ClusterModel::KMeans(m) => m.k(),
            ClusterModel::Gmm(m) => m.k(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            ClusterModel::KMeans(m) => m.centroids.first().map_or(0, Vec::len),
            ClusterModel::Gmm(m) => m.dim(),
        }
    }

    /// Cluster centres: centroids or component means.
    pub fn centres(&self) -> &[Vec<f64>] {
        match self {
            ClusterModel::KMeans(m) => &m.centroids,
            ClusterModel::Gmm(m) => &m.means,
        }
    }

    pub fn assign_one(&self, p: &[f64]) -> Result<usize> {
        if p.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: p.len(),
            });
        }
        Ok(match self {
            ClusterModel::KMeans(m) => nearest(p, &m.centroids).0,
            ClusterModel::Gmm(m) => argmax(&m.posterior(p)),
        })
    }
}

/// First index of the maximum.
pub fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if *x > v[best] {
            best = i;
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterAssignment {
    pub labels: Vec<usize>,
    pub k: usize,
}

/// Nearest centroid for K-Means, maximum posterior for a mixture.
pub fn cluster_assign(model: &ClusterModel, x: &[Vec<f64>]) -> Result<ClusterAssignment> {
    let labels = x
        .iter()
        .map(|p| model.assign_one(p))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClusterAssignment {
        labels,
        k: model.k(),
    })
}

/// Symmetric matrix of Euclidean distances, packed row-major.
#[derive(Debug, Clone)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<f64>,
}

impl DistanceMatrix {
    pub fn new(x: &[Vec<f64>]) -> Self {
        let n = x.len();
        let mut d = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let v = sq_dist(&x[i], &x[j]).sqrt();
                d[i * n + j] = v;
                d[j * n + i] = v;
            }
        }
        Self { n, d }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.n + j]
    }
}

/// Mean silhouette coefficient with Euclidean distance.
pub fn silhouette(x: &[Vec<f64>], labels: &[usize]) -> Result<f64> {
    check_dims(x)?;
    if x.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: labels.len(),
        });
    }
    silhouette_with(&DistanceMatrix::new(x), labels)
}

/// Mean silhouette over a precomputed distance matrix. Points in singleton
/// clusters score 0.
pub fn silhouette_with(dist: &DistanceMatrix, labels: &[usize]) -> Result<f64> {
    let n = dist.len();
    if labels.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: labels.len(),
        });
    }
    let k = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut sizes = vec![0usize; k];
    for &l in labels {
        sizes[l] += 1;
    }
    if sizes.iter().filter(|&&s| s > 0).count() < 2 {
        return Err(Error::InvalidInput(
            "silhouette needs at least two non-empty clusters".into(),
        ));
    }

    let mut total = 0.0;
    let mut sums = vec![0.0; k];
    for i in 0..n {
        sums.iter_mut().for_each(|s| *s = 0.0);
        for j in 0..n {
            sums[labels[j]] += dist.get(i, j);
        }
        let own = labels[i];
        if sizes[own] < 2 {
            continue;
        }
        let a = sums[own] / (sizes[own] - 1) as f64;
        let b = (0..k)
            .filter(|&c| c != own && sizes[c] > 0)
            .map(|c| sums[c] / sizes[c] as f64)
            .fold(f64::INFINITY, f64::min);
        let denom = a.max(b);
        if denom > 0.0 {
            total += (b - a) / denom;
        }
    }
    Ok(total / n as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KScore {
    pub k: usize,
    /// `None` when the fit failed or produced fewer than two clusters.
    pub silhouette: Option<f64>,
}

/// Fit every `k` in the range with seed `seed + k` and keep the one with the
/// highest mean silhouette (smallest `k` on ties).
pub fn select_k(
    x: &[Vec<f64>],
    algo: ClusterAlgo,
    k_range: std::ops::RangeInclusive<usize>,
    seed: u64,
) -> Result<(usize, Vec<KScore>)> {
    let ks: Vec<usize> = k_range.collect();
    if ks.is_empty() {
        return Err(Error::InvalidInput("empty k range".into()));
    }
    check_dims(x)?;
    if let Some(&bad) = ks.iter().find(|&&k| k < 2 || k + 1 > x.len()) {
        return Err(Error::InvalidInput(format!(
            "k = {bad} outside [2, {}]",
            x.len().saturating_sub(1)
        )));
    }
    let dist = DistanceMatrix::new(x);
    let scores: Vec<KScore> = ks
        .par_iter()
        .map(|&k| {
            let silhouette = ClusterModel::fit(algo, x, k, seed.wrapping_add(k as u64))
                .and_then(|m| cluster_assign(&m, x))
                .and_then(|a| silhouette_with(&dist, &a.labels))
                .ok();
            KScore { k, silhouette }
        })
        .collect();

    let mut best: Option<(usize, f64)> = None;
    for s in &scores {
        if let Some(v) = s.silhouette {
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((s.k, v));
            }
        }
    }
    let (k, _) = best.ok_or_else(|| Error::Numerical("no candidate k could be scored".into()))?;
    Ok((k, scores))
}

/// One line of the cluster catalog export.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub cluster_id: usize,
    pub size: usize,
    pub top_terms: Vec<String>,
    pub mean_duration_min: Option<f64>,
}

/// Summarize clusters by their highest-weighted terms and the mean duration
/// of their members.
pub fn build_catalog(
    model: &ClusterModel,
    terms: &[&str],
    labels: &[usize],
    durations: &[f64],
    top: usize,
) -> Vec<CatalogEntry> {
    let k = model.k();
    let mut sizes = vec![0usize; k];
    let mut sums = vec![0.0; k];
    for (&l, &d) in labels.iter().zip(durations) {
        sizes[l] += 1;
        sums[l] += d;
    }
    model
        .centres()
        .iter()
        .enumerate()
        .map(|(c, centre)| {
            let mut ranked: Vec<(usize, f64)> = centre
                .iter()
                .copied()
                .enumerate()
                .filter(|(_, w)| *w > 1e-12)
                .collect();
            ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
            CatalogEntry {
                cluster_id: c,
                size: sizes[c],
                top_terms: ranked
                    .into_iter()
                    .take(top)
                    .filter_map(|(i, _)| terms.get(i).map(|t| t.to_string()))
                    .collect(),
                mean_duration_min: (sizes[c] > 0).then(|| sums[c] / sizes[c] as f64),
            }
        })
        .collect()
}

pub fn write_catalog_csv<W: Write>(entries: &[CatalogEntry], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["cluster_id", "size", "top_terms", "mean_duration_min"])?;
    for e in entries {
        w.write_record([
            e.cluster_id.to_string(),
            e.size.to_string(),
            e.top_terms.join(" "),
            e.mean_duration_min.map(|m| format!("{m:.3}")).unwrap_or_default(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<catalog csv>", e))?;
    Ok(())
}
