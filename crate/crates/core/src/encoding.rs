//! One-hot and smoothed target encodings of categorical features.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const DEFAULT_SMOOTHING: f64 = 40.0;

/// Ordered category list for one variable; unknown values encode as zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneHotSchema {
    pub variable: String,
    pub categories: Vec<String>,
}

impl OneHotSchema {
    /// Distinct values in lexicographic order.
    pub fn fit<'a>(variable: &str, values: impl IntoIterator<Item = &'a str>) -> Self {
        let set: std::collections::BTreeSet<&str> = values.into_iter().collect();
        Self {
            variable: variable.to_string(),
            categories: set.into_iter().map(str::to_string).collect(),
        }
    }

    pub fn from_categories(variable: &str, categories: Vec<String>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        for c in &categories {
            if !seen.insert(c.as_str()) {
                return Err(Error::InvalidInput(format!(
                    "duplicate category `{c}` for `{variable}`"
                )));
            }
        }
        Ok(Self {
            variable: variable.to_string(),
            categories,
        })
    }

    pub fn width(&self) -> usize {
        self.categories.len()
    }

    pub fn index_of(&self, value: &str) -> Option<usize> {
        self.categories.iter().position(|c| c == value)
    }

    /// Column names `variable=category`.
    pub fn feature_names(&self) -> Vec<String> {
        self.categories
            .iter()
            .map(|c| format!("{}={c}", self.variable))
            .collect()
    }
}

pub fn one_hot(schema: &OneHotSchema, value: &str) -> Vec<f64> {
    let mut row = vec![0.0; schema.width()];
    if let Some(i) = schema.index_of(value) {
        row[i] = 1.0;
    }
    row
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CategoryStats {
    pub count: usize,
    pub mean: f64,
}

/// Additive-smoothing target encoder: `(n·ȳ_c + m·ȳ) / (n + m)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TargetEncoder {
    pub smoothing: f64,
    pub prior: f64,
    pub categories: BTreeMap<String, CategoryStats>,
}

impl TargetEncoder {
    pub fn encode(&self, category: &str) -> f64 {
        match self.categories.get(category) {
            Some(s) => {
                let n = s.count as f64;
                (n * s.mean + self.smoothing * self.prior) / (n + self.smoothing)
            }
            None => self.prior,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let enc: Self = serde_json::from_str(text)?;
        if !enc.prior.is_finite() || !(enc.smoothing >= 0.0) {
            return Err(Error::InvalidInput("target encoder has invalid prior or smoothing".into()));
        }
        Ok(enc)
    }
}

pub fn target_encode_fit<S: AsRef<str>>(
    categories: &[S],
    targets: &[f64],
    smoothing: f64,
) -> Result<TargetEncoder> {
    if categories.is_empty() {
        return Err(Error::InsufficientData("target encoding needs at least one row".into()));
    }
    if categories.len() != targets.len() {
        return Err(Error::DimensionMismatch {
            expected: categories.len(),
            got: targets.len(),
        });
    }
    if !(smoothing >= 0.0) || !smoothing.is_finite() {
        return Err(Error::InvalidInput(format!("smoothing must be >= 0, got {smoothing}")));
    }
    if targets.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidInput("non-finite target".into()));
    }
    // Sums keyed by category so the result does not depend on row order
    // beyond floating-point summation.
    let mut sums: BTreeMap<String, (usize, Vec<f64>)> = BTreeMap::new();
    for (c, &y) in categories.iter().zip(targets) {
        let e = sums.entry(c.as_ref().to_string()).or_default();
        e.0 += 1;
        e.1.push(y);
    }
    let prior = sorted_mean(targets.to_vec());
    let categories = sums
        .into_iter()
        .map(|(c, (count, ys))| (c, CategoryStats { count, mean: sorted_mean(ys) }))
        .collect();
    Ok(TargetEncoder {
        smoothing,
        prior,
        categories,
    })
}

/// Mean over values summed in sorted order, so any permutation gives the
/// same bits.
fn sorted_mean(mut ys: Vec<f64>) -> f64 {
    ys.sort_by(f64::total_cmp);
    ys.iter().sum::<f64>() / ys.len() as f64
}

pub fn target_encode_apply<S: AsRef<str>>(encoder: &TargetEncoder, categories: &[S]) -> Vec<f64> {
    categories.iter().map(|c| encoder.encode(c.as_ref())).collect()
}
