//! CART regression trees on exact distinct-value bins.

use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TreeParams {
    pub max_depth: usize,
    pub min_leaf: usize,
}

impl Default for TreeParams {
    fn default() -> Self {
        Self {
            max_depth: 8,
            min_leaf: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "lowercase")]
pub enum Node {
    Leaf {
        value: f64,
    },
    /// Rows with `x[feature] < threshold` go left.
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: Vec<Node>,
}

impl Tree {
    pub fn predict(&self, x: &[f64]) -> f64 {
        let mut i = 0;
        loop {
            match &self.nodes[i] {
                Node::Leaf { value } => return *value,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => i = if x[*feature] < *threshold { *left } else { *right },
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], i: usize) -> usize {
            match &nodes[i] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, *left).max(walk(nodes, *right)),
            }
        }
        walk(&self.nodes, 0)
    }
}

/// Feature columns recoded as ranks among their distinct sorted values.
pub(crate) struct Binned {
    codes: Vec<Vec<u32>>,
    values: Vec<Vec<f64>>,
}

impl Binned {
    pub(crate) fn new(x: &[Vec<f64>], d: usize) -> Self {
        let mut codes = Vec::with_capacity(d);
        let mut values = Vec::with_capacity(d);
        for f in 0..d {
            let mut v: Vec<f64> = x.iter().map(|r| r[f]).collect();
            v.sort_by(f64::total_cmp);
            v.dedup();
            let col = x
                .iter()
                .map(|r| v.partition_point(|&u| u < r[f]) as u32)
                .collect();
            codes.push(col);
            values.push(v);
        }
        Self { codes, values }
    }

    pub(crate) fn n_features(&self) -> usize {
        self.codes.len()
    }
}

/// Per-split feature sampling; `None` considers every feature.
pub(crate) struct FeatureSampler<'r, R: Rng> {
    pub rng: &'r mut R,
    pub per_split: usize,
}

struct Best {
    feature: usize,
    code: u32,
    threshold: f64,
    gain: f64,
}

pub(crate) fn build_tree<R: Rng>(
    data: &Binned,
    y: &[f64],
    rows: Vec<usize>,
    params: TreeParams,
    mut sampler: Option<FeatureSampler<'_, R>>,
) -> Tree {
    let mut nodes = Vec::new();
    let max_bins = data.values.iter().map(Vec::len).max().unwrap_or(0);
    let mut hist = vec![(0.0f64, 0usize); max_bins];
    grow(data, y, rows, 0, params, &mut sampler, &mut hist, &mut nodes);
    Tree { nodes }
}

#[allow(clippy::too_many_arguments)]
fn grow<R: Rng>(
    data: &Binned,
    y: &[f64],
    rows: Vec<usize>,
    depth: usize,
    params: TreeParams,
    sampler: &mut Option<FeatureSampler<'_, R>>,
    hist: &mut [(f64, usize)],
    nodes: &mut Vec<Node>,
) -> usize {
    let id = nodes.len();
    let n = rows.len();
    let mean = rows.iter().map(|&i| y[i]).sum::<f64>() / n.max(1) as f64;
    nodes.push(Node::Leaf { value: mean });

    let (lo, hi) = rows.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &i| {
        (lo.min(y[i]), hi.max(y[i]))
    });
    if depth >= params.max_depth || n < 2 * params.min_leaf.max(1) || lo == hi {
        return id;
    }

    let d = data.n_features();
    let features: Vec<usize> = match sampler {
        Some(s) if s.per_split < d => {
            let mut f = sample(s.rng, d, s.per_split).into_vec();
            f.sort_unstable();
            f
        }
        _ => (0..d).collect(),
    };

    let min_leaf = params.min_leaf.max(1);
    let total: f64 = rows.iter().map(|&i| y[i] - mean).sum();
    let mut touched: Vec<u32> = Vec::new();
    let mut best: Option<Best> = None;
    for &f in &features {
        let codes = &data.codes[f];
        let vals = &data.values[f];
        touched.clear();
        for &i in &rows {
            let c = codes[i];
            let h = &mut hist[c as usize];
            if h.1 == 0 {
                touched.push(c);
            }
            h.0 += y[i] - mean;
            h.1 += 1;
        }
        touched.sort_unstable();
        let mut left_sum = 0.0;
        let mut left_n = 0usize;
        for w in touched.windows(2) {
            let (p, b) = (w[0] as usize, w[1] as usize);
            let (s, c) = hist[p];
            left_sum += s;
            left_n += c;
            let right_n = n - left_n;
            if left_n < min_leaf {
                continue;
            }
            if right_n < min_leaf {
                break;
            }
            let right_sum = total - left_sum;
            let gain = left_sum * left_sum / left_n as f64
                + right_sum * right_sum / right_n as f64
                - total * total / n as f64;
            if gain > 0.0 && best.as_ref().is_none_or(|bst| gain > bst.gain) {
                let mut t = 0.5 * (vals[p] + vals[b]);
                if t <= vals[p] {
                    t = vals[b];
                }
                best = Some(Best {
                    feature: f,
                    code: p as u32,
                    threshold: t,
                    gain,
                });
            }
        }
        for &c in &touched {
            hist[c as usize] = (0.0, 0);
        }
    }

    let Some(best) = best else {
        return id;
    };
    let codes = &data.codes[best.feature];
    let (left_rows, right_rows): (Vec<usize>, Vec<usize>) =
        rows.into_iter().partition(|&i| codes[i] <= best.code);
    let left = grow(data, y, left_rows, depth + 1, params, sampler, hist, nodes);
    let right = grow(data, y, right_rows, depth + 1, params, sampler, hist, nodes);
    nodes[id] = Node::Split {
        feature: best.feature,
        threshold: best.threshold,
        left,
        right,
    };
    id
}
