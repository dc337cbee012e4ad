//! Welch t, one-way ANOVA and Kruskal-Wallis tests with two-sided p-values.

mod special;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

pub use special::{
    chi_square_upper_tail, f_upper_tail, ln_gamma, reg_inc_beta, reg_inc_gamma_p, reg_inc_gamma_q,
    student_t_two_sided,
};

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub test_name: String,
    pub statistic: f64,
    pub degrees_of_freedom: Vec<f64>,
    pub p_value: f64,
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn sample_variance(xs: &[f64]) -> f64 {
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64
}

fn require_finite(xs: &[f64]) -> Result<()> {
    if xs.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidInput("sample contains non-finite values".into()))
    }
}

/// Welch's unequal-variance t-test with Welch-Satterthwaite degrees of
/// freedom.
pub fn welch_t_test(a: &[f64], b: &[f64]) -> Result<TestResult> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::InsufficientData("each sample needs at least two values".into()));
    }
    require_finite(a)?;
    require_finite(b)?;
    let (va, vb) = (sample_variance(a), sample_variance(b));
    if va == 0.0 && vb == 0.0 {
        return Err(Error::InvalidInput("both samples have zero variance".into()));
    }
    let (sa, sb) = (va / a.len() as f64, vb / b.len() as f64);
    let t = (mean(a) - mean(b)) / (sa + sb).sqrt();
    let df = (sa + sb).powi(2)
        / (sa * sa / (a.len() - 1) as f64 + sb * sb / (b.len() - 1) as f64);
    Ok(TestResult {
        test_name: "welch_t".into(),
        statistic: t,
        degrees_of_freedom: vec![df],
        p_value: student_t_two_sided(t, df)?,
    })
}

/// One-way analysis of variance.
pub fn anova_f_test(groups: &[&[f64]]) -> Result<TestResult> {
    if groups.len() < 2 || groups.iter().any(|g| g.is_empty()) {
        return Err(Error::InsufficientData("ANOVA needs at least two non-empty groups".into()));
    }
    for g in groups {
        require_finite(g)?;
    }
    let n: usize = groups.iter().map(|g| g.len()).sum();
    if n <= groups.len() {
        return Err(Error::InsufficientData("ANOVA needs more observations than groups".into()));
    }
    let grand = groups.iter().flat_map(|g| g.iter()).sum::<f64>() / n as f64;
    let mut ssb = 0.0;
    let mut ssw = 0.0;
    for g in groups {
        let m = mean(g);
        ssb += g.len() as f64 * (m - grand).powi(2);
        ssw += g.iter().map(|x| (x - m).powi(2)).sum::<f64>();
    }
    if ssw <= 0.0 {
        return Err(Error::InvalidInput("zero within-group variance".into()));
    }
    let df_b = (groups.len() - 1) as f64;
    let df_w = (n - groups.len()) as f64;
    let f = (ssb / df_b) / (ssw / df_w);
    Ok(TestResult {
        test_name: "anova_f".into(),
        statistic: f,
        degrees_of_freedom: vec![df_b, df_w],
        p_value: f_upper_tail(f, df_b, df_w)?,
    })
}

/// Average ranks (1-based) with ties sharing their mid-rank; also returns
/// the tie sizes.
fn midranks(values: &[f64]) -> (Vec<f64>, Vec<usize>) {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut ties = Vec::new();
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let rank = (start + end + 1) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = rank;
        }
        if end - start > 1 {
            ties.push(end - start);
        }
        start = end;
    }
    (ranks, ties)
}

/// Kruskal-Wallis H test with tie correction, chi-square approximation.
pub fn kruskal_wallis(groups: &[&[f64]]) -> Result<TestResult> {
    if groups.len() < 2 || groups.iter().any(|g| g.is_empty()) {
        return Err(Error::InsufficientData(
            "Kruskal-Wallis needs at least two non-empty groups".into(),
        ));
    }
    for g in groups {
        require_finite(g)?;
    }
    let all: Vec<f64> = groups.iter().flat_map(|g| g.iter().copied()).collect();
    let n = all.len() as f64;
    if all.len() < 3 {
        return Err(Error::InsufficientData("Kruskal-Wallis needs at least three values".into()));
    }
    let (ranks, ties) = midranks(&all);
    let correction = 1.0 - ties.iter().map(|&t| (t * t * t - t) as f64).sum::<f64>() / (n * n * n - n);
    if correction <= 0.0 {
        return Err(Error::InvalidInput("all values are identical".into()));
    }
    let mut offset = 0;
    let mut sum = 0.0;
    for g in groups {
        let r: f64 = ranks[offset..offset + g.len()].iter().sum();
        sum += r * r / g.len() as f64;
        offset += g.len();
    }
    let h = (12.0 / (n * (n + 1.0)) * sum - 3.0 * (n + 1.0)) / correction;
    let df = (groups.len() - 1) as f64;
    Ok(TestResult {
        test_name: "kruskal_wallis".into(),
        statistic: h,
        degrees_of_freedom: vec![df],
        p_value: chi_square_upper_tail(h.max(0.0), df)?,
    })
}

/// One row of the per-factor test battery.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FactorTest {
    pub factor: String,
    pub groups: usize,
    pub result: TestResult,
    /// Largest minus smallest group mean, in minutes.
    pub practical_effect_min: f64,
}

/// Run the parametric test (Welch t for two levels, ANOVA otherwise) and
/// Kruskal-Wallis for one factor. Levels with fewer than two observations
/// are dropped; tests that cannot be computed are skipped.
pub fn factor_tests(factor: &str, levels: &BTreeMap<String, Vec<f64>>) -> Vec<FactorTest> {
    let groups: Vec<&[f64]> = levels
        .values()
        .filter(|v| v.len() >= 2)
        .map(Vec::as_slice)
        .collect();
    if groups.len() < 2 {
        return Vec::new();
    }
    let means: Vec<f64> = groups.iter().map(|g| mean(g)).collect();
    let effect = means.iter().copied().fold(f64::NEG_INFINITY, f64::max)
        - means.iter().copied().fold(f64::INFINITY, f64::min);
    let parametric = if groups.len() == 2 {
        welch_t_test(groups[0], groups[1])
    } else {
        anova_f_test(&groups)
    };
    [parametric, kruskal_wallis(&groups)]
        .into_iter()
        .filter_map(Result::ok)
        .map(|result| FactorTest {
            factor: factor.to_string(),
            groups: groups.len(),
            result,
            practical_effect_min: effect,
        })
        .collect()
}
