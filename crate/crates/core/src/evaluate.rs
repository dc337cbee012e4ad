//! Accuracy metrics, manual-plan deviation reports, histograms and the
//! planning floor.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::{Error, Phase, Result};

pub const DEFAULT_TOLERANCE: f64 = 0.20;
pub const PLAN_BIN_WIDTH_MIN: f64 = 3.0;

/// Percentage metrics skip rows whose actual duration is not positive; their
/// number is `excluded_non_positive`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub n: usize,
    pub mae: f64,
    pub rmse: f64,
    /// Mean absolute percentage deviation, in percent.
    pub mape: Option<f64>,
    pub median_abs_pct_dev: Option<f64>,
    /// `None` when the actual durations have zero variance.
    pub r2: Option<f64>,
    /// Median absolute error in minutes.
    pub median_abs_dev: f64,
    /// Signed mean of `(predicted - actual) / actual`, in percent.
    pub mean_pct_dev: Option<f64>,
    pub within_tol_rate: Option<f64>,
    pub tolerance: f64,
    pub excluded_non_positive: usize,
}

fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    })
}

fn check_pairs(actual: &[f64], predicted: &[f64]) -> Result<()> {
    if actual.len() != predicted.len() {
        return Err(Error::DimensionMismatch {
            expected: actual.len(),
            got: predicted.len(),
        });
    }
    if actual.is_empty() {
        return Err(Error::InsufficientData("no rows to evaluate".into()));
    }
    if actual.iter().chain(predicted).any(|v| !v.is_finite()) {
        return Err(Error::InvalidInput("non-finite duration in evaluation".into()));
    }
    Ok(())
}

pub fn compute_metrics(actual: &[f64], predicted: &[f64], tolerance: f64) -> Result<MetricsReport> {
    check_pairs(actual, predicted)?;
    if !(tolerance >= 0.0) {
        return Err(Error::InvalidInput(format!("tolerance must be >= 0, got {tolerance}")));
    }
    let n = actual.len();
    let abs_err: Vec<f64> = actual.iter().zip(predicted).map(|(a, p)| (p - a).abs()).collect();
    let mae = abs_err.iter().sum::<f64>() / n as f64;
    let sse: f64 = abs_err.iter().map(|e| e * e).sum();
    let rmse = (sse / n as f64).sqrt();
    let mean_actual = actual.iter().sum::<f64>() / n as f64;
    let sst: f64 = actual.iter().map(|a| (a - mean_actual).powi(2)).sum();
    let r2 = (sst > 0.0).then(|| 1.0 - sse / sst);

    let pct: Vec<f64> = actual
        .iter()
        .zip(predicted)
        .filter(|(a, _)| **a > 0.0)
        .map(|(a, p)| (p - a) / a)
        .collect();
    let m = pct.len();
    let abs_pct: Vec<f64> = pct.iter().map(|d| d.abs()).collect();
    let mean_of = |v: &[f64]| (m > 0).then(|| 100.0 * v.iter().sum::<f64>() / m as f64);
    Ok(MetricsReport {
        n,
        mae,
        rmse: rmse.max(mae),
        mape: mean_of(&abs_pct),
        median_abs_pct_dev: median(abs_pct.clone()).map(|v| 100.0 * v),
        r2,
        median_abs_dev: median(abs_err).unwrap_or(0.0),
        mean_pct_dev: mean_of(&pct),
        within_tol_rate: (m > 0)
            .then(|| abs_pct.iter().filter(|d| **d <= tolerance).count() as f64 / m as f64),
        tolerance,
        excluded_non_positive: n - m,
    })
}

/// One source of duration estimates compared against actual durations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationRow {
    pub source: String,
    pub n: usize,
    /// Mean `|%dev|`, in percent.
    pub mean_abs_pct_dev: f64,
    pub median_abs_pct_dev: f64,
    pub share_beyond_tol: f64,
    pub mae: f64,
    /// Manual mean `|%dev|` minus this row's, in percentage points.
    pub improvement_pp: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeviationReport {
    pub phase: Phase,
    pub tolerance: f64,
    pub manual: DeviationRow,
    pub models: Vec<DeviationRow>,
}

impl DeviationReport {
    pub fn model(&self, name: &str) -> Option<&DeviationRow> {
        self.models.iter().find(|r| r.source == name)
    }
}

fn deviation_row(source: &str, actual: &[f64], estimate: &[f64], tolerance: f64) -> DeviationRow {
    let dev: Vec<f64> = actual
        .iter()
        .zip(estimate)
        .map(|(a, e)| ((e - a) / a).abs())
        .collect();
    let n = dev.len();
    DeviationRow {
        source: source.to_string(),
        n,
        mean_abs_pct_dev: 100.0 * dev.iter().sum::<f64>() / n as f64,
        median_abs_pct_dev: 100.0 * median(dev.clone()).unwrap_or(0.0),
        share_beyond_tol: dev.iter().filter(|d| **d > tolerance).count() as f64 / n as f64,
        mae: actual.iter().zip(estimate).map(|(a, e)| (e - a).abs()).sum::<f64>() / n as f64,
        improvement_pp: 0.0,
    }
}

/// Compare manual plans and model predictions on the rows that have a plan
/// and a positive actual duration.
pub fn compare_to_plan(
    phase: Phase,
    actual: &[f64],
    planned: &[Option<f64>],
    model_predictions: &[(String, Vec<f64>)],
    tolerance: f64,
) -> Result<DeviationReport> {
    if planned.len() != actual.len() {
        return Err(Error::DimensionMismatch {
            expected: actual.len(),
            got: planned.len(),
        });
    }
    for (_, p) in model_predictions {
        if p.len() != actual.len() {
            return Err(Error::DimensionMismatch {
                expected: actual.len(),
                got: p.len(),
            });
        }
    }
    let rows: Vec<usize> = (0..actual.len())
        .filter(|&i| actual[i] > 0.0 && planned[i].is_some_and(f64::is_finite))
        .collect();
    if rows.is_empty() {
        return Err(Error::InsufficientData(format!(
            "no {phase} cases carry a planned duration"
        )));
    }
    let act: Vec<f64> = rows.iter().map(|&i| actual[i]).collect();
    let plan: Vec<f64> = rows.iter().map(|&i| planned[i].unwrap_or_default()).collect();
    let manual = deviation_row("manual", &act, &plan, tolerance);
    let models = model_predictions
        .iter()
        .map(|(name, pred)| {
            let est: Vec<f64> = rows.iter().map(|&i| pred[i]).collect();
            let mut row = deviation_row(name, &act, &est, tolerance);
            row.improvement_pp = manual.mean_abs_pct_dev - row.mean_abs_pct_dev;
            row
        })
        .collect();
    Ok(DeviationReport {
        phase,
        tolerance,
        manual,
        models,
    })
}

/// Counts over half-open bins `[k*w, (k+1)*w)`, contiguous from the lowest
/// to the highest occupied bin.
pub fn histogram(values: &[f64], bin_width: f64) -> Result<Vec<(f64, usize)>> {
    if !(bin_width > 0.0) || !bin_width.is_finite() {
        return Err(Error::InvalidInput(format!("bin width must be > 0, got {bin_width}")));
    }
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for v in values.iter().filter(|v| v.is_finite()) {
        *counts.entry((v / bin_width).floor() as i64).or_default() += 1;
    }
    let (Some(&lo), Some(&hi)) = (counts.keys().next(), counts.keys().next_back()) else {
        return Ok(Vec::new());
    };
    Ok((lo..=hi)
        .map(|k| (k as f64 * bin_width, counts.get(&k).copied().unwrap_or(0)))
        .collect())
}

pub fn write_histogram_csv<W: Write>(bins: &[(f64, usize)], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["bin_start_min", "count"])?;
    for (start, count) in bins {
        w.write_record([start.to_string(), count.to_string()])?;
    }
    w.flush().map_err(|e| Error::io("<histogram csv>", e))?;
    Ok(())
}

/// Static bar chart of one or more binned series drawn side by side.
pub fn histogram_svg(title: &str, series: &[(&str, &[(f64, usize)])]) -> String {
    const W: f64 = 800.0;
    const H: f64 = 400.0;
    const PAD: f64 = 40.0;
    const COLOURS: [&str; 4] = ["#4477aa", "#ee6677", "#228833", "#ccbb44"];
    let starts: Vec<f64> = series.iter().flat_map(|(_, b)| b.iter().map(|x| x.0)).collect();
    let lo = starts.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = starts.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let width = series
        .iter()
        .find_map(|(_, b)| (b.len() > 1).then(|| b[1].0 - b[0].0))
        .unwrap_or(1.0);
    let max_count = series
        .iter()
        .flat_map(|(_, b)| b.iter().map(|x| x.1))
        .max()
        .unwrap_or(0)
        .max(1);
    let n_bins = if starts.is_empty() {
        1.0
    } else {
        ((hi - lo) / width).round() + 1.0
    };
    let slot = (W - 2.0 * PAD) / n_bins;
    let bar = slot / series.len().max(1) as f64;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(s, r#"<text x="{PAD}" y="20" font-family="sans-serif" font-size="14">{}</text>"#, escape(title));
    for (si, (name, bins)) in series.iter().enumerate() {
        let colour = COLOURS[si % COLOURS.len()];
        let _ = writeln!(
            s,
            r#"<text x="{}" y="20" font-family="sans-serif" font-size="12" fill="{colour}">{}</text>"#,
            W - PAD - 150.0,
            escape(name)
        );
        let _ = writeln!(s, r#"<g fill="{colour}">"#);
        for &(start, count) in bins.iter() {
            if count == 0 {
                continue;
            }
            let h = (H - 2.0 * PAD) * count as f64 / max_count as f64;
            let x = PAD + ((start - lo) / width).round() * slot + si as f64 * bar;
            let _ = writeln!(
                s,
                r#"<rect x="{x:.2}" y="{:.2}" width="{:.2}" height="{h:.2}"/>"#,
                H - PAD - h,
                bar.max(0.5)
            );
        }
        let _ = writeln!(s, "</g>");
    }
    let _ = writeln!(
        s,
        r#"<line x1="{PAD}" y1="{y}" x2="{x2}" y2="{y}" stroke="black"/>"#,
        y = H - PAD,
        x2 = W - PAD
    );
    if !starts.is_empty() {
        let _ = writeln!(
            s,
            r#"<text x="{PAD}" y="{}" font-family="sans-serif" font-size="11">{lo} min</text>"#,
            H - PAD + 16.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" text-anchor="end">{} min</text>"#,
            W - PAD,
            H - PAD + 16.0,
            hi + width
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Minimum plannable duration per phase, in minutes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlanningFloors {
    pub induction: f64,
    pub preparation: f64,
    pub procedure: f64,
}

impl Default for PlanningFloors {
    fn default() -> Self {
        Self {
            induction: 20.0,
            preparation: 0.0,
            procedure: 0.0,
        }
    }
}

impl PlanningFloors {
    pub fn get(&self, phase: Phase) -> f64 {
        match phase {
            Phase::Induction => self.induction,
            Phase::Preparation => self.preparation,
            Phase::Procedure => self.procedure,
        }
    }
}

pub fn apply_planning_floor(prediction: f64, phase: Phase, floors: &PlanningFloors) -> f64 {
    prediction.max(floors.get(phase))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_row_metrics() {
        let m = compute_metrics(&[100.0], &[90.0], 0.2).unwrap();
        assert_eq!(m.mae, 10.0);
        assert!((m.mape.unwrap() - 10.0).abs() < 1e-12);
        assert!((m.mean_pct_dev.unwrap() + 10.0).abs() < 1e-12);
        assert_eq!(m.within_tol_rate, Some(1.0));
        assert_eq!(m.r2, None);
    }

    #[test]
    fn perfect_and_constant_predictors() {
        let a = [10.0, 20.0, 45.0, 70.0];
        let m = compute_metrics(&a, &a, 0.2).unwrap();
        assert_eq!((m.mae, m.rmse, m.median_abs_dev), (0.0, 0.0, 0.0));
        assert_eq!(m.r2, Some(1.0));
        let mean = a.iter().sum::<f64>() / 4.0;
        let m = compute_metrics(&a, &[mean; 4], 0.2).unwrap();
        assert!(m.r2.unwrap().abs() < 1e-12);
    }

    #[test]
    fn zero_actuals_are_excluded_and_counted() {
        let m = compute_metrics(&[0.0, 50.0], &[5.0, 55.0], 0.2).unwrap();
        assert_eq!(m.excluded_non_positive, 1);
        assert!((m.mape.unwrap() - 10.0).abs() < 1e-12);
        assert_eq!(m.mae, 5.0);
        assert!(compute_metrics(&[1.0], &[1.0, 2.0], 0.2).is_err());
    }

    #[test]
    fn plan_comparison() {
        let actual = [100.0, 50.0, 20.0, 80.0];
        let planned = [Some(60.0), Some(60.0), None, Some(120.0)];
        let model = vec![100.0, 45.0, 20.0, 80.0];
        let r = compare_to_plan(Phase::Procedure, &actual, &planned, &[("m".into(), model)], 0.2).unwrap();
        assert_eq!(r.manual.n, 3);
        let manual = 100.0 * (0.4 + 0.2 + 0.5) / 3.0;
        assert!((r.manual.mean_abs_pct_dev - manual).abs() < 1e-9);
        assert!((r.manual.share_beyond_tol - 2.0 / 3.0).abs() < 1e-12);
        let m = r.model("m").unwrap();
        assert!((m.improvement_pp - (manual - 100.0 * 0.1 / 3.0)).abs() < 1e-9);
    }

    #[test]
    fn plan_identity_and_antisymmetry() {
        let actual = [30.0, 45.0, 90.0, 12.0];
        let plan = [45.0, 45.0, 60.0, 0.0];
        let model = [33.0, 40.0, 70.0, 20.0];
        let planned: Vec<Option<f64>> = plan.iter().map(|&p| Some(p)).collect();
        let r = compare_to_plan(Phase::Procedure, &actual, &planned, &[("same".into(), plan.to_vec())], 0.2).unwrap();
        assert_eq!(r.models[0].improvement_pp, 0.0);

        let fwd = compare_to_plan(Phase::Procedure, &actual, &planned, &[("m".into(), model.to_vec())], 0.2).unwrap();
        let swapped: Vec<Option<f64>> = model.iter().map(|&p| Some(p)).collect();
        let back = compare_to_plan(Phase::Procedure, &actual, &swapped, &[("p".into(), plan.to_vec())], 0.2).unwrap();
        assert!((fwd.models[0].improvement_pp + back.models[0].improvement_pp).abs() < 1e-12);
    }

    #[test]
    fn plan_comparison_needs_plans() {
        assert!(compare_to_plan(Phase::Induction, &[10.0], &[None], &[], 0.2).is_err());
    }

    #[test]
    fn histogram_bins() {
        assert_eq!(histogram(&[1.0, 2.0, 4.0], 3.0).unwrap(), vec![(0.0, 2), (3.0, 1)]);
        assert!(histogram(&[], 3.0).unwrap().is_empty());
        assert_eq!(histogram(&[0.0, 7.0], 3.0).unwrap(), vec![(0.0, 1), (3.0, 0), (6.0, 1)]);
        assert!(histogram(&[1.0], 0.0).is_err());
        let mut buf = Vec::new();
        write_histogram_csv(&[(0.0, 2), (3.0, 1)], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "bin_start_min,count\n0,2\n3,1\n");
    }

    #[test]
    fn svg_is_well_formed() {
        let bins = histogram(&[15.0, 30.0, 30.0, 45.0], 3.0).unwrap();
        let svg = histogram_svg("plans <all>", &[("manual", &bins)]);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
        assert_eq!(svg.matches("<rect").count(), 3);
        assert!(svg.contains("plans &lt;all&gt;"));
    }

    #[test]
    fn planning_floor() {
        let f = PlanningFloors::default();
        assert_eq!(apply_planning_floor(12.0, Phase::Induction, &f), 20.0);
        assert_eq!(apply_planning_floor(35.0, Phase::Induction, &f), 35.0);
        assert_eq!(apply_planning_floor(5.0, Phase::Procedure, &f), 5.0);
    }

    fn pairs() -> impl Strategy<Value = Vec<(f64, f64)>> {
        prop::collection::vec((0.5f64..500.0, 0.0f64..600.0), 1..50)
    }

    proptest! {
        #[test]
        fn rmse_dominates_mae(p in pairs()) {
            let (a, q): (Vec<f64>, Vec<f64>) = p.into_iter().unzip();
            let m = compute_metrics(&a, &q, 0.2).unwrap();
            prop_assert!(m.rmse >= m.mae && m.mae >= 0.0 && m.median_abs_dev >= 0.0);
            let w = m.within_tol_rate.unwrap();
            prop_assert!((0.0..=1.0).contains(&w));
        }

        #[test]
        fn metrics_permutation_invariant(p in pairs()) {
            let (a, q): (Vec<f64>, Vec<f64>) = p.iter().copied().unzip();
            let (ra, rq): (Vec<f64>, Vec<f64>) = p.iter().rev().copied().unzip();
            let x = compute_metrics(&a, &q, 0.2).unwrap();
            let y = compute_metrics(&ra, &rq, 0.2).unwrap();
            prop_assert!((x.mae - y.mae).abs() < 1e-9);
            prop_assert!((x.rmse - y.rmse).abs() < 1e-9);
            prop_assert_eq!(x.within_tol_rate, y.within_tol_rate);
            prop_assert_eq!(x.median_abs_dev, y.median_abs_dev);
        }

        #[test]
        fn within_rate_monotone_in_tolerance(p in pairs(), t1 in 0.0f64..1.0, dt in 0.0f64..1.0) {
            let (a, q): (Vec<f64>, Vec<f64>) = p.into_iter().unzip();
            let lo = compute_metrics(&a, &q, t1).unwrap().within_tol_rate.unwrap();
            let hi = compute_metrics(&a, &q, t1 + dt).unwrap().within_tol_rate.unwrap();
            prop_assert!(hi >= lo);
        }

        #[test]
        fn histogram_counts_sum_to_n(v in prop::collection::vec(-100.0f64..1000.0, 0..80), w in 0.5f64..20.0) {
            let bins = histogram(&v, w).unwrap();
            prop_assert_eq!(bins.iter().map(|b| b.1).sum::<usize>(), v.len());
        }
    }
}
