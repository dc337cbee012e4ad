//! Removal of missing, implausible and outlying phase durations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::eventlog::{Case, Phase};
use crate::{Error, Result};

/// Durations above two days are treated as documentation errors.
pub const MAX_PLAUSIBLE_MIN: f64 = 48.0 * 60.0;

/// Smallest sample for which quartile bounds are computed.
pub const MIN_IQR_SAMPLES: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IqrConfig {
    pub multiplier: f64,
}

impl Default for IqrConfig {
    fn default() -> Self {
        Self { multiplier: 1.5 }
    }
}

impl IqrConfig {
    pub fn validate(&self) -> Result<()> {
        if self.multiplier.is_finite() && self.multiplier > 0.0 {
            Ok(())
        } else {
            Err(Error::Config(format!(
                "IQR multiplier must be positive, got {}",
                self.multiplier
            )))
        }
    }
}

/// Quantile by linear interpolation between order statistics at rank
/// `(n - 1) * q` (R's type 7).
pub fn quantile(samples: &[f64], q: f64) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::InsufficientData("quantile of an empty sample".into()));
    }
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidInput(format!("quantile level {q} outside [0, 1]")));
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidInput("non-finite sample".into()));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(quantile_sorted(&sorted, q))
}

fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IqrBounds {
    pub q1: f64,
    pub q3: f64,
    pub low: f64,
    pub high: f64,
}

impl IqrBounds {
    pub fn contains(&self, x: f64) -> bool {
        self.low <= x && x <= self.high
    }
}

#[derive(Debug, Clone)]
pub struct IqrOutcome<T> {
    pub retained: Vec<(T, f64)>,
    pub removed_low: Vec<(T, f64)>,
    pub removed_high: Vec<(T, f64)>,
    pub bounds: IqrBounds,
}

pub fn iqr_bounds(values: &[f64], cfg: IqrConfig) -> Result<IqrBounds> {
    cfg.validate()?;
    if values.len() < MIN_IQR_SAMPLES {
        return Err(Error::InsufficientData(format!(
            "IQR filter needs at least {MIN_IQR_SAMPLES} samples, got {}",
            values.len()
        )));
    }
    let q1 = quantile(values, 0.25)?;
    let q3 = quantile(values, 0.75)?;
    let spread = cfg.multiplier * (q3 - q1);
    Ok(IqrBounds {
        q1,
        q3,
        low: q1 - spread,
        high: q3 + spread,
    })
}

/// Keep samples inside `[Q1 - m*IQR, Q3 + m*IQR]`; input order is preserved
/// within each output list.
pub fn iqr_filter<T: Clone>(samples: &[(T, f64)], cfg: IqrConfig) -> Result<IqrOutcome<T>> {
    let values: Vec<f64> = samples.iter().map(|(_, x)| *x).collect();
    let bounds = iqr_bounds(&values, cfg)?;
    let mut out = IqrOutcome {
        retained: Vec::new(),
        removed_low: Vec::new(),
        removed_high: Vec::new(),
        bounds,
    };
    for s in samples {
        if s.1 < bounds.low {
            out.removed_low.push(s.clone());
        } else if s.1 > bounds.high {
            out.removed_high.push(s.clone());
        } else {
            out.retained.push(s.clone());
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CleaningReport {
    pub phase: Option<Phase>,
    pub input: usize,
    pub missing: usize,
    pub negative_or_zero: usize,
    pub excessive: usize,
    pub iqr_low: usize,
    pub iqr_high: usize,
    pub retained: usize,
    /// Bounds per IQR group; the key is `"all"` or a department name.
    pub bounds: BTreeMap<String, IqrBounds>,
    /// Departments too small for quartile bounds, kept unfiltered.
    pub unfiltered_groups: Vec<String>,
}

impl CleaningReport {
    pub fn removed(&self) -> usize {
        self.missing + self.negative_or_zero + self.excessive + self.iqr_low + self.iqr_high
    }
}

/// Drop cases whose phase duration is missing, non-positive or longer than
/// [`MAX_PLAUSIBLE_MIN`].
pub fn plausibility_filter(cases: &[Case], phase: Phase) -> (Vec<&Case>, CleaningReport) {
    let mut report = CleaningReport {
        phase: Some(phase),
        input: cases.len(),
        ..Default::default()
    };
    let mut kept = Vec::new();
    for case in cases {
        match case.durations.get(phase) {
            None => report.missing += 1,
            Some(d) if !d.is_finite() => report.missing += 1,
            Some(d) if d <= 0.0 => report.negative_or_zero += 1,
            Some(d) if d > MAX_PLAUSIBLE_MIN => report.excessive += 1,
            Some(_) => kept.push(case),
        }
    }
    report.retained = kept.len();
    (kept, report)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[derive(Default)]
pub struct CleaningConfig {
    pub iqr: IqrConfig,
    /// Compute quartile bounds per department instead of over the whole phase.
    pub per_department: bool,
}


/// Plausibility filter followed by the IQR filter for one phase.
pub fn clean_phase<'a>(
    cases: &'a [Case],
    phase: Phase,
    cfg: &CleaningConfig,
) -> Result<(Vec<&'a Case>, CleaningReport)> {
    let (plausible, mut report) = plausibility_filter(cases, phase);

    let mut groups: BTreeMap<String, Vec<(usize, f64)>> = BTreeMap::new();
    for (i, case) in plausible.iter().enumerate() {
        let key = if cfg.per_department {
            case.attributes.department.clone()
        } else {
            "all".to_string()
        };
        let d = case.durations.get(phase).expect("plausible cases carry the phase");
        groups.entry(key).or_default().push((i, d));
    }

    let mut keep = vec![false; plausible.len()];
    for (key, samples) in groups {
        if cfg.per_department && samples.len() < MIN_IQR_SAMPLES {
            for (i, _) in &samples {
                keep[*i] = true;
            }
            report.unfiltered_groups.push(key);
            continue;
        }
        let outcome = iqr_filter(&samples, cfg.iqr)?;
        report.iqr_low += outcome.removed_low.len();
        report.iqr_high += outcome.removed_high.len();
        for (i, _) in &outcome.retained {
            keep[*i] = true;
        }
        report.bounds.insert(key, outcome.bounds);
    }

    let retained: Vec<&Case> = plausible
        .into_iter()
        .zip(keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect();
    report.retained = retained.len();
    Ok((retained, report))
}
