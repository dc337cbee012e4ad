//! Seeded generator of synthetic perioperative event logs with planted
//! ground truth: procedure families rendered as noisy free text, log-normal
//! phase durations, incomplete anchor documentation, implausible records and
//! manual plans quantized to 15 minutes.

pub mod catalog;

use chrono::{DateTime, Duration, FixedOffset, NaiveDate, TimeZone};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::cleaning::{iqr_bounds, IqrConfig};
use crate::eventlog::{write_cases_csv, CaseAttributes, Sex, EVENTS_HEADER};
use crate::{Error, Result};
use catalog::{Anesthesia, Family, FAMILIES};

const PLAN_QUANTUM_MIN: f64 = 15.0;
const INDUCTION_PLAN_QUANTUM_MIN: f64 = 5.0;
const SHORT_PROCEDURE_MIN: f64 = 15.0;
const AGE_RANGE: (u32, u32) = (18, 90);
const AGE_PIVOT: f64 = 54.0;
const MULTI_DAY_EXTRA_MIN: f64 = 3000.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SynthConfig {
    pub n_cases: usize,
    pub n_procedure_families: usize,
    pub synonyms_per_family: usize,
    /// Share of cases documenting both incision and suture.
    pub procedure_coverage: f64,
    /// Share of cases documenting both anesthesia start and completion.
    pub induction_coverage: f64,
    /// Share of cases documenting anesthesia completion, incision and the
    /// patient positioning.
    pub preparation_coverage: f64,
    /// Target mean `|%dev|` of manual procedure plans, as a fraction.
    pub plan_target_abs_dev: f64,
    /// Target mean `|%dev|` of manual induction plans, as a fraction.
    pub induction_plan_target_abs_dev: f64,
    pub plan_missing_rate: f64,
    pub outlier_rate: f64,
    pub female_share: f64,
    pub age_missing_rate: f64,
    pub sex_unknown_rate: f64,
    /// Per-year change of the procedure duration relative to age 54.
    pub age_effect: f64,
    pub start_date: NaiveDate,
    pub span_days: u32,
    pub utc_offset_hours: i32,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            n_cases: 20_000,
            n_procedure_families: 25,
            synonyms_per_family: 4,
            procedure_coverage: 0.6998,
            induction_coverage: 0.4650,
            preparation_coverage: 0.0697,
            plan_target_abs_dev: 0.68,
            induction_plan_target_abs_dev: 0.40,
            plan_missing_rate: 0.02,
            outlier_rate: 0.01,
            female_share: 0.5,
            age_missing_rate: 0.01,
            sex_unknown_rate: 0.01,
            age_effect: 0.002,
            start_date: NaiveDate::from_ymd_opt(2024, 1, 18).expect("valid date"),
            span_days: 371,
            utc_offset_hours: 1,
            seed: 0,
        }
    }
}

impl SynthConfig {
    pub fn validate(&self) -> Result<()> {
        let rates = [
            ("procedure_coverage", self.procedure_coverage),
            ("induction_coverage", self.induction_coverage),
            ("preparation_coverage", self.preparation_coverage),
            ("plan_missing_rate", self.plan_missing_rate),
            ("outlier_rate", self.outlier_rate),
            ("female_share", self.female_share),
            ("age_missing_rate", self.age_missing_rate),
            ("sex_unknown_rate", self.sex_unknown_rate),
        ];
        for (name, v) in rates {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Config(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        if self.n_cases < 100 {
            return Err(Error::Config(format!("n_cases must be >= 100, got {}", self.n_cases)));
        }
        if !(1..=FAMILIES.len()).contains(&self.n_procedure_families) {
            return Err(Error::Config(format!(
                "n_procedure_families must lie in [1, {}]",
                FAMILIES.len()
            )));
        }
        if !(1..=4).contains(&self.synonyms_per_family) {
            return Err(Error::Config("synonyms_per_family must lie in [1, 4]".into()));
        }
        for (name, v) in [
            ("plan_target_abs_dev", self.plan_target_abs_dev),
            ("induction_plan_target_abs_dev", self.induction_plan_target_abs_dev),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be > 0, got {v}")));
            }
        }
        if !(self.age_effect.abs() < 0.01) {
            return Err(Error::Config("age_effect must lie in (-0.01, 0.01)".into()));
        }
        if self.utc_offset_hours.abs() > 14 || self.span_days == 0 {
            return Err(Error::Config("invalid time window".into()));
        }
        Ok(())
    }

    /// Probability that a case documents anesthesia completion and incision.
    /// The two single-phase coverages force a lower bound of `p + i - 1`.
    pub fn completion_incision_rate(&self) -> f64 {
        (self.procedure_coverage + self.induction_coverage - 1.0)
            .max(self.preparation_coverage)
            .min(self.procedure_coverage.min(self.induction_coverage))
    }

    /// Probability that the positioning is documented.
    pub fn positioning_rate(&self) -> f64 {
        let r = self.completion_incision_rate();
        if r > 0.0 {
            (self.preparation_coverage / r).min(1.0)
        } else {
            0.0
        }
    }
}

/// Which anchors a case documents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnchorPattern {
    /// All four anchors.
    Complete,
    /// Anesthesia start, incision and suture.
    NoCompletion,
    /// Anesthesia start, completion and suture.
    NoIncision,
    /// Anesthesia start and suture only.
    StartAndSuture,
}

impl AnchorPattern {
    pub fn has_procedure(self) -> bool {
        matches!(self, AnchorPattern::Complete | AnchorPattern::NoCompletion)
    }

    pub fn has_induction(self) -> bool {
        matches!(self, AnchorPattern::Complete | AnchorPattern::NoIncision)
    }

    pub fn has_preparation(self) -> bool {
        self == AnchorPattern::Complete
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outlier {
    /// Suture recorded before incision.
    NegativeProcedure,
    /// Suture recorded days after incision.
    MultiDayProcedure,
    /// Anesthesia completion recorded before its start.
    NegativeInduction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseTruth {
    pub case_id: String,
    pub family_id: usize,
    pub family: String,
    pub anesthesia: String,
    pub arterial_line: bool,
    pub central_line: bool,
    pub positioning: String,
    pub bilateral: bool,
    pub revision: bool,
    /// Planted durations in minutes, exact to the second.
    pub induction_min: f64,
    pub preparation_min: f64,
    pub procedure_min: f64,
    pub planned_induction_min: Option<f64>,
    pub planned_procedure_min: Option<f64>,
    pub anchors: AnchorPattern,
    pub positioning_documented: bool,
    pub outlier: Option<Outlier>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyTruth {
    pub family_id: usize,
    pub key: String,
    pub department: String,
    pub median_min: f64,
    pub sigma: f64,
    /// Expected procedure duration over the generator's modifier mix.
    pub mean_min: f64,
    pub variants: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub config: SynthConfig,
    /// Calibrated log-scale spread of the manual procedure plan bias.
    pub plan_bias_sigma: f64,
    pub induction_plan_bias_sigma: f64,
    pub families: Vec<FamilyTruth>,
    pub cases: Vec<CaseTruth>,
}

#[derive(Debug, Clone)]
pub struct GeneratedLog {
    pub events_csv: String,
    pub cases_csv: String,
    pub truth: GroundTruth,
}

fn pick<'a, T>(rng: &mut impl Rng, items: &'a [T]) -> &'a T {
    &items[rng.gen_range(0..items.len())]
}

fn pick_weighted<T: Copy>(rng: &mut impl Rng, items: &[(T, f64)]) -> T {
    let total: f64 = items.iter().map(|(_, w)| w).sum();
    let mut u = rng.gen::<f64>() * total;
    for (item, w) in items {
        if u < *w {
            return *item;
        }
        u -= w;
    }
    items[items.len() - 1].0
}

fn lognormal(rng: &mut impl Rng, median: f64, sigma: f64) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    median * (sigma * z).exp()
}

/// Whole seconds, expressed in minutes.
fn to_seconds(minutes: f64) -> f64 {
    (minutes * 60.0).round().max(1.0) / 60.0
}

fn restyle(rng: &mut impl Rng, text: &str) -> String {
    let mut out = match rng.gen_range(0..10) {
        0 | 1 => text.to_uppercase(),
        2 | 3 => text.to_lowercase(),
        _ => text.to_string(),
    };
    if rng.gen_bool(0.1) {
        // hyphen inside the longest word
        let words: Vec<&str> = out.split(' ').collect();
        if let Some((wi, w)) = words.iter().enumerate().max_by_key(|(_, w)| w.chars().count()) {
            let chars: Vec<char> = w.chars().collect();
            if chars.len() > 6 {
                let cut = rng.gen_range(3..chars.len() - 2);
                let broken: String = chars[..cut].iter().chain(['-'].iter()).chain(&chars[cut..]).collect();
                let mut ws: Vec<String> = words.iter().map(|s| s.to_string()).collect();
                ws[wi] = broken;
                out = ws.join(" ");
            }
        }
    }
    if rng.gen_bool(0.15) {
        out.push_str(pick(rng, &[".", "!", " ,", ";"]));
    }
    out
}

fn round_to(x: f64, quantum: f64) -> f64 {
    (x / quantum).round() * quantum
}

struct PlanModel {
    quantum: f64,
    min_plan: f64,
    short_rule: bool,
}

impl PlanModel {
    fn plan(&self, base: f64, bias: f64, truth: f64) -> f64 {
        if self.short_rule && truth < SHORT_PROCEDURE_MIN {
            return 0.0;
        }
        round_to(base * bias, self.quantum).max(self.min_plan)
    }
}

/// Spread of the log-normal plan bias whose mean `|%dev|` over the sample
/// hits `target`, by bisection with the normal draws held fixed.
fn calibrate_bias(sample: &[(f64, f64, f64)], model: &PlanModel, target: f64) -> f64 {
    let dev = |s: f64| {
        sample
            .iter()
            .map(|&(truth, base, z)| ((model.plan(base, (s * z).exp(), truth) - truth) / truth).abs())
            .sum::<f64>()
            / sample.len().max(1) as f64
    };
    let (mut lo, mut hi) = (0.0, 4.0);
    if sample.is_empty() || dev(lo) >= target {
        return 0.0;
    }
    if dev(hi) <= target {
        return hi;
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if dev(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Truths within the IQR fence of the plausible truths, as the cleaning
/// stage will see them.
fn iqr_sample(rows: Vec<(f64, f64, f64)>) -> Vec<(f64, f64, f64)> {
    let values: Vec<f64> = rows.iter().map(|r| r.0).collect();
    match iqr_bounds(&values, IqrConfig::default()) {
        Ok(b) => rows.into_iter().filter(|r| b.contains(r.0)).collect(),
        Err(_) => rows,
    }
}

struct Draft {
    attrs: CaseAttributes,
    truth: CaseTruth,
    start: DateTime<FixedOffset>,
    procedure_base: f64,
    procedure_z: f64,
    induction_base: f64,
    induction_z: f64,
    plan_missing: (bool, bool),
}

pub fn family_truth(cfg: &SynthConfig) -> Vec<FamilyTruth> {
    FAMILIES[..cfg.n_procedure_families]
        .iter()
        .enumerate()
        .map(|(id, f)| {
            let lateral = if f.lateral {
                1.0 + catalog::BILATERAL_RATE * (catalog::BILATERAL_FACTOR - 1.0)
            } else {
                1.0
            };
            let revision = 1.0 + catalog::REVISION_RATE * (catalog::REVISION_FACTOR - 1.0);
            let (lo, hi) = AGE_RANGE;
            let mean_age = (lo + hi) as f64 / 2.0;
            let age = (1.0 - cfg.age_missing_rate) * (1.0 + cfg.age_effect * (mean_age - AGE_PIVOT))
                + cfg.age_missing_rate;
            FamilyTruth {
                family_id: id,
                key: f.key.to_string(),
                department: f.department.to_string(),
                median_min: f.median_min,
                sigma: f.sigma,
                mean_min: f.median_min * (0.5 * f.sigma * f.sigma).exp() * lateral * revision * age,
                variants: f.variants[..cfg.synonyms_per_family].iter().map(|s| s.to_string()).collect(),
            }
        })
        .collect()
}

pub fn generate_log(cfg: &SynthConfig) -> Result<GeneratedLog> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let families: &[Family] = &FAMILIES[..cfg.n_procedure_families];
    let weights: Vec<(usize, f64)> = families.iter().enumerate().map(|(i, f)| (i, f.weight)).collect();
    let offset = FixedOffset::east_opt(cfg.utc_offset_hours * 3600)
        .ok_or_else(|| Error::Config("invalid UTC offset".into()))?;
    let day0 = offset
        .from_local_datetime(&cfg.start_date.and_hms_opt(0, 0, 0).expect("midnight"))
        .single()
        .ok_or_else(|| Error::Config("ambiguous start date".into()))?;

    let p = cfg.procedure_coverage;
    let i = cfg.induction_coverage;
    let r = cfg.completion_incision_rate();
    let pattern_weights = [
        (AnchorPattern::Complete, r),
        (AnchorPattern::NoCompletion, (p - r).max(0.0)),
        (AnchorPattern::NoIncision, (i - r).max(0.0)),
        (AnchorPattern::StartAndSuture, (1.0 - p - i + r).max(0.0)),
    ];
    let positioning_rate = cfg.positioning_rate();

    let mut drafts = Vec::with_capacity(cfg.n_cases);
    for n in 0..cfg.n_cases {
        let fid = pick_weighted(&mut rng, &weights);
        let fam = &families[fid];

        let day = (n as u64 * cfg.span_days as u64 / cfg.n_cases as u64) as i64;
        let minute_of_day = rng.gen_range(7 * 60..17 * 60) as i64;
        let start = day0 + Duration::days(day) + Duration::minutes(minute_of_day)
            + Duration::seconds(rng.gen_range(0..60));

        let sex = if fam.female_only || rng.gen_bool(cfg.female_share) {
            Sex::F
        } else {
            Sex::M
        };
        let sex = if rng.gen_bool(cfg.sex_unknown_rate) { Sex::Unknown } else { sex };
        let age_value = rng.gen_range(AGE_RANGE.0..=AGE_RANGE.1);
        let age = (!rng.gen_bool(cfg.age_missing_rate)).then_some(age_value);
        let age_factor = |effect: f64| 1.0 + effect * (age.map_or(AGE_PIVOT, f64::from) - AGE_PIVOT);

        // procedure text and duration
        let variant = *pick(&mut rng, &fam.variants[..cfg.synonyms_per_family]);
        let mut text = restyle(&mut rng, variant);
        let bilateral = fam.lateral && rng.gen_bool(catalog::BILATERAL_RATE);
        let revision = rng.gen_bool(catalog::REVISION_RATE);
        if bilateral {
            text = format!("{text} {}", pick(&mut rng, &catalog::BILATERAL));
        } else if fam.lateral && rng.gen_bool(0.9) {
            text = format!("{text} {}", pick(&mut rng, &catalog::SIDES));
        }
        if revision {
            text = format!("{} {text}", pick(&mut rng, &catalog::REVISION));
        }
        let mut procedure = lognormal(&mut rng, fam.median_min, fam.sigma) * age_factor(cfg.age_effect);
        if bilateral {
            procedure *= catalog::BILATERAL_FACTOR;
        }
        if revision {
            procedure *= catalog::REVISION_FACTOR;
        }

        // anesthesia text and induction duration
        let anesthesia = pick_weighted(&mut rng, fam.anesthesia);
        let (art_p, cvc_p) = if fam.major { (0.8, 0.6) } else { (0.1, 0.03) };
        let invasive = matches!(anesthesia, Anesthesia::Itn);
        let arterial = invasive && rng.gen_bool(art_p);
        let central = invasive && rng.gen_bool(cvc_p);
        let anesthesia_variant = *pick(&mut rng, &anesthesia.variants());
        let mut anesthesia_text = restyle(&mut rng, anesthesia_variant);
        if arterial {
            anesthesia_text = format!("{anesthesia_text} {}", pick(&mut rng, &catalog::ARTERIAL_LINE));
        }
        if central {
            anesthesia_text = format!("{anesthesia_text} {}", pick(&mut rng, &catalog::CENTRAL_LINE));
        }
        let (ind_median, ind_sigma) = anesthesia.duration();
        let mut induction = lognormal(&mut rng, ind_median, ind_sigma) * age_factor(2.0 * cfg.age_effect);
        if arterial {
            induction *= catalog::ARTERIAL_FACTOR;
        }
        if central {
            induction *= catalog::CENTRAL_FACTOR;
        }

        let (prep_median, prep_sigma) = fam.positioning.duration();
        let preparation = lognormal(&mut rng, prep_median, prep_sigma);

        let anchors = pick_weighted(&mut rng, &pattern_weights);
        let positioning_documented = rng.gen_bool(positioning_rate);
        let outlier = if rng.gen_bool(cfg.outlier_rate) {
            let mut kinds = Vec::new();
            if anchors.has_procedure() {
                kinds.extend([Outlier::NegativeProcedure, Outlier::MultiDayProcedure]);
            }
            if anchors.has_induction() {
                kinds.push(Outlier::NegativeInduction);
            }
            (!kinds.is_empty()).then(|| *pick(&mut rng, &kinds))
        } else {
            None
        };

        let procedure_z: f64 = rng.sample(StandardNormal);
        let induction_z: f64 = rng.sample(StandardNormal);
        let plan_missing = (rng.gen_bool(cfg.plan_missing_rate), rng.gen_bool(cfg.plan_missing_rate));

        let case_id = format!("C{:06}", n + 1);
        let truth = CaseTruth {
            case_id: case_id.clone(),
            family_id: fid,
            family: fam.key.to_string(),
            anesthesia: anesthesia.key().to_string(),
            arterial_line: arterial,
            central_line: central,
            positioning: fam.positioning.label().to_string(),
            bilateral,
            revision,
            induction_min: to_seconds(induction),
            preparation_min: to_seconds(preparation),
            procedure_min: to_seconds(procedure),
            planned_induction_min: None,
            planned_procedure_min: None,
            anchors,
            positioning_documented,
            outlier,
        };
        let attrs = CaseAttributes {
            case_id,
            department: fam.department.to_string(),
            age,
            sex,
            procedure_text: text,
            anesthesia_text,
            positioning_text: positioning_documented.then(|| fam.positioning.label().to_string()),
            planned_induction_min: None,
            planned_procedure_min: None,
        };
        drafts.push(Draft {
            attrs,
            truth,
            start,
            procedure_base: fam.median_min,
            procedure_z,
            induction_base: ind_median,
            induction_z,
            plan_missing,
        });
    }

    // manual plans
    let procedure_plans = PlanModel {
        quantum: PLAN_QUANTUM_MIN,
        min_plan: PLAN_QUANTUM_MIN,
        short_rule: true,
    };
    let induction_plans = PlanModel {
        quantum: INDUCTION_PLAN_QUANTUM_MIN,
        min_plan: INDUCTION_PLAN_QUANTUM_MIN,
        short_rule: false,
    };
    let sample = |phase_ok: &dyn Fn(&Draft) -> bool, pick: &dyn Fn(&Draft) -> (f64, f64, f64)| {
        iqr_sample(drafts.iter().filter(|d| phase_ok(d)).map(pick).collect())
    };
    let proc_sample = sample(
        &|d: &Draft| d.truth.anchors.has_procedure() && d.truth.outlier.is_none() && !d.plan_missing.1,
        &|d: &Draft| (d.truth.procedure_min, d.procedure_base, d.procedure_z),
    );
    let ind_sample = sample(
        &|d: &Draft| d.truth.anchors.has_induction() && d.truth.outlier.is_none() && !d.plan_missing.0,
        &|d: &Draft| (d.truth.induction_min, d.induction_base, d.induction_z),
    );
    let plan_bias_sigma = calibrate_bias(&proc_sample, &procedure_plans, cfg.plan_target_abs_dev);
    let induction_plan_bias_sigma =
        calibrate_bias(&ind_sample, &induction_plans, cfg.induction_plan_target_abs_dev);

    let mut events = csv::Writer::from_writer(Vec::new());
    events.write_record(EVENTS_HEADER)?;
    let mut attrs = Vec::with_capacity(drafts.len());
    let mut cases = Vec::with_capacity(drafts.len());
    for mut d in drafts {
        if !d.plan_missing.1 {
            let plan = procedure_plans.plan(
                d.procedure_base,
                (plan_bias_sigma * d.procedure_z).exp(),
                d.truth.procedure_min,
            );
            d.truth.planned_procedure_min = Some(plan);
        }
        if !d.plan_missing.0 {
            let plan = induction_plans.plan(
                d.induction_base,
                (induction_plan_bias_sigma * d.induction_z).exp(),
                d.truth.induction_min,
            );
            d.truth.planned_induction_min = Some(plan);
        }
        d.attrs.planned_procedure_min = d.truth.planned_procedure_min;
        d.attrs.planned_induction_min = d.truth.planned_induction_min;
        emit_events(&mut events, &d)?;
        attrs.push(d.attrs);
        cases.push(d.truth);
    }
    let events_csv = String::from_utf8(events.into_inner().map_err(|e| Error::io("<events csv>", e.into_error()))?)
        .expect("csv output is UTF-8");
    let mut cases_buf = Vec::new();
    write_cases_csv(&attrs, &mut cases_buf)?;

    Ok(GeneratedLog {
        events_csv,
        cases_csv: String::from_utf8(cases_buf).expect("csv output is UTF-8"),
        truth: GroundTruth {
            config: cfg.clone(),
            plan_bias_sigma,
            induction_plan_bias_sigma,
            families: family_truth(cfg),
            cases,
        },
    })
}

fn emit_events(w: &mut csv::Writer<Vec<u8>>, d: &Draft) -> Result<()> {
    let t = &d.truth;
    let secs = |m: f64| Duration::seconds((m * 60.0).round() as i64);
    let start = d.start;
    let mut complete = start + secs(t.induction_min);
    let incision = complete + secs(t.preparation_min);
    let mut suture = incision + secs(t.procedure_min);
    match t.outlier {
        Some(Outlier::NegativeProcedure) => suture = incision - secs(t.procedure_min),
        Some(Outlier::MultiDayProcedure) => suture += secs(MULTI_DAY_EXTRA_MIN),
        Some(Outlier::NegativeInduction) => complete = start - secs(t.induction_min),
        None => {}
    }
    let id = t.case_id.as_str();
    // arrival and exit times are derived from the case id so they do not
    // consume the main random stream
    let h = id.bytes().fold(0u64, |a, b| a.wrapping_mul(31).wrapping_add(b as u64));
    let arrival = start - Duration::minutes(10 + (h % 25) as i64);
    let end = suture.max(incision).max(complete);
    let exit = end + Duration::minutes(5 + (h / 25 % 15) as i64);
    let recovery = exit + Duration::minutes(2 + (h / 375 % 8) as i64);

    let mut rows: Vec<(&str, DateTime<FixedOffset>)> = vec![("patient_arrival", arrival), ("anesthesia_start", start)];
    if t.anchors.has_induction() {
        rows.push(("anesthesia_complete", complete));
    }
    if t.anchors.has_procedure() {
        rows.push(("incision", incision));
    }
    rows.push(("suture", suture));
    rows.push(("patient_exit", exit));
    rows.push(("recovery_arrival", recovery));
    for (kind, ts) in rows {
        w.write_record([id, kind, &ts.to_rfc3339()])?;
    }
    Ok(())
}
