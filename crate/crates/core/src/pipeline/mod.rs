//! Checkpointed pipeline stages.
//!
//! Every stage reads its inputs from files under the output directory and
//! writes its results back there, so each one can be re-run on its own.
//! Layout:
//!
//! ```text
//! <out>/events.csv, cases.csv, ground_truth.json      synth
//! <out>/phases.csv, ingest_report.json                ingest
//! <out>/cleaning_report.json, <phase>/clean.csv       clean
//! <out>/<phase>/text_models.json, assignments.csv,
//!       clusters.csv, secondary_clusters.csv          cluster
//! <out>/<phase>/model.json                            train
//! <out>/metrics.json, <phase>/metrics.json            evaluate
//! <out>/<phase>/predictions.csv                       predict
//! <out>/deviation_report.json, histogram.csv,
//!       histogram.svg, factor_analysis.json           report
//! ```

mod config;
mod features;
mod table;
mod text;

pub use config::*;
pub use features::{Example, FeaturePipeline, PhaseFolds};
pub use table::{read_rows, write_rows, Assignment, CaseRow, PhaseRow, Split};
pub use text::{FieldModel, TextField, TextModels};

use std::collections::BTreeMap;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::cleaning::{clean_phase, CleaningConfig, CleaningReport, IqrConfig};
use crate::clustering::{build_catalog, write_catalog_csv};
use crate::evaluate::{
    apply_planning_floor, compare_to_plan, compute_metrics, histogram, histogram_svg,
    write_histogram_csv, DeviationReport, MetricsReport, PLAN_BIN_WIDTH_MIN,
};
use crate::eventlog::{assemble_cases, parse_case_attributes, parse_events, DuplicateAnchor, ParseMode};
use crate::models::{default_grid, grid_search, split_indices, GridResult, GridSpec, Model, ModelFamily, ModelSpec};
use crate::stats::{factor_tests, FactorTest};
use crate::synthgen::generate_log;
use crate::textnorm::NormalizationRules;
use crate::{Error, Phase, Result};

/// Version of the `model.json` layout.
pub const MODEL_SCHEMA_VERSION: u32 = 1;

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    Ok(serde_json::from_reader(BufReader::new(file))?)
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| Error::io(path, e))
}

fn phase_dir(cfg: &PipelineConfig, phase: Phase) -> Result<PathBuf> {
    let dir = cfg.out.join(phase.name());
    ensure_dir(&dir)?;
    Ok(dir)
}

fn parse_mode(cfg: &PipelineConfig) -> ParseMode {
    if cfg.input.lenient {
        ParseMode::Lenient
    } else {
        ParseMode::Strict
    }
}

pub fn normalization_rules(cfg: &PipelineConfig) -> Result<NormalizationRules> {
    let mut rules = if cfg.text.default_synonyms {
        NormalizationRules::default()
    } else {
        NormalizationRules::without_synonyms()
    };
    if let Some(path) = &cfg.text.synonyms {
        rules.synonyms = NormalizationRules::load_synonyms(open(path)?)?;
    }
    Ok(rules)
}

// ---------------------------------------------------------------- synth

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SynthSummary {
    pub cases: usize,
    pub seed: u64,
}

/// Generate a synthetic log into the output directory. The generator seed
/// is derived from the root seed.
pub fn synth(cfg: &PipelineConfig) -> Result<SynthSummary> {
    let mut sc = cfg.synth.clone();
    sc.seed = cfg.stage_seed("synth");
    let log = generate_log(&sc)?;
    ensure_dir(&cfg.out)?;
    for (name, body) in [("events.csv", &log.events_csv), ("cases.csv", &log.cases_csv)] {
        let path = cfg.out.join(name);
        std::fs::write(&path, body).map_err(|e| Error::io(&path, e))?;
    }
    write_json(&cfg.out.join("ground_truth.json"), &log.truth)?;
    Ok(SynthSummary {
        cases: log.truth.cases.len(),
        seed: sc.seed,
    })
}

// ---------------------------------------------------------------- ingest

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IngestReport {
    pub events: usize,
    pub cases: usize,
    pub invalid_cases: usize,
    pub skipped_records: usize,
    /// First skipped records, lenient mode only.
    pub record_errors: Vec<String>,
    pub duplicate_anchors: Vec<DuplicateAnchor>,
    /// Cases with a duration for each phase, before cleaning.
    pub phase_coverage: BTreeMap<Phase, usize>,
}

const MAX_REPORTED_ERRORS: usize = 100;

pub fn ingest(cfg: &PipelineConfig) -> Result<IngestReport> {
    let format = cfg.input_format()?;
    let mode = parse_mode(cfg);
    let events = parse_events(open(&cfg.events_path())?, format, mode)?;
    let attrs = parse_case_attributes(open(&cfg.cases_path())?, format, mode)?;
    let n_events = events.records.len();
    let errors: Vec<String> = events
        .errors
        .iter()
        .chain(&attrs.errors)
        .map(|e| e.to_string())
        .collect();
    let assembly = assemble_cases(events.records, attrs.records);

    let rows: Vec<CaseRow> = assembly.cases.iter().map(CaseRow::from_case).collect();
    ensure_dir(&cfg.out)?;
    write_rows(&cfg.out.join("phases.csv"), &rows)?;

    let report = IngestReport {
        events: n_events,
        cases: rows.len(),
        invalid_cases: rows.iter().filter(|r| r.invalid).count(),
        skipped_records: errors.len(),
        record_errors: errors.into_iter().take(MAX_REPORTED_ERRORS).collect(),
        duplicate_anchors: assembly.duplicates,
        phase_coverage: Phase::ALL
            .iter()
            .map(|&p| (p, assembly.cases.iter().filter(|c| c.durations.get(p).is_some()).count()))
            .collect(),
    };
    write_json(&cfg.out.join("ingest_report.json"), &report)?;
    Ok(report)
}

// ---------------------------------------------------------------- clean

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseCleaning {
    #[serde(flatten)]
    pub report: CleaningReport,
    /// Preparation cases dropped for lacking a documented positioning.
    pub missing_positioning: usize,
}

pub fn clean(cfg: &PipelineConfig) -> Result<BTreeMap<Phase, PhaseCleaning>> {
    let rows: Vec<CaseRow> = read_rows(&cfg.out.join("phases.csv"))?;
    let cleaning = CleaningConfig {
        iqr: IqrConfig {
            multiplier: cfg.cleaning.iqr_multiplier,
        },
        per_department: cfg.cleaning.per_department,
    };
    let mut reports = BTreeMap::new();
    for &phase in &cfg.phases {
        let mut missing_positioning = 0;
        let cases: Vec<_> = rows
            .iter()
            .map(|r| {
                let mut c = r.to_case();
                // Preparation durations only count when positioning was
                // documented; the anchors alone do not delimit the phase.
                if phase == Phase::Preparation
                    && c.durations.preparation_min.is_some()
                    && c.attributes.positioning_text.as_deref().is_none_or(|t| t.trim().is_empty())
                {
                    c.durations.preparation_min = None;
                    missing_positioning += 1;
                }
                c
            })
            .collect();
        let (kept, report) = clean_phase(&cases, phase, &cleaning)?;
        let out: Vec<PhaseRow> = kept.iter().filter_map(|c| PhaseRow::from_case(c, phase)).collect();
        write_rows(&phase_dir(cfg, phase)?.join("clean.csv"), &out)?;
        reports.insert(
            phase,
            PhaseCleaning {
                report,
                missing_positioning,
            },
        );
    }
    write_json(&cfg.out.join("cleaning_report.json"), &reports)?;
    Ok(reports)
}

// ---------------------------------------------------------------- cluster

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClusterSummary {
    pub phase: Phase,
    pub rows: usize,
    pub train_rows: usize,
    pub procedure_k: usize,
    pub anesthesia_k: usize,
}

fn load_clean(cfg: &PipelineConfig, phase: Phase) -> Result<Vec<PhaseRow>> {
    read_rows(&cfg.out.join(phase.name()).join("clean.csv"))
}

pub fn cluster(cfg: &PipelineConfig) -> Result<Vec<ClusterSummary>> {
    let rules = normalization_rules(cfg)?;
    cfg.phases.iter().map(|&phase| cluster_phase(cfg, phase, &rules)).collect()
}

fn cluster_phase(cfg: &PipelineConfig, phase: Phase, rules: &NormalizationRules) -> Result<ClusterSummary> {
    let rows = load_clean(cfg, phase)?;
    let (train, _) = split_indices(rows.len(), cfg.test_fraction, cfg.stage_seed(&format!("split:{phase}")))
        .map_err(|e| Error::InsufficientData(format!("{phase}: {e}")))?;
    let fit_field = |field: TextField, settings: &FieldClustering| {
        let texts: Vec<&str> = train
            .iter()
            .map(|&i| match field {
                TextField::Procedure => rows[i].procedure_text.as_str(),
                TextField::Anesthesia => rows[i].anesthesia_text.as_str(),
            })
            .collect();
        FieldModel::fit(
            field,
            &texts,
            rules,
            settings,
            cfg.text.max_terms,
            cfg.stage_seed(&format!("cluster:{phase}:{}", field.name())),
        )
    };
    let models = TextModels {
        phase,
        rules: rules.clone(),
        procedure: fit_field(TextField::Procedure, &cfg.clustering.procedure)?,
        anesthesia: fit_field(TextField::Anesthesia, &cfg.clustering.anesthesia)?,
    };

    let mut is_train = vec![false; rows.len()];
    for &i in &train {
        is_train[i] = true;
    }
    let assignments: Vec<Assignment> = rows
        .iter()
        .zip(&is_train)
        .map(|(r, &t)| {
            let (p, a) = models.assign(&r.procedure_text, &r.anesthesia_text)?;
            Ok(Assignment {
                case_id: r.case_id.clone(),
                split: if t { Split::Train } else { Split::Test },
                procedure_cluster: p,
                anesthesia_cluster: a,
            })
        })
        .collect::<Result<_>>()?;

    let dir = phase_dir(cfg, phase)?;
    write_json(&dir.join("text_models.json"), &models)?;
    write_rows(&dir.join("assignments.csv"), &assignments)?;
    let primary = TextField::primary(phase);
    for (field, name) in [(primary, "clusters.csv"), (primary.other(), "secondary_clusters.csv")] {
        let fm = models.field(field);
        let path = dir.join(name);
        let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
        match &fm.cluster {
            Some(model) => {
                let labels: Vec<usize> = train
                    .iter()
                    .map(|&i| match field {
                        TextField::Procedure => assignments[i].procedure_cluster,
                        TextField::Anesthesia => assignments[i].anesthesia_cluster,
                    })
                    .collect();
                let durations: Vec<f64> = train.iter().map(|&i| rows[i].duration_min).collect();
                let catalog = build_catalog(model, &fm.tfidf.terms(), &labels, &durations, 5);
                write_catalog_csv(&catalog, file)?;
            }
            None => write_catalog_csv(&[], file)?,
        }
    }
    Ok(ClusterSummary {
        phase,
        rows: rows.len(),
        train_rows: train.len(),
        procedure_k: models.procedure.k,
        anesthesia_k: models.anesthesia.k,
    })
}

// ---------------------------------------------------------------- train

/// A fitted model together with how it was chosen.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainedModel {
    pub name: String,
    pub family: ModelFamily,
    /// Grouping used by group-mean style models.
    pub group_key: Option<GroupKey>,
    pub spec: ModelSpec,
    pub search: Option<GridResult>,
    pub model: Model,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelBundle {
    pub schema_version: u32,
    pub phase: Phase,
    pub train_rows: usize,
    pub features: FeaturePipeline,
    pub models: Vec<TrainedModel>,
}

impl ModelBundle {
    pub fn get(&self, name: &str) -> Option<&TrainedModel> {
        self.models.iter().find(|m| m.name == name)
    }

    /// Predictions of one model for `examples`.
    pub fn predict(&self, model: &TrainedModel, examples: &[Example<'_>]) -> Result<Vec<f64>> {
        let groups = model.group_key.map(|k| (k, self.features.primary));
        let ds = self.features.dataset(examples, groups)?;
        model.model.predict(&ds)
    }
}

fn load_assignments(cfg: &PipelineConfig, phase: Phase, rows: &[PhaseRow]) -> Result<Vec<Assignment>> {
    let assignments: Vec<Assignment> = read_rows(&cfg.out.join(phase.name()).join("assignments.csv"))?;
    if assignments.len() != rows.len()
        || assignments.iter().zip(rows).any(|(a, r)| a.case_id != r.case_id)
    {
        return Err(Error::InvalidInput(format!(
            "{phase}: assignments.csv does not match clean.csv; re-run the cluster stage"
        )));
    }
    Ok(assignments)
}

fn examples<'a>(rows: &'a [PhaseRow], assignments: &[Assignment], split: Split) -> Vec<Example<'a>> {
    rows.iter()
        .zip(assignments)
        .filter(|(_, a)| a.split == split)
        .map(|(row, a)| Example {
            row,
            clusters: (a.procedure_cluster, a.anesthesia_cluster),
        })
        .collect()
}

pub fn train(cfg: &PipelineConfig) -> Result<Vec<ModelBundle>> {
    cfg.phases.iter().map(|&phase| train_phase(cfg, phase)).collect()
}

fn train_phase(cfg: &PipelineConfig, phase: Phase) -> Result<ModelBundle> {
    let rows = load_clean(cfg, phase)?;
    let assignments = load_assignments(cfg, phase, &rows)?;
    let train = examples(&rows, &assignments, Split::Train);
    let features = FeaturePipeline::fit(phase, &train, cfg.models.smoothing)?;
    let primary = features.primary;

    let mut models = Vec::new();
    for &family in &cfg.models.roster {
        let group_key = match family {
            ModelFamily::GroupMean => Some(cfg.models.group_by),
            ModelFamily::Mta => Some(GroupKey::ExactName),
            _ => None,
        };
        let data = features.dataset(&train, group_key.map(|k| (k, primary)))?;
        let (spec, search) = if family.is_tunable() {
            let grid = GridSpec {
                family,
                grid: cfg.models.grids.get(&family).cloned().unwrap_or_else(|| default_grid(family)),
                cv_folds: cfg.models.cv_folds,
                seed: cfg.stage_seed(&format!("train:{phase}:{family}")),
            };
            let folds = PhaseFolds {
                phase,
                examples: &train,
                smoothing: cfg.models.smoothing,
            };
            let result = grid_search(&grid, &folds)?;
            (result.best_spec.clone(), Some(result))
        } else {
            let spec = match family {
                ModelFamily::Mean => ModelSpec::Mean,
                _ => ModelSpec::GroupMean,
            };
            (spec, None)
        };
        let model = spec.fit(&data)?;
        models.push(TrainedModel {
            name: family.name().to_string(),
            family,
            group_key,
            spec,
            search,
            model,
        });
    }
    let bundle = ModelBundle {
        schema_version: MODEL_SCHEMA_VERSION,
        phase,
        train_rows: train.len(),
        features,
        models,
    };
    write_json(&phase_dir(cfg, phase)?.join("model.json"), &bundle)?;
    Ok(bundle)
}

pub fn load_bundle(cfg: &PipelineConfig, phase: Phase) -> Result<ModelBundle> {
    let bundle: ModelBundle = read_json(&cfg.out.join(phase.name()).join("model.json"))?;
    if bundle.schema_version != MODEL_SCHEMA_VERSION {
        return Err(Error::InvalidInput(format!(
            "model.json schema version {} is not supported (expected {MODEL_SCHEMA_VERSION})",
            bundle.schema_version
        )));
    }
    Ok(bundle)
}

// ---------------------------------------------------------------- evaluate

/// Suffix of the deviation row that applies the planning floor to the
/// group-mean predictions.
pub const FLOOR_SUFFIX: &str = "+floor";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseMetrics {
    pub phase: Phase,
    pub train_rows: usize,
    pub test_rows: usize,
    pub models: BTreeMap<String, MetricsReport>,
    /// Absent for phases without a manual plan.
    pub deviation: Option<DeviationReport>,
}

pub fn evaluate(cfg: &PipelineConfig) -> Result<BTreeMap<Phase, PhaseMetrics>> {
    let mut all = BTreeMap::new();
    for &phase in &cfg.phases {
        let metrics = evaluate_phase(cfg, phase)?;
        write_json(&phase_dir(cfg, phase)?.join("metrics.json"), &metrics)?;
        all.insert(phase, metrics);
    }
    write_json(&cfg.out.join("metrics.json"), &all)?;
    Ok(all)
}

fn evaluate_phase(cfg: &PipelineConfig, phase: Phase) -> Result<PhaseMetrics> {
    let rows = load_clean(cfg, phase)?;
    let assignments = load_assignments(cfg, phase, &rows)?;
    let bundle = load_bundle(cfg, phase)?;
    let test = examples(&rows, &assignments, Split::Test);
    let actual: Vec<f64> = test.iter().map(|e| e.row.duration_min).collect();

    let mut models = BTreeMap::new();
    let mut predictions: Vec<(String, Vec<f64>)> = Vec::new();
    for m in &bundle.models {
        let pred = bundle.predict(m, &test)?;
        models.insert(m.name.clone(), compute_metrics(&actual, &pred, cfg.tolerance)?);
        predictions.push((m.name.clone(), pred));
    }
    let floor_name = ModelFamily::GroupMean.name();
    if cfg.floors.get(phase) > 0.0 {
        if let Some((_, pred)) = predictions.iter().find(|(n, _)| n == floor_name) {
            let floored = pred.iter().map(|&p| apply_planning_floor(p, phase, &cfg.floors)).collect();
            predictions.push((format!("{floor_name}{FLOOR_SUFFIX}"), floored));
        }
    }

    let planned: Vec<Option<f64>> = test.iter().map(|e| e.row.planned_min).collect();
    let deviation = if planned.iter().any(Option::is_some) {
        Some(compare_to_plan(phase, &actual, &planned, &predictions, cfg.tolerance)?)
    } else {
        None
    };
    Ok(PhaseMetrics {
        phase,
        train_rows: bundle.train_rows,
        test_rows: test.len(),
        models,
        deviation,
    })
}

// ---------------------------------------------------------------- predict

/// Predict every case in the cases file with every trained model. Returns
/// the number of rows written per phase.
pub fn predict(cfg: &PipelineConfig) -> Result<BTreeMap<Phase, usize>> {
    let attrs = parse_case_attributes(open(&cfg.cases_path())?, cfg.input_format()?, parse_mode(cfg))?.records;
    let mut written = BTreeMap::new();
    for &phase in &cfg.phases {
        let dir = cfg.out.join(phase.name());
        let text = TextModels::from_json(
            &std::fs::read_to_string(dir.join("text_models.json"))
                .map_err(|e| Error::io(dir.join("text_models.json"), e))?,
        )?;
        let bundle = load_bundle(cfg, phase)?;
        let rows: Vec<PhaseRow> = attrs.iter().map(|a| PhaseRow::from_attributes(a, phase)).collect();
        let clusters: Vec<(usize, usize)> = rows
            .iter()
            .map(|r| text.assign(&r.procedure_text, &r.anesthesia_text))
            .collect::<Result<_>>()?;
        let ex: Vec<Example<'_>> = rows
            .iter()
            .zip(&clusters)
            .map(|(row, &clusters)| Example { row, clusters })
            .collect();
        let preds: Vec<Vec<f64>> = bundle
            .models
            .iter()
            .map(|m| bundle.predict(m, &ex))
            .collect::<Result<_>>()?;

        let path = dir.join("predictions.csv");
        let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
        let mut w = csv::Writer::from_writer(std::io::BufWriter::new(file));
        let mut header = vec!["case_id".to_string()];
        header.extend(bundle.models.iter().map(|m| m.name.clone()));
        w.write_record(&header)?;
        for (i, row) in rows.iter().enumerate() {
            let mut rec = vec![row.case_id.clone()];
            rec.extend(preds.iter().map(|p| format!("{:.3}", p[i])));
            w.write_record(&rec)?;
        }
        w.flush().map_err(|e| Error::io(&path, e))?;
        written.insert(phase, rows.len());
    }
    Ok(written)
}

// ---------------------------------------------------------------- report

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportSummary {
    pub ingest: IngestReport,
    pub metrics: BTreeMap<Phase, PhaseMetrics>,
}

/// Age bands used by the factor analysis.
pub fn age_band(age: Option<u32>) -> &'static str {
    match age {
        None => "unknown",
        Some(a) if a < 40 => "<40",
        Some(a) if a < 60 => "40-59",
        Some(a) if a < 75 => "60-74",
        Some(_) => ">=75",
    }
}

/// Run ingest through evaluate, then write the deviation report, the plan
/// histogram and the factor analysis.
pub fn report(cfg: &PipelineConfig) -> Result<ReportSummary> {
    let ingest = ingest(cfg)?;
    clean(cfg)?;
    cluster(cfg)?;
    train(cfg)?;
    let metrics = evaluate(cfg)?;

    let deviations: BTreeMap<Phase, &DeviationReport> = metrics
        .iter()
        .filter_map(|(p, m)| m.deviation.as_ref().map(|d| (*p, d)))
        .collect();
    write_json(&cfg.out.join("deviation_report.json"), &deviations)?;

    if cfg.phases.contains(&Phase::Procedure) {
        let rows = load_clean(cfg, Phase::Procedure)?;
        let planned: Vec<f64> = rows.iter().filter_map(|r| r.planned_min).collect();
        let actual: Vec<f64> = rows
            .iter()
            .filter(|r| r.planned_min.is_some())
            .map(|r| r.duration_min)
            .collect();
        if !planned.is_empty() {
            let plan_bins = histogram(&planned, PLAN_BIN_WIDTH_MIN)?;
            let actual_bins = histogram(&actual, PLAN_BIN_WIDTH_MIN)?;
            let path = cfg.out.join("histogram.csv");
            let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
            write_histogram_csv(&plan_bins, file)?;
            let svg = histogram_svg(
                "Procedure duration: planned vs actual",
                &[("planned", &plan_bins), ("actual", &actual_bins)],
            );
            let path = cfg.out.join("histogram.svg");
            std::fs::write(&path, svg).map_err(|e| Error::io(&path, e))?;
        }
    }

    let mut factors: BTreeMap<Phase, Vec<FactorTest>> = BTreeMap::new();
    for &phase in &cfg.phases {
        let rows = load_clean(cfg, phase)?;
        let assignments = load_assignments(cfg, phase, &rows)?;
        let primary = TextField::primary(phase);
        let mut levels: BTreeMap<&str, BTreeMap<String, Vec<f64>>> = BTreeMap::new();
        for (r, a) in rows.iter().zip(&assignments) {
            let cluster = match primary {
                TextField::Procedure => a.procedure_cluster,
                TextField::Anesthesia => a.anesthesia_cluster,
            };
            for (factor, level) in [
                ("age_band", age_band(r.age).to_string()),
                ("sex", r.sex.clone()),
                ("department", r.department.clone()),
                ("cluster", cluster.to_string()),
            ] {
                levels
                    .entry(factor)
                    .or_default()
                    .entry(level)
                    .or_default()
                    .push(r.duration_min);
            }
        }
        factors.insert(
            phase,
            levels.iter().flat_map(|(f, l)| factor_tests(f, l)).collect(),
        );
    }
    write_json(&cfg.out.join("factor_analysis.json"), &factors)?;

    Ok(ReportSummary { ingest, metrics })
}
