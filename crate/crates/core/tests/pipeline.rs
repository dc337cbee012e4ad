use std::path::Path;

use periop::models::ModelFamily;
use periop::pipeline::{self, derive_seed, read_json, read_rows, Assignment, GroupKey, PhaseRow, PipelineConfig, Split};
use periop::{Error, Phase};

const FAST: &str = r#"
seed = 3
test_fraction = 0.25

[synth]
n_cases = 1500

[clustering.procedure]
k_max = 12

[clustering.anesthesia]
k_max = 8

[models]
cv_folds = 3

[models.grids.ridge]
lambda = [0.1, 1.0]

[models.grids.forest]
n_trees = [10]
max_depth = [6]
feature_fraction = [1.0]

[models.grids.gbm]
n_trees = [20]
learning_rate = [0.1]
max_depth = [2, 3]
"#;

fn config(out: &Path) -> PipelineConfig {
    let mut cfg = PipelineConfig::from_toml(FAST).unwrap();
    cfg.out = out.to_path_buf();
    cfg.validate().unwrap();
    cfg
}

#[test]
fn config_defaults_and_overrides() {
    let cfg = PipelineConfig::from_toml(FAST).unwrap();
    assert_eq!(cfg.seed, 3);
    assert_eq!(cfg.synth.n_cases, 1500);
    assert_eq!(cfg.models.cv_folds, 3);
    assert_eq!(cfg.models.smoothing, 40.0);
    assert_eq!(cfg.tolerance, 0.2);
    assert_eq!(cfg.phases, Phase::ALL.to_vec());
    assert_eq!(cfg.models.grids[&ModelFamily::Gbm]["max_depth"], vec![2.0, 3.0]);

    let empty = PipelineConfig::from_toml("").unwrap();
    assert_eq!(empty, PipelineConfig::default());
    assert_eq!(empty.models.group_by, GroupKey::Cluster);
}

#[test]
fn config_rejects_bad_values() {
    for text in [
        "unknown_key = 1",
        "test_fraction = 1.5",
        "tolerance = -0.1",
        "phases = []",
        "[models]\nroster = []",
        "[models.grids.gbm]\nlearning_rate = []",
        "[clustering.procedure]\nk_min = 1",
        "[input]\nformat = \"xml\"",
        "[synth]\nn_cases = 10",
    ] {
        let err = PipelineConfig::from_toml(text).and_then(|c| c.validate()).unwrap_err();
        assert!(err.is_validation(), "{text}: {err}");
    }
}

#[test]
fn stage_seeds_differ_by_stage_and_root() {
    assert_ne!(derive_seed(0, "split"), derive_seed(0, "synth"));
    assert_ne!(derive_seed(0, "split"), derive_seed(1, "split"));
    assert_eq!(derive_seed(5, "x") ^ derive_seed(0, "x"), 5);
}

#[test]
fn stages_run_from_checkpoints() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = config(dir.path());

    // Later stages need their inputs on disk.
    assert!(matches!(pipeline::clean(&cfg), Err(Error::Io { .. })));

    let s = pipeline::synth(&cfg).unwrap();
    assert_eq!(s.cases, 1500);
    let ingest = pipeline::ingest(&cfg).unwrap();
    assert_eq!(ingest.cases, 1500);
    assert_eq!(ingest.skipped_records, 0);

    let cleaning = pipeline::clean(&cfg).unwrap();
    let prep = &cleaning[&Phase::Preparation];
    assert!(prep.missing_positioning > 0);
    for phase in Phase::ALL {
        let rows: Vec<PhaseRow> = read_rows(&dir.path().join(phase.name()).join("clean.csv")).unwrap();
        assert_eq!(rows.len(), cleaning[&phase].report.retained);
        assert!(rows.iter().all(|r| r.duration_min > 0.0 && r.duration_min <= 2880.0));
        if phase == Phase::Preparation {
            assert!(rows.iter().all(|r| r.positioning_text.is_some()));
        }
    }

    let clusters = pipeline::cluster(&cfg).unwrap();
    for s in &clusters {
        let a: Vec<Assignment> =
            read_rows(&dir.path().join(s.phase.name()).join("assignments.csv")).unwrap();
        assert_eq!(a.len(), s.rows);
        assert_eq!(a.iter().filter(|a| a.split == Split::Train).count(), s.train_rows);
        assert!(a.iter().all(|a| a.procedure_cluster < s.procedure_k.max(1)));
        assert!(a.iter().all(|a| a.anesthesia_cluster < s.anesthesia_k.max(1)));
    }

    let bundles = pipeline::train(&cfg).unwrap();
    for b in &bundles {
        let names: Vec<&str> = b.models.iter().map(|m| m.name.as_str()).collect();
        assert_eq!(names, ["mean", "group-mean", "mta", "ridge", "forest", "gbm"]);
        for m in &b.models {
            assert_eq!(m.search.is_some(), m.family.is_tunable());
        }
        let reloaded = pipeline::load_bundle(&cfg, b.phase).unwrap();
        assert_eq!(&reloaded, b);
    }

    let metrics = pipeline::evaluate(&cfg).unwrap();
    assert!(metrics[&Phase::Preparation].deviation.is_none());
    let dev = metrics[&Phase::Induction].deviation.as_ref().unwrap();
    assert!(dev.model("group-mean+floor").is_some());
    assert!(metrics[&Phase::Procedure].deviation.as_ref().unwrap().model("gbm").is_some());
    let on_disk: std::collections::BTreeMap<Phase, pipeline::PhaseMetrics> =
        read_json(&dir.path().join("metrics.json")).unwrap();
    assert_eq!(on_disk, metrics);

    let written = pipeline::predict(&cfg).unwrap();
    assert_eq!(written[&Phase::Procedure], 1500);
    let text = std::fs::read_to_string(dir.path().join("procedure/predictions.csv")).unwrap();
    assert_eq!(text.lines().next().unwrap(), "case_id,mean,group-mean,mta,ridge,forest,gbm");
    assert_eq!(text.lines().count(), 1501);
}

#[test]
fn report_writes_every_artifact_and_is_reproducible() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [a.path(), b.path()] {
        let cfg = config(dir);
        pipeline::synth(&cfg).unwrap();
        pipeline::report(&cfg).unwrap();
    }
    for name in [
        "metrics.json",
        "deviation_report.json",
        "histogram.csv",
        "histogram.svg",
        "factor_analysis.json",
        "cleaning_report.json",
        "ground_truth.json",
        "procedure/model.json",
        "procedure/clusters.csv",
        "induction/model.json",
    ] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert!(x == y, "{name} differs between runs");
    }
    let hist = std::fs::read_to_string(a.path().join("histogram.csv")).unwrap();
    assert_eq!(hist.lines().next(), Some("bin_start_min,count"));
}

#[test]
fn group_by_exact_name_keys_on_raw_text() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = config(dir.path());
    cfg.phases = vec![Phase::Procedure];
    cfg.models.roster = vec![ModelFamily::GroupMean];
    cfg.models.group_by = GroupKey::ExactName;
    pipeline::synth(&cfg).unwrap();
    pipeline::ingest(&cfg).unwrap();
    pipeline::clean(&cfg).unwrap();
    pipeline::cluster(&cfg).unwrap();
    let bundle = pipeline::train(&cfg).unwrap().remove(0);
    let m = &bundle.models[0];
    assert_eq!(m.group_key, Some(GroupKey::ExactName));
    match &m.model {
        periop::models::Model::GroupMean { groups, .. } => {
            assert!(groups.keys().any(|k| k.chars().any(char::is_alphabetic)));
        }
        other => panic!("unexpected model {other:?}"),
    }
}

fn row(id: &str, procedure: &str, anesthesia: &str, age: Option<u32>, duration: f64) -> PhaseRow {
    PhaseRow {
        case_id: id.into(),
        department: "urology".into(),
        age,
        sex: "f".into(),
        procedure_text: procedure.into(),
        anesthesia_text: anesthesia.into(),
        positioning_text: Some("Rückenlage".into()),
        planned_min: None,
        duration_min: duration,
    }
}

#[test]
fn field_model_falls_back_to_one_cluster() {
    let rules = periop::textnorm::NormalizationRules::default();
    let settings = pipeline::ClusteringSettings::default().procedure;
    let texts = ["TURB", "turb.", "Zystoskopie"];
    let m = pipeline::FieldModel::fit(pipeline::TextField::Procedure, &texts, &rules, &settings, 200, 0).unwrap();
    assert_eq!(m.unique_documents, 2);
    assert_eq!(m.k, 1);
    assert!(m.cluster.is_none());
    assert_eq!(m.assign("anything", &rules).unwrap(), 0);
}

#[test]
fn primary_field_follows_phase() {
    use pipeline::TextField;
    assert_eq!(TextField::primary(Phase::Induction), TextField::Anesthesia);
    assert_eq!(TextField::primary(Phase::Procedure), TextField::Procedure);
    assert_eq!(TextField::primary(Phase::Preparation), TextField::Procedure);
}

#[test]
fn feature_pipeline_encodes_and_imputes() {
    let rows = [
        row("a", "x", "itn", Some(40), 10.0),
        row("b", "x", "itn", Some(60), 20.0),
        row("c", "y", "spa", None, 30.0),
    ];
    let ex: Vec<pipeline::Example<'_>> = rows
        .iter()
        .zip([(0, 0), (0, 0), (1, 1)])
        .map(|(row, clusters)| pipeline::Example { row, clusters })
        .collect();
    let fp = pipeline::FeaturePipeline::fit(Phase::Preparation, &ex, 40.0).unwrap();
    let names = fp.feature_names();
    assert_eq!(&names[..4], ["procedure_cluster_te", "anesthesia_cluster_te", "age", "age_missing"]);
    assert!(names.contains(&"positioning=Rückenlage".to_string()));

    let x = fp.transform_one(&ex[2]);
    assert_eq!(x.len(), names.len());
    assert_eq!(x[2], 50.0);
    assert_eq!(x[3], 1.0);
    // cluster 1 holds one row of 30 min; prior is 20
    assert!((x[0] - (30.0 + 40.0 * 20.0) / 41.0).abs() < 1e-12);

    let ds = fp.dataset(&ex, Some((GroupKey::ExactName, pipeline::TextField::Procedure))).unwrap();
    assert_eq!(ds.groups.unwrap(), ["x", "x", "y"]);
}
