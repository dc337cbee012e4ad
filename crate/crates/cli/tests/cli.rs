use std::path::Path;
use std::process::{Command, Output};

use periop::models::Model;
use periop::pipeline::{read_json, GroupKey, ModelBundle};

const FAST: &str = r#"
[synth]
n_cases = 800

[clustering.procedure]
k_max = 10

[clustering.anesthesia]
k_max = 6

[models]
cv_folds = 3

[models.grids.forest]
n_trees = [8]
max_depth = [5]
feature_fraction = [1.0]

[models.grids.gbm]
n_trees = [15]
learning_rate = [0.1]
max_depth = [2]
"#;

fn periop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_periop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn with_config(dir: &Path) -> String {
    let path = dir.join("config.toml");
    std::fs::write(&path, FAST).unwrap();
    path.to_str().unwrap().to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(code(&periop(&[])), 1);
    assert_eq!(code(&periop(&["bogus"])), 1);
    assert_eq!(code(&periop(&["report", "--no-such-flag"])), 1);
    assert_eq!(code(&periop(&["train", "--model", "svm"])), 1);
    assert_eq!(code(&periop(&["train", "--phase", "recovery"])), 1);
    assert_eq!(code(&periop(&["train", "--group-by", "ward"])), 1);
    assert_eq!(code(&periop(&["--help"])), 0);
}

#[test]
fn validation_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = periop(&["report", "--tolerance", "-1", "--out", out]);
    assert_eq!(code(&o), 1, "{}", String::from_utf8_lossy(&o.stderr));

    let bad = dir.path().join("bad.toml");
    std::fs::write(&bad, "nonsense = true\n").unwrap();
    assert_eq!(code(&periop(&["report", "--config", bad.to_str().unwrap()])), 1);

    std::fs::write(dir.path().join("events.csv"), "case_id,event_type,timestamp\nC1,incision,yesterday\n").unwrap();
    std::fs::write(dir.path().join("cases.csv"), "case_id\n").unwrap();
    assert_eq!(code(&periop(&["ingest", "--out", out])), 1);
}

#[test]
fn runtime_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing");
    let o = periop(&["ingest", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("events.csv"));
}

#[test]
fn synth_then_report_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = with_config(dir.path());
    let out = dir.path().join("d");
    let out = out.to_str().unwrap();
    assert_eq!(code(&periop(&["synth", "--seed", "7", "--out", out, "--config", &cfg])), 0);
    assert!(dir.path().join("d/ground_truth.json").exists());

    let run = || {
        let o = periop(&["report", "--seed", "7", "--out", out, "--config", &cfg]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        (
            std::fs::read(dir.path().join("d/metrics.json")).unwrap(),
            std::fs::read(dir.path().join("d/procedure/model.json")).unwrap(),
        )
    };
    let first = run();
    let second = run();
    assert!(first == second);
    for name in ["histogram.csv", "histogram.svg", "cleaning_report.json", "procedure/clusters.csv"] {
        assert!(dir.path().join("d").join(name).exists(), "{name}");
    }

    let o = periop(&["predict", "--out", out, "--config", &cfg, "--phase", "procedure"]);
    assert_eq!(code(&o), 0);
    assert!(dir.path().join("d/procedure/predictions.csv").exists());
}

#[test]
fn mean_with_group_by_trains_cluster_means() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = with_config(dir.path());
    let out = dir.path().to_str().unwrap();
    for stage in ["synth", "ingest", "clean", "cluster"] {
        assert_eq!(code(&periop(&[stage, "--out", out, "--config", &cfg])), 0, "{stage}");
    }
    let o = periop(&[
        "train", "--model", "mean", "--group-by", "cluster", "--phase", "procedure", "--out", out, "--config", &cfg,
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let bundle: ModelBundle = read_json(&dir.path().join("procedure/model.json")).unwrap();
    assert_eq!(bundle.models.len(), 1);
    let m = &bundle.models[0];
    assert_eq!(m.name, "group-mean");
    assert_eq!(m.group_key, Some(GroupKey::Cluster));
    match &m.model {
        Model::GroupMean { groups, .. } => assert!(!groups.is_empty()),
        other => panic!("unexpected model {other:?}"),
    }

    let o = periop(&["evaluate", "--phase", "procedure", "--out", out, "--config", &cfg]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("group-mean"));
}
