//! `periop`: run the duration-prediction pipeline stage by stage.
//!
//! Exit codes: 0 on success, 1 on usage or validation errors, 2 on runtime
//! failures.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use periop::models::ModelFamily;
use periop::pipeline::{self, GroupKey, PipelineConfig};
use periop::{Error, Phase};

#[derive(Debug, Parser)]
#[command(name = "periop", version, about = "Perioperative phase duration prediction")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a synthetic event log with ground truth.
    Synth,
    /// Parse the event log and derive phase durations.
    Ingest,
    /// Apply the plausibility and IQR filters per phase.
    Clean,
    /// Split, normalize and cluster the free-text descriptions.
    Cluster,
    /// Fit the model roster, tuning hyperparameters by cross-validation.
    Train,
    /// Score the trained models on the held-out split.
    Evaluate,
    /// Predict durations for every case in the cases file.
    Predict,
    /// Run ingest through evaluate and write the comparison reports.
    Report,
}

/// Flags override values from the config file.
#[derive(Debug, Args)]
struct Flags {
    /// TOML configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Restrict to one phase; repeatable.
    #[arg(long, global = true, value_parser = parse_phase)]
    phase: Vec<Phase>,
    /// Restrict the roster; repeatable.
    #[arg(long, global = true, value_parser = parse_model)]
    model: Vec<ModelFamily>,
    /// `cluster` or `exact-name`.
    #[arg(long, global = true, value_parser = parse_group_key)]
    group_by: Option<GroupKey>,
    /// Acceptable relative deviation, e.g. 0.2.
    #[arg(long, global = true, allow_negative_numbers = true)]
    tolerance: Option<f64>,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Event log; defaults to `<out>/events.csv`.
    #[arg(long, global = true)]
    events: Option<PathBuf>,
    /// Case attributes; defaults to `<out>/cases.csv`.
    #[arg(long, global = true)]
    cases: Option<PathBuf>,
    /// `csv` or `jsonl`.
    #[arg(long, global = true)]
    format: Option<String>,
    /// Skip malformed records instead of failing.
    #[arg(long, global = true)]
    lenient: bool,
    /// Number of synthetic cases.
    #[arg(long, global = true)]
    n_cases: Option<usize>,
}

fn parse_phase(s: &str) -> Result<Phase, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_model(s: &str) -> Result<ModelFamily, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_group_key(s: &str) -> Result<GroupKey, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn build_config(flags: Flags) -> periop::Result<PipelineConfig> {
    let mut cfg = match &flags.config {
        Some(path) => PipelineConfig::load(path)?,
        None => PipelineConfig::default(),
    };
    if let Some(seed) = flags.seed {
        cfg.seed = seed;
    }
    if !flags.phase.is_empty() {
        let mut phases = flags.phase;
        phases.sort();
        phases.dedup();
        cfg.phases = phases;
    }
    if !flags.model.is_empty() {
        cfg.models.roster = flags.model;
    }
    if let Some(key) = flags.group_by {
        cfg.models.group_by = key;
        // A mean model asked to group is the group-mean model.
        for m in &mut cfg.models.roster {
            if *m == ModelFamily::Mean {
                *m = ModelFamily::GroupMean;
            }
        }
    }
    let mut seen = std::collections::BTreeSet::new();
    cfg.models.roster.retain(|m| seen.insert(*m));
    if let Some(t) = flags.tolerance {
        cfg.tolerance = t;
    }
    if let Some(out) = flags.out {
        cfg.out = out;
    }
    if flags.events.is_some() {
        cfg.input.events = flags.events;
    }
    if flags.cases.is_some() {
        cfg.input.cases = flags.cases;
    }
    if let Some(f) = flags.format {
        cfg.input.format = f;
    }
    if flags.lenient {
        cfg.input.lenient = true;
    }
    if let Some(n) = flags.n_cases {
        cfg.synth.n_cases = n;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{v:.2}"))
}

fn run(command: Command, cfg: &PipelineConfig) -> periop::Result<()> {
    match command {
        Command::Synth => {
            let s = pipeline::synth(cfg)?;
            println!("synth: {} cases written to {}", s.cases, cfg.out.display());
        }
        Command::Ingest => {
            let r = pipeline::ingest(cfg)?;
            println!(
                "ingest: {} events, {} cases ({} invalid, {} records skipped)",
                r.events, r.cases, r.invalid_cases, r.skipped_records
            );
        }
        Command::Clean => {
            for (phase, r) in pipeline::clean(cfg)? {
                println!("clean {phase}: {} of {} retained", r.report.retained, r.report.input);
            }
        }
        Command::Cluster => {
            for s in pipeline::cluster(cfg)? {
                println!(
                    "cluster {}: {} train rows, procedure k={}, anesthesia k={}",
                    s.phase, s.train_rows, s.procedure_k, s.anesthesia_k
                );
            }
        }
        Command::Train => {
            for b in pipeline::train(cfg)? {
                let names: Vec<&str> = b.models.iter().map(|m| m.name.as_str()).collect();
                println!("train {}: {} rows, models: {}", b.phase, b.train_rows, names.join(", "));
            }
        }
        Command::Evaluate => print_metrics(&pipeline::evaluate(cfg)?),
        Command::Predict => {
            for (phase, n) in pipeline::predict(cfg)? {
                println!("predict {phase}: {n} rows");
            }
        }
        Command::Report => {
            let r = pipeline::report(cfg)?;
            println!("ingest: {} cases", r.ingest.cases);
            print_metrics(&r.metrics);
            println!("reports written to {}", cfg.out.display());
        }
    }
    Ok(())
}

fn print_metrics(metrics: &std::collections::BTreeMap<Phase, pipeline::PhaseMetrics>) {
    for (phase, m) in metrics {
        println!("{phase} ({} test rows)", m.test_rows);
        for (name, r) in &m.models {
            println!(
                "  {name:<12} mae {:>8.2}  mape {:>7}  r2 {:>6}",
                r.mae,
                fmt_opt(r.mape),
                fmt_opt(r.r2)
            );
        }
        if let Some(d) = &m.deviation {
            println!(
                "  manual plan  mean |dev| {:.1}%  beyond tolerance {:.1}%",
                d.manual.mean_abs_pct_dev,
                100.0 * d.manual.share_beyond_tol
            );
            for row in &d.models {
                println!(
                    "  {:<18} mean |dev| {:.1}%  improvement {:+.1} pp",
                    row.source, row.mean_abs_pct_dev, row.improvement_pp
                );
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = build_config(cli.flags).and_then(|cfg| run(cli.command, &cfg));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_validation() { 1 } else { 2 })
        }
    }
}
