use std::fmt::Write as _;
use std::path::PathBuf;

use atdi::ranker::{cross_validate, save_model, train, CvReport, LabeledDataset, ModelFormat, Objective, CV_CUTOFFS};
use clap::Args;

use crate::config::FileConfig;
use crate::error::{CliError, CliResult};
use crate::files::{read_features, write_output};
use crate::SeedArg;

#[derive(Debug, Args)]
pub struct TrainArgs {
    /// Labelled feature matrix (CSV written by `analyze`, plus a label column).
    #[arg(long, value_name = "FILE")]
    pub features: PathBuf,
    /// `smell_id,label` table, overriding any label column.
    #[arg(long, value_name = "FILE")]
    pub labels: Option<PathBuf>,
    /// Output directory for the model and the cross-validation report.
    #[arg(short, long, value_name = "DIR")]
    pub out: PathBuf,
    #[arg(long)]
    pub objective: Option<Objective>,
    #[arg(long)]
    pub trees: Option<usize>,
    #[arg(long)]
    pub max_depth: Option<usize>,
    #[arg(long)]
    pub learning_rate: Option<f64>,
    #[arg(long)]
    pub min_leaf: Option<usize>,
    /// Cross-validation folds.
    #[arg(long, default_value_t = 7)]
    pub folds: usize,
    /// Skip cross-validation.
    #[arg(long)]
    pub no_cv: bool,
    /// Model file format: json or bin.
    #[arg(long, default_value = "json")]
    pub model_format: ModelFormat,
    #[command(flatten)]
    pub seed: SeedArg,
}

pub fn cv_table(report: &CvReport) -> String {
    let mut out = String::from("fold  rows");
    for c in CV_CUTOFFS {
        let _ = write!(out, "  {:>9}", c.to_string());
    }
    out.push('\n');
    for f in &report.folds {
        let _ = write!(out, "{:>4}  {:>4}", f.fold + 1, f.test_rows);
        for c in CV_CUTOFFS {
            let _ = write!(out, "  {:>9.4}", f.ndcg[&c]);
        }
        out.push('\n');
    }
    for (name, pick) in [("mean", true), ("std", false)] {
        let _ = write!(out, "{name:>4}  {:>4}", "");
        for s in &report.summary {
            let _ = write!(out, "  {:>9.4}", if pick { s.mean } else { s.std });
        }
        out.push('\n');
    }
    out
}

pub fn run(args: &TrainArgs, cfg: &FileConfig) -> CliResult {
    let rows = read_features(&args.features, args.labels.as_deref())?;
    let data = LabeledDataset::from_feature_rows(&rows).map_err(CliError::input)?;
    if data.is_empty() {
        return Err(CliError::Input(format!("{}: no labelled rows", args.features.display())));
    }
    let seed = args.seed.seed.unwrap_or(cfg.seed);
    let mut params = cfg.train.clone();
    params.seed = seed;
    if let Some(o) = args.objective {
        params.objective = o;
    }
    if let Some(n) = args.trees {
        params.n_trees = n;
    }
    if let Some(d) = args.max_depth {
        params.max_depth = d;
    }
    if let Some(lr) = args.learning_rate {
        params.learning_rate = lr;
    }
    if let Some(m) = args.min_leaf {
        params.min_leaf = m;
    }
    params.validate().map_err(|e| CliError::Usage(e.to_string()))?;

    if !args.no_cv {
        let report = cross_validate(&data, args.folds, &params, seed).map_err(CliError::input)?;
        let table = cv_table(&report);
        print!("{table}");
        let mut json = serde_json::to_string_pretty(&report).expect("report serialises");
        json.push('\n');
        write_output(&args.out, "cv.json", json.as_bytes())?;
    }
    let model = train(&data, &params).map_err(CliError::input)?;
    let name = match args.model_format {
        ModelFormat::Json => "model.json",
        ModelFormat::Binary => "model.bin",
    };
    let path = write_output(&args.out, name, &save_model(&model, args.model_format))?;
    println!("trained {} trees on {} rows -> {}", model.trees.len(), data.len(), path.display());
    Ok(())
}
