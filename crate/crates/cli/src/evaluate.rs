use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use atdi::eval::{kendall_tau, ndcg_at, spearman, RankedItem, RankedList};
use atdi::ranker::{LabeledDataset, CV_CUTOFFS};
use clap::Args;
use serde::Serialize;

use crate::config::FileConfig;
use crate::error::{CliError, CliResult};
use crate::files::{read_features, read_model, write_output};

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[arg(long, value_name = "FILE")]
    pub model: PathBuf,
    /// Labelled feature matrix.
    #[arg(long, value_name = "FILE")]
    pub features: PathBuf,
    /// `smell_id,label` table, overriding any label column.
    #[arg(long, value_name = "FILE")]
    pub labels: Option<PathBuf>,
    /// Also write `evaluation.json` here.
    #[arg(short, long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Serialize)]
struct ProjectScores {
    project: String,
    rows: usize,
    ndcg: BTreeMap<String, f64>,
    /// `None` when predictions or labels are constant.
    spearman: Option<f64>,
    kendall_tau: Option<f64>,
}

pub fn run(args: &EvaluateArgs, _cfg: &FileConfig) -> CliResult {
    let model = read_model(&args.model)?;
    let rows = read_features(&args.features, args.labels.as_deref())?;
    let data = LabeledDataset::from_feature_rows(&rows).map_err(CliError::input)?;
    if data.is_empty() {
        return Err(CliError::Input(format!("{}: no labelled rows", args.features.display())));
    }
    model.check_schema(data.feature_names()).map_err(CliError::model)?;
    let mut groups: BTreeMap<&str, Vec<RankedItem>> = BTreeMap::new();
    for r in data.rows() {
        groups.entry(&r.group).or_default().push(RankedItem {
            id: r.id.clone(),
            score: model.predict_raw(&r.features).map_err(CliError::model)?,
            label: r.label as f64,
        });
    }
    let mut results = Vec::new();
    for (project, items) in groups {
        let scores: Vec<f64> = items.iter().map(|i| i.score).collect();
        let labels: Vec<f64> = items.iter().map(|i| i.label).collect();
        let list = RankedList::new(items).map_err(CliError::input)?;
        let ndcg = CV_CUTOFFS
            .iter()
            .map(|c| Ok((c.to_string(), ndcg_at(&list, c.resolve(list.len()))?)))
            .collect::<Result<BTreeMap<_, _>, atdi::eval::EvalError>>()
            .map_err(CliError::input)?;
        results.push(ProjectScores {
            project: project.to_string(),
            rows: list.len(),
            ndcg,
            spearman: spearman(&scores, &labels).ok(),
            kendall_tau: kendall_tau(&scores, &labels).ok(),
        });
    }
    let mut table = String::from("project               rows");
    for c in CV_CUTOFFS {
        let _ = write!(table, "  {:>9}", c.to_string());
    }
    table.push_str("   spearman    kendall\n");
    let opt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.4}"));
    for r in &results {
        let _ = write!(table, "{:<20}  {:>4}", r.project, r.rows);
        for c in CV_CUTOFFS {
            let _ = write!(table, "  {:>9.4}", r.ndcg[&c.to_string()]);
        }
        let _ = writeln!(table, "  {:>9}  {:>9}", opt(r.spearman), opt(r.kendall_tau));
    }
    print!("{table}");
    if let Some(out) = &args.out {
        let mut json = serde_json::to_string_pretty(&results).expect("scores serialise");
        json.push('\n');
        write_output(out, "evaluation.json", json.as_bytes())?;
    }
    Ok(())
}
