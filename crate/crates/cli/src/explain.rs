use std::collections::BTreeMap;
use std::path::PathBuf;

use atdi::explain::{attributions_csv, attributions_jsonl, summarize_attributions, Attribution, Explainer};
use atdi::characteristics::FEATURE_NAMES;
use clap::Args;

use crate::config::FileConfig;
use crate::error::{CliError, CliResult};
use crate::files::{read_features, read_model, write_output};

#[derive(Debug, Args)]
pub struct ExplainArgs {
    #[arg(long, value_name = "FILE")]
    pub model: PathBuf,
    /// Feature matrix of the smells to explain (e.g. `features.csv` from `analyze`).
    #[arg(long, value_name = "FILE")]
    pub features: PathBuf,
    /// Background feature matrix for the expected value (default: the
    /// training covers stored in the model).
    #[arg(long, value_name = "FILE")]
    pub background: Option<PathBuf>,
    /// Output directory for `attributions.csv` and `attributions.jsonl`.
    #[arg(short, long, value_name = "DIR")]
    pub out: PathBuf,
    /// Fail (exit 4) unless base + sum of attributions equals every raw score.
    #[arg(long)]
    pub verify: bool,
    /// Absolute tolerance for `--verify`.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,
}

pub fn run(args: &ExplainArgs, _cfg: &FileConfig) -> CliResult {
    let model = read_model(&args.model)?;
    let names: Vec<String> = FEATURE_NAMES.iter().map(|s| s.to_string()).collect();
    model.check_schema(&names).map_err(CliError::model)?;
    let rows = read_features(&args.features, None)?;
    let background: Option<Vec<Vec<f64>>> = match &args.background {
        Some(p) => Some(
            read_features(p, None)?
                .iter()
                .map(|r| r.features.to_model_input())
                .collect(),
        ),
        None => None,
    };
    let explainer = match &background {
        Some(b) => Explainer::new(&model, b).map_err(CliError::input)?,
        None => Explainer::from_model_covers(&model),
    };
    let mut attrs: Vec<(String, Attribution)> = Vec::with_capacity(rows.len());
    for r in &rows {
        let a = explainer.explain(&r.features.to_model_input()).map_err(CliError::model)?;
        attrs.push((r.smell_id.to_string(), a));
    }
    // severities are min-max mapped per project for ranking models
    let mut by_project: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        by_project.entry(&r.project).or_default().push(i);
    }
    let mut severities = vec![0.0; rows.len()];
    for idx in by_project.values() {
        let xs: Vec<Vec<f64>> = idx.iter().map(|&i| rows[i].features.to_model_input()).collect();
        let sev = model.predict_severities(&xs).map_err(CliError::model)?;
        for (&i, s) in idx.iter().zip(sev) {
            severities[i] = s;
        }
    }
    write_output(&args.out, "attributions.csv", attributions_csv(&names, &attrs).as_bytes())?;
    write_output(&args.out, "attributions.jsonl", attributions_jsonl(&names, &attrs, Some(&severities)).as_bytes())?;

    let plain: Vec<Attribution> = attrs.iter().map(|(_, a)| a.clone()).collect();
    println!("feature               mean|phi|   mean(+)   mean(-)");
    for f in summarize_attributions(&names, &plain) {
        println!("{:<20} {:>9.4} {:>9.4} {:>9.4}", f.feature, f.mean_abs, f.mean_positive, f.mean_negative);
    }
    if args.verify {
        let worst = attrs
            .iter()
            .map(|(id, a)| (id, a.local_accuracy_error()))
            .fold(None::<(&String, f64)>, |acc, (id, e)| match acc {
                Some((_, best)) if best >= e => acc,
                _ => Some((id, e)),
            });
        if let Some((id, err)) = worst {
            if err.is_nan() || err > args.tolerance {
                return Err(CliError::Verify(format!(
                    "smell {id}: |base + sum(phi) - prediction| = {err:e} > {:e}",
                    args.tolerance
                )));
            }
            println!("local accuracy verified: max error {err:e}");
        }
    }
    Ok(())
}
