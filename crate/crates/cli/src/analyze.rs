use std::path::{Path, PathBuf};

use atdi::characteristics::write_feature_csv;
use atdi::depgraph::{extract_lexical_dependencies, parse_edge_list, DependencyGraph};
use atdi::pipeline::{analyze, PipelineError, SeveritySource};
use atdi::report::{emit, ReportFormat};
use clap::{ArgGroup, Args};

use crate::config::FileConfig;
use crate::error::{CliError, CliResult};
use crate::files::{read_model, read_text, write_output};

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("input").required(true).args(["src", "graph"])))]
#[command(group(ArgGroup::new("severity_source").args(["model", "severity"])))]
pub struct AnalyzeArgs {
    /// Source tree to extract dependencies from.
    #[arg(long, value_name = "DIR")]
    pub src: Option<PathBuf>,
    /// Dependency graph in edge-list format.
    #[arg(long, value_name = "FILE")]
    pub graph: Option<PathBuf>,
    /// Severity model (JSON or binary).
    #[arg(long, value_name = "FILE")]
    pub model: Option<PathBuf>,
    /// Model-free run with one severity for every smell, e.g. `fixed:5`.
    #[arg(long, value_name = "fixed:V", value_parser = parse_fixed)]
    pub severity: Option<f64>,
    /// Output directory.
    #[arg(short, long, value_name = "DIR")]
    pub out: PathBuf,
    /// Comma-separated report formats: json, csv, dot.
    #[arg(long, value_delimiter = ',', default_value = "json")]
    pub format: Vec<ReportFormat>,
    /// Project name (default: input file or directory name).
    #[arg(long)]
    pub project: Option<String>,
    /// UD threshold: share of less stable dependencies (exclusive).
    #[arg(long)]
    pub ud_ratio: Option<f64>,
    /// Percentile of package LOC used as the GC threshold.
    #[arg(long)]
    pub gc_percentile: Option<f64>,
    /// Fixed GC threshold in lines of code.
    #[arg(long)]
    pub gc_threshold: Option<u64>,
}

fn parse_fixed(s: &str) -> Result<f64, String> {
    let v: f64 = s
        .strip_prefix("fixed:")
        .ok_or("expected `fixed:<value>`")?
        .parse()
        .map_err(|_| format!("bad severity `{s}`"))?;
    if (1.0..=10.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("severity {v} outside [1, 10]"))
    }
}

fn project_name(path: &Path) -> String {
    path.file_stem()
        .or_else(|| path.file_name())
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "project".into())
}

fn load_graph(args: &AnalyzeArgs, cfg: &FileConfig) -> CliResult<(DependencyGraph, String)> {
    match (&args.src, &args.graph) {
        (Some(src), None) => {
            let g = extract_lexical_dependencies(src, &cfg.extractor).map_err(CliError::input)?;
            Ok((g, project_name(&src.canonicalize().unwrap_or_else(|_| src.clone()))))
        }
        (None, Some(path)) => {
            let g = parse_edge_list(&read_text(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            Ok((g, project_name(path)))
        }
        _ => Err(CliError::Usage("give exactly one of --src and --graph".into())),
    }
}

pub fn run(args: &AnalyzeArgs, cfg: &FileConfig) -> CliResult {
    // Resolve the severity source first so a missing model fails before any work.
    let model = match (&args.model, args.severity) {
        (Some(p), _) => Some(read_model(p)?),
        (None, Some(_)) => None,
        (None, None) => return Err(CliError::Model("no --model given (use --severity fixed:<v> for a model-free run)".into())),
    };
    let mut detector = cfg.detector.clone();
    if let Some(r) = args.ud_ratio {
        detector.ud_ratio = r;
    }
    if let Some(p) = args.gc_percentile {
        detector.gc_percentile = p;
    }
    if args.gc_threshold.is_some() {
        detector.gc_threshold = args.gc_threshold;
    }
    let (graph, default_name) = load_graph(args, cfg)?;
    let project = args.project.clone().unwrap_or(default_name);
    let analysis = analyze(&graph, &detector).map_err(CliError::input)?;
    let source = match &model {
        Some(m) => SeveritySource::Model(m),
        None => SeveritySource::Fixed(args.severity.expect("checked above")),
    };
    let report = analysis.report(&project, &graph, source).map_err(|e| match e {
        PipelineError::Model(m) => CliError::model(m),
        other => CliError::input(other),
    })?;

    let features = write_feature_csv(&analysis.feature_rows(&project)).map_err(CliError::input)?;
    write_output(&args.out, "features.csv", features.as_bytes())?;
    let mut formats = args.format.clone();
    formats.sort();
    formats.dedup();
    for f in formats {
        write_output(&args.out, &format!("report.{}", f.extension()), &emit(&report, f))?;
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    println!(
        "{}: {} smells, ATDI {}, density {} per 1000 LOC ({} LOC)",
        report.project,
        report.records.len(),
        atdi::report::sig6(report.total),
        atdi::report::sig6(report.density),
        report.loc
    );
    Ok(())
}
