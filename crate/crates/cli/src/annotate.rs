use std::collections::{BTreeMap, HashMap};
use std::fs::OpenOptions;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use atdi::annotation::{
    auto_budget, extend_ratings, format_comparison, group_rows, initial_scores, parse_log, ratings_to_labels,
    select_representatives, Comparison, Neighbourhood, Outcome, Session,
};
use atdi::characteristics::{write_label_csv, FeatureRow};
use atdi::detection::{SmellId, SmellType};
use clap::Args;

use crate::config::FileConfig;
use crate::error::{CliError, CliResult};
use crate::files::{read_features, read_text, write_output};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Budget {
    /// A third of all representative pairs, rounded up.
    Auto,
    All,
    Fixed(usize),
}

impl FromStr for Budget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Budget::Auto),
            "all" => Ok(Budget::All),
            n => n.parse().map(Budget::Fixed).map_err(|_| format!("budget must be auto, all or a count, got `{s}`")),
        }
    }
}

impl Budget {
    fn for_group(self, representatives: usize) -> Option<usize> {
        match self {
            Budget::Auto => Some(auto_budget(representatives)),
            Budget::All => None,
            Budget::Fixed(n) => Some(n),
        }
    }
}

#[derive(Debug, Args)]
pub struct AnnotateArgs {
    /// Feature matrix of the smells to annotate.
    #[arg(long, value_name = "FILE")]
    pub features: PathBuf,
    /// Append-only comparison log; replayed first when it exists.
    #[arg(long, value_name = "FILE")]
    pub log: PathBuf,
    /// Output directory for `labels.csv`.
    #[arg(short, long, value_name = "DIR")]
    pub out: PathBuf,
    /// Only annotate this project.
    #[arg(long)]
    pub project: Option<String>,
    #[arg(long, default_value = "annotator")]
    pub annotator: String,
    /// Comparisons per (project, smell type) group: auto, all or a number.
    #[arg(long, default_value = "auto")]
    pub budget: Budget,
    /// Timestamp written to new log lines (default: current UNIX time).
    #[arg(long)]
    pub timestamp: Option<String>,
    /// `report.json` from `analyze`, used to show affected entities and edges.
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,
}

struct Group {
    project: String,
    smell_type: SmellType,
    neighbourhoods: Vec<Neighbourhood>,
    session: Session,
}

/// What to show for one smell in the prompt.
fn descriptions(rows: &[FeatureRow], report: Option<&Path>) -> CliResult<HashMap<SmellId, Vec<String>>> {
    let mut out: HashMap<SmellId, Vec<String>> = rows
        .iter()
        .map(|r| {
            let f = &r.features;
            (r.smell_id.clone(), vec![format!("{} {}, size {}, {} edges", f.smell_type, f.affected_type, f.size, f.n_edges)])
        })
        .collect();
    let Some(path) = report else {
        return Ok(out);
    };
    let doc: serde_json::Value =
        serde_json::from_str(&read_text(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    for rec in doc["records"].as_array().into_iter().flatten() {
        let Some(id) = rec["id"].as_str() else { continue };
        let Some(lines) = out.get_mut(&SmellId::from(id)) else { continue };
        if let Some(aff) = rec["affected"].as_array() {
            let names: Vec<&str> = aff.iter().filter_map(|a| a.as_str()).collect();
            lines.push(format!("affects {}", names.join(", ")));
        }
        for e in rec["edges"].as_array().into_iter().flatten() {
            lines.push(format!(
                "{} -> {} ({} lines)",
                e["from"].as_str().unwrap_or("?"),
                e["to"].as_str().unwrap_or("?"),
                e["weight"]
            ));
        }
    }
    Ok(out)
}

fn build_groups(rows: &[FeatureRow], args: &AnnotateArgs, cfg: &FileConfig) -> CliResult<Vec<Group>> {
    let mut groups = Vec::new();
    for ((project, smell_type), idx) in group_rows(rows) {
        let ids: Vec<SmellId> = idx.iter().map(|&i| rows[i].smell_id.clone()).collect();
        let feats: Vec<_> = idx.iter().map(|&i| rows[i].features.clone()).collect();
        let neighbourhoods = select_representatives(&ids, &initial_scores(&feats)).map_err(CliError::input)?;
        let reps: Vec<SmellId> = neighbourhoods.iter().map(|n| n.representative.clone()).collect();
        let budget = args.budget.for_group(reps.len());
        let session = Session::new(project.clone(), reps, cfg.trueskill)
            .map_err(|e| CliError::Usage(e.to_string()))?
            .with_budget(budget);
        groups.push(Group {
            project,
            smell_type,
            neighbourhoods,
            session,
        });
    }
    Ok(groups)
}

fn parse_answer(s: &str) -> Option<Option<Outcome>> {
    match s.trim().to_ascii_lowercase().as_str() {
        "a" | "1" => Some(Some(Outcome::AWins)),
        "b" | "2" => Some(Some(Outcome::BWins)),
        "d" | "draw" | "=" => Some(Some(Outcome::Draw)),
        "q" | "quit" => Some(None),
        _ => None,
    }
}

pub fn run(args: &AnnotateArgs, cfg: &FileConfig) -> CliResult {
    let mut rows = read_features(&args.features, None)?;
    if let Some(p) = &args.project {
        rows.retain(|r| &r.project == p);
    }
    if rows.is_empty() {
        return Err(CliError::Input(format!("{}: no smells to annotate", args.features.display())));
    }
    let info = descriptions(&rows, args.report.as_deref())?;
    let mut groups = build_groups(&rows, args, cfg)?;
    let owner: HashMap<SmellId, usize> = groups
        .iter()
        .enumerate()
        .flat_map(|(g, grp)| grp.session.ratings().keys().map(move |id| (id.clone(), g)))
        .collect();

    if args.log.exists() {
        let log = parse_log(&read_text(&args.log)?).map_err(|e| CliError::Input(format!("{}: {e}", args.log.display())))?;
        for (n, c) in log.into_iter().enumerate() {
            if args.project.as_ref().is_some_and(|p| p != &c.project) {
                continue;
            }
            let g = match (owner.get(&c.a), owner.get(&c.b)) {
                (Some(x), Some(y)) if x == y => *x,
                _ => {
                    return Err(CliError::Input(format!(
                        "{}: comparison {} ({} vs {}) does not pair two representatives of one group",
                        args.log.display(),
                        n + 1,
                        c.a,
                        c.b
                    )))
                }
            };
            groups[g]
                .session
                .record(c)
                .map_err(|e| CliError::Input(format!("{}: {e}", args.log.display())))?;
        }
    }

    let mut log = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&args.log)
        .map_err(|e| CliError::Input(format!("{}: {e}", args.log.display())))?;
    let stdin = io::stdin();
    let mut input = stdin.lock().lines();
    let mut stdout = io::stdout().lock();
    let mut recorded = 0usize;
    'groups: for grp in &mut groups {
        while let Some((a, b)) = grp.session.next_pair() {
            let left = grp.session.budget_left().map_or("unbounded".into(), |n| format!("{n} left"));
            let _ = writeln!(stdout, "\n[{} {}, {left}] which smell is more severe?", grp.project, grp.smell_type);
            for (tag, id) in [("a", &a), ("b", &b)] {
                let _ = writeln!(stdout, "  {tag}) {id}");
                for line in info.get(id).into_iter().flatten() {
                    let _ = writeln!(stdout, "       {line}");
                }
            }
            let outcome = loop {
                let _ = write!(stdout, "answer [a/b/d(raw)/q(uit)]: ");
                let _ = stdout.flush();
                let Some(line) = input.next() else { break 'groups };
                let line = line.map_err(CliError::input)?;
                match parse_answer(&line) {
                    Some(None) => break 'groups,
                    Some(Some(Outcome::Draw)) if cfg.trueskill.draw_prob == 0.0 => {
                        let _ = writeln!(stdout, "draws are disabled (draw_prob = 0)");
                    }
                    Some(Some(o)) => break o,
                    None => {
                        let _ = writeln!(stdout, "please answer a, b, d or q");
                    }
                }
            };
            let c = Comparison {
                project: grp.project.clone(),
                a,
                b,
                outcome,
                annotator: args.annotator.clone(),
                timestamp: args.timestamp.clone().unwrap_or_else(|| {
                    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0).to_string()
                }),
            };
            log.write_all(format_comparison(&c).as_bytes())
                .and_then(|_| log.flush())
                .map_err(|e| CliError::Input(format!("{}: {e}", args.log.display())))?;
            grp.session.record(c).map_err(CliError::input)?;
            recorded += 1;
        }
    }
    let _ = writeln!(stdout);

    let mut per_project: BTreeMap<&str, BTreeMap<SmellId, _>> = BTreeMap::new();
    for grp in &groups {
        let extended = extend_ratings(&grp.neighbourhoods, grp.session.ratings()).map_err(CliError::input)?;
        per_project.entry(&grp.project).or_default().extend(extended);
    }
    let mut labels: Vec<(SmellId, u8)> = per_project.values().flat_map(ratings_to_labels).collect();
    labels.sort();
    let path = write_output(&args.out, "labels.csv", write_label_csv(&labels).as_bytes())?;
    let _ = writeln!(stdout, "{recorded} new comparisons; {} labels -> {}", labels.len(), path.display());
    Ok(())
}
