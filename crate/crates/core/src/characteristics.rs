//! Smell characteristics: the feature vector fed to the severity model.
//!
//! | feature | meaning |
//! |---------|---------|
//! | `size` | number of affected artefacts |
//! | `n_edges` | number of edges creating the smell |
//! | `page_rank_mean`, `page_rank_max` | PageRank of the affected artefacts |
//! | `affected_type` | 0 = class, 1 = package |
//! | `pct_depth_mean`, `pct_depth_std` | depth in the package tree |
//! | `pct_dist_mean`, `pct_dist_std` | tree distance over all pairs of affected artefacts |
//! | `shape` | cycle shape, CD only |
//! | `instability_gap` | UD only: mean instability of the less stable targets minus the instability of the main package |
//! | `smell_type` | 0 = CD, 1 = HL, 2 = UD, 3 = GC |
//!
//! Standard deviations are population deviations, so a single value has a
//! deviation of 0. Features that do not apply to a smell type are missing
//! (NaN in the model input, an empty cell plus a `_present = 0` flag in CSV).

use std::collections::HashMap;
use std::io::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::depgraph::{
    instability, DependencyGraph, EntityKind, GraphError, Level, PackageContainmentTree, PageRanks,
};
use crate::detection::{classify_shape, DetectionError, Shape, SmellId, SmellInstance, SmellType};

/// Canonical feature order of [`FeatureVector::to_model_input`].
pub const FEATURE_NAMES: [&str; 12] = [
    "size",
    "n_edges",
    "page_rank_mean",
    "page_rank_max",
    "affected_type",
    "pct_depth_mean",
    "pct_depth_std",
    "pct_dist_mean",
    "pct_dist_std",
    "shape",
    "instability_gap",
    "smell_type",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureVector {
    pub size: u32,
    pub n_edges: u32,
    pub page_rank_mean: f64,
    pub page_rank_max: f64,
    pub affected_type: Level,
    pub pct_depth_mean: f64,
    pub pct_depth_std: f64,
    pub pct_dist_mean: f64,
    pub pct_dist_std: f64,
    pub shape: Option<Shape>,
    pub instability_gap: Option<f64>,
    pub smell_type: SmellType,
}

#[derive(Debug, Error)]
pub enum FeatureError {
    #[error("PageRank computed at {ranks} level but smell {smell} is at {level} level")]
    LevelMismatch {
        smell: SmellId,
        level: Level,
        ranks: Level,
    },
    #[error("no PageRank score for an entity of smell {0}")]
    MissingRank(SmellId),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Detection(#[from] DetectionError),
    #[error("feature CSV: {0}")]
    Csv(String),
}

impl From<csv::Error> for FeatureError {
    fn from(e: csv::Error) -> Self {
        FeatureError::Csv(e.to_string())
    }
}

pub fn smell_type_code(t: SmellType) -> u8 {
    match t {
        SmellType::CyclicDependency => 0,
        SmellType::HublikeDependency => 1,
        SmellType::UnstableDependency => 2,
        SmellType::GodComponent => 3,
    }
}

fn smell_type_from_code(c: u8) -> Option<SmellType> {
    SmellType::ALL.into_iter().find(|&t| smell_type_code(t) == c)
}

fn shape_from_code(c: u8) -> Option<Shape> {
    [Shape::Tiny, Shape::Circle, Shape::Chain, Shape::Star, Shape::Clique]
        .into_iter()
        .find(|s| s.code() == c)
}

impl FeatureVector {
    /// Numeric input in [`FEATURE_NAMES`] order; missing features are NaN.
    pub fn to_model_input(&self) -> Vec<f64> {
        vec![
            self.size as f64,
            self.n_edges as f64,
            self.page_rank_mean,
            self.page_rank_max,
            match self.affected_type {
                EntityKind::Class => 0.0,
                EntityKind::Package => 1.0,
            },
            self.pct_depth_mean,
            self.pct_depth_std,
            self.pct_dist_mean,
            self.pct_dist_std,
            self.shape.map_or(f64::NAN, |s| s.code() as f64),
            self.instability_gap.unwrap_or(f64::NAN),
            smell_type_code(self.smell_type) as f64,
        ]
    }

    /// Whether the pairwise PCT distance statistics are backed by at least
    /// one pair of affected artefacts.
    pub fn pct_dist_present(&self) -> bool {
        self.size >= 2
    }
}

/// Computes the characteristics of one smell. `ranks` must be computed at
/// the smell's level.
pub fn compute_features(
    smell: &SmellInstance,
    graph: &DependencyGraph,
    pct: &PackageContainmentTree,
    ranks: &PageRanks,
) -> Result<FeatureVector, FeatureError> {
    if ranks.level != smell.level {
        return Err(FeatureError::LevelMismatch {
            smell: smell.id.clone(),
            level: smell.level,
            ranks: ranks.level,
        });
    }
    let affected = &smell.affected;

    let pr: Vec<f64> = affected
        .iter()
        .map(|&id| ranks.get(id).ok_or_else(|| FeatureError::MissingRank(smell.id.clone())))
        .collect::<Result<_, _>>()?;
    let depths: Vec<f64> = affected
        .iter()
        .map(|&id| pct.depth(id).map(f64::from))
        .collect::<Result<_, _>>()?;
    let mut distances = Vec::new();
    for (i, &a) in affected.iter().enumerate() {
        for &b in &affected[i + 1..] {
            distances.push(f64::from(pct.distance(a, b)?));
        }
    }

    let shape = match smell.smell_type {
        SmellType::CyclicDependency => Some(classify_shape(smell)?),
        _ => None,
    };
    let instability_gap = match (smell.smell_type, smell.center) {
        (SmellType::UnstableDependency, Some(center)) => {
            let own = instability(graph, center)?;
            let others: Vec<f64> = affected
                .iter()
                .filter(|&&id| id != center)
                .map(|&id| instability(graph, id))
                .collect::<Result<_, _>>()?;
            Some(mean(&others) - own)
        }
        _ => None,
    };

    Ok(FeatureVector {
        size: affected.len() as u32,
        n_edges: smell.induced_edges.len() as u32,
        page_rank_mean: mean(&pr),
        page_rank_max: pr.iter().copied().fold(0.0, f64::max),
        affected_type: smell.level,
        pct_depth_mean: mean(&depths),
        pct_depth_std: population_std(&depths),
        pct_dist_mean: mean(&distances),
        pct_dist_std: population_std(&distances),
        shape,
        instability_gap,
        smell_type: smell.smell_type,
    })
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        0.0
    } else {
        values.iter().sum::<f64>() / values.len() as f64
    }
}

fn population_std(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean(values);
    (values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / values.len() as f64).sqrt()
}

/// One row of the feature matrix CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureRow {
    pub smell_id: SmellId,
    /// Project (group) the smell belongs to.
    pub project: String,
    pub features: FeatureVector,
    pub label: Option<u8>,
}

const CSV_HEADER: [&str; 17] = [
    "smell_id",
    "project",
    "size",
    "n_edges",
    "page_rank_mean",
    "page_rank_max",
    "affected_type",
    "pct_depth_mean",
    "pct_depth_std",
    "pct_dist_mean",
    "pct_dist_std",
    "pct_dist_present",
    "shape",
    "shape_present",
    "instability_gap",
    "instability_gap_present",
    "smell_type",
];

/// Writes the feature matrix. A `label` column is appended when any row
/// carries a label.
pub fn write_feature_csv(rows: &[FeatureRow]) -> Result<String, FeatureError> {
    let labelled = rows.iter().any(|r| r.label.is_some());
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = CSV_HEADER.to_vec();
    if labelled {
        header.push("label");
    }
    w.write_record(&header)?;
    for r in rows {
        let f = &r.features;
        let flag = |b: bool| if b { "1" } else { "0" }.to_string();
        let mut rec = vec![
            r.smell_id.to_string(),
            r.project.clone(),
            f.size.to_string(),
            f.n_edges.to_string(),
            f.page_rank_mean.to_string(),
            f.page_rank_max.to_string(),
            if f.affected_type == Level::Package { "1" } else { "0" }.to_string(),
            f.pct_depth_mean.to_string(),
            f.pct_depth_std.to_string(),
            f.pct_dist_mean.to_string(),
            f.pct_dist_std.to_string(),
            flag(f.pct_dist_present()),
            f.shape.map(|s| s.code().to_string()).unwrap_or_default(),
            flag(f.shape.is_some()),
            f.instability_gap.map(|g| g.to_string()).unwrap_or_default(),
            flag(f.instability_gap.is_some()),
            smell_type_code(f.smell_type).to_string(),
        ];
        if labelled {
            rec.push(r.label.map(|l| l.to_string()).unwrap_or_default());
        }
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| FeatureError::Csv(e.to_string()))?;
    let bytes = w.into_inner().map_err(|e| FeatureError::Csv(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| FeatureError::Csv(e.to_string()))
}

pub fn read_feature_csv(text: &str) -> Result<Vec<FeatureRow>, FeatureError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers()?.clone();
    let col: HashMap<&str, usize> = headers.iter().enumerate().map(|(i, h)| (h, i)).collect();
    for name in CSV_HEADER {
        if !col.contains_key(name) {
            return Err(FeatureError::Csv(format!("missing column `{name}`")));
        }
    }
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let cell = |name: &str| rec.get(col[name]).unwrap_or("").trim();
        let bad = |name: &str| FeatureError::Csv(format!("line {line}: invalid `{name}` value `{}`", cell(name)));
        let float = |name: &str| cell(name).parse::<f64>().map_err(|_| bad(name));
        let int = |name: &str| cell(name).parse::<u32>().map_err(|_| bad(name));
        let present = |name: &str| match cell(name) {
            "1" => Ok(true),
            "0" => Ok(false),
            _ => Err(bad(name)),
        };

        let shape = if present("shape_present")? {
            let code = int("shape")?;
            Some(u8::try_from(code).ok().and_then(shape_from_code).ok_or_else(|| bad("shape"))?)
        } else {
            None
        };
        let instability_gap = if present("instability_gap_present")? {
            Some(float("instability_gap")?)
        } else {
            None
        };
        let smell_type = u8::try_from(int("smell_type")?)
            .ok()
            .and_then(smell_type_from_code)
            .ok_or_else(|| bad("smell_type"))?;
        let affected_type = match cell("affected_type") {
            "0" => Level::Class,
            "1" => Level::Package,
            _ => return Err(bad("affected_type")),
        };
        let label = match col.get("label").and_then(|&c| rec.get(c)).map(str::trim) {
            None | Some("") => None,
            Some(v) => Some(
                v.parse::<u8>()
                    .ok()
                    .filter(|l| (1..=10).contains(l))
                    .ok_or_else(|| bad("label"))?,
            ),
        };
        let smell_id = cell("smell_id");
        if smell_id.is_empty() {
            return Err(bad("smell_id"));
        }
        rows.push(FeatureRow {
            smell_id: SmellId(smell_id.to_string()),
            project: cell("project").to_string(),
            features: FeatureVector {
                size: int("size")?,
                n_edges: int("n_edges")?,
                page_rank_mean: float("page_rank_mean")?,
                page_rank_max: float("page_rank_max")?,
                affected_type,
                pct_depth_mean: float("pct_depth_mean")?,
                pct_depth_std: float("pct_depth_std")?,
                pct_dist_mean: float("pct_dist_mean")?,
                pct_dist_std: float("pct_dist_std")?,
                shape,
                instability_gap,
                smell_type,
            },
            label,
        });
    }
    Ok(rows)
}

/// Writes a `smell_id,label` table.
pub fn write_label_csv(labels: &[(SmellId, u8)]) -> String {
    let mut out = Vec::new();
    let _ = writeln!(out, "smell_id,label");
    for (id, l) in labels {
        let _ = writeln!(out, "{id},{l}");
    }
    String::from_utf8(out).expect("ascii output")
}

/// Reads a `smell_id,label` table. Labels must be integers in `1..=10` and
/// ids unique.
pub fn read_label_csv(text: &str) -> Result<Vec<(SmellId, u8)>, FeatureError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["smell_id", "label"] {
        return Err(FeatureError::Csv("label CSV header must be `smell_id,label`".into()));
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let id = rec.get(0).unwrap_or_default().to_string();
        let label: u8 = rec
            .get(1)
            .and_then(|l| l.trim().parse().ok())
            .filter(|l| (1..=10).contains(l))
            .ok_or_else(|| FeatureError::Csv(format!("line {line}: label must be an integer in 1..=10")))?;
        if !seen.insert(id.clone()) {
            return Err(FeatureError::Csv(format!("line {line}: duplicate smell `{id}`")));
        }
        out.push((SmellId(id), label));
    }
    Ok(out)
}
