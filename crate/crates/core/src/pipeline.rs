//! Graph to report in one call.
//!
//! ```
//! use atdi::depgraph::parse_edge_list;
//! use atdi::detection::DetectorConfig;
//! use atdi::pipeline::{analyze, SeveritySource};
//!
//! let g = parse_edge_list("entity a class p.A 30\nentity b class p.B 40\nedge a b 50\nedge b a 15\n").unwrap();
//! let analysis = analyze(&g, &DetectorConfig::default()).unwrap();
//! let report = analysis.report("demo", &g, SeveritySource::Fixed(2.0)).unwrap();
//! assert_eq!(report.records[0].extent, 65.0);
//! assert_eq!(report.total, 130.0);
//! ```

use thiserror::Error;

use crate::characteristics::{compute_features, FeatureError, FeatureRow, FeatureVector};
use crate::depgraph::{page_rank, DependencyGraph, Level, PackageContainmentTree, PageRankParams};
use crate::detection::{detect_all, DetectionError, DetectorConfig, SmellInstance};
use crate::extent::{build_overlap_index, extent, median_package_loc, ExtentError};
use crate::ranker::{GbdtModel, RankerError};
use crate::report::{project_report, AtdiReport, ReportError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Detection(#[from] DetectionError),
    #[error(transparent)]
    Features(#[from] FeatureError),
    #[error(transparent)]
    Extent(#[from] ExtentError),
    #[error(transparent)]
    Model(#[from] RankerError),
    #[error(transparent)]
    Report(#[from] ReportError),
}

/// Where severities come from.
#[derive(Debug, Clone, Copy)]
pub enum SeveritySource<'m> {
    Model(&'m GbdtModel),
    /// Same severity for every smell.
    Fixed(f64),
}

/// Smells of one graph with their features and extents, index-aligned.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub smells: Vec<SmellInstance>,
    pub features: Vec<FeatureVector>,
    pub extents: Vec<f64>,
    pub gc_threshold: Option<u64>,
    pub t_median: f64,
}

pub fn analyze(graph: &DependencyGraph, config: &DetectorConfig) -> Result<Analysis, PipelineError> {
    let detection = detect_all(graph, config)?;
    let pct = PackageContainmentTree::from_graph(graph);
    let class_ranks = page_rank(graph, Level::Class, PageRankParams::default());
    let package_ranks = page_rank(graph, Level::Package, PageRankParams::default());
    let overlap = build_overlap_index(&detection.smells);
    let t_median = median_package_loc(graph);
    let mut features = Vec::with_capacity(detection.smells.len());
    let mut extents = Vec::with_capacity(detection.smells.len());
    for s in &detection.smells {
        let ranks = match s.level {
            Level::Class => &class_ranks,
            Level::Package => &package_ranks,
        };
        features.push(compute_features(s, graph, &pct, ranks)?);
        extents.push(extent(s, graph, &overlap, t_median)?);
    }
    Ok(Analysis {
        smells: detection.smells,
        features,
        extents,
        gc_threshold: detection.gc_threshold,
        t_median,
    })
}

impl Analysis {
    pub fn severities(&self, source: SeveritySource<'_>) -> Result<Vec<f64>, PipelineError> {
        Ok(match source {
            SeveritySource::Fixed(v) => vec![v; self.smells.len()],
            SeveritySource::Model(m) if self.smells.is_empty() => {
                // still reject a model built for other features
                m.predict_features(&[])?
            }
            SeveritySource::Model(m) => m.predict_features(&self.features)?,
        })
    }

    pub fn feature_rows(&self, project: &str) -> Vec<FeatureRow> {
        self.smells
            .iter()
            .zip(&self.features)
            .map(|(s, f)| FeatureRow {
                smell_id: s.id.clone(),
                project: project.to_string(),
                features: f.clone(),
                label: None,
            })
            .collect()
    }

    pub fn report(&self, project: &str, graph: &DependencyGraph, source: SeveritySource<'_>) -> Result<AtdiReport, PipelineError> {
        let sev = self.severities(source)?;
        Ok(project_report(project, &self.smells, graph, &sev, &self.extents, graph.total_loc().max(1))?)
    }
}
