//! Architectural smell detectors.
//!
//! | smell | level | rule |
//! |-------|-------|------|
//! | Cyclic Dependency (CD) | class, package | strongly connected component with two or more members |
//! | Hublike Dependency (HL) | class, package | in-, out- and total degree all strictly above the level median |
//! | Unstable Dependency (UD) | package | more than 30% of efferent packages are less stable |
//! | God Component (GC) | package | direct LOC above a percentile threshold |
//!
//! Every detector is a pure function of the graph; ids are assigned in a
//! deterministic order so reruns produce identical instances.

mod cycles;
mod god;
mod hubs;
mod unstable;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::depgraph::{DependencyEdge, DependencyGraph, EntityId, Level};

pub use cycles::{classify_shape, detect_cd, Shape};
pub use god::{detect_gc, gc_threshold, system_package_locs};
pub use hubs::detect_hl;
pub(crate) use hubs::median as hubs_median;
pub use unstable::detect_ud;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SmellType {
    #[serde(rename = "CD")]
    CyclicDependency,
    #[serde(rename = "HL")]
    HublikeDependency,
    #[serde(rename = "UD")]
    UnstableDependency,
    #[serde(rename = "GC")]
    GodComponent,
}

impl SmellType {
    pub const ALL: [SmellType; 4] = [
        SmellType::CyclicDependency,
        SmellType::HublikeDependency,
        SmellType::UnstableDependency,
        SmellType::GodComponent,
    ];

    pub fn code(self) -> &'static str {
        match self {
            SmellType::CyclicDependency => "CD",
            SmellType::HublikeDependency => "HL",
            SmellType::UnstableDependency => "UD",
            SmellType::GodComponent => "GC",
        }
    }

    /// Smells whose extent is the weight of the edges that create them.
    pub fn is_dependency_based(self) -> bool {
        self != SmellType::GodComponent
    }
}

impl fmt::Display for SmellType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for SmellType {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SmellType::ALL
            .into_iter()
            .find(|t| t.code().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown smell type `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SmellId(pub String);

impl SmellId {
    fn new(smell_type: SmellType, level: Level, n: usize) -> Self {
        SmellId(format!("{}-{}-{}", smell_type.code(), level, n))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for SmellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for SmellId {
    fn from(s: &str) -> Self {
        SmellId(s.to_string())
    }
}

/// One concrete occurrence of a smell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmellInstance {
    pub id: SmellId,
    pub smell_type: SmellType,
    pub level: Level,
    /// Affected entities, sorted by name.
    pub affected: Vec<EntityId>,
    /// Edges that create the smell, sorted by `(from, to)`. For GC these are
    /// the class edges inside the component.
    pub induced_edges: Vec<DependencyEdge>,
    /// Hub for HL, main package for UD, the component for GC.
    pub center: Option<EntityId>,
}

#[derive(Debug, Error, PartialEq)]
pub enum DetectionError {
    #[error("expected a {expected} instance, got {actual}")]
    WrongSmellType {
        expected: SmellType,
        actual: SmellType,
    },
    #[error("no LOC values to derive a threshold from")]
    EmptyInput,
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

/// Thresholds for the detectors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DetectorConfig {
    /// Minimum share of less stable efferent packages for UD (exclusive).
    pub ud_ratio: f64,
    /// Nearest-rank percentile of package LOC used as the GC threshold.
    pub gc_percentile: f64,
    /// Per-package LOC values from other systems, merged into the GC
    /// threshold distribution.
    pub gc_benchmark: Vec<u64>,
    /// Fixed GC threshold, bypassing the percentile computation.
    pub gc_threshold: Option<u64>,
}

impl Default for DetectorConfig {
    fn default() -> Self {
        Self {
            ud_ratio: 0.30,
            gc_percentile: 0.90,
            gc_benchmark: Vec::new(),
            gc_threshold: None,
        }
    }
}

/// Output of [`detect_all`].
#[derive(Debug, Clone, PartialEq)]
pub struct Detection {
    pub smells: Vec<SmellInstance>,
    /// Threshold used by the GC detector, `None` when the graph has no
    /// packages.
    pub gc_threshold: Option<u64>,
}

/// Runs every detector: CD and HL at both levels, UD and GC on packages.
pub fn detect_all(graph: &DependencyGraph, config: &DetectorConfig) -> Result<Detection, DetectionError> {
    if !(0.0..1.0).contains(&config.ud_ratio) {
        return Err(DetectionError::InvalidParam(format!(
            "ud_ratio must be in [0, 1), got {}",
            config.ud_ratio
        )));
    }
    let mut smells = Vec::new();
    for level in [Level::Class, Level::Package] {
        smells.extend(detect_cd(graph, level));
    }
    for level in [Level::Class, Level::Package] {
        smells.extend(detect_hl(graph, level));
    }
    smells.extend(detect_ud(graph, config.ud_ratio));

    let locs = system_package_locs(graph);
    let threshold = match (config.gc_threshold, locs.is_empty()) {
        (Some(t), _) => Some(t),
        (None, true) => None,
        (None, false) => Some(gc_threshold(&locs, &config.gc_benchmark, config.gc_percentile)?),
    };
    if let Some(t) = threshold {
        smells.extend(detect_gc(graph, t)?);
    }
    Ok(Detection {
        smells,
        gc_threshold: threshold,
    })
}

pub(crate) fn sort_by_name(graph: &DependencyGraph, ids: &mut [EntityId]) {
    ids.sort_by(|a, b| graph.name(*a).cmp(graph.name(*b)));
}
