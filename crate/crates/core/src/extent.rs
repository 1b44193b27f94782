//! Smell extent: the number of lines of code that create a smell.
//!
//! Dependency-based smells (CD, HL, UD) sum the weights of the edges that
//! create them. An edge shared by several smells is split evenly between
//! them, so summing the extents of all smells never counts a line twice:
//!
//! ```text
//! m(x) = sum over e in E_x of w(e) / o(e)
//! ```
//!
//! where `o(e)` is the number of dependency-based smells containing `e`.
//!
//! A God Component's extent is its LOC above the system median, scaled by
//! the density of the class graph inside it:
//!
//! ```text
//! m(x) = (LOC(x) - T_median) * sqrt(|E_x| / (2 |V_x|))
//! ```
//!
//! with `|E_x|` and `|V_x|` clamped to at least 1. Every extent is finally
//! clamped to at least 1.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::depgraph::{DependencyGraph, EntityId};
use crate::detection::{hubs_median, system_package_locs, SmellInstance, SmellType};

#[derive(Debug, Error, PartialEq)]
pub enum ExtentError {
    #[error("smell {id} is a {actual}, expected {expected}")]
    WrongSmellType {
        id: String,
        expected: &'static str,
        actual: SmellType,
    },
    #[error("edge {from} -> {to} of smell {id} is missing from the overlap index")]
    MissingOverlapEntry {
        id: String,
        from: EntityId,
        to: EntityId,
    },
    #[error("God Component {id} has {loc} LOC, not above the median {median}")]
    NonPositiveDelta { id: String, loc: u64, median: f64 },
    #[error("smell {0} has no center")]
    MissingCenter(String),
}

/// Number of dependency-based smells each edge takes part in.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeOverlapIndex {
    counts: BTreeMap<(EntityId, EntityId), u32>,
}

impl EdgeOverlapIndex {
    pub fn get(&self, from: EntityId, to: EntityId) -> Option<u32> {
        self.counts.get(&(from, to)).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((EntityId, EntityId), u32)> + '_ {
        self.counts.iter().map(|(&k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Counts, for every edge, the CD/HL/UD instances whose induced edges
/// contain it. GC instances are ignored.
pub fn build_overlap_index(smells: &[SmellInstance]) -> EdgeOverlapIndex {
    let mut counts = BTreeMap::new();
    for smell in smells.iter().filter(|s| s.smell_type.is_dependency_based()) {
        let mut keys: Vec<_> = smell.induced_edges.iter().map(|e| e.key()).collect();
        keys.sort_unstable();
        keys.dedup();
        for key in keys {
            *counts.entry(key).or_insert(0) += 1;
        }
    }
    EdgeOverlapIndex { counts }
}

/// Overlap-weighted sum of edge weights for a CD, HL or UD instance.
pub fn extent_dependency(smell: &SmellInstance, overlap: &EdgeOverlapIndex) -> Result<f64, ExtentError> {
    if !smell.smell_type.is_dependency_based() {
        return Err(ExtentError::WrongSmellType {
            id: smell.id.to_string(),
            expected: "CD, HL or UD",
            actual: smell.smell_type,
        });
    }
    smell.induced_edges.iter().try_fold(0.0, |acc, e| {
        let o = overlap
            .get(e.from, e.to)
            .filter(|&o| o > 0)
            .ok_or_else(|| ExtentError::MissingOverlapEntry {
                id: smell.id.to_string(),
                from: e.from,
                to: e.to,
            })?;
        Ok(acc + e.weight as f64 / o as f64)
    })
}

/// Median direct LOC over the system's packages.
pub fn median_package_loc(graph: &DependencyGraph) -> f64 {
    let locs: Vec<f64> = system_package_locs(graph).into_iter().map(|l| l as f64).collect();
    hubs_median(&locs)
}

/// Excess LOC of a God Component scaled by its internal coupling.
pub fn extent_gc(smell: &SmellInstance, graph: &DependencyGraph, t_median: f64) -> Result<f64, ExtentError> {
    if smell.smell_type != SmellType::GodComponent {
        return Err(ExtentError::WrongSmellType {
            id: smell.id.to_string(),
            expected: "GC",
            actual: smell.smell_type,
        });
    }
    let pkg = smell
        .center
        .ok_or_else(|| ExtentError::MissingCenter(smell.id.to_string()))?;
    let loc = graph.entity(pkg).loc;
    let delta = loc as f64 - t_median;
    if delta <= 0.0 {
        return Err(ExtentError::NonPositiveDelta {
            id: smell.id.to_string(),
            loc,
            median: t_median,
        });
    }
    let vertices = graph.classes_in(pkg).count().max(1) as f64;
    let edges = smell.induced_edges.len().max(1) as f64;
    Ok(gc_extent_formula(delta, edges, vertices))
}

pub(crate) fn gc_extent_formula(delta: f64, edges: f64, vertices: f64) -> f64 {
    delta * (edges / (2.0 * vertices)).sqrt()
}

/// Extent of any smell, clamped to at least 1.
pub fn extent(
    smell: &SmellInstance,
    graph: &DependencyGraph,
    overlap: &EdgeOverlapIndex,
    t_median: f64,
) -> Result<f64, ExtentError> {
    let raw = match smell.smell_type {
        SmellType::GodComponent => extent_gc(smell, graph, t_median)?,
        _ => extent_dependency(smell, overlap)?,
    };
    Ok(raw.max(1.0))
}
