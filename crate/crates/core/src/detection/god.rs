use super::{DetectionError, SmellId, SmellInstance, SmellType};
use crate::depgraph::{DependencyGraph, Level};

/// Per-package direct LOC of the packages that contain at least one class.
/// Graphs without classes (package-level inputs) use every package.
pub fn system_package_locs(graph: &DependencyGraph) -> Vec<u64> {
    let with_classes: Vec<u64> = graph
        .entities_at(Level::Package)
        .filter(|p| graph.classes_in(p.id).next().is_some())
        .map(|p| p.loc)
        .collect();
    if with_classes.is_empty() {
        graph.entities_at(Level::Package).map(|p| p.loc).collect()
    } else {
        with_classes
    }
}

/// GC size threshold: the nearest-rank `percentile` of the system values
/// merged with `benchmark`, raised to at least the system median and to 1.
pub fn gc_threshold(system: &[u64], benchmark: &[u64], percentile: f64) -> Result<u64, DetectionError> {
    if system.is_empty() {
        return Err(DetectionError::EmptyInput);
    }
    if !(percentile > 0.0 && percentile <= 1.0) {
        return Err(DetectionError::InvalidParam(format!(
            "percentile must be in (0, 1], got {percentile}"
        )));
    }
    let mut all: Vec<u64> = system.iter().chain(benchmark).copied().collect();
    all.sort_unstable();
    let rank = ((percentile * all.len() as f64).ceil() as usize).clamp(1, all.len());
    let nearest = all[rank - 1];

    let mut own = system.to_vec();
    own.sort_unstable();
    let n = own.len();
    // ceil of the median so the threshold never sits below it
    let median = if n % 2 == 1 {
        own[n / 2]
    } else {
        (own[n / 2 - 1] + own[n / 2]).div_ceil(2)
    };
    Ok(nearest.max(median).max(1))
}

/// Packages whose direct LOC is strictly above `threshold`.
pub fn detect_gc(graph: &DependencyGraph, threshold: u64) -> Result<Vec<SmellInstance>, DetectionError> {
    if threshold == 0 {
        return Err(DetectionError::InvalidParam("GC threshold must be positive".into()));
    }
    let mut big: Vec<_> = graph
        .entities_at(Level::Package)
        .filter(|p| p.loc > threshold)
        .collect();
    big.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(big
        .into_iter()
        .enumerate()
        .map(|(i, p)| SmellInstance {
            id: SmellId::new(SmellType::GodComponent, Level::Package, i + 1),
            smell_type: SmellType::GodComponent,
            level: Level::Package,
            affected: vec![p.id],
            induced_edges: graph.internal_class_edges(p.id),
            center: Some(p.id),
        })
        .collect())
}
