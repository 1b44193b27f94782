use super::{sort_by_name, SmellId, SmellInstance, SmellType};
use crate::depgraph::{instabilities, DependencyGraph, EntityId, Level};

/// Unstable dependencies: packages where the share of efferent packages that
/// are less stable than the package itself exceeds `ratio`.
pub fn detect_ud(graph: &DependencyGraph, ratio: f64) -> Vec<SmellInstance> {
    let inst = instabilities(graph);
    let mut found: Vec<(EntityId, Vec<EntityId>)> = Vec::new();
    for (&pkg, &own) in &inst {
        let targets = graph.successors(pkg);
        if targets.is_empty() {
            continue;
        }
        let less_stable: Vec<EntityId> = targets
            .iter()
            .map(|&(t, _)| t)
            .filter(|t| inst[t] > own)
            .collect();
        if less_stable.len() as f64 / targets.len() as f64 > ratio {
            found.push((pkg, less_stable));
        }
    }
    found.sort_by(|a, b| graph.name(a.0).cmp(graph.name(b.0)));

    found
        .into_iter()
        .enumerate()
        .map(|(i, (pkg, less_stable))| {
            let induced_edges = graph
                .package_edges()
                .iter()
                .filter(|e| e.from == pkg && less_stable.contains(&e.to))
                .copied()
                .collect();
            let mut affected = less_stable;
            affected.push(pkg);
            sort_by_name(graph, &mut affected);
            SmellInstance {
                id: SmellId::new(SmellType::UnstableDependency, Level::Package, i + 1),
                smell_type: SmellType::UnstableDependency,
                level: Level::Package,
                affected,
                induced_edges,
                center: Some(pkg),
            }
        })
        .collect()
}
