use std::collections::BTreeSet;

use super::{sort_by_name, SmellId, SmellInstance, SmellType};
use crate::depgraph::{DependencyGraph, EntityId, Level};

/// Hublike dependencies at one level.
///
/// A node is a hub when its in-degree, out-degree and total degree are all
/// strictly above the corresponding medians over every node at the level
/// (isolated nodes included).
pub fn detect_hl(graph: &DependencyGraph, level: Level) -> Vec<SmellInstance> {
    let nodes: Vec<EntityId> = graph.entities_at(level).map(|e| e.id).collect();
    if nodes.len() < 2 {
        return Vec::new();
    }
    let fan_in: Vec<f64> = nodes.iter().map(|&v| graph.predecessors(v).len() as f64).collect();
    let fan_out: Vec<f64> = nodes.iter().map(|&v| graph.successors(v).len() as f64).collect();
    let total: Vec<f64> = fan_in.iter().zip(&fan_out).map(|(a, b)| a + b).collect();
    let (m_in, m_out, m_total) = (median(&fan_in), median(&fan_out), median(&total));

    let mut hubs: Vec<EntityId> = nodes
        .iter()
        .enumerate()
        .filter(|&(i, _)| fan_in[i] > m_in && fan_out[i] > m_out && total[i] > m_total)
        .map(|(_, &v)| v)
        .collect();
    sort_by_name(graph, &mut hubs);

    hubs.into_iter()
        .enumerate()
        .map(|(i, hub)| {
            let neighbours: BTreeSet<EntityId> = graph
                .predecessors(hub)
                .iter()
                .chain(graph.successors(hub))
                .map(|&(n, _)| n)
                .chain(std::iter::once(hub))
                .collect();
            let mut affected: Vec<EntityId> = neighbours.into_iter().collect();
            sort_by_name(graph, &mut affected);
            let induced_edges = graph
                .edges_at(level)
                .iter()
                .filter(|e| e.from == hub || e.to == hub)
                .copied()
                .collect();
            SmellInstance {
                id: SmellId::new(SmellType::HublikeDependency, level, i + 1),
                smell_type: SmellType::HublikeDependency,
                level,
                affected,
                induced_edges,
                center: Some(hub),
            }
        })
        .collect()
}

pub(crate) fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n == 0 {
        return 0.0;
    }
    if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}
