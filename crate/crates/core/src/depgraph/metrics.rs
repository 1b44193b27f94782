use std::collections::BTreeMap;

use super::{DependencyGraph, EntityId, GraphError, Level};

/// Martin's instability `Ce / (Ce + Ca)` of a package, counting distinct
/// efferent and afferent packages. An isolated package has instability 0.
pub fn instability(graph: &DependencyGraph, pkg: EntityId) -> Result<f64, GraphError> {
    graph.require_package(pkg)?;
    Ok(instability_unchecked(graph, pkg))
}

pub(crate) fn instability_unchecked(graph: &DependencyGraph, pkg: EntityId) -> f64 {
    let ce = graph.successors(pkg).len() as f64;
    let ca = graph.predecessors(pkg).len() as f64;
    if ce + ca == 0.0 {
        0.0
    } else {
        ce / (ce + ca)
    }
}

/// Instability of every package in the graph.
pub fn instabilities(graph: &DependencyGraph) -> BTreeMap<EntityId, f64> {
    graph
        .entities_at(Level::Package)
        .map(|p| (p.id, instability_unchecked(graph, p.id)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankParams {
    pub damping: f64,
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for PageRankParams {
    fn default() -> Self {
        Self {
            damping: 0.85,
            tol: 1e-9,
            max_iter: 200,
        }
    }
}

/// PageRank scores for the entities of one level.
#[derive(Debug, Clone, PartialEq)]
pub struct PageRanks {
    pub level: Level,
    pub scores: BTreeMap<EntityId, f64>,
    pub iterations: usize,
}

impl PageRanks {
    pub fn get(&self, id: EntityId) -> Option<f64> {
        self.scores.get(&id).copied()
    }
}

/// Unweighted PageRank over the edges of one level. Dangling nodes spread
/// their mass uniformly. Iteration stops once the L1 change drops below
/// `params.tol`.
pub fn page_rank(graph: &DependencyGraph, level: Level, params: PageRankParams) -> PageRanks {
    let nodes: Vec<EntityId> = graph.entities_at(level).map(|e| e.id).collect();
    let n = nodes.len();
    if n == 0 {
        return PageRanks {
            level,
            scores: BTreeMap::new(),
            iterations: 0,
        };
    }
    let mut pos = vec![usize::MAX; graph.len()];
    for (i, id) in nodes.iter().enumerate() {
        pos[id.index()] = i;
    }
    let out: Vec<Vec<usize>> = nodes
        .iter()
        .map(|&id| graph.successors(id).iter().map(|&(t, _)| pos[t.index()]).collect())
        .collect();

    let d = params.damping;
    let uniform = 1.0 / n as f64;
    let mut rank = vec![uniform; n];
    let mut next = vec![0.0; n];
    let mut iterations = 0;
    while iterations < params.max_iter {
        iterations += 1;
        let dangling: f64 = out
            .iter()
            .zip(&rank)
            .filter(|(o, _)| o.is_empty())
            .map(|(_, r)| r)
            .sum();
        let base = (1.0 - d) * uniform + d * dangling * uniform;
        next.iter_mut().for_each(|x| *x = base);
        for (i, targets) in out.iter().enumerate() {
            if targets.is_empty() {
                continue;
            }
            let share = d * rank[i] / targets.len() as f64;
            for &t in targets {
                next[t] += share;
            }
        }
        let delta: f64 = rank.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut rank, &mut next);
        if delta < params.tol {
            break;
        }
    }

    PageRanks {
        level,
        scores: nodes.into_iter().zip(rank).collect(),
        iterations,
    }
}
