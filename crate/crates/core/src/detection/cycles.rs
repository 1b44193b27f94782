use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{sort_by_name, DetectionError, SmellId, SmellInstance, SmellType};
use crate::depgraph::{DependencyGraph, EntityId, Level};

/// Shape of a cyclic dependency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Tiny,
    Circle,
    Chain,
    Star,
    Clique,
}

impl Shape {
    pub fn code(self) -> u8 {
        match self {
            Shape::Tiny => 0,
            Shape::Circle => 1,
            Shape::Chain => 2,
            Shape::Star => 3,
            Shape::Clique => 4,
        }
    }
}

/// One CD instance per strongly connected component with at least two
/// members, ordered by the smallest member name.
pub fn detect_cd(graph: &DependencyGraph, level: Level) -> Vec<SmellInstance> {
    let nodes: Vec<EntityId> = graph.entities_at(level).map(|e| e.id).collect();
    let mut components: Vec<Vec<EntityId>> = strongly_connected(graph, &nodes)
        .into_iter()
        .filter(|c| c.len() >= 2)
        .map(|mut c| {
            sort_by_name(graph, &mut c);
            c
        })
        .collect();
    components.sort_by(|a, b| graph.name(a[0]).cmp(graph.name(b[0])));

    components
        .into_iter()
        .enumerate()
        .map(|(i, affected)| {
            let member: std::collections::HashSet<EntityId> = affected.iter().copied().collect();
            let induced_edges = graph
                .edges_at(level)
                .iter()
                .filter(|e| member.contains(&e.from) && member.contains(&e.to))
                .copied()
                .collect();
            SmellInstance {
                id: SmellId::new(SmellType::CyclicDependency, level, i + 1),
                smell_type: SmellType::CyclicDependency,
                level,
                affected,
                induced_edges,
                center: None,
            }
        })
        .collect()
}

/// Iterative Tarjan over the subgraph induced by `nodes`.
fn strongly_connected(graph: &DependencyGraph, nodes: &[EntityId]) -> Vec<Vec<EntityId>> {
    const UNVISITED: usize = usize::MAX;
    let n = graph.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<EntityId> = Vec::new();
    let mut next_index = 0;
    let mut out = Vec::new();

    for &start in nodes {
        if index[start.index()] != UNVISITED {
            continue;
        }
        // (node, position of the next successor to visit)
        let mut call: Vec<(EntityId, usize)> = vec![(start, 0)];
        index[start.index()] = next_index;
        low[start.index()] = next_index;
        next_index += 1;
        stack.push(start);
        on_stack[start.index()] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            let succ = graph.successors(v);
            if *pos < succ.len() {
                let w = succ[*pos].0;
                *pos += 1;
                if index[w.index()] == UNVISITED {
                    index[w.index()] = next_index;
                    low[w.index()] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w.index()] = true;
                    call.push((w, 0));
                } else if on_stack[w.index()] {
                    low[v.index()] = low[v.index()].min(index[w.index()]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent.index()] = low[parent.index()].min(low[v.index()]);
            }
            if low[v.index()] == index[v.index()] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w.index()] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                out.push(comp);
            }
        }
    }
    out
}

/// Classifies a CD instance. Precedence: tiny, clique, circle, star, chain.
pub fn classify_shape(cd: &SmellInstance) -> Result<Shape, DetectionError> {
    if cd.smell_type != SmellType::CyclicDependency {
        return Err(DetectionError::WrongSmellType {
            expected: SmellType::CyclicDependency,
            actual: cd.smell_type,
        });
    }
    let n = cd.affected.len();
    if n <= 2 {
        return Ok(Shape::Tiny);
    }
    let mut edges: Vec<(EntityId, EntityId)> = cd
        .induced_edges
        .iter()
        .filter(|e| e.from != e.to)
        .map(|e| e.key())
        .collect();
    edges.sort_unstable();
    edges.dedup();
    if edges.len() == n * (n - 1) {
        return Ok(Shape::Clique);
    }

    let mut indeg: HashMap<EntityId, usize> = HashMap::new();
    let mut outdeg: HashMap<EntityId, usize> = HashMap::new();
    for &(a, b) in &edges {
        *outdeg.entry(a).or_default() += 1;
        *indeg.entry(b).or_default() += 1;
    }
    let circle = cd.affected.iter().all(|v| {
        indeg.get(v).copied().unwrap_or(0) == 1 && outdeg.get(v).copied().unwrap_or(0) == 1
    });
    if circle {
        return Ok(Shape::Circle);
    }

    let star = cd
        .affected
        .iter()
        .any(|&c| edges.iter().all(|&(a, b)| a == c || b == c));
    if star {
        return Ok(Shape::Star);
    }
    Ok(Shape::Chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depgraph::{DependencyEdge, GraphBuilder};

    fn class_graph(n: usize, edges: &[(usize, usize)]) -> DependencyGraph {
        let mut b = GraphBuilder::new();
        let ids: Vec<_> = (0..n)
            .map(|i| b.add_class(&format!("p.N{i}"), 1).unwrap())
            .collect();
        for &(x, y) in edges {
            b.add_edge(ids[x], ids[y], 1).unwrap();
        }
        b.build().unwrap()
    }

    fn only_cd(n: usize, edges: &[(usize, usize)]) -> SmellInstance {
        let g = class_graph(n, edges);
        let mut cds = detect_cd(&g, Level::Class);
        assert_eq!(cds.len(), 1);
        cds.remove(0)
    }

    #[test]
    fn two_node_cycle() {
        let g = class_graph(2, &[(0, 1), (1, 0)]);
        let cds = detect_cd(&g, Level::Class);
        assert_eq!(cds.len(), 1);
        assert_eq!(cds[0].affected.len(), 2);
        assert_eq!(cds[0].induced_edges.len(), 2);
        assert_eq!(classify_shape(&cds[0]).unwrap(), Shape::Tiny);
    }

    #[test]
    fn dag_has_no_cycles() {
        let g = class_graph(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        assert!(detect_cd(&g, Level::Class).is_empty());
    }

    #[test]
    fn separate_components_are_ordered_by_name() {
        let g = class_graph(5, &[(3, 4), (4, 3), (0, 1), (1, 0), (1, 3)]);
        let cds = detect_cd(&g, Level::Class);
        let first: Vec<_> = cds.iter().map(|c| g.name(c.affected[0])).collect();
        assert_eq!(first, ["p.N0", "p.N3"]);
        assert_eq!(cds[0].id.as_str(), "CD-class-1");
        // the bridge 1 -> 3 belongs to neither cycle
        assert!(cds.iter().all(|c| c.induced_edges.len() == 2));
    }

    #[test]
    fn shapes() {
        assert_eq!(
            classify_shape(&only_cd(4, &[(0, 1), (1, 2), (2, 3), (3, 0)])).unwrap(),
            Shape::Circle
        );
        let k4: Vec<_> = (0..4)
            .flat_map(|a| (0..4).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        assert_eq!(k4.len(), 12);
        assert_eq!(classify_shape(&only_cd(4, &k4)).unwrap(), Shape::Clique);
        assert_eq!(
            classify_shape(&only_cd(4, &[(0, 1), (1, 0), (0, 2), (2, 0), (0, 3), (3, 0)])).unwrap(),
            Shape::Star
        );
        assert_eq!(
            classify_shape(&only_cd(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])).unwrap(),
            Shape::Chain
        );
        // three-node clique is a clique, not a circle
        let k3 = [(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)];
        assert_eq!(classify_shape(&only_cd(3, &k3)).unwrap(), Shape::Clique);
    }

    #[test]
    fn shape_requires_cd() {
        let hl = SmellInstance {
            id: SmellId("HL-class-1".into()),
            smell_type: SmellType::HublikeDependency,
            level: Level::Class,
            affected: vec![EntityId(0)],
            induced_edges: vec![DependencyEdge {
                from: EntityId(0),
                to: EntityId(1),
                weight: 1,
            }],
            center: Some(EntityId(0)),
        };
        assert!(matches!(
            classify_shape(&hl),
            Err(DetectionError::WrongSmellType { .. })
        ));
    }
}
