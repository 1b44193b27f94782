//! Line-oriented edge-list format.
//!
//! ```text
//! # comment
//! entity <id> <class|package> <fq.name> <loc>
//! edge <from-id> <to-id> <weight>
//! ```
//!
//! All `entity` lines come before the first `edge` line.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use super::{DependencyGraph, EntityId, EntityKind, GraphBuilder, GraphError};

pub fn read_edge_list(path: &Path) -> Result<DependencyGraph, GraphError> {
    let text = std::fs::read_to_string(path).map_err(|source| GraphError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_edge_list(&text)
}

pub fn parse_edge_list(text: &str) -> Result<DependencyGraph, GraphError> {
    let mut builder = GraphBuilder::new();
    let mut ids: HashMap<String, EntityId> = HashMap::new();
    let mut seen_edge = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse_err = |reason: String| GraphError::Parse {
            line: line_no,
            reason,
        };
        match fields[0] {
            "entity" => {
                if seen_edge {
                    return Err(parse_err("entity declared after the first edge".into()));
                }
                let [_, id, kind, name, loc] = fields[..] else {
                    return Err(parse_err(format!(
                        "expected `entity <id> <kind> <fqname> <loc>`, got {} fields",
                        fields.len()
                    )));
                };
                let kind: EntityKind = kind.parse().map_err(parse_err)?;
                let loc: u64 = loc
                    .parse()
                    .map_err(|_| parse_err(format!("invalid loc `{loc}`")))?;
                if ids.contains_key(id) {
                    return Err(GraphError::Validation {
                        line: Some(line_no),
                        reason: format!("duplicate entity id `{id}`"),
                    });
                }
                let eid = match kind {
                    EntityKind::Class => builder.add_class(name, loc),
                    EntityKind::Package => builder.add_package(name, Some(loc)),
                }
                .map_err(|e| e.at_line(line_no))?;
                ids.insert(id.to_string(), eid);
            }
            "edge" => {
                seen_edge = true;
                let [_, from, to, weight] = fields[..] else {
                    return Err(parse_err(format!(
                        "expected `edge <from> <to> <weight>`, got {} fields",
                        fields.len()
                    )));
                };
                let weight: i64 = weight
                    .parse()
                    .map_err(|_| parse_err(format!("invalid weight `{weight}`")))?;
                let resolve = |id: &str| {
                    ids.get(id).copied().ok_or_else(|| GraphError::Validation {
                        line: Some(line_no),
                        reason: format!("edge references undeclared entity `{id}`"),
                    })
                };
                let (from, to) = (resolve(from)?, resolve(to)?);
                if weight <= 0 {
                    return Err(GraphError::Validation {
                        line: Some(line_no),
                        reason: format!("non-positive weight {weight}"),
                    });
                }
                builder
                    .add_edge(from, to, weight as u64)
                    .map_err(|e| e.at_line(line_no))?;
            }
            other => return Err(parse_err(format!("unknown record `{other}`"))),
        }
    }
    builder.build()
}

/// Serializes a graph in canonical order: entities by id, class edges, then
/// package edges that are not produced by lifting class edges.
pub fn write_edge_list(graph: &DependencyGraph) -> String {
    let mut out = String::new();
    for e in graph.entities() {
        let _ = writeln!(out, "entity e{} {} {} {}", e.id.0, e.kind, e.name, e.loc);
    }
    for e in graph.class_edges() {
        let _ = writeln!(out, "edge e{} e{} {}", e.from.0, e.to.0, e.weight);
    }
    let lifted: HashSet<(EntityId, EntityId)> = graph
        .class_edges()
        .iter()
        .filter_map(|e| {
            let pa = graph.entity(e.from).parent?;
            let pb = graph.entity(e.to).parent?;
            (pa != pb).then_some((pa, pb))
        })
        .collect();
    for e in graph.package_edges() {
        if !lifted.contains(&e.key()) {
            let _ = writeln!(out, "edge e{} e{} {}", e.from.0, e.to.0, e.weight);
        }
    }
    out
}
