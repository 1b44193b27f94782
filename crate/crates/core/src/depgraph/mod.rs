//! The system dependency graph.
//!
//! A [`DependencyGraph`] holds classes and packages as [`Entity`] nodes.
//! Class-to-class dependencies are weighted by the number of source lines in
//! the dependant that use the dependency. Package-level edges are derived by
//! lifting every class edge to the pair of packages containing its endpoints,
//! summing weights and dropping edges that stay inside one package.
//!
//! Graphs are built once through [`GraphBuilder`], read from the edge-list
//! format ([`read_edge_list`]) or extracted from a source tree
//! ([`extract_lexical_dependencies`]), and are immutable afterwards.

mod edgelist;
mod extract;
mod metrics;
mod pct;

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use edgelist::{parse_edge_list, read_edge_list, write_edge_list};
pub use extract::{extract_lexical_dependencies, ExtractorConfig};
pub use metrics::{instabilities, instability, page_rank, PageRankParams, PageRanks};
pub use pct::PackageContainmentTree;

/// Dense index of an entity inside one [`DependencyGraph`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EntityId(pub u32);

impl EntityId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for EntityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntityKind {
    Class,
    Package,
}

/// Granularity at which a smell is detected. Same values as [`EntityKind`].
pub type Level = EntityKind;

impl EntityKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntityKind::Class => "class",
            EntityKind::Package => "package",
        }
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for EntityKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "class" => Ok(EntityKind::Class),
            "package" => Ok(EntityKind::Package),
            other => Err(format!("unknown entity kind `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entity {
    pub id: EntityId,
    /// Fully-qualified, dot-separated name.
    pub name: String,
    pub kind: EntityKind,
    /// Lines of code. For a package this is the sum over directly contained
    /// classes only.
    pub loc: u64,
    /// Containing package, `None` for top-level entities.
    pub parent: Option<EntityId>,
}

/// `from` uses `to` on `weight` distinct source lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DependencyEdge {
    pub from: EntityId,
    pub to: EntityId,
    pub weight: u64,
}

impl DependencyEdge {
    pub fn key(&self) -> (EntityId, EntityId) {
        (self.from, self.to)
    }
}

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("{}{reason}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Validation { line: Option<usize>, reason: String },
    #[error("unknown entity `{0}`")]
    UnknownEntity(String),
    #[error("entity `{0}` is not a package")]
    NotAPackage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("`{name}` is declared by both {} and {}", first.display(), second.display())]
    NameCollision {
        name: String,
        first: PathBuf,
        second: PathBuf,
    },
}

impl GraphError {
    pub(crate) fn validation(reason: impl Into<String>) -> Self {
        GraphError::Validation {
            line: None,
            reason: reason.into(),
        }
    }

    pub(crate) fn at_line(self, line: usize) -> Self {
        match self {
            GraphError::Validation { line: None, reason } => GraphError::Validation {
                line: Some(line),
                reason,
            },
            other => other,
        }
    }
}

/// Weighted, directed dependency graph over classes and packages.
#[derive(Debug, Clone)]
pub struct DependencyGraph {
    entities: Vec<Entity>,
    by_name: HashMap<String, EntityId>,
    class_edges: Vec<DependencyEdge>,
    package_edges: Vec<DependencyEdge>,
    outgoing: Vec<Vec<(EntityId, u64)>>,
    incoming: Vec<Vec<(EntityId, u64)>>,
    children: Vec<Vec<EntityId>>,
}

impl DependencyGraph {
    pub fn entities(&self) -> &[Entity] {
        &self.entities
    }

    pub fn entity(&self, id: EntityId) -> &Entity {
        &self.entities[id.index()]
    }

    pub fn get(&self, id: EntityId) -> Option<&Entity> {
        self.entities.get(id.index())
    }

    pub fn lookup(&self, name: &str) -> Option<EntityId> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, id: EntityId) -> &str {
        &self.entities[id.index()].name
    }

    pub fn len(&self) -> usize {
        self.entities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entities.is_empty()
    }

    /// Entities of one kind, in id order.
    pub fn entities_at(&self, level: Level) -> impl Iterator<Item = &Entity> + '_ {
        self.entities.iter().filter(move |e| e.kind == level)
    }

    pub fn class_edges(&self) -> &[DependencyEdge] {
        &self.class_edges
    }

    pub fn package_edges(&self) -> &[DependencyEdge] {
        &self.package_edges
    }

    pub fn edges_at(&self, level: Level) -> &[DependencyEdge] {
        match level {
            Level::Class => &self.class_edges,
            Level::Package => &self.package_edges,
        }
    }

    /// Targets of `id` with edge weights, sorted by target id.
    pub fn successors(&self, id: EntityId) -> &[(EntityId, u64)] {
        &self.outgoing[id.index()]
    }

    /// Sources depending on `id` with edge weights, sorted by source id.
    pub fn predecessors(&self, id: EntityId) -> &[(EntityId, u64)] {
        &self.incoming[id.index()]
    }

    pub fn weight(&self, from: EntityId, to: EntityId) -> Option<u64> {
        let out = &self.outgoing[from.index()];
        out.binary_search_by_key(&to, |&(t, _)| t)
            .ok()
            .map(|i| out[i].1)
    }

    /// Entities whose parent is `parent` (`None` = top level), in id order.
    pub fn children_of(&self, parent: EntityId) -> &[EntityId] {
        &self.children[parent.index()]
    }

    /// Classes whose containing package is `pkg`.
    pub fn classes_in(&self, pkg: EntityId) -> impl Iterator<Item = EntityId> + '_ {
        self.children[pkg.index()]
            .iter()
            .copied()
            .filter(move |c| self.entities[c.index()].kind == EntityKind::Class)
    }

    /// Class edges whose endpoints are both directly contained in `pkg`.
    pub fn internal_class_edges(&self, pkg: EntityId) -> Vec<DependencyEdge> {
        let members: HashSet<EntityId> = self.classes_in(pkg).collect();
        self.class_edges
            .iter()
            .filter(|e| members.contains(&e.from) && members.contains(&e.to))
            .copied()
            .collect()
    }

    /// Total lines of code, counting each class once. Falls back to package
    /// LOC for graphs that declare no classes.
    pub fn total_loc(&self) -> u64 {
        let classes: u64 = self.entities_at(Level::Class).map(|e| e.loc).sum();
        if self.entities_at(Level::Class).next().is_some() {
            classes
        } else {
            self.entities_at(Level::Package).map(|e| e.loc).sum()
        }
    }

    pub(crate) fn require(&self, id: EntityId) -> Result<&Entity, GraphError> {
        self.get(id)
            .ok_or_else(|| GraphError::UnknownEntity(id.to_string()))
    }

    pub(crate) fn require_package(&self, id: EntityId) -> Result<&Entity, GraphError> {
        let e = self.require(id)?;
        if e.kind != EntityKind::Package {
            return Err(GraphError::NotAPackage(e.name.clone()));
        }
        Ok(e)
    }
}

/// Incremental constructor for [`DependencyGraph`].
///
/// Declaring a class creates any missing ancestor packages from its
/// dot-separated name. Package LOC is recomputed from the directly contained
/// classes at [`GraphBuilder::build`].
#[derive(Debug, Default)]
pub struct GraphBuilder {
    entities: Vec<Entity>,
    by_name: HashMap<String, EntityId>,
    declared: HashSet<EntityId>,
    declared_package_loc: HashMap<EntityId, u64>,
    edges: BTreeMap<(EntityId, EntityId), u64>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn lookup(&self, name: &str) -> Option<EntityId> {
        self.by_name.get(name).copied()
    }

    pub fn add_class(&mut self, name: &str, loc: u64) -> Result<EntityId, GraphError> {
        validate_name(name)?;
        if self.by_name.contains_key(name) {
            return Err(GraphError::validation(format!(
                "duplicate entity `{name}`"
            )));
        }
        let parent = match name.rsplit_once('.') {
            Some((pkg, _)) => Some(self.ensure_package(pkg)?),
            None => None,
        };
        let id = self.push(name, EntityKind::Class, loc, parent);
        self.declared.insert(id);
        Ok(id)
    }

    /// Declares a package. `loc` is only kept for packages that end up with
    /// no directly contained classes; otherwise it must match the class sum.
    pub fn add_package(&mut self, name: &str, loc: Option<u64>) -> Result<EntityId, GraphError> {
        validate_name(name)?;
        let id = self.ensure_package(name)?;
        if !self.declared.insert(id) {
            return Err(GraphError::validation(format!(
                "duplicate entity `{name}`"
            )));
        }
        if let Some(loc) = loc {
            self.declared_package_loc.insert(id, loc);
        }
        Ok(id)
    }

    /// Adds a dependency edge. Class edges are lifted to packages at build
    /// time; package edges are taken as declared.
    pub fn add_edge(&mut self, from: EntityId, to: EntityId, weight: u64) -> Result<(), GraphError> {
        let (a, b) = match (self.entities.get(from.index()), self.entities.get(to.index())) {
            (Some(a), Some(b)) => (a, b),
            _ => {
                return Err(GraphError::validation(format!(
                    "edge {from} -> {to} has a dangling endpoint"
                )))
            }
        };
        if weight == 0 {
            return Err(GraphError::validation(format!(
                "edge {} -> {} has non-positive weight",
                a.name, b.name
            )));
        }
        if from == to {
            return Err(GraphError::validation(format!("self-loop on {}", a.name)));
        }
        if a.kind != b.kind {
            return Err(GraphError::validation(format!(
                "edge {} -> {} mixes a {} and a {}",
                a.name, b.name, a.kind, b.kind
            )));
        }
        if self.edges.insert((from, to), weight).is_some() {
            return Err(GraphError::validation(format!(
                "duplicate edge {} -> {}",
                a.name, b.name
            )));
        }
        Ok(())
    }

    pub fn build(self) -> Result<DependencyGraph, GraphError> {
        let GraphBuilder {
            mut entities,
            by_name,
            declared_package_loc,
            edges,
            ..
        } = self;
        let n = entities.len();

        let mut children = vec![Vec::new(); n];
        let mut class_loc = vec![None::<u64>; n];
        for e in &entities {
            if let Some(p) = e.parent {
                children[p.index()].push(e.id);
                if e.kind == EntityKind::Class {
                    let acc = class_loc[p.index()].get_or_insert(0);
                    *acc += e.loc;
                }
            }
        }
        for e in entities.iter_mut().filter(|e| e.kind == EntityKind::Package) {
            let declared = declared_package_loc.get(&e.id).copied();
            e.loc = match (class_loc[e.id.index()], declared) {
                (Some(sum), Some(d)) if sum != d => {
                    return Err(GraphError::validation(format!(
                        "package `{}` declares loc {d} but its classes sum to {sum}",
                        e.name
                    )))
                }
                (Some(sum), _) => sum,
                (None, d) => d.unwrap_or(0),
            };
        }

        let mut class_edges = Vec::new();
        let mut declared_pkg_edges = BTreeMap::new();
        for (&(from, to), &weight) in &edges {
            let edge = DependencyEdge { from, to, weight };
            match entities[from.index()].kind {
                EntityKind::Class => class_edges.push(edge),
                EntityKind::Package => {
                    declared_pkg_edges.insert((from, to), weight);
                }
            }
        }

        let mut lifted: BTreeMap<(EntityId, EntityId), u64> = BTreeMap::new();
        for e in &class_edges {
            let (pa, pb) = (entities[e.from.index()].parent, entities[e.to.index()].parent);
            if let (Some(pa), Some(pb)) = (pa, pb) {
                if pa != pb {
                    *lifted.entry((pa, pb)).or_insert(0) += e.weight;
                }
            }
        }
        for (key, w) in declared_pkg_edges {
            if lifted.contains_key(&key) {
                return Err(GraphError::validation(format!(
                    "package edge {} -> {} conflicts with edges lifted from classes",
                    entities[key.0.index()].name,
                    entities[key.1.index()].name
                )));
            }
            lifted.insert(key, w);
        }
        let package_edges: Vec<DependencyEdge> = lifted
            .into_iter()
            .map(|((from, to), weight)| DependencyEdge { from, to, weight })
            .collect();

        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for e in class_edges.iter().chain(&package_edges) {
            outgoing[e.from.index()].push((e.to, e.weight));
            incoming[e.to.index()].push((e.from, e.weight));
        }
        for list in outgoing.iter_mut().chain(incoming.iter_mut()) {
            list.sort_unstable();
        }

        Ok(DependencyGraph {
            entities,
            by_name,
            class_edges,
            package_edges,
            outgoing,
            incoming,
            children,
        })
    }

    fn ensure_package(&mut self, name: &str) -> Result<EntityId, GraphError> {
        if let Some(&id) = self.by_name.get(name) {
            let e = &self.entities[id.index()];
            if e.kind != EntityKind::Package {
                return Err(GraphError::validation(format!(
                    "`{name}` is used both as a class and as a package"
                )));
            }
            return Ok(id);
        }
        let parent = match name.rsplit_once('.') {
            Some((pkg, _)) => Some(self.ensure_package(pkg)?),
            None => None,
        };
        Ok(self.push(name, EntityKind::Package, 0, parent))
    }

    fn push(&mut self, name: &str, kind: EntityKind, loc: u64, parent: Option<EntityId>) -> EntityId {
        let id = EntityId(self.entities.len() as u32);
        self.entities.push(Entity {
            id,
            name: name.to_string(),
            kind,
            loc,
            parent,
        });
        self.by_name.insert(name.to_string(), id);
        id
    }
}

fn validate_name(name: &str) -> Result<(), GraphError> {
    if name.is_empty()
        || name.split('.').any(|seg| seg.is_empty())
        || name.chars().any(char::is_whitespace)
    {
        return Err(GraphError::validation(format!(
            "invalid entity name `{name}`"
        )));
    }
    Ok(())
}
