use super::{DependencyGraph, EntityId, GraphError};

/// The package hierarchy under a synthetic root.
///
/// Top-level packages (and classes without a package) hang directly off the
/// root. The depth of an entity is the number of packages above it.
#[derive(Debug, Clone)]
pub struct PackageContainmentTree {
    parent: Vec<Option<EntityId>>,
    depth: Vec<u32>,
    root_children: Vec<EntityId>,
    children: Vec<Vec<EntityId>>,
}

impl PackageContainmentTree {
    pub fn from_graph(graph: &DependencyGraph) -> Self {
        let parent: Vec<Option<EntityId>> = graph.entities().iter().map(|e| e.parent).collect();
        // Builder creates every package before its members, so parents
        // always have smaller ids.
        let mut depth = vec![0u32; parent.len()];
        for (i, p) in parent.iter().enumerate() {
            if let Some(p) = p {
                depth[i] = depth[p.index()] + 1;
            }
        }
        let root_children = graph
            .entities()
            .iter()
            .filter(|e| e.parent.is_none())
            .map(|e| e.id)
            .collect();
        let children = graph
            .entities()
            .iter()
            .map(|e| graph.children_of(e.id).to_vec())
            .collect();
        Self {
            parent,
            depth,
            root_children,
            children,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, e: EntityId) -> Option<EntityId> {
        self.parent.get(e.index()).copied().flatten()
    }

    /// Children of `node`, or of the root when `node` is `None`.
    pub fn children(&self, node: Option<EntityId>) -> &[EntityId] {
        match node {
            None => &self.root_children,
            Some(n) => &self.children[n.index()],
        }
    }

    /// Number of package ancestors of `e` (the root is not counted).
    pub fn depth(&self, e: EntityId) -> Result<u32, GraphError> {
        self.check(e)?;
        Ok(self.depth[e.index()])
    }

    /// Number of tree edges on the path between `a` and `b`.
    pub fn distance(&self, a: EntityId, b: EntityId) -> Result<u32, GraphError> {
        self.check(a)?;
        self.check(b)?;
        let (mut x, mut y) = (Some(a), Some(b));
        let (mut dx, mut dy) = (self.depth[a.index()], self.depth[b.index()]);
        let mut steps = 0;
        while dx > dy {
            x = self.parent(x.unwrap());
            dx -= 1;
            steps += 1;
        }
        while dy > dx {
            y = self.parent(y.unwrap());
            dy -= 1;
            steps += 1;
        }
        while x != y {
            // Both sides move up together; reaching `None` on both means
            // the common ancestor is the root.
            x = x.and_then(|n| self.parent(n));
            y = y.and_then(|n| self.parent(n));
            steps += 2;
        }
        Ok(steps)
    }

    fn check(&self, e: EntityId) -> Result<(), GraphError> {
        if e.index() < self.parent.len() {
            Ok(())
        } else {
            Err(GraphError::UnknownEntity(e.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depgraph::GraphBuilder;

    fn tree() -> (DependencyGraph, PackageContainmentTree) {
        let mut b = GraphBuilder::new();
        for name in ["top.T", "a.b.X", "a.b.Y", "a.c.d.Z", "other.W", "Loose"] {
            b.add_class(name, 1).unwrap();
        }
        b.add_package("a.b.c", None).unwrap();
        let g = b.build().unwrap();
        let pct = PackageContainmentTree::from_graph(&g);
        (g, pct)
    }

    #[test]
    fn depths() {
        let (g, pct) = tree();
        let d = |n: &str| pct.depth(g.lookup(n).unwrap()).unwrap();
        assert_eq!(d("top.T"), 1);
        assert_eq!(d("a.b.c"), 2);
        assert_eq!(d("a"), 0);
        assert_eq!(d("Loose"), 0);
        assert_eq!(d("a.c.d.Z"), 3);
    }

    #[test]
    fn distances() {
        let (g, pct) = tree();
        let d = |x: &str, y: &str| {
            pct.distance(g.lookup(x).unwrap(), g.lookup(y).unwrap())
                .unwrap()
        };
        assert_eq!(d("a.b.X", "a.b.X"), 0);
        assert_eq!(d("a.b.X", "a.b.Y"), 2);
        assert_eq!(d("a.b.X", "a.c.d"), 4);
        assert_eq!(d("a.b.X", "a.c.d.Z"), 5);
        assert_eq!(d("top.T", "other.W"), 4);
        assert_eq!(d("Loose", "top"), 2);
        assert_eq!(d("a.b", "a"), 1);
    }

    #[test]
    fn unknown_entity() {
        let (_, pct) = tree();
        assert!(pct.depth(EntityId(1000)).is_err());
        assert!(pct.distance(EntityId(0), EntityId(1000)).is_err());
    }

    #[test]
    fn root_children_are_top_level() {
        let (g, pct) = tree();
        let names: Vec<_> = pct.children(None).iter().map(|&c| g.name(c)).collect();
        assert_eq!(names, ["top", "a", "other", "Loose"]);
    }
}
