use serde::{Deserialize, Serialize};

/// A node of a regression tree. Children always have larger indices than
/// their parent; the root is node 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Node {
    Split {
        feature: usize,
        /// Inputs with `x < threshold` go left.
        threshold: f64,
        /// Where NaN inputs go.
        missing_left: bool,
        left: usize,
        right: usize,
        /// Number of training rows that reached the node.
        cover: f64,
    },
    Leaf {
        value: f64,
        cover: f64,
    },
}

impl Node {
    pub fn cover(&self) -> f64 {
        match *self {
            Node::Split { cover, .. } | Node::Leaf { cover, .. } => cover,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tree {
    pub nodes: Vec<Node>,
}

impl Tree {
    pub fn leaf(value: f64) -> Self {
        Tree {
            nodes: vec![Node::Leaf { value, cover: 0.0 }],
        }
    }

    /// Index of the leaf `x` falls into.
    pub fn leaf_index(&self, x: &[f64]) -> usize {
        let mut i = 0;
        loop {
            match self.nodes[i] {
                Node::Leaf { .. } => return i,
                Node::Split {
                    feature,
                    threshold,
                    missing_left,
                    left,
                    right,
                    ..
                } => i = if goes_left(x[feature], threshold, missing_left) { left } else { right },
            }
        }
    }

    /// Unscaled leaf value for `x`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self.nodes[self.leaf_index(x)] {
            Node::Leaf { value, .. } => value,
            Node::Split { .. } => unreachable!(),
        }
    }

    pub fn depth(&self) -> usize {
        fn walk(t: &Tree, i: usize) -> usize {
            match t.nodes[i] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + walk(t, left).max(walk(t, right)),
            }
        }
        walk(self, 0)
    }

    /// Checks child ordering, feature range and finiteness.
    pub(crate) fn validate(&self, n_features: usize) -> Result<(), String> {
        if self.nodes.is_empty() {
            return Err("tree has no nodes".into());
        }
        let mut parents = vec![0usize; self.nodes.len()];
        for (i, node) in self.nodes.iter().enumerate() {
            match *node {
                Node::Leaf { value, cover } => {
                    if !value.is_finite() || !cover.is_finite() {
                        return Err(format!("node {i} has a non-finite value"));
                    }
                }
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                    cover,
                    ..
                } => {
                    if feature >= n_features {
                        return Err(format!("node {i} splits on feature {feature} of {n_features}"));
                    }
                    if threshold.is_nan() || !cover.is_finite() {
                        return Err(format!("node {i} has a non-finite threshold"));
                    }
                    for child in [left, right] {
                        if child <= i || child >= self.nodes.len() {
                            return Err(format!("node {i} has invalid child {child}"));
                        }
                        parents[child] += 1;
                    }
                }
            }
        }
        if parents[0] != 0 || parents[1..].iter().any(|&p| p != 1) {
            return Err("nodes do not form a tree".into());
        }
        Ok(())
    }
}

pub(crate) fn goes_left(v: f64, threshold: f64, missing_left: bool) -> bool {
    if v.is_nan() {
        missing_left
    } else {
        v < threshold
    }
}

pub(crate) struct GrowParams {
    pub max_depth: usize,
    pub min_leaf: usize,
    pub lambda: f64,
}

/// Rows of one node: per feature, the non-missing rows in ascending order
/// of that feature, plus the rows where the feature is missing.
struct NodeRows {
    sorted: Vec<Vec<u32>>,
    missing: Vec<Vec<u32>>,
    count: usize,
}

struct Candidate {
    gain: f64,
    feature: usize,
    threshold: f64,
    missing_left: bool,
}

/// Grows one tree by exact greedy split search. `x` is row-major with
/// `n_features` columns; `rows` is sorted per feature by the caller.
pub(crate) fn grow(
    x: &[Vec<f64>],
    grad: &[f64],
    hess: &[f64],
    presorted: &[Vec<u32>],
    rows: &[u32],
    params: &GrowParams,
) -> Tree {
    let n_features = presorted.len();
    let mut member = vec![false; x.len()];
    for &r in rows {
        member[r as usize] = true;
    }
    let mut sorted = Vec::with_capacity(n_features);
    let mut missing = Vec::with_capacity(n_features);
    for (f, order) in presorted.iter().enumerate() {
        sorted.push(
            order
                .iter()
                .copied()
                .filter(|&r| member[r as usize] && !x[r as usize][f].is_nan())
                .collect::<Vec<_>>(),
        );
        let mut miss: Vec<u32> = rows.iter().copied().filter(|&r| x[r as usize][f].is_nan()).collect();
        miss.sort_unstable();
        missing.push(miss);
    }
    let root = NodeRows {
        sorted,
        missing,
        count: rows.len(),
    };
    let mut tree = Tree { nodes: Vec::new() };
    let any_feature: Vec<u32> = {
        let mut r = rows.to_vec();
        r.sort_unstable();
        r
    };
    build(&mut tree, x, grad, hess, root, &any_feature, 0, params);
    tree
}

#[allow(clippy::too_many_arguments)]
fn build(
    tree: &mut Tree,
    x: &[Vec<f64>],
    grad: &[f64],
    hess: &[f64],
    node: NodeRows,
    rows: &[u32],
    depth: usize,
    params: &GrowParams,
) -> usize {
    let g: f64 = rows.iter().map(|&r| grad[r as usize]).sum();
    let h: f64 = rows.iter().map(|&r| hess[r as usize]).sum();
    let index = tree.nodes.len();
    let cover = node.count as f64;
    tree.nodes.push(Node::Leaf {
        value: leaf_value(g, h, params.lambda),
        cover,
    });
    if depth >= params.max_depth || node.count < 2 * params.min_leaf.max(1) {
        return index;
    }
    let Some(best) = best_split(&node, x, grad, hess, g, h, params) else {
        return index;
    };

    let f = best.feature;
    let to_left = |r: u32| goes_left(x[r as usize][f], best.threshold, best.missing_left);
    let split = |lists: &[Vec<u32>]| -> (Vec<Vec<u32>>, Vec<Vec<u32>>) {
        lists
            .iter()
            .map(|l| l.iter().copied().partition::<Vec<u32>, _>(|&r| to_left(r)))
            .unzip()
    };
    let (sorted_l, sorted_r) = split(&node.sorted);
    let (missing_l, missing_r) = split(&node.missing);
    let (rows_l, rows_r): (Vec<u32>, Vec<u32>) = rows.iter().copied().partition(|&r| to_left(r));
    let left_node = NodeRows {
        sorted: sorted_l,
        missing: missing_l,
        count: rows_l.len(),
    };
    let right_node = NodeRows {
        sorted: sorted_r,
        missing: missing_r,
        count: rows_r.len(),
    };
    drop(node);
    let left = build(tree, x, grad, hess, left_node, &rows_l, depth + 1, params);
    let right = build(tree, x, grad, hess, right_node, &rows_r, depth + 1, params);
    tree.nodes[index] = Node::Split {
        feature: f,
        threshold: best.threshold,
        missing_left: best.missing_left,
        left,
        right,
        cover,
    };
    index
}

pub(crate) fn leaf_value(g: f64, h: f64, lambda: f64) -> f64 {
    let denom = h + lambda;
    if denom > 0.0 {
        -g / denom
    } else {
        0.0
    }
}

fn score(g: f64, h: f64, lambda: f64) -> f64 {
    let denom = h + lambda;
    if denom > 0.0 {
        g * g / denom
    } else {
        0.0
    }
}

fn best_split(
    node: &NodeRows,
    x: &[Vec<f64>],
    grad: &[f64],
    hess: &[f64],
    g: f64,
    h: f64,
    params: &GrowParams,
) -> Option<Candidate> {
    let parent = score(g, h, params.lambda);
    let min_leaf = params.min_leaf.max(1);
    let mut best: Option<Candidate> = None;
    for (f, order) in node.sorted.iter().enumerate() {
        if order.len() < 2 {
            continue;
        }
        let miss = &node.missing[f];
        let gm: f64 = miss.iter().map(|&r| grad[r as usize]).sum();
        let hm: f64 = miss.iter().map(|&r| hess[r as usize]).sum();
        let nm = miss.len();
        let (mut gl, mut hl) = (0.0, 0.0);
        for i in 0..order.len() - 1 {
            let r = order[i] as usize;
            gl += grad[r];
            hl += hess[r];
            let (v, next) = (x[r][f], x[order[i + 1] as usize][f]);
            if v == next {
                continue;
            }
            let nl = i + 1;
            let nr = order.len() - nl;
            for missing_left in [true, false] {
                let (gl2, hl2, nl2, nr2) = if missing_left {
                    (gl + gm, hl + hm, nl + nm, nr)
                } else {
                    (gl, hl, nl, nr + nm)
                };
                if nl2 < min_leaf || nr2 < min_leaf {
                    continue;
                }
                let gain = score(gl2, hl2, params.lambda) + score(g - gl2, h - hl2, params.lambda) - parent;
                if gain > 1e-12 && best.as_ref().is_none_or(|b| gain > b.gain) {
                    best = Some(Candidate {
                        gain,
                        feature: f,
                        threshold: midpoint(v, next),
                        missing_left: if nm == 0 { nl >= nr } else { missing_left },
                    });
                }
                if nm == 0 {
                    // both directions give the same partition
                    break;
                }
            }
        }
    }
    best
}

/// A threshold `t` with `lo < t <= hi`.
fn midpoint(lo: f64, hi: f64) -> f64 {
    let m = lo / 2.0 + hi / 2.0;
    if m > lo {
        m
    } else {
        hi
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn midpoint_is_strictly_above_low() {
        assert_eq!(midpoint(1.0, 3.0), 2.0);
        let lo = 1.0f64;
        let hi = f64::from_bits(lo.to_bits() + 1);
        let t = midpoint(lo, hi);
        assert!(lo < t && t <= hi);
    }

    #[test]
    fn missing_values_follow_the_flag() {
        assert!(goes_left(f64::NAN, 0.0, true));
        assert!(!goes_left(f64::NAN, 0.0, false));
        assert!(goes_left(-1.0, 0.0, false));
        assert!(!goes_left(0.0, 0.0, true));
    }

    #[test]
    fn validate_rejects_bad_trees() {
        let t = Tree {
            nodes: vec![
                Node::Split { feature: 0, threshold: 1.0, missing_left: true, left: 1, right: 1, cover: 2.0 },
                Node::Leaf { value: 1.0, cover: 1.0 },
            ],
        };
        assert!(t.validate(1).is_err());
        let t = Tree {
            nodes: vec![
                Node::Split { feature: 3, threshold: 1.0, missing_left: true, left: 1, right: 2, cover: 2.0 },
                Node::Leaf { value: 1.0, cover: 1.0 },
                Node::Leaf { value: 2.0, cover: 1.0 },
            ],
        };
        assert!(t.validate(1).is_err());
        assert!(t.validate(4).is_ok());
        assert_eq!(t.depth(), 1);
    }

    fn presort(x: &[Vec<f64>]) -> Vec<Vec<u32>> {
        (0..x[0].len())
            .map(|f| {
                let mut o: Vec<u32> = (0..x.len() as u32).collect();
                o.sort_by(|&a, &b| x[a as usize][f].total_cmp(&x[b as usize][f]));
                o
            })
            .collect()
    }

    #[test]
    fn learns_a_step_with_missing_values() {
        // y = 1 for x >= 5 or missing, else 0; grad = pred - y with pred 0
        let mut x: Vec<Vec<f64>> = (0..10).map(|i| vec![i as f64]).collect();
        x.push(vec![f64::NAN]);
        x.push(vec![f64::NAN]);
        let y: Vec<f64> = x.iter().map(|r| if r[0].is_nan() || r[0] >= 5.0 { 1.0 } else { 0.0 }).collect();
        let grad: Vec<f64> = y.iter().map(|v| -v).collect();
        let hess = vec![1.0; x.len()];
        let rows: Vec<u32> = (0..x.len() as u32).collect();
        let params = GrowParams { max_depth: 1, min_leaf: 1, lambda: 0.0 };
        let tree = grow(&x, &grad, &hess, &presort(&x), &rows, &params);
        match tree.nodes[0] {
            Node::Split { threshold, missing_left, .. } => {
                assert_eq!(threshold, 4.5);
                assert!(!missing_left);
            }
            _ => panic!("expected a split"),
        }
        assert_eq!(tree.eval(&[7.0]), 1.0);
        assert_eq!(tree.eval(&[f64::NAN]), 1.0);
        assert_eq!(tree.eval(&[2.0]), 0.0);
        assert_eq!(tree.nodes[0].cover(), 12.0);
    }

    #[test]
    fn min_leaf_blocks_small_children() {
        let x: Vec<Vec<f64>> = (0..4).map(|i| vec![i as f64]).collect();
        let grad = [-10.0, 0.0, 0.0, 0.0];
        let hess = [1.0; 4];
        let rows = [0, 1, 2, 3];
        let params = GrowParams { max_depth: 3, min_leaf: 2, lambda: 0.0 };
        let tree = grow(&x, &grad, &hess, &presort(&x), &rows, &params);
        // the only admissible split is {0,1} | {2,3}
        assert_eq!(tree.nodes.len(), 3);
        assert_eq!(tree.eval(&[0.0]), 5.0);
    }
}
