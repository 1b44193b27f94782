//! Per-feature attributions of raw model scores (tree SHAP).
//!
//! Attributions are exact Shapley values of the game in which a coalition of
//! known features is evaluated by following `x` at splits on known features
//! and averaging over both children, weighted by background cover, at every
//! other split. They satisfy local accuracy:
//! `base + Σ contributions = raw prediction`.
//!
//! ```
//! use atdi::explain::Explainer;
//! use atdi::ranker::{GbdtModel, Node, Objective, Tree};
//!
//! let tree = Tree {
//!     nodes: vec![
//!         Node::Split { feature: 0, threshold: 0.5, missing_left: true, left: 1, right: 2, cover: 0.0 },
//!         Node::Leaf { value: -1.0, cover: 0.0 },
//!         Node::Leaf { value: 1.0, cover: 0.0 },
//!     ],
//! };
//! let model = GbdtModel {
//!     objective: Objective::Mse,
//!     learning_rate: 1.0,
//!     base_score: 5.0,
//!     feature_names: vec!["a".into(), "b".into()],
//!     trees: vec![tree],
//! };
//! let background = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![1.0, 1.0], vec![1.0, 2.0]];
//! let explainer = Explainer::new(&model, &background).unwrap();
//! let attr = explainer.explain(&[0.0, 9.0]).unwrap();
//! assert_eq!(attr.base, 5.5);
//! assert_eq!(attr.contributions, vec![-1.5, 0.0]);
//! assert_eq!(attr.prediction, 4.0);
//! ```

use std::io::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::ranker::{GbdtModel, LabeledDataset, Node, RankerError, Tree};

#[derive(Debug, Error, PartialEq)]
pub enum ExplainError {
    #[error(transparent)]
    Ranker(#[from] RankerError),
    #[error("background data is empty")]
    EmptyBackground,
}

/// Attribution of one raw prediction.
#[derive(Debug, Clone, PartialEq)]
pub struct Attribution {
    /// Expected raw score over the background.
    pub base: f64,
    /// One value per feature, in schema order.
    pub contributions: Vec<f64>,
    /// Raw score of the explained input.
    pub prediction: f64,
}

impl Attribution {
    /// `|base + Σ contributions − prediction|`.
    pub fn local_accuracy_error(&self) -> f64 {
        (self.base + self.contributions.iter().sum::<f64>() - self.prediction).abs()
    }
}

/// A model together with per-node cover weights.
#[derive(Debug, Clone)]
pub struct Explainer<'m> {
    model: &'m GbdtModel,
    covers: Vec<Vec<f64>>,
    base: f64,
}

impl<'m> Explainer<'m> {
    /// Covers are recomputed by routing every background row through every
    /// tree.
    pub fn new(model: &'m GbdtModel, background: &[Vec<f64>]) -> Result<Self, ExplainError> {
        if background.is_empty() {
            return Err(ExplainError::EmptyBackground);
        }
        for row in background {
            model.predict_raw(row)?;
        }
        let covers = model
            .trees
            .iter()
            .map(|t| {
                let mut c = vec![0.0; t.nodes.len()];
                for row in background {
                    route(t, row, &mut c);
                }
                c
            })
            .collect();
        Ok(Self::with_covers(model, covers))
    }

    /// Uses the training covers stored in the model.
    pub fn from_model_covers(model: &'m GbdtModel) -> Self {
        let covers = model
            .trees
            .iter()
            .map(|t| t.nodes.iter().map(Node::cover).collect())
            .collect();
        Self::with_covers(model, covers)
    }

    fn with_covers(model: &'m GbdtModel, covers: Vec<Vec<f64>>) -> Self {
        let expected: f64 = model
            .trees
            .iter()
            .zip(&covers)
            .map(|(t, c)| expected_value(t, c, 0))
            .sum();
        Explainer {
            model,
            covers,
            base: model.base_score + model.learning_rate * expected,
        }
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn explain(&self, x: &[f64]) -> Result<Attribution, ExplainError> {
        let prediction = self.model.predict_raw(x)?;
        let mut phi = vec![0.0; self.model.n_features()];
        for (tree, cover) in self.model.trees.iter().zip(&self.covers) {
            let mut tree_phi = vec![0.0; phi.len()];
            recurse(tree, cover, x, 0, Vec::new(), 1.0, 1.0, DUMMY, &mut tree_phi);
            for (p, t) in phi.iter_mut().zip(tree_phi) {
                *p += self.model.learning_rate * t;
            }
        }
        Ok(Attribution {
            base: self.base,
            contributions: phi,
            prediction,
        })
    }
}

/// Attribution of `x` against a labelled background set.
pub fn tree_shap(model: &GbdtModel, x: &[f64], background: &LabeledDataset) -> Result<Attribution, ExplainError> {
    model.check_schema(background.feature_names())?;
    let rows: Vec<Vec<f64>> = background.rows().iter().map(|r| r.features.clone()).collect();
    Explainer::new(model, &rows)?.explain(x)
}

fn route(tree: &Tree, x: &[f64], cover: &mut [f64]) {
    let mut i = 0;
    loop {
        cover[i] += 1.0;
        match tree.nodes[i] {
            Node::Leaf { .. } => return,
            Node::Split { .. } => i = child(tree, i, x),
        }
    }
}

fn child(tree: &Tree, i: usize, x: &[f64]) -> usize {
    match tree.nodes[i] {
        Node::Split {
            feature,
            threshold,
            missing_left,
            left,
            right,
            ..
        } => {
            let v = x[feature];
            let go_left = if v.is_nan() { missing_left } else { v < threshold };
            if go_left {
                left
            } else {
                right
            }
        }
        Node::Leaf { .. } => unreachable!(),
    }
}

/// Shares of a node's cover that flow to its children; an empty node
/// splits evenly.
fn fractions(cover: &[f64], node: usize, left: usize, right: usize) -> (f64, f64) {
    if cover[node] > 0.0 {
        (cover[left] / cover[node], cover[right] / cover[node])
    } else {
        (0.5, 0.5)
    }
}

fn expected_value(tree: &Tree, cover: &[f64], i: usize) -> f64 {
    match tree.nodes[i] {
        Node::Leaf { value, .. } => value,
        Node::Split { left, right, .. } => {
            let (fl, fr) = fractions(cover, i, left, right);
            fl * expected_value(tree, cover, left) + fr * expected_value(tree, cover, right)
        }
    }
}

const DUMMY: usize = usize::MAX;

#[derive(Debug, Clone, Copy)]
struct PathElem {
    feature: usize,
    zero: f64,
    one: f64,
    weight: f64,
}

/// Appends an element and updates the permutation weights of the path.
fn extend(path: &mut Vec<PathElem>, zero: f64, one: f64, feature: usize) {
    let depth = path.len();
    path.push(PathElem {
        feature,
        zero,
        one,
        weight: if depth == 0 { 1.0 } else { 0.0 },
    });
    let d1 = (depth + 1) as f64;
    for i in (0..depth).rev() {
        path[i + 1].weight += one * path[i].weight * (i + 1) as f64 / d1;
        path[i].weight = zero * path[i].weight * (depth - i) as f64 / d1;
    }
}

/// Removes element `k`, undoing its effect on the weights.
fn unwind(path: &mut Vec<PathElem>, k: usize) {
    let depth = path.len() - 1;
    let PathElem { zero, one, .. } = path[k];
    let d1 = (depth + 1) as f64;
    let mut next = path[depth].weight;
    for i in (0..depth).rev() {
        if one != 0.0 {
            let tmp = path[i].weight;
            path[i].weight = next * d1 / ((i + 1) as f64 * one);
            next = tmp - path[i].weight * zero * (depth - i) as f64 / d1;
        } else {
            path[i].weight = path[i].weight * d1 / (zero * (depth - i) as f64);
        }
    }
    for i in k..depth {
        path[i].feature = path[i + 1].feature;
        path[i].zero = path[i + 1].zero;
        path[i].one = path[i + 1].one;
    }
    path.pop();
}

/// Total weight of the path with element `k` removed.
fn unwound_sum(path: &[PathElem], k: usize) -> f64 {
    let depth = path.len() - 1;
    let PathElem { zero, one, .. } = path[k];
    let d1 = (depth + 1) as f64;
    let mut next = path[depth].weight;
    let mut total = 0.0;
    for i in (0..depth).rev() {
        if one != 0.0 {
            let tmp = next * d1 / ((i + 1) as f64 * one);
            total += tmp;
            next = path[i].weight - tmp * zero * (depth - i) as f64 / d1;
        } else if zero != 0.0 {
            total += path[i].weight / zero * d1 / (depth - i) as f64;
        }
    }
    total
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    tree: &Tree,
    cover: &[f64],
    x: &[f64],
    node: usize,
    mut path: Vec<PathElem>,
    zero: f64,
    one: f64,
    feature: usize,
    phi: &mut [f64],
) {
    extend(&mut path, zero, one, feature);
    match tree.nodes[node] {
        Node::Leaf { value, .. } => {
            for k in 1..path.len() {
                let w = unwound_sum(&path, k);
                let el = path[k];
                phi[el.feature] += w * (el.one - el.zero) * value;
            }
        }
        Node::Split {
            feature: split, left, right, ..
        } => {
            let hot = child(tree, node, x);
            let cold = if hot == left { right } else { left };
            let (fl, fr) = fractions(cover, node, left, right);
            let (hot_share, cold_share) = if hot == left { (fl, fr) } else { (fr, fl) };
            let (mut in_zero, mut in_one) = (1.0, 1.0);
            if let Some(k) = path.iter().position(|e| e.feature == split) {
                in_zero = path[k].zero;
                in_one = path[k].one;
                unwind(&mut path, k);
            }
            recurse(tree, cover, x, hot, path.clone(), hot_share * in_zero, in_one, split, phi);
            // a child no background row reaches carries no weight either way
            if cold_share * in_zero != 0.0 {
                recurse(tree, cover, x, cold, path, cold_share * in_zero, 0.0, split, phi);
            }
        }
    }
}

/// Mean absolute, positive and negative attribution of one feature.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureImportance {
    pub feature: String,
    pub mean_abs: f64,
    /// Mean of the positive parts.
    pub mean_positive: f64,
    /// Mean of the negative parts (a non-positive number).
    pub mean_negative: f64,
}

/// Importance table sorted by mean absolute contribution, largest first;
/// ties keep schema order.
pub fn summarize_attributions(feature_names: &[String], attrs: &[Attribution]) -> Vec<FeatureImportance> {
    let n = attrs.len().max(1) as f64;
    let mut table: Vec<FeatureImportance> = feature_names
        .iter()
        .enumerate()
        .map(|(f, name)| {
            let (mut abs, mut pos, mut neg) = (0.0, 0.0, 0.0);
            for a in attrs {
                let v = a.contributions[f];
                abs += v.abs();
                if v > 0.0 {
                    pos += v;
                } else {
                    neg += v;
                }
            }
            FeatureImportance {
                feature: name.clone(),
                mean_abs: abs / n,
                mean_positive: pos / n,
                mean_negative: neg / n,
            }
        })
        .collect();
    table.sort_by(|a, b| b.mean_abs.total_cmp(&a.mean_abs));
    table
}

/// `smell_id,feature,phi` rows.
pub fn attributions_csv(feature_names: &[String], attrs: &[(String, Attribution)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["smell_id", "feature", "phi"]).expect("in-memory write");
    for (id, a) in attrs {
        for (name, phi) in feature_names.iter().zip(&a.contributions) {
            w.write_record([id.as_str(), name.as_str(), &phi.to_string()])
                .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

#[derive(Serialize)]
struct ForceRecord<'a> {
    smell_id: &'a str,
    base: f64,
    contributions: serde_json::Map<String, serde_json::Value>,
    prediction: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    severity: Option<f64>,
}

/// One JSON force-plot record per line: base, per-feature contributions and
/// the raw prediction, plus the severity when known.
pub fn attributions_jsonl(
    feature_names: &[String],
    attrs: &[(String, Attribution)],
    severities: Option<&[f64]>,
) -> String {
    let mut out = Vec::new();
    for (i, (id, a)) in attrs.iter().enumerate() {
        let contributions = feature_names
            .iter()
            .zip(&a.contributions)
            .map(|(n, &v)| (n.clone(), serde_json::Value::from(v)))
            .collect();
        let record = ForceRecord {
            smell_id: id,
            base: a.base,
            contributions,
            prediction: a.prediction,
            severity: severities.map(|s| s[i]),
        };
        serde_json::to_writer(&mut out, &record).expect("in-memory write");
        writeln!(out).expect("in-memory write");
    }
    String::from_utf8(out).expect("utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ranker::{train, LabeledRow, Objective, TrainParams};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn split(feature: usize, threshold: f64, left: usize, right: usize) -> Node {
        Node::Split { feature, threshold, missing_left: true, left, right, cover: 0.0 }
    }

    fn leaf(value: f64) -> Node {
        Node::Leaf { value, cover: 0.0 }
    }

    fn model(n_features: usize, trees: Vec<Tree>) -> GbdtModel {
        GbdtModel {
            objective: Objective::Mse,
            learning_rate: 0.7,
            base_score: 2.0,
            feature_names: (0..n_features).map(|i| format!("f{i}")).collect(),
            trees,
        }
    }

    fn random_rows(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<Vec<f64>> {
        (0..n)
            .map(|_| (0..m).map(|_| (rng.random_range(0..4) as f64) / 2.0).collect())
            .collect()
    }

    fn factorial(n: usize) -> f64 {
        (1..=n).map(|k| k as f64).product()
    }

    /// Training-free oracle: covers from routing `bg` by hand, coalition
    /// values by conditioning on known features, Shapley values by
    /// enumerating every coalition.
    fn brute_force(model: &GbdtModel, bg: &[Vec<f64>], x: &[f64]) -> Vec<f64> {
        let next = |t: &Tree, i: usize, row: &[f64]| match t.nodes[i] {
            Node::Split { feature, threshold, missing_left, left, right, .. } => {
                let l = if row[feature].is_nan() { missing_left } else { row[feature] < threshold };
                if l { left } else { right }
            }
            Node::Leaf { .. } => unreachable!(),
        };
        let covers: Vec<Vec<f64>> = model
            .trees
            .iter()
            .map(|t| {
                let mut c = vec![0.0; t.nodes.len()];
                for row in bg {
                    let mut i = 0;
                    c[0] += 1.0;
                    while let Node::Split { .. } = t.nodes[i] {
                        i = next(t, i, row);
                        c[i] += 1.0;
                    }
                }
                c
            })
            .collect();
        fn value(t: &Tree, c: &[f64], x: &[f64], known: &[bool], i: usize, next: &dyn Fn(&Tree, usize, &[f64]) -> usize) -> f64 {
            match t.nodes[i] {
                Node::Leaf { value, .. } => value,
                Node::Split { feature, left, right, .. } => {
                    if known[feature] {
                        value(t, c, x, known, next(t, i, x), next)
                    } else {
                        let (wl, wr) = if c[i] > 0.0 { (c[left] / c[i], c[right] / c[i]) } else { (0.5, 0.5) };
                        wl * value(t, c, x, known, left, next) + wr * value(t, c, x, known, right, next)
                    }
                }
            }
        }
        let v = |known: &[bool]| -> f64 {
            model.base_score
                + model
                    .trees
                    .iter()
                    .zip(&covers)
                    .map(|(t, c)| model.learning_rate * value(t, c, x, known, 0, &next))
                    .sum::<f64>()
        };
        let m = model.n_features();
        let mut phi = vec![0.0; m];
        for i in 0..m {
            for mask in 0u32..(1 << m) {
                if mask & (1 << i) != 0 {
                    continue;
                }
                let s = mask.count_ones() as usize;
                let weight = factorial(s) * factorial(m - s - 1) / factorial(m);
                let known: Vec<bool> = (0..m).map(|f| mask & (1 << f) != 0).collect();
                let mut with = known.clone();
                with[i] = true;
                phi[i] += weight * (v(&with) - v(&known));
            }
        }
        phi
    }

    #[test]
    fn zero_trees() {
        let m = model(3, vec![]);
        let a = Explainer::new(&m, &[vec![0.0; 3]]).unwrap().explain(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(a.base, 2.0);
        assert_eq!(a.contributions, vec![0.0; 3]);
    }

    #[test]
    fn single_feature_carries_everything() {
        let t = Tree { nodes: vec![split(1, 0.5, 1, 2), leaf(-4.0), leaf(6.0)] };
        let m = model(3, vec![t]);
        let bg = vec![vec![0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 1.0, 0.0]];
        let a = Explainer::new(&m, &bg).unwrap().explain(&[5.0, 0.0, 5.0]).unwrap();
        // E[leaf] = (-4 + 18) / 4 = 3.5; prediction leaf -4
        assert_eq!(a.contributions[0], 0.0);
        assert_eq!(a.contributions[2], 0.0);
        assert!((a.contributions[1] - 0.7 * (-4.0 - 3.5)).abs() < 1e-12);
        assert!(a.local_accuracy_error() < 1e-12);
    }

    #[test]
    fn depth_two_tree_matches_exhaustive_coalitions() {
        // x0 at the root, x1 below on both sides
        let t = Tree {
            nodes: vec![
                split(0, 0.5, 1, 4),
                split(1, 0.5, 2, 3),
                leaf(1.0),
                leaf(3.0),
                split(1, 1.5, 5, 6),
                leaf(-2.0),
                leaf(7.0),
            ],
        };
        let m = model(2, vec![t]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let bg = random_rows(&mut rng, 40, 2);
        let e = Explainer::new(&m, &bg).unwrap();
        for x in random_rows(&mut rng, 20, 2) {
            let a = e.explain(&x).unwrap();
            let oracle = brute_force(&m, &bg, &x);
            for (p, o) in a.contributions.iter().zip(&oracle) {
                assert!((p - o).abs() < 1e-12, "{p} vs {o}");
            }
            assert!(a.local_accuracy_error() < 1e-12);
        }
    }

    #[test]
    fn repeated_features_and_unreached_nodes() {
        // feature 0 appears twice on a path; the right subtree is never
        // reached by the background
        let t = Tree {
            nodes: vec![
                split(0, 10.0, 1, 6),
                split(0, 0.5, 2, 3),
                leaf(1.0),
                split(2, 0.5, 4, 5),
                leaf(2.0),
                leaf(5.0),
                split(1, 0.5, 7, 8),
                leaf(-3.0),
                leaf(9.0),
            ],
        };
        let m = model(4, vec![t]);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let bg = random_rows(&mut rng, 30, 4);
        let e = Explainer::new(&m, &bg).unwrap();
        for mut x in random_rows(&mut rng, 20, 4) {
            if x[3] > 1.0 {
                x[0] = 20.0;
            }
            let a = e.explain(&x).unwrap();
            let oracle = brute_force(&m, &bg, &x);
            for (p, o) in a.contributions.iter().zip(&oracle) {
                assert!((p - o).abs() < 1e-12, "{x:?}: {p} vs {o}");
            }
            assert_eq!(a.contributions[3], 0.0);
            assert!(a.local_accuracy_error() < 1e-12);
        }
    }

    #[test]
    fn trained_model_matches_oracle_and_is_locally_accurate() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut d = LabeledDataset::new((0..5).map(|i| format!("f{i}")).collect());
        for i in 0..80 {
            let x: Vec<f64> = (0..5)
                .map(|f| if f == 4 && i % 5 == 0 { f64::NAN } else { rng.random_range(0.0..1.0) })
                .collect();
            let label = (1.0 + 4.0 * x[0] + 3.0 * x[1] + 2.0 * x[2]).floor().min(10.0) as u8;
            d.push(LabeledRow::new(format!("r{i}"), format!("g{}", i % 3), x, label)).unwrap();
        }
        let params = TrainParams { objective: Objective::Mse, n_trees: 15, ..TrainParams::default() };
        let m = train(&d, &params).unwrap();
        let rows: Vec<Vec<f64>> = d.rows().iter().map(|r| r.features.clone()).collect();
        let e = Explainer::new(&m, &rows).unwrap();
        for x in rows.iter().take(15) {
            let a = e.explain(x).unwrap();
            assert!(a.local_accuracy_error() < 1e-9);
            let oracle = brute_force(&m, &rows, x);
            for (p, o) in a.contributions.iter().zip(&oracle) {
                assert!((p - o).abs() < 1e-9, "{p} vs {o}");
            }
        }
        // with the full training set as background the stored covers agree
        let stored = Explainer::from_model_covers(&m);
        assert!((stored.base() - e.base()).abs() < 1e-9);
        assert_eq!(tree_shap(&m, &rows[0], &d).unwrap(), e.explain(&rows[0]).unwrap());
    }

    #[test]
    fn mirrored_trees_are_symmetric() {
        let t0 = Tree { nodes: vec![split(0, 0.5, 1, 2), leaf(0.0), leaf(4.0)] };
        let t1 = Tree { nodes: vec![split(1, 0.5, 1, 2), leaf(0.0), leaf(4.0)] };
        let m = model(2, vec![t0, t1]);
        let bg = vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![0.0, 1.0], vec![1.0, 0.0]];
        let a = Explainer::new(&m, &bg).unwrap().explain(&[1.0, 1.0]).unwrap();
        assert_eq!(a.contributions[0], a.contributions[1]);
    }

    #[test]
    fn errors() {
        let m = model(2, vec![]);
        assert_eq!(Explainer::new(&m, &[]).unwrap_err(), ExplainError::EmptyBackground);
        assert!(matches!(Explainer::new(&m, &[vec![1.0]]), Err(ExplainError::Ranker(_))));
        let e = Explainer::new(&m, &[vec![1.0, 1.0]]).unwrap();
        assert!(matches!(e.explain(&[1.0]), Err(ExplainError::Ranker(_))));
    }

    #[test]
    fn summary_by_hand() {
        let names: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
        let one = Attribution { base: 0.0, contributions: vec![-2.0, 0.5, 0.0], prediction: -1.5 };
        let t = summarize_attributions(&names, std::slice::from_ref(&one));
        assert_eq!(t.iter().map(|r| r.feature.as_str()).collect::<Vec<_>>(), ["a", "b", "c"]);
        assert_eq!(t.iter().map(|r| r.mean_abs).collect::<Vec<_>>(), [2.0, 0.5, 0.0]);

        // 20 instances: a alternates +1 / -3, b is always 0.25, c always 0
        let attrs: Vec<Attribution> = (0..20)
            .map(|i| Attribution {
                base: 0.0,
                contributions: vec![if i % 2 == 0 { 1.0 } else { -3.0 }, 0.25, 0.0],
                prediction: 0.0,
            })
            .collect();
        let t = summarize_attributions(&names, &attrs);
        assert_eq!(t[0], FeatureImportance { feature: "a".into(), mean_abs: 2.0, mean_positive: 0.5, mean_negative: -1.5 });
        assert_eq!(t[1].mean_abs, 0.25);
        assert_eq!(t[2].feature, "c");
        assert_eq!(t[2].mean_abs, 0.0);
    }

    #[test]
    fn exports() {
        let names: Vec<String> = vec!["a".into(), "b".into()];
        let a = Attribution { base: 1.0, contributions: vec![0.5, -0.25], prediction: 1.25 };
        let csv = attributions_csv(&names, &[("CD-class-1".into(), a.clone())]);
        assert_eq!(csv, "smell_id,feature,phi\nCD-class-1,a,0.5\nCD-class-1,b,-0.25\n");
        let json = attributions_jsonl(&names, &[("x".into(), a)], Some(&[5.5]));
        assert_eq!(
            json,
            "{\"smell_id\":\"x\",\"base\":1.0,\"contributions\":{\"a\":0.5,\"b\":-0.25},\"prediction\":1.25,\"severity\":5.5}\n"
        );
    }
}
