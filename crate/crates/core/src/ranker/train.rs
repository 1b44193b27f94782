use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::tree::{grow, GrowParams};
use super::{GbdtModel, LabeledDataset, Objective, RankerError, TrainParams};

/// Fits a boosted ensemble. Deterministic given the data, the parameters and
/// `params.seed`.
pub fn train(data: &LabeledDataset, params: &TrainParams) -> Result<GbdtModel, RankerError> {
    params.validate()?;
    if data.len() < 2 {
        return Err(RankerError::TooFewRows {
            needed: 2,
            got: data.len(),
            stratum: None,
        });
    }
    let x: Vec<Vec<f64>> = data.rows().iter().map(|r| r.features.clone()).collect();
    let y: Vec<f64> = data.rows().iter().map(|r| r.label as f64).collect();
    let groups = group_indices(data);
    if params.objective == Objective::LambdaRank
        && groups.iter().all(|g| g.iter().all(|&i| y[i] == y[g[0]]))
    {
        return Err(RankerError::DegenerateLabels);
    }

    let n_features = data.feature_names().len();
    let presorted: Vec<Vec<u32>> = (0..n_features)
        .map(|f| {
            let mut order: Vec<u32> = (0..x.len() as u32).collect();
            order.sort_by(|&a, &b| x[a as usize][f].total_cmp(&x[b as usize][f]));
            order
        })
        .collect();

    let base_score = match params.objective {
        Objective::Mse => y.iter().sum::<f64>() / y.len() as f64,
        Objective::LambdaRank => 0.0,
    };
    let grow_params = GrowParams {
        max_depth: params.max_depth,
        min_leaf: params.min_leaf,
        lambda: params.lambda,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n_sample = ((params.subsample * x.len() as f64).floor() as usize).clamp(1, x.len());
    let all_rows: Vec<u32> = (0..x.len() as u32).collect();

    let mut pred = vec![base_score; x.len()];
    let mut grad = vec![0.0; x.len()];
    let mut hess = vec![0.0; x.len()];
    let mut trees = Vec::with_capacity(params.n_trees);
    for _ in 0..params.n_trees {
        match params.objective {
            Objective::Mse => mse_gradients(&pred, &y, &mut grad, &mut hess),
            Objective::LambdaRank => lambda_gradients(&pred, &y, &groups, params.sigma, &mut grad, &mut hess),
        }
        let rows = if n_sample == x.len() {
            all_rows.clone()
        } else {
            let mut r: Vec<u32> = sample(&mut rng, x.len(), n_sample).into_iter().map(|i| i as u32).collect();
            r.sort_unstable();
            r
        };
        let tree = grow(&x, &grad, &hess, &presorted, &rows, &grow_params);
        for (p, xi) in pred.iter_mut().zip(&x) {
            *p += params.learning_rate * tree.eval(xi);
        }
        trees.push(tree);
    }

    Ok(GbdtModel {
        objective: params.objective,
        learning_rate: params.learning_rate,
        base_score,
        feature_names: data.feature_names().to_vec(),
        trees,
    })
}

/// Row indices per group, groups in order of first appearance.
fn group_indices(data: &LabeledDataset) -> Vec<Vec<usize>> {
    let mut position: BTreeMap<&str, usize> = BTreeMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, row) in data.rows().iter().enumerate() {
        let g = *position.entry(row.group.as_str()).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }
    groups
}

pub(crate) fn mse_gradients(pred: &[f64], y: &[f64], grad: &mut [f64], hess: &mut [f64]) {
    for i in 0..pred.len() {
        grad[i] = pred[i] - y[i];
        hess[i] = 1.0;
    }
}

/// LambdaRank gradients: every pair with different labels inside a group
/// pushes the better item up with a strength scaled by the change in NDCG
/// that swapping the two would cause.
pub(crate) fn lambda_gradients(
    pred: &[f64],
    y: &[f64],
    groups: &[Vec<usize>],
    sigma: f64,
    grad: &mut [f64],
    hess: &mut [f64],
) {
    grad.fill(0.0);
    hess.fill(0.0);
    for group in groups {
        let mut ideal: Vec<f64> = group.iter().map(|&i| y[i]).collect();
        ideal.sort_by(|a, b| b.total_cmp(a));
        let idcg: f64 = ideal
            .iter()
            .enumerate()
            .map(|(p, l)| l / ((p + 2) as f64).log2())
            .sum();
        if idcg == 0.0 {
            continue;
        }
        // Ties in score are ordered worst label first, so an untrained
        // ensemble still sees every pair as misranked. Rows with the same
        // score and label share the mean discount of their positions and
        // therefore get identical gradients.
        let mut order = group.clone();
        order.sort_by(|&a, &b| {
            pred[b]
                .total_cmp(&pred[a])
                .then(y[a].total_cmp(&y[b]))
                .then(a.cmp(&b))
        });
        let mut discount = vec![0.0; pred.len()];
        let mut start = 0;
        while start < order.len() {
            let (s, l) = (pred[order[start]], y[order[start]]);
            let mut end = start + 1;
            while end < order.len() && pred[order[end]] == s && y[order[end]] == l {
                end += 1;
            }
            let mean = (start..end).map(|p| 1.0 / ((p + 2) as f64).log2()).sum::<f64>() / (end - start) as f64;
            for &i in &order[start..end] {
                discount[i] = mean;
            }
            start = end;
        }
        for (a, &i) in group.iter().enumerate() {
            for &j in &group[a + 1..] {
                let (hi, lo) = if y[i] > y[j] {
                    (i, j)
                } else if y[j] > y[i] {
                    (j, i)
                } else {
                    continue;
                };
                let delta = ((y[hi] - y[lo]) * (discount[hi] - discount[lo])).abs() / idcg;
                let rho = 1.0 / (1.0 + (sigma * (pred[hi] - pred[lo])).exp());
                let lambda = sigma * rho * delta;
                let h = sigma * sigma * rho * (1.0 - rho) * delta;
                grad[hi] -= lambda;
                grad[lo] += lambda;
                hess[hi] += h;
                hess[lo] += h;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::LabeledRow;
    use super::*;

    fn dataset(rows: &[(&str, Vec<f64>, u8)]) -> LabeledDataset {
        let n = rows[0].1.len();
        let mut d = LabeledDataset::new((0..n).map(|i| format!("f{i}")).collect());
        for (i, (g, x, l)) in rows.iter().enumerate() {
            d.push(LabeledRow::new(format!("r{i}"), *g, x.clone(), *l)).unwrap();
        }
        d
    }

    fn mse(model: &GbdtModel, d: &LabeledDataset) -> f64 {
        d.rows()
            .iter()
            .map(|r| (model.predict_raw(&r.features).unwrap() - r.label as f64).powi(2))
            .sum::<f64>()
            / d.len() as f64
    }

    #[test]
    fn learns_identity_with_mse() {
        let rows: Vec<_> = (0..30).map(|i| ("g", vec![(1 + i % 10) as f64], (1 + i % 10) as u8)).collect();
        let d = dataset(&rows);
        let params = TrainParams {
            objective: Objective::Mse,
            n_trees: 50,
            learning_rate: 0.3,
            min_leaf: 1,
            ..TrainParams::default()
        };
        let model = train(&d, &params).unwrap();
        assert!(mse(&model, &d) < 0.01, "{}", mse(&model, &d));
    }

    #[test]
    fn mse_loss_never_increases() {
        let rows: Vec<_> = (0..40)
            .map(|i| ("g", vec![(i * 7 % 13) as f64, (i % 5) as f64], (1 + (i * 3 % 10)) as u8))
            .collect();
        let d = dataset(&rows);
        let params = TrainParams {
            objective: Objective::Mse,
            n_trees: 30,
            learning_rate: 0.2,
            ..TrainParams::default()
        };
        let full = train(&d, &params).unwrap();
        let mut prev = f64::INFINITY;
        for k in 0..=full.trees.len() {
            let partial = GbdtModel {
                trees: full.trees[..k].to_vec(),
                ..full.clone()
            };
            let loss = mse(&partial, &d);
            assert!(loss <= prev + 1e-12, "round {k}: {loss} > {prev}");
            prev = loss;
        }
    }

    #[test]
    fn degenerate_labels() {
        let d = dataset(&[("a", vec![1.0], 3), ("a", vec![2.0], 3), ("b", vec![1.0], 5)]);
        assert_eq!(train(&d, &TrainParams::default()), Err(RankerError::DegenerateLabels));
        let params = TrainParams { objective: Objective::Mse, ..TrainParams::default() };
        assert!(train(&d, &params).is_ok());
    }

    #[test]
    fn too_few_rows() {
        let d = dataset(&[("a", vec![1.0], 3)]);
        assert!(matches!(train(&d, &TrainParams::default()), Err(RankerError::TooFewRows { .. })));
    }

    #[test]
    fn one_lambdarank_round_widens_the_gap() {
        let d = dataset(&[("g", vec![0.0], 2), ("g", vec![1.0], 9)]);
        let params = TrainParams { n_trees: 1, min_leaf: 1, ..TrainParams::default() };
        let model = train(&d, &params).unwrap();
        let hi = model.predict_raw(&[1.0]).unwrap();
        let lo = model.predict_raw(&[0.0]).unwrap();
        assert!(hi - lo > 0.0);
    }

    #[test]
    fn lambda_gradients_by_hand() {
        // two items, equal scores, labels 1 and 3. Current order puts item 0
        // first (tie broken by index): discounts 1 and 1/log2(3).
        let pred = [0.0, 0.0];
        let y = [1.0, 3.0];
        let (mut g, mut h) = ([0.0; 2], [0.0; 2]);
        lambda_gradients(&pred, &y, &[vec![0, 1]], 1.0, &mut g, &mut h);
        let idcg = 3.0 + 1.0 / 3f64.log2();
        let delta = 2.0 * (1.0 - 1.0 / 3f64.log2()) / idcg;
        assert!((g[1] + 0.5 * delta).abs() < 1e-15);
        assert!((g[0] - 0.5 * delta).abs() < 1e-15);
        assert!((h[0] - 0.25 * delta).abs() < 1e-15);
    }

    #[test]
    fn rank_transformed_features_give_the_same_partitions() {
        let raw: Vec<f64> = (0..60).map(|i| ((i * 37) % 61) as f64 * 0.37 - 3.0).collect();
        let labels: Vec<u8> = raw.iter().map(|v| (1.0 + ((v + 3.0) / 2.5).floor()).clamp(1.0, 10.0) as u8).collect();
        let mut sorted = raw.clone();
        sorted.sort_by(f64::total_cmp);
        let ranked: Vec<f64> = raw.iter().map(|v| sorted.iter().position(|s| s == v).unwrap() as f64).collect();
        let group = |i: usize| if i.is_multiple_of(2) { "a" } else { "b" };
        let d1 = dataset(&(0..60).map(|i| (group(i), vec![raw[i]], labels[i])).collect::<Vec<_>>());
        let d2 = dataset(&(0..60).map(|i| (group(i), vec![ranked[i].exp()], labels[i])).collect::<Vec<_>>());
        let params = TrainParams { n_trees: 20, ..TrainParams::default() };
        let (m1, m2) = (train(&d1, &params).unwrap(), train(&d2, &params).unwrap());
        for (r1, r2) in d1.rows().iter().zip(d2.rows()) {
            for (t1, t2) in m1.trees.iter().zip(&m2.trees) {
                assert_eq!(t1.leaf_index(&r1.features), t2.leaf_index(&r2.features));
            }
            assert_eq!(m1.predict_raw(&r1.features).unwrap(), m2.predict_raw(&r2.features).unwrap());
        }
    }

    #[test]
    fn training_is_deterministic() {
        let rows: Vec<_> = (0..50)
            .map(|i| (if i < 25 { "a" } else { "b" }, vec![(i * 11 % 17) as f64, (i % 3) as f64], (1 + i % 10) as u8))
            .collect();
        let d = dataset(&rows);
        let params = TrainParams { n_trees: 20, subsample: 0.7, ..TrainParams::default() };
        assert_eq!(train(&d, &params).unwrap(), train(&d, &params).unwrap());
        let other = TrainParams { seed: 7, ..params.clone() };
        assert_ne!(train(&d, &params).unwrap(), train(&d, &other).unwrap());
    }
}
