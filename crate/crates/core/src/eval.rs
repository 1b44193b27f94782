//! Ranking quality and agreement metrics.

use std::cmp::Ordering;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum EvalError {
    #[error("every label is zero, so the ideal DCG is zero")]
    AllZeroLabels,
    #[error("input is constant, correlation is undefined")]
    ConstantInput,
    #[error("inputs have different lengths ({0} and {1})")]
    LengthMismatch(usize, usize),
    #[error("input is empty")]
    Empty,
    #[error("cutoff must be positive")]
    ZeroCutoff,
    #[error("label {0} is negative or not finite")]
    BadLabel(f64),
    #[error("score {0} is not finite")]
    BadScore(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedItem {
    pub id: String,
    pub score: f64,
    pub label: f64,
}

/// Items in descending predicted score, ties broken by ascending id.
#[derive(Debug, Clone, PartialEq)]
pub struct RankedList {
    items: Vec<RankedItem>,
}

impl RankedList {
    pub fn new(items: impl IntoIterator<Item = RankedItem>) -> Result<Self, EvalError> {
        let mut items: Vec<RankedItem> = items.into_iter().collect();
        for item in &items {
            if !(item.label >= 0.0 && item.label.is_finite()) {
                return Err(EvalError::BadLabel(item.label));
            }
            if !item.score.is_finite() {
                return Err(EvalError::BadScore(item.score));
            }
        }
        items.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.id.cmp(&b.id)));
        Ok(Self { items })
    }

    /// Builds a list from parallel slices; ids are the positions, zero-padded
    /// so that tie-breaking follows input order.
    pub fn from_scores(scores: &[f64], labels: &[f64]) -> Result<Self, EvalError> {
        if scores.len() != labels.len() {
            return Err(EvalError::LengthMismatch(scores.len(), labels.len()));
        }
        let width = scores.len().to_string().len();
        Self::new(scores.iter().zip(labels).enumerate().map(|(i, (&score, &label))| RankedItem {
            id: format!("{i:0width$}"),
            score,
            label,
        }))
    }

    pub fn items(&self) -> &[RankedItem] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = f64> + '_ {
        self.items.iter().map(|i| i.label)
    }
}

fn dcg(labels: impl Iterator<Item = f64>, n: usize) -> f64 {
    labels
        .take(n)
        .enumerate()
        .map(|(i, l)| l / ((i + 2) as f64).log2())
        .sum()
}

/// NDCG over the first `n` positions with linear gain. A cutoff longer than
/// the list is clipped to its length.
pub fn ndcg_at(list: &RankedList, n: usize) -> Result<f64, EvalError> {
    if n == 0 {
        return Err(EvalError::ZeroCutoff);
    }
    if list.is_empty() {
        return Err(EvalError::Empty);
    }
    let mut ideal: Vec<f64> = list.labels().collect();
    ideal.sort_by(|a, b| b.total_cmp(a));
    let idcg = dcg(ideal.into_iter(), n);
    if idcg == 0.0 {
        return Err(EvalError::AllZeroLabels);
    }
    Ok(dcg(list.labels(), n) / idcg)
}

/// Fractional ranks starting at 1; tied values share the average rank.
pub fn average_ranks(xs: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut ranks = vec![0.0; xs.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && xs[order[j + 1]] == xs[order[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64, EvalError> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(EvalError::ConstantInput);
    }
    Ok((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

fn check_pair(xs: &[f64], ys: &[f64]) -> Result<(), EvalError> {
    if xs.len() != ys.len() {
        return Err(EvalError::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.is_empty() {
        return Err(EvalError::Empty);
    }
    Ok(())
}

/// Spearman's rho: Pearson correlation of average ranks.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Result<f64, EvalError> {
    check_pair(xs, ys)?;
    pearson(&average_ranks(xs), &average_ranks(ys))
}

/// Kendall's tau-b, which corrects for ties in either argument.
pub fn kendall_tau(xs: &[f64], ys: &[f64]) -> Result<f64, EvalError> {
    check_pair(xs, ys)?;
    let (mut concordant, mut discordant, mut tied_x, mut tied_y) = (0i64, 0i64, 0i64, 0i64);
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let dx = xs[i].total_cmp(&xs[j]);
            let dy = ys[i].total_cmp(&ys[j]);
            match (dx, dy) {
                (Ordering::Equal, Ordering::Equal) => {}
                (Ordering::Equal, _) => tied_x += 1,
                (_, Ordering::Equal) => tied_y += 1,
                _ if dx == dy => concordant += 1,
                _ => discordant += 1,
            }
        }
    }
    let n_x = (concordant + discordant + tied_y) as f64;
    let n_y = (concordant + discordant + tied_x) as f64;
    if n_x == 0.0 || n_y == 0.0 {
        return Err(EvalError::ConstantInput);
    }
    Ok((concordant - discordant) as f64 / (n_x * n_y).sqrt())
}
