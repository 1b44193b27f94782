//! Training labels from pairwise severity comparisons.
//!
//! Smells of one project and type are ordered by a heuristic
//! [`InitialRanker`], cut into neighbourhoods, and only one representative
//! per neighbourhood is compared by annotators. Comparisons update TrueSkill
//! ratings; [`next_pair`] picks the most informative pair to ask next.
//! Members then inherit their representative's rating and
//! [`ratings_to_labels`] maps the conservative score `mu - 3 sigma` onto
//! the integer scale `1..=10`.
//!
//! ```
//! use atdi::annotation::{ratings_to_labels, trueskill_update, Outcome, Rating, TrueSkillParams};
//! use atdi::detection::SmellId;
//! use std::collections::BTreeMap;
//!
//! let p = TrueSkillParams::default();
//! let (a, b) = trueskill_update(p.prior(), p.prior(), Outcome::AWins, &p).unwrap();
//! assert!(a.mu > 25.0 && b.mu < 25.0);
//!
//! let ratings: BTreeMap<SmellId, Rating> = [("x".into(), a), ("y".into(), b)].into();
//! let labels = ratings_to_labels(&ratings);
//! assert_eq!(labels[&SmellId::from("x")], 10);
//! assert_eq!(labels[&SmellId::from("y")], 1);
//! ```

mod kappa;
mod log;
mod selection;
mod trueskill;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::characteristics::{FeatureRow, FeatureVector};
use crate::detection::{SmellId, SmellType};

pub use kappa::fleiss_kappa;
pub use log::{format_comparison, parse_log};
pub use selection::{auto_budget, next_pair, Session};
pub use trueskill::{trueskill_update, Rating, TrueSkillParams};

#[derive(Debug, Error, PartialEq)]
pub enum AnnotationError {
    #[error("empty smell group")]
    EmptyGroup,
    #[error("{0} ids but {1} scores")]
    LengthMismatch(usize, usize),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("every pair has been compared")]
    Exhausted,
    #[error("need at least 2 smells to compare, got {0}")]
    TooFewItems(usize),
    #[error("unknown smell `{0}`")]
    UnknownSmell(String),
    #[error("invalid comparison: {0}")]
    InvalidComparison(String),
    #[error("comparison log line {line}: {reason}")]
    CorruptLog { line: usize, reason: String },
    #[error("ragged table: {0}")]
    RaggedTable(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    AWins,
    BWins,
    Draw,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::AWins => "a_wins",
            Outcome::BWins => "b_wins",
            Outcome::Draw => "draw",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Outcome {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a_wins" => Ok(Outcome::AWins),
            "b_wins" => Ok(Outcome::BWins),
            "draw" => Ok(Outcome::Draw),
            _ => Err(format!("unknown outcome `{s}`")),
        }
    }
}

/// One annotator judgement: which of two smells of the same project is worse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub project: String,
    pub a: SmellId,
    pub b: SmellId,
    pub outcome: Outcome,
    pub annotator: String,
    pub timestamp: String,
}

/// Features combined by the initial ranking, each z-normalised.
pub const INITIAL_RANKING_FEATURES: [&str; 5] = ["size", "n_edges", "page_rank_mean", "pct_depth_std", "pct_dist_std"];

fn initial_inputs(x: &FeatureVector) -> [f64; 5] {
    [x.size as f64, x.n_edges as f64, x.page_rank_mean, x.pct_depth_std, x.pct_dist_std]
}

/// Equal-weight sum of z-scores, with means and deviations taken from a
/// batch. Higher means presumed more severe. Only used to order smells
/// before annotation, never as a label.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialRanker {
    mean: [f64; 5],
    std: [f64; 5],
}

impl InitialRanker {
    pub fn fit(batch: &[FeatureVector]) -> Self {
        let mut mean = [0.0; 5];
        let mut std = [0.0; 5];
        for k in 0..5 {
            let vals: Vec<f64> = batch.iter().map(|x| initial_inputs(x)[k]).filter(|v| v.is_finite()).collect();
            if vals.is_empty() {
                continue;
            }
            let m = vals.iter().sum::<f64>() / vals.len() as f64;
            mean[k] = m;
            std[k] = (vals.iter().map(|v| (v - m).powi(2)).sum::<f64>() / vals.len() as f64).sqrt();
        }
        InitialRanker { mean, std }
    }

    /// A feature that is constant over the batch, or missing, adds 0.
    pub fn score(&self, x: &FeatureVector) -> f64 {
        initial_inputs(x)
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                if self.std[k] > 0.0 && v.is_finite() {
                    (v - self.mean[k]) / self.std[k]
                } else {
                    0.0
                }
            })
            .sum()
    }
}

/// Fits an [`InitialRanker`] on `batch` and scores every vector of it.
pub fn initial_scores(batch: &[FeatureVector]) -> Vec<f64> {
    let r = InitialRanker::fit(batch);
    batch.iter().map(|x| r.score(x)).collect()
}

/// Row indices grouped by `(project, smell type)`.
pub fn group_rows(rows: &[FeatureRow]) -> BTreeMap<(String, SmellType), Vec<usize>> {
    let mut groups: BTreeMap<(String, SmellType), Vec<usize>> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        groups.entry((r.project.clone(), r.features.smell_type)).or_default().push(i);
    }
    groups
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Neighbourhood {
    pub representative: SmellId,
    /// Members in ascending initial score, representative included.
    pub members: Vec<SmellId>,
}

/// Number of neighbourhoods for a group of `n` smells: `floor(log2 n)` from
/// 5 smells up, otherwise every smell stands alone.
pub fn neighbourhood_count(n: usize) -> usize {
    if n >= 5 {
        n.ilog2() as usize
    } else {
        n
    }
}

/// Cuts a group into contiguous score-sorted neighbourhoods whose sizes
/// differ by at most one. The representative is the median member (the lower
/// one for even sizes).
pub fn select_representatives(ids: &[SmellId], scores: &[f64]) -> Result<Vec<Neighbourhood>, AnnotationError> {
    if ids.is_empty() {
        return Err(AnnotationError::EmptyGroup);
    }
    if ids.len() != scores.len() {
        return Err(AnnotationError::LengthMismatch(ids.len(), scores.len()));
    }
    let mut order: Vec<usize> = (0..ids.len()).collect();
    order.sort_by(|&i, &j| scores[i].total_cmp(&scores[j]).then_with(|| ids[i].cmp(&ids[j])));
    let k = neighbourhood_count(ids.len());
    let (base, extra) = (ids.len() / k, ids.len() % k);
    let mut out = Vec::with_capacity(k);
    let mut start = 0;
    for c in 0..k {
        let len = base + usize::from(c < extra);
        let members: Vec<SmellId> = order[start..start + len].iter().map(|&i| ids[i].clone()).collect();
        out.push(Neighbourhood {
            representative: members[(len - 1) / 2].clone(),
            members,
        });
        start += len;
    }
    Ok(out)
}

/// Mu step between neighbouring members, small enough to only break ties.
pub const NEIGHBOUR_OFFSET: f64 = 1e-6;

/// Gives every member its representative's rating, shifted by its distance
/// from the representative in initial-score order.
pub fn extend_ratings(
    neighbourhoods: &[Neighbourhood],
    ratings: &BTreeMap<SmellId, Rating>,
) -> Result<BTreeMap<SmellId, Rating>, AnnotationError> {
    let mut out = BTreeMap::new();
    for n in neighbourhoods {
        let rep = ratings
            .get(&n.representative)
            .ok_or_else(|| AnnotationError::UnknownSmell(n.representative.to_string()))?;
        let pos = n
            .members
            .iter()
            .position(|m| *m == n.representative)
            .ok_or_else(|| AnnotationError::UnknownSmell(n.representative.to_string()))?;
        for (i, m) in n.members.iter().enumerate() {
            let shift = (i as f64 - pos as f64) * NEIGHBOUR_OFFSET;
            out.insert(m.clone(), Rating::new(rep.mu + shift, rep.sigma));
        }
    }
    Ok(out)
}

/// Maps conservative scores min-max onto `1..=10`, rounding half up. A
/// group whose scores are all equal gets 5.
pub fn ratings_to_labels(ratings: &BTreeMap<SmellId, Rating>) -> BTreeMap<SmellId, u8> {
    let scores: Vec<f64> = ratings.values().map(Rating::conservative).collect();
    let lo = scores.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    ratings
        .iter()
        .zip(&scores)
        .map(|((id, _), &s)| {
            let label = if hi > lo {
                let x = 1.0 + 9.0 * (s - lo) / (hi - lo);
                (x + 0.5).floor().clamp(1.0, 10.0) as u8
            } else {
                5
            };
            (id.clone(), label)
        })
        .collect()
}
