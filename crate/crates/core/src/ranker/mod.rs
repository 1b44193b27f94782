//! Severity model: a gradient-boosted ensemble of regression trees.
//!
//! Two objectives are available. [`Objective::Mse`] regresses the label
//! directly, so its raw score is a severity after clamping to `[1, 10]`.
//! [`Objective::LambdaRank`] optimises the order of smells inside each
//! project; its raw scores are only ordinal and are min-max mapped onto
//! `[1, 10]` per scored batch.
//!
//! ```
//! use atdi::ranker::{train, LabeledDataset, LabeledRow, Objective, TrainParams};
//!
//! let mut data = LabeledDataset::new(vec!["x".to_string()]);
//! for i in 0..40 {
//!     let label = 1 + (i % 10) as u8;
//!     data.push(LabeledRow::new(format!("s{i}"), "p", vec![label as f64], label)).unwrap();
//! }
//! let params = TrainParams {
//!     objective: Objective::Mse,
//!     n_trees: 50,
//!     learning_rate: 0.3,
//!     min_leaf: 1,
//!     ..TrainParams::default()
//! };
//! let model = train(&data, &params).unwrap();
//! let severity = model.predict_severity(&[7.0]).unwrap();
//! assert!((severity - 7.0).abs() < 0.1);
//! ```

mod cv;
mod io;
mod train;
mod tree;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::characteristics::{FeatureRow, FEATURE_NAMES};

pub use cv::{cross_validate, stratified_folds, Cutoff, CvReport, CvSummary, FoldReport, CV_CUTOFFS};
pub use io::{load_model, save_model, save_model_json, ModelFormat};
pub use train::train;
pub use tree::{Node, Tree};

#[derive(Debug, Error, PartialEq)]
pub enum RankerError {
    /// Too few rows overall, or (with `stratum`) too few rows with one label
    /// to put one in every fold.
    #[error("need at least {needed} rows{}, got {got}", stratum.map(|l| format!(" with label {l}")).unwrap_or_default())]
    TooFewRows {
        needed: usize,
        got: usize,
        stratum: Option<u8>,
    },
    #[error("invalid parameter: {0}")]
    InvalidParams(String),
    #[error("feature schema mismatch: expected {expected}, got {actual}")]
    SchemaMismatch { expected: String, actual: String },
    #[error("every group has a single distinct label, so there are no pairs to rank")]
    DegenerateLabels,
    #[error("label {0} is outside [1, 10]")]
    BadLabel(u8),
    #[error("corrupt model: {0}")]
    CorruptModel(String),
    #[error(transparent)]
    Eval(#[from] crate::eval::EvalError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Objective {
    #[serde(rename = "mse")]
    Mse,
    #[default]
    #[serde(rename = "lambdarank")]
    LambdaRank,
}

impl Objective {
    pub fn as_str(self) -> &'static str {
        match self {
            Objective::Mse => "mse",
            Objective::LambdaRank => "lambdarank",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mse" => Ok(Objective::Mse),
            "lambdarank" => Ok(Objective::LambdaRank),
            _ => Err(format!("unknown objective `{s}` (expected mse or lambdarank)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainParams {
    pub objective: Objective,
    pub n_trees: usize,
    pub max_depth: usize,
    pub learning_rate: f64,
    /// Minimum number of training rows in a leaf.
    pub min_leaf: usize,
    /// L2 penalty on leaf values.
    pub lambda: f64,
    /// LambdaRank sigmoid steepness.
    pub sigma: f64,
    /// Share of rows sampled without replacement for each tree.
    pub subsample: f64,
    pub seed: u64,
}

impl Default for TrainParams {
    fn default() -> Self {
        TrainParams {
            objective: Objective::LambdaRank,
            n_trees: 300,
            max_depth: 4,
            learning_rate: 0.05,
            min_leaf: 3,
            lambda: 1.0,
            sigma: 1.0,
            subsample: 1.0,
            seed: 42,
        }
    }
}

impl TrainParams {
    pub fn validate(&self) -> Result<(), RankerError> {
        let bad = |m: &str| Err(RankerError::InvalidParams(m.to_string()));
        if self.n_trees == 0 {
            return bad("n_trees must be at least 1");
        }
        if self.max_depth == 0 {
            return bad("max_depth must be at least 1");
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return bad("learning_rate must be positive");
        }
        if self.min_leaf == 0 {
            return bad("min_leaf must be at least 1");
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return bad("lambda must be non-negative");
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return bad("sigma must be positive");
        }
        if !(self.subsample > 0.0 && self.subsample <= 1.0) {
            return bad("subsample must be in (0, 1]");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledRow {
    pub id: String,
    /// Rows are ranked against the other rows of their group (project).
    pub group: String,
    pub features: Vec<f64>,
    pub label: u8,
}

impl LabeledRow {
    pub fn new(id: impl Into<String>, group: impl Into<String>, features: Vec<f64>, label: u8) -> Self {
        LabeledRow {
            id: id.into(),
            group: group.into(),
            features,
            label,
        }
    }
}

/// Training rows with integral labels in `[1, 10]` and a uniform schema.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    feature_names: Vec<String>,
    rows: Vec<LabeledRow>,
}

impl LabeledDataset {
    pub fn new(feature_names: Vec<String>) -> Self {
        LabeledDataset {
            feature_names,
            rows: Vec::new(),
        }
    }

    /// Labelled feature matrix rows; unlabelled rows are skipped.
    pub fn from_feature_rows(rows: &[FeatureRow]) -> Result<Self, RankerError> {
        let mut data = LabeledDataset::new(FEATURE_NAMES.iter().map(|s| s.to_string()).collect());
        for row in rows {
            if let Some(label) = row.label {
                data.push(LabeledRow::new(
                    row.smell_id.as_str(),
                    row.project.clone(),
                    row.features.to_model_input(),
                    label,
                ))?;
            }
        }
        Ok(data)
    }

    pub fn push(&mut self, row: LabeledRow) -> Result<(), RankerError> {
        if !(1..=10).contains(&row.label) {
            return Err(RankerError::BadLabel(row.label));
        }
        if row.features.len() != self.feature_names.len() {
            return Err(RankerError::SchemaMismatch {
                expected: format!("{} features", self.feature_names.len()),
                actual: format!("{} features", row.features.len()),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn rows(&self) -> &[LabeledRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// The rows at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> LabeledDataset {
        LabeledDataset {
            feature_names: self.feature_names.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
        }
    }
}

/// Hex SHA-256 of the feature names joined by newlines.
pub fn schema_hash(feature_names: &[String]) -> String {
    let digest = Sha256::digest(feature_names.join("\n").as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GbdtModel {
    pub objective: Objective,
    pub learning_rate: f64,
    pub base_score: f64,
    pub feature_names: Vec<String>,
    pub trees: Vec<Tree>,
}

impl GbdtModel {
    pub fn schema_hash(&self) -> String {
        schema_hash(&self.feature_names)
    }

    pub fn n_features(&self) -> usize {
        self.feature_names.len()
    }

    /// Fails with `SchemaMismatch` unless `names` is the model's schema.
    pub fn check_schema(&self, names: &[String]) -> Result<(), RankerError> {
        let actual = schema_hash(names);
        let expected = self.schema_hash();
        if actual != expected {
            return Err(RankerError::SchemaMismatch { expected, actual });
        }
        Ok(())
    }

    fn check_len(&self, x: &[f64]) -> Result<(), RankerError> {
        if x.len() != self.n_features() {
            return Err(RankerError::SchemaMismatch {
                expected: format!("{} features", self.n_features()),
                actual: format!("{} features", x.len()),
            });
        }
        Ok(())
    }

    pub(crate) fn raw_unchecked(&self, x: &[f64]) -> f64 {
        self.base_score + self.trees.iter().map(|t| self.learning_rate * t.eval(x)).sum::<f64>()
    }

    /// `base_score + Σ learning_rate · leaf(x)`.
    pub fn predict_raw(&self, x: &[f64]) -> Result<f64, RankerError> {
        self.check_len(x)?;
        Ok(self.raw_unchecked(x))
    }

    /// Severity of a single vector. For LambdaRank models a batch of one is
    /// constant and maps to the middle of the scale.
    pub fn predict_severity(&self, x: &[f64]) -> Result<f64, RankerError> {
        Ok(self.predict_severities(&[x.to_vec()])?[0])
    }

    /// Severities in `[1, 10]` for a batch of vectors.
    pub fn predict_severities(&self, xs: &[Vec<f64>]) -> Result<Vec<f64>, RankerError> {
        let raw = xs
            .iter()
            .map(|x| self.predict_raw(x))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(match self.objective {
            Objective::Mse => raw.into_iter().map(|r| r.clamp(1.0, 10.0)).collect(),
            Objective::LambdaRank => min_max_to_scale(&raw),
        })
    }

    /// Severities for feature vectors computed by this crate.
    pub fn predict_features(&self, rows: &[crate::characteristics::FeatureVector]) -> Result<Vec<f64>, RankerError> {
        let names: Vec<String> = FEATURE_NAMES.iter().map(|s| s.to_string()).collect();
        self.check_schema(&names)?;
        let xs: Vec<Vec<f64>> = rows.iter().map(|f| f.to_model_input()).collect();
        self.predict_severities(&xs)
    }

    pub(crate) fn validate(&self) -> Result<(), RankerError> {
        let corrupt = |m: String| Err(RankerError::CorruptModel(m));
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return corrupt("learning rate is not positive".into());
        }
        if !self.base_score.is_finite() {
            return corrupt("base score is not finite".into());
        }
        for (i, t) in self.trees.iter().enumerate() {
            if let Err(m) = t.validate(self.n_features()) {
                return corrupt(format!("tree {i}: {m}"));
            }
        }
        Ok(())
    }
}

/// Maps scores linearly onto `[1, 10]`; a constant batch maps to 5.5.
pub fn min_max_to_scale(raw: &[f64]) -> Vec<f64> {
    let lo = raw.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = raw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi <= lo {
        return vec![5.5; raw.len()];
    }
    raw.iter().map(|r| 1.0 + 9.0 * (r - lo) / (hi - lo)).collect()
}
