use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{train, LabeledDataset, RankerError, TrainParams};
use crate::eval::{ndcg_at, RankedItem, RankedList};

/// NDCG cutoff: the first `n` positions or the whole list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Cutoff {
    At(usize),
    Full,
}

pub const CV_CUTOFFS: [Cutoff; 5] = [Cutoff::At(1), Cutoff::At(10), Cutoff::At(25), Cutoff::At(50), Cutoff::Full];

impl Cutoff {
    pub fn resolve(self, len: usize) -> usize {
        match self {
            Cutoff::At(n) => n,
            Cutoff::Full => len,
        }
    }
}

impl fmt::Display for Cutoff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cutoff::At(n) => write!(f, "ndcg@{n}"),
            Cutoff::Full => f.write_str("ndcg@full"),
        }
    }
}

impl FromStr for Cutoff {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tail = s.strip_prefix("ndcg@").unwrap_or(s);
        if tail == "full" {
            return Ok(Cutoff::Full);
        }
        match tail.parse::<usize>() {
            Ok(n) if n > 0 => Ok(Cutoff::At(n)),
            _ => Err(format!("bad cutoff `{s}`")),
        }
    }
}

impl From<Cutoff> for String {
    fn from(c: Cutoff) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for Cutoff {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldReport {
    pub fold: usize,
    pub test_rows: usize,
    pub ndcg: BTreeMap<Cutoff, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvSummary {
    pub cutoff: Cutoff,
    pub mean: f64,
    /// Population standard deviation over folds.
    pub std: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvReport {
    pub k: usize,
    pub seed: u64,
    pub folds: Vec<FoldReport>,
    pub summary: Vec<CvSummary>,
}

impl CvReport {
    pub fn mean(&self, cutoff: Cutoff) -> Option<f64> {
        self.summary.iter().find(|s| s.cutoff == cutoff).map(|s| s.mean)
    }
}

/// Test-fold indices stratified by label. Each label's rows are shuffled with
/// `seed` and dealt round-robin; the dealing position carries over from one
/// label to the next so fold sizes differ by at most one.
pub fn stratified_folds(labels: &[u8], k: usize, seed: u64) -> Result<Vec<Vec<usize>>, RankerError> {
    if k < 2 {
        return Err(RankerError::InvalidParams("k must be at least 2".into()));
    }
    if labels.len() < k {
        return Err(RankerError::TooFewRows {
            needed: k,
            got: labels.len(),
            stratum: None,
        });
    }
    let mut strata: BTreeMap<u8, Vec<usize>> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        strata.entry(l).or_default().push(i);
    }
    if let Some((&label, rows)) = strata.iter().find(|(_, rows)| rows.len() < k) {
        return Err(RankerError::TooFewRows {
            needed: k,
            got: rows.len(),
            stratum: Some(label),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![Vec::new(); k];
    let mut next = 0;
    for rows in strata.values_mut() {
        rows.shuffle(&mut rng);
        for &r in rows.iter() {
            folds[next % k].push(r);
            next += 1;
        }
    }
    for f in &mut folds {
        f.sort_unstable();
    }
    Ok(folds)
}

/// k-fold cross-validation. Each test fold is scored as one ranked list.
pub fn cross_validate(
    data: &LabeledDataset,
    k: usize,
    params: &TrainParams,
    seed: u64,
) -> Result<CvReport, RankerError> {
    let labels: Vec<u8> = data.rows().iter().map(|r| r.label).collect();
    let folds = stratified_folds(&labels, k, seed)?;
    let mut reports = Vec::with_capacity(k);
    for (fold, test) in folds.iter().enumerate() {
        let mut in_test = vec![false; data.len()];
        for &i in test {
            in_test[i] = true;
        }
        let train_idx: Vec<usize> = (0..data.len()).filter(|&i| !in_test[i]).collect();
        let model = train(&data.subset(&train_idx), params)?;
        let items = test
            .iter()
            .map(|&i| {
                let row = &data.rows()[i];
                Ok(RankedItem {
                    id: row.id.clone(),
                    score: model.predict_raw(&row.features)?,
                    label: row.label as f64,
                })
            })
            .collect::<Result<Vec<_>, RankerError>>()?;
        let list = RankedList::new(items)?;
        let mut ndcg = BTreeMap::new();
        for cutoff in CV_CUTOFFS {
            ndcg.insert(cutoff, ndcg_at(&list, cutoff.resolve(list.len()))?);
        }
        reports.push(FoldReport {
            fold,
            test_rows: test.len(),
            ndcg,
        });
    }
    let summary = CV_CUTOFFS
        .iter()
        .map(|&cutoff| {
            let values: Vec<f64> = reports.iter().map(|r| r.ndcg[&cutoff]).collect();
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / values.len() as f64;
            CvSummary {
                cutoff,
                mean,
                std: var.sqrt(),
            }
        })
        .collect();
    Ok(CvReport {
        k,
        seed,
        folds: reports,
        summary,
    })
}
