//! Active pair selection and the comparison session.

use std::collections::{BTreeMap, HashMap};

use super::{trueskill_update, AnnotationError, Comparison, Rating, TrueSkillParams};
use crate::detection::SmellId;

/// Comparisons needed to reach a third of all pairs of `n` items, rounded up.
pub fn auto_budget(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(3)
}

fn pair_key(a: &SmellId, b: &SmellId) -> (SmellId, SmellId) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

// Combined uncertainty times closeness of the means.
fn match_score(a: &Rating, b: &Rating, beta: f64) -> f64 {
    let s2 = a.sigma * a.sigma + b.sigma * b.sigma;
    let c2 = 2.0 * beta * beta + s2;
    let d = a.mu - b.mu;
    s2.sqrt() * (-d * d / (2.0 * c2)).exp()
}

/// Picks the next pair to compare among the least-played pairs. A pair may
/// be played at most `max_plays` times; once every pair reaches that,
/// [`AnnotationError::Exhausted`] is returned. Ties go to the smallest ids.
/// The returned pair is in id order.
pub fn next_pair(
    ratings: &BTreeMap<SmellId, Rating>,
    history: &[Comparison],
    params: &TrueSkillParams,
    max_plays: u32,
) -> Result<(SmellId, SmellId), AnnotationError> {
    if ratings.len() < 2 {
        return Err(AnnotationError::TooFewItems(ratings.len()));
    }
    let mut plays: HashMap<(SmellId, SmellId), u32> = HashMap::new();
    for c in history {
        *plays.entry(pair_key(&c.a, &c.b)).or_default() += 1;
    }
    let items: Vec<(&SmellId, &Rating)> = ratings.iter().collect();
    let mut best: Option<(u32, f64, usize, usize)> = None;
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            let n = plays.get(&(items[i].0.clone(), items[j].0.clone())).copied().unwrap_or(0);
            if n >= max_plays {
                continue;
            }
            let s = match_score(items[i].1, items[j].1, params.beta);
            let better = match best {
                None => true,
                Some((bn, bs, _, _)) => n < bn || (n == bn && s > bs),
            };
            if better {
                best = Some((n, s, i, j));
            }
        }
    }
    let (_, _, i, j) = best.ok_or(AnnotationError::Exhausted)?;
    Ok((items[i].0.clone(), items[j].0.clone()))
}

/// Rating state of one project's annotation. Replaying the same log always
/// yields the same state.
#[derive(Debug, Clone)]
pub struct Session {
    project: String,
    params: TrueSkillParams,
    ratings: BTreeMap<SmellId, Rating>,
    history: Vec<Comparison>,
    max_plays: u32,
    budget: Option<usize>,
}

impl Session {
    pub fn new(project: impl Into<String>, ids: impl IntoIterator<Item = SmellId>, params: TrueSkillParams) -> Result<Self, AnnotationError> {
        params.validate()?;
        let prior = params.prior();
        Ok(Session {
            project: project.into(),
            params,
            ratings: ids.into_iter().map(|id| (id, prior)).collect(),
            history: Vec::new(),
            max_plays: 1,
            budget: None,
        })
    }

    /// Stops asking after `budget` comparisons.
    pub fn with_budget(mut self, budget: Option<usize>) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_max_plays(mut self, max_plays: u32) -> Self {
        self.max_plays = max_plays;
        self
    }

    pub fn project(&self) -> &str {
        &self.project
    }

    pub fn ratings(&self) -> &BTreeMap<SmellId, Rating> {
        &self.ratings
    }

    pub fn history(&self) -> &[Comparison] {
        &self.history
    }

    pub fn budget_left(&self) -> Option<usize> {
        self.budget.map(|b| b.saturating_sub(self.history.len()))
    }

    /// The next pair to show, or `None` once the budget is spent, every
    /// pair has been compared or there is nothing to compare.
    pub fn next_pair(&self) -> Option<(SmellId, SmellId)> {
        if self.budget_left() == Some(0) {
            return None;
        }
        next_pair(&self.ratings, &self.history, &self.params, self.max_plays).ok()
    }

    pub fn record(&mut self, c: Comparison) -> Result<(), AnnotationError> {
        if c.project != self.project {
            return Err(AnnotationError::InvalidComparison(format!(
                "comparison for project `{}` in a `{}` session",
                c.project, self.project
            )));
        }
        if c.a == c.b {
            return Err(AnnotationError::InvalidComparison(format!("`{}` compared with itself", c.a)));
        }
        let ra = *self.ratings.get(&c.a).ok_or_else(|| AnnotationError::UnknownSmell(c.a.to_string()))?;
        let rb = *self.ratings.get(&c.b).ok_or_else(|| AnnotationError::UnknownSmell(c.b.to_string()))?;
        let (na, nb) = trueskill_update(ra, rb, c.outcome, &self.params)?;
        self.ratings.insert(c.a.clone(), na);
        self.ratings.insert(c.b.clone(), nb);
        self.history.push(c);
        Ok(())
    }

    /// Applies the comparisons of this session's project, in order.
    /// Comparisons of other projects are skipped.
    pub fn replay<'a>(&mut self, log: impl IntoIterator<Item = &'a Comparison>) -> Result<(), AnnotationError> {
        for c in log {
            if c.project == self.project {
                self.record(c.clone())?;
            }
        }
        Ok(())
    }
}
