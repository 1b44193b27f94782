//! Two-player TrueSkill.

use serde::{Deserialize, Serialize};
use statrs::distribution::{Continuous, ContinuousCDF, Normal};

use super::{AnnotationError, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rating {
    pub mu: f64,
    pub sigma: f64,
}

impl Rating {
    pub fn new(mu: f64, sigma: f64) -> Self {
        Rating { mu, sigma }
    }

    /// `mu - 3 sigma`.
    pub fn conservative(&self) -> f64 {
        self.mu - 3.0 * self.sigma
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrueSkillParams {
    pub mu: f64,
    pub sigma: f64,
    pub beta: f64,
    pub tau: f64,
    pub draw_prob: f64,
}

impl Default for TrueSkillParams {
    fn default() -> Self {
        TrueSkillParams {
            mu: 25.0,
            sigma: 25.0 / 3.0,
            beta: 25.0 / 6.0,
            tau: 25.0 / 300.0,
            draw_prob: 0.1,
        }
    }
}

impl TrueSkillParams {
    pub fn prior(&self) -> Rating {
        Rating::new(self.mu, self.sigma)
    }

    pub fn validate(&self) -> Result<(), AnnotationError> {
        let bad = |m: &str| Err(AnnotationError::InvalidParams(m.to_string()));
        if !self.mu.is_finite() {
            return bad("mu must be finite");
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return bad("sigma must be positive");
        }
        if !(self.beta.is_finite() && self.beta > 0.0) {
            return bad("beta must be positive");
        }
        if !(self.tau.is_finite() && self.tau >= 0.0) {
            return bad("tau must be non-negative");
        }
        if !(0.0..1.0).contains(&self.draw_prob) {
            return bad("draw_prob must be in [0, 1)");
        }
        Ok(())
    }

    /// Draw margin for two players.
    pub fn draw_margin(&self) -> f64 {
        std_normal().inverse_cdf((self.draw_prob + 1.0) / 2.0) * std::f64::consts::SQRT_2 * self.beta
    }
}

fn std_normal() -> Normal {
    Normal::standard()
}

// Below this the CDF difference is treated as zero and the asymptotic limit
// of the correction functions is used.
const TINY: f64 = 2.2e-162;

fn v_win(t: f64, e: f64) -> f64 {
    let n = std_normal();
    let x = t - e;
    let denom = n.cdf(x);
    if denom < TINY {
        -x
    } else {
        n.pdf(x) / denom
    }
}

fn w_win(t: f64, e: f64) -> f64 {
    let n = std_normal();
    let x = t - e;
    if n.cdf(x) < TINY {
        return if x < 0.0 { 1.0 } else { 0.0 };
    }
    let v = v_win(t, e);
    v * (v + x)
}

fn v_draw(t: f64, e: f64) -> f64 {
    let n = std_normal();
    let abs = t.abs();
    let (a, b) = (e - abs, -e - abs);
    let denom = n.cdf(a) - n.cdf(b);
    let v = if denom < TINY { a } else { (n.pdf(b) - n.pdf(a)) / denom };
    if t < 0.0 {
        -v
    } else {
        v
    }
}

fn w_draw(t: f64, e: f64) -> f64 {
    let n = std_normal();
    let abs = t.abs();
    let (a, b) = (e - abs, -e - abs);
    let denom = n.cdf(a) - n.cdf(b);
    if denom < TINY {
        return 1.0;
    }
    let v = v_draw(abs, e);
    v * v + (a * n.pdf(a) - b * n.pdf(b)) / denom
}

/// Updates both ratings after one comparison. Dynamics noise `tau` is added
/// to both variances first.
pub fn trueskill_update(
    ra: Rating,
    rb: Rating,
    outcome: Outcome,
    params: &TrueSkillParams,
) -> Result<(Rating, Rating), AnnotationError> {
    params.validate()?;
    for r in [ra, rb] {
        if !(r.sigma.is_finite() && r.sigma > 0.0 && r.mu.is_finite()) {
            return Err(AnnotationError::InvalidParams(format!(
                "rating ({}, {}) needs finite mu and positive sigma",
                r.mu, r.sigma
            )));
        }
    }
    if outcome == Outcome::Draw && params.draw_prob == 0.0 {
        return Err(AnnotationError::InvalidParams("draw recorded but draw_prob is 0".into()));
    }
    // B winning is A winning with the roles swapped.
    if outcome == Outcome::BWins {
        let (b, a) = trueskill_update(rb, ra, Outcome::AWins, params)?;
        return Ok((a, b));
    }
    let tau2 = params.tau * params.tau;
    let va = ra.sigma * ra.sigma + tau2;
    let vb = rb.sigma * rb.sigma + tau2;
    let c2 = 2.0 * params.beta * params.beta + va + vb;
    let c = c2.sqrt();
    let t = (ra.mu - rb.mu) / c;
    let e = params.draw_margin() / c;
    let (v, w) = match outcome {
        Outcome::Draw => (v_draw(t, e), w_draw(t, e)),
        _ => (v_win(t, e), w_win(t, e)),
    };
    let a = Rating::new(ra.mu + va / c * v, (va * (1.0 - va / c2 * w)).sqrt());
    let b = Rating::new(rb.mu - vb / c * v, (vb * (1.0 - vb / c2 * w)).sqrt());
    Ok((a, b))
}
