//! Append-only comparison log.
//!
//! One comparison per line:
//! `cmp <project> <a> <b> <a_wins|b_wins|draw> <annotator> <timestamp>`.
//! Blank lines and lines starting with `#` are ignored.

use super::{AnnotationError, Comparison};
use crate::detection::SmellId;

pub fn format_comparison(c: &Comparison) -> String {
    format!("cmp {} {} {} {} {} {}\n", c.project, c.a, c.b, c.outcome, c.annotator, c.timestamp)
}

pub fn parse_log(text: &str) -> Result<Vec<Comparison>, AnnotationError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |reason: String| AnnotationError::CorruptLog { line: i + 1, reason };
        let f: Vec<&str> = line.split_whitespace().collect();
        if f[0] != "cmp" {
            return Err(err(format!("expected `cmp`, found `{}`", f[0])));
        }
        if f.len() != 7 {
            return Err(err(format!("expected 7 fields, found {}", f.len())));
        }
        if f[2] == f[3] {
            return Err(err(format!("`{}` compared with itself", f[2])));
        }
        out.push(Comparison {
            project: f[1].to_string(),
            a: SmellId::from(f[2]),
            b: SmellId::from(f[3]),
            outcome: f[4].parse().map_err(err)?,
            annotator: f[5].to_string(),
            timestamp: f[6].to_string(),
        });
    }
    Ok(out)
}
