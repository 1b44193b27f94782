//! Lexical dependency extraction from a source tree.
//!
//! Each file declares one top-level type named after its file stem, and its
//! directory path relative to the root is its package. A line of file `a`
//! depends on file `b` when, after comment stripping, it contains a word
//! token equal to `b`'s type name. String literals are not stripped.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use walkdir::WalkDir;

use super::{DependencyGraph, GraphBuilder, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExtractorConfig {
    /// File extensions (without the dot) that are treated as sources.
    pub extensions: Vec<String>,
    pub line_comments: Vec<String>,
    pub block_comments: Vec<(String, String)>,
    /// Characters that are part of a word in addition to ASCII
    /// alphanumerics and `_`.
    pub extra_word_chars: String,
}

impl Default for ExtractorConfig {
    fn default() -> Self {
        Self {
            extensions: ["src", "java", "kt", "scala", "cs", "rs", "go", "ts", "js"]
                .map(String::from)
                .to_vec(),
            line_comments: vec!["//".into(), "#".into()],
            block_comments: vec![("/*".into(), "*/".into())],
            extra_word_chars: String::new(),
        }
    }
}

impl ExtractorConfig {
    fn is_word_char(&self, c: char) -> bool {
        c.is_ascii_alphanumeric() || c == '_' || self.extra_word_chars.contains(c)
    }
}

struct SourceFile {
    name: String,
    stem: String,
    path: PathBuf,
    text: String,
}

pub fn extract_lexical_dependencies(
    source_root: &Path,
    config: &ExtractorConfig,
) -> Result<DependencyGraph, GraphError> {
    let io_err = |path: &Path, source: std::io::Error| GraphError::Io {
        path: path.to_path_buf(),
        source,
    };

    let mut files: Vec<SourceFile> = Vec::new();
    let mut seen: HashMap<String, PathBuf> = HashMap::new();
    for entry in WalkDir::new(source_root).sort_by_file_name() {
        let entry = entry.map_err(|e| {
            let path = e.path().unwrap_or(source_root).to_path_buf();
            GraphError::Io {
                source: e.into(),
                path,
            }
        })?;
        if !entry.file_type().is_file() {
            continue;
        }
        let path = entry.path();
        let Some(ext) = path.extension().and_then(|e| e.to_str()) else {
            continue;
        };
        if !config.extensions.iter().any(|x| x == ext) {
            continue;
        }
        let Some(stem) = path.file_stem().and_then(|s| s.to_str()) else {
            continue;
        };
        let rel = path.strip_prefix(source_root).unwrap_or(path);
        let package: Vec<String> = rel
            .parent()
            .map(|p| {
                p.components()
                    .map(|c| c.as_os_str().to_string_lossy().into_owned())
                    .collect()
            })
            .unwrap_or_default();
        let name = if package.is_empty() {
            stem.to_string()
        } else {
            format!("{}.{stem}", package.join("."))
        };
        if let Some(first) = seen.get(&name) {
            return Err(GraphError::NameCollision {
                name,
                first: first.clone(),
                second: path.to_path_buf(),
            });
        }
        seen.insert(name.clone(), path.to_path_buf());
        let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
        files.push(SourceFile {
            name,
            stem: stem.to_string(),
            path: path.to_path_buf(),
            text,
        });
    }
    files.sort_by(|a, b| a.name.cmp(&b.name));

    let mut by_stem: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, f) in files.iter().enumerate() {
        by_stem.entry(f.stem.as_str()).or_default().push(i);
    }

    let mut locs = Vec::with_capacity(files.len());
    let mut weights: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for (src, file) in files.iter().enumerate() {
        let mut loc = 0u64;
        for line in strip_comments(&file.text, config) {
            if line.trim().is_empty() {
                continue;
            }
            loc += 1;
            let targets: BTreeSet<usize> = line
                .split(|c: char| !config.is_word_char(c))
                .filter(|tok| !tok.is_empty())
                .filter_map(|tok| by_stem.get(tok))
                .flatten()
                .copied()
                .filter(|&dst| dst != src)
                .collect();
            for dst in targets {
                *weights.entry((src, dst)).or_insert(0) += 1;
            }
        }
        locs.push(loc);
    }

    let mut builder = GraphBuilder::new();
    let mut ids = Vec::with_capacity(files.len());
    for (file, loc) in files.iter().zip(&locs) {
        let id = builder.add_class(&file.name, *loc).map_err(|e| match e {
            GraphError::Validation { reason, .. } => GraphError::Validation {
                line: None,
                reason: format!("{}: {reason}", file.path.display()),
            },
            other => other,
        })?;
        ids.push(id);
    }
    for ((src, dst), w) in weights {
        builder.add_edge(ids[src], ids[dst], w)?;
    }
    builder.build()
}

/// Returns the code portion of every line, with line and block comments
/// removed. Line structure is preserved.
fn strip_comments(text: &str, config: &ExtractorConfig) -> Vec<String> {
    let mut out = Vec::new();
    let mut open_block: Option<&str> = None;
    for line in text.lines() {
        let mut code = String::new();
        let mut rest = line;
        loop {
            if let Some(close) = open_block {
                match rest.find(close) {
                    Some(i) => {
                        rest = &rest[i + close.len()..];
                        open_block = None;
                    }
                    None => break,
                }
                continue;
            }
            let line_hit = config
                .line_comments
                .iter()
                .filter_map(|m| rest.find(m.as_str()).map(|i| (i, None)))
                .min_by_key(|&(i, _)| i);
            let block_hit = config
                .block_comments
                .iter()
                .filter_map(|(o, c)| rest.find(o.as_str()).map(|i| (i, Some((o.len(), c.as_str())))))
                .min_by_key(|&(i, _)| i);
            let hit = match (line_hit, block_hit) {
                (Some(l), Some(b)) => Some(if b.0 <= l.0 { b } else { l }),
                (l, b) => l.or(b),
            };
            match hit {
                None => {
                    code.push_str(rest);
                    break;
                }
                Some((i, None)) => {
                    code.push_str(&rest[..i]);
                    break;
                }
                Some((i, Some((open_len, close)))) => {
                    code.push_str(&rest[..i]);
                    code.push(' ');
                    rest = &rest[i + open_len..];
                    open_block = Some(close);
                }
            }
        }
        out.push(code);
    }
    out
}
