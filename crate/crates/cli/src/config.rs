//! Optional TOML configuration. Command-line flags take precedence.
//!
//! ```toml
//! seed = 42
//!
//! [detector]
//! ud_ratio = 0.3
//! gc_percentile = 0.9
//!
//! [extractor]
//! extensions = ["java"]
//!
//! [train]
//! objective = "lambdarank"
//! n_trees = 300
//!
//! [trueskill]
//! draw_prob = 0.1
//! ```

use std::path::Path;

use atdi::annotation::TrueSkillParams;
use atdi::depgraph::ExtractorConfig;
use atdi::detection::DetectorConfig;
use atdi::ranker::TrainParams;
use serde::Deserialize;

use crate::error::{CliError, CliResult};

pub const CONFIG_ENV: &str = "ATDI_CONFIG";
pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub seed: u64,
    pub detector: DetectorConfig,
    pub extractor: ExtractorConfig,
    pub train: TrainParams,
    pub trueskill: TrueSkillParams,
}

impl Default for FileConfig {
    fn default() -> Self {
        FileConfig {
            seed: DEFAULT_SEED,
            detector: DetectorConfig::default(),
            extractor: ExtractorConfig::default(),
            train: TrainParams::default(),
            trueskill: TrueSkillParams::default(),
        }
    }
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(FileConfig::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_keeps_defaults() {
        let c: FileConfig = toml::from_str("seed = 7\n[detector]\nud_ratio = 0.5\n").unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.detector.ud_ratio, 0.5);
        assert_eq!(c.detector.gc_percentile, DetectorConfig::default().gc_percentile);
        assert_eq!(c.train, TrainParams::default());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<FileConfig>("sed = 7\n").is_err());
    }
}
