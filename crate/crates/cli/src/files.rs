use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use atdi::characteristics::{read_feature_csv, read_label_csv, FeatureRow};
use atdi::ranker::{load_model, GbdtModel};

use crate::error::{CliError, CliResult};

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Writes `name` inside `dir`, creating the directory if needed.
pub fn write_output(dir: &Path, name: &str, bytes: &[u8]) -> CliResult<PathBuf> {
    fs::create_dir_all(dir).map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok(path)
}

pub fn read_model(path: &Path) -> CliResult<GbdtModel> {
    let bytes = fs::read(path).map_err(|e| CliError::Model(format!("{}: {e}", path.display())))?;
    load_model(&bytes).map_err(|e| CliError::Model(format!("{}: {e}", path.display())))
}

/// Feature matrix, with labels from `labels` overriding any label column.
pub fn read_features(path: &Path, labels: Option<&Path>) -> CliResult<Vec<FeatureRow>> {
    let mut rows =
        read_feature_csv(&read_text(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    if let Some(lp) = labels {
        let table: HashMap<_, _> = read_label_csv(&read_text(lp)?)
            .map_err(|e| CliError::Input(format!("{}: {e}", lp.display())))?
            .into_iter()
            .collect();
        for r in &mut rows {
            r.label = table.get(&r.smell_id).copied();
        }
    }
    Ok(rows)
}
