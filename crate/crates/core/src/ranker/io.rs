//! Model files.
//!
//! Two encodings share one loader, which tells them apart by the leading
//! magic bytes:
//!
//! * JSON: a pretty-printed tree dump with a `format`/`version` header and
//!   the feature schema hash.
//! * Binary: `ATDIGBDT`, a `u16` version, a `u64` payload length, the
//!   little-endian payload and the SHA-256 of the payload.

use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{schema_hash, GbdtModel, Node, Objective, RankerError, Tree};

const MAGIC: &[u8; 8] = b"ATDIGBDT";
const VERSION: u16 = 1;
const FORMAT_NAME: &str = "atdi-gbdt";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModelFormat {
    #[default]
    Json,
    Binary,
}

impl FromStr for ModelFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ModelFormat::Json),
            "bin" | "binary" => Ok(ModelFormat::Binary),
            _ => Err(format!("unknown model format `{s}` (expected json or binary)")),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    format: String,
    version: u16,
    objective: Objective,
    learning_rate: f64,
    base_score: f64,
    feature_names: Vec<String>,
    schema_hash: String,
    trees: Vec<Tree>,
}

pub fn save_model(model: &GbdtModel, format: ModelFormat) -> Vec<u8> {
    match format {
        ModelFormat::Json => save_model_json(model).into_bytes(),
        ModelFormat::Binary => save_binary(model),
    }
}

pub fn save_model_json(model: &GbdtModel) -> String {
    let file = ModelFile {
        format: FORMAT_NAME.into(),
        version: VERSION,
        objective: model.objective,
        learning_rate: model.learning_rate,
        base_score: model.base_score,
        feature_names: model.feature_names.clone(),
        schema_hash: model.schema_hash(),
        trees: model.trees.clone(),
    };
    let mut text = serde_json::to_string_pretty(&file).expect("model serialises");
    text.push('\n');
    text
}

/// Loads either encoding and checks the result for consistency.
pub fn load_model(bytes: &[u8]) -> Result<GbdtModel, RankerError> {
    let model = if bytes.starts_with(MAGIC) {
        load_binary(bytes)?
    } else {
        load_json(bytes)?
    };
    model.validate()?;
    Ok(model)
}

fn corrupt(msg: impl Into<String>) -> RankerError {
    RankerError::CorruptModel(msg.into())
}

fn load_json(bytes: &[u8]) -> Result<GbdtModel, RankerError> {
    let file: ModelFile = serde_json::from_slice(bytes).map_err(|e| corrupt(e.to_string()))?;
    if file.format != FORMAT_NAME {
        return Err(corrupt(format!("unknown format `{}`", file.format)));
    }
    if file.version != VERSION {
        return Err(corrupt(format!("unsupported version {}", file.version)));
    }
    if file.schema_hash != schema_hash(&file.feature_names) {
        return Err(corrupt("schema hash does not match the feature names"));
    }
    Ok(GbdtModel {
        objective: file.objective,
        learning_rate: file.learning_rate,
        base_score: file.base_score,
        feature_names: file.feature_names,
        trees: file.trees,
    })
}

fn save_binary(model: &GbdtModel) -> Vec<u8> {
    let mut p = Vec::new();
    p.push(match model.objective {
        Objective::Mse => 0u8,
        Objective::LambdaRank => 1,
    });
    p.extend(model.learning_rate.to_le_bytes());
    p.extend(model.base_score.to_le_bytes());
    p.extend((model.feature_names.len() as u32).to_le_bytes());
    for name in &model.feature_names {
        p.extend((name.len() as u32).to_le_bytes());
        p.extend(name.as_bytes());
    }
    p.extend((model.trees.len() as u32).to_le_bytes());
    for tree in &model.trees {
        p.extend((tree.nodes.len() as u32).to_le_bytes());
        for node in &tree.nodes {
            match *node {
                Node::Leaf { value, cover } => {
                    p.push(0);
                    p.extend(value.to_le_bytes());
                    p.extend(cover.to_le_bytes());
                }
                Node::Split {
                    feature,
                    threshold,
                    missing_left,
                    left,
                    right,
                    cover,
                } => {
                    p.push(1);
                    p.extend((feature as u32).to_le_bytes());
                    p.extend(threshold.to_le_bytes());
                    p.push(missing_left as u8);
                    p.extend((left as u32).to_le_bytes());
                    p.extend((right as u32).to_le_bytes());
                    p.extend(cover.to_le_bytes());
                }
            }
        }
    }
    let mut out = Vec::with_capacity(p.len() + 50);
    out.extend(MAGIC);
    out.extend(VERSION.to_le_bytes());
    out.extend((p.len() as u64).to_le_bytes());
    out.extend(&p);
    out.extend(Sha256::digest(&p));
    out
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], RankerError> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len());
        let end = end.ok_or_else(|| corrupt("truncated model"))?;
        let s = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn array<const N: usize>(&mut self) -> Result<[u8; N], RankerError> {
        Ok(self.take(N)?.try_into().expect("length checked"))
    }

    fn u8(&mut self) -> Result<u8, RankerError> {
        Ok(self.take(1)?[0])
    }

    fn u32(&mut self) -> Result<u32, RankerError> {
        Ok(u32::from_le_bytes(self.array()?))
    }

    fn f64(&mut self) -> Result<f64, RankerError> {
        Ok(f64::from_le_bytes(self.array()?))
    }

    /// A count of items that each take at least `min_size` bytes.
    fn count(&mut self, min_size: usize) -> Result<usize, RankerError> {
        let n = self.u32()? as usize;
        if n.saturating_mul(min_size) > self.bytes.len() - self.pos {
            return Err(corrupt("truncated model"));
        }
        Ok(n)
    }
}

fn load_binary(bytes: &[u8]) -> Result<GbdtModel, RankerError> {
    let mut header = Cursor { bytes, pos: MAGIC.len() };
    let version = u16::from_le_bytes(header.array()?);
    if version != VERSION {
        return Err(corrupt(format!("unsupported version {version}")));
    }
    let len = u64::from_le_bytes(header.array()?);
    let len = usize::try_from(len).map_err(|_| corrupt("payload length overflows"))?;
    let payload = header.take(len)?;
    let checksum = header.take(32)?;
    if header.pos != bytes.len() {
        return Err(corrupt("trailing bytes after checksum"));
    }
    if Sha256::digest(payload).as_slice() != checksum {
        return Err(corrupt("checksum mismatch"));
    }

    let mut c = Cursor { bytes: payload, pos: 0 };
    let objective = match c.u8()? {
        0 => Objective::Mse,
        1 => Objective::LambdaRank,
        other => return Err(corrupt(format!("unknown objective tag {other}"))),
    };
    let learning_rate = c.f64()?;
    let base_score = c.f64()?;
    let n_features = c.count(4)?;
    let mut feature_names = Vec::with_capacity(n_features);
    for _ in 0..n_features {
        let n = c.count(1)?;
        let name = std::str::from_utf8(c.take(n)?).map_err(|_| corrupt("feature name is not UTF-8"))?;
        feature_names.push(name.to_string());
    }
    let n_trees = c.count(4)?;
    let mut trees = Vec::with_capacity(n_trees);
    for _ in 0..n_trees {
        let n_nodes = c.count(17)?;
        let mut nodes = Vec::with_capacity(n_nodes);
        for _ in 0..n_nodes {
            nodes.push(match c.u8()? {
                0 => Node::Leaf {
                    value: c.f64()?,
                    cover: c.f64()?,
                },
                1 => Node::Split {
                    feature: c.u32()? as usize,
                    threshold: c.f64()?,
                    missing_left: match c.u8()? {
                        0 => false,
                        1 => true,
                        b => return Err(corrupt(format!("bad missing flag {b}"))),
                    },
                    left: c.u32()? as usize,
                    right: c.u32()? as usize,
                    cover: c.f64()?,
                },
                tag => return Err(corrupt(format!("unknown node tag {tag}"))),
            });
        }
        trees.push(Tree { nodes });
    }
    if c.pos != payload.len() {
        return Err(corrupt("trailing bytes in payload"));
    }
    Ok(GbdtModel {
        objective,
        learning_rate,
        base_score,
        feature_names,
        trees,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{train, LabeledDataset, LabeledRow, TrainParams};
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn trained() -> GbdtModel {
        let mut d = LabeledDataset::new(vec!["a".into(), "b".into(), "c".into()]);
        for i in 0..60u32 {
            let a = (i * 13 % 29) as f64 / 7.0;
            let b = if i % 4 == 0 { f64::NAN } else { (i % 9) as f64 };
            let label = (1.0 + a * 1.3).min(10.0) as u8;
            d.push(LabeledRow::new(format!("r{i}"), format!("g{}", i % 3), vec![a, b, i as f64], label))
                .unwrap();
        }
        train(&d, &TrainParams { n_trees: 25, ..TrainParams::default() }).unwrap()
    }

    #[test]
    fn round_trips_predict_identically() {
        let model = trained();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for format in [ModelFormat::Json, ModelFormat::Binary] {
            let loaded = load_model(&save_model(&model, format)).unwrap();
            assert_eq!(loaded, model);
            for _ in 0..100 {
                let x: Vec<f64> = (0..3)
                    .map(|_| if rng.random_bool(0.1) { f64::NAN } else { rng.random_range(-5.0..40.0) })
                    .collect();
                assert_eq!(
                    loaded.predict_raw(&x).unwrap().to_bits(),
                    model.predict_raw(&x).unwrap().to_bits()
                );
            }
        }
    }

    #[test]
    fn saving_is_byte_stable() {
        let model = trained();
        for format in [ModelFormat::Json, ModelFormat::Binary] {
            let bytes = save_model(&model, format);
            assert_eq!(save_model(&load_model(&bytes).unwrap(), format), bytes);
        }
    }

    #[test]
    fn truncated_files_are_corrupt() {
        let model = trained();
        for format in [ModelFormat::Json, ModelFormat::Binary] {
            let bytes = save_model(&model, format);
            for cut in [bytes.len() - 2, bytes.len() / 2, 12, 3] {
                assert!(
                    matches!(load_model(&bytes[..cut]), Err(RankerError::CorruptModel(_))),
                    "{format:?} cut at {cut}"
                );
            }
        }
    }

    #[test]
    fn flipped_payload_byte_fails_the_checksum() {
        let mut bytes = save_model(&trained(), ModelFormat::Binary);
        bytes[30] ^= 0x40;
        assert_eq!(load_model(&bytes), Err(RankerError::CorruptModel("checksum mismatch".into())));
    }

    #[test]
    fn version_and_hash_mismatches() {
        let mut bytes = save_model(&trained(), ModelFormat::Binary);
        bytes[8] = 9;
        assert!(matches!(load_model(&bytes), Err(RankerError::CorruptModel(m)) if m.contains("version")));

        let json = save_model_json(&trained()).replacen("\"version\": 1", "\"version\": 2", 1);
        assert!(matches!(load_model(json.as_bytes()), Err(RankerError::CorruptModel(m)) if m.contains("version")));

        let json = save_model_json(&trained()).replacen("\"a\"", "\"z\"", 1);
        assert!(matches!(load_model(json.as_bytes()), Err(RankerError::CorruptModel(m)) if m.contains("schema")));
    }

    #[test]
    fn loaded_model_detects_schema_mismatch_at_predict_time() {
        let model = load_model(&save_model(&trained(), ModelFormat::Binary)).unwrap();
        assert!(matches!(
            model.check_schema(&["a".into(), "b".into(), "d".into()]),
            Err(RankerError::SchemaMismatch { .. })
        ));
        assert!(matches!(model.predict_raw(&[1.0, 2.0]), Err(RankerError::SchemaMismatch { .. })));
    }
}
