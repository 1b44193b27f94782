// Shared by the `cli` and `acceptance` test targets; each uses a subset.
#![allow(dead_code)]

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use atdi::characteristics::{FeatureRow, FeatureVector};
use atdi::depgraph::Level;
use atdi::detection::{Shape, SmellType};
use atdi::ranker::{LabeledDataset, LabeledRow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn fixture(name: &str) -> PathBuf {
    fixtures().join(name)
}

pub fn golden(name: &str) -> PathBuf {
    fixtures().join("golden").join(name)
}

pub fn atdi(args: &[&str]) -> Output {
    atdi_with_stdin(args, "")
}

pub fn atdi_with_stdin(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_atdi"))
        .args(args)
        .env_remove("ATDI_CONFIG")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn atdi");
    // the process may exit before reading all of it
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().expect("wait for atdi")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("terminated by signal")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

pub fn sha256(path: &Path) -> String {
    let bytes = std::fs::read(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
}

pub fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

/// Analyzes the committed fixture tree with the committed model.
pub fn analyze_fixture(out: &Path, formats: &str) -> Output {
    atdi(&[
        "analyze",
        "--src",
        p(&fixture("shopfront")),
        "--model",
        p(&fixture("model.json")),
        "--format",
        formats,
        "-o",
        p(out),
    ])
}

// Sum of 12 uniforms minus 6: close enough to a standard normal for noise.
fn noise(rng: &mut ChaCha8Rng) -> f64 {
    (0..12).map(|_| rng.random::<f64>()).sum::<f64>() - 6.0
}

/// Labels 1..=10 by decile of `latent`, so every stratum has `n / 10` rows.
fn decile_labels(latent: &[f64]) -> Vec<u8> {
    let mut order: Vec<usize> = (0..latent.len()).collect();
    order.sort_by(|&a, &b| latent[a].total_cmp(&latent[b]).then(a.cmp(&b)));
    let mut labels = vec![0u8; latent.len()];
    for (rank, &i) in order.iter().enumerate() {
        labels[i] = (rank * 10 / latent.len()) as u8 + 1;
    }
    labels
}

/// `n` rows of `n_features` uniform features in `groups` groups. The label
/// is a noisy monotone function of the first three features.
pub fn synthetic_dataset(n: usize, n_features: usize, groups: usize, seed: u64) -> LabeledDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n_features).map(|_| rng.random::<f64>()).collect())
        .collect();
    let latent: Vec<f64> = xs
        .iter()
        .map(|x| 3.0 * x[0] + 2.0 * x[1] + x[2] + 0.1 * noise(&mut rng))
        .collect();
    let labels = decile_labels(&latent);
    let mut data = LabeledDataset::new((0..n_features).map(|j| format!("f{j}")).collect());
    for (i, (x, l)) in xs.into_iter().zip(labels).enumerate() {
        data.push(LabeledRow::new(format!("r{i:03}"), format!("g{}", i % groups), x, l))
            .unwrap();
    }
    data
}

/// Smell feature rows whose label follows size, edge count and PageRank.
pub fn synthetic_feature_rows(n: usize, seed: u64) -> Vec<FeatureRow> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let types = [SmellType::CyclicDependency, SmellType::HublikeDependency, SmellType::UnstableDependency];
    let mut rows: Vec<FeatureRow> = (0..n)
        .map(|i| {
            let smell_type = types[i % types.len()];
            let size = rng.random_range(2..30u32);
            let page_rank_mean = rng.random_range(0.001..0.2);
            FeatureRow {
                smell_id: format!("S-{i:03}").as_str().into(),
                project: format!("proj{}", i % 2),
                features: FeatureVector {
                    size,
                    n_edges: size + rng.random_range(0..40u32),
                    page_rank_mean,
                    page_rank_max: page_rank_mean * rng.random_range(1.0..3.0),
                    affected_type: if i % 4 == 0 { Level::Package } else { Level::Class },
                    pct_depth_mean: rng.random_range(1.0..5.0),
                    pct_depth_std: rng.random_range(0.0..1.5),
                    pct_dist_mean: rng.random_range(2.0..8.0),
                    pct_dist_std: rng.random_range(0.0..2.0),
                    shape: (smell_type == SmellType::CyclicDependency).then_some(Shape::Circle),
                    instability_gap: (smell_type == SmellType::UnstableDependency).then(|| rng.random_range(0.0..0.6)),
                    smell_type,
                },
                label: None,
            }
        })
        .collect();
    let latent: Vec<f64> = rows
        .iter()
        .map(|r| {
            let f = &r.features;
            f.size as f64 / 30.0 + f.n_edges as f64 / 70.0 + 3.0 * f.page_rank_mean + 0.05 * noise(&mut rng)
        })
        .collect();
    for (r, l) in rows.iter_mut().zip(decile_labels(&latent)) {
        r.label = Some(l);
    }
    rows
}
