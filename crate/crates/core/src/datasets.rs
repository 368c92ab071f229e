//! Benchmark datasets: two spirals, concentric circles, sign-XOR, and the UCI
//! Wisconsin breast-cancer file, plus target encoding and seeded splitting.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::{Distribution, Normal};

use crate::rng::{self, Stream};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    features: Vec<Vec<f64>>,
    labels: Vec<usize>,
    class_count: usize,
}

impl Dataset {
    pub fn new(features: Vec<Vec<f64>>, labels: Vec<usize>, class_count: usize) -> Result<Self> {
        if features.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if features.len() != labels.len() {
            return Err(Error::LengthMismatch {
                left: features.len(),
                right: labels.len(),
            });
        }
        let dim = features[0].len();
        if dim == 0 {
            return Err(Error::InvalidConfig("feature vectors must be non-empty".into()));
        }
        for row in &features {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    what: "feature row",
                    expected: dim,
                    actual: row.len(),
                });
            }
            if row.iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidConfig("non-finite feature value".into()));
            }
        }
        if let Some(&label) = labels.iter().find(|&&l| l >= class_count) {
            return Err(Error::LabelOutOfRange { label, class_count });
        }
        Ok(Self {
            features,
            labels,
            class_count,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.features[0].len()
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    pub fn features(&self) -> &[Vec<f64>] {
        &self.features
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn rows(&self) -> impl Iterator<Item = (&[f64], usize)> {
        self.features.iter().map(Vec::as_slice).zip(self.labels.iter().copied())
    }

    /// Rows per class, indexed by label.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.class_count];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    /// Same rows with a larger class count (e.g. to match a model's output width).
    pub fn with_class_count(mut self, class_count: usize) -> Result<Self> {
        if class_count < self.class_count {
            let label = self.labels.iter().copied().max().unwrap_or(0);
            if label >= class_count {
                return Err(Error::LabelOutOfRange { label, class_count });
            }
        }
        self.class_count = class_count;
        Ok(self)
    }

    fn subset(&self, indices: &[usize]) -> Self {
        Self {
            features: indices.iter().map(|&i| self.features[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            class_count: self.class_count,
        }
    }

    /// CSV with header `x0,x1,...,label`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dim() {
            let _ = write!(out, "x{i},");
        }
        out.push_str("label\n");
        for (row, label) in self.rows() {
            for v in row {
                let _ = write!(out, "{v},");
            }
            let _ = writeln!(out, "{label}");
        }
        out
    }

    pub fn write_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_csv()).map_err(|e| Error::io(path, e))
    }

    /// Parses the `x0,...,label` format. The class count is `max label + 1`.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::EmptyDataset)?;
        let columns: Vec<&str> = header.split(',').map(str::trim).collect();
        let dim = columns.len().saturating_sub(1);
        let header_ok = dim >= 1
            && columns[dim] == "label"
            && columns[..dim].iter().enumerate().all(|(i, c)| *c == format!("x{i}"));
        if !header_ok {
            return Err(Error::MalformedRow {
                line: 1,
                reason: format!("expected header x0,...,label, got `{header}`"),
            });
        }
        let mut features = Vec::new();
        let mut labels = Vec::new();
        for (idx, line) in lines {
            let malformed = |reason: String| Error::MalformedRow {
                line: idx + 1,
                reason,
            };
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != dim + 1 {
                return Err(malformed(format!("expected {} columns, got {}", dim + 1, fields.len())));
            }
            let row = fields[..dim]
                .iter()
                .map(|f| f.parse::<f64>().map_err(|_| malformed(format!("bad number `{f}`"))))
                .collect::<Result<Vec<_>>>()?;
            let label = fields[dim]
                .parse::<usize>()
                .map_err(|_| malformed(format!("bad label `{}`", fields[dim])))?;
            features.push(row);
            labels.push(label);
        }
        let class_count = labels.iter().copied().max().map_or(1, |m| m + 1);
        Self::new(features, labels, class_count)
    }

    pub fn read_csv(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv(&text)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitDataset {
    pub train: Dataset,
    pub validation: Dataset,
}

impl SplitDataset {
    pub fn new(train: Dataset, validation: Dataset) -> Result<Self> {
        if train.class_count != validation.class_count {
            return Err(Error::ConfigMismatch(format!(
                "train has {} classes, validation has {}",
                train.class_count, validation.class_count
            )));
        }
        if train.dim() != validation.dim() {
            return Err(Error::DimensionMismatch {
                what: "validation features",
                expected: train.dim(),
                actual: validation.dim(),
            });
        }
        Ok(Self { train, validation })
    }
}

/// Seeded shuffle-and-cut; the validation part holds `round(fraction·n)` rows.
pub fn split(data: &Dataset, validation_fraction: f64, seed: u64) -> Result<SplitDataset> {
    if !(validation_fraction > 0.0 && validation_fraction < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "validation_fraction must lie in (0, 1), got {validation_fraction}"
        )));
    }
    let n = data.len();
    let n_val = (validation_fraction * n as f64).round() as usize;
    if n_val == 0 || n_val >= n {
        return Err(Error::DegenerateSplit {
            train: n.saturating_sub(n_val),
            validation: n_val,
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng::seeded(seed, Stream::Split));
    let (val, train) = order.split_at(n_val);
    Ok(SplitDataset {
        train: data.subset(train),
        validation: data.subset(val),
    })
}

pub fn one_hot(label: usize, class_count: usize) -> Result<Vec<f64>> {
    if label >= class_count {
        return Err(Error::LabelOutOfRange { label, class_count });
    }
    let mut v = vec![0.0; class_count];
    v[label] = 1.0;
    Ok(v)
}

/// Training target for a network with `output_dim` outputs: one-hot when the
/// output is as wide as the class count, the label itself for a single-output
/// binary network.
pub fn encode_target(label: usize, class_count: usize, output_dim: usize) -> Result<Vec<f64>> {
    match output_dim {
        1 if class_count == 2 => {
            if label >= 2 {
                return Err(Error::LabelOutOfRange { label, class_count });
            }
            Ok(vec![label as f64])
        }
        d if d == class_count => one_hot(label, class_count),
        d => Err(Error::ConfigMismatch(format!(
            "output width {d} cannot encode {class_count} classes"
        ))),
    }
}

fn gaussian(noise_std: f64) -> Result<Option<Normal<f64>>> {
    if !(noise_std >= 0.0 && noise_std.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "noise_std must be finite and non-negative, got {noise_std}"
        )));
    }
    Ok((noise_std > 0.0).then(|| Normal::new(0.0, noise_std).expect("valid std")))
}

pub const SPIRAL_POINTS_PER_CLASS: usize = 193;
pub const SPIRAL_MAX_RADIUS: f64 = 6.5;

/// Two interleaved spirals, `points_per_class` points each, rows alternating
/// class 0 / class 1. Class 1 is class 0 rotated by 180°.
pub fn gen_two_spirals(points_per_class: usize, noise_std: f64, seed: u64) -> Result<Dataset> {
    if points_per_class == 0 {
        return Err(Error::InvalidConfig("points_per_class must be positive".into()));
    }
    let noise = gaussian(noise_std)?;
    let mut rng = rng::seeded(seed, Stream::Data);
    let n = points_per_class as f64;
    let mut features = Vec::with_capacity(2 * points_per_class);
    let mut labels = Vec::with_capacity(2 * points_per_class);
    for i in 0..points_per_class {
        let i = i as f64;
        let angle = i * PI / 16.0;
        let radius = SPIRAL_MAX_RADIUS * (n * 4.0 - i * 4.0) / (n * 4.0);
        let (x, y) = (radius * angle.sin(), radius * angle.cos());
        for (class, (px, py)) in [(x, y), (-x, -y)].into_iter().enumerate() {
            let mut point = vec![px, py];
            if let Some(dist) = &noise {
                for v in &mut point {
                    *v += dist.sample(&mut rng);
                }
            }
            features.push(point);
            labels.push(class);
        }
    }
    Dataset::new(features, labels, 2)
}

pub const CIRCLE_POINTS_PER_CLASS: usize = 100;
pub const CIRCLE_INNER_FACTOR: f64 = 0.5;

/// Class 0 on the unit circle, class 1 on a circle of radius `inner_factor`,
/// angles `2πk / points_per_class`.
pub fn gen_circles(
    points_per_class: usize,
    inner_factor: f64,
    noise_std: f64,
    seed: u64,
) -> Result<Dataset> {
    if points_per_class == 0 {
        return Err(Error::InvalidConfig("points_per_class must be positive".into()));
    }
    if !(inner_factor > 0.0 && inner_factor < 1.0) {
        return Err(Error::InvalidConfig(format!(
            "inner_factor must lie in (0, 1), got {inner_factor}"
        )));
    }
    let noise = gaussian(noise_std)?;
    let mut rng = rng::seeded(seed, Stream::Data);
    let mut features = Vec::with_capacity(2 * points_per_class);
    let mut labels = Vec::with_capacity(2 * points_per_class);
    for (class, radius) in [(0, 1.0), (1, inner_factor)] {
        for k in 0..points_per_class {
            let angle = 2.0 * PI * k as f64 / points_per_class as f64;
            let mut point = vec![radius * angle.cos(), radius * angle.sin()];
            if let Some(dist) = &noise {
                for v in &mut point {
                    *v += dist.sample(&mut rng);
                }
            }
            features.push(point);
            labels.push(class);
        }
    }
    Dataset::new(features, labels, 2)
}

pub const XOR_COUNT: usize = 1000;

/// Label for the sign-XOR task: 0 when both coordinates share a sign.
pub fn xor_label(x: f64, y: f64) -> usize {
    usize::from(x * y < 0.0)
}

/// `count` points uniform on `[−1, 1]²`, labelled by [`xor_label`].
/// Coordinates within 1e-9 of zero are redrawn.
pub fn gen_xor(count: usize, seed: u64) -> Result<Dataset> {
    if count == 0 {
        return Err(Error::InvalidConfig("count must be positive".into()));
    }
    let mut rng = rng::seeded(seed, Stream::Data);
    let mut coord = || loop {
        let v: f64 = rng.random_range(-1.0..=1.0);
        if v.abs() >= 1e-9 {
            break v;
        }
    };
    let mut features = Vec::with_capacity(count);
    let mut labels = Vec::with_capacity(count);
    for _ in 0..count {
        let (x, y) = (coord(), coord());
        features.push(vec![x, y]);
        labels.push(xor_label(x, y));
    }
    Dataset::new(features, labels, 2)
}

pub const WBC_COLUMNS: usize = 11;
pub const WBC_FEATURES: usize = 9;

/// How rows with a `?` are handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MissingPolicy {
    #[default]
    DropRow,
}

/// One parsed line of `breast-cancer-wisconsin.data`. `None` marks `?`.
#[derive(Debug, Clone, PartialEq)]
pub struct WbcRecord {
    pub id: String,
    pub features: [Option<u8>; WBC_FEATURES],
    /// 0 = benign (UCI class 2), 1 = malignant (UCI class 4).
    pub label: usize,
}

impl WbcRecord {
    pub fn is_complete(&self) -> bool {
        self.features.iter().all(Option::is_some)
    }
}

/// Parses every non-blank line of the UCI file without dropping anything.
pub fn parse_wbc_records(text: &str) -> Result<Vec<WbcRecord>> {
    let mut records = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let malformed = |reason: String| Error::MalformedRow {
            line: idx + 1,
            reason,
        };
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != WBC_COLUMNS {
            return Err(malformed(format!(
                "expected {WBC_COLUMNS} columns, got {}",
                fields.len()
            )));
        }
        let mut features = [None; WBC_FEATURES];
        for (slot, raw) in features.iter_mut().zip(&fields[1..=WBC_FEATURES]) {
            if *raw == "?" {
                continue;
            }
            match raw.parse::<u8>() {
                Ok(v @ 1..=10) => *slot = Some(v),
                _ => return Err(malformed(format!("feature `{raw}` is not an integer in 1..=10"))),
            }
        }
        let label = match fields[WBC_COLUMNS - 1] {
            "2" => 0,
            "4" => 1,
            other => return Err(malformed(format!("class `{other}` is neither 2 nor 4"))),
        };
        records.push(WbcRecord {
            id: fields[0].to_owned(),
            features,
            label,
        });
    }
    Ok(records)
}

/// ID dropped, features divided by 10 (so they lie in [0.1, 1.0]),
/// class 2 → 0 and 4 → 1.
pub fn parse_wbc(text: &str, policy: MissingPolicy) -> Result<Dataset> {
    let records = parse_wbc_records(text)?;
    let MissingPolicy::DropRow = policy;
    let (features, labels): (Vec<_>, Vec<_>) = records
        .iter()
        .filter(|r| r.is_complete())
        .map(|r| {
            let row = r
                .features
                .iter()
                .map(|v| f64::from(v.expect("complete row")) / 10.0)
                .collect::<Vec<_>>();
            (row, r.label)
        })
        .unzip();
    if features.is_empty() {
        return Err(Error::EmptyDataset);
    }
    Dataset::new(features, labels, 2)
}

pub fn load_wbc_csv(path: impl AsRef<Path>, policy: MissingPolicy) -> Result<Dataset> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_wbc(&text, policy)
}

/// Reads either a `x0,...,label` CSV or a UCI breast-cancer file, chosen by
/// the first line.
pub fn load_dataset(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    if text.trim_start().starts_with("x0") {
        Dataset::from_csv(&text)
    } else {
        parse_wbc(&text, MissingPolicy::DropRow)
    }
}
