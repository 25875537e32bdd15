use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256StarStar;

use crate::error::{MomentError, Result};

/// Feature rows with one class label each.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledFeatures {
    pub rows: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
}

impl LabeledFeatures {
    pub fn new(rows: Vec<Vec<f64>>, labels: Vec<usize>) -> Result<Self> {
        if rows.is_empty() {
            return Err(MomentError::EmptyTraining);
        }
        if rows.len() != labels.len() {
            return Err(MomentError::DimensionMismatch(format!("{} rows, {} labels", rows.len(), labels.len())));
        }
        let dim = rows[0].len();
        if let Some(bad) = rows.iter().find(|r| r.len() != dim) {
            return Err(MomentError::DimensionMismatch(format!("row of length {} among rows of {dim}", bad.len())));
        }
        Ok(Self { rows, labels })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Rows selected by `mask`.
    pub fn select(&self, mask: &[bool]) -> Result<Self> {
        let (rows, labels) = self
            .rows
            .iter()
            .zip(&self.labels)
            .zip(mask)
            .filter(|(_, &m)| m)
            .map(|((r, &l), _)| (r.clone(), l))
            .unzip();
        Self::new(rows, labels)
    }
}

/// Per-feature centering and scaling fitted on training rows.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub scale: Vec<f64>,
}

impl Standardizer {
    /// Population mean and standard deviation per column; constant columns keep scale 1.
    pub fn fit(train: &LabeledFeatures) -> Self {
        let n = train.len() as f64;
        let dim = train.dim();
        let mean: Vec<f64> = (0..dim).map(|j| train.rows.iter().map(|r| r[j]).sum::<f64>() / n).collect();
        let scale = (0..dim)
            .map(|j| {
                let sd = (train.rows.iter().map(|r| (r[j] - mean[j]).powi(2)).sum::<f64>() / n).sqrt();
                if sd > 0.0 { sd } else { 1.0 }
            })
            .collect();
        Self { mean, scale }
    }

    pub fn apply(&self, row: &[f64]) -> Vec<f64> {
        row.iter().zip(&self.mean).zip(&self.scale).map(|((v, m), s)| (v - m) / s).collect()
    }

    pub fn apply_all(&self, rows: &[Vec<f64>]) -> Vec<Vec<f64>> {
        rows.iter().map(|r| self.apply(r)).collect()
    }
}

/// Divides a magnitude vector by its first entry, `|M_00|`; zero mass leaves it unchanged.
pub fn mass_normalized(v: &[f64]) -> Vec<f64> {
    match v.first() {
        Some(&m) if m != 0.0 => v.iter().map(|x| x / m).collect(),
        _ => v.to_vec(),
    }
}

/// Mass-normalizes every row, fits a [`Standardizer`] on the training rows and
/// classifies the test rows with [`knn_classify`].
pub fn knn_standardized(train: &LabeledFeatures, test: &[Vec<f64>], k: usize) -> Result<Vec<usize>> {
    let rows: Vec<Vec<f64>> = train.rows.iter().map(|r| mass_normalized(r)).collect();
    let train = LabeledFeatures::new(rows, train.labels.clone())?;
    let std = Standardizer::fit(&train);
    let scaled = LabeledFeatures::new(std.apply_all(&train.rows), train.labels.clone())?;
    let test: Vec<Vec<f64>> = test.iter().map(|r| std.apply(&mass_normalized(r))).collect();
    knn_classify(&scaled, &test, k)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitMasks {
    pub train: Vec<bool>,
    /// Set when every item went to training.
    pub empty_test: bool,
}

impl SplitMasks {
    pub fn test(&self) -> Vec<bool> {
        self.train.iter().map(|t| !t).collect()
    }
}

/// Picks `n_train_per_class` training items from every class, uniformly at
/// random under `seed`; the rest form the test set.
pub fn stratified_split(labels: &[usize], n_train_per_class: usize, seed: u64) -> Result<SplitMasks> {
    let mut by_class: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        by_class.entry(l).or_default().push(i);
    }
    let mut rng = Xoshiro256StarStar::seed_from_u64(seed);
    let mut train = vec![false; labels.len()];
    for (&label, members) in &mut by_class {
        if members.len() < n_train_per_class {
            return Err(MomentError::InsufficientClassSize { label, have: members.len(), need: n_train_per_class });
        }
        let (picked, _) = members.partial_shuffle(&mut rng, n_train_per_class);
        for &i in picked.iter() {
            train[i] = true;
        }
    }
    let empty_test = train.iter().all(|&t| t);
    Ok(SplitMasks { train, empty_test })
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Euclidean k-NN with majority vote. Ties go to the class with the smaller
/// mean distance among the neighbours, then to the lower label.
pub fn knn_classify(train: &LabeledFeatures, test: &[Vec<f64>], k: usize) -> Result<Vec<usize>> {
    if train.is_empty() {
        return Err(MomentError::EmptyTraining);
    }
    if k == 0 || k > train.len() {
        return Err(MomentError::InvalidParam(format!("k = {k} must lie in 1..={}", train.len())));
    }
    test.iter()
        .map(|row| {
            if row.len() != train.dim() {
                return Err(MomentError::DimensionMismatch(format!("test row of length {}, expected {}", row.len(), train.dim())));
            }
            let mut near: Vec<(f64, usize)> =
                train.rows.iter().zip(&train.labels).map(|(r, &l)| (distance(r, row), l)).collect();
            near.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            let mut votes: BTreeMap<usize, (usize, f64)> = BTreeMap::new();
            for &(d, l) in &near[..k] {
                let e = votes.entry(l).or_insert((0, 0.0));
                e.0 += 1;
                e.1 += d;
            }
            let (label, _) = votes
                .into_iter()
                .map(|(l, (n, sum))| (l, (n, sum / n as f64)))
                .min_by(|a, b| b.1 .0.cmp(&a.1 .0).then(a.1 .1.total_cmp(&b.1 .1)).then(a.0.cmp(&b.0)))
                .expect("k >= 1");
            Ok(label)
        })
        .collect()
}
