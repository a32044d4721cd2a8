//! Distortion between a diversity and the ℓ1 diversity of an embedding.
//!
//! With `r(A) = δ̂(φ(A)) / δ(A)` over all `|A| >= 2`, the embedding used as-is
//! satisfies `(1/c1) δ <= δ̂ <= c2 δ` for `c2 = max r` and `c1 = 1 / min r`,
//! and `c = c1 c2 = max r / min r` is the best achievable after any uniform
//! rescaling.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embed::TreeEnsemble;
use crate::embedding::{eval_l1_diversity_unchecked, PointEmbedding};
use crate::error::{Error, Result};
use crate::metric::{approx_le, FiniteMetric};
use crate::oracle::DiversityOracle;
use crate::subset::{check_exhaustive, SubsetMask, AXIOM_SCAN_CAP};

/// Total distortion `c`, or unbounded when the embedding collapses a set `δ` separates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Distortion {
    Finite(f64),
    Unbounded,
}

impl Distortion {
    pub fn value(self) -> Option<f64> {
        match self {
            Self::Finite(c) => Some(c),
            Self::Unbounded => None,
        }
    }
}

impl fmt::Display for Distortion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(c) => write!(f, "{c}"),
            Self::Unbounded => f.write_str("unbounded"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    Exact,
    Sampled { count: usize, seed: u64 },
}

impl fmt::Display for ScanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact => f.write_str("exact"),
            Self::Sampled { count, seed } => write!(f, "sampled(count={count},seed={seed})"),
        }
    }
}

/// Optimal scaling constants and the subsets that attain them.
#[derive(Clone, Debug, PartialEq)]
pub struct DistortionReport {
    /// `1 / min r`; infinite when some `δ̂(A) = 0`.
    pub c1: f64,
    /// `max r`.
    pub c2: f64,
    pub c: Distortion,
    /// Subset attaining `min r` (or the first collapsed subset).
    pub witness_min: SubsetMask,
    pub witness_max: SubsetMask,
    pub mode: ScanMode,
    pub subsets_scanned: u64,
}

/// Wire form; infinities never appear as floats.
#[derive(Serialize, Deserialize)]
struct ReportJson {
    c1: Option<f64>,
    c2: f64,
    c: serde_json::Value,
    witness_min: SubsetMask,
    witness_max: SubsetMask,
    mode: String,
    subsets_scanned: u64,
}

impl Serialize for DistortionReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReportJson {
            c1: self.c1.is_finite().then_some(self.c1),
            c2: self.c2,
            c: match self.c {
                Distortion::Finite(c) => serde_json::json!(c),
                Distortion::Unbounded => serde_json::json!("unbounded"),
            },
            witness_min: self.witness_min,
            witness_max: self.witness_max,
            mode: self.mode.to_string(),
            subsets_scanned: self.subsets_scanned,
        }
        .serialize(s)
    }
}

#[derive(Clone, Copy)]
struct Extremes {
    min: (f64, u64),
    max: (f64, u64),
    collapsed: Option<u64>,
    not_diversity: Option<(u64, f64)>,
    scanned: u64,
}

impl Extremes {
    const EMPTY: Self = Self {
        min: (f64::INFINITY, u64::MAX),
        max: (f64::NEG_INFINITY, u64::MAX),
        collapsed: None,
        not_diversity: None,
        scanned: 0,
    };

    fn of(delta: &DiversityOracle, emb: &PointEmbedding, bits: u64) -> Self {
        let a = SubsetMask::from_bits(bits);
        let d = delta.eval(a);
        let mut e = Self {
            scanned: 1,
            ..Self::EMPTY
        };
        if !(d > 0.0) {
            e.not_diversity = Some((bits, d));
            return e;
        }
        let hat = eval_l1_diversity_unchecked(emb, a);
        if hat == 0.0 {
            e.collapsed = Some(bits);
        }
        let r = hat / d;
        e.min = (r, bits);
        e.max = (r, bits);
        e
    }

    /// Associative merge; ties resolve to the smaller mask.
    fn merge(self, other: Self) -> Self {
        let pick_min = |a: (f64, u64), b: (f64, u64)| if (b.0, b.1) < (a.0, a.1) { b } else { a };
        let pick_max = |a: (f64, u64), b: (f64, u64)| {
            if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
                b
            } else {
                a
            }
        };
        let first = |a: Option<u64>, b: Option<u64>| match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        };
        Self {
            min: pick_min(self.min, other.min),
            max: pick_max(self.max, other.max),
            collapsed: first(self.collapsed, other.collapsed),
            not_diversity: match (self.not_diversity, other.not_diversity) {
                (Some(x), Some(y)) => Some(if x.0 <= y.0 { x } else { y }),
                (x, y) => x.or(y),
            },
            scanned: self.scanned + other.scanned,
        }
    }

    fn into_report(self, mode: ScanMode) -> Result<DistortionReport> {
        if let Some((bits, value)) = self.not_diversity {
            return Err(Error::NotADiversity {
                members: SubsetMask::from_bits(bits).to_vec(),
                value,
            });
        }
        if self.scanned == 0 {
            return Err(Error::InvalidParam("no subsets of size >= 2 to compare".into()));
        }
        let (min_r, min_mask) = self.min;
        let (max_r, max_mask) = self.max;
        let (c1, c, witness_min) = match self.collapsed {
            Some(bits) => (f64::INFINITY, Distortion::Unbounded, bits),
            None => (1.0 / min_r, Distortion::Finite(max_r / min_r), min_mask),
        };
        Ok(DistortionReport {
            c1,
            c2: max_r,
            c,
            witness_min: SubsetMask::from_bits(witness_min),
            witness_max: SubsetMask::from_bits(max_mask),
            mode,
            subsets_scanned: self.scanned,
        })
    }
}

fn check_sizes(delta: &DiversityOracle, emb: &PointEmbedding) -> Result<()> {
    if delta.len() != emb.n() {
        return Err(Error::GroundMismatch {
            left: delta.len(),
            right: emb.n(),
        });
    }
    Ok(())
}

fn scan_all(delta: &DiversityOracle, emb: &PointEmbedding) -> Extremes {
    let n = delta.len();
    (0..1u64 << n)
        .into_par_iter()
        .filter(|b| b.count_ones() >= 2)
        .map(|b| Extremes::of(delta, emb, b))
        .reduce(|| Extremes::EMPTY, Extremes::merge)
}

/// Distortion over all `2^n - n - 1` subsets with at least two points; `n <= 24`.
pub fn exact_distortion(delta: &DiversityOracle, emb: &PointEmbedding) -> Result<DistortionReport> {
    check_sizes(delta, emb)?;
    check_exhaustive(delta.len(), "exact distortion size")?;
    scan_all(delta, emb).into_report(ScanMode::Exact)
}

/// Subsets scanned by [`sampled_distortion`]: every pair, the full set, and
/// `count` draws of a uniform cardinality in `2..=n` followed by a uniform
/// subset of that cardinality, deduplicated.
pub fn sample_masks(n: usize, count: usize, seed: u64) -> Vec<SubsetMask> {
    let mut rng = crate::embed::derived_rng(seed, 0);
    let mut masks = BTreeSet::new();
    for i in 0..n {
        for j in i + 1..n {
            masks.insert(SubsetMask::pair(i, j));
        }
    }
    if n >= 2 {
        masks.insert(SubsetMask::full(n));
        for _ in 0..count {
            let t = rng.random_range(2..=n);
            masks.insert(sample(&mut rng, n, t).into_iter().collect());
        }
    }
    masks.into_iter().collect()
}

/// Distortion over a random family of subsets; a lower bound on the exact value.
/// When `count` reaches the number of eligible subsets the scan is exhaustive.
pub fn sampled_distortion(
    delta: &DiversityOracle,
    emb: &PointEmbedding,
    count: usize,
    seed: u64,
) -> Result<DistortionReport> {
    check_sizes(delta, emb)?;
    if count == 0 {
        return Err(Error::InvalidParam("sample count must be at least 1".into()));
    }
    let n = delta.len();
    let mode = ScanMode::Sampled { count, seed };
    let eligible = if n >= 64 { u128::MAX } else { (1u128 << n) - n as u128 - 1 };
    if (count as u128) >= eligible {
        return scan_all(delta, emb).into_report(mode);
    }
    sample_masks(n, count, seed)
        .into_par_iter()
        .map(|m| Extremes::of(delta, emb, m.bits()))
        .reduce(|| Extremes::EMPTY, Extremes::merge)
        .into_report(mode)
}

/// Which side of a sandwich carries the multiplicative factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FactorSide {
    /// `lower(A) <= mid(A) <= factor * upper(A)`.
    Upper,
    /// `lower(A) / factor <= mid(A) <= upper(A)`.
    Lower,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichViolation {
    pub mask: SubsetMask,
    pub lower: f64,
    pub mid: f64,
    pub upper: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub passed: bool,
    pub checked: u64,
    pub violations: u64,
    /// Smallest violating mask.
    pub first_violation: Option<SandwichViolation>,
}

/// Checks a three-way inequality chain on every subset, tolerance as in [`approx_le`]. `n <= 12`.
pub fn sandwich_check(
    lower: &DiversityOracle,
    mid: &DiversityOracle,
    upper: &DiversityOracle,
    factor: f64,
    side: FactorSide,
) -> Result<SandwichReport> {
    let n = mid.len();
    for other in [lower, upper] {
        if other.len() != n {
            return Err(Error::GroundMismatch {
                left: n,
                right: other.len(),
            });
        }
    }
    if n > AXIOM_SCAN_CAP {
        return Err(Error::CapExceeded {
            what: "sandwich check size",
            got: n,
            cap: AXIOM_SCAN_CAP,
        });
    }
    if !(factor > 0.0 && factor.is_finite()) {
        return Err(Error::InvalidParam(format!("factor {factor} must be positive")));
    }
    let mut report = SandwichReport {
        passed: true,
        checked: 0,
        violations: 0,
        first_violation: None,
    };
    for bits in 0..1u64 << n {
        let a = SubsetMask::from_bits(bits);
        let (lo, m, hi) = (lower.eval(a), mid.eval(a), upper.eval(a));
        let ok = match side {
            FactorSide::Upper => approx_le(lo, m) && approx_le(m, factor * hi),
            FactorSide::Lower => approx_le(lo / factor, m) && approx_le(m, hi),
        };
        report.checked += 1;
        if !ok {
            report.passed = false;
            report.violations += 1;
            report.first_violation.get_or_insert(SandwichViolation {
                mask: a,
                lower: lo,
                mid: m,
                upper: hi,
            });
        }
    }
    Ok(report)
}

/// Pairwise stretch `d_τ(u, v) / d(u, v)` across an ensemble of trees.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StretchStats {
    /// `n x n` mean stretch per pair; zero on the diagonal.
    pub per_pair_mean: Vec<Vec<f64>>,
    pub max_mean_stretch: f64,
    pub max_mean_pair: (usize, usize),
    pub max_single_stretch: f64,
    pub min_single_stretch: f64,
    pub samples: usize,
}

pub fn ensemble_stretch(d: &FiniteMetric, ensemble: &TreeEnsemble) -> Result<StretchStats> {
    if ensemble.is_empty() {
        return Err(Error::InvalidParam("empty ensemble".into()));
    }
    let n = d.len();
    if ensemble.metric().len() != n {
        return Err(Error::GroundMismatch {
            left: n,
            right: ensemble.metric().len(),
        });
    }
    let per_tree: Vec<Vec<Vec<f64>>> = ensemble.trees().par_iter().map(|t| t.ground_distances()).collect();
    let m = per_tree.len() as f64;
    let mut mean = vec![vec![0.0; n]; n];
    let mut max_single = f64::NEG_INFINITY;
    let mut min_single = f64::INFINITY;
    for td in &per_tree {
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    let s = td[u][v] / d.get(u, v);
                    mean[u][v] += s / m;
                    max_single = max_single.max(s);
                    min_single = min_single.min(s);
                }
            }
        }
    }
    let mut best = (f64::NEG_INFINITY, (0, 0));
    for u in 0..n {
        for v in u + 1..n {
            if mean[u][v] > best.0 {
                best = (mean[u][v], (u, v));
            }
        }
    }
    Ok(StretchStats {
        per_pair_mean: mean,
        max_mean_stretch: best.0,
        max_mean_pair: best.1,
        max_single_stretch: max_single,
        min_single_stretch: min_single,
        samples: per_tree.len(),
    })
}
