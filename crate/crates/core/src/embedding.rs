//! Point embeddings into `R^k` and the ℓ1 diversity they carry.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::SubsetMask;

/// Construction that produced a [`PointEmbedding`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmbeddingMethod {
    Coordinate,
    Frt,
    Bourgain,
    Tree,
    HypergraphReduceThenFrt,
    SchemeMetricDistance,
    SchemeSetAugmented,
    /// Coordinates supplied directly, e.g. an instance's own point cloud.
    Points,
}

/// `n` points in `R^k`, stored row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "EmbeddingJson", into = "EmbeddingJson")]
pub struct PointEmbedding {
    n: usize,
    k: usize,
    coords: Vec<f64>,
    method: EmbeddingMethod,
    seed: Option<u64>,
}

#[derive(Serialize, Deserialize)]
struct EmbeddingJson {
    n: usize,
    k: usize,
    coords: Vec<Vec<f64>>,
    method: EmbeddingMethod,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

impl TryFrom<EmbeddingJson> for PointEmbedding {
    type Error = Error;

    fn try_from(j: EmbeddingJson) -> Result<Self> {
        if j.coords.len() != j.n {
            return Err(Error::InvalidEmbedding(format!(
                "{} rows for n = {}",
                j.coords.len(),
                j.n
            )));
        }
        let mut emb = Self::new(j.n, j.k, j.coords.concat(), j.method)?;
        emb.seed = j.seed;
        Ok(emb)
    }
}

impl From<PointEmbedding> for EmbeddingJson {
    fn from(e: PointEmbedding) -> Self {
        Self {
            n: e.n,
            k: e.k,
            coords: e.rows(),
            method: e.method,
            seed: e.seed,
        }
    }
}

impl PointEmbedding {
    /// `coords` is row-major with `n * k` finite entries.
    pub fn new(n: usize, k: usize, coords: Vec<f64>, method: EmbeddingMethod) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidEmbedding("no points".into()));
        }
        if coords.len() != n * k {
            return Err(Error::InvalidEmbedding(format!(
                "{} coordinates for {n} x {k}",
                coords.len()
            )));
        }
        if let Some(bad) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::InvalidEmbedding(format!(
                "row {} has a non-finite entry",
                bad / k
            )));
        }
        Ok(Self {
            n,
            k,
            coords,
            method,
            seed: None,
        })
    }

    /// Rows of equal length, tagged [`EmbeddingMethod::Points`].
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let k = rows.first().map_or(0, |r| r.as_ref().len());
        if let Some(r) = rows.iter().position(|r| r.as_ref().len() != k) {
            return Err(Error::InvalidEmbedding(format!("row {r} has the wrong length")));
        }
        let coords = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::new(rows.len(), k, coords, EmbeddingMethod::Points)
    }

    #[must_use]
    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    #[must_use]
    pub fn with_method(mut self, method: EmbeddingMethod) -> Self {
        self.method = method;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn method(&self) -> EmbeddingMethod {
        self.method
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.coords[i * self.k..(i + 1) * self.k]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Multiplies every coordinate by `factor`.
    #[must_use]
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            coords: self.coords.iter().map(|c| c * factor).collect(),
            ..self.clone()
        }
    }

    /// Side-by-side concatenation of coordinate blocks over the same points.
    pub fn hstack(parts: &[PointEmbedding], method: EmbeddingMethod) -> Result<Self> {
        let n = parts
            .first()
            .map(|p| p.n)
            .ok_or_else(|| Error::InvalidEmbedding("nothing to stack".into()))?;
        if let Some(p) = parts.iter().find(|p| p.n != n) {
            return Err(Error::GroundMismatch { left: n, right: p.n });
        }
        let k = parts.iter().map(|p| p.k).sum();
        let mut coords = Vec::with_capacity(n * k);
        for i in 0..n {
            for p in parts {
                coords.extend_from_slice(p.row(i));
            }
        }
        Self::new(n, k, coords, method)
    }
}

/// `δ̂(A) = Σ_i max_{a,b ∈ A} |a_i - b_i|` over the rows selected by `a`.
pub fn eval_l1_diversity(emb: &PointEmbedding, a: SubsetMask) -> Result<f64> {
    if let Some(i) = a.max_index().filter(|&i| i >= emb.n) {
        return Err(Error::IndexOutOfRange { index: i, n: emb.n });
    }
    Ok(eval_l1_diversity_unchecked(emb, a))
}

pub(crate) fn eval_l1_diversity_unchecked(emb: &PointEmbedding, a: SubsetMask) -> f64 {
    if a.len() <= 1 {
        return 0.0;
    }
    let mut members = a.iter();
    let first = emb.row(members.next().expect("nonempty"));
    let mut lo = first.to_vec();
    let mut hi = first.to_vec();
    for i in members {
        for ((l, h), &x) in lo.iter_mut().zip(hi.iter_mut()).zip(emb.row(i)) {
            if x < *l {
                *l = x;
            } else if x > *h {
                *h = x;
            }
        }
    }
    hi.iter().zip(&lo).map(|(h, l)| h - l).sum()
}
