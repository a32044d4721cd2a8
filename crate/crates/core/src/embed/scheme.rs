//! Weighted-coordinate scheme generalizing Bourgain's construction:
//! `δ̂(B) = Σ_A c_A max_{b1, b2 ∈ B} |φ_A(b1) - φ_A(b2)|`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::bourgain::BourgainConfig;
use crate::embedding::{EmbeddingMethod, PointEmbedding};
use crate::error::{Error, Result};
use crate::oracle::DiversityOracle;
use crate::subset::SubsetMask;

/// Coordinate map `φ_A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PhiChoice {
    /// `φ_A(x) = min_{a ∈ A} δ({x, a})`; depends on `δ` only through its induced metric.
    MetricDistance,
    /// `φ_A(x) = δ(A ∪ {x})`.
    SetAugmented,
}

/// Nonnegative weights `c_A` over finitely many anchor sets.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "WeightsJson", into = "WeightsJson")]
pub struct SchemeWeights {
    pub choice: PhiChoice,
    weights: BTreeMap<SubsetMask, f64>,
}

#[derive(Serialize, Deserialize)]
struct WeightsJson {
    choice: PhiChoice,
    weights: Vec<(SubsetMask, f64)>,
}

impl TryFrom<WeightsJson> for SchemeWeights {
    type Error = Error;

    fn try_from(j: WeightsJson) -> Result<Self> {
        Self::new(j.choice, j.weights)
    }
}

impl From<SchemeWeights> for WeightsJson {
    fn from(w: SchemeWeights) -> Self {
        Self {
            choice: w.choice,
            weights: w.weights.into_iter().collect(),
        }
    }
}

impl SchemeWeights {
    pub fn new<I: IntoIterator<Item = (SubsetMask, f64)>>(choice: PhiChoice, weights: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (a, c) in weights {
            if !(c.is_finite() && c >= 0.0) {
                return Err(Error::InvalidParam(format!("weight {c} on {a:?} is not a finite nonnegative number")));
            }
            *map.entry(a).or_insert(0.0) += c;
        }
        Ok(Self { choice, weights: map })
    }

    /// `c_{a} = 1/n` on every singleton, zero elsewhere.
    pub fn uniform_singletons(n: usize, choice: PhiChoice) -> Self {
        let c = 1.0 / n as f64;
        Self::new(choice, (0..n).map(|i| (SubsetMask::singleton(i), c))).expect("positive weights")
    }

    /// Bourgain-style random anchor sets with equal weights summing to 1.
    pub fn random_anchor_sets(n: usize, cfg: &BourgainConfig, choice: PhiChoice) -> Result<Self> {
        let sets = cfg.anchor_sets(n)?;
        let c = 1.0 / sets.len() as f64;
        Self::new(choice, sets.into_iter().map(|a| (a, c)))
    }

    /// Anchor sets with positive weight, in mask order.
    pub fn nonzero(&self) -> impl Iterator<Item = (SubsetMask, f64)> + '_ {
        self.weights.iter().filter(|(_, c)| **c > 0.0).map(|(a, c)| (*a, *c))
    }
}

/// `φ_A(x)` under the given choice.
pub fn scheme_phi(delta: &DiversityOracle, choice: PhiChoice, a: SubsetMask, x: usize) -> Result<f64> {
    delta.ground().check(a.with(x))?;
    match choice {
        PhiChoice::MetricDistance => a
            .iter()
            .map(|y| delta.eval(SubsetMask::pair(x, y)))
            .reduce(f64::min)
            .ok_or(Error::EmptyAnchor),
        PhiChoice::SetAugmented => Ok(delta.eval(a.with(x))),
    }
}

/// Evaluates the scheme's ℓ1 diversity on `b`.
pub fn scheme_eval(delta: &DiversityOracle, w: &SchemeWeights, b: SubsetMask) -> Result<f64> {
    delta.ground().check(b)?;
    let mut total = 0.0;
    for (a, c) in w.nonzero() {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for x in b.iter() {
            let v = scheme_phi(delta, w.choice, a, x)?;
            lo = lo.min(v);
            hi = hi.max(v);
        }
        if hi > lo {
            total += c * (hi - lo);
        }
    }
    Ok(total)
}

/// The scheme as explicit points: one coordinate `c_A φ_A(x)` per weighted anchor set.
pub fn scheme_embed(delta: &DiversityOracle, w: &SchemeWeights) -> Result<PointEmbedding> {
    let n = delta.len();
    let anchors: Vec<(SubsetMask, f64)> = w.nonzero().collect();
    let k = anchors.len();
    let mut coords = Vec::with_capacity(n * k);
    for x in 0..n {
        for &(a, c) in &anchors {
            coords.push(c * scheme_phi(delta, w.choice, a, x)?);
        }
    }
    let method = match w.choice {
        PhiChoice::MetricDistance => EmbeddingMethod::SchemeMetricDistance,
        PhiChoice::SetAugmented => EmbeddingMethod::SchemeSetAugmented,
    };
    PointEmbedding::new(n, k, coords, method)
}
