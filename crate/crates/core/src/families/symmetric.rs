//! Symmetric diversities, whose value depends only on `|A|`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::approx_le;
use crate::subset::{SubsetMask, MAX_POINTS};

/// `f[t] = δ(A)` for `|A| = t`, on a ground set of `f.len() - 1` points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct SymmetricProfile {
    f: Vec<f64>,
}

impl TryFrom<Vec<f64>> for SymmetricProfile {
    type Error = Error;

    fn try_from(f: Vec<f64>) -> Result<Self> {
        Self::new(f)
    }
}

impl From<SymmetricProfile> for Vec<f64> {
    fn from(p: SymmetricProfile) -> Self {
        p.f
    }
}

/// Sizes witnessing a failed triangle inequality: sets `P`, `Q` with
/// `|P ∩ Q| = overlap >= 1` and a set of size `union` between `P △ Q` and
/// `P ∪ Q` with `f[union] > f[p] + f[q]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProfileViolation {
    pub p: usize,
    pub q: usize,
    pub overlap: usize,
    pub union: usize,
}

impl SymmetricProfile {
    /// Accepts only profiles whose induced oracle is a diversity.
    pub fn new(f: Vec<f64>) -> Result<Self> {
        if f.len() < 2 || f.len() > MAX_POINTS + 1 {
            return Err(Error::InvalidProfile(format!(
                "profile length {} outside 2..={}",
                f.len(),
                MAX_POINTS + 1
            )));
        }
        if f[0] != 0.0 || f[1] != 0.0 {
            return Err(Error::InvalidProfile("f[0] and f[1] must be 0".into()));
        }
        if let Some(t) = (2..f.len()).find(|&t| !(f[t] > 0.0 && f[t].is_finite())) {
            return Err(Error::InvalidProfile(format!("f[{t}] = {} is not positive", f[t])));
        }
        let p = Self { f };
        if let Some(v) = p.triangle_violation() {
            return Err(Error::InvalidProfile(format!(
                "|P|={}, |Q|={}, |P∩Q|={}: f[{}] = {} > f[{}] + f[{}] = {}",
                v.p,
                v.q,
                v.overlap,
                v.union,
                p.f[v.union],
                v.p,
                v.q,
                p.f[v.p] + p.f[v.q]
            )));
        }
        Ok(p)
    }

    /// Ground set size.
    pub fn len(&self) -> usize {
        self.f.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.f.len() <= 1
    }

    pub fn values(&self) -> &[f64] {
        &self.f
    }

    /// Axiom (iii) reduced to set sizes. With `P = A ∪ C`, `Q = B ∪ C` the
    /// reachable `A ∪ B` are exactly the sets between `P △ Q` and `P ∪ Q`.
    pub fn triangle_violation(&self) -> Option<ProfileViolation> {
        let n = self.len();
        for p in 1..=n {
            for q in p..=n {
                for overlap in 1..=p {
                    let top = p + q - overlap;
                    if top > n {
                        continue;
                    }
                    let bound = self.f[p] + self.f[q];
                    for union in p + q - 2 * overlap..=top {
                        if !approx_le(self.f[union], bound) {
                            return Some(ProfileViolation { p, q, overlap, union });
                        }
                    }
                }
            }
        }
        None
    }
}

pub fn symmetric_diversity(profile: &SymmetricProfile, a: SubsetMask) -> f64 {
    profile.f[a.len()]
}
