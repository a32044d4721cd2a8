use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use super::derived_rng;
use crate::embedding::{EmbeddingMethod, PointEmbedding};
use crate::error::{Error, Result};
use crate::metric::FiniteMetric;
use crate::subset::SubsetMask;

/// Anchor-set sampling plan: `scales` sizes `1, 2, 4, ..., 2^(scales-1)`,
/// `samples_per_scale` random sets of each size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BourgainConfig {
    pub scales: usize,
    pub samples_per_scale: usize,
    pub seed: u64,
}

impl BourgainConfig {
    /// `scales = ⌊log2 n⌋`, `samples_per_scale = ⌈log2 n⌉`, both at least 1.
    pub fn for_size(n: usize, seed: u64) -> Self {
        let n = n.max(2);
        let floor = usize::BITS as usize - 1 - n.leading_zeros() as usize;
        let ceil = if n.is_power_of_two() { floor } else { floor + 1 };
        Self {
            scales: floor.max(1),
            samples_per_scale: ceil.max(1),
            seed,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.scales == 0 || self.samples_per_scale == 0 {
            return Err(Error::InvalidParam("scales and samples_per_scale must be >= 1".into()));
        }
        if 1usize.checked_shl(self.scales as u32 - 1).is_none_or(|s| s > n) {
            return Err(Error::InvalidParam(format!(
                "largest anchor set 2^{} exceeds n = {n}",
                self.scales - 1
            )));
        }
        Ok(())
    }

    /// The anchor sets in coordinate order: scale-major, then sample index.
    pub fn anchor_sets(&self, n: usize) -> Result<Vec<SubsetMask>> {
        self.validate(n)?;
        let mut rng = derived_rng(self.seed, 0);
        let mut sets = Vec::with_capacity(self.scales * self.samples_per_scale);
        for s in 0..self.scales {
            for _ in 0..self.samples_per_scale {
                sets.push(sample(&mut rng, n, 1 << s).into_iter().collect());
            }
        }
        Ok(sets)
    }
}

/// Coordinates `d(x, A)` for each anchor set `A`, scaled by `1 / (scales * samples_per_scale)`.
pub fn bourgain_embed_metric(d: &FiniteMetric, cfg: &BourgainConfig) -> Result<PointEmbedding> {
    let n = d.len();
    if n < 2 {
        return Err(Error::InvalidParam("Bourgain embedding needs at least two points".into()));
    }
    let sets = cfg.anchor_sets(n)?;
    let scale = 1.0 / sets.len() as f64;
    let k = sets.len();
    let mut coords = Vec::with_capacity(n * k);
    for x in 0..n {
        for a in &sets {
            let dist = a.iter().map(|y| d.get(x, y)).fold(f64::INFINITY, f64::min);
            coords.push(dist * scale);
        }
    }
    Ok(PointEmbedding::new(n, k, coords, EmbeddingMethod::Bourgain)?.with_seed(Some(cfg.seed)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::eval_l1_diversity;

    #[test]
    fn default_parameters() {
        assert_eq!(BourgainConfig::for_size(2, 0).scales, 1);
        assert_eq!(BourgainConfig::for_size(2, 0).samples_per_scale, 1);
        let c = BourgainConfig::for_size(16, 0);
        assert_eq!((c.scales, c.samples_per_scale), (4, 4));
        let c = BourgainConfig::for_size(10, 0);
        assert_eq!((c.scales, c.samples_per_scale), (3, 4));
    }

    #[test]
    fn two_points_embed_proportionally() {
        let d = FiniteMetric::euclidean(&[[0.0], [2.5]]).unwrap();
        let e = bourgain_embed_metric(&d, &BourgainConfig::for_size(2, 3)).unwrap();
        assert_eq!(e.k(), 1);
        let v = eval_l1_diversity(&e, SubsetMask::pair(0, 1)).unwrap();
        assert_eq!(v, 2.5);
    }

    #[test]
    fn anchor_sets_have_prescribed_sizes() {
        let cfg = BourgainConfig::for_size(16, 5);
        let sets = cfg.anchor_sets(16).unwrap();
        assert_eq!(sets.len(), 16);
        for (i, s) in sets.iter().enumerate() {
            assert_eq!(s.len(), 1 << (i / 4));
        }
    }

    #[test]
    fn oversized_scale_rejected() {
        let d = FiniteMetric::discrete(4);
        let cfg = BourgainConfig {
            scales: 4,
            samples_per_scale: 1,
            seed: 0,
        };
        assert!(bourgain_embed_metric(&d, &cfg).is_err());
    }
}
