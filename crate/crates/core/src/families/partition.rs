//! Partition (and split) diversities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::SubsetMask;

/// Disjoint nonempty blocks covering `[0, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Partition {
    blocks: Vec<SubsetMask>,
    n: usize,
}

impl TryFrom<Vec<Vec<usize>>> for Partition {
    type Error = Error;

    fn try_from(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = blocks.iter().map(Vec::len).sum();
        Self::new(n, blocks)
    }
}

impl From<Partition> for Vec<Vec<usize>> {
    fn from(p: Partition) -> Self {
        p.blocks.iter().map(|b| b.to_vec()).collect()
    }
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut covered = SubsetMask::EMPTY;
        let mut masks = Vec::with_capacity(blocks.len());
        for b in &blocks {
            let m = SubsetMask::from_indices(b.iter().copied(), n)
                .map_err(|e| Error::InvalidPartition(e.to_string()))?;
            if m.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            if m.len() != b.len() || !m.intersection(covered).is_empty() {
                return Err(Error::InvalidPartition(format!("block {b:?} overlaps another")));
            }
            covered = covered.union(m);
            masks.push(m);
        }
        if n == 0 || covered != SubsetMask::full(n) {
            return Err(Error::InvalidPartition(format!(
                "blocks do not cover all {n} points"
            )));
        }
        Ok(Self { blocks: masks, n })
    }

    /// Two-block split `a | complement`.
    pub fn split(n: usize, a: SubsetMask) -> Result<Self> {
        let rest = SubsetMask::full(n).difference(a);
        Self::new(n, vec![a.to_vec(), rest.to_vec()])
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_masks(&self) -> &[SubsetMask] {
        &self.blocks
    }
}

/// 1 when `a` meets at least two blocks, else 0.
pub fn partition_diversity(p: &Partition, a: SubsetMask) -> f64 {
    let hit = p
        .blocks
        .iter()
        .filter(|b| !b.intersection(a).is_empty())
        .take(2)
        .count();
    if hit >= 2 {
        1.0
    } else {
        0.0
    }
}
