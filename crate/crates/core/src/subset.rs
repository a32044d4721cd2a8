//! Ground sets and compact subset masks.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ground set a [`SubsetMask`] can address.
pub const MAX_POINTS: usize = 64;

/// Largest ground set for operations that scan all `2^n` subsets.
pub const EXHAUSTIVE_CAP: usize = 24;

/// Largest ground set for the full axiom (iii) triple scan.
pub const AXIOM_SCAN_CAP: usize = 12;

/// The finite point set `X` a diversity lives on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundSet {
    n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGround("ground set must be nonempty".into()));
        }
        if n > MAX_POINTS {
            return Err(Error::CapExceeded {
                what: "ground set size",
                got: n,
                cap: MAX_POINTS,
            });
        }
        Ok(Self { n, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut ground = Self::new(labels.len())?;
        let mut seen = std::collections::HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidGround(format!("duplicate label {label:?}")));
            }
        }
        ground.labels = Some(labels);
        Ok(ground)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The whole ground set as a mask.
    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    /// Fails when `mask` names a point outside the ground set.
    pub fn check(&self, mask: SubsetMask) -> Result<()> {
        match mask.max_index() {
            Some(i) if i >= self.n => Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            }),
            _ => Ok(()),
        }
    }
}

/// A subset of `[0, n)` stored as a bit set.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetMask(u64);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u64) -> Self {
        Self(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_POINTS);
        if n >= 64 {
            Self(u64::MAX)
        } else {
            Self((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_POINTS);
        Self(1u64 << i)
    }

    pub fn pair(i: usize, j: usize) -> Self {
        Self::singleton(i).with(j)
    }

    /// Builds a mask from indices, rejecting any index `>= n`.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I, n: usize) -> Result<Self> {
        let mut bits = 0u64;
        for i in indices {
            if i >= n || i >= MAX_POINTS {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            bits |= 1u64 << i;
        }
        Ok(Self(bits))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_POINTS && self.0 >> i & 1 == 1
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        Self(self.0 | 1u64 << i)
    }

    #[must_use]
    pub fn without(self, i: usize) -> Self {
        Self(self.0 & !(1u64 << i))
    }

    #[must_use]
    pub fn union(self, other: Self) -> Self {
        Self(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Self) -> Self {
        Self(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Self) -> Self {
        Self(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Member indices in increasing order.
    pub fn iter(self) -> Members {
        Members(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, including `self` and the empty set, in decreasing order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            of: self.0,
            next: Some(self.0),
        }
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for SubsetMask {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for SubsetMask {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let idx = Vec::<usize>::deserialize(d)?;
        SubsetMask::from_indices(idx, MAX_POINTS).map_err(serde::de::Error::custom)
    }
}

impl FromIterator<usize> for SubsetMask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(Self::EMPTY, Self::with)
    }
}

/// Iterator over the members of a [`SubsetMask`].
pub struct Members(u64);

impl Iterator for Members {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let k = self.0.count_ones() as usize;
        (k, Some(k))
    }
}

impl ExactSizeIterator for Members {}

/// Iterator over all submasks of a mask.
pub struct Subsets {
    of: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = SubsetMask;

    fn next(&mut self) -> Option<SubsetMask> {
        let cur = self.next?;
        self.next = if cur == 0 {
            None
        } else {
            Some((cur - 1) & self.of)
        };
        Some(SubsetMask(cur))
    }
}

/// Every mask over `n` points in increasing numeric order.
pub fn all_masks(n: usize) -> impl Iterator<Item = SubsetMask> {
    debug_assert!(n <= EXHAUSTIVE_CAP);
    (0..1u64 << n).map(SubsetMask)
}

pub(crate) fn check_exhaustive(n: usize, what: &'static str) -> Result<()> {
    if n > EXHAUSTIVE_CAP {
        Err(Error::CapExceeded {
            what,
            got: n,
            cap: EXHAUSTIVE_CAP,
        })
    } else {
        Ok(())
    }
}
