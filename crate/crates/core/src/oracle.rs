//! Diversity oracles: total functions from subsets of the ground set to `[0, inf)`.
//!
//! Every family in [`crate::families`] is wrapped by a [`DiversityOracle`] so the
//! axiom checker, the embedding constructions and the distortion scans can
//! treat them uniformly. Oracles are cheap to clone and immutable; the Steiner
//! oracle fills its subset table lazily on first use.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::embedding::{eval_l1_diversity_unchecked, PointEmbedding};
use crate::error::{Error, Result};
use crate::families::{
    self, hypergraph::WeightedHypergraph, partition::Partition, steiner, symmetric::SymmetricProfile,
    tsp,
};
use crate::metric::{validate_metric, FiniteMetric};
use crate::subset::{check_exhaustive, GroundSet, SubsetMask};
use crate::tree::WeightedTree;

/// Largest ground set for which the Steiner oracle tabulates all subsets.
pub const STEINER_ORACLE_CAP: usize = 16;

/// Family tag carried by every oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DiversityKind {
    Table,
    Diameter,
    Steiner,
    Hypergraph,
    Ball,
    Tsp,
    Partition,
    Discrete,
    Cardinality,
    Symmetric,
    L1,
    Tree,
    Combination,
    Custom,
}

impl fmt::Display for DiversityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("kind serializes");
        f.write_str(s.as_str().expect("kind is a string"))
    }
}

type CustomFn = dyn Fn(SubsetMask) -> f64 + Send + Sync;

enum Source {
    Table(Vec<f64>),
    Diameter(FiniteMetric),
    Steiner {
        metric: FiniteMetric,
        table: OnceLock<Vec<f64>>,
    },
    Hypergraph(Vec<f64>),
    Ball(FiniteMetric),
    Tsp(FiniteMetric),
    Partition(Partition),
    Discrete,
    Cardinality,
    Symmetric(SymmetricProfile),
    L1(PointEmbedding),
    Tree(WeightedTree),
    Combination(Vec<(f64, DiversityOracle)>),
    Custom(Box<CustomFn>),
}

/// A diversity on a finite ground set, evaluable on any subset.
#[derive(Clone)]
pub struct DiversityOracle {
    ground: GroundSet,
    kind: DiversityKind,
    source: Arc<Source>,
}

impl fmt::Debug for DiversityOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DiversityOracle")
            .field("n", &self.len())
            .field("kind", &self.kind)
            .finish()
    }
}

impl DiversityOracle {
    fn build(n: usize, kind: DiversityKind, source: Source) -> Result<Self> {
        Ok(Self {
            ground: GroundSet::new(n)?,
            kind,
            source: Arc::new(source),
        })
    }

    /// Table-backed oracle; `values` is indexed by mask bits and has length `2^n`.
    /// Entries for the empty set and singletons are ignored.
    pub fn from_table(n: usize, values: Vec<f64>) -> Result<Self> {
        check_exhaustive(n, "table-backed oracle size")?;
        if values.len() != 1 << n {
            return Err(Error::InvalidParam(format!(
                "table has {} entries, expected 2^{n}",
                values.len()
            )));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParam(format!("table entry {bad} is not finite")));
        }
        Self::build(n, DiversityKind::Table, Source::Table(values))
    }

    pub fn diameter(metric: FiniteMetric) -> Self {
        Self::build(metric.len(), DiversityKind::Diameter, Source::Diameter(metric)).expect("metric size already validated")
    }

    pub fn steiner(metric: FiniteMetric) -> Result<Self> {
        if metric.len() > STEINER_ORACLE_CAP {
            return Err(Error::CapExceeded {
                what: "Steiner oracle size",
                got: metric.len(),
                cap: STEINER_ORACLE_CAP,
            });
        }
        Self::build(
            metric.len(),
            DiversityKind::Steiner,
            Source::Steiner {
                metric,
                table: OnceLock::new(),
            },
        )
    }

    pub fn hypergraph(h: &WeightedHypergraph) -> Result<Self> {
        let table = h.cover_table()?;
        Self::build(h.len(), DiversityKind::Hypergraph, Source::Hypergraph(table))
    }

    pub fn ball(metric: FiniteMetric) -> Self {
        Self::build(metric.len(), DiversityKind::Ball, Source::Ball(metric)).expect("metric size already validated")
    }

    pub fn tsp(metric: FiniteMetric) -> Result<Self> {
        if metric.len() > tsp::HELD_KARP_CAP {
            return Err(Error::CapExceeded {
                what: "TSP oracle size",
                got: metric.len(),
                cap: tsp::HELD_KARP_CAP,
            });
        }
        Self::build(metric.len(), DiversityKind::Tsp, Source::Tsp(metric))
    }

    /// Rejects partitions with fewer than two blocks, which are identically zero.
    pub fn partition(p: Partition) -> Result<Self> {
        if p.blocks() < 2 {
            return Err(Error::InvalidPartition(
                "a single-block partition is identically zero".into(),
            ));
        }
        Self::build(p.len(), DiversityKind::Partition, Source::Partition(p))
    }

    /// `δ_ρ(A) = 1` for `|A| >= 2`.
    pub fn discrete(n: usize) -> Result<Self> {
        Self::build(n, DiversityKind::Discrete, Source::Discrete)
    }

    /// `δ_c(A) = |A| - 1` for `|A| >= 2`.
    pub fn cardinality(n: usize) -> Result<Self> {
        Self::build(n, DiversityKind::Cardinality, Source::Cardinality)
    }

    pub fn symmetric(profile: SymmetricProfile) -> Result<Self> {
        Self::build(profile.len(), DiversityKind::Symmetric, Source::Symmetric(profile))
    }

    /// The ℓ1 diversity of an embedded point set.
    pub fn l1(emb: PointEmbedding) -> Result<Self> {
        Self::build(emb.n(), DiversityKind::L1, Source::L1(emb))
    }

    pub fn tree(t: WeightedTree) -> Result<Self> {
        Self::build(t.ground_len(), DiversityKind::Tree, Source::Tree(t))
    }

    /// Wraps an arbitrary function. The function sees every mask, including
    /// singletons and the empty set, so it can be used to build negative controls.
    pub fn from_fn<F>(n: usize, f: F) -> Result<Self>
    where
        F: Fn(SubsetMask) -> f64 + Send + Sync + 'static,
    {
        Self::build(n, DiversityKind::Custom, Source::Custom(Box::new(f)))
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.ground.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ground.is_empty()
    }

    pub fn kind(&self) -> DiversityKind {
        self.kind
    }

    /// The metric a metric-derived family was built from.
    pub fn source_metric(&self) -> Option<&FiniteMetric> {
        match &*self.source {
            Source::Diameter(m) | Source::Ball(m) | Source::Tsp(m) => Some(m),
            Source::Steiner { metric, .. } => Some(metric),
            _ => None,
        }
    }

    /// Evaluates `δ(A)`. `a` must lie inside the ground set.
    pub fn eval(&self, a: SubsetMask) -> f64 {
        debug_assert!(self.ground.check(a).is_ok(), "mask {a:?} outside ground set");
        if let Source::Custom(f) = &*self.source {
            return f(a);
        }
        if a.len() <= 1 {
            return 0.0;
        }
        match &*self.source {
            Source::Table(t) | Source::Hypergraph(t) => t[a.bits() as usize],
            Source::Diameter(m) => families::diameter_diversity(m, a),
            Source::Steiner { metric, table } => {
                table.get_or_init(|| steiner::steiner_table(metric))[a.bits() as usize]
            }
            Source::Ball(m) => families::ball_diversity(m, a),
            Source::Tsp(m) => tsp::held_karp(m, a),
            Source::Partition(p) => families::partition_diversity(p, a),
            Source::Discrete => families::discrete_diversity(a),
            Source::Cardinality => families::cardinality_diversity(a),
            Source::Symmetric(p) => families::symmetric_diversity(p, a),
            Source::L1(emb) => eval_l1_diversity_unchecked(emb, a),
            Source::Tree(t) => t.diversity_unchecked(a),
            Source::Combination(parts) => parts.iter().map(|(w, d)| w * d.eval(a)).sum(),
            Source::Custom(_) => unreachable!(),
        }
    }

    /// Like [`eval`](Self::eval) but rejects masks outside the ground set.
    pub fn try_eval(&self, a: SubsetMask) -> Result<f64> {
        self.ground.check(a)?;
        Ok(self.eval(a))
    }

    /// Evaluates every subset and returns a table-backed copy.
    pub fn tabulate(&self) -> Result<Self> {
        let values = self.values()?;
        let mut out = Self::from_table(self.len(), values)?;
        out.ground = self.ground.clone();
        Ok(out)
    }

    /// `δ` on all `2^n` masks, indexed by mask bits.
    pub fn values(&self) -> Result<Vec<f64>> {
        let n = self.len();
        check_exhaustive(n, "tabulation size")?;
        if let Source::Table(t) = &*self.source {
            return Ok(t.clone());
        }
        Ok((0..1u64 << n)
            .into_par_iter()
            .map(|bits| self.eval(SubsetMask::from_bits(bits)))
            .collect())
    }

    /// Serializable table form, omitting the empty set and singletons.
    pub fn to_table(&self) -> Result<DiversityTable> {
        let values = self.values()?;
        let map = values
            .iter()
            .enumerate()
            .map(|(bits, &v)| (SubsetMask::from_bits(bits as u64), v))
            .filter(|(m, _)| m.len() >= 2)
            .map(|(m, v)| (mask_key(m), v))
            .collect();
        Ok(DiversityTable {
            n: self.len(),
            values: map,
        })
    }
}

/// The pair restriction `d(x, y) = δ({x, y})`, validated as a metric.
pub fn induced_metric(delta: &DiversityOracle) -> Result<FiniteMetric> {
    let n = delta.len();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        0.0
                    } else {
                        delta.eval(SubsetMask::pair(i, j))
                    }
                })
                .collect()
        })
        .collect();
    validate_metric(&rows)
}

/// Nonnegative linear combination `Σ w_i δ_i`.
pub fn combine(weights: &[f64], parts: &[DiversityOracle]) -> Result<DiversityOracle> {
    if weights.len() != parts.len() || parts.is_empty() {
        return Err(Error::InvalidParam(format!(
            "{} weights for {} parts",
            weights.len(),
            parts.len()
        )));
    }
    if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
        return Err(Error::InvalidParam("weights must be finite and nonnegative".into()));
    }
    if !weights.iter().any(|w| *w > 0.0) {
        return Err(Error::InvalidParam("at least one weight must be positive".into()));
    }
    let n = parts[0].len();
    if let Some(p) = parts.iter().find(|p| p.len() != n) {
        return Err(Error::GroundMismatch {
            left: n,
            right: p.len(),
        });
    }
    let terms = weights.iter().copied().zip(parts.iter().cloned()).collect();
    DiversityOracle::build(n, DiversityKind::Combination, Source::Combination(terms))
}

/// `{ "n": int, "values": { "<sorted indices>": float } }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiversityTable {
    pub n: usize,
    pub values: BTreeMap<String, f64>,
}

impl DiversityTable {
    /// Every subset of size at least two must be present.
    pub fn into_oracle(self) -> Result<DiversityOracle> {
        let n = self.n;
        check_exhaustive(n, "table-backed oracle size")?;
        let mut values = vec![f64::NAN; 1 << n];
        values[0] = 0.0;
        for i in 0..n {
            values[1 << i] = 0.0;
        }
        for (key, v) in &self.values {
            let mask = parse_mask_key(key, n)?;
            if mask.len() < 2 {
                if *v != 0.0 {
                    return Err(Error::InvalidParam(format!(
                        "entry {key:?} must be omitted or zero"
                    )));
                }
                continue;
            }
            values[mask.bits() as usize] = *v;
        }
        if let Some(bits) = values.iter().position(|v| v.is_nan()) {
            return Err(Error::InvalidParam(format!(
                "table is missing subset {:?}",
                SubsetMask::from_bits(bits as u64).to_vec()
            )));
        }
        DiversityOracle::from_table(n, values)
    }
}

/// `"0,2,5"` for the mask `{0, 2, 5}`.
pub fn mask_key(m: SubsetMask) -> String {
    m.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

/// Inverse of [`mask_key`]; indices must be strictly increasing.
pub fn parse_mask_key(key: &str, n: usize) -> Result<SubsetMask> {
    if key.trim().is_empty() {
        return Ok(SubsetMask::EMPTY);
    }
    let mut prev: Option<usize> = None;
    let mut idx = Vec::new();
    for part in key.split(',') {
        let i: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParam(format!("bad subset key {key:?}")))?;
        if prev.is_some_and(|p| p >= i) {
            return Err(Error::InvalidParam(format!(
                "subset key {key:?} is not strictly increasing"
            )));
        }
        prev = Some(i);
        idx.push(i);
    }
    SubsetMask::from_indices(idx, n)
}
