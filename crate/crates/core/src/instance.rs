//! On-disk problem instances: a ground set, an optional metric or point cloud,
//! and a description of the diversity to build on it.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::embedding::{EmbeddingMethod, PointEmbedding};
use crate::error::{Error, Result};
use crate::families::{HyperEdge, Partition, SymmetricProfile, WeightedHypergraph};
use crate::metric::FiniteMetric;
use crate::oracle::{combine, DiversityKind, DiversityOracle, DiversityTable};
use crate::subset::GroundSet;
use crate::tree::WeightedTree;

/// One weighted summand of a combination diversity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightedPart {
    pub weight: f64,
    pub diversity: DiversitySpec,
}

/// The `"diversity"` object of an instance, tagged by `"kind"`.
///
/// Metric-based kinds (`diameter`, `steiner`, `ball`, `tsp`) read the instance's
/// `metric`, or the Euclidean metric of its `points` when no matrix is given.
/// `l1` reads `points` directly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum DiversitySpec {
    Table { values: BTreeMap<String, f64> },
    Diameter,
    Steiner,
    Ball,
    Tsp,
    Hypergraph { edges: Vec<HyperEdge> },
    Partition { blocks: Vec<Vec<usize>> },
    Discrete,
    Cardinality,
    Symmetric { f: Vec<f64> },
    L1,
    Tree { tree: WeightedTree },
    Combination { parts: Vec<WeightedPart> },
}

impl DiversitySpec {
    pub fn kind(&self) -> DiversityKind {
        match self {
            Self::Table { .. } => DiversityKind::Table,
            Self::Diameter => DiversityKind::Diameter,
            Self::Steiner => DiversityKind::Steiner,
            Self::Ball => DiversityKind::Ball,
            Self::Tsp => DiversityKind::Tsp,
            Self::Hypergraph { .. } => DiversityKind::Hypergraph,
            Self::Partition { .. } => DiversityKind::Partition,
            Self::Discrete => DiversityKind::Discrete,
            Self::Cardinality => DiversityKind::Cardinality,
            Self::Symmetric { .. } => DiversityKind::Symmetric,
            Self::L1 => DiversityKind::L1,
            Self::Tree { .. } => DiversityKind::Tree,
            Self::Combination { .. } => DiversityKind::Combination,
        }
    }
}

/// `{ "n", "labels"?, "metric"?, "points"?, "diversity": { "kind", ... } }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<FiniteMetric>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<Vec<f64>>>,
    pub diversity: DiversitySpec,
}

impl Instance {
    pub fn new(n: usize, diversity: DiversitySpec) -> Self {
        Self {
            n,
            labels: None,
            metric: None,
            points: None,
            diversity,
        }
    }

    pub fn with_metric(mut self, metric: FiniteMetric) -> Self {
        self.metric = Some(metric);
        self
    }

    pub fn with_points(mut self, points: Vec<Vec<f64>>) -> Self {
        self.points = Some(points);
        self
    }

    pub fn ground(&self) -> Result<GroundSet> {
        match &self.labels {
            Some(l) if l.len() != self.n => Err(Error::InvalidGround(format!(
                "{} labels for {} points",
                l.len(),
                self.n
            ))),
            Some(l) => GroundSet::with_labels(l.clone()),
            None => GroundSet::new(self.n),
        }
    }

    /// The explicit metric, else the Euclidean metric of `points`, else `None`.
    pub fn metric(&self) -> Result<Option<FiniteMetric>> {
        let m = match (&self.metric, &self.points) {
            (Some(m), _) => m.clone(),
            (None, Some(p)) => FiniteMetric::euclidean(p)?,
            (None, None) => return Ok(None),
        };
        if m.len() != self.n {
            return Err(Error::GroundMismatch {
                left: self.n,
                right: m.len(),
            });
        }
        Ok(Some(m))
    }

    fn require_metric(&self) -> Result<FiniteMetric> {
        self.metric()?.ok_or_else(|| {
            Error::InvalidParam(format!(
                "{} diversity needs a \"metric\" or \"points\" field",
                self.diversity.kind()
            ))
        })
    }

    /// The instance's point cloud as an embedding, if it has one.
    pub fn point_embedding(&self) -> Result<Option<PointEmbedding>> {
        let Some(p) = &self.points else { return Ok(None) };
        if p.len() != self.n {
            return Err(Error::GroundMismatch {
                left: self.n,
                right: p.len(),
            });
        }
        Ok(Some(PointEmbedding::from_rows(p)?.with_method(EmbeddingMethod::Points)))
    }

    /// Builds the diversity oracle described by `diversity`.
    pub fn oracle(&self) -> Result<DiversityOracle> {
        self.ground()?;
        self.build(&self.diversity)
    }

    fn build(&self, spec: &DiversitySpec) -> Result<DiversityOracle> {
        let n = self.n;
        let oracle = match spec {
            DiversitySpec::Table { values } => DiversityTable {
                n,
                values: values.clone(),
            }
            .into_oracle()?,
            DiversitySpec::Diameter => DiversityOracle::diameter(self.require_metric()?),
            DiversitySpec::Steiner => DiversityOracle::steiner(self.require_metric()?)?,
            DiversitySpec::Ball => DiversityOracle::ball(self.require_metric()?),
            DiversitySpec::Tsp => DiversityOracle::tsp(self.require_metric()?)?,
            DiversitySpec::Hypergraph { edges } => {
                DiversityOracle::hypergraph(&WeightedHypergraph::new(n, edges.clone())?)?
            }
            DiversitySpec::Partition { blocks } => {
                DiversityOracle::partition(Partition::new(n, blocks.clone())?)?
            }
            DiversitySpec::Discrete => DiversityOracle::discrete(n)?,
            DiversitySpec::Cardinality => DiversityOracle::cardinality(n)?,
            DiversitySpec::Symmetric { f } => DiversityOracle::symmetric(SymmetricProfile::new(f.clone())?)?,
            DiversitySpec::L1 => {
                let emb = self.point_embedding()?.ok_or_else(|| {
                    Error::InvalidParam("l1 diversity needs a \"points\" field".into())
                })?;
                DiversityOracle::l1(emb)?
            }
            DiversitySpec::Tree { tree } => DiversityOracle::tree(tree.clone())?,
            DiversitySpec::Combination { parts } => {
                let weights: Vec<f64> = parts.iter().map(|p| p.weight).collect();
                let oracles = parts
                    .iter()
                    .map(|p| self.build(&p.diversity))
                    .collect::<Result<Vec<_>>>()?;
                combine(&weights, &oracles)?
            }
        };
        if oracle.len() != n {
            return Err(Error::GroundMismatch {
                left: n,
                right: oracle.len(),
            });
        }
        Ok(oracle)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
