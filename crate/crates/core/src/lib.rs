//! Finite diversities and their embeddings into ℓ1.
//!
//! A diversity assigns a nonnegative value to every finite subset of a ground
//! set, vanishing exactly on sets with at most one point and satisfying
//! `δ(A ∪ B) <= δ(A ∪ C) + δ(B ∪ C)` whenever `C` is nonempty. This crate
//! provides
//!
//! - subset masks, metrics and diversity oracles for the standard families
//!   (diameter, Steiner, hypergraph Steiner, ball, TSP, partition, symmetric, tree, ℓ1),
//! - an exhaustive axiom checker,
//! - embeddings into ℓ1 ([`embed`]),
//! - exact and sampled distortion measurement ([`distortion`]).
//!
//! Ground sets hold at most 64 points; anything that scans all subsets is capped
//! much lower (see [`subset::EXHAUSTIVE_CAP`] and the per-family caps).

pub mod axioms;
pub mod distortion;
pub mod embed;
pub mod embedding;
pub mod error;
pub mod families;
pub mod generate;
pub mod instance;
pub mod metric;
pub mod oracle;
pub mod subset;
pub mod tree;

pub use axioms::{check_diversity_axioms, Axiom, AxiomReport, AxiomViolation};
pub use distortion::{
    ensemble_stretch, exact_distortion, sampled_distortion, sandwich_check, Distortion, DistortionReport,
    FactorSide, SandwichReport, ScanMode, StretchStats,
};
pub use embedding::{eval_l1_diversity, EmbeddingMethod, PointEmbedding};
pub use error::{Error, Result};
pub use instance::{DiversitySpec, Instance};
pub use metric::{approx_le, validate_metric, FiniteMetric, MetricViolation};
pub use oracle::{combine, induced_metric, DiversityKind, DiversityOracle, DiversityTable};
pub use subset::{GroundSet, SubsetMask};
pub use tree::WeightedTree;
