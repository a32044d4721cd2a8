//! Constructors and evaluators for the standard diversity families.
//!
//! Metric-derived families take a validated [`FiniteMetric`]; the exponential
//! ones carry explicit caps:
//!
//! | family | evaluator | cap |
//! |--------|-----------|-----|
//! | Steiner | Dreyfus–Wagner | 12 terminals per query |
//! | TSP (closed tour) | Held–Karp | 14 points per query |
//! | hypergraph Steiner | connected edge-set enumeration | 20 hyperedges |

pub mod hypergraph;
pub mod partition;
pub mod steiner;
pub mod symmetric;
pub mod tsp;

use crate::error::Result;
use crate::metric::FiniteMetric;
use crate::subset::SubsetMask;
use crate::tree::WeightedTree;

pub use hypergraph::{hypergraph_steiner, HyperEdge, WeightedHypergraph};
pub use partition::{partition_diversity, Partition};
pub use steiner::steiner_diversity;
pub use symmetric::{symmetric_diversity, SymmetricProfile};
pub use tsp::tsp_diversity;

/// Largest pairwise distance inside `a`.
pub fn diameter_diversity(d: &FiniteMetric, a: SubsetMask) -> f64 {
    let members: Vec<usize> = a.iter().collect();
    let mut best = 0.0f64;
    for (i, &x) in members.iter().enumerate() {
        for &y in &members[i + 1..] {
            best = best.max(d.get(x, y));
        }
    }
    best
}

/// Diameter of the smallest ball centred at a point of `X` containing `a`:
/// `2 * min_x max_{a} d(x, a)`.
pub fn ball_diversity(d: &FiniteMetric, a: SubsetMask) -> f64 {
    if a.len() <= 1 {
        return 0.0;
    }
    let radius = (0..d.len())
        .map(|x| a.iter().map(|y| d.get(x, y)).fold(0.0, f64::max))
        .fold(f64::INFINITY, f64::min);
    2.0 * radius
}

/// `δ_ρ`: 1 on every set with at least two points.
pub fn discrete_diversity(a: SubsetMask) -> f64 {
    if a.len() > 1 {
        1.0
    } else {
        0.0
    }
}

/// `δ_c(A) = |A| - 1`, zero on singletons.
pub fn cardinality_diversity(a: SubsetMask) -> f64 {
    a.len().saturating_sub(1) as f64
}

/// Phylogenetic diversity: weight of the minimal subtree spanning `a`.
pub fn tree_diversity(t: &WeightedTree, a: SubsetMask) -> Result<f64> {
    t.diversity(a)
}
