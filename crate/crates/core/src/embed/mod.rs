//! Embeddings of diversities into ℓ1.
//!
//! - [`coordinate_embed`]: rows are induced-metric distance vectors; distortion at most `n`.
//! - [`frt_sample_tree`], [`tree_to_l1`], [`frt_embed`]: random dominating trees,
//!   each exactly ℓ1, averaged into one embedding of the Steiner diversity.
//! - [`hypergraph_to_graph`]: replaces each hyperedge by a star, losing at most `k - 1`.
//! - [`bourgain_embed_metric`]: distances to random sets of size `2^s`.
//! - [`scheme_eval`]: the generalized weighted-coordinate scheme with two choices
//!   of coordinate map.

mod bourgain;
mod coordinate;
mod frt;
mod reduce;
mod scheme;

pub use bourgain::{bourgain_embed_metric, BourgainConfig};
pub use coordinate::coordinate_embed;
pub use frt::{frt_embed, frt_embed_ensemble, frt_sample_tree, frt_sample_tree_with, tree_to_l1, TreeEnsemble};
pub use reduce::{hypergraph_to_graph, GraphReduction};
pub use scheme::{scheme_embed, scheme_eval, scheme_phi, PhiChoice, SchemeWeights};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent stream `index` under `seed`; results do not depend on scheduling.
pub(crate) fn derived_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
