//! Random dominating trees (hierarchical ball partitioning) and their ℓ1 images.
//!
//! A sample draws a uniform permutation of `X` and a scale `β = 2^U`,
//! `U ~ U[0, 1)`. Starting from `X` at level `D` with `2^D >= diam`, every
//! cluster at level `i + 1` is cut at level `i` by visiting centres in
//! permutation order and taking the unassigned members within `β 2^(i-2)` of
//! each. Level-`i` clusters therefore have diameter below `2^i` and hang from
//! their parent by an edge of weight `2^i`, which makes every tree distance
//! dominate the metric. A cluster stops splitting once it is a single point.
//!
//! Every node is also labelled by a point of `X`: a leaf by its own point, an
//! internal cluster by the centre that carved it out, the root by the label of
//! its first child. An edge whose label distance exceeds `2^i` is stretched to
//! that distance. Any subtree spanning `A` then maps onto a connected graph on
//! `X` of no greater weight, so each tree diversity bounds `δ_S` from above.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use super::derived_rng;
use crate::embedding::{EmbeddingMethod, PointEmbedding};
use crate::error::{Error, Result};
use crate::metric::FiniteMetric;
use crate::subset::SubsetMask;
use crate::tree::WeightedTree;

/// Relative slack allowed in the dominance postcondition.
const DOMINANCE_TOL: f64 = 1e-12;

struct HstNode {
    parent: Option<usize>,
    weight: f64,
    children: Vec<usize>,
    point: Option<usize>,
    label: usize,
}

/// One FRT tree over `d`, seeded deterministically.
pub fn frt_sample_tree(d: &FiniteMetric, seed: u64) -> Result<WeightedTree> {
    frt_sample_tree_with(d, &mut derived_rng(seed, 0))
}

/// One FRT tree using the caller's random source.
pub fn frt_sample_tree_with<R: Rng + ?Sized>(d: &FiniteMetric, rng: &mut R) -> Result<WeightedTree> {
    let n = d.len();
    if n < 2 {
        return Err(Error::InvalidParam("tree sampling needs at least two points".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let beta = 2f64.powf(rng.random::<f64>());

    let diam = d.diameter();
    let mut level = diam.log2().ceil() as i32;
    while 2f64.powi(level) < diam {
        level += 1;
    }
    while 2f64.powi(level - 1) >= diam {
        level -= 1;
    }

    let mut nodes = vec![HstNode {
        parent: None,
        weight: 0.0,
        children: Vec::new(),
        point: None,
        label: usize::MAX,
    }];
    let mut open: Vec<(usize, SubsetMask)> = vec![(0, SubsetMask::full(n))];
    while !open.is_empty() {
        level -= 1;
        let radius = beta * 2f64.powi(level - 2);
        let weight = 2f64.powi(level);
        let mut next = Vec::new();
        for (node, members) in open {
            let mut left = members;
            for &centre in &order {
                if left.is_empty() {
                    break;
                }
                let ball: SubsetMask = left.iter().filter(|&x| d.get(centre, x) <= radius).collect();
                if ball.is_empty() {
                    continue;
                }
                left = left.difference(ball);
                let child = nodes.len();
                let point = (ball.len() == 1).then(|| ball.first().expect("nonempty"));
                let label = point.unwrap_or(centre);
                if nodes[node].label == usize::MAX {
                    nodes[node].label = label;
                }
                let weight = weight.max(d.get(label, nodes[node].label));
                nodes.push(HstNode {
                    parent: Some(node),
                    weight,
                    children: Vec::new(),
                    point,
                    label,
                });
                nodes[node].children.push(child);
                if ball.len() > 1 {
                    next.push((child, ball));
                }
            }
        }
        open = next;
    }

    let tree = collapse(&nodes, n)?;
    check_dominance(d, &tree)?;
    Ok(tree)
}

/// Drops single-child chains (and a two-child root), summing edge weights.
fn collapse(nodes: &[HstNode], n: usize) -> Result<WeightedTree> {
    let kept = |i: usize| nodes[i].point.is_some() || nodes[i].children.len() >= 2 || nodes[i].parent.is_none();
    let mut id = vec![usize::MAX; nodes.len()];
    let mut count = 0;
    for i in 0..nodes.len() {
        if kept(i) {
            id[i] = count;
            count += 1;
        }
    }
    let mut edges = Vec::with_capacity(count.saturating_sub(1));
    let mut placement = vec![usize::MAX; n];
    for i in 0..nodes.len() {
        if !kept(i) {
            continue;
        }
        if let Some(x) = nodes[i].point {
            placement[x] = id[i];
        }
        if nodes[i].parent.is_some() {
            let mut w = 0.0;
            let mut up = i;
            while let Some(p) = nodes[up].parent {
                w += nodes[up].weight;
                up = p;
                if kept(up) {
                    break;
                }
            }
            edges.push((id[up], id[i], w));
        }
    }

    // An unplaced root with exactly two kept children is a degree-2 vertex.
    let root = id[0];
    let at_root: Vec<usize> = edges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.0 == root)
        .map(|(k, _)| k)
        .collect();
    if nodes[0].point.is_none() && at_root.len() == 2 {
        let (a, b) = (edges[at_root[0]], edges[at_root[1]]);
        edges.retain(|e| e.0 != root);
        edges.push((a.1, b.1, a.2 + b.2));
        // Move the last vertex id into the root's slot.
        let last = count - 1;
        count -= 1;
        if root != last {
            for e in &mut edges {
                if e.0 == last {
                    e.0 = root;
                }
                if e.1 == last {
                    e.1 = root;
                }
            }
            for p in &mut placement {
                if *p == last {
                    *p = root;
                }
            }
        }
    }
    WeightedTree::new(count, edges, placement)
}

fn check_dominance(d: &FiniteMetric, tree: &WeightedTree) -> Result<()> {
    let td = tree.ground_distances();
    for u in 0..d.len() {
        for v in u + 1..d.len() {
            let (t, m) = (td[u][v], d.get(u, v));
            if t < m * (1.0 - DOMINANCE_TOL) {
                return Err(Error::DominanceViolated {
                    u,
                    v,
                    tree: t,
                    metric: m,
                });
            }
        }
    }
    Ok(())
}

/// Independently sampled dominating trees over one metric.
#[derive(Clone, Debug)]
pub struct TreeEnsemble {
    trees: Vec<WeightedTree>,
    seed: u64,
    metric: FiniteMetric,
}

impl TreeEnsemble {
    /// Samples `m` trees; tree `j` uses random stream `j` under `seed`.
    pub fn sample(d: &FiniteMetric, m: usize, seed: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParam("ensemble size must be at least 1".into()));
        }
        let trees = (0..m as u64)
            .into_par_iter()
            .map(|j| frt_sample_tree_with(d, &mut derived_rng(seed, j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            trees,
            seed,
            metric: d.clone(),
        })
    }

    pub fn trees(&self) -> &[WeightedTree] {
        &self.trees
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn metric(&self) -> &FiniteMetric {
        &self.metric
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }
}

/// One coordinate per tree edge: the edge weight on the side away from vertex 0,
/// zero elsewhere. The ℓ1 diversity of the result equals the tree diversity.
pub fn tree_to_l1(t: &WeightedTree) -> PointEmbedding {
    let m = t.vertex_count();
    let adj = t.adjacency();
    let mut parent = vec![usize::MAX; m];
    let mut up_weight = vec![0.0; m];
    let mut order = Vec::with_capacity(m);
    let mut stack = vec![0];
    parent[0] = 0;
    while let Some(u) = stack.pop() {
        order.push(u);
        for &(v, w) in &adj[u] {
            if parent[v] == usize::MAX {
                parent[v] = u;
                up_weight[v] = w;
                stack.push(v);
            }
        }
    }
    // Column index of the edge above each non-root vertex, in DFS order.
    let mut column = vec![usize::MAX; m];
    for (c, &v) in order.iter().skip(1).enumerate() {
        column[v] = c;
    }
    let k = m - 1;
    let n = t.ground_len();
    let mut coords = vec![0.0; n * k];
    for (x, &p) in t.placement().iter().enumerate() {
        let mut v = p;
        while v != 0 {
            coords[x * k + column[v]] = up_weight[v];
            v = parent[v];
        }
    }
    PointEmbedding::new(n, k, coords, EmbeddingMethod::Tree).expect("finite tree weights")
}

/// Mean of the ℓ1 images of an ensemble: each tree's block scaled by `1/m`.
pub fn frt_embed_ensemble(ensemble: &TreeEnsemble) -> Result<PointEmbedding> {
    let scale = 1.0 / ensemble.len() as f64;
    let blocks: Vec<PointEmbedding> = ensemble
        .trees
        .iter()
        .map(|t| tree_to_l1(t).scaled(scale))
        .collect();
    Ok(PointEmbedding::hstack(&blocks, EmbeddingMethod::Frt)?.with_seed(Some(ensemble.seed)))
}

/// Embeds the Steiner diversity of `d` as the empirical mean of `m` tree diversities.
pub fn frt_embed(d: &FiniteMetric, m: usize, seed: u64) -> Result<PointEmbedding> {
    frt_embed_ensemble(&TreeEnsemble::sample(d, m, seed)?)
}
