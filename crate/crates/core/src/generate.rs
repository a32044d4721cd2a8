//! Seeded random instances for tests and benchmarks.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::families::{HyperEdge, Partition, SymmetricProfile, WeightedHypergraph};
use crate::metric::FiniteMetric;
use crate::tree::WeightedTree;

/// The generator every seeded entry point uses.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn need_points(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::InvalidParam(format!("need at least {min} points, got {n}")));
    }
    Ok(())
}

/// `n` points drawn uniformly from `[0, 1)^dim`.
pub fn random_points<R: Rng + ?Sized>(rng: &mut R, n: usize, dim: usize) -> Result<Vec<Vec<f64>>> {
    need_points(n, 1)?;
    if dim == 0 {
        return Err(Error::InvalidParam("dimension must be positive".into()));
    }
    Ok((0..n).map(|_| (0..dim).map(|_| rng.random::<f64>()).collect()).collect())
}

/// Euclidean metric of [`random_points`], redrawn in the (measure-zero) event of a repeat.
pub fn random_euclidean_metric<R: Rng + ?Sized>(rng: &mut R, n: usize, dim: usize) -> Result<FiniteMetric> {
    loop {
        if let Ok(m) = FiniteMetric::euclidean(&random_points(rng, n, dim)?) {
            return Ok(m);
        }
    }
}

/// Shortest-path metric of a random connected graph: a random spanning tree plus
/// each remaining pair with probability `extra_edge_prob`, weights uniform in `[1, 10)`.
pub fn random_graph_metric<R: Rng + ?Sized>(rng: &mut R, n: usize, extra_edge_prob: f64) -> Result<FiniteMetric> {
    need_points(n, 1)?;
    if !(0.0..=1.0).contains(&extra_edge_prob) {
        return Err(Error::InvalidParam(format!("edge probability {extra_edge_prob} outside [0, 1]")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    let mut linked = vec![vec![false; n]; n];
    for i in 1..n {
        let (u, v) = (order[i], order[rng.random_range(0..i)]);
        edges.push((u, v, rng.random_range(1.0..10.0)));
        linked[u][v] = true;
        linked[v][u] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if !linked[u][v] && rng.random_bool(extra_edge_prob) {
                edges.push((u, v, rng.random_range(1.0..10.0)));
            }
        }
    }
    FiniteMetric::shortest_paths(n, &edges)
}

/// Points `0, 1, ..., n-1` on a line with unit spacing.
pub fn path_metric(n: usize) -> Result<FiniteMetric> {
    need_points(n, 1)?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i, 1.0)).collect();
    FiniteMetric::shortest_paths(n, &edges)
}

/// Point 0 is the hub; every other point is at distance 1 from it and 2 from each other.
pub fn star_metric(n: usize) -> Result<FiniteMetric> {
    need_points(n, 1)?;
    let edges: Vec<_> = (1..n).map(|i| (0, i, 1.0)).collect();
    FiniteMetric::shortest_paths(n, &edges)
}

/// A random tree on `n + extra` vertices (each vertex hangs from an earlier one,
/// weights uniform in `[0.5, 2)`) with the `n` ground points placed on distinct vertices.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize, extra: usize) -> Result<WeightedTree> {
    need_points(n, 1)?;
    let m = n + extra;
    let edges = (1..m).map(|v| (rng.random_range(0..v), v, rng.random_range(0.5..2.0))).collect();
    let placement = sample(rng, m, n).into_vec();
    WeightedTree::new(m, edges, placement)
}

/// A connected hypergraph with `edges` hyperedges of sizes `2..=max_size`,
/// weights uniform in `[0.5, 2)`.
///
/// The first few edges grow a spanning structure (each shares one vertex with the
/// part already connected); the rest are uniform random subsets.
pub fn random_hypergraph<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    edges: usize,
    max_size: usize,
) -> Result<WeightedHypergraph> {
    need_points(n, 2)?;
    if max_size < 2 || max_size > n {
        return Err(Error::InvalidParam(format!("max edge size {max_size} outside [2, {n}]")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut out = Vec::with_capacity(edges);
    let mut joined = 1;
    while joined < n {
        let fresh = rng.random_range(1..max_size).min(n - joined);
        let mut vertices = vec![order[rng.random_range(0..joined)]];
        vertices.extend_from_slice(&order[joined..joined + fresh]);
        joined += fresh;
        out.push(vertices);
    }
    if out.len() > edges {
        return Err(Error::InvalidParam(format!(
            "{edges} edges cannot connect {n} vertices with edges of size <= {max_size} (drew {})",
            out.len()
        )));
    }
    while out.len() < edges {
        let size = rng.random_range(2..=max_size);
        out.push(sample(rng, n, size).into_vec());
    }
    let hyperedges = out
        .into_iter()
        .map(|mut vertices| {
            vertices.sort_unstable();
            HyperEdge {
                vertices,
                weight: rng.random_range(0.5..2.0),
            }
        })
        .collect();
    WeightedHypergraph::new(n, hyperedges)
}

/// A uniformly random assignment of `n` points to exactly `blocks` nonempty blocks.
pub fn random_partition<R: Rng + ?Sized>(rng: &mut R, n: usize, blocks: usize) -> Result<Partition> {
    if blocks < 2 || blocks > n {
        return Err(Error::InvalidParam(format!("block count {blocks} outside [2, {n}]")));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut out = vec![Vec::new(); blocks];
    for (i, &x) in order.iter().enumerate() {
        let b = if i < blocks { i } else { rng.random_range(0..blocks) };
        out[b].push(x);
    }
    for b in &mut out {
        b.sort_unstable();
    }
    Partition::new(n, out)
}

/// `f(t) = Σ_{s=2..t} g_s` with positive, nonincreasing increments `g`.
pub fn random_symmetric_profile<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<SymmetricProfile> {
    need_points(n, 2)?;
    let mut f = vec![0.0; n + 1];
    let mut g = rng.random_range(0.5..2.0);
    for t in 2..=n {
        f[t] = f[t - 1] + g;
        g *= rng.random_range(0.3..1.0);
    }
    SymmetricProfile::new(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_under_seed() {
        let a = random_graph_metric(&mut seeded_rng(9), 8, 0.3).unwrap();
        let b = random_graph_metric(&mut seeded_rng(9), 8, 0.3).unwrap();
        assert_eq!(a, b);
        let a = random_points(&mut seeded_rng(7), 16, 3).unwrap();
        assert_eq!(a, random_points(&mut seeded_rng(7), 16, 3).unwrap());
    }

    #[test]
    fn hypergraphs_respect_shape() {
        let mut rng = seeded_rng(1);
        for _ in 0..50 {
            let h = random_hypergraph(&mut rng, 6, 8, 3).unwrap();
            assert_eq!(h.edges().len(), 8);
            assert!(h.rank() <= 3);
        }
        assert!(random_hypergraph(&mut rng, 10, 2, 2).is_err());
    }

    #[test]
    fn partitions_and_profiles_validate() {
        let mut rng = seeded_rng(2);
        for n in 2..10 {
            for b in 2..=n {
                assert_eq!(random_partition(&mut rng, n, b).unwrap().blocks(), b);
            }
            random_symmetric_profile(&mut rng, n).unwrap();
        }
    }

    #[test]
    fn fixed_shapes() {
        let p = path_metric(4).unwrap();
        assert_eq!(p.get(0, 3), 3.0);
        let s = star_metric(4).unwrap();
        assert_eq!((s.get(0, 2), s.get(1, 3)), (1.0, 2.0));
        let t = random_tree(&mut seeded_rng(3), 5, 4).unwrap();
        assert_eq!(t.ground_len(), 5);
    }
}
