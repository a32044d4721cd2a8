//! Brute-force reference implementations and random-instance helpers shared by
//! the integration tests and the acceptance harness. Nothing here calls the
//! library's own solvers.

#![allow(dead_code)]

use divembed::families::{Partition, SymmetricProfile};
use divembed::generate::{
    random_euclidean_metric, random_graph_metric, random_hypergraph, random_partition, random_points,
    random_symmetric_profile, random_tree,
};
use divembed::{combine, DiversityOracle, FiniteMetric, PointEmbedding, SubsetMask, WeightedTree};
use rand::Rng;

/// Prim's algorithm on the complete graph over `s`.
pub fn mst_weight(d: &FiniteMetric, s: &[usize]) -> f64 {
    if s.len() < 2 {
        return 0.0;
    }
    let mut best: Vec<f64> = s.iter().map(|&v| d.get(s[0], v)).collect();
    let mut done = vec![false; s.len()];
    done[0] = true;
    let mut total = 0.0;
    for _ in 1..s.len() {
        let (i, w) = best
            .iter()
            .enumerate()
            .filter(|(i, _)| !done[*i])
            .fold((usize::MAX, f64::INFINITY), |acc, (i, &w)| if w < acc.1 { (i, w) } else { acc });
        done[i] = true;
        total += w;
        for j in 0..s.len() {
            best[j] = best[j].min(d.get(s[i], s[j]));
        }
    }
    total
}

/// Minimum spanning tree weight over every superset of `a`: the Steiner value
/// when intermediate points may be any point of the space.
pub fn steiner_by_supersets(d: &FiniteMetric, a: SubsetMask) -> f64 {
    if a.len() < 2 {
        return 0.0;
    }
    let rest = SubsetMask::full(d.len()).difference(a);
    rest.subsets()
        .map(|extra| mst_weight(d, &a.union(extra).to_vec()))
        .fold(f64::INFINITY, f64::min)
}

/// Decodes a Prüfer sequence over `m` labels into its tree's edge list.
fn prufer_edges(code: &[usize], m: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1; m];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(m - 1);
    for &c in code {
        let leaf = (0..m).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let last: Vec<usize> = (0..m).filter(|&v| degree[v] == 1).collect();
    edges.push((last[0], last[1]));
    edges
}

/// Cheapest tree over exactly the vertices `s`, by enumerating all `m^(m-2)` labeled trees.
pub fn tree_weight_by_prufer(d: &FiniteMetric, s: &[usize]) -> f64 {
    let m = s.len();
    match m {
        0 | 1 => return 0.0,
        2 => return d.get(s[0], s[1]),
        _ => {}
    }
    let mut code = vec![0usize; m - 2];
    let mut best = f64::INFINITY;
    loop {
        let w: f64 = prufer_edges(&code, m).iter().map(|&(u, v)| d.get(s[u], s[v])).sum();
        best = best.min(w);
        let mut i = 0;
        loop {
            if i == code.len() {
                return best;
            }
            code[i] += 1;
            if code[i] < m {
                break;
            }
            code[i] = 0;
            i += 1;
        }
    }
}

/// Steiner value from labeled-tree enumeration over every superset of `a`.
pub fn steiner_by_prufer(d: &FiniteMetric, a: SubsetMask) -> f64 {
    if a.len() < 2 {
        return 0.0;
    }
    let rest = SubsetMask::full(d.len()).difference(a);
    rest.subsets()
        .map(|extra| tree_weight_by_prufer(d, &a.union(extra).to_vec()))
        .fold(f64::INFINITY, f64::min)
}

/// Shortest closed tour through `a` by trying every ordering with the first point fixed.
pub fn tsp_by_permutations(d: &FiniteMetric, a: SubsetMask) -> f64 {
    let pts = a.to_vec();
    if pts.len() < 2 {
        return 0.0;
    }
    let mut rest: Vec<usize> = pts[1..].to_vec();
    let mut best = f64::INFINITY;
    permute(&mut rest, 0, &mut |order| {
        let mut len = d.get(pts[0], order[0]) + d.get(*order.last().unwrap(), pts[0]);
        for w in order.windows(2) {
            len += d.get(w[0], w[1]);
        }
        best = best.min(len);
    });
    best
}

fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, f);
        v.swap(k, i);
    }
}

/// Total weight of tree edges whose removal leaves points of `a` on both sides.
pub fn tree_diversity_by_cuts(t: &WeightedTree, a: SubsetMask) -> f64 {
    let m = t.vertex_count();
    let mut adj = vec![Vec::new(); m];
    for (i, &(u, v, _)) in t.edges().iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let marked: Vec<usize> = a.iter().map(|x| t.placement()[x]).collect();
    let mut total = 0.0;
    for (skip, &(u, _, w)) in t.edges().iter().enumerate() {
        let mut side = vec![false; m];
        side[u] = true;
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            for &(y, e) in &adj[x] {
                if e != skip && !side[y] {
                    side[y] = true;
                    stack.push(y);
                }
            }
        }
        let inside = marked.iter().filter(|&&v| side[v]).count();
        if inside > 0 && inside < marked.len() {
            total += w;
        }
    }
    total
}

/// Brute-force check of `δ(A ∪ B) <= δ(A ∪ C) + δ(B ∪ C)` over all triples with `C` nonempty.
pub fn triangle_holds_everywhere(delta: &DiversityOracle) -> bool {
    let n = delta.len();
    let vals: Vec<f64> = (0..1u64 << n).map(|b| delta.eval(SubsetMask::from_bits(b))).collect();
    for a in 0..1u64 << n {
        for b in 0..1u64 << n {
            for c in 1..1u64 << n {
                let lhs = vals[(a | b) as usize];
                let rhs = vals[(a | c) as usize] + vals[(b | c) as usize];
                if lhs > rhs + 1e-9 * lhs.abs().max(rhs.abs()).max(1.0) {
                    return false;
                }
            }
        }
    }
    true
}

/// Number of distinct recipes [`random_diversity`] cycles through.
pub const RECIPES: usize = 9;

/// A random diversity on `n` points drawn from recipe `which % RECIPES`:
/// Steiner, diameter, TSP, a tabulated hypergraph diversity, ℓ1 points, a tree,
/// a symmetric profile, a split combination, or a mixture of several of these.
pub fn random_diversity<R: Rng>(rng: &mut R, n: usize, which: usize) -> DiversityOracle {
    match which % RECIPES {
        0 => DiversityOracle::steiner(random_graph_metric(rng, n, 0.3).unwrap()).unwrap(),
        1 => DiversityOracle::diameter(random_euclidean_metric(rng, n, 2).unwrap()),
        2 => DiversityOracle::tsp(random_graph_metric(rng, n, 0.5).unwrap()).unwrap(),
        3 => {
            let edges = rng.random_range(n.div_ceil(2)..=n + 2);
            let h = random_hypergraph(rng, n, edges.max(n - 1), 3.min(n)).unwrap();
            let values = DiversityOracle::hypergraph(&h).unwrap().values().unwrap();
            DiversityOracle::from_table(n, values).unwrap()
        }
        4 => DiversityOracle::l1(PointEmbedding::from_rows(&random_points(rng, n, 3).unwrap()).unwrap()).unwrap(),
        5 => {
            let extra = rng.random_range(0..4);
            DiversityOracle::tree(random_tree(rng, n, extra).unwrap()).unwrap()
        }
        6 => DiversityOracle::symmetric(random_symmetric_profile(rng, n).unwrap()).unwrap(),
        7 => {
            let k = rng.random_range(2..6);
            let mut parts = Vec::new();
            let mut weights = Vec::new();
            for _ in 0..k {
                let blocks = rng.random_range(2..=n.min(4));
                parts.push(DiversityOracle::partition(random_partition(rng, n, blocks).unwrap()).unwrap());
                weights.push(rng.random_range(0.1..2.0));
            }
            // Splits alone can leave two points unseparated; a little δ_ρ fixes that.
            parts.push(DiversityOracle::discrete(n).unwrap());
            weights.push(rng.random_range(0.05..0.5));
            combine(&weights, &parts).unwrap()
        }
        _ => {
            let picks = [0, 1, 3, 5, 6];
            let parts: Vec<DiversityOracle> = (0..3)
                .map(|_| {
                    let which = picks[rng.random_range(0..picks.len())];
                    random_diversity(rng, n, which)
                })
                .collect();
            let weights: Vec<f64> = (0..3).map(|_| rng.random_range(0.0..1.0)).collect();
            combine(&weights, &parts).unwrap()
        }
    }
}

/// Two-block split at `a`, as a convenience for tests.
pub fn split(n: usize, a: SubsetMask) -> DiversityOracle {
    DiversityOracle::partition(Partition::split(n, a).unwrap()).unwrap()
}

pub fn symmetric(f: &[f64]) -> DiversityOracle {
    DiversityOracle::symmetric(SymmetricProfile::new(f.to_vec()).unwrap()).unwrap()
}
