//! Hypergraph Steiner diversity: cheapest connected sub-hypergraph covering a set.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{check_exhaustive, SubsetMask};

/// Largest hyperedge count for the exhaustive edge-subset search.
pub const HYPEREDGE_CAP: usize = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HyperEdge {
    pub vertices: Vec<usize>,
    pub weight: f64,
}

/// A hypergraph on `n` vertices with positive edge weights whose edges connect every vertex.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HypergraphJson", into = "HypergraphJson")]
pub struct WeightedHypergraph {
    n: usize,
    edges: Vec<(SubsetMask, f64)>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphJson {
    n: usize,
    edges: Vec<HyperEdge>,
}

impl TryFrom<HypergraphJson> for WeightedHypergraph {
    type Error = Error;

    fn try_from(j: HypergraphJson) -> Result<Self> {
        Self::new(j.n, j.edges)
    }
}

impl From<WeightedHypergraph> for HypergraphJson {
    fn from(h: WeightedHypergraph) -> Self {
        Self {
            n: h.n,
            edges: h
                .edges
                .iter()
                .map(|&(m, w)| HyperEdge {
                    vertices: m.to_vec(),
                    weight: w,
                })
                .collect(),
        }
    }
}

impl WeightedHypergraph {
    pub fn new(n: usize, edges: Vec<HyperEdge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidHypergraph("no vertices".into()));
        }
        if edges.len() > crate::subset::MAX_POINTS {
            return Err(Error::CapExceeded {
                what: "hyperedge count",
                got: edges.len(),
                cap: crate::subset::MAX_POINTS,
            });
        }
        let mut out = Vec::with_capacity(edges.len());
        for e in edges {
            let mask = SubsetMask::from_indices(e.vertices.iter().copied(), n)?;
            if mask.len() != e.vertices.len() {
                return Err(Error::InvalidHypergraph(format!(
                    "repeated vertex in edge {:?}",
                    e.vertices
                )));
            }
            if mask.len() < 2 {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {:?} has fewer than two vertices",
                    e.vertices
                )));
            }
            if !(e.weight > 0.0 && e.weight.is_finite()) {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {:?} has weight {}",
                    e.vertices, e.weight
                )));
            }
            out.push((mask, e.weight));
        }
        let h = Self { n, edges: out };
        if n > 1 && h.component(SubsetMask::full(h.edges.len())) != Some(SubsetMask::full(n)) {
            return Err(Error::Disconnected);
        }
        Ok(h)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn edges(&self) -> &[(SubsetMask, f64)] {
        &self.edges
    }

    /// Largest edge size `k`.
    pub fn rank(&self) -> usize {
        self.edges.iter().map(|(m, _)| m.len()).max().unwrap_or(0)
    }

    /// Vertex set of the edge subset `chosen` when it is connected.
    fn component(&self, chosen: SubsetMask) -> Option<SubsetMask> {
        let first = chosen.first()?;
        let mut verts = self.edges[first].0;
        let mut pending = chosen.without(first);
        loop {
            let touching: SubsetMask = pending
                .iter()
                .filter(|&e| !self.edges[e].0.intersection(verts).is_empty())
                .collect();
            if touching.is_empty() {
                break;
            }
            for e in touching.iter() {
                verts = verts.union(self.edges[e].0);
            }
            pending = pending.difference(touching);
        }
        pending.is_empty().then_some(verts)
    }

    /// Calls `visit(vertices, weight)` once per connected nonempty edge subset,
    /// growing subsets one adjacent edge at a time.
    fn for_each_connected(&self, mut visit: impl FnMut(SubsetMask, f64)) -> Result<()> {
        let m = self.edges.len();
        if m > HYPEREDGE_CAP {
            return Err(Error::CapExceeded {
                what: "hyperedge count",
                got: m,
                cap: HYPEREDGE_CAP,
            });
        }
        let mut seen = vec![false; 1 << m];
        let mut queue: Vec<(u32, SubsetMask, f64)> = Vec::new();
        for (e, &(verts, w)) in self.edges.iter().enumerate() {
            seen[1 << e] = true;
            queue.push((1 << e, verts, w));
        }
        while let Some((set, verts, w)) = queue.pop() {
            visit(verts, w);
            for (e, &(ev, ew)) in self.edges.iter().enumerate() {
                let next = set | 1 << e;
                if next == set || seen[next as usize] || ev.intersection(verts).is_empty() {
                    continue;
                }
                seen[next as usize] = true;
                queue.push((next, verts.union(ev), w + ew));
            }
        }
        Ok(())
    }

    /// `δ_H` on every vertex subset, indexed by mask bits.
    pub fn cover_table(&self) -> Result<Vec<f64>> {
        let n = self.n;
        check_exhaustive(n, "hypergraph table size")?;
        let mut best = vec![f64::INFINITY; 1 << n];
        self.for_each_connected(|verts, w| {
            let slot = &mut best[verts.bits() as usize];
            if w < *slot {
                *slot = w;
            }
        })?;
        // Minimum over supersets.
        for i in 0..n {
            for mask in 0..1usize << n {
                if mask >> i & 1 == 0 {
                    let up = best[mask | 1 << i];
                    if up < best[mask] {
                        best[mask] = up;
                    }
                }
            }
        }
        for (mask, v) in best.iter_mut().enumerate() {
            if mask.count_ones() <= 1 {
                *v = 0.0;
            }
        }
        Ok(best)
    }
}

/// Minimum total weight of a connected sub-hypergraph whose vertices include `a`.
pub fn hypergraph_steiner(h: &WeightedHypergraph, a: SubsetMask) -> Result<f64> {
    if let Some(i) = a.max_index().filter(|&i| i >= h.n) {
        return Err(Error::IndexOutOfRange { index: i, n: h.n });
    }
    if a.len() <= 1 {
        return Ok(0.0);
    }
    let mut best = f64::INFINITY;
    h.for_each_connected(|verts, w| {
        if a.is_subset_of(verts) && w < best {
            best = w;
        }
    })?;
    if best.is_infinite() {
        return Err(Error::NotCoverable { members: a.to_vec() });
    }
    Ok(best)
}
