//! Edge-weighted trees with ground points placed on vertices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::{SubsetMask, MAX_POINTS};

/// A tree on `vertices` vertices; `placement[x]` is the vertex carrying ground point `x`.
///
/// Serialized as `{ "vertices": int, "edges": [[u, v, w]], "placement": [int] }`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TreeJson", into = "TreeJson")]
pub struct WeightedTree {
    vertices: usize,
    edges: Vec<(usize, usize, f64)>,
    placement: Vec<usize>,
    adjacency: Vec<Vec<(usize, f64)>>,
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    vertices: usize,
    edges: Vec<(usize, usize, f64)>,
    placement: Vec<usize>,
}

impl TryFrom<TreeJson> for WeightedTree {
    type Error = Error;

    fn try_from(j: TreeJson) -> Result<Self> {
        Self::new(j.vertices, j.edges, j.placement)
    }
}

impl From<WeightedTree> for TreeJson {
    fn from(t: WeightedTree) -> Self {
        Self {
            vertices: t.vertices,
            edges: t.edges,
            placement: t.placement,
        }
    }
}

impl WeightedTree {
    /// Validates `vertices - 1` positive edges forming a connected acyclic graph.
    pub fn new(vertices: usize, edges: Vec<(usize, usize, f64)>, placement: Vec<usize>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::InvalidTree("no vertices".into()));
        }
        if edges.len() != vertices - 1 {
            return Err(Error::InvalidTree(format!(
                "{} edges for {vertices} vertices",
                edges.len()
            )));
        }
        if placement.is_empty() || placement.len() > MAX_POINTS {
            return Err(Error::InvalidTree(format!(
                "placement covers {} ground points",
                placement.len()
            )));
        }
        if let Some(&v) = placement.iter().find(|&&v| v >= vertices) {
            return Err(Error::InvalidTree(format!("placement on missing vertex {v}")));
        }
        let mut adjacency = vec![Vec::new(); vertices];
        for &(u, v, w) in &edges {
            if u >= vertices || v >= vertices || u == v {
                return Err(Error::InvalidTree(format!("bad edge ({u},{v})")));
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidTree(format!("edge ({u},{v}) has weight {w}")));
            }
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        }
        // n-1 edges plus connectivity implies acyclic.
        let mut seen = vec![false; vertices];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for &(v, _) in &adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidTree("not connected".into()));
        }
        Ok(Self {
            vertices,
            edges,
            placement,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn placement(&self) -> &[usize] {
        &self.placement
    }

    /// Number of ground points placed on the tree.
    pub fn ground_len(&self) -> usize {
        self.placement.len()
    }

    pub(crate) fn adjacency(&self) -> &[Vec<(usize, f64)>] {
        &self.adjacency
    }

    /// Sum of edge weights.
    pub fn total_length(&self) -> f64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    /// Path lengths from vertex `from` to every vertex.
    pub fn distances_from(&self, from: usize) -> Vec<f64> {
        let mut dist = vec![f64::NAN; self.vertices];
        dist[from] = 0.0;
        let mut stack = vec![from];
        while let Some(u) = stack.pop() {
            for &(v, w) in &self.adjacency[u] {
                if dist[v].is_nan() {
                    dist[v] = dist[u] + w;
                    stack.push(v);
                }
            }
        }
        dist
    }

    /// Tree distance between the placements of ground points `x` and `y`.
    pub fn ground_distance(&self, x: usize, y: usize) -> f64 {
        self.distances_from(self.placement[x])[self.placement[y]]
    }

    /// All pairwise tree distances between ground points, `n x n`.
    pub fn ground_distances(&self) -> Vec<Vec<f64>> {
        (0..self.ground_len())
            .map(|x| {
                let d = self.distances_from(self.placement[x]);
                self.placement.iter().map(|&p| d[p]).collect()
            })
            .collect()
    }

    /// Weight of the minimal subtree spanning the placements of `a`.
    pub fn diversity(&self, a: SubsetMask) -> Result<f64> {
        if let Some(i) = a.iter().find(|&i| i >= self.placement.len()) {
            return Err(Error::Unplaced(i));
        }
        Ok(self.diversity_unchecked(a))
    }

    /// Leaf pruning: strip unmarked leaves until every leaf carries a member of `a`.
    pub(crate) fn diversity_unchecked(&self, a: SubsetMask) -> f64 {
        if a.len() <= 1 {
            return 0.0;
        }
        let mut marked = vec![false; self.vertices];
        for i in a.iter() {
            marked[self.placement[i]] = true;
        }
        let mut degree: Vec<usize> = self.adjacency.iter().map(Vec::len).collect();
        let mut removed = vec![false; self.vertices];
        let mut leaves: Vec<usize> = (0..self.vertices)
            .filter(|&v| degree[v] <= 1 && !marked[v])
            .collect();
        while let Some(v) = leaves.pop() {
            if removed[v] {
                continue;
            }
            removed[v] = true;
            for &(u, _) in &self.adjacency[v] {
                if !removed[u] {
                    degree[u] -= 1;
                    if degree[u] <= 1 && !marked[u] {
                        leaves.push(u);
                    }
                }
            }
        }
        self.edges
            .iter()
            .filter(|&&(u, v, _)| !removed[u] && !removed[v])
            .map(|e| e.2)
            .sum()
    }
}
