use crate::error::Result;
use crate::families::WeightedHypergraph;
use crate::metric::FiniteMetric;

/// Graph obtained by replacing each hyperedge with a spanning star.
#[derive(Clone, Debug)]
pub struct GraphReduction {
    /// Shortest-path metric of the graph.
    pub metric: FiniteMetric,
    /// Edge multiset `(u, v, w)`, one star per hyperedge in input order.
    pub edges: Vec<(usize, usize, f64)>,
    /// Largest hyperedge size `k`; the Steiner diversity of `metric` is within `k - 1` of `δ_H`.
    pub rank: usize,
}

/// Each hyperedge `U` becomes the star centred at `min U` with every edge weighted `w(U)`.
pub fn hypergraph_to_graph(h: &WeightedHypergraph) -> Result<GraphReduction> {
    let mut edges = Vec::new();
    for &(verts, w) in h.edges() {
        let centre = verts.first().expect("hyperedges have at least two vertices");
        edges.extend(verts.without(centre).iter().map(|v| (centre, v, w)));
    }
    let metric = FiniteMetric::shortest_paths(h.len(), &edges)?;
    Ok(GraphReduction {
        metric,
        edges,
        rank: h.rank(),
    })
}
