use clap::{Args, ValueEnum};
use divembed::generate::{
    path_metric, random_graph_metric, random_hypergraph, random_partition, random_points, seeded_rng, star_metric,
};
use divembed::families::HyperEdge;
use divembed::instance::{DiversitySpec, Instance};
use divembed::{Error, FiniteMetric, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    EuclideanPoints,
    L1Points,
    RandomGraphShortestPath,
    Discrete,
    Path,
    Star,
    HypergraphRandom,
    PartitionRandom,
}

/// Diversities that can sit on top of a metric.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricDiversity {
    Diameter,
    Steiner,
    Ball,
    Tsp,
}

impl MetricDiversity {
    pub fn spec(self) -> DiversitySpec {
        match self {
            Self::Diameter => DiversitySpec::Diameter,
            Self::Steiner => DiversitySpec::Steiner,
            Self::Ball => DiversitySpec::Ball,
            Self::Tsp => DiversitySpec::Tsp,
        }
    }
}

#[derive(Args, Clone, Debug)]
pub struct GenParams {
    /// Number of ground points.
    #[arg(long)]
    pub n: usize,
    /// Coordinate dimension for point clouds.
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    /// Probability of each non-tree edge in random graphs.
    #[arg(long, default_value_t = 0.3)]
    pub edge_prob: f64,
    /// Hyperedge count for random hypergraphs (default n + 1).
    #[arg(long)]
    pub edges: Option<usize>,
    /// Largest hyperedge size for random hypergraphs.
    #[arg(long, default_value_t = 3)]
    pub max_size: usize,
    /// Block count for random partitions.
    #[arg(long, default_value_t = 2)]
    pub blocks: usize,
    /// Diversity placed on metric-bearing kinds (default: diameter for point
    /// clouds, Steiner for graph metrics).
    #[arg(long, value_enum)]
    pub diversity: Option<MetricDiversity>,
}

/// Builds an instance of `kind`; every random choice comes from `seed`.
pub fn generate(kind: GenKind, p: &GenParams, seed: u64) -> Result<Instance> {
    let mut rng = seeded_rng(seed);
    let n = p.n;
    let on_metric = |m: FiniteMetric, default: MetricDiversity| {
        Instance::new(n, p.diversity.unwrap_or(default).spec()).with_metric(m)
    };
    if p.diversity.is_some()
        && matches!(
            kind,
            GenKind::L1Points | GenKind::Discrete | GenKind::HypergraphRandom | GenKind::PartitionRandom
        )
    {
        return Err(Error::InvalidParam("--diversity applies only to metric-bearing kinds".into()));
    }
    Ok(match kind {
        GenKind::EuclideanPoints => {
            let points = random_points(&mut rng, n, p.dim)?;
            FiniteMetric::euclidean(&points)?;
            Instance::new(n, p.diversity.unwrap_or(MetricDiversity::Diameter).spec()).with_points(points)
        }
        GenKind::L1Points => {
            let points = random_points(&mut rng, n, p.dim)?;
            FiniteMetric::manhattan(&points)?;
            Instance::new(n, DiversitySpec::L1).with_points(points)
        }
        GenKind::RandomGraphShortestPath => {
            on_metric(random_graph_metric(&mut rng, n, p.edge_prob)?, MetricDiversity::Steiner)
        }
        GenKind::Path => on_metric(path_metric(n)?, MetricDiversity::Steiner),
        GenKind::Star => on_metric(star_metric(n)?, MetricDiversity::Steiner),
        GenKind::Discrete => {
            divembed::GroundSet::new(n)?;
            Instance::new(n, DiversitySpec::Discrete)
        }
        GenKind::HypergraphRandom => {
            let h = random_hypergraph(&mut rng, n, p.edges.unwrap_or(n + 1), p.max_size)?;
            let edges = h
                .edges()
                .iter()
                .map(|&(vertices, weight)| HyperEdge {
                    vertices: vertices.to_vec(),
                    weight,
                })
                .collect();
            Instance::new(n, DiversitySpec::Hypergraph { edges })
        }
        GenKind::PartitionRandom => {
            let part = random_partition(&mut rng, n, p.blocks)?;
            let blocks = part.block_masks().iter().map(|b| b.to_vec()).collect();
            Instance::new(n, DiversitySpec::Partition { blocks })
        }
    })
}
