use clap::{Args, ValueEnum};
use divembed::embed::{bourgain_embed_metric, coordinate_embed, frt_embed, hypergraph_to_graph, tree_to_l1, BourgainConfig};
use divembed::families::WeightedHypergraph;
use divembed::instance::{DiversitySpec, Instance};
use divembed::{induced_metric, EmbeddingMethod, Error, FiniteMetric, PointEmbedding, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Coordinate,
    Frt,
    Bourgain,
    Tree,
    HypergraphReduceThenFrt,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Self::Coordinate => "coordinate",
            Self::Frt => "frt",
            Self::Bourgain => "bourgain",
            Self::Tree => "tree",
            Self::HypergraphReduceThenFrt => "hypergraph-reduce-then-frt",
        }
    }
}

#[derive(Args, Clone, Debug)]
pub struct EmbedOptions {
    /// Number of random trees averaged by the frt methods.
    #[arg(long, default_value_t = 64)]
    pub m: usize,
    /// Bourgain scale count (default ⌊log2 n⌋).
    #[arg(long)]
    pub scales: Option<usize>,
    /// Bourgain samples per scale (default ⌈log2 n⌉).
    #[arg(long)]
    pub samples_per_scale: Option<usize>,
}

fn mismatch(method: Method, needs: &str) -> Error {
    Error::InvalidParam(format!("method {} requires {needs}", method.name()))
}

fn metric_source(inst: &Instance, method: Method) -> Result<FiniteMetric> {
    inst.metric()?
        .ok_or_else(|| mismatch(method, "an instance with a \"metric\" or \"points\" field"))
}

/// Runs `method` on `inst`. Bourgain falls back to the induced metric of the
/// diversity when the instance carries no metric of its own.
pub fn embed(inst: &Instance, method: Method, opts: &EmbedOptions, seed: u64) -> Result<PointEmbedding> {
    match method {
        Method::Coordinate => coordinate_embed(&inst.oracle()?),
        Method::Frt => frt_embed(&metric_source(inst, method)?, opts.m, seed),
        Method::Bourgain => {
            let d = match inst.metric()? {
                Some(d) => d,
                None => induced_metric(&inst.oracle()?)?,
            };
            let mut cfg = BourgainConfig::for_size(d.len(), seed);
            cfg.scales = opts.scales.unwrap_or(cfg.scales);
            cfg.samples_per_scale = opts.samples_per_scale.unwrap_or(cfg.samples_per_scale);
            bourgain_embed_metric(&d, &cfg)
        }
        Method::Tree => match &inst.diversity {
            DiversitySpec::Tree { tree } => Ok(tree_to_l1(tree)),
            _ => Err(mismatch(method, "a tree diversity")),
        },
        Method::HypergraphReduceThenFrt => match &inst.diversity {
            DiversitySpec::Hypergraph { edges } => {
                let h = WeightedHypergraph::new(inst.n, edges.clone())?;
                let g = hypergraph_to_graph(&h)?;
                Ok(frt_embed(&g.metric, opts.m, seed)?.with_method(EmbeddingMethod::HypergraphReduceThenFrt))
            }
            _ => Err(mismatch(method, "a hypergraph diversity")),
        },
    }
}
