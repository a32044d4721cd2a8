//! Benchmark plans: random instances of one family, embedded by one method,
//! with the distortion of each trial recorded.

use std::time::Instant;

use clap::{Args, ValueEnum};
use divembed::families::HyperEdge;
use divembed::generate::{
    random_euclidean_metric, random_graph_metric, random_hypergraph, random_points,
    random_symmetric_profile, random_tree, seeded_rng,
};
use divembed::instance::{DiversitySpec, Instance};
use divembed::{exact_distortion, sampled_distortion, Distortion, Error, FiniteMetric, Result};
use rayon::prelude::*;
use serde::Serialize;

use crate::methods::{embed, EmbedOptions, Method};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Steiner,
    #[value(alias = "diam")]
    Diameter,
    Ball,
    Tsp,
    Hypergraph,
    Discrete,
    Cardinality,
    Symmetric,
    Tree,
    L1,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Self::Steiner => "steiner",
            Self::Diameter => "diameter",
            Self::Ball => "ball",
            Self::Tsp => "tsp",
            Self::Hypergraph => "hypergraph",
            Self::Discrete => "discrete",
            Self::Cardinality => "cardinality",
            Self::Symmetric => "symmetric",
            Self::Tree => "tree",
            Self::L1 => "l1",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MetricSource {
    /// Shortest paths in a random connected graph.
    Graph,
    /// Random points in the unit square.
    Euclidean,
}

#[derive(Args, Clone, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, value_enum)]
    pub method: Method,
    /// Ground-set sizes, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n: Vec<usize>,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[command(flatten)]
    pub embed: EmbedOptions,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Metric behind the steiner, diameter, ball and tsp families.
    #[arg(long, value_enum, default_value = "graph")]
    pub metric: MetricSource,
    /// Largest n measured exactly; larger sizes use sampled distortion.
    #[arg(long, default_value_t = 16)]
    pub exact_limit: usize,
    /// Random subsets per sampled measurement.
    #[arg(long, default_value_t = 20_000)]
    pub samples: usize,
}

/// One CSV line: a trial, or a per-`n` summary with `trial` = `mean` / `max`.
#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub family: &'static str,
    pub method: &'static str,
    pub n: usize,
    pub trial: String,
    pub seed: Option<u64>,
    /// `None` when infinite.
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    /// A number, `"unbounded"`, or null for failed trials.
    pub c: Option<serde_json::Value>,
    pub runtime_ms: f64,
    /// `ok`, the error for a failed trial, or `k/t ok` on summary rows.
    pub status: String,
}

/// Seed of trial `trial` at size `n`; recorded in each row so a trial can be rerun alone.
pub fn trial_seed(seed: u64, n: usize, trial: usize) -> u64 {
    seed.wrapping_add((n as u64) << 32).wrapping_add(trial as u64)
}

fn metric(source: MetricSource, n: usize, seed: u64) -> Result<FiniteMetric> {
    let mut rng = seeded_rng(seed);
    match source {
        MetricSource::Graph => random_graph_metric(&mut rng, n, 0.3),
        MetricSource::Euclidean => random_euclidean_metric(&mut rng, n, 2),
    }
}

/// The random instance a trial measures.
pub fn instance(family: Family, source: MetricSource, n: usize, seed: u64) -> Result<Instance> {
    let mut rng = seeded_rng(seed);
    let on_metric = |spec| Ok(Instance::new(n, spec).with_metric(metric(source, n, seed)?));
    match family {
        Family::Steiner => on_metric(DiversitySpec::Steiner),
        Family::Diameter => on_metric(DiversitySpec::Diameter),
        Family::Ball => on_metric(DiversitySpec::Ball),
        Family::Tsp => on_metric(DiversitySpec::Tsp),
        Family::Discrete => Ok(Instance::new(n, DiversitySpec::Discrete)),
        Family::Cardinality => Ok(Instance::new(n, DiversitySpec::Cardinality)),
        Family::Hypergraph => {
            let h = random_hypergraph(&mut rng, n, n + 1, 3.min(n))?;
            let edges = h
                .edges()
                .iter()
                .map(|&(m, weight)| HyperEdge {
                    vertices: m.to_vec(),
                    weight,
                })
                .collect();
            Ok(Instance::new(n, DiversitySpec::Hypergraph { edges }))
        }
        Family::Symmetric => Ok(Instance::new(
            n,
            DiversitySpec::Symmetric {
                f: random_symmetric_profile(&mut rng, n)?.values().to_vec(),
            },
        )),
        Family::Tree => Ok(Instance::new(
            n,
            DiversitySpec::Tree {
                tree: random_tree(&mut rng, n, n / 2)?,
            },
        )),
        Family::L1 => Ok(Instance::new(n, DiversitySpec::L1).with_points(random_points(&mut rng, n, 3)?)),
    }
}

fn run_trial(plan: &BenchArgs, n: usize, trial: usize) -> BenchRow {
    let seed = trial_seed(plan.seed, n, trial);
    let start = Instant::now();
    let outcome = (|| {
        let inst = instance(plan.family, plan.metric, n, seed)?;
        let oracle = inst.oracle()?;
        let emb = embed(&inst, plan.method, &plan.embed, seed)?;
        if n <= plan.exact_limit {
            exact_distortion(&oracle, &emb)
        } else {
            sampled_distortion(&oracle, &emb, plan.samples, seed)
        }
    })();
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut row = BenchRow {
        family: plan.family.name(),
        method: plan.method.name(),
        n,
        trial: trial.to_string(),
        seed: Some(seed),
        c1: None,
        c2: None,
        c: None,
        runtime_ms,
        status: "ok".into(),
    };
    match outcome {
        Ok(r) => {
            row.c1 = r.c1.is_finite().then_some(r.c1);
            row.c2 = Some(r.c2);
            row.c = Some(c_value(r.c));
        }
        Err(e) => row.status = e.to_string(),
    }
    row
}

fn c_value(c: Distortion) -> serde_json::Value {
    match c {
        Distortion::Finite(c) => serde_json::json!(c),
        Distortion::Unbounded => serde_json::json!("unbounded"),
    }
}

fn summaries(rows: &[BenchRow]) -> [BenchRow; 2] {
    let ok: Vec<&BenchRow> = rows.iter().filter(|r| r.status == "ok").collect();
    let unbounded = ok.iter().any(|r| r.c.as_ref().is_some_and(|c| c.is_string()));
    let cs: Vec<f64> = ok.iter().filter_map(|r| r.c.as_ref().and_then(|c| c.as_f64())).collect();
    let c1_inf = ok.iter().any(|r| r.c1.is_none());
    let c1s: Vec<f64> = ok.iter().filter_map(|r| r.c1).collect();
    let c2s: Vec<f64> = ok.iter().filter_map(|r| r.c2).collect();
    let times: Vec<f64> = rows.iter().map(|r| r.runtime_ms).collect();
    let mean = |v: &[f64]| (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64);
    let max = |v: &[f64]| v.iter().copied().reduce(f64::max);
    let status = format!("{}/{} ok", ok.len(), rows.len());
    let make = |label: &str, agg: &dyn Fn(&[f64]) -> Option<f64>| BenchRow {
        family: rows[0].family,
        method: rows[0].method,
        n: rows[0].n,
        trial: label.into(),
        seed: None,
        c1: if c1_inf { None } else { agg(&c1s) },
        c2: agg(&c2s),
        c: if unbounded {
            Some(serde_json::json!("unbounded"))
        } else {
            agg(&cs).map(|c| serde_json::json!(c))
        },
        runtime_ms: agg(&times).unwrap_or(0.0),
        status: status.clone(),
    };
    [make("mean", &mean), make("max", &max)]
}

/// Runs every `(n, trial)` pair, in parallel, and returns the rows in
/// `(n, trial)` order with two summary rows after each `n`.
pub fn run(plan: &BenchArgs) -> Result<Vec<BenchRow>> {
    if plan.trials == 0 {
        return Err(Error::InvalidParam("--trials must be at least 1".into()));
    }
    if let Some(&bad) = plan.n.iter().find(|&&n| n < 2) {
        return Err(Error::InvalidParam(format!("n = {bad} is below 2")));
    }
    let tasks: Vec<(usize, usize)> = plan
        .n
        .iter()
        .flat_map(|&n| (0..plan.trials).map(move |t| (n, t)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(plan.jobs.unwrap_or(0))
        .build()
        .map_err(|e| Error::InvalidParam(format!("thread pool: {e}")))?;
    let rows: Vec<BenchRow> = pool.install(|| tasks.par_iter().map(|&(n, t)| run_trial(plan, n, t)).collect());
    let mut out = Vec::with_capacity(rows.len() + 2 * plan.n.len());
    for chunk in rows.chunks(plan.trials) {
        out.extend_from_slice(chunk);
        out.extend(summaries(chunk));
    }
    Ok(out)
}

pub fn fmt_float(x: f64) -> String {
    if x.is_finite() {
        x.to_string()
    } else {
        "unbounded".into()
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

pub const CSV_HEADER: [&str; 10] = [
    "family",
    "method",
    "n",
    "trial",
    "seed",
    "c1",
    "c2",
    "c",
    "runtime_ms",
    "status",
];

pub fn to_csv(rows: &[BenchRow]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in rows {
        let c = match &r.c {
            Some(serde_json::Value::String(s)) => s.clone(),
            Some(v) => v.as_f64().map(fmt_float).unwrap_or_default(),
            None => String::new(),
        };
        // A failed trial's c1 stays empty; an unbounded one reads "unbounded".
        let c1 = if r.c.is_some() && r.c1.is_none() {
            "unbounded".into()
        } else {
            opt(r.c1)
        };
        w.write_record([
            r.family.to_string(),
            r.method.to_string(),
            r.n.to_string(),
            r.trial.clone(),
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
            c1,
            opt(r.c2),
            c,
            format!("{:.3}", r.runtime_ms),
            r.status.clone(),
        ])?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
