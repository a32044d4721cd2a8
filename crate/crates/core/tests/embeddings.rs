use divembed::embed::{bourgain_embed_metric, frt_embed, frt_sample_tree, tree_to_l1, BourgainConfig, TreeEnsemble};
use divembed::generate::{random_graph_metric, seeded_rng};
use divembed::{ensemble_stretch, FiniteMetric, PointEmbedding};

fn l1(emb: &PointEmbedding, u: usize, v: usize) -> f64 {
    emb.row(u).iter().zip(emb.row(v)).map(|(a, b)| (a - b).abs()).sum()
}

/// Pairwise distortion `max ratio / min ratio` of `emb` against `d`.
fn metric_distortion(d: &FiniteMetric, emb: &PointEmbedding) -> f64 {
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for u in 0..d.len() {
        for v in u + 1..d.len() {
            let r = l1(emb, u, v) / d.get(u, v);
            lo = lo.min(r);
            hi = hi.max(r);
        }
    }
    hi / lo
}

#[test]
fn discrete_metric_stretch_is_logarithmic() {
    for n in [8, 16] {
        let d = FiniteMetric::discrete(n);
        let ensemble = TreeEnsemble::sample(&d, 200, n as u64).unwrap();
        let stats = ensemble_stretch(&d, &ensemble).unwrap();
        assert!(stats.min_single_stretch >= 1.0 - 1e-12);
        assert!(
            stats.max_mean_stretch <= 8.0 * (n as f64).ln(),
            "n = {n}: {}",
            stats.max_mean_stretch
        );
        assert_eq!(stats.samples, 200);
    }
}

#[test]
fn single_sample_embedding_is_one_tree() {
    let d = random_graph_metric(&mut seeded_rng(3), 9, 0.3).unwrap();
    let one = frt_embed(&d, 1, 42).unwrap();
    let tree = tree_to_l1(&frt_sample_tree(&d, 42).unwrap());
    for u in 0..9 {
        for v in 0..9 {
            assert!((l1(&one, u, v) - l1(&tree, u, v)).abs() <= 1e-12 * l1(&tree, u, v).max(1.0));
        }
    }
}

#[test]
fn frt_embedding_dominates_pairs() {
    let d = random_graph_metric(&mut seeded_rng(4), 12, 0.2).unwrap();
    let emb = frt_embed(&d, 32, 5).unwrap();
    for u in 0..12 {
        for v in u + 1..12 {
            assert!(l1(&emb, u, v) >= d.get(u, v) * (1.0 - 1e-12));
        }
    }
}

#[test]
fn bourgain_on_discrete_metric_with_extra_samples() {
    let n = 16;
    let d = FiniteMetric::discrete(n);
    for seed in 0..10 {
        let mut cfg = BourgainConfig::for_size(n, seed);
        cfg.samples_per_scale *= 4;
        let emb = bourgain_embed_metric(&d, &cfg).unwrap();
        assert_eq!(emb.k(), cfg.scales * cfg.samples_per_scale);
        let c = metric_distortion(&d, &emb);
        assert!(c <= 2.0 * (n as f64).ln(), "seed {seed}: {c}");
    }
}

#[test]
fn bourgain_coordinates_are_contractive() {
    // Each coordinate is 1-Lipschitz, and the scaling divides by the coordinate count.
    let d = random_graph_metric(&mut seeded_rng(6), 20, 0.25).unwrap();
    let emb = bourgain_embed_metric(&d, &BourgainConfig::for_size(20, 9)).unwrap();
    for u in 0..20 {
        for v in u + 1..20 {
            assert!(l1(&emb, u, v) <= d.get(u, v) * (1.0 + 1e-12));
        }
    }
}
