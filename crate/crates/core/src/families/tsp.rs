//! TSP diversity: shortest closed tour through a subset (Held–Karp).

use crate::error::{Error, Result};
use crate::metric::FiniteMetric;
use crate::subset::SubsetMask;

/// Largest subset a single Held–Karp query accepts.
pub const HELD_KARP_CAP: usize = 14;

/// Length of the shortest closed tour visiting every point of `a`.
/// A pair gives `2 d(a, b)`.
pub fn tsp_diversity(d: &FiniteMetric, a: SubsetMask) -> Result<f64> {
    if let Some(i) = a.max_index().filter(|&i| i >= d.len()) {
        return Err(Error::IndexOutOfRange { index: i, n: d.len() });
    }
    if a.len() > HELD_KARP_CAP {
        return Err(Error::CapExceeded {
            what: "TSP subset size",
            got: a.len(),
            cap: HELD_KARP_CAP,
        });
    }
    Ok(held_karp(d, a))
}

/// `best[S][j]`: shortest path from the first member through `S`, ending at `j ∈ S`.
pub(crate) fn held_karp(d: &FiniteMetric, a: SubsetMask) -> f64 {
    let pts: Vec<usize> = a.iter().collect();
    let k = pts.len();
    if k <= 1 {
        return 0.0;
    }
    if k == 2 {
        return 2.0 * d.get(pts[0], pts[1]);
    }
    let start = pts[0];
    let others = &pts[1..];
    let m = others.len();
    let mut best = vec![f64::INFINITY; (1 << m) * m];
    for (j, &p) in others.iter().enumerate() {
        best[(1 << j) * m + j] = d.get(start, p);
    }
    for s in 1usize..1 << m {
        for j in 0..m {
            let cur = best[s * m + j];
            if s >> j & 1 == 0 || cur.is_infinite() {
                continue;
            }
            for (next, &p) in others.iter().enumerate() {
                if s >> next & 1 == 1 {
                    continue;
                }
                let t = s | 1 << next;
                let c = cur + d.get(others[j], p);
                if c < best[t * m + next] {
                    best[t * m + next] = c;
                }
            }
        }
    }
    let full = (1 << m) - 1;
    (0..m)
        .map(|j| best[full * m + j] + d.get(others[j], start))
        .fold(f64::INFINITY, f64::min)
}
