//! Steiner diversity via the Dreyfus–Wagner dynamic program.
//!
//! The metric is read as a complete graph on `X` whose edge weights already
//! satisfy the triangle inequality, so it is its own shortest-path closure and
//! Steiner points range over `X`.

use crate::error::{Error, Result};
use crate::metric::FiniteMetric;
use crate::subset::{SubsetMask, EXHAUSTIVE_CAP};

/// Terminal cap for a single [`steiner_diversity`] query.
pub const DREYFUS_WAGNER_CAP: usize = 12;

/// Minimum weight of a tree in the complete graph on `X` connecting `a`.
pub fn steiner_diversity(d: &FiniteMetric, a: SubsetMask) -> Result<f64> {
    if let Some(i) = a.max_index().filter(|&i| i >= d.len()) {
        return Err(Error::IndexOutOfRange { index: i, n: d.len() });
    }
    if a.len() > DREYFUS_WAGNER_CAP {
        return Err(Error::CapExceeded {
            what: "Steiner terminal count",
            got: a.len(),
            cap: DREYFUS_WAGNER_CAP,
        });
    }
    let terminals: Vec<usize> = a.iter().collect();
    Ok(dreyfus_wagner(d, &terminals))
}

/// `dp[S][v]` is the cheapest tree spanning `S ∪ {v}`, where `S` ranges over
/// subsets of all terminals except the last, which serves as the root.
fn dreyfus_wagner(d: &FiniteMetric, terminals: &[usize]) -> f64 {
    match terminals {
        [] | [_] => return 0.0,
        [a, b] => return d.get(*a, *b),
        _ => {}
    }
    let n = d.len();
    let (root, rest) = terminals.split_last().expect("at least three terminals");
    let k = rest.len();
    let mut dp = vec![f64::INFINITY; (1usize << k) * n];
    for (i, &t) in rest.iter().enumerate() {
        dp[(1 << i) * n..(1 << i) * n + n].copy_from_slice(d.row(t));
    }
    let mut merged = vec![0.0; n];
    for s in 1usize..1 << k {
        if s.is_power_of_two() {
            continue;
        }
        merge_and_relax(d, &mut dp, s, &mut merged);
    }
    dp[((1 << k) - 1) * n + root]
}

/// Fills `dp[s][*]` from its two-way splits, then lets the tree hang off any vertex.
fn merge_and_relax(d: &FiniteMetric, dp: &mut [f64], s: usize, merged: &mut [f64]) {
    let n = d.len();
    let low = s & s.wrapping_neg();
    let rest = s ^ low;
    merged.fill(f64::INFINITY);
    // Splits with the low bit on the left side; each unordered split seen once.
    let mut t = rest;
    loop {
        let left = low | t;
        let right = s ^ left;
        if right != 0 {
            let (l, r) = (&dp[left * n..left * n + n], &dp[right * n..right * n + n]);
            for v in 0..n {
                let c = l[v] + r[v];
                if c < merged[v] {
                    merged[v] = c;
                }
            }
        }
        if t == 0 {
            break;
        }
        t = (t - 1) & rest;
    }
    let out = &mut dp[s * n..s * n + n];
    for v in 0..n {
        let row = d.row(v);
        out[v] = (0..n)
            .map(|u| merged[u] + row[u])
            .fold(f64::INFINITY, f64::min);
    }
}

/// Steiner diversity of every subset of `X` in one pass, indexed by mask bits.
///
/// Runs Dreyfus–Wagner with all of `X` as the terminal pool:
/// `dp[S][v]` spans `S ∪ {v}`, so `δ_S(S) = dp[S][v]` for any `v ∈ S`.
pub fn steiner_table(d: &FiniteMetric) -> Vec<f64> {
    let n = d.len();
    assert!(n <= EXHAUSTIVE_CAP, "Steiner table over {n} points");
    let size = 1usize << n;
    let mut dp = vec![f64::INFINITY; size * n];
    for i in 0..n {
        dp[(1 << i) * n..(1 << i) * n + n].copy_from_slice(d.row(i));
    }
    let mut merged = vec![0.0; n];
    for s in 1..size {
        if s.is_power_of_two() {
            continue;
        }
        merge_and_relax(d, &mut dp, s, &mut merged);
    }
    (0..size)
        .map(|s| {
            if s.count_ones() <= 1 {
                0.0
            } else {
                dp[s * n + s.trailing_zeros() as usize]
            }
        })
        .collect()
}
