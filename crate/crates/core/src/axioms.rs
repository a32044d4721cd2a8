//! Exhaustive verification of the diversity axioms.
//!
//! (i) `δ(A) >= 0`; (ii) `δ(A) = 0` iff `|A| <= 1`;
//! (iii) `δ(A ∪ B) <= δ(A ∪ C) + δ(B ∪ C)` whenever `C` is nonempty.
//!
//! Axiom (iii) is scanned through `P = A ∪ C`, `Q = B ∪ C`. For fixed `P`, `Q`
//! the reachable unions `A ∪ B` are exactly the sets `(P △ Q) ∪ T` with
//! `T ⊆ P ∩ Q`, and `P ∩ Q` must be nonempty. The largest such value comes from
//! a precomputed interval-maximum table over disjoint pairs (`3^n` entries), so
//! the scan touches each `(P, Q)` once.

use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::approx_le;
use crate::oracle::DiversityOracle;
use crate::subset::{SubsetMask, AXIOM_SCAN_CAP};

/// Most violations kept in a report; the total is still counted.
pub const MAX_REPORTED: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    Nonnegative,
    ZeroIffSmall,
    Triangle,
}

/// One failed instance. For [`Axiom::Triangle`] the witness is `[A, B, C]`,
/// `lhs = δ(A ∪ B)` and `rhs = δ(A ∪ C) + δ(B ∪ C)`; otherwise it is `[A]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: Axiom,
    pub witness: Vec<SubsetMask>,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub passed: bool,
    pub violations: Vec<AxiomViolation>,
    pub violation_count: u64,
    pub monotone: bool,
    /// `[A, B]` with `A ⊆ B` and `δ(A) > δ(B)`.
    pub monotone_witness: Option<Vec<SubsetMask>>,
}

/// Runs every axiom over every subset (and every triple for axiom (iii)),
/// plus a separate monotonicity check. Requires `n <= 12`.
pub fn check_diversity_axioms(delta: &DiversityOracle) -> Result<AxiomReport> {
    let n = delta.len();
    if n > AXIOM_SCAN_CAP {
        return Err(Error::CapExceeded {
            what: "axiom scan size",
            got: n,
            cap: AXIOM_SCAN_CAP,
        });
    }
    let values = delta.values()?;
    let size = 1usize << n;
    let mut violations = Vec::new();
    let mut count = 0u64;

    for (bits, &v) in values.iter().enumerate() {
        let a = SubsetMask::from_bits(bits as u64);
        if v.is_nan() || v < 0.0 {
            count += 1;
            push_capped(&mut violations, Axiom::Nonnegative, vec![a], v, 0.0);
        }
        let small = a.len() <= 1;
        if (small && v != 0.0) || (!small && !(v > 0.0)) {
            count += 1;
            push_capped(&mut violations, Axiom::ZeroIffSmall, vec![a], v, 0.0);
        }
    }

    let (triangle, triangle_count) = triangle_scan(n, &values);
    count += triangle_count;
    for v in triangle {
        push_capped(&mut violations, v.axiom, v.witness, v.lhs, v.rhs);
    }

    let mut monotone_witness = None;
    'outer: for a in 0..size {
        for i in 0..n {
            let b = a | 1 << i;
            if b != a && !approx_le(values[a], values[b]) {
                monotone_witness = Some(vec![
                    SubsetMask::from_bits(a as u64),
                    SubsetMask::from_bits(b as u64),
                ]);
                break 'outer;
            }
        }
    }

    Ok(AxiomReport {
        passed: count == 0,
        violations,
        violation_count: count,
        monotone: monotone_witness.is_none(),
        monotone_witness,
    })
}

fn push_capped(out: &mut Vec<AxiomViolation>, axiom: Axiom, witness: Vec<SubsetMask>, lhs: f64, rhs: f64) {
    if out.len() < MAX_REPORTED {
        out.push(AxiomViolation {
            axiom,
            witness,
            lhs,
            rhs,
        });
    }
}

/// Triangle witnesses ordered by `(|C|, C, A, B)`, smallest first.
#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct WitnessKey(usize, u64, u64, u64);

fn triangle_scan(n: usize, values: &[f64]) -> (Vec<AxiomViolation>, u64) {
    let size = 1usize << n;
    let tern: Vec<usize> = (0..size)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| 3usize.pow(i as u32)).sum())
        .collect();
    let idx = |u: usize, i: usize| tern[u] + 2 * tern[i];

    // interval_max[(U, I)] = max_{T ⊆ I} δ(U ∪ T), for disjoint U, I.
    let mut interval_max = vec![f64::NEG_INFINITY; 3usize.pow(n as u32)];
    let mut by_size: Vec<usize> = (0..size).collect();
    by_size.sort_by_key(|m| m.count_ones());
    for &i in &by_size {
        let free = (size - 1) & !i;
        let mut u = free;
        loop {
            interval_max[idx(u, i)] = if i == 0 {
                values[u]
            } else {
                let low = i & i.wrapping_neg();
                let rest = i ^ low;
                interval_max[idx(u, rest)].max(interval_max[idx(u | low, rest)])
            };
            if u == 0 {
                break;
            }
            u = (u - 1) & free;
        }
    }

    let mut heap: BinaryHeap<(WitnessKey, usize, usize)> = BinaryHeap::new();
    let mut count = 0u64;
    for p in 1..size {
        for q in p..size {
            let inter = p & q;
            if inter == 0 {
                continue;
            }
            let lhs = interval_max[idx(p ^ q, inter)];
            if approx_le(lhs, values[p] + values[q]) {
                continue;
            }
            count += 1;
            let (a, b, c) = reconstruct(values, p, q);
            heap.push((WitnessKey(c.count_ones() as usize, c as u64, a as u64, b as u64), p, q));
            if heap.len() > MAX_REPORTED {
                heap.pop();
            }
        }
    }
    let mut kept = heap.into_sorted_vec();
    kept.truncate(MAX_REPORTED);
    let out = kept
        .into_iter()
        .map(|(WitnessKey(_, c, a, b), p, q)| AxiomViolation {
            axiom: Axiom::Triangle,
            witness: vec![
                SubsetMask::from_bits(a),
                SubsetMask::from_bits(b),
                SubsetMask::from_bits(c),
            ],
            lhs: values[(a | b) as usize],
            rhs: values[p] + values[q],
        })
        .collect();
    (out, count)
}

/// Recovers `(A, B, C)` for a violating `(P, Q)`, preferring the smallest `C`
/// among maximizing choices.
fn reconstruct(values: &[f64], p: usize, q: usize) -> (usize, usize, usize) {
    let inter = p & q;
    let sym = p ^ q;
    let mut best: Option<(f64, usize, usize)> = None;
    let mut t = inter;
    loop {
        let s = sym | t;
        let missing = inter & !t;
        let c = if missing != 0 { missing } else { inter & inter.wrapping_neg() };
        let v = values[s];
        let better = match best {
            None => true,
            Some((bv, bc, _)) => {
                v > bv || (v == bv && (c.count_ones(), c) < (bc.count_ones(), bc))
            }
        };
        if better {
            best = Some((v, c, s));
        }
        if t == 0 {
            break;
        }
        t = (t - 1) & inter;
    }
    let (_, c, s) = best.expect("at least one candidate");
    (p & s, q & s, c)
}
