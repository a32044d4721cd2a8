//! Validated finite metric spaces.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subset::MAX_POINTS;

/// Relative tolerance shared by every numeric inequality check in the crate.
pub const REL_TOL: f64 = 1e-9;

/// `lhs <= rhs` up to `REL_TOL * max(1, |lhs|, |rhs|)`.
pub fn approx_le(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + REL_TOL * 1f64.max(lhs.abs()).max(rhs.abs())
}

/// One failed metric condition with its witness indices.
#[derive(Clone, Debug, PartialEq)]
pub enum MetricViolation {
    NonzeroDiagonal { i: usize, value: f64 },
    Asymmetric { i: usize, j: usize, ij: f64, ji: f64 },
    Negative { i: usize, j: usize, value: f64 },
    NotFinite { i: usize, j: usize },
    ZeroOffDiagonal { i: usize, j: usize },
    /// `d(i,k) > d(i,j) + d(j,k)`.
    Triangle { i: usize, j: usize, k: usize },
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Self::NonzeroDiagonal { i, value } => write!(f, "d({i},{i}) = {value} != 0"),
            Self::Asymmetric { i, j, ij, ji } => write!(f, "d({i},{j}) = {ij} != d({j},{i}) = {ji}"),
            Self::Negative { i, j, value } => write!(f, "d({i},{j}) = {value} < 0"),
            Self::NotFinite { i, j } => write!(f, "d({i},{j}) is not finite"),
            Self::ZeroOffDiagonal { i, j } => write!(f, "d({i},{j}) = 0 for distinct points"),
            Self::Triangle { i, j, k } => write!(f, "d({i},{k}) > d({i},{j}) + d({j},{k})"),
        }
    }
}

/// A symmetric distance matrix on `n` points satisfying the metric axioms.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<f64>>", into = "Vec<Vec<f64>>")]
pub struct FiniteMetric {
    n: usize,
    dist: Vec<f64>,
}

impl fmt::Debug for FiniteMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteMetric")
            .field("n", &self.n)
            .field("dist", &self.rows())
            .finish()
    }
}

impl TryFrom<Vec<Vec<f64>>> for FiniteMetric {
    type Error = Error;

    fn try_from(rows: Vec<Vec<f64>>) -> Result<Self> {
        validate_metric(&rows)
    }
}

impl From<FiniteMetric> for Vec<Vec<f64>> {
    fn from(m: FiniteMetric) -> Self {
        m.rows()
    }
}

/// Checks every metric condition on a square matrix and returns all failures.
pub fn validate_metric<R: AsRef<[f64]>>(rows: &[R]) -> Result<FiniteMetric> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::InvalidGround("metric must have at least one point".into()));
    }
    if n > MAX_POINTS {
        return Err(Error::CapExceeded {
            what: "metric size",
            got: n,
            cap: MAX_POINTS,
        });
    }
    for (row, r) in rows.iter().enumerate() {
        if r.as_ref().len() != n {
            return Err(Error::NotSquare {
                row,
                len: r.as_ref().len(),
                n,
            });
        }
    }
    let at = |i: usize, j: usize| rows[i].as_ref()[j];

    let mut violations = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let v = at(i, j);
            if !v.is_finite() {
                violations.push(MetricViolation::NotFinite { i, j });
            } else if i == j && v != 0.0 {
                violations.push(MetricViolation::NonzeroDiagonal { i, value: v });
            } else if v < 0.0 {
                violations.push(MetricViolation::Negative { i, j, value: v });
            } else if i < j && v == 0.0 {
                violations.push(MetricViolation::ZeroOffDiagonal { i, j });
            }
            if i < j && at(i, j) != at(j, i) && v.is_finite() {
                violations.push(MetricViolation::Asymmetric {
                    i,
                    j,
                    ij: at(i, j),
                    ji: at(j, i),
                });
            }
        }
    }
    if violations.is_empty() {
        for i in 0..n {
            for k in i + 1..n {
                for j in 0..n {
                    if j != i && j != k && !approx_le(at(i, k), at(i, j) + at(j, k)) {
                        violations.push(MetricViolation::Triangle { i, j, k });
                    }
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(Error::InvalidMetric(violations));
    }

    let dist = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
    Ok(FiniteMetric { n, dist })
}

impl FiniteMetric {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.dist[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.dist.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn diameter(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }

    /// Smallest distance between distinct points, `None` when `n == 1`.
    pub fn min_positive(&self) -> Option<f64> {
        (0..self.n)
            .flat_map(|i| (i + 1..self.n).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j))
            .reduce(f64::min)
    }

    /// Multiplies every distance by `factor > 0`.
    #[must_use]
    pub fn scaled(&self, factor: f64) -> Self {
        assert!(factor > 0.0 && factor.is_finite());
        Self {
            n: self.n,
            dist: self.dist.iter().map(|d| d * factor).collect(),
        }
    }

    /// The unit discrete metric: every pair at distance 1.
    pub fn discrete(n: usize) -> Self {
        let dist = (0..n * n)
            .map(|ij| if ij / n == ij % n { 0.0 } else { 1.0 })
            .collect();
        Self { n, dist }
    }

    /// Shortest-path metric of a connected weighted graph given as an edge list.
    /// Parallel edges keep their minimum weight.
    pub fn shortest_paths(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let mut d = vec![f64::INFINITY; n * n];
        for i in 0..n {
            d[i * n + i] = 0.0;
        }
        for &(u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::IndexOutOfRange { index: u.max(v), n });
            }
            if !(w > 0.0 && w.is_finite()) {
                return Err(Error::InvalidParam(format!("edge ({u},{v}) has weight {w}")));
            }
            if u != v && w < d[u * n + v] {
                d[u * n + v] = w;
                d[v * n + u] = w;
            }
        }
        for k in 0..n {
            for i in 0..n {
                let dik = d[i * n + k];
                if dik.is_infinite() {
                    continue;
                }
                for j in 0..n {
                    let through = dik + d[k * n + j];
                    if through < d[i * n + j] {
                        d[i * n + j] = through;
                    }
                }
            }
        }
        if d.iter().any(|x| x.is_infinite()) {
            return Err(Error::Disconnected);
        }
        let rows: Vec<&[f64]> = d.chunks(n).collect();
        validate_metric(&rows)
    }

    /// Euclidean distances between rows of `points`.
    pub fn euclidean<P: AsRef<[f64]>>(points: &[P]) -> Result<Self> {
        Self::from_points(points, |a, b| {
            a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
        })
    }

    /// Manhattan distances between rows of `points`.
    pub fn manhattan<P: AsRef<[f64]>>(points: &[P]) -> Result<Self> {
        Self::from_points(points, |a, b| a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum())
    }

    fn from_points<P: AsRef<[f64]>>(points: &[P], norm: impl Fn(&[f64], &[f64]) -> f64) -> Result<Self> {
        let n = points.len();
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| norm(points[i].as_ref(), points[j].as_ref()))
                    .collect()
            })
            .collect();
        validate_metric(&rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_three_points_is_valid() {
        let rows = vec![vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]];
        let m = validate_metric(&rows).unwrap();
        assert_eq!(m, FiniteMetric::discrete(3));
    }

    #[test]
    fn triangle_violation_has_witness() {
        let rows = vec![vec![0.0, 1.0, 5.0], vec![1.0, 0.0, 1.0], vec![5.0, 1.0, 0.0]];
        match validate_metric(&rows) {
            Err(Error::InvalidMetric(v)) => {
                assert_eq!(v, vec![MetricViolation::Triangle { i: 0, j: 1, k: 2 }]);
            }
            other => panic!("expected triangle violation, got {other:?}"),
        }
    }

    #[test]
    fn asymmetry_reported_at_pair() {
        let rows = vec![vec![0.0, 1.0], vec![2.0, 0.0]];
        match validate_metric(&rows) {
            Err(Error::InvalidMetric(v)) => assert!(v.contains(&MetricViolation::Asymmetric {
                i: 0,
                j: 1,
                ij: 1.0,
                ji: 2.0
            })),
            other => panic!("expected asymmetry, got {other:?}"),
        }
    }

    #[test]
    fn all_conditions_reported_together() {
        let rows = vec![
            vec![1.0, -1.0, 0.0],
            vec![-1.0, 0.0, 1.0],
            vec![0.0, 1.0, 0.0],
        ];
        let Err(Error::InvalidMetric(v)) = validate_metric(&rows) else {
            panic!("expected failure");
        };
        assert!(v.contains(&MetricViolation::NonzeroDiagonal { i: 0, value: 1.0 }));
        assert!(v.contains(&MetricViolation::Negative { i: 0, j: 1, value: -1.0 }));
        assert!(v.contains(&MetricViolation::ZeroOffDiagonal { i: 0, j: 2 }));
    }

    #[test]
    fn duplicate_points_rejected() {
        let pts = vec![vec![0.0, 0.0], vec![0.0, 0.0]];
        assert!(matches!(FiniteMetric::euclidean(&pts), Err(Error::InvalidMetric(_))));
    }

    #[test]
    fn non_square_rejected() {
        let rows = vec![vec![0.0, 1.0], vec![1.0]];
        assert!(matches!(validate_metric(&rows), Err(Error::NotSquare { row: 1, .. })));
    }

    #[test]
    fn shortest_paths_on_path_graph() {
        let m = FiniteMetric::shortest_paths(4, &[(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        assert_eq!(m.get(0, 3), 3.0);
        assert_eq!(m.get(3, 1), 2.0);
        assert!(matches!(
            FiniteMetric::shortest_paths(3, &[(0, 1, 1.0)]),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn serde_roundtrip_validates() {
        let m = FiniteMetric::discrete(3);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(serde_json::from_str::<FiniteMetric>(&json).unwrap(), m);
        assert!(serde_json::from_str::<FiniteMetric>("[[0,1],[2,0]]").is_err());
    }
}
