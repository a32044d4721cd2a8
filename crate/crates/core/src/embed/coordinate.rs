use crate::embedding::{EmbeddingMethod, PointEmbedding};
use crate::error::Result;
use crate::oracle::{induced_metric, DiversityOracle};

/// `φ(x) = (d(x, x_1), ..., d(x, x_n))` for the induced metric `d`.
///
/// Monotonicity of `δ` bounds every coordinate range by `δ(A)`, and the
/// coordinates indexed by `A` itself already sum to at least `δ(A)`, so
/// `δ(A) <= δ̂(φ(A)) <= n δ(A)`.
pub fn coordinate_embed(delta: &DiversityOracle) -> Result<PointEmbedding> {
    let d = induced_metric(delta)?;
    let n = d.len();
    let coords = (0..n).flat_map(|i| d.row(i).to_vec()).collect();
    PointEmbedding::new(n, n, coords, EmbeddingMethod::Coordinate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::eval_l1_diversity;
    use crate::subset::SubsetMask;

    #[test]
    fn discrete_three_points() {
        let e = coordinate_embed(&DiversityOracle::discrete(3).unwrap()).unwrap();
        assert_eq!(
            e.rows(),
            vec![vec![0.0, 1.0, 1.0], vec![1.0, 0.0, 1.0], vec![1.0, 1.0, 0.0]]
        );
        assert_eq!(eval_l1_diversity(&e, SubsetMask::pair(0, 1)).unwrap(), 2.0);
        assert_eq!(eval_l1_diversity(&e, SubsetMask::full(3)).unwrap(), 3.0);
    }

    #[test]
    fn single_point() {
        let e = coordinate_embed(&DiversityOracle::discrete(1).unwrap()).unwrap();
        assert_eq!(e.rows(), vec![vec![0.0]]);
        assert_eq!(eval_l1_diversity(&e, SubsetMask::full(1)).unwrap(), 0.0);
    }
}
