use crate::error::{Error, Result};
use crate::linalg::determinant;
use crate::scalar::Scalar;

/// Relative determinant slack clamped to zero volume.
pub const EMBEDDING_TOLERANCE: f64 = 1e-12;

/// Euclidean volume of the simplex spanned by `d + 1` points, given their
/// pairwise distances as a `(d+1)×(d+1)` symmetric matrix.
///
/// `V² = (-1)^(d+1) det(CM) / (2^d (d!)²)` where `CM` is the distance-squared
/// matrix bordered by ones. Negative `V²` down to `-1e-12` (relative to the
/// largest squared distance to the power `d`) clamps to zero.
pub fn cayley_menger_volume<T: Scalar>(dist: &[Vec<T>]) -> Result<T> {
    let n = dist.len();
    for row in dist {
        if row.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: row.len() });
        }
    }
    if n <= 1 {
        return Ok(T::zero());
    }
    let d = n - 1;
    for i in 0..n {
        for j in i + 1..n {
            if dist[i][j] == T::zero() {
                return Ok(T::zero());
            }
        }
    }
    let scale = dist.iter().flatten().map(|&x| x * x).fold(T::zero(), T::max);
    let mut cm = vec![vec![T::one(); n + 1]; n + 1];
    cm[0][0] = T::zero();
    for i in 0..n {
        for j in 0..n {
            // scaled to unit largest squared distance for conditioning
            cm[i + 1][j + 1] = dist[i][j] * dist[i][j] / scale;
        }
    }
    let det = determinant(cm);
    let factorial: T = (1..=d).map(T::from_count).fold(T::one(), |acc, k| acc * k);
    let sign = if (d + 1).is_multiple_of(2) { T::one() } else { -T::one() };
    let scaled_v2 = sign * det / (T::lit(2.0).powi(d as i32) * factorial * factorial);
    if scaled_v2 < -T::tol(EMBEDDING_TOLERANCE) {
        return Err(Error::NonEmbeddable(scaled_v2.as_f64()));
    }
    Ok(scaled_v2.max(T::zero()).sqrt() * scale.sqrt().powi(d as i32))
}
