//! Spread measures of a point set on the sphere: the diameter, the largest
//! simplex volume, and the area of the geodesic convex hull.

mod cayley_menger;
mod hull;
mod triangle;

use itertools::Itertools;
use serde::Serialize;

pub use cayley_menger::{cayley_menger_volume, EMBEDDING_TOLERANCE};
pub use hull::{spherical_convex_hull_area, HullResult};
pub use triangle::{spherical_triangle_area, DEGENERATE_TOLERANCE};

use crate::error::{Error, Result};
use crate::metric::{DistanceMatrix, ProjectivePointSet};
use crate::scalar::Scalar;

/// Sorted, distinct vertex indices of a simplex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SimplexId {
    pub vertices: Vec<usize>,
}

impl SimplexId {
    pub fn new(mut vertices: Vec<usize>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self { vertices }
    }

    pub fn dimension(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }
}

/// How a simplex volume was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Arc length (d = 1) or spherical excess (d = 2).
    ExactSpherical,
    /// Euclidean volume of the chordal simplex (d ≥ 3).
    ChordalCayleyMenger,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureResult<T> {
    /// Radians for d = 1, steradians for d = 2, chordal volume for d ≥ 3.
    pub value: T,
    pub witness: SimplexId,
    pub method: Method,
}

/// Largest pairwise distance with its pair.
pub fn diameter<T: Scalar>(m: &DistanceMatrix<T>) -> Result<MeasureResult<T>> {
    max_simplex_volume(m, 1)
}

/// Largest `d`-simplex volume over all `(t choose d+1)` vertex subsets.
///
/// Ties keep the lexicographically smallest vertex set. For `d ≥ 3` the
/// simplex is measured through chords `2 sin(θ/2)`.
pub fn max_simplex_volume<T: Scalar>(m: &DistanceMatrix<T>, d: usize) -> Result<MeasureResult<T>> {
    if d == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    let t = m.dim();
    if t < d + 1 {
        return Err(Error::TooFewPoints { needed: d + 1, got: t });
    }
    let method = if d <= 2 { Method::ExactSpherical } else { Method::ChordalCayleyMenger };
    let mut best: Option<(T, Vec<usize>)> = None;
    for subset in (0..t).combinations(d + 1) {
        let value = simplex_volume(m, &subset)?;
        if best.as_ref().is_none_or(|(v, _)| value > *v) {
            best = Some((value, subset));
        }
    }
    let (value, vertices) = best.expect("at least one subset");
    Ok(MeasureResult { value, witness: SimplexId::new(vertices), method })
}

fn simplex_volume<T: Scalar>(m: &DistanceMatrix<T>, v: &[usize]) -> Result<T> {
    match v.len() {
        2 => Ok(m.get(v[0], v[1])),
        3 => spherical_triangle_area(m.get(v[0], v[1]), m.get(v[1], v[2]), m.get(v[0], v[2])),
        _ => {
            let half = T::lit(0.5);
            let chords: Vec<Vec<T>> =
                v.iter().map(|&i| v.iter().map(|&j| T::lit(2.0) * (m.get(i, j) * half).sin()).collect()).collect();
            cayley_menger_volume(&chords)
        }
    }
}

/// [`max_simplex_volume`] over the geodesic distances of lifted points.
pub fn max_simplex_volume_points<T: Scalar>(set: &ProjectivePointSet<T>, d: usize) -> Result<MeasureResult<T>> {
    max_simplex_volume(&set.distance_matrix(), d)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SandwichReport<T> {
    /// Largest triangle area.
    pub max_simplex: T,
    pub max_simplex_witness: SimplexId,
    /// Hull area.
    pub hull: T,
    /// Triangles in the hull triangulation.
    pub triangle_count: usize,
    /// `hull / max_simplex`, absent when the largest simplex has zero area.
    pub ratio: Option<T>,
    pub lower_holds: bool,
    pub upper_holds: bool,
}

impl<T> SandwichReport<T> {
    pub fn holds(&self) -> bool {
        self.lower_holds && self.upper_holds
    }
}

/// Slack allowed in both sandwich inequalities.
pub const SANDWICH_TOLERANCE: f64 = 1e-9;

/// Checks `max simplex ≤ hull ≤ B · max simplex` for `d = 2`, where `B` is
/// the number of triangles in the hull triangulation.
pub fn sandwich_check<T: Scalar>(set: &ProjectivePointSet<T>, d: usize) -> Result<SandwichReport<T>> {
    if d != 2 {
        return Err(Error::UnsupportedDimension(d));
    }
    let hull = spherical_convex_hull_area(set)?;
    let simplex = max_simplex_volume_points(set, 2)?;
    let tol = T::tol(SANDWICH_TOLERANCE);
    let b = hull.triangle_count();
    Ok(SandwichReport {
        max_simplex: simplex.value,
        max_simplex_witness: simplex.witness,
        hull: hull.area,
        triangle_count: b,
        ratio: (simplex.value > T::zero()).then(|| hull.area / simplex.value),
        lower_holds: simplex.value <= hull.area + tol,
        upper_holds: hull.area <= T::from_count(b) * simplex.value + tol,
    })
}
