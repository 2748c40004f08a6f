//! Geodesic convex hull of points in an open hemisphere of a 2-sphere.
//!
//! The lifted points are expressed in an orthonormal basis of their span
//! (at most three dimensions), projected gnomonically onto the plane tangent
//! at the hemisphere centre, and hulled there: gnomonic projection maps great
//! circles to straight lines, so the planar hull's vertices are exactly the
//! spherical hull's vertices. Areas are then evaluated on the sphere.

use serde::Serialize;

use super::triangle::spherical_triangle_area;
use super::SimplexId;
use crate::error::{Error, Result};
use crate::metric::ProjectivePointSet;
use crate::scalar::{dot, norm, Scalar};

/// Residual below which a point adds no new direction to the span.
const RANK_TOLERANCE: f64 = 1e-9;
/// Slack allowed when checking that input points lie inside the hull.
const CONTAINMENT_TOLERANCE: f64 = 1e-9;

/// Geodesic convex hull with its fan triangulation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HullResult<T> {
    /// Hull vertices counter-clockwise around the centre, starting at the
    /// smallest input index.
    pub vertices: Vec<usize>,
    /// Steradians.
    pub area: T,
    /// Fan from `vertices[0]`; its size is the sandwich constant `B`.
    pub triangulation: Vec<SimplexId>,
    /// Hull has fewer than three vertices (points on one great circle).
    pub degenerate: bool,
    #[serde(skip)]
    frame: Frame<T>,
}

#[derive(Debug, Clone, PartialEq)]
struct Frame<T> {
    /// Orthonormal basis of the span of the points, padded to three vectors.
    basis: Vec<Vec<T>>,
    /// Hull vertices in basis coordinates.
    ring: Vec<[T; 3]>,
}

impl<T: Scalar> HullResult<T> {
    /// Sandwich constant: number of triangles in the hull triangulation.
    pub fn triangle_count(&self) -> usize {
        self.triangulation.len()
    }

    /// Whether the unit vector `p` (ambient coordinates) lies inside or on
    /// the hull, within `1e-9`.
    pub fn contains(&self, p: &[T]) -> bool {
        let q = project(&self.frame.basis, p);
        let residual = dot(p, p) - dot(&q, &q);
        if residual > T::tol(CONTAINMENT_TOLERANCE) {
            return false;
        }
        contains_in_frame(&self.frame.ring, [q[0], q[1], q[2]])
    }
}

fn contains_in_frame<T: Scalar>(ring: &[[T; 3]], q: [T; 3]) -> bool {
    let m = ring.len();
    let tol = T::tol(CONTAINMENT_TOLERANCE);
    match m {
        0 => false,
        1 => dot(&ring[0], &q) >= T::one() - tol,
        2 => {
            // on the arc: in the great-circle plane and between the endpoints
            let n = cross(ring[0], ring[1]);
            let len = norm(&n);
            if len <= T::epsilon() {
                return dot(&ring[0], &q) >= T::one() - tol;
            }
            let plane = dot(&n, &q).abs() / len;
            let inside0 = dot(&cross(ring[0], q), &n) >= -tol * len;
            let inside1 = dot(&cross(q, ring[1]), &n) >= -tol * len;
            plane <= tol && inside0 && inside1
        }
        _ => (0..m).all(|k| {
            let n = cross(ring[k], ring[(k + 1) % m]);
            dot(&n, &q) >= -tol * norm(&n)
        }),
    }
}

fn cross<T: Scalar>(a: [T; 3], b: [T; 3]) -> [T; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn project<T: Scalar>(basis: &[Vec<T>], p: &[T]) -> Vec<T> {
    basis.iter().map(|b| if b.is_empty() { T::zero() } else { dot(b, p) }).collect()
}

/// Orthonormal basis of the span of `points` by modified Gram–Schmidt.
fn span_basis<T: Scalar>(points: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut basis: Vec<Vec<T>> = Vec::new();
    for p in points {
        let mut r = p.clone();
        for _pass in 0..2 {
            for b in &basis {
                let c = dot(&r, b);
                for (ri, &bi) in r.iter_mut().zip(b) {
                    *ri = *ri - c * bi;
                }
            }
        }
        let len = norm(&r);
        if len > T::tol(RANK_TOLERANCE) {
            basis.push(r.into_iter().map(|x| x / len).collect());
        }
    }
    basis
}

/// Area of the geodesic convex hull of a hemisphere-valid point set lying on
/// a 2-sphere (its span has dimension at most three).
///
/// Errors: `TooFewPoints` below three points, `HemisphereViolation` when the
/// lifted set has no open-hemisphere witness, `NotOnTwoSphere` when the
/// points span more than three dimensions.
pub fn spherical_convex_hull_area<T: Scalar>(set: &ProjectivePointSet<T>) -> Result<HullResult<T>> {
    let n = set.len();
    if n < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: n });
    }
    let witness = set.hemisphere_witness.as_ref().ok_or(Error::HemisphereViolation)?;
    let mut basis = span_basis(&set.points);
    if basis.len() > 3 {
        return Err(Error::NotOnTwoSphere { rank: basis.len() });
    }
    basis.resize(3, Vec::new());
    let coords: Vec<[T; 3]> = set
        .points
        .iter()
        .map(|p| {
            let q = project(&basis, p);
            [q[0], q[1], q[2]]
        })
        .collect();

    let c = {
        let w = project(&basis, witness);
        let len = norm(&w);
        [w[0] / len, w[1] / len, w[2] / len]
    };
    let (e1, e2) = tangent_frame(c);
    let planar: Vec<[T; 2]> = coords
        .iter()
        .map(|q| {
            let h = dot(q, &c);
            [dot(q, &e1) / h, dot(q, &e2) / h]
        })
        .collect();

    let mut ring_idx = monotone_chain(&planar);
    if let Some(pos) = ring_idx.iter().enumerate().min_by_key(|(_, &v)| v).map(|(pos, _)| pos) {
        ring_idx.rotate_left(pos);
    }
    let degenerate = ring_idx.len() < 3;
    let triangulation: Vec<SimplexId> = if degenerate {
        Vec::new()
    } else {
        (1..ring_idx.len() - 1).map(|k| SimplexId::new(vec![ring_idx[0], ring_idx[k], ring_idx[k + 1]])).collect()
    };
    let mut area = T::zero();
    for tri in &triangulation {
        let [i, j, k] = [tri.vertices[0], tri.vertices[1], tri.vertices[2]];
        area = area + spherical_triangle_area(set.geodesic(i, j), set.geodesic(j, k), set.geodesic(i, k))?;
    }

    let ring: Vec<[T; 3]> = ring_idx.iter().map(|&i| coords[i]).collect();
    for (i, q) in coords.iter().enumerate() {
        if !contains_in_frame(&ring, *q) {
            return Err(Error::HullContainment(i));
        }
    }
    Ok(HullResult { vertices: ring_idx, area, triangulation, degenerate, frame: Frame { basis, ring } })
}

/// Unit vectors `e1`, `e2` with `(e1, e2, c)` right-handed and orthonormal.
fn tangent_frame<T: Scalar>(c: [T; 3]) -> ([T; 3], [T; 3]) {
    let axis = (0..3).min_by(|&a, &b| c[a].abs().partial_cmp(&c[b].abs()).expect("finite centre")).expect("three axes");
    let mut a = [T::zero(); 3];
    a[axis] = T::one();
    let k = dot(&a, &c);
    let mut e1 = [a[0] - k * c[0], a[1] - k * c[1], a[2] - k * c[2]];
    let len = norm(&e1);
    for x in &mut e1 {
        *x = *x / len;
    }
    (e1, cross(c, e1))
}

/// Counter-clockwise convex hull (Andrew's monotone chain) returning input
/// indices; collinear and duplicate points are dropped.
fn monotone_chain<T: Scalar>(pts: &[[T; 2]]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| {
        pts[a][0]
            .partial_cmp(&pts[b][0])
            .expect("finite projection")
            .then(pts[a][1].partial_cmp(&pts[b][1]).expect("finite projection"))
            .then(a.cmp(&b))
    });
    let turns_left = |o: usize, a: usize, b: usize| -> bool {
        let (ox, oy) = (pts[o][0], pts[o][1]);
        let (ax, ay) = (pts[a][0] - ox, pts[a][1] - oy);
        let (bx, by) = (pts[b][0] - ox, pts[b][1] - oy);
        let cross = ax * by - ay * bx;
        let scale = (ax * ax + ay * ay).sqrt() * (bx * bx + by * by).sqrt();
        cross > T::tol(1e-12) * scale
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &order {
        while lower.len() >= 2 && !turns_left(lower[lower.len() - 2], lower[lower.len() - 1], i) {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in order.iter().rev() {
        while upper.len() >= 2 && !turns_left(upper[upper.len() - 2], upper[upper.len() - 1], i) {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && pts[lower[0]] == pts[lower[1]] {
        lower.pop();
    }
    lower
}
