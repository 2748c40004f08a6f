//! Reference computations that share no code with the library's geometry.

use corrsphere::{Error, ProjectivePointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::{PI, TAU};

/// A sampled estimate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleEstimate {
    pub value: f64,
    pub standard_error: f64,
    pub samples: u64,
    pub rng_seed: u64,
}

impl OracleEstimate {
    /// Distance from `exact` in units of the standard error. A zero standard
    /// error gives 0 for an exact hit and infinity otherwise.
    pub fn z_score(&self, exact: f64) -> f64 {
        let diff = (exact - self.value).abs();
        if self.standard_error > 0.0 {
            diff / self.standard_error
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }

    pub fn brackets(&self, exact: f64, sigmas: f64) -> bool {
        self.z_score(exact) <= sigmas
    }
}

/// Area of a spherical triangle from its sides as the angle excess
/// `A + B + C − π`, with each vertex angle from the spherical law of cosines
/// `cos A = (cos a − cos b cos c) / (sin b sin c)`.
///
/// Triangles within `1e-9` of flat count as degenerate (area 0), and a
/// perimeter within `1e-9` of `2π` gives `2π`.
pub fn girard_area(a: f64, b: f64, c: f64) -> Result<f64, Error> {
    const TOL: f64 = 1e-9;
    for x in [a, b, c] {
        if !(0.0..=PI + TOL).contains(&x) {
            return Err(Error::InvalidTriangle { violated: "side within [0, pi]", margin: x });
        }
    }
    let slack = (a + b - c).min(a + c - b).min(b + c - a);
    if slack < -TOL {
        return Err(Error::InvalidTriangle { violated: "triangle inequality", margin: slack });
    }
    let perimeter_slack = TAU - (a + b + c);
    if perimeter_slack < -TOL {
        return Err(Error::InvalidTriangle { violated: "perimeter at most 2pi", margin: perimeter_slack });
    }
    // flat triangles, as in the library: the area of a triangle with slack
    // s grows like sqrt(s), so any tolerance here is a convention
    if slack <= TOL {
        return Ok(0.0);
    }
    if perimeter_slack <= TOL {
        return Ok(TAU);
    }
    let vertex = |opp: f64, x: f64, y: f64| {
        let cos = (opp.cos() - x.cos() * y.cos()) / (x.sin() * y.sin());
        cos.clamp(-1.0, 1.0).acos()
    };
    let excess = vertex(a, b, c) + vertex(b, a, c) + vertex(c, a, b) - PI;
    Ok(excess.max(0.0))
}

/// Euclidean volume of the simplex with the given vertices from the Gram
/// determinant of its edge vectors: `sqrt(det G) / d!`.
pub fn gram_volume(points: &[Vec<f64>]) -> f64 {
    let Some((origin, rest)) = points.split_first() else {
        return 0.0;
    };
    let edges: Vec<Vec<f64>> = rest.iter().map(|p| p.iter().zip(origin).map(|(a, b)| a - b).collect()).collect();
    let d = edges.len();
    let gram: Vec<Vec<f64>> =
        edges.iter().map(|u| edges.iter().map(|v| u.iter().zip(v).map(|(a, b)| a * b).sum()).collect()).collect();
    let factorial: f64 = (1..=d).map(|k| k as f64).product();
    cholesky_det(gram).max(0.0).sqrt() / factorial
}

/// Determinant of a symmetric positive semidefinite matrix through an
/// LDLᵀ factorisation; a nonpositive pivot means a singular matrix.
fn cholesky_det(mut g: Vec<Vec<f64>>) -> f64 {
    let n = g.len();
    let mut det = 1.0;
    for k in 0..n {
        let pivot = g[k][k];
        if pivot <= 0.0 {
            return 0.0;
        }
        det *= pivot;
        for i in k + 1..n {
            let f = g[i][k] / pivot;
            for j in k + 1..n {
                g[i][j] -= f * g[k][j];
            }
        }
    }
    det
}

/// Great-circle normals `pᵢ × pⱼ` of every pair whose circle has all points
/// on its nonnegative side: the supporting circles of the hull.
pub fn supporting_normals(points: &[[f64; 3]]) -> Vec<[f64; 3]> {
    let mut normals = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for (j, q) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let n = cross(p, q);
            let len = dot3(&n, &n).sqrt();
            if len < 1e-12 {
                continue;
            }
            let n = [n[0] / len, n[1] / len, n[2] / len];
            if points.iter().all(|r| dot3(&n, r) >= -1e-12) {
                normals.push(n);
            }
        }
    }
    normals
}

/// Monte Carlo estimate of the area of the geodesic convex hull of points
/// on the 2-sphere.
///
/// Samples are uniform in the smallest cap about the normalized centroid
/// that holds every point (the whole sphere when that cap is not convex). A
/// sample is inside when it is on the nonnegative side of every supporting
/// great circle found by brute force over point pairs.
pub fn monte_carlo_hull_area_raw(points: &[[f64; 3]], samples: u64, seed: u64) -> Result<OracleEstimate, Error> {
    if points.len() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: points.len() });
    }
    let mut center = [0.0; 3];
    for p in points {
        for k in 0..3 {
            center[k] += p[k];
        }
    }
    estimate_in_cap(points, center, samples, seed)
}

fn estimate_in_cap(points: &[[f64; 3]], center: [f64; 3], samples: u64, seed: u64) -> Result<OracleEstimate, Error> {
    let len = dot3(&center, &center).sqrt();
    if len < 1e-12 || points.iter().any(|p| dot3(p, &center) <= 0.0) {
        return Err(Error::HemisphereViolation);
    }
    let center = [center[0] / len, center[1] / len, center[2] / len];
    let min_cos = points.iter().map(|p| dot3(p, &center)).fold(1.0, f64::min);
    // a slightly wider cap so hull edges near the rim are not clipped
    let radius = min_cos.clamp(-1.0, 1.0).acos() + 1e-6;
    let cos_r = if radius < PI / 2.0 { radius.cos() } else { -1.0 };
    let cap_area = TAU * (1.0 - cos_r);

    let normals = supporting_normals(points);
    let (e1, e2) = orthonormal_pair(&center);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..samples {
        let z: f64 = 1.0 - rng.random::<f64>() * (1.0 - cos_r);
        let phi = TAU * rng.random::<f64>();
        let rho = (1.0 - z * z).max(0.0).sqrt();
        let (s, c) = phi.sin_cos();
        let q = [
            z * center[0] + rho * (c * e1[0] + s * e2[0]),
            z * center[1] + rho * (c * e1[1] + s * e2[1]),
            z * center[2] + rho * (c * e1[2] + s * e2[2]),
        ];
        if normals.iter().all(|n| dot3(n, &q) >= 0.0) {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    Ok(OracleEstimate {
        value: cap_area * p,
        standard_error: cap_area * (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        rng_seed: seed,
    })
}

/// [`monte_carlo_hull_area_raw`] on a sign-lifted point set in `R³`, with
/// the cap centred on the set's hemisphere witness.
pub fn monte_carlo_hull_area(set: &ProjectivePointSet<f64>, samples: u64, seed: u64) -> Result<OracleEstimate, Error> {
    if set.ambient_dim() != 3 {
        return Err(Error::UnsupportedDimension(set.ambient_dim()));
    }
    if set.len() < 3 {
        return Err(Error::TooFewPoints { needed: 3, got: set.len() });
    }
    let witness = set.hemisphere_witness.as_ref().ok_or(Error::HemisphereViolation)?;
    let points: Vec<[f64; 3]> = set.points.iter().map(|p| [p[0], p[1], p[2]]).collect();
    estimate_in_cap(&points, [witness[0], witness[1], witness[2]], samples, seed)
}

pub(crate) fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub(crate) fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn orthonormal_pair(c: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let helper = if c[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = cross(c, &helper);
    let len = dot3(&e1, &e1).sqrt();
    let e1 = [e1[0] / len, e1[1] / len, e1[2] / len];
    (e1, cross(c, &e1))
}
