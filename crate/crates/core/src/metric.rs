//! Correlation angles, distance matrices, metric checks and sign lifting.
//!
//! `gamma` is the geodesic distance between two unit vectors on the sphere.
//! `gamma_prime` identifies `v` with `-v`, which makes it the geodesic
//! distance between lines through the origin. Both are verified as metrics
//! at runtime by [`verify_metric_axioms`].

use std::io::Write;

use serde::Serialize;

use crate::correlation::CorrelationMatrix;
use crate::error::{Error, Result};
use crate::scalar::{dot, norm, unit_angle, unit_line_angle, Scalar};
use crate::series::CenteredUnitVector;

/// Radians in `[0, π]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Angle<T>(pub T);

/// Radians in `[0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct ProjectiveAngle<T>(pub T);

impl<T: Copy> Angle<T> {
    pub fn radians(self) -> T {
        self.0
    }
}

impl<T: Copy> ProjectiveAngle<T> {
    pub fn radians(self) -> T {
        self.0
    }
}

fn check_rho<T: Scalar>(rho: T) -> Result<()> {
    if rho >= -T::one() && rho <= T::one() {
        Ok(())
    } else {
        Err(Error::DomainError(rho.as_f64()))
    }
}

/// The correlation angle `arccos(ρ)`.
pub fn gamma<T: Scalar>(rho: T) -> Result<Angle<T>> {
    check_rho(rho)?;
    Ok(Angle(rho.acos()))
}

/// The projective correlation angle `arccos(|ρ|)`.
pub fn gamma_prime<T: Scalar>(rho: T) -> Result<ProjectiveAngle<T>> {
    check_rho(rho)?;
    Ok(ProjectiveAngle(rho.abs().acos()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrelationClass {
    MaxPositive,
    MaxNegative,
    Uncorrelated,
    Intermediate,
}

pub const DEFAULT_CLASS_TOLERANCE: f64 = 1e-9;

/// Classifies `rho` against ±1 and 0 with tolerance `eps`.
pub fn classify<T: Scalar>(rho: T, eps: T) -> CorrelationClass {
    if (rho - T::one()).abs() <= eps {
        CorrelationClass::MaxPositive
    } else if (rho + T::one()).abs() <= eps {
        CorrelationClass::MaxNegative
    } else if rho.abs() <= eps {
        CorrelationClass::Uncorrelated
    } else {
        CorrelationClass::Intermediate
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceKind {
    /// `Γ = arccos ρ`, bounded by π.
    Spherical,
    /// `Γ′ = arccos |ρ|`, bounded by π/2.
    Projective,
}

impl DistanceKind {
    pub fn bound<T: Scalar>(self) -> T {
        match self {
            DistanceKind::Spherical => T::PI(),
            DistanceKind::Projective => T::FRAC_PI_2(),
        }
    }
}

/// Triangle inequality slack allowed by [`distance_matrix`].
pub const TRIANGLE_TOLERANCE: f64 = 1e-9;

/// Symmetric matrix of angular distances with zero diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceMatrix<T> {
    entries: Vec<Vec<T>>,
    kind: DistanceKind,
    ids: Vec<String>,
}

impl<T: Scalar> DistanceMatrix<T> {
    /// Wraps raw entries without checking any invariant.
    pub fn from_rows_unchecked(entries: Vec<Vec<T>>, kind: DistanceKind) -> Self {
        let ids = (0..entries.len()).map(|i| format!("x{i}")).collect();
        Self { entries, kind, ids }
    }

    /// Elementwise `gamma` or `gamma_prime` without the metric check.
    pub fn from_correlation_unchecked(c: &CorrelationMatrix<T>, kind: DistanceKind) -> Self {
        let n = c.dim();
        let mut entries = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let r = c.get(i, j).max(-T::one()).min(T::one());
                let d = match kind {
                    DistanceKind::Spherical => r.acos(),
                    DistanceKind::Projective => r.abs().acos(),
                };
                entries[i][j] = d;
                entries[j][i] = d;
            }
        }
        Self::from_rows_unchecked(entries, kind)
    }

    /// Geodesic distances between unit vectors (`kind` spherical) or
    /// between the lines they span (`kind` projective), without the metric
    /// check.
    ///
    /// Angles come from `2·atan2(|u − v|, |u + v|)`, which equals
    /// `arccos(u·v)` but keeps full precision near 0 and π; identical inputs
    /// are exactly 0 apart.
    pub fn from_unit_vectors_unchecked<P: AsRef<[T]>>(points: &[P], kind: DistanceKind) -> Self {
        let n = points.len();
        let mut entries = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let (u, v) = (points[i].as_ref(), points[j].as_ref());
                let d = match kind {
                    DistanceKind::Spherical => unit_angle(u, v),
                    DistanceKind::Projective => unit_line_angle(u, v),
                };
                entries[i][j] = d;
                entries[j][i] = d;
            }
        }
        Self::from_rows_unchecked(entries, kind)
    }

    /// Geodesic distances between unit vectors.
    pub fn spherical_from_points<P: AsRef<[T]>>(points: &[P]) -> Self {
        Self::from_unit_vectors_unchecked(points, DistanceKind::Spherical)
    }

    pub fn with_ids(mut self, ids: Vec<String>) -> Result<Self> {
        if ids.len() != self.entries.len() {
            return Err(Error::DimensionMismatch { expected: self.entries.len(), got: ids.len() });
        }
        self.ids = ids;
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn kind(&self) -> DistanceKind {
        self.kind
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.entries
    }

    /// Writes the matrix as CSV with id headers, 12 significant digits.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        let mut header = vec![String::new()];
        header.extend(self.ids.iter().cloned());
        wtr.write_record(&header).map_err(|e| Error::Csv(e.to_string()))?;
        for (id, row) in self.ids.iter().zip(&self.entries) {
            let mut rec = vec![id.clone()];
            rec.extend(row.iter().map(|v| significant(v.as_f64(), 12)));
            wtr.write_record(&rec).map_err(|e| Error::Csv(e.to_string()))?;
        }
        wtr.flush().map_err(|e| Error::Csv(e.to_string()))
    }
}

fn significant(v: f64, digits: i32) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let decimals = (digits - 1 - v.abs().log10().floor() as i32).max(0) as usize;
    format!("{v:.decimals$}")
}

/// Converts a correlation matrix to angular distances and verifies the
/// metric axioms, failing on the worst violated triple.
pub fn distance_matrix<T: Scalar>(c: &CorrelationMatrix<T>, kind: DistanceKind) -> Result<DistanceMatrix<T>> {
    checked(DistanceMatrix::from_correlation_unchecked(c, kind))
}

/// [`distance_matrix`] computed directly from the window unit vectors, with
/// their series ids as labels.
pub fn distance_matrix_from_vectors<T: Scalar>(
    vectors: &[CenteredUnitVector<T>],
    kind: DistanceKind,
) -> Result<DistanceMatrix<T>> {
    let m = DistanceMatrix::from_unit_vectors_unchecked(vectors, kind);
    checked(DistanceMatrix { ids: vectors.iter().map(|v| v.source_id.clone()).collect(), ..m })
}

fn checked<T: Scalar>(m: DistanceMatrix<T>) -> Result<DistanceMatrix<T>> {
    let report = verify_metric_axioms(&m);
    if let Some(&(i, j, k, margin)) = report.worst_triangle.as_ref().filter(|w| w.3 < -TRIANGLE_TOLERANCE) {
        return Err(Error::MetricViolation { i, j, k, margin });
    }
    if !report.passed {
        let margin = report.violations.first().map(|v| v.margin).unwrap_or(f64::NAN);
        return Err(Error::MetricViolation { i: 0, j: 0, k: 0, margin });
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomKind {
    Negative,
    NonzeroDiagonal,
    Asymmetric,
    ExceedsBound,
    Triangle,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub axiom: AxiomKind,
    pub indices: Vec<usize>,
    /// Signed slack of the violated inequality; negative means violated.
    pub margin: f64,
}

/// Outcome of [`verify_metric_axioms`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricReport {
    pub passed: bool,
    pub violations: Vec<Violation>,
    /// Triple `(i, j, k)` with the smallest triangle slack `d(i,j) + d(j,k) - d(i,k)`.
    pub worst_triangle: Option<(usize, usize, usize, f64)>,
}

/// Checks nonnegativity, zero diagonal, symmetry, the kind's upper bound and
/// every triangle inequality. Triangle slack below `-1e-9` is a violation.
pub fn verify_metric_axioms<T: Scalar>(m: &DistanceMatrix<T>) -> MetricReport {
    let d = |i: usize, j: usize| m.entries[i][j].as_f64();
    let n = m.dim();
    let tol = TRIANGLE_TOLERANCE;
    let bound = m.kind.bound::<T>().as_f64();
    let mut violations = Vec::new();
    for i in 0..n {
        if d(i, i) != 0.0 {
            violations.push(Violation { axiom: AxiomKind::NonzeroDiagonal, indices: vec![i], margin: -d(i, i).abs() });
        }
        for j in 0..n {
            if d(i, j) < 0.0 {
                violations.push(Violation { axiom: AxiomKind::Negative, indices: vec![i, j], margin: d(i, j) });
            }
            if d(i, j) > bound + tol {
                violations.push(Violation {
                    axiom: AxiomKind::ExceedsBound,
                    indices: vec![i, j],
                    margin: bound - d(i, j),
                });
            }
            if j > i && d(i, j) != d(j, i) {
                violations.push(Violation {
                    axiom: AxiomKind::Asymmetric,
                    indices: vec![i, j],
                    margin: -(d(i, j) - d(j, i)).abs(),
                });
            }
        }
    }
    let mut worst: Option<(usize, usize, usize, f64)> = None;
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                // each side against the sum of the other two, labelled with
                // the middle vertex of the two-edge path
                let candidates = [
                    (i, j, k, d(i, j) + d(j, k) - d(i, k)),
                    (j, i, k, d(j, i) + d(i, k) - d(j, k)),
                    (i, k, j, d(i, k) + d(k, j) - d(i, j)),
                ];
                let (a, b, c, margin) =
                    candidates.into_iter().min_by(|x, y| x.3.total_cmp(&y.3)).expect("three candidates");
                if margin < -tol {
                    let mut indices = vec![a, b, c];
                    indices.sort_unstable();
                    violations.push(Violation { axiom: AxiomKind::Triangle, indices, margin });
                }
                if worst.is_none_or(|w| margin < w.3) {
                    worst = Some((i, j, k, margin));
                }
            }
        }
    }
    MetricReport { passed: violations.is_empty(), violations, worst_triangle: worst }
}

/// Unit vectors with signs chosen so every point is on the reference's side.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectivePointSet<T> {
    pub points: Vec<Vec<T>>,
    pub ids: Vec<String>,
    /// Index of the sign reference (always the first point).
    pub reference: usize,
    pub reference_id: String,
    /// Which inputs were negated.
    pub flipped: Vec<bool>,
    /// A unit `u` with `u·pᵢ > 0` for every lifted point, if one was found.
    pub hemisphere_witness: Option<Vec<T>>,
}

/// Dot products with magnitude at or below this keep their input sign.
pub const SIGN_TIE_TOLERANCE: f64 = 1e-12;

impl<T: Scalar> ProjectivePointSet<T> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn ambient_dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    /// True when the lifted points lie in a common open hemisphere.
    pub fn in_open_hemisphere(&self) -> bool {
        self.hemisphere_witness.is_some()
    }

    /// Geodesic distance between two lifted points.
    pub fn geodesic(&self, i: usize, j: usize) -> T {
        unit_angle(&self.points[i], &self.points[j])
    }

    pub fn distance_matrix(&self) -> DistanceMatrix<T> {
        let m = DistanceMatrix::spherical_from_points(&self.points);
        DistanceMatrix { ids: self.ids.clone(), ..m }
    }
}

/// Picks the representative of each `±p` on the side of the first point.
///
/// Panics if `points` is empty or the dimensions differ.
pub fn sign_lift<T: Scalar, P: AsRef<[T]>>(points: &[P]) -> ProjectivePointSet<T> {
    let ids = (0..points.len()).map(|i| format!("x{i}")).collect();
    sign_lift_with_ids(points, ids)
}

/// [`sign_lift`] for centered window vectors, keeping their series ids.
pub fn sign_lift_vectors<T: Scalar>(vectors: &[CenteredUnitVector<T>]) -> ProjectivePointSet<T> {
    sign_lift_with_ids(vectors, vectors.iter().map(|v| v.source_id.clone()).collect())
}

fn sign_lift_with_ids<T: Scalar, P: AsRef<[T]>>(points: &[P], ids: Vec<String>) -> ProjectivePointSet<T> {
    assert!(!points.is_empty(), "sign_lift needs at least one point");
    let reference = points[0].as_ref();
    let dim = reference.len();
    let tie = T::tol(SIGN_TIE_TOLERANCE);
    let mut lifted = Vec::with_capacity(points.len());
    let mut flipped = Vec::with_capacity(points.len());
    for p in points {
        let p = p.as_ref();
        assert_eq!(p.len(), dim, "sign_lift points must share a dimension");
        let flip = dot(p, reference) < -tie;
        flipped.push(flip);
        lifted.push(if flip { p.iter().map(|&x| -x).collect() } else { p.to_vec() });
    }
    let hemisphere_witness = open_hemisphere_witness(&lifted);
    ProjectivePointSet { points: lifted, reference_id: ids[0].clone(), ids, reference: 0, flipped, hemisphere_witness }
}

const HEMISPHERE_MARGIN: f64 = 1e-12;

/// Finds a unit `u` with `u·pᵢ > 0` for all points, if one exists.
///
/// Tries the normalized centroid first, then runs Gilbert's minimum-norm
/// iteration over the convex hull of the points: a strictly separating
/// direction exists exactly when the origin is outside that hull, and every
/// iterate whose minimum dot product is positive is already a witness.
pub fn open_hemisphere_witness<T: Scalar, P: AsRef<[T]>>(points: &[P]) -> Option<Vec<T>> {
    let first = points.first()?.as_ref();
    let dim = first.len();
    let margin = T::tol(HEMISPHERE_MARGIN);
    let is_witness = |u: &[T]| -> bool {
        let len = norm(u);
        len > T::zero() && points.iter().all(|p| dot(p.as_ref(), u) > margin * len)
    };
    let unit = |u: Vec<T>| -> Vec<T> {
        let len = norm(&u);
        u.into_iter().map(|x| x / len).collect()
    };

    let mut centroid = vec![T::zero(); dim];
    for p in points {
        for (c, &x) in centroid.iter_mut().zip(p.as_ref()) {
            *c = *c + x;
        }
    }
    if is_witness(&centroid) {
        return Some(unit(centroid));
    }

    let mut x = first.to_vec();
    let max_iter = 20_000 + 200 * points.len();
    for _ in 0..max_iter {
        let xx = dot(&x, &x);
        if xx <= T::tol(1e-24) {
            return None;
        }
        let (j, m) = points
            .iter()
            .map(|p| dot(p.as_ref(), &x))
            .enumerate()
            .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite dot"))
            .expect("nonempty");
        if m > margin * xx.sqrt() {
            return Some(unit(x));
        }
        // x is (nearly) the minimum-norm point while some dot is still
        // nonpositive: the origin is in, or on, the hull
        if xx - m <= T::epsilon() * T::lit(16.0) {
            return None;
        }
        let p = points[j].as_ref();
        let diff: Vec<T> = x.iter().zip(p).map(|(&a, &b)| a - b).collect();
        let dd = dot(&diff, &diff);
        if dd == T::zero() {
            return None;
        }
        let t = (dot(&x, &diff) / dd).max(T::zero()).min(T::one());
        for (xi, &pi) in x.iter_mut().zip(p) {
            *xi = *xi + t * (pi - *xi);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    #[test]
    fn gamma_examples() {
        assert_eq!(gamma(1.0).unwrap().radians(), 0.0);
        assert_eq!(gamma(-1.0).unwrap().radians(), PI);
        assert!((gamma(0.5f64).unwrap().radians() - std::f64::consts::FRAC_PI_3).abs() < 1e-15);
        assert!(matches!(gamma(1.5), Err(Error::DomainError(_))));
        assert!(matches!(gamma_prime(f64::NAN), Err(Error::DomainError(_))));
    }

    #[test]
    fn gamma_prime_examples() {
        assert_eq!(gamma_prime(1.0).unwrap().radians(), 0.0);
        assert_eq!(gamma_prime(-1.0).unwrap().radians(), 0.0);
        assert_eq!(gamma_prime(0.0).unwrap().radians(), FRAC_PI_2);
        assert!((gamma_prime(-0.5).unwrap().radians() - FRAC_PI_3).abs() < 1e-15);
    }

    #[test]
    fn classify_examples() {
        let eps = DEFAULT_CLASS_TOLERANCE;
        assert_eq!(classify(1.0, eps), CorrelationClass::MaxPositive);
        assert_eq!(classify(-1.0, eps), CorrelationClass::MaxNegative);
        assert_eq!(classify(0.0, eps), CorrelationClass::Uncorrelated);
        assert_eq!(classify(0.3, eps), CorrelationClass::Intermediate);
        assert_eq!(classify(1.0 - 1e-10, eps), CorrelationClass::MaxPositive);
    }

    #[test]
    fn identity_correlations_are_right_angles() {
        let m = distance_matrix(&CorrelationMatrix::<f64>::identity(4), DistanceKind::Projective).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(m.get(i, j), if i == j { 0.0 } else { FRAC_PI_2 });
            }
        }
    }

    #[test]
    fn all_ones_give_zero_distances() {
        let c = CorrelationMatrix::new(vec![vec![1.0; 3]; 3]).unwrap();
        let m = distance_matrix(&c, DistanceKind::Spherical).unwrap();
        assert!(m.rows().iter().flatten().all(|&v| v == 0.0));
    }

    #[test]
    fn tight_triangle_along_a_great_circle() {
        // unit vectors at 0, 45 and 90 degrees in one plane
        let h = FRAC_PI_4.cos();
        let pts = [[1.0, 0.0, 0.0], [h, h, 0.0], [0.0, 1.0, 0.0]];
        let c = CorrelationMatrix::from_unit_vectors(&pts);
        assert!((c.get(0, 1) - h).abs() < 1e-15);
        assert_eq!(c.get(0, 2), 0.0);
        let m = distance_matrix(&c, DistanceKind::Spherical).unwrap();
        let slack = m.get(0, 1) + m.get(1, 2) - m.get(0, 2);
        assert!(slack.abs() < 1e-12);
        let report = verify_metric_axioms(&m);
        assert!(report.passed);
        assert!(report.worst_triangle.unwrap().3.abs() < 1e-12);
    }

    #[test]
    fn planted_triangle_violation() {
        let m = DistanceMatrix::from_rows_unchecked(
            vec![vec![0.0, 1.0, 3.0], vec![1.0, 0.0, 1.0], vec![3.0, 1.0, 0.0]],
            DistanceKind::Spherical,
        );
        let report = verify_metric_axioms(&m);
        assert!(!report.passed);
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].axiom, AxiomKind::Triangle);
        assert_eq!(report.violations[0].indices, vec![0, 1, 2]);
        assert_eq!(report.violations[0].margin, -1.0);
    }

    #[test]
    fn reports_other_axioms() {
        let m = DistanceMatrix::from_rows_unchecked(
            vec![vec![0.1, -0.5, 2.0], vec![0.4, 0.0, 0.1], vec![2.0, 0.1, 0.0]],
            DistanceKind::Projective,
        );
        let report = verify_metric_axioms(&m);
        let kinds: Vec<AxiomKind> = report.violations.iter().map(|v| v.axiom).collect();
        for k in [AxiomKind::NonzeroDiagonal, AxiomKind::Negative, AxiomKind::Asymmetric, AxiomKind::ExceedsBound] {
            assert!(kinds.contains(&k), "missing {k:?}");
        }
    }

    #[test]
    fn distance_csv_has_headers_and_twelve_digits() {
        let c = CorrelationMatrix::new(vec![vec![1.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let m =
            distance_matrix(&c, DistanceKind::Spherical).unwrap().with_ids(vec!["nino".into(), "pdo".into()]).unwrap();
        let mut buf = Vec::new();
        m.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, ",nino,pdo\nnino,0,1.04719755120\npdo,1.04719755120,0\n");
    }

    #[test]
    fn antipodal_pair_lifts_to_one_point() {
        let v = [0.6, 0.8, 0.0];
        let set = sign_lift(&[v, [-0.6, -0.8, 0.0]]);
        assert_eq!(set.points[0], set.points[1]);
        assert_eq!(set.flipped, vec![false, true]);
    }

    #[test]
    fn orthonormal_basis_is_in_a_hemisphere() {
        let set = sign_lift(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);
        assert_eq!(set.flipped, vec![false; 3]);
        let u = set.hemisphere_witness.unwrap();
        let s = 1.0 / 3f64.sqrt();
        for x in u {
            assert!((x - s).abs() < 1e-15);
        }
    }

    #[test]
    fn orthogonal_points_keep_their_sign() {
        let set = sign_lift(&[[1.0, 0.0], [0.0, -1.0], [-1e-13, 1.0]]);
        assert_eq!(set.flipped, vec![false, false, false]);
    }

    #[test]
    fn origin_between_lifted_points_means_no_hemisphere() {
        // e2 and -e2 are both orthogonal to the reference, keep their signs,
        // and put the origin on the hull of the lifted set
        let set = sign_lift(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, -1.0, 0.0]]);
        assert!(set.hemisphere_witness.is_none());
        let bad = [[1.0, 0.0], [-0.5, 0.8660254037844386], [-0.5, -0.8660254037844386]];
        assert!(open_hemisphere_witness(&bad).is_none());
    }

    #[test]
    fn witness_found_when_centroid_fails() {
        let a = 0.1f64;
        let far = [-a.sin(), a.cos()];
        let mut pts = vec![[1.0, 0.0]; 20];
        pts.push(far);
        let centroid = [20.0 - a.sin(), a.cos()];
        assert!(far[0] * centroid[0] + far[1] * centroid[1] < 0.0);
        let w = open_hemisphere_witness(&pts).unwrap();
        assert!(pts.iter().all(|p| p[0] * w[0] + p[1] * w[1] > 0.0));
        assert!((norm(&w) - 1.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn projective_identity(rho in -1.0f64..=1.0) {
            let g = gamma(rho).unwrap().radians();
            let gp = gamma_prime(rho).unwrap().radians();
            prop_assert!((gp - g.min(PI - g)).abs() <= 1e-15);
            prop_assert_eq!(gp, gamma_prime(-rho).unwrap().radians());
        }

        #[test]
        fn classify_swaps_only_extremes(rho in -1.0f64..=1.0) {
            let eps = DEFAULT_CLASS_TOLERANCE;
            let expected = match classify(rho, eps) {
                CorrelationClass::MaxPositive => CorrelationClass::MaxNegative,
                CorrelationClass::MaxNegative => CorrelationClass::MaxPositive,
                other => other,
            };
            prop_assert_eq!(classify(-rho, eps), expected);
        }

        #[test]
        fn lifting_preserves_projective_distances(raw in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 4), 2..8)) {
            prop_assume!(raw.iter().all(|v| norm(v) > 1e-3));
            let pts: Vec<Vec<f64>> = raw.iter().map(|v| { let n = norm(v); v.iter().map(|x| x / n).collect() }).collect();
            let set = sign_lift(&pts);
            for p in &set.points {
                prop_assert!(dot(p, &set.points[0]) >= -1e-12);
            }
            for i in 0..pts.len() {
                for j in 0..pts.len() {
                    let before = dot(&pts[i], &pts[j]).abs().min(1.0).acos();
                    let after = dot(&set.points[i], &set.points[j]).abs().min(1.0).acos();
                    prop_assert_eq!(before, after);
                }
            }
            if let Some(u) = &set.hemisphere_witness {
                for p in &set.points {
                    prop_assert!(dot(p, u) > 0.0);
                }
            }
        }
    }
}
