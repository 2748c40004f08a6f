//! Correlation geometry of time series.
//!
//! Windows of each series are centered and normalized into unit vectors, so
//! that Pearson correlations become cosines and the correlation angle
//! `arccos ρ` (or `arccos |ρ|` when sign is ignored) is a geodesic distance.
//! The spread of a set of such points, whether read as its diameter or as the
//! area of its geodesic convex hull, measures how tightly the series move
//! together. Minima of the spread over time mark episodes of joint locking.
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below fix the usual double precision choice.

// dense small matrices read more clearly with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod correlation;
pub mod error;
pub mod events;
mod linalg;
pub mod measures;
pub mod metric;
pub mod scalar;
pub mod series;

/// Version of this library, echoed into run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use correlation::{
    correlation_matrix, pearson_rho, twisted_dot, unit_vectors, windowed_covariance, windowed_variance,
    CorrelationMatrix, CovarianceMatrix,
};
pub use error::{Error, Result};
pub use events::{
    compare_event_sets, detect_minima, sliding_measures, ComparisonReport, DetectorParams, Event, EventList,
    MeasureKind, MeasureSeries, DEFAULT_WINDOW,
};
pub use measures::{
    cayley_menger_volume, diameter, max_simplex_volume, max_simplex_volume_points, sandwich_check,
    spherical_convex_hull_area, spherical_triangle_area, HullResult, MeasureResult, Method, SandwichReport, SimplexId,
};
pub use metric::{
    classify, distance_matrix, distance_matrix_from_vectors, gamma, gamma_prime, open_hemisphere_witness, sign_lift,
    sign_lift_vectors, verify_metric_axioms, Angle, CorrelationClass, DistanceKind, DistanceMatrix, MetricReport,
    ProjectiveAngle, ProjectivePointSet,
};
pub use scalar::Scalar;
pub use series::{align, window_vector, CenteredUnitVector, TimeAxis, TimeSeries, TimeSeriesSet, WindowSpec};

pub type TimeSeries64 = TimeSeries<f64>;
pub type TimeSeriesSet64 = TimeSeriesSet<f64>;
pub type CenteredUnitVector64 = CenteredUnitVector<f64>;
pub type CorrelationMatrix64 = CorrelationMatrix<f64>;
pub type CovarianceMatrix64 = CovarianceMatrix<f64>;
pub type DistanceMatrix64 = DistanceMatrix<f64>;
pub type ProjectivePointSet64 = ProjectivePointSet<f64>;
pub type MeasureResult64 = MeasureResult<f64>;
pub type HullResult64 = HullResult<f64>;
pub type MeasureSeries64 = MeasureSeries<f64>;
pub type EventList64 = EventList<f64>;

pub type TimeSeries32 = TimeSeries<f32>;
pub type TimeSeriesSet32 = TimeSeriesSet<f32>;
pub type DistanceMatrix32 = DistanceMatrix<f32>;
pub type MeasureSeries32 = MeasureSeries<f32>;
