//! Windowed covariance and Pearson correlation kernels.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::symmetric_eigenvalues;
use crate::scalar::{dot, Scalar};
use crate::series::{window_vector, CenteredUnitVector, TimeSeries, TimeSeriesSet, WindowSpec};

/// `(1/K) Σ (a(l) - μ)(b(l) - ν)` over the window, with window sample means.
pub fn windowed_covariance<T: Scalar>(a: &TimeSeries<T>, b: &TimeSeries<T>, w: &WindowSpec) -> Result<T> {
    let xa = a.window_values(w)?;
    let xb = b.window_values(w)?;
    let k = T::from_count(w.len);
    let mu = xa.iter().copied().sum::<T>() / k;
    let nu = xb.iter().copied().sum::<T>() / k;
    let s: T = xa.iter().zip(xb).map(|(&x, &y)| (x - mu) * (y - nu)).sum();
    Ok(s / k)
}

/// Population variance of the window, `Covar[X, X]`.
pub fn windowed_variance<T: Scalar>(a: &TimeSeries<T>, w: &WindowSpec) -> Result<T> {
    windowed_covariance(a, a, w)
}

/// Pearson correlation of two windows, clamped to `[-1, 1]`.
pub fn pearson_rho<T: Scalar>(a: &TimeSeries<T>, b: &TimeSeries<T>, w: &WindowSpec) -> Result<T> {
    let u = window_vector(a, w)?;
    let v = window_vector(b, w)?;
    Ok(unit_dot(&u.components, &v.components))
}

#[inline]
fn unit_dot<T: Scalar>(u: &[T], v: &[T]) -> T {
    dot(u, v).max(-T::one()).min(T::one())
}

/// Unit vectors of every series in the set for one window.
pub fn unit_vectors<T: Scalar>(set: &TimeSeriesSet<T>, w: &WindowSpec) -> Result<Vec<CenteredUnitVector<T>>> {
    set.series().iter().map(|s| window_vector(s, w)).collect()
}

/// Symmetric matrix of Pearson correlations, unit diagonal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationMatrix<T> {
    entries: Vec<Vec<T>>,
}

impl<T: Scalar> CorrelationMatrix<T> {
    /// Validates symmetry, the unit diagonal and the `[-1, 1]` range.
    pub fn new(entries: Vec<Vec<T>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            if row[i] != T::one() {
                return Err(Error::DomainError(row[i].as_f64()));
            }
            for j in 0..n {
                let v = row[j];
                if !(v >= -T::one() && v <= T::one()) {
                    return Err(Error::DomainError(v.as_f64()));
                }
                if (v - entries[j][i]).abs() > T::tol(1e-12) {
                    return Err(Error::DomainError(v.as_f64()));
                }
            }
        }
        Ok(Self { entries })
    }

    /// Gram matrix of unit vectors.
    pub fn from_unit_vectors<P: AsRef<[T]>>(vectors: &[P]) -> Self {
        let n = vectors.len();
        let mut entries = vec![vec![T::one(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let r = unit_dot(vectors[i].as_ref(), vectors[j].as_ref());
                entries[i][j] = r;
                entries[j][i] = r;
            }
        }
        Self { entries }
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n).map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect();
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.entries
    }
}

/// Pairwise Pearson correlations of every series in `set` over window `w`.
///
/// Each series is centered and normalized once; entries are dot products of
/// those unit vectors.
pub fn correlation_matrix<T: Scalar>(set: &TimeSeriesSet<T>, w: &WindowSpec) -> Result<CorrelationMatrix<T>> {
    Ok(CorrelationMatrix::from_unit_vectors(&unit_vectors(set, w)?))
}

/// `A[i][j] = Covar(X_i, X_j)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CovarianceMatrix<T> {
    entries: Vec<Vec<T>>,
}

impl<T: Scalar> CovarianceMatrix<T> {
    /// Validates symmetry, a nonnegative diagonal and positive semidefiniteness.
    pub fn new(entries: Vec<Vec<T>>) -> Result<Self> {
        let n = entries.len();
        let scale = entries
            .iter()
            .enumerate()
            .map(|(i, r)| r.get(i).copied().unwrap_or(T::zero()).abs())
            .fold(T::one(), T::max);
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: row.len() });
            }
            if row[i] < T::zero() {
                return Err(Error::DomainError(row[i].as_f64()));
            }
            for j in 0..i {
                if (row[j] - entries[j][i]).abs() > T::tol(1e-12) * scale {
                    return Err(Error::DomainError(row[j].as_f64()));
                }
            }
        }
        let m = Self { entries };
        let min = m.min_eigenvalue();
        if min < -T::tol(1e-9) * scale {
            return Err(Error::DomainError(min.as_f64()));
        }
        Ok(m)
    }

    /// Covariances of every pair of series in `set` over window `w`.
    pub fn windowed(set: &TimeSeriesSet<T>, w: &WindowSpec) -> Result<Self> {
        let series = set.series();
        let n = series.len();
        let mut entries = vec![vec![T::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let c = windowed_covariance(&series[i], &series[j], w)?;
                entries[i][j] = c;
                entries[j][i] = c;
            }
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.entries[i][j]
    }

    pub fn min_eigenvalue(&self) -> T {
        symmetric_eigenvalues(self.entries.clone()).first().copied().unwrap_or(T::zero())
    }
}

/// `cᵀ A d`: the covariance of `Σ cᵢXᵢ` and `Σ dⱼXⱼ` by bilinearity.
pub fn twisted_dot<T: Scalar>(c: &[T], d: &[T], a: &CovarianceMatrix<T>) -> Result<T> {
    let n = a.dim();
    for v in [c, d] {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: v.len() });
        }
    }
    Ok((0..n).map(|i| c[i] * (0..n).map(|j| a.entries[i][j] * d[j]).sum::<T>()).sum())
}
