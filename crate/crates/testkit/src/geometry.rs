//! Random inputs for property checks.

use corrsphere::{TimeSeries, TimeSeriesSet64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use std::f64::consts::{FRAC_PI_4, PI, TAU};

use crate::oracles::{cross, dot3};

/// Uniformly distributed point on the unit sphere in `R^dim`.
pub fn random_unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
        let len = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if len > 1e-6 {
            return v.into_iter().map(|x| x / len).collect();
        }
    }
}

/// `n` points uniform in the cap of angular radius `radius` around a random
/// centre on the 2-sphere.
pub fn random_cap_points(rng: &mut ChaCha8Rng, n: usize, radius: f64) -> Vec<[f64; 3]> {
    let c = random_unit_vector(rng, 3);
    let c = [c[0], c[1], c[2]];
    let helper = if c[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = normalize(cross(&c, &helper));
    let e2 = cross(&c, &e1);
    let cos_r = radius.cos();
    (0..n)
        .map(|_| {
            let z = 1.0 - rng.random::<f64>() * (1.0 - cos_r);
            let rho = (1.0 - z * z).max(0.0).sqrt();
            let (s, co) = (TAU * rng.random::<f64>()).sin_cos();
            normalize([
                z * c[0] + rho * (co * e1[0] + s * e2[0]),
                z * c[1] + rho * (co * e1[1] + s * e2[1]),
                z * c[2] + rho * (co * e1[2] + s * e2[2]),
            ])
        })
        .collect()
}

/// Side lengths of a valid spherical triangle, each in `[lo, hi]`, by
/// rejection from independent uniform sides.
pub fn random_triangle_sides(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> (f64, f64, f64) {
    loop {
        let a = rng.random_range(lo..=hi);
        let b = rng.random_range(lo..=hi);
        let c = rng.random_range(lo..=hi);
        let valid = a + b > c && a + c > b && b + c > a && a + b + c < TAU;
        if valid {
            return (a, b, c);
        }
    }
}

/// `n` independent standard normal series of length `len` on integer ticks.
pub fn random_series_set(rng: &mut ChaCha8Rng, n: usize, len: usize) -> TimeSeriesSet64 {
    let series = (0..n)
        .map(|i| {
            let values = (0..len).map(|_| StandardNormal.sample(rng)).collect();
            TimeSeries::new(format!("s{i}"), 0, 1, values).expect("finite values")
        })
        .collect();
    TimeSeriesSet64::new(series).expect("aligned series")
}

/// Four points at colatitude π/4 and longitudes 0, π/2, π, 3π/2: a spherical
/// square whose hull is strictly larger than any of its triangles.
pub fn square_configuration() -> Vec<[f64; 3]> {
    (0..4)
        .map(|k| {
            let lon = k as f64 * PI / 2.0;
            [FRAC_PI_4.sin() * lon.cos(), FRAC_PI_4.sin() * lon.sin(), FRAC_PI_4.cos()]
        })
        .collect()
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let len = dot3(&v, &v).sqrt();
    [v[0] / len, v[1] / len, v[2] / len]
}
