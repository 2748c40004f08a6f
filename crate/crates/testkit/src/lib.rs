//! Test oracles for `corrsphere`.
//!
//! The oracles recompute the library's geometric quantities by independent
//! routes: spherical areas by Girard's angle excess and by Monte Carlo
//! containment sampling, simplex volumes from Gram determinants. The
//! [`simulate`] generator produces series with planted episodes of joint
//! coupling, and [`benchmark`] fixes the detection benchmark built on it.
//!
//! All randomness comes from ChaCha8 (`rand_chacha`) seeded with a `u64`.

// dense small matrices read more clearly with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod benchmark;
pub mod geometry;
pub mod oracles;
pub mod simulate;

pub use oracles::{girard_area, gram_volume, monte_carlo_hull_area, monte_carlo_hull_area_raw, OracleEstimate};
pub use simulate::{simulate, Episode, SpecError, SyntheticSpec};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// The generator used throughout the kit.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
