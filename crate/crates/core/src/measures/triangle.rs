use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Slack within which a triangle counts as degenerate.
pub const DEGENERATE_TOLERANCE: f64 = 1e-9;

/// Area (spherical excess) of a triangle on the unit sphere from its three
/// side lengths in radians, by L'Huilier's formula.
///
/// Triangles whose inequality slack is within `1e-9` are degenerate and
/// return exactly 0. A perimeter within `1e-9` of `2π` means the vertices
/// lie on one great circle without fitting in a half of it; that bounds a
/// hemisphere, so the result is `2π`.
pub fn spherical_triangle_area<T: Scalar>(a: T, b: T, c: T) -> Result<T> {
    let mut sides = [a, b, c];
    for &x in &sides {
        if !(x >= T::zero() && x <= T::PI() + T::tol(DEGENERATE_TOLERANCE)) {
            return Err(Error::InvalidTriangle { violated: "side within [0, pi]", margin: x.as_f64() });
        }
    }
    // sorted sides make the result exactly symmetric in its arguments
    sides.sort_by(|x, y| x.partial_cmp(y).expect("finite sides"));
    let [x, y, z] = sides;
    let tol = T::tol(DEGENERATE_TOLERANCE);
    let slack = x + y - z;
    if slack < -tol {
        return Err(Error::InvalidTriangle { violated: "triangle inequality", margin: slack.as_f64() });
    }
    let perimeter_slack = T::TAU() - (x + y + z);
    if perimeter_slack < -tol {
        return Err(Error::InvalidTriangle { violated: "perimeter at most 2pi", margin: perimeter_slack.as_f64() });
    }
    if slack <= tol {
        return Ok(T::zero());
    }
    if perimeter_slack <= tol {
        return Ok(T::TAU());
    }
    let half = T::lit(0.5);
    let s = (x + y + z) * half;
    let t = (s * half).tan() * ((s - x) * half).tan() * ((s - y) * half).tan() * ((s - z) * half).tan();
    Ok(T::lit(4.0) * t.max(T::zero()).sqrt().atan())
}
