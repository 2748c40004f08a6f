//! Sliding evaluation of spread measures and detection of their minima.
//!
//! A minimum of a spread measure marks a stretch where the series move
//! together; detection uses topographic prominence so that only basins that
//! stand out from their surroundings are reported.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::correlation::unit_vectors;
use crate::error::{Error, Result};
use crate::measures::{diameter, max_simplex_volume, spherical_convex_hull_area};
use crate::metric::{distance_matrix_from_vectors, sign_lift_vectors, DistanceKind};
use crate::scalar::Scalar;
use crate::series::{TimeAxis, TimeSeriesSet, WindowSpec};

/// Window length used when none is configured. Not derived from any data.
pub const DEFAULT_WINDOW: usize = 21;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureKind {
    /// Largest pairwise projective angle.
    M1aDiameter,
    /// Largest spherical triangle area from projective angles.
    M2aMaxArea,
    /// Area of the geodesic convex hull of the sign-lifted points.
    M2HullArea,
}

impl MeasureKind {
    pub const ALL: [MeasureKind; 3] = [MeasureKind::M1aDiameter, MeasureKind::M2aMaxArea, MeasureKind::M2HullArea];

    pub fn name(self) -> &'static str {
        match self {
            MeasureKind::M1aDiameter => "m1a_diameter",
            MeasureKind::M2aMaxArea => "m2a_max_area",
            MeasureKind::M2HullArea => "m2_hull_area",
        }
    }

    fn min_points(self) -> usize {
        match self {
            MeasureKind::M1aDiameter => 2,
            MeasureKind::M2aMaxArea | MeasureKind::M2HullArea => 3,
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MeasureKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "m1a" | "diameter" | "m1a_diameter" => Ok(MeasureKind::M1aDiameter),
            "m2a" | "area" | "max_area" | "m2a_max_area" => Ok(MeasureKind::M2aMaxArea),
            "m2" | "hull" | "hull_area" | "m2_hull_area" => Ok(MeasureKind::M2HullArea),
            other => Err(format!("unknown measure `{other}` (expected m1a, m2a or m2)")),
        }
    }
}

/// One measure evaluated on consecutive windows. `None` marks a window the
/// measure could not be computed for.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureSeries<T> {
    pub kind: MeasureKind,
    pub window: usize,
    pub stride: usize,
    pub axis: TimeAxis,
    /// Tick of each window's first sample.
    pub timestamps: Vec<i64>,
    pub values: Vec<Option<T>>,
}

impl<T: Scalar> MeasureSeries<T> {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn gap_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_none()).count()
    }

    /// Copy with `c` added to every value.
    pub fn shifted(&self, c: T) -> Self {
        Self { values: self.values.iter().map(|v| v.map(|x| x + c)).collect(), ..self.clone() }
    }

    /// Text of value `i` as written to CSV: shortest round-trip decimal, or
    /// empty for a gap.
    pub fn value_cell(&self, i: usize) -> String {
        self.values[i].map_or_else(String::new, |x| x.to_string())
    }

    /// CSV with columns `timestamp,value,gap`; gap rows leave `value` empty.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        wtr.write_record(["timestamp", "value", "gap"]).map_err(|e| Error::Csv(e.to_string()))?;
        for (i, (t, v)) in self.timestamps.iter().zip(&self.values).enumerate() {
            let gap = if v.is_some() { "0" } else { "1" };
            wtr.write_record([self.axis.label(*t), self.value_cell(i), gap.to_owned()])
                .map_err(|e| Error::Csv(e.to_string()))?;
        }
        wtr.flush().map_err(|e| Error::Csv(e.to_string()))
    }
}

/// Evaluates every requested measure on windows `[t, t + window)` for
/// `t = 0, stride, 2·stride, …`, stamping each value with the window start.
///
/// Each window's unit vectors give the projective distance matrix
/// (`arccos |ρ|` for every pair); the hull measure uses the sign-lifted unit
/// vectors.
/// Windows that fail (zero variance, no hemisphere, points off a 2-sphere)
/// become gaps.
pub fn sliding_measures<T: Scalar>(
    set: &TimeSeriesSet<T>,
    window: usize,
    stride: usize,
    kinds: &[MeasureKind],
) -> Result<Vec<MeasureSeries<T>>> {
    WindowSpec::new(0, window).with_stride(stride).check(set.len())?;
    for kind in kinds {
        if set.width() < kind.min_points() {
            return Err(Error::TooFewPoints { needed: kind.min_points(), got: set.width() });
        }
    }
    let count = (set.len() - window) / stride + 1;
    let rows: Vec<Vec<Option<T>>> = (0..count)
        .into_par_iter()
        .map(|i| evaluate_window(set, &WindowSpec::new(i * stride, window).with_stride(stride), kinds))
        .collect();
    let timestamps: Vec<i64> = (0..count).map(|i| set.tick(i * stride)).collect();
    Ok(kinds
        .iter()
        .enumerate()
        .map(|(k, &kind)| MeasureSeries {
            kind,
            window,
            stride,
            axis: set.axis(),
            timestamps: timestamps.clone(),
            values: rows.iter().map(|r| r[k]).collect(),
        })
        .collect())
}

fn evaluate_window<T: Scalar>(set: &TimeSeriesSet<T>, w: &WindowSpec, kinds: &[MeasureKind]) -> Vec<Option<T>> {
    let Ok(vectors) = unit_vectors(set, w) else {
        return vec![None; kinds.len()];
    };
    let dist = distance_matrix_from_vectors(&vectors, DistanceKind::Projective).ok();
    kinds
        .iter()
        .map(|kind| match kind {
            MeasureKind::M1aDiameter => dist.as_ref().and_then(|d| diameter(d).ok()).map(|r| r.value),
            MeasureKind::M2aMaxArea => dist.as_ref().and_then(|d| max_simplex_volume(d, 2).ok()).map(|r| r.value),
            MeasureKind::M2HullArea => spherical_convex_hull_area(&sign_lift_vectors(&vectors)).ok().map(|h| h.area),
        })
        .collect()
}

/// Detector settings echoed into every [`EventList`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectorParams {
    pub min_prominence: f64,
    /// In measure samples.
    pub min_separation: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Event<T> {
    /// Position in the measure series.
    pub index: usize,
    pub tick: i64,
    pub timestamp: String,
    pub value: T,
    pub prominence: T,
    /// Tick of the highest point between this minimum and the nearest lower
    /// value (or the segment edge) on the left.
    pub left_extent: i64,
    pub right_extent: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventList<T> {
    pub measure_kind: MeasureKind,
    pub params: DetectorParams,
    pub events: Vec<Event<T>>,
}

/// Local minima of `s` whose prominence is at least `min_prominence`, with
/// minima closer than `min_separation` samples thinned to the deepest.
///
/// A minimum is strictly below both neighbours; a flat bottom reports its
/// leftmost sample. Gaps split the series and nothing is detected across
/// them. Prominence is the smaller of the two crests bounding the basin
/// (the highest value passed before reaching a lower value or the segment
/// edge) minus the minimum. Among close minima the lower value wins, then
/// the earlier one.
pub fn detect_minima<T: Scalar>(s: &MeasureSeries<T>, min_prominence: T, min_separation: usize) -> EventList<T> {
    let mut candidates: Vec<Event<T>> = Vec::new();
    let mut i = 0;
    while i < s.values.len() {
        if s.values[i].is_none() {
            i += 1;
            continue;
        }
        let start = i;
        while i < s.values.len() && s.values[i].is_some() {
            i += 1;
        }
        let segment: Vec<T> = s.values[start..i].iter().map(|v| v.expect("inside a gap-free run")).collect();
        for m in segment_minima(&segment) {
            let (prominence, left, right) = prominence(&segment, m);
            if prominence >= min_prominence {
                let tick = s.timestamps[start + m];
                candidates.push(Event {
                    index: start + m,
                    tick,
                    timestamp: s.axis.label(tick),
                    value: segment[m],
                    prominence,
                    left_extent: s.timestamps[start + left],
                    right_extent: s.timestamps[start + right],
                });
            }
        }
    }

    candidates.sort_by(|a, b| a.value.partial_cmp(&b.value).expect("finite values").then(a.index.cmp(&b.index)));
    let mut kept: Vec<Event<T>> = Vec::new();
    for c in candidates {
        if kept.iter().all(|k| k.index.abs_diff(c.index) >= min_separation) {
            kept.push(c);
        }
    }
    kept.sort_by_key(|e| e.index);
    EventList {
        measure_kind: s.kind,
        params: DetectorParams { min_prominence: min_prominence.as_f64(), min_separation },
        events: kept,
    }
}

fn segment_minima<T: Scalar>(x: &[T]) -> Vec<usize> {
    let mut out = Vec::new();
    if x.len() < 3 {
        return out;
    }
    let mut i = 1;
    while i < x.len() - 1 {
        if x[i - 1] > x[i] {
            let mut ahead = i + 1;
            while ahead < x.len() && x[ahead] == x[i] {
                ahead += 1;
            }
            if ahead < x.len() && x[ahead] > x[i] {
                out.push(i);
            }
            i = ahead;
        } else {
            i += 1;
        }
    }
    out
}

/// Returns `(prominence, left crest, right crest)` for the minimum at `m`.
fn prominence<T: Scalar>(x: &[T], m: usize) -> (T, usize, usize) {
    let v = x[m];
    let mut left = m;
    let mut j = m;
    while j > 0 {
        j -= 1;
        if x[j] < v {
            break;
        }
        if x[j] > x[left] {
            left = j;
        }
    }
    let mut right = m;
    for (j, &xj) in x.iter().enumerate().skip(m + 1) {
        if xj < v {
            break;
        }
        if xj > x[right] {
            right = j;
        }
    }
    (x[left].min(x[right]) - v, left, right)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchedPair {
    pub a_index: usize,
    pub b_index: usize,
    pub a_timestamp: String,
    pub b_timestamp: String,
    /// `b_index - a_index`.
    pub offset: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonCounts {
    pub a: usize,
    pub b: usize,
    pub matched: usize,
    pub a_only: usize,
    pub b_only: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub a_kind: MeasureKind,
    pub b_kind: MeasureKind,
    /// In measure samples.
    pub match_window: usize,
    pub matched: Vec<MatchedPair>,
    pub a_only: Vec<String>,
    pub b_only: Vec<String>,
    pub counts: ComparisonCounts,
}

/// Greedy nearest-first matching of two event lists from one timeline:
/// candidate pairs within `match_window` samples are taken in order of
/// distance (ties by earlier `a`, then earlier `b`), each event used once.
pub fn compare_event_sets<T: Scalar>(a: &EventList<T>, b: &EventList<T>, match_window: usize) -> ComparisonReport {
    let mut pairs: Vec<(usize, usize, usize)> = Vec::new();
    for (i, ea) in a.events.iter().enumerate() {
        for (j, eb) in b.events.iter().enumerate() {
            let d = ea.index.abs_diff(eb.index);
            if d <= match_window {
                pairs.push((d, i, j));
            }
        }
    }
    pairs.sort_unstable();
    let mut used_a = vec![false; a.events.len()];
    let mut used_b = vec![false; b.events.len()];
    let mut matched = Vec::new();
    for (_, i, j) in pairs {
        if used_a[i] || used_b[j] {
            continue;
        }
        used_a[i] = true;
        used_b[j] = true;
        let (ea, eb) = (&a.events[i], &b.events[j]);
        matched.push(MatchedPair {
            a_index: ea.index,
            b_index: eb.index,
            a_timestamp: ea.timestamp.clone(),
            b_timestamp: eb.timestamp.clone(),
            offset: eb.index as i64 - ea.index as i64,
        });
    }
    matched.sort_by_key(|m| (m.a_index, m.b_index));
    let a_only: Vec<String> =
        a.events.iter().zip(&used_a).filter(|(_, u)| !**u).map(|(e, _)| e.timestamp.clone()).collect();
    let b_only: Vec<String> =
        b.events.iter().zip(&used_b).filter(|(_, u)| !**u).map(|(e, _)| e.timestamp.clone()).collect();
    ComparisonReport {
        a_kind: a.measure_kind,
        b_kind: b.measure_kind,
        match_window,
        counts: ComparisonCounts {
            a: a.events.len(),
            b: b.events.len(),
            matched: matched.len(),
            a_only: a_only.len(),
            b_only: b_only.len(),
        },
        matched,
        a_only,
        b_only,
    }
}
