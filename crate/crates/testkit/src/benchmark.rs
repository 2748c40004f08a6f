//! The planted-episode benchmark used to fix detector defaults.

use corrsphere::{compare_event_sets, detect_minima, sliding_measures, ComparisonReport, EventList64, MeasureKind};

use crate::simulate::{simulate, Episode, SyntheticSpec};

pub const WINDOW: usize = 21;
pub const SERIES: usize = 4;
pub const COUPLING: f64 = 0.9;
pub const NOISE_SIGMA: f64 = 0.1;
pub const EPISODE_LEN: usize = 3 * WINDOW;
pub const LENGTH: usize = 400;
pub const EPISODE_STARTS: [usize; 2] = [100, 260];
pub const MIN_PROMINENCE: f64 = 0.7;
pub const MIN_SEPARATION: usize = 10;
pub const MATCH_WINDOW: usize = WINDOW;

/// Four series of 400 samples with two episodes of length `3K`.
pub fn benchmark_spec(seed: u64) -> SyntheticSpec {
    SyntheticSpec {
        n_series: SERIES,
        length: LENGTH,
        episodes: EPISODE_STARTS
            .iter()
            .map(|&start| Episode { start, end: start + EPISODE_LEN, coupling: COUPLING })
            .collect(),
        noise_sigma: NOISE_SIGMA,
        rng_seed: seed,
    }
}

#[derive(Debug, Clone)]
pub struct BenchmarkOutcome {
    pub spec: SyntheticSpec,
    pub diameter: EventList64,
    pub area: EventList64,
    /// Per episode, whether some diameter event starts its window inside.
    pub diameter_hits: Vec<bool>,
    pub area_hits: Vec<bool>,
    /// Diameter events against area events.
    pub comparison: ComparisonReport,
}

impl BenchmarkOutcome {
    pub fn all_episodes_found(&self) -> bool {
        self.diameter_hits.iter().chain(&self.area_hits).all(|&h| h)
    }
}

/// Simulates one seed, evaluates `D(t)` and `A(t)`, and checks for events
/// whose window start lies inside each episode.
pub fn run_benchmark(seed: u64, min_prominence: f64, min_separation: usize) -> BenchmarkOutcome {
    let spec = benchmark_spec(seed);
    let set = simulate(&spec).expect("benchmark spec is valid");
    let kinds = [MeasureKind::M1aDiameter, MeasureKind::M2aMaxArea];
    let series = sliding_measures(&set, WINDOW, 1, &kinds).expect("window fits");
    let diameter = detect_minima(&series[0], min_prominence, min_separation);
    let area = detect_minima(&series[1], min_prominence, min_separation);
    let hits = |list: &EventList64| -> Vec<bool> {
        spec.episodes
            .iter()
            .map(|e| list.events.iter().any(|ev| ev.tick >= e.start as i64 && ev.tick < e.end as i64))
            .collect()
    };
    let diameter_hits = hits(&diameter);
    let area_hits = hits(&area);
    let comparison = compare_event_sets(&diameter, &area, MATCH_WINDOW);
    BenchmarkOutcome { spec, diameter, area, diameter_hits, area_hits, comparison }
}
