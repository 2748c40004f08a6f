use corrsphere::{
    compare_event_sets, detect_minima, sliding_measures, unit_vectors, verify_metric_axioms, ComparisonReport,
    DistanceKind, DistanceMatrix64, EventList64, MeasureSeries64, TimeSeriesSet64, WindowSpec,
};
use corrsphere_testkit::{simulate, SyntheticSpec};
use serde::Serialize;
use std::fs::File;
use std::io::BufReader;
use std::path::Path;

use crate::config::{Format, RunConfig, SimulateConfig};
use crate::output::OutputDir;
use crate::{svg, CliError, Outcome};

pub fn read_input(path: &Path) -> Result<TimeSeriesSet64, CliError> {
    let file = File::open(path).map_err(|e| CliError::Input(format!("cannot open {}: {e}", path.display())))?;
    let set = TimeSeriesSet64::read_csv(BufReader::new(file))
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    log::info!("read {} series of {} samples from {}", set.width(), set.len(), path.display());
    Ok(set)
}

fn measures(set: &TimeSeriesSet64, cfg: &RunConfig) -> Result<Vec<MeasureSeries64>, CliError> {
    let series = sliding_measures(set, cfg.window, cfg.stride, &cfg.measures).map_err(CliError::from)?;
    for s in &series {
        if s.gap_count() > 0 {
            log::warn!("{}: {} of {} windows are gaps", s.kind, s.gap_count(), s.len());
        }
    }
    Ok(series)
}

fn detect_all(series: &[MeasureSeries64], cfg: &RunConfig) -> Vec<EventList64> {
    series.iter().map(|s| detect_minima(s, cfg.min_prominence, cfg.min_separation)).collect()
}

fn csv_bytes(write: impl FnOnce(&mut Vec<u8>) -> corrsphere::Result<()>) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    write(&mut buf).map_err(|e| CliError::Io(e.to_string()))?;
    Ok(buf)
}

/// Timestamp column followed by one column per measure, cells identical to
/// the individual series files.
pub fn overlay_csv(series: &[MeasureSeries64]) -> String {
    let mut out = String::from("timestamp");
    for s in series {
        out.push(',');
        out.push_str(s.kind.name());
    }
    out.push('\n');
    let Some(first) = series.first() else {
        return out;
    };
    for (i, &t) in first.timestamps.iter().enumerate() {
        out.push_str(&first.axis.label(t));
        for s in series {
            out.push(',');
            out.push_str(&s.value_cell(i));
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct InputSummary {
    path: String,
    series: Vec<String>,
    samples: usize,
    axis: corrsphere::TimeAxis,
    first: String,
    last: String,
}

impl InputSummary {
    fn new(path: &Path, set: &TimeSeriesSet64) -> Self {
        Self {
            path: path.display().to_string(),
            series: set.ids(),
            samples: set.len(),
            axis: set.axis(),
            first: set.axis().label(set.tick(0)),
            last: set.axis().label(set.tick(set.len() - 1)),
        }
    }
}

#[derive(Serialize)]
struct SeriesSummary {
    kind: corrsphere::MeasureKind,
    windows: usize,
    gaps: usize,
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    config: &'a RunConfig,
    input: InputSummary,
    series: Vec<SeriesSummary>,
    outputs: Vec<String>,
}

pub fn analyze(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let input = cfg.input()?;
    let set = read_input(input)?;
    let series = measures(&set, cfg)?;
    let mut out = OutputDir::create(&cfg.out)?;
    if cfg.wants(Format::Csv) {
        for s in &series {
            out.write(&format!("measure_{}.csv", s.kind), &csv_bytes(|b| s.write_csv(b))?)?;
        }
        out.write("overlay.csv", overlay_csv(&series).as_bytes())?;
    }
    if cfg.wants(Format::Json) {
        for s in &series {
            out.write_json(&format!("measure_{}.json", s.kind), s)?;
        }
    }
    if cfg.wants(Format::Svg) {
        out.write("overlay.svg", svg::render(&series, &detect_all(&series, cfg)).as_bytes())?;
    }
    let mut outputs = out.names();
    outputs.push("manifest.json".into());
    let manifest = Manifest {
        tool: "corrsphere",
        version: corrsphere::VERSION,
        command: "analyze",
        config: cfg,
        input: InputSummary::new(input, &set),
        series: series.iter().map(|s| SeriesSummary { kind: s.kind, windows: s.len(), gaps: s.gap_count() }).collect(),
        outputs,
    };
    out.write_json("manifest.json", &manifest)?;
    out.commit();
    log::info!("analyze wrote {} measure series to {}", series.len(), cfg.out.display());
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct Comparisons {
    match_window: usize,
    reports: Vec<ComparisonReport>,
}

pub fn events(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let set = read_input(cfg.input()?)?;
    let series = measures(&set, cfg)?;
    let lists = detect_all(&series, cfg);
    let mut out = OutputDir::create(&cfg.out)?;
    for list in &lists {
        out.write_json(&format!("events_{}.json", list.measure_kind), list)?;
        log::info!("{}: {} minima", list.measure_kind, list.events.len());
    }
    let mut reports = Vec::new();
    for i in 0..lists.len() {
        for j in i + 1..lists.len() {
            reports.push(compare_event_sets(&lists[i], &lists[j], cfg.match_window));
        }
    }
    out.write_json("comparison.json", &Comparisons { match_window: cfg.match_window, reports })?;
    if cfg.wants(Format::Svg) {
        out.write("events.svg", svg::render(&series, &lists).as_bytes())?;
    }
    out.commit();
    Ok(Outcome::Success)
}

#[derive(Debug, Serialize)]
pub struct WindowFailure {
    pub window_start: String,
    pub kind: DistanceKind,
    pub report: corrsphere::MetricReport,
}

#[derive(Debug, Serialize)]
pub struct SkippedWindow {
    pub window_start: String,
    pub reason: String,
}

#[derive(Debug, Serialize)]
pub struct ValidationReport {
    pub windows: usize,
    pub checked_matrices: usize,
    pub skipped: Vec<SkippedWindow>,
    /// Smallest triangle slack over all windows, per distance kind.
    pub worst_spherical_margin: Option<f64>,
    pub worst_projective_margin: Option<f64>,
    pub failures: Vec<WindowFailure>,
    pub passed: bool,
}

/// Runs the metric-axiom check on the `Γ` and `Γ′` matrices of every window.
pub fn validate_set(set: &TimeSeriesSet64, window: usize, stride: usize) -> Result<ValidationReport, CliError> {
    WindowSpec::new(0, window).with_stride(stride).check(set.len()).map_err(CliError::from)?;
    let count = (set.len() - window) / stride + 1;
    let mut report = ValidationReport {
        windows: count,
        checked_matrices: 0,
        skipped: Vec::new(),
        worst_spherical_margin: None,
        worst_projective_margin: None,
        failures: Vec::new(),
        passed: true,
    };
    for w in 0..count {
        let start = w * stride;
        let label = set.axis().label(set.tick(start));
        let vectors = match unit_vectors(set, &WindowSpec::new(start, window)) {
            Ok(v) => v,
            Err(e) => {
                report.skipped.push(SkippedWindow { window_start: label, reason: e.to_string() });
                continue;
            }
        };
        let ids: Vec<String> = vectors.iter().map(|v| v.source_id.clone()).collect();
        for kind in [DistanceKind::Spherical, DistanceKind::Projective] {
            let m = DistanceMatrix64::from_unit_vectors_unchecked(&vectors, kind)
                .with_ids(ids.clone())
                .map_err(CliError::from)?;
            let r = verify_metric_axioms(&m);
            report.checked_matrices += 1;
            if let Some((_, _, _, margin)) = r.worst_triangle {
                let slot = match kind {
                    DistanceKind::Spherical => &mut report.worst_spherical_margin,
                    DistanceKind::Projective => &mut report.worst_projective_margin,
                };
                *slot = Some(slot.map_or(margin, |m: f64| m.min(margin)));
            }
            if !r.passed {
                report.passed = false;
                report.failures.push(WindowFailure { window_start: label.clone(), kind, report: r });
            }
        }
    }
    Ok(report)
}

pub fn validate(cfg: &RunConfig, write_report: bool) -> Result<Outcome, CliError> {
    let set = read_input(cfg.input()?)?;
    let report = validate_set(&set, cfg.window, cfg.stride)?;
    for f in &report.failures {
        for v in &f.report.violations {
            eprintln!(
                "violation: window {} {:?} {:?} at {:?} margin {:e}",
                f.window_start, f.kind, v.axiom, v.indices, v.margin
            );
        }
    }
    println!(
        "windows {} checked matrices {} skipped {} worst triangle margin spherical {} projective {}",
        report.windows,
        report.checked_matrices,
        report.skipped.len(),
        fmt_margin(report.worst_spherical_margin),
        fmt_margin(report.worst_projective_margin),
    );
    if write_report {
        let mut out = OutputDir::create(&cfg.out)?;
        out.write_json("validation.json", &report)?;
        out.commit();
    }
    if report.passed {
        println!("metric axioms hold on every window");
        Ok(Outcome::Success)
    } else {
        println!("metric axioms violated in {} matrices", report.failures.len());
        Ok(Outcome::ValidationFailed)
    }
}

fn fmt_margin(m: Option<f64>) -> String {
    m.map_or_else(|| "n/a".into(), |m| format!("{m:e}"))
}

#[derive(Serialize)]
struct Sidecar<'a> {
    tool: &'static str,
    version: &'static str,
    generator: &'static str,
    spec: &'a SyntheticSpec,
}

pub fn simulate_cmd(cfg: &SimulateConfig, out_dir: &Path) -> Result<Outcome, CliError> {
    let spec = SyntheticSpec {
        n_series: cfg.n_series,
        length: cfg.length,
        episodes: cfg.episodes.clone(),
        noise_sigma: cfg.noise_sigma,
        rng_seed: cfg.seed,
    };
    let set = simulate(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut out = OutputDir::create(out_dir)?;
    out.write("series.csv", &csv_bytes(|b| set.write_csv(b))?)?;
    out.write_json(
        "episodes.json",
        &Sidecar { tool: "corrsphere", version: corrsphere::VERSION, generator: "chacha8", spec: &spec },
    )?;
    out.commit();
    log::info!("simulated {} series of {} samples into {}", spec.n_series, spec.length, out_dir.display());
    Ok(Outcome::Success)
}
