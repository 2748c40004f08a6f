//! Run configuration: built-in defaults, overridden by a TOML file, overridden
//! by command-line flags.

use corrsphere::MeasureKind;
use corrsphere_testkit::benchmark;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::CliError;

/// The only config file schema this build reads.
pub const SCHEMA_VERSION: u32 = 1;

/// Output file families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            other => Err(format!("unknown format `{other}` (expected csv, json or svg)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        })
    }
}

/// Fully resolved settings for `analyze`, `events` and `validate`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub window: usize,
    pub stride: usize,
    pub measures: Vec<MeasureKind>,
    pub min_prominence: f64,
    pub min_separation: usize,
    pub match_window: usize,
    pub out: PathBuf,
    pub formats: Vec<Format>,
}

impl Default for RunConfig {
    /// The window is a plain default, not a value taken from any dataset;
    /// the detector settings are the ones tuned on the planted-episode
    /// benchmark.
    fn default() -> Self {
        Self {
            input: None,
            window: corrsphere::DEFAULT_WINDOW,
            stride: 1,
            measures: vec![MeasureKind::M1aDiameter, MeasureKind::M2aMaxArea],
            min_prominence: benchmark::MIN_PROMINENCE,
            min_separation: benchmark::MIN_SEPARATION,
            match_window: benchmark::MATCH_WINDOW,
            out: PathBuf::from("corrsphere-out"),
            formats: vec![Format::Csv],
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.window < 2 {
            return Err(CliError::Usage(format!("window must be at least 2, got {}", self.window)));
        }
        if self.stride < 1 {
            return Err(CliError::Usage("stride must be at least 1".into()));
        }
        if !(self.min_prominence.is_finite() && self.min_prominence >= 0.0) {
            return Err(CliError::Usage(format!("min-prominence must be >= 0, got {}", self.min_prominence)));
        }
        if self.measures.is_empty() {
            return Err(CliError::Usage("at least one measure is required".into()));
        }
        Ok(())
    }

    pub fn input(&self) -> Result<&Path, CliError> {
        self.input.as_deref().ok_or_else(|| CliError::Usage("--input is required".into()))
    }

    pub fn wants(&self, f: Format) -> bool {
        self.formats.contains(&f)
    }
}

/// Settings for `simulate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulateConfig {
    pub n_series: usize,
    pub length: usize,
    pub noise_sigma: f64,
    pub seed: u64,
    pub episodes: Vec<corrsphere_testkit::Episode>,
}

impl Default for SimulateConfig {
    fn default() -> Self {
        let spec = benchmark::benchmark_spec(0);
        Self {
            n_series: spec.n_series,
            length: spec.length,
            noise_sigma: spec.noise_sigma,
            seed: spec.rng_seed,
            episodes: spec.episodes,
        }
    }
}

/// On-disk config. Every field is optional except the schema version.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub schema_version: u32,
    pub input: Option<PathBuf>,
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub analysis: AnalysisSection,
    #[serde(default)]
    pub events: EventsSection,
    #[serde(default)]
    pub output: OutputSection,
    #[serde(default)]
    pub simulate: SimulateSection,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalysisSection {
    pub window: Option<usize>,
    pub stride: Option<usize>,
    pub measures: Option<Vec<String>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventsSection {
    pub min_prominence: Option<f64>,
    pub min_separation: Option<usize>,
    pub match_window: Option<usize>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub formats: Option<Vec<Format>>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulateSection {
    pub n_series: Option<usize>,
    pub length: Option<usize>,
    pub noise_sigma: Option<f64>,
    pub seed: Option<u64>,
    pub episodes: Option<Vec<corrsphere_testkit::Episode>>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Input(format!("config {}: {e}", path.display())))
    }

    pub fn parse(text: &str) -> Result<Self, String> {
        let file: ConfigFile = toml::from_str(text).map_err(|e| e.to_string())?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(format!("schema_version {} is not supported (expected {SCHEMA_VERSION})", file.schema_version));
        }
        Ok(file)
    }

    /// Applies the file on top of `base`.
    pub fn apply(&self, mut base: RunConfig) -> Result<RunConfig, CliError> {
        if let Some(p) = &self.input {
            base.input = Some(p.clone());
        }
        if let Some(p) = &self.out {
            base.out = p.clone();
        }
        if let Some(w) = self.analysis.window {
            base.window = w;
        }
        if let Some(s) = self.analysis.stride {
            base.stride = s;
        }
        if let Some(m) = &self.analysis.measures {
            base.measures = parse_measures(m)?;
        }
        if let Some(p) = self.events.min_prominence {
            base.min_prominence = p;
        }
        if let Some(s) = self.events.min_separation {
            base.min_separation = s;
        }
        if let Some(w) = self.events.match_window {
            base.match_window = w;
        }
        if let Some(f) = &self.output.formats {
            base.formats = f.clone();
        }
        Ok(base)
    }

    pub fn apply_simulate(&self, mut base: SimulateConfig) -> SimulateConfig {
        let s = &self.simulate;
        base.n_series = s.n_series.unwrap_or(base.n_series);
        base.length = s.length.unwrap_or(base.length);
        base.noise_sigma = s.noise_sigma.unwrap_or(base.noise_sigma);
        base.seed = s.seed.unwrap_or(base.seed);
        if let Some(e) = &s.episodes {
            base.episodes = e.clone();
        }
        base
    }
}

/// Parses measure names, dropping repeats and keeping first-seen order.
pub fn parse_measures<S: AsRef<str>>(names: &[S]) -> Result<Vec<MeasureKind>, CliError> {
    let mut out = Vec::new();
    for name in names {
        let kind: MeasureKind = name.as_ref().parse().map_err(CliError::Usage)?;
        if !out.contains(&kind) {
            out.push(kind);
        }
    }
    Ok(out)
}
