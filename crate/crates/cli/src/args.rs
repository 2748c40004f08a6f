use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

use crate::config::{parse_measures, ConfigFile, Format, RunConfig, SimulateConfig};
use crate::CliError;

/// Correlation geometry of time series: spread measures over sliding
/// windows and their minima.
///
/// The log level is read from the CORRSPHERE_LOG environment variable.
#[derive(Debug, Parser)]
#[command(name = "corrsphere", version)]
pub struct Cli {
    /// TOML config file (schema_version = 1); flags override its values.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute measure series and write them with an overlay and a manifest.
    Analyze(RunArgs),
    /// Detect minima of each measure and compare them across measures.
    Events(RunArgs),
    /// Check the metric axioms on every window's distance matrices.
    Validate(RunArgs),
    /// Write synthetic series with planted coupling episodes.
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Args, Default)]
pub struct RunArgs {
    /// Input CSV: a tick or date column followed by one column per series.
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Window length K in samples.
    #[arg(long)]
    pub window: Option<usize>,
    /// Step between consecutive window starts, in samples.
    #[arg(long)]
    pub stride: Option<usize>,
    /// Comma separated: m1a (diameter), m2a (max triangle area), m2 (hull area).
    #[arg(long, value_delimiter = ',')]
    pub measures: Option<Vec<String>>,
    /// Smallest prominence a minimum needs to be reported.
    #[arg(long)]
    pub min_prominence: Option<f64>,
    /// Minimum distance between reported minima, in measure samples.
    #[arg(long)]
    pub min_separation: Option<usize>,
    /// Largest offset, in measure samples, for matching minima across measures.
    #[arg(long)]
    pub match_window: Option<usize>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
    /// Comma separated output formats: csv, json, svg.
    #[arg(long, value_delimiter = ',')]
    pub format: Option<Vec<Format>>,
}

impl RunArgs {
    /// Defaults, then the config file, then these flags.
    pub fn resolve(&self, file: Option<&ConfigFile>) -> Result<RunConfig, CliError> {
        let mut cfg = RunConfig::default();
        if let Some(file) = file {
            cfg = file.apply(cfg)?;
        }
        if let Some(p) = &self.input {
            cfg.input = Some(p.clone());
        }
        if let Some(w) = self.window {
            cfg.window = w;
        }
        if let Some(s) = self.stride {
            cfg.stride = s;
        }
        if let Some(m) = &self.measures {
            cfg.measures = parse_measures(m)?;
        }
        if let Some(p) = self.min_prominence {
            cfg.min_prominence = p;
        }
        if let Some(s) = self.min_separation {
            cfg.min_separation = s;
        }
        if let Some(w) = self.match_window {
            cfg.match_window = w;
        }
        if let Some(o) = &self.out {
            cfg.out = o.clone();
        }
        if let Some(f) = &self.format {
            cfg.formats = f.clone();
        }
        cfg.formats.sort();
        cfg.formats.dedup();
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Clone, Args, Default)]
pub struct SimulateArgs {
    /// Number of series to generate.
    #[arg(long)]
    pub n_series: Option<usize>,
    /// Samples per series.
    #[arg(long)]
    pub length: Option<usize>,
    /// Standard deviation of the added white noise.
    #[arg(long)]
    pub noise_sigma: Option<f64>,
    /// Seed for the ChaCha8 generator.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Coupling episode as START:END:STRENGTH (half-open sample range);
    /// repeatable. Replaces the configured episodes.
    #[arg(long = "episode", value_name = "START:END:STRENGTH", value_parser = parse_episode)]
    pub episodes: Vec<corrsphere_testkit::Episode>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

impl SimulateArgs {
    pub fn resolve(&self, file: Option<&ConfigFile>) -> (SimulateConfig, PathBuf) {
        let mut cfg = SimulateConfig::default();
        let mut out = RunConfig::default().out;
        if let Some(file) = file {
            cfg = file.apply_simulate(cfg);
            if let Some(o) = &file.out {
                out = o.clone();
            }
        }
        cfg.n_series = self.n_series.unwrap_or(cfg.n_series);
        cfg.length = self.length.unwrap_or(cfg.length);
        cfg.noise_sigma = self.noise_sigma.unwrap_or(cfg.noise_sigma);
        cfg.seed = self.seed.unwrap_or(cfg.seed);
        if !self.episodes.is_empty() {
            cfg.episodes = self.episodes.clone();
        }
        if let Some(o) = &self.out {
            out = o.clone();
        }
        (cfg, out)
    }
}

fn parse_episode(s: &str) -> Result<corrsphere_testkit::Episode, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [start, end, coupling] = parts.as_slice() else {
        return Err(format!("expected START:END:STRENGTH, got `{s}`"));
    };
    Ok(corrsphere_testkit::Episode {
        start: start.parse().map_err(|e| format!("episode start `{start}`: {e}"))?,
        end: end.parse().map_err(|e| format!("episode end `{end}`: {e}"))?,
        coupling: coupling.parse().map_err(|e| format!("episode strength `{coupling}`: {e}"))?,
    })
}
