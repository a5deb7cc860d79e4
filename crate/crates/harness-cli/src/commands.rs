//! The four pipeline verbs behind the CLI: simulate, analyze, detect,
//! reproduce. Each returns a structured summary so both `main` and the test
//! suites can drive them directly.

use std::path::Path;

use detector::{
    detect_changepoints, les_series, reference_score, zscore_null, DetectionConfig, LesSeries,
    ScoringMethod, WindowSpec,
};
use dynsim::{add_noise, simulate_lorenz, simulate_power3bus, TimeSeries};

use crate::args::{parse_phi, parse_subset};
use crate::config::{RunConfig, SystemConfig};
use crate::error::{CliError, Result};
use crate::io::{
    read_les_csv, read_timeseries_csv, write_les_csv, write_scored_csv, write_timeseries_csv,
    DetectionReport,
};

/// Outcome of `simulate`.
#[derive(Debug)]
pub struct SimulateSummary {
    pub samples: usize,
    pub channels: Vec<String>,
}

/// Run a configured simulation and write the series CSV.
pub fn cmd_simulate(
    config_path: &Path,
    out_path: &Path,
    seed: Option<u64>,
) -> Result<SimulateSummary> {
    let mut cfg = RunConfig::load(config_path)?;
    if let Some(seed) = seed {
        cfg.sim.seed = seed;
    }
    let series = simulate_from_config(&cfg)?;
    write_timeseries_csv(&series, out_path)?;
    Ok(SimulateSummary {
        samples: series.len(),
        channels: series
            .channels
            .iter()
            .map(|c| format!("{}:{}", c.id, c.name))
            .collect(),
    })
}

/// Simulation stage shared by `simulate` and the case runners.
pub fn simulate_from_config(cfg: &RunConfig) -> Result<TimeSeries> {
    let sim = cfg.sim_config();
    let schedule = cfg.schedule()?;
    let series = match &cfg.system {
        SystemConfig::Lorenz { sigma, rho, beta } => {
            let params = dynsim::LorenzParams::new(*sigma, *rho, *beta)?;
            simulate_lorenz(&params, &schedule, &sim)?
        }
        SystemConfig::Power3bus { params, .. } => {
            let p: dynsim::Power3BusParams = params.clone().into();
            let closures = cfg.closures().expect("power3bus always has closures");
            simulate_power3bus(&p, &closures, &schedule, &sim)?
        }
    };
    match cfg.noise_snr_db {
        Some(snr) => Ok(add_noise(&series, snr, sim.seed)?),
        None => Ok(series),
    }
}

/// Arguments for `analyze`.
#[derive(Debug, Clone)]
pub struct AnalyzeArgs {
    pub window: usize,
    pub stride: usize,
    pub phi: String,
    /// None selects every channel in the input.
    pub subset: Option<String>,
    pub standardize: bool,
}

#[derive(Debug)]
pub struct AnalyzeSummary {
    pub windows: usize,
    pub c: f64,
}

/// Slide windows over a series CSV and write the LES trace.
pub fn cmd_analyze(in_path: &Path, args: &AnalyzeArgs, out_path: &Path) -> Result<AnalyzeSummary> {
    let series = read_timeseries_csv(in_path)?;
    let subset = match &args.subset {
        Some(spec) => parse_subset(spec)?,
        None => series.channels.iter().map(|c| c.id).collect(),
    };
    let spec = WindowSpec::new(args.window, args.stride)?;
    spec.validate_for_channels(subset.len())?;
    let c = subset.len() as f64 / args.window as f64;
    let phi = parse_phi(&args.phi, Some(c))?;
    let les = les_series(&series, &spec, &phi, args.standardize, &subset)?;
    write_les_csv(&les, out_path)?;
    Ok(AnalyzeSummary {
        windows: les.len(),
        c: les.c,
    })
}

/// Arguments for `detect`.
#[derive(Debug, Clone)]
pub struct DetectArgs {
    pub method: ScoringMethod,
    pub threshold: f64,
    /// Reference window range; defaults to the first 30 windows (or as many
    /// as exist, minimum 8) for the reference-window method.
    pub reference: Option<(usize, usize)>,
    pub min_gap: usize,
    /// Entry excess kurtosis for the null-zscore method.
    pub kappa4: f64,
    /// Optional scored-CSV side output.
    pub scored_csv: Option<std::path::PathBuf>,
}

impl Default for DetectArgs {
    fn default() -> Self {
        DetectArgs {
            method: ScoringMethod::ReferenceWindow,
            threshold: 3.0,
            reference: None,
            min_gap: 20,
            kappa4: 0.0,
            scored_csv: None,
        }
    }
}

/// Score a LES-series CSV and write the JSON event report.
pub fn cmd_detect(in_path: &Path, args: &DetectArgs, out_path: &Path) -> Result<DetectionReport> {
    let series = read_les_csv(in_path)?;
    let (scores, reference) = score_series(&series, args)?;
    let det_cfg = DetectionConfig {
        method: args.method,
        threshold: args.threshold,
        reference: reference.unwrap_or((0, 0)),
        min_gap: args.min_gap,
    };
    if args.method == ScoringMethod::NullZscore {
        // Crossing detection needs a validated config even without a reference.
        if args.threshold.is_nan() || args.threshold <= 0.0 {
            return Err(CliError::config("threshold must be positive"));
        }
    }
    let events = detect_changepoints(&scores, &series.window_end_s, &det_cfg, &series.channel_ids)?;
    let report = DetectionReport::from_events(
        &series,
        &events,
        args.method,
        args.threshold,
        args.min_gap,
        reference,
        (args.method == ScoringMethod::NullZscore).then_some(args.kappa4),
    );
    report.write(out_path)?;
    if let Some(scored) = &args.scored_csv {
        write_scored_csv(&series, &scores, args.method, args.threshold, scored)?;
    }
    Ok(report)
}

/// Scores plus the reference range that produced them (when one was used).
pub type ScoredSeries = (Vec<f64>, Option<(usize, usize)>);

/// Produce per-window scores for a LES trace under the chosen method.
pub fn score_series(series: &LesSeries, args: &DetectArgs) -> Result<ScoredSeries> {
    match args.method {
        ScoringMethod::ReferenceWindow => {
            let reference = match args.reference {
                Some(r) => r,
                None => {
                    let n = series.len();
                    if n < 8 {
                        return Err(CliError::config(format!(
                            "reference-window scoring needs >= 8 windows, series has {n}"
                        )));
                    }
                    (0, n.min(30))
                }
            };
            let scores = reference_score(series, reference)?;
            Ok((scores, Some(reference)))
        }
        ScoringMethod::NullZscore => {
            let phi = parse_phi(&series.phi, Some(series.c)).map_err(|_| {
                CliError::config(format!(
                    "null-zscore scoring cannot reconstruct test function '{}'",
                    series.phi
                ))
            })?;
            let n = series.n_channels();
            let mut scores = Vec::with_capacity(series.len());
            for &tau in &series.tau {
                scores.push(zscore_null(tau, &phi, n, series.c, args.kappa4)?);
            }
            Ok((scores, None))
        }
    }
}
