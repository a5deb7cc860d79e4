//! File formats: time-series CSV, LES-series CSV (with `#` metadata lines),
//! scored CSV, and the JSON detection report. All writes go through a
//! temp-file-then-rename so readers never observe partial files.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use detector::{DetectionEvent, LesSeries, ScoringMethod, WindowSpec};
use dynsim::{Channel, TimeSeries};

use crate::error::{CliError, Result};

/// Write `contents` to `path` atomically (temp file + rename).
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = path.with_extension(match path.extension() {
        Some(ext) => format!("{}.tmp", ext.to_string_lossy()),
        None => "tmp".to_string(),
    });
    std::fs::write(&tmp, contents)
        .map_err(|e| CliError::runtime(format!("cannot write {}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, path).map_err(|e| {
        CliError::runtime(format!("cannot move {} into place: {e}", path.display()))
    })?;
    Ok(())
}

/// Shortest round-trip decimal for a data value; switches to exponent form
/// far from unit scale so rows stay compact.
fn fmt_value(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.abs() < 1e-4 || v.abs() >= 1e15 {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// Time-series CSV: header `t,<id>:<name>,...`, one row per sample, `t` in
/// fixed 9-decimal seconds.
pub fn write_timeseries_csv(series: &TimeSeries, path: &Path) -> Result<()> {
    let mut out = String::new();
    out.push('t');
    for ch in &series.channels {
        let _ = write!(out, ",{}:{}", ch.id, ch.name);
    }
    out.push('\n');
    for k in 0..series.len() {
        let _ = write!(out, "{:.9}", series.time_at(k));
        for ch in &series.data {
            out.push(',');
            out.push_str(&fmt_value(ch[k]));
        }
        out.push('\n');
    }
    write_atomic(path, &out)
}

/// Parse a time-series CSV. Errors name the first offending line (1-based,
/// counting the header). A header-only file yields an empty series.
pub fn read_timeseries_csv(path: &Path) -> Result<TimeSeries> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    let mut lines = text.lines().enumerate();
    let (_, header) = lines
        .next()
        .filter(|(_, l)| !l.trim().is_empty())
        .ok_or_else(|| CliError::config(format!("{}: empty file", path.display())))?;

    let mut cols = header.split(',');
    if cols.next() != Some("t") {
        return Err(CliError::config(format!(
            "{} line 1: header must start with column 't'",
            path.display()
        )));
    }
    let mut channels = Vec::new();
    for (i, col) in cols.enumerate() {
        let (id, name) = col.split_once(':').ok_or_else(|| {
            CliError::config(format!(
                "{} line 1: channel column {} must be '<id>:<name>', got '{col}'",
                path.display(),
                i + 2
            ))
        })?;
        let id: u32 = id.parse().map_err(|_| {
            CliError::config(format!(
                "{} line 1: bad channel id '{id}' in column {}",
                path.display(),
                i + 2
            ))
        })?;
        channels.push(Channel::new(id, name, ""));
    }
    if channels.is_empty() {
        return Err(CliError::config(format!(
            "{} line 1: no channel columns",
            path.display()
        )));
    }

    let n_cols = channels.len() + 1;
    let mut times: Vec<f64> = Vec::new();
    let mut data: Vec<Vec<f64>> = vec![Vec::new(); channels.len()];
    for (idx, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let line_no = idx + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != n_cols {
            return Err(CliError::config(format!(
                "{} line {line_no}: expected {n_cols} columns, got {}",
                path.display(),
                fields.len()
            )));
        }
        let mut parsed = Vec::with_capacity(n_cols);
        for (c, f) in fields.iter().enumerate() {
            let v: f64 = f.parse().map_err(|_| {
                CliError::config(format!(
                    "{} line {line_no} column {}: bad number '{f}'",
                    path.display(),
                    c + 1
                ))
            })?;
            parsed.push(v);
        }
        if let Some(&prev) = times.last() {
            if parsed[0] <= prev {
                return Err(CliError::config(format!(
                    "{} line {line_no}: time column not strictly increasing ({} after {prev})",
                    path.display(),
                    parsed[0]
                )));
            }
        }
        times.push(parsed[0]);
        for (ch, &v) in data.iter_mut().zip(parsed[1..].iter()) {
            ch.push(v);
        }
    }

    let (t0, sample_rate) = match times.len() {
        0 => (0.0, 1.0),
        1 => (times[0], 1.0),
        n => (times[0], (n - 1) as f64 / (times[n - 1] - times[0])),
    };
    TimeSeries::new(t0, sample_rate, channels, data).map_err(|e| CliError::config(e.to_string()))
}

fn fmt_ids(ids: &[u32]) -> String {
    ids.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn les_metadata(series: &LesSeries) -> String {
    let mut out = String::new();
    out.push_str("# les-series v1\n");
    let _ = writeln!(out, "# phi = {}", series.phi);
    let _ = writeln!(out, "# channels = {}", fmt_ids(&series.channel_ids));
    let _ = writeln!(out, "# window_length = {}", series.window.length);
    let _ = writeln!(out, "# stride = {}", series.window.stride);
    let _ = writeln!(out, "# c = {}", series.c);
    let _ = writeln!(out, "# standardized = {}", series.standardized);
    let _ = writeln!(out, "# sample_rate_hz = {}", series.sample_rate);
    out
}

/// LES-series CSV: `#` metadata lines, then `window_end_s,tau`.
pub fn write_les_csv(series: &LesSeries, path: &Path) -> Result<()> {
    let mut out = les_metadata(series);
    out.push_str("window_end_s,tau\n");
    for (t, tau) in series.window_end_s.iter().zip(series.tau.iter()) {
        let _ = writeln!(out, "{:.9},{}", t, fmt_value(*tau));
    }
    write_atomic(path, &out)
}

/// Scored CSV: same metadata plus the scoring context, then
/// `window_end_s,tau,score`.
pub fn write_scored_csv(
    series: &LesSeries,
    scores: &[f64],
    method: ScoringMethod,
    threshold: f64,
    path: &Path,
) -> Result<()> {
    let mut out = les_metadata(series);
    let _ = writeln!(out, "# method = {method}");
    let _ = writeln!(out, "# threshold = {threshold}");
    out.push_str("window_end_s,tau,score\n");
    for ((t, tau), s) in series
        .window_end_s
        .iter()
        .zip(series.tau.iter())
        .zip(scores)
    {
        let _ = writeln!(out, "{:.9},{},{}", t, fmt_value(*tau), fmt_value(*s));
    }
    write_atomic(path, &out)
}

/// Parse a LES-series CSV produced by [`write_les_csv`] (a trailing `score`
/// column is tolerated and ignored).
pub fn read_les_csv(path: &Path) -> Result<LesSeries> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    let mut meta = std::collections::BTreeMap::new();
    let mut header_seen = false;
    let mut with_score = false;
    let mut window_end_s = Vec::new();
    let mut tau = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix('#') {
            if let Some((k, v)) = rest.split_once('=') {
                meta.insert(k.trim().to_string(), v.trim().to_string());
            }
            continue;
        }
        if !header_seen {
            match trimmed {
                "window_end_s,tau" => with_score = false,
                "window_end_s,tau,score" => with_score = true,
                other => {
                    return Err(CliError::config(format!(
                        "{} line {line_no}: unexpected header '{other}'",
                        path.display()
                    )))
                }
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        let expect = if with_score { 3 } else { 2 };
        if fields.len() != expect {
            return Err(CliError::config(format!(
                "{} line {line_no}: expected {expect} columns, got {}",
                path.display(),
                fields.len()
            )));
        }
        let parse = |f: &str, c: usize| -> Result<f64> {
            f.parse().map_err(|_| {
                CliError::config(format!(
                    "{} line {line_no} column {c}: bad number '{f}'",
                    path.display()
                ))
            })
        };
        window_end_s.push(parse(fields[0], 1)?);
        tau.push(parse(fields[1], 2)?);
    }
    if !header_seen {
        return Err(CliError::config(format!(
            "{}: missing 'window_end_s,tau' header",
            path.display()
        )));
    }

    let get = |k: &str| -> Result<&String> {
        meta.get(k).ok_or_else(|| {
            CliError::config(format!(
                "{}: missing metadata '# {k} = ...'",
                path.display()
            ))
        })
    };
    let channel_ids: Vec<u32> = get("channels")?
        .split(',')
        .map(|s| s.trim().parse::<u32>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CliError::config(format!("{}: bad channels metadata", path.display())))?;
    let window_length: usize = get("window_length")?
        .parse()
        .map_err(|_| CliError::config(format!("{}: bad window_length", path.display())))?;
    let stride: usize = get("stride")?
        .parse()
        .map_err(|_| CliError::config(format!("{}: bad stride", path.display())))?;
    let c: f64 = get("c")?
        .parse()
        .map_err(|_| CliError::config(format!("{}: bad c", path.display())))?;
    let standardized: bool = get("standardized")?
        .parse()
        .map_err(|_| CliError::config(format!("{}: bad standardized", path.display())))?;
    let sample_rate: f64 = get("sample_rate_hz")?
        .parse()
        .map_err(|_| CliError::config(format!("{}: bad sample_rate_hz", path.display())))?;
    let window = WindowSpec::new(window_length, stride).map_err(CliError::from)?;

    Ok(LesSeries {
        window_end_s,
        tau,
        phi: get("phi")?.clone(),
        channel_ids,
        c,
        window,
        standardized,
        sample_rate,
    })
}

/// JSON detection report: events plus an echo of the configuration that
/// produced them.
#[derive(Debug, Clone, Serialize)]
pub struct DetectionReport {
    pub schema: &'static str,
    pub method: String,
    pub threshold: f64,
    pub min_gap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reference: Option<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa4: Option<f64>,
    pub phi: String,
    pub channels: Vec<u32>,
    pub window_length: usize,
    pub stride: usize,
    pub c: f64,
    pub standardized: bool,
    pub events: Vec<EventJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EventJson {
    pub window_index: usize,
    pub time_s: f64,
    pub score: f64,
}

impl DetectionReport {
    pub fn from_events(
        series: &LesSeries,
        events: &[DetectionEvent],
        method: ScoringMethod,
        threshold: f64,
        min_gap: usize,
        reference: Option<(usize, usize)>,
        kappa4: Option<f64>,
    ) -> Self {
        DetectionReport {
            schema: "detection-report/1",
            method: method.to_string(),
            threshold,
            min_gap,
            reference: reference.map(|(a, b)| [a, b]),
            kappa4,
            phi: series.phi.clone(),
            channels: series.channel_ids.clone(),
            window_length: series.window.length,
            stride: series.window.stride,
            c: series.c,
            standardized: series.standardized,
            events: events
                .iter()
                .map(|e| EventJson {
                    window_index: e.window_index,
                    time_s: e.time_s,
                    score: e.score,
                })
                .collect(),
        }
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)
            .map_err(|e| CliError::runtime(format!("report serialization: {e}")))?;
        text.push('\n');
        write_atomic(path, &text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use dynsim::Channel;
    use std::path::PathBuf;

    fn tmp(name: &str) -> PathBuf {
        let mut p = std::env::temp_dir();
        p.push(format!("rmt-io-{}-{name}", std::process::id()));
        p
    }

    fn sample_series() -> TimeSeries {
        let chans = vec![Channel::new(1, "x1", ""), Channel::new(2, "x2", "")];
        let data = vec![
            vec![1.5, -2.25, 0.0, 1e-9],
            vec![0.1, 0.2, 0.30000000000000004, 4e22],
        ];
        TimeSeries::new(0.0, 100.0, chans, data).unwrap()
    }

    #[test]
    fn timeseries_round_trip() {
        let path = tmp("roundtrip.csv");
        let ts = sample_series();
        write_timeseries_csv(&ts, &path).unwrap();
        let back = read_timeseries_csv(&path).unwrap();
        assert_eq!(back.len(), ts.len());
        assert!((back.sample_rate - 100.0).abs() < 1e-10);
        for (a, b) in ts.data.iter().zip(back.data.iter()) {
            assert_eq!(a, b);
        }
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn header_only_gives_empty_series() {
        let path = tmp("header-only.csv");
        std::fs::write(&path, "t,1:x1\n").unwrap();
        let ts = read_timeseries_csv(&path).unwrap();
        assert_eq!(ts.len(), 0);
        assert_eq!(ts.n_channels(), 1);
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn empty_file_rejected() {
        let path = tmp("empty.csv");
        std::fs::write(&path, "").unwrap();
        assert!(read_timeseries_csv(&path).is_err());
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn non_monotone_time_names_row() {
        let path = tmp("nonmono.csv");
        std::fs::write(&path, "t,1:a\n0.0,1\n0.01,2\n0.005,3\n").unwrap();
        let err = read_timeseries_csv(&path).unwrap_err();
        assert!(err.to_string().contains("line 4"), "{err}");
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn bad_float_names_row_and_column() {
        let path = tmp("badfloat.csv");
        std::fs::write(&path, "t,1:a\n0.0,1\n0.01,zap\n").unwrap();
        let err = read_timeseries_csv(&path).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3") && msg.contains("column 2"), "{msg}");
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn les_csv_round_trip() {
        let path = tmp("les.csv");
        let series = LesSeries {
            window_end_s: vec![19.99, 20.99],
            tau: vec![1.834e11, 1.829e11],
            phi: "power2".into(),
            channel_ids: vec![1, 2, 3],
            c: 0.0015,
            window: WindowSpec::new(2000, 100).unwrap(),
            standardized: false,
            sample_rate: 100.0,
        };
        write_les_csv(&series, &path).unwrap();
        let back = read_les_csv(&path).unwrap();
        assert_eq!(back.phi, "power2");
        assert_eq!(back.channel_ids, vec![1, 2, 3]);
        assert_eq!(back.window.length, 2000);
        assert_eq!(back.c, 0.0015);
        assert_eq!(back.tau, series.tau);
        std::fs::remove_file(&path).ok();
    }
}
