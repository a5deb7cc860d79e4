//! Small argument parsers shared by the CLI surface.

use rmt_core::{mp_support, TestFunction};

use crate::error::{CliError, Result};

/// Parse a channel subset: a range `1-24`, a comma list `1,4,7`, or a mix
/// `1-3,7,10-12`.
pub fn parse_subset(spec: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(CliError::config(format!(
                "empty element in subset '{spec}'"
            )));
        }
        match part.split_once('-') {
            Some((a, b)) => {
                let lo: u32 = a
                    .trim()
                    .parse()
                    .map_err(|_| CliError::config(format!("bad subset bound '{a}' in '{spec}'")))?;
                let hi: u32 = b
                    .trim()
                    .parse()
                    .map_err(|_| CliError::config(format!("bad subset bound '{b}' in '{spec}'")))?;
                if hi < lo {
                    return Err(CliError::config(format!(
                        "descending range '{part}' in subset '{spec}'"
                    )));
                }
                out.extend(lo..=hi);
            }
            None => out.push(part.parse().map_err(|_| {
                CliError::config(format!("bad channel id '{part}' in subset '{spec}'"))
            })?),
        }
    }
    if out.is_empty() {
        return Err(CliError::config("subset resolves to no channels"));
    }
    let mut dedup = out.clone();
    dedup.sort_unstable();
    dedup.dedup();
    if dedup.len() != out.len() {
        return Err(CliError::config(format!(
            "subset '{spec}' repeats a channel"
        )));
    }
    Ok(out)
}

/// Parse a test-function name: `identity`, `log`, `power<k>`, or `cheb<k>`.
/// Chebyshev needs the window aspect ratio to place its rescaled support.
pub fn parse_phi(name: &str, c_for_cheb: Option<f64>) -> Result<TestFunction> {
    match name {
        "identity" => Ok(TestFunction::Identity),
        "log" => Ok(TestFunction::Log),
        _ => {
            if let Some(k) = name.strip_prefix("power") {
                let k: u32 = k
                    .parse()
                    .map_err(|_| CliError::config(format!("bad power degree in '{name}'")))?;
                return Ok(TestFunction::Power(k));
            }
            if let Some(k) = name.strip_prefix("cheb") {
                let degree: u32 = k
                    .parse()
                    .map_err(|_| CliError::config(format!("bad chebyshev degree in '{name}'")))?;
                let c = c_for_cheb.ok_or_else(|| {
                    CliError::config("chebyshev test function needs a window shape for its support")
                })?;
                let (lo, hi) = mp_support(c)?;
                return Ok(TestFunction::Chebyshev { degree, lo, hi });
            }
            Err(CliError::config(format!(
                "unknown test function '{name}' (expected identity, log, power<k>, cheb<k>)"
            )))
        }
    }
}

/// Seed resolution: explicit flag first, then the SPECTRAL_SENTINEL_SEED
/// environment variable; `None` lets the caller fall back to its default.
pub fn resolve_seed(flag: Option<u64>) -> Result<Option<u64>> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("SPECTRAL_SENTINEL_SEED") {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| {
            CliError::config(format!("SPECTRAL_SENTINEL_SEED='{v}' is not a valid seed"))
        }),
        Err(_) => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets() {
        assert_eq!(parse_subset("1-4").unwrap(), vec![1, 2, 3, 4]);
        assert_eq!(parse_subset("2,5,9").unwrap(), vec![2, 5, 9]);
        assert_eq!(parse_subset("1-3,7").unwrap(), vec![1, 2, 3, 7]);
        assert!(parse_subset("4-2").is_err());
        assert!(parse_subset("1,1").is_err());
        assert!(parse_subset("x").is_err());
    }

    #[test]
    fn phis() {
        assert_eq!(parse_phi("identity", None).unwrap(), TestFunction::Identity);
        assert_eq!(parse_phi("power2", None).unwrap(), TestFunction::Power(2));
        assert_eq!(parse_phi("log", None).unwrap(), TestFunction::Log);
        match parse_phi("cheb3", Some(0.25)).unwrap() {
            TestFunction::Chebyshev { degree: 3, lo, hi } => {
                assert!((lo - 1.0).abs() < 1e-9 && (hi - 9.0).abs() < 1e-9);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_phi("cheb3", None).is_err());
        assert!(parse_phi("cube", None).is_err());
    }
}
