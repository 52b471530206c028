use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use super::{simulate, Mode, SimError};
use crate::circuits::ProofSystem;
use crate::sigma::StringValue;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub len_u: u64,
    pub proof_size: u64,
    pub millis: f64,
}

/// Least squares fit of `log(size) = slope · log(len) + intercept`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub residuals: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub fit: Option<Fit>,
    pub warning: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BenchError {
    #[error("input {index} (|U| = {len_u}): {err}")]
    Simulate {
        index: usize,
        len_u: u64,
        err: SimError,
    },
    #[error("input {index} (|U| = {len_u}): output rejected: {msg}")]
    Rejected {
        index: usize,
        len_u: u64,
        msg: String,
    },
}

/// `None` when fewer than two distinct positive `x` values.
pub fn fit_loglog(points: &[(f64, f64)]) -> Option<Fit> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = pts.len() as f64;
    if n < 2.0 {
        return None;
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx < 1e-12 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals: Vec<f64> = pts
        .iter()
        .map(|p| p.1 - (slope * p.0 + intercept))
        .collect();
    let ss_res: f64 = residuals.iter().map(|r| r * r).sum();
    let ss_tot: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let r2 = if ss_tot < 1e-12 {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Some(Fit {
        slope,
        intercept,
        r2,
        residuals,
    })
}

/// Simulates every input (in parallel), checks each output, and fits
/// proof size against `|U_0|`.
pub fn bench_polynomiality(
    sys: &dyn ProofSystem,
    inputs: &[StringValue],
    mode: Mode,
) -> Result<BenchReport, BenchError> {
    let rows = inputs
        .par_iter()
        .enumerate()
        .map(|(index, u)| {
            let t = Instant::now();
            let run = simulate(sys, u, mode).map_err(|err| BenchError::Simulate {
                index,
                len_u: u.length(),
                err,
            })?;
            let millis = t.elapsed().as_secs_f64() * 1e3;
            run.check().map_err(|msg| BenchError::Rejected {
                index,
                len_u: u.length(),
                msg,
            })?;
            Ok(BenchRow {
                len_u: u.length(),
                proof_size: run.size(),
                millis,
            })
        })
        .collect::<Result<Vec<_>, BenchError>>()?;
    let mut sizes: Vec<u64> = rows.iter().map(|r| r.len_u).collect();
    sizes.sort_unstable();
    sizes.dedup();
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| (r.len_u as f64, r.proof_size as f64))
        .collect();
    let fit = fit_loglog(&points);
    let warning = if fit.is_none() {
        Some("fewer than two distinct input sizes; no slope".to_string())
    } else if sizes.len() < 4 {
        Some(format!("only {} distinct input sizes", sizes.len()))
    } else {
        None
    };
    Ok(BenchReport { rows, fit, warning })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let pts: Vec<(f64, f64)> = (1..6)
            .map(|x| (x as f64, 3.0 * (x as f64).powi(2)))
            .collect();
        let f = fit_loglog(&pts).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-9);
        assert!((f.intercept - 3f64.ln()).abs() < 1e-9);
        assert!((f.r2 - 1.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(fit_loglog(&[(4.0, 10.0), (4.0, 12.0)]).is_none());
        let f = fit_loglog(&[(1.0, 5.0), (2.0, 5.0), (4.0, 5.0)]).unwrap();
        assert!(f.slope.abs() < 1e-9);
    }
}
