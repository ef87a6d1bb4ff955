//! Least-squares rate fits on log-log axes.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub stderr: f64,
    pub r_squared: f64,
    /// Abscissa range actually used (after dropping extremes).
    pub window: (f64, f64),
}

/// Fit y ≈ C·x^slope by least squares on (log x, log y). With six or more
/// points the two extreme abscissas are excluded (asymptotic regimes only);
/// the window records what was kept.
pub fn fit_rate(xs: &[f64], ys: &[f64]) -> Result<RateFit> {
    if xs.len() != ys.len() {
        return Err(Error::InsufficientData("xs/ys length mismatch".into()));
    }
    if xs.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "need at least 4 points, got {}",
            xs.len()
        )));
    }
    if xs.iter().chain(ys.iter()).any(|&v| !(v > 0.0)) {
        return Err(Error::NonPositiveData(
            "log-log fit needs strictly positive data".into(),
        ));
    }
    let mut pairs: Vec<(f64, f64)> = xs.iter().cloned().zip(ys.iter().cloned()).collect();
    pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let used: &[(f64, f64)] = if pairs.len() >= 6 {
        &pairs[1..pairs.len() - 1]
    } else {
        &pairs
    };
    let n = used.len() as f64;
    let lx: Vec<f64> = used.iter().map(|p| p.0.ln()).collect();
    let ly: Vec<f64> = used.iter().map(|p| p.1.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|v| (v - mx) * (v - mx)).sum();
    let sxy: f64 = lx.iter().zip(ly.iter()).map(|(a, b)| (a - mx) * (b - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData("degenerate abscissa".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = lx
        .iter()
        .zip(ly.iter())
        .map(|(a, b)| {
            let r = b - (intercept + slope * a);
            r * r
        })
        .sum();
    let ss_tot: f64 = ly.iter().map(|v| (v - my) * (v - my)).sum();
    let dof = (used.len() as f64 - 2.0).max(1.0);
    let stderr = (ss_res / dof / sxx).sqrt();
    let r_squared = if ss_tot > 0.0 {
        1.0 - ss_res / ss_tot
    } else {
        1.0
    };
    Ok(RateFit {
        slope,
        intercept,
        stderr,
        r_squared,
        window: (used[0].0, used[used.len() - 1].0),
    })
}
