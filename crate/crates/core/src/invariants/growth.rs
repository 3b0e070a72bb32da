use serde::Serialize;

use crate::error::{Error, Result};

/// Default number of trailing degrees used by the fits.
pub const DEFAULT_WINDOW: usize = 4;
/// Default slack when comparing fitted rates.
pub const DEFAULT_TOLERANCE: f64 = 0.3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "type", content = "value")]
pub enum Complexity {
    Finite(u32),
    Infinite,
}

/// Finite-scale growth diagnostics of a non-negative sequence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthEstimate {
    /// `a_nmax^(1/nmax)`.
    pub root_tail: f64,
    /// `a_nmax / a_(nmax-1)` when the denominator is positive.
    pub ratio_tail: Option<f64>,
    /// `exp` of the least-squares slope of `log a_n` over the window; the
    /// curvature estimate. Zero when fewer than two window entries are positive.
    pub fitted_rate: f64,
    /// Root-mean-square residual of that fit.
    pub residual: f64,
    pub window: usize,
    /// Least-squares slope of `log a_n` against `log n` over the window.
    pub poly_degree_fit: f64,
    /// `1 + round(poly_degree_fit)` (ties down) when the rate is at most
    /// `1 + tolerance`, zero for eventually vanishing tables.
    pub complexity: Complexity,
    pub tolerance: f64,
}

/// Least-squares slope and RMS residual of `ys` against `xs`.
fn fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| {
            let r = y - (my + slope * (x - mx));
            r * r
        })
        .sum();
    (slope, (rss / n).sqrt())
}

fn round_half_down(x: f64) -> f64 {
    (x - 0.5).ceil()
}

/// Growth estimate of `values[n]`, `0 ≤ n ≤ nmax`; needs `nmax ≥ window + 2`.
pub fn curvature_estimate(values: &[usize], window: usize, tolerance: f64) -> Result<GrowthEstimate> {
    let window = window.max(2);
    if values.len() < window + 3 {
        return Err(Error::TableTooShort {
            needed: window + 3,
            have: values.len(),
        });
    }
    let nmax = values.len() - 1;
    let last = values[nmax] as f64;
    let root_tail = last.powf(1.0 / nmax as f64);
    let ratio_tail = (values[nmax - 1] > 0).then(|| last / values[nmax - 1] as f64);

    let pts: Vec<(f64, f64)> = (nmax + 1 - window..=nmax)
        .filter(|&n| values[n] > 0)
        .map(|n| (n as f64, (values[n] as f64).ln()))
        .collect();
    let (fitted_rate, residual, poly_degree_fit) = if pts.len() < 2 {
        (0.0, 0.0, 0.0)
    } else {
        let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
        let (slope, residual) = fit(&xs, &ys);
        let logs: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
        let (degree, _) = fit(&logs, &ys);
        (slope.exp(), residual, degree)
    };
    let complexity = if fitted_rate == 0.0 {
        Complexity::Finite(0)
    } else if fitted_rate <= 1.0 + tolerance {
        Complexity::Finite((1.0 + round_half_down(poly_degree_fit)).max(1.0) as u32)
    } else {
        Complexity::Infinite
    };
    Ok(GrowthEstimate {
        root_tail,
        ratio_tail,
        fitted_rate,
        residual,
        window,
        poly_degree_fit,
        complexity,
        tolerance,
    })
}

/// The same diagnostics as [`curvature_estimate`], read for the complexity.
pub fn complexity_estimate(values: &[usize], window: usize, tolerance: f64) -> Result<GrowthEstimate> {
    curvature_estimate(values, window, tolerance)
}
