//! Coherence-versus-size series and their log-log slopes.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{default_method, family_exact, ExactMethod};
use crate::format::sig;
use crate::generators::{vertex_count, Family};
use crate::ingest::NetworkStats;

pub const SCALING_CSV_HEADER: &str = "label,N,h_fo,h_so,method";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingPoint {
    pub label: String,
    #[serde(rename = "N")]
    pub n_vertices: u64,
    pub h_fo: f64,
    pub h_so: f64,
    pub method: String,
}

impl ScalingPoint {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{}",
            self.label,
            self.n_vertices,
            sig(self.h_fo),
            sig(self.h_so),
            self.method
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingFit {
    pub h_fo_slope: f64,
    pub h_so_slope: f64,
    pub points: usize,
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Result<f64> {
    if points.len() < 3 {
        return Err(Error::InsufficientData(format!(
            "slope fit needs at least 3 points, got {}",
            points.len()
        )));
    }
    if points.iter().any(|&(x, y)| !(x > 0.0 && y > 0.0)) {
        return Err(Error::InvalidConfig(
            "log-log fit needs positive values".into(),
        ));
    }
    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData("all sizes are equal".into()));
    }
    Ok(sxy / sxx)
}

/// Exact coherence of `family` for generations `n_from..=n_to`.
pub fn family_series(
    family: Family,
    n_from: u32,
    n_to: u32,
    method: Option<ExactMethod>,
) -> Result<Vec<ScalingPoint>> {
    if n_from > n_to {
        return Err(Error::InvalidConfig(format!(
            "empty generation range {n_from}..={n_to}"
        )));
    }
    let method = method.unwrap_or_else(|| default_method(family));
    let method_name = match method {
        ExactMethod::Recursion => "recursion",
        ExactMethod::Closed => "closed",
    };
    (n_from..=n_to)
        .map(|n| {
            let e = family_exact(family, n, method)?;
            Ok(ScalingPoint {
                label: format!("{family}-{n}"),
                n_vertices: vertex_count(n),
                h_fo: e.h_fo_f64(),
                h_so: e.h_so_f64(),
                method: method_name.to_string(),
            })
        })
        .collect()
}

/// Scatter points for measured networks; networks without coherence are
/// skipped.
pub fn network_series(stats: &[NetworkStats]) -> Vec<ScalingPoint> {
    stats
        .iter()
        .filter_map(|s| {
            Some(ScalingPoint {
                label: s.name.clone(),
                n_vertices: s.n_lcc as u64,
                h_fo: s.h_fo?,
                h_so: s.h_so?,
                method: s.method?.to_string(),
            })
        })
        .collect()
}

pub fn fit_series(points: &[ScalingPoint]) -> Result<ScalingFit> {
    let xy = |pick: fn(&ScalingPoint) -> f64| -> Vec<(f64, f64)> {
        points
            .iter()
            .map(|p| (p.n_vertices as f64, pick(p)))
            .collect()
    };
    Ok(ScalingFit {
        h_fo_slope: loglog_slope(&xy(|p| p.h_fo))?,
        h_so_slope: loglog_slope(&xy(|p| p.h_so))?,
        points: points.len(),
    })
}
