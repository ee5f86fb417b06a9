//! Squeezing-parameter sweeps over the full pipeline, rendered as CSV.
//!
//! One row per value of `r = R_ab = R_bc`: tripartite and bipartite
//! negativities, the outer-pair coherences, and the same quantities after
//! homodyne detection of the idler, plus the leading conditional-state
//! entries. Rows are computed independently (grid points may run in
//! parallel) and assembled in input order, so the CSV is deterministic.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::generation::{bisqueezed_state, PumpParameters, ThermalSpec};
use crate::homodyne::homodyne_condition;
use crate::measures::{
    first_order_coherence, negativity, one_vs_rest_negativity, relative_entropy_of_coherence,
    tripartite_negativity,
};
use crate::{Error, Result};

/// Column names, in output order.
pub const COLUMNS: [&str; 17] = [
    "r",
    "neg_abc",
    "neg_a_bc",
    "neg_b_ac",
    "neg_c_ab",
    "neg_ab",
    "neg_bc",
    "neg_ac",
    "pair_coh_ac",
    "rel_ent_coh_ac",
    "neg_out_q",
    "pair_coh_out_q",
    "rel_ent_coh_out_q",
    "out_sigma11",
    "out_sigma12",
    "out_sigma13",
    "out_sigma14",
];

/// Sweep configuration. Frequencies are in Hz (converted to rad/s
/// internally); the sweep runs `r_steps` evenly spaced values of
/// `r = R_ab = R_bc` from `r_min` to `r_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepConfig {
    pub omega_a_hz: f64,
    pub omega_b_hz: f64,
    pub omega_c_hz: f64,
    pub temperature_k: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub r_steps: usize,
    /// Subset of [`COLUMNS`] to emit; `None` means all.
    pub outputs: Option<Vec<String>>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            omega_a_hz: 4.99e9,
            omega_b_hz: 5.00e9,
            omega_c_hz: 5.01e9,
            temperature_k: 0.015,
            r_min: 0.0,
            r_max: 2.0,
            r_steps: 21,
            outputs: None,
        }
    }
}

impl SweepConfig {
    /// Parses a flat `key = value` config file; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = SweepConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or(Error::Parse {
                line: line_no,
                reason: format!("expected 'key = value', got '{raw}'"),
            })?;
            let key = key.trim();
            let value = value.trim();
            let parse_f64 = |v: &str| -> Result<f64> {
                v.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    reason: format!("bad number '{v}' for '{key}'"),
                })
            };
            match key {
                "omega_a_hz" => cfg.omega_a_hz = parse_f64(value)?,
                "omega_b_hz" => cfg.omega_b_hz = parse_f64(value)?,
                "omega_c_hz" => cfg.omega_c_hz = parse_f64(value)?,
                "temperature_k" => cfg.temperature_k = parse_f64(value)?,
                "r_min" => cfg.r_min = parse_f64(value)?,
                "r_max" => cfg.r_max = parse_f64(value)?,
                "r_steps" => {
                    cfg.r_steps = value.parse().map_err(|_| Error::Parse {
                        line: line_no,
                        reason: format!("bad integer '{value}' for 'r_steps'"),
                    })?
                }
                "outputs" => {
                    cfg.outputs =
                        Some(value.split(',').map(|s| s.trim().to_string()).collect())
                }
                other => {
                    return Err(Error::Parse {
                        line: line_no,
                        reason: format!("unknown key '{other}'"),
                    })
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("omega_a_hz", self.omega_a_hz),
            ("omega_b_hz", self.omega_b_hz),
            ("omega_c_hz", self.omega_c_hz),
        ] {
            if v.is_nan() || v <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )));
            }
        }
        if self.temperature_k.is_nan() || self.temperature_k < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "temperature_k must be non-negative, got {}",
                self.temperature_k
            )));
        }
        if self.r_steps < 2 {
            return Err(Error::InvalidParameter(format!(
                "r_steps must be at least 2, got {}",
                self.r_steps
            )));
        }
        if self.r_max.is_nan() || self.r_min.is_nan() || self.r_max < self.r_min {
            return Err(Error::InvalidParameter(format!(
                "r_max ({}) must not be below r_min ({})",
                self.r_max, self.r_min
            )));
        }
        if let Some(outputs) = &self.outputs {
            for name in outputs {
                if !COLUMNS.contains(&name.as_str()) {
                    return Err(Error::InvalidParameter(format!(
                        "unknown output column '{name}'"
                    )));
                }
            }
            if outputs.is_empty() {
                return Err(Error::InvalidParameter("outputs list is empty".into()));
            }
        }
        Ok(())
    }

    pub fn thermal_spec(&self) -> Result<ThermalSpec> {
        ThermalSpec::new(
            2.0 * PI * self.omega_a_hz,
            2.0 * PI * self.omega_b_hz,
            2.0 * PI * self.omega_c_hz,
            self.temperature_k,
        )
    }

    fn r_values(&self) -> Vec<f64> {
        let n = self.r_steps;
        (0..n)
            .map(|i| self.r_min + (self.r_max - self.r_min) * i as f64 / (n - 1) as f64)
            .collect()
    }
}

/// A computed sweep: header names plus one row of values per grid point.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl SweepTable {
    /// CSV with 12 significant digits per value.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{v:.11e}");
            }
            out.push('\n');
        }
        out
    }
}

/// Every quantity of one grid point, keyed by [`COLUMNS`].
fn evaluate_row(r: f64, spec: &ThermalSpec) -> Result<Vec<f64>> {
    let p = PumpParameters::new(r, r)?;
    let sigma = bisqueezed_state(p, spec)?;

    let neg_a_bc = one_vs_rest_negativity(&sigma, 0)?;
    let neg_b_ac = one_vs_rest_negativity(&sigma, 1)?;
    let neg_c_ab = one_vs_rest_negativity(&sigma, 2)?;
    let neg_abc = tripartite_negativity(&sigma)?;

    let neg_ab = negativity(&sigma.partial_trace(&[0, 1])?)?.negativity;
    let neg_bc = negativity(&sigma.partial_trace(&[1, 2])?)?.negativity;
    let neg_ac = negativity(&sigma.partial_trace(&[0, 2])?)?.negativity;

    let coherence = first_order_coherence(&sigma, 0, 2)?;

    let conditional = homodyne_condition(&sigma, 1, 0.0)?;
    let out_sigma = conditional.sigma();
    let neg_out = negativity(out_sigma)?.negativity;
    let coh_out = first_order_coherence(out_sigma, 0, 1)?;
    let rel_ent_out = relative_entropy_of_coherence(out_sigma, 2.0)?;

    let m = out_sigma.matrix();
    Ok(vec![
        r,
        neg_abc,
        neg_a_bc,
        neg_b_ac,
        neg_c_ab,
        neg_ab,
        neg_bc,
        neg_ac,
        coherence.pair_coherence,
        coherence.relative_entropy_coherence,
        neg_out,
        coh_out.pair_coherence,
        rel_ent_out,
        m[(0, 0)].re,
        m[(0, 1)].re,
        m[(0, 2)].re,
        m[(0, 3)].re,
    ])
}

/// Runs the sweep, evaluating grid points in parallel and assembling rows in
/// input order.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepTable> {
    config.validate()?;
    let spec = config.thermal_spec()?;
    let full_rows: Vec<Vec<f64>> = config
        .r_values()
        .par_iter()
        .map(|&r| evaluate_row(r, &spec))
        .collect::<Result<_>>()?;

    let selected: Vec<usize> = match &config.outputs {
        None => (0..COLUMNS.len()).collect(),
        Some(names) => names
            .iter()
            .map(|n| COLUMNS.iter().position(|c| c == n).expect("validated"))
            .collect(),
    };
    let header: Vec<String> = selected.iter().map(|&i| COLUMNS[i].to_string()).collect();
    let rows = full_rows
        .into_iter()
        .map(|row| selected.iter().map(|&i| row[i]).collect())
        .collect();
    Ok(SweepTable { header, rows })
}
