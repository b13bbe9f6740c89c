//! Time-series sweeps over one varied parameter.

mod config;
mod emit;
mod presets;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::measures::{self, MeasureRecord, MeasureSet};
use crate::spin::{thermal_state, SpinParams};

pub use config::{parse_config, parse_config_with_overrides};
pub use emit::{emit_table, format_number, render_csv, render_json, Destination, CSV_HEADER};
pub use presets::{preset_names, preset_spec, run_preset, run_preset_with, Preset, PRESETS};

/// Version string recorded in every dataset.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Parameters a sweep may vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VariedParam {
    #[serde(rename = "Delta_Q")]
    DeltaQ,
    #[serde(rename = "lambda")]
    Lambda,
    #[serde(rename = "T")]
    Temperature,
    #[serde(rename = "K_z")]
    Kz,
    #[serde(rename = "B")]
    B,
    #[serde(rename = "D_z")]
    Dz,
    #[serde(rename = "delta_z")]
    DeltaZ,
    #[serde(rename = "J")]
    J,
}

impl VariedParam {
    pub const ALL: [VariedParam; 8] = [
        VariedParam::DeltaQ,
        VariedParam::Lambda,
        VariedParam::Temperature,
        VariedParam::Kz,
        VariedParam::B,
        VariedParam::Dz,
        VariedParam::DeltaZ,
        VariedParam::J,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VariedParam::DeltaQ => "Delta_Q",
            VariedParam::Lambda => "lambda",
            VariedParam::Temperature => "T",
            VariedParam::Kz => "K_z",
            VariedParam::B => "B",
            VariedParam::Dz => "D_z",
            VariedParam::DeltaZ => "delta_z",
            VariedParam::J => "J",
        }
    }

    /// Copy of the fixed parameters with this parameter set to `value`.
    pub fn apply(self, spin: &SpinParams, channel: &ChannelParams, value: f64) -> (SpinParams, ChannelParams) {
        let (mut s, mut c) = (*spin, *channel);
        match self {
            VariedParam::DeltaQ => c.delta_q = value,
            VariedParam::Lambda => c.lambda = value,
            VariedParam::Temperature => s.temperature = value,
            VariedParam::Kz => s.k_z = value,
            VariedParam::B => s.b = value,
            VariedParam::Dz => s.d_z = value,
            VariedParam::DeltaZ => s.delta_z = value,
            VariedParam::J => s.j = value,
        }
        (s, c)
    }
}

impl fmt::Display for VariedParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VariedParam {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        VariedParam::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = VariedParam::ALL.iter().map(|p| p.name()).collect();
                format!("unknown parameter `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

/// Declarative description of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub spin: SpinParams,
    pub channel: ChannelParams,
    pub varied: VariedParam,
    pub values: Vec<f64>,
    pub t_max: f64,
    pub steps: usize,
    pub measures: MeasureSet,
    pub format: OutputFormat,
}

pub const DEFAULT_T_MAX: f64 = 30.0;
pub const DEFAULT_STEPS: usize = 1500;

impl Default for SweepSpec {
    fn default() -> Self {
        Self {
            spin: SpinParams::default(),
            channel: ChannelParams::default(),
            varied: VariedParam::DeltaQ,
            values: vec![1.0, 2.0, 3.0],
            t_max: DEFAULT_T_MAX,
            steps: DEFAULT_STEPS,
            measures: MeasureSet::all(),
            format: OutputFormat::Csv,
        }
    }
}

impl SweepSpec {
    /// Check the structural invariants (not the physics of each point).
    pub fn validate(&self) -> std::result::Result<(), (&'static str, String)> {
        if self.steps < 2 {
            return Err(("steps", format!("steps must be at least 2, got {}", self.steps)));
        }
        if !(self.t_max.is_finite() && self.t_max > 0.0) {
            return Err(("t_max", format!("t_max must be positive and finite, got {}", self.t_max)));
        }
        if self.values.is_empty() {
            return Err(("values", "at least one varied value is required".into()));
        }
        if let Some(v) = self.values.iter().find(|v| !v.is_finite()) {
            return Err(("values", format!("varied values must be finite, got {v}")));
        }
        if self.measures.is_empty() {
            return Err(("measures", "at least one measure is required".into()));
        }
        Ok(())
    }

    /// Uniform grid `t_k = t_max · k / (steps − 1)`.
    pub fn time_grid(&self) -> Vec<f64> {
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|k| if k + 1 == self.steps { self.t_max } else { self.t_max * k as f64 / last })
            .collect()
    }
}

/// Resolved parameters echoed alongside the rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub version: String,
    pub preset: Option<String>,
    pub spin: SpinParams,
    pub channel: ChannelParams,
    pub varied: VariedParam,
    pub values: Vec<f64>,
    pub t_max: f64,
    pub steps: usize,
    pub measures: Vec<String>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub varied_value: f64,
    #[serde(flatten)]
    pub record: MeasureRecord,
}

/// Rows ordered varied-value outer, time inner.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub metadata: Metadata,
    pub rows: Vec<Row>,
}

impl Dataset {
    /// Rows belonging to one varied value.
    pub fn block(&self, value: f64) -> impl Iterator<Item = &Row> {
        self.rows.iter().filter(move |r| r.varied_value == value)
    }

    /// One measure over the block of `value`, in time order.
    pub fn series(&self, value: f64, m: measures::Measure) -> Vec<f64> {
        self.block(value).filter_map(|r| r.record.get(m)).collect()
    }
}

fn sweep_error(spec: &SweepSpec, value: f64, source: Error) -> Error {
    Error::Sweep {
        parameter: spec.varied.name().to_string(),
        value,
        source: Box::new(source),
    }
}

/// Evaluate every requested measure at every (varied value, grid time) pair.
pub fn run_timeseries(spec: &SweepSpec) -> Result<Dataset> {
    spec.validate().map_err(|(key, message)| Error::Parse {
        line: None,
        key: key.to_string(),
        message,
    })?;
    let grid = spec.time_grid();

    let mut blocks = Vec::with_capacity(spec.values.len());
    for &value in &spec.values {
        let (spin, channel) = spec.varied.apply(&spec.spin, &spec.channel, value);
        channel.validate().map_err(|e| sweep_error(spec, value, e))?;
        let initial = thermal_state(&spin).map_err(|e| sweep_error(spec, value, e))?;
        blocks.push((value, channel, initial));
    }

    let points: Vec<(usize, f64)> = (0..blocks.len())
        .flat_map(|b| grid.iter().map(move |&t| (b, t)))
        .collect();
    let evaluated: Vec<Result<Row>> = points
        .par_iter()
        .map(|&(b, t)| {
            let (value, channel, initial) = &blocks[b];
            measures::evaluate(initial, channel, t, spec.measures)
                .map(|record| Row { varied_value: *value, record })
                .map_err(|e| sweep_error(spec, *value, e))
        })
        .collect();
    let rows = evaluated.into_iter().collect::<Result<Vec<_>>>()?;

    Ok(Dataset {
        metadata: Metadata {
            version: ARTIFACT_VERSION.to_string(),
            preset: None,
            spin: spec.spin,
            channel: spec.channel,
            varied: spec.varied,
            values: spec.values.clone(),
            t_max: spec.t_max,
            steps: spec.steps,
            measures: spec.measures.iter().map(|m| m.label().to_string()).collect(),
            notes: Vec::new(),
        },
        rows,
    })
}
