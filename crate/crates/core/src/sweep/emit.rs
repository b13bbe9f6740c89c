use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::measures::Measure;

use super::{Dataset, OutputFormat};

pub const CSV_HEADER: &str = "varied,varied_value,t,NG,EU,LC,EN,FID1,FID2";

/// Significant digits kept in CSV output.
const CSV_SIGNIFICANT_DIGITS: usize = 12;

/// Round to 12 significant digits, then print the shortest decimal that
/// reads back to the rounded value.
pub fn format_number(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{:.*e}", CSV_SIGNIFICANT_DIGITS - 1, v)
        .parse()
        .expect("formatted float parses");
    let magnitude = rounded.abs();
    if (1e-5..1e15).contains(&magnitude) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub fn render_csv(d: &Dataset) -> String {
    let mut out = String::with_capacity(64 * (d.rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    let varied = d.metadata.varied.name();
    for row in &d.rows {
        out.push_str(varied);
        out.push(',');
        out.push_str(&format_number(row.varied_value));
        out.push(',');
        out.push_str(&format_number(row.record.t));
        for m in Measure::ALL {
            out.push(',');
            if let Some(v) = row.record.get(m) {
                out.push_str(&format_number(v));
            }
        }
        out.push('\n');
    }
    out
}

pub fn render_json(d: &Dataset) -> String {
    let mut s = serde_json::to_string_pretty(d).expect("dataset serializes");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Destination {
    Stdout,
    File(PathBuf),
}

/// Write `d` as CSV or JSON to a file or standard output.
pub fn emit_table(d: &Dataset, format: OutputFormat, destination: &Destination) -> Result<()> {
    let text = match format {
        OutputFormat::Csv => render_csv(d),
        OutputFormat::Json => render_json(d),
    };
    match destination {
        Destination::Stdout => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|source| Error::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
        Destination::File(path) => fs::write(path, text).map_err(|source| Error::Io {
            path: path.clone(),
            source,
        }),
    }
}
