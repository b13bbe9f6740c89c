//! Line-oriented `key = value` run configuration.
//!
//! ```text
//! # comments start with '#'
//! [spin]
//! J = 1
//! K_z = 5
//! [channel]
//! lambda = 0.1
//! [sweep]
//! varied = Delta_Q
//! values = 1, 2, 3
//! ```
//!
//! Sections are `[spin]` (`J`, `delta_z`, `D_z`, `K_z`, `B`, `T`), `[channel]`
//! (`lambda`, `Delta_Q`, `delta_o`, `epsilon`) and `[sweep]` (`varied`,
//! `values`, `t_max`, `steps`, `measures`, `format`). A `;` separates
//! statements on one line. Missing keys keep their defaults; later
//! assignments win.

use crate::error::{Error, Result};
use crate::measures::{Measure, MeasureSet};

use super::{OutputFormat, SweepSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Spin,
    Channel,
    Sweep,
}

impl Section {
    fn parse(name: &str) -> Option<Self> {
        match name {
            "spin" => Some(Section::Spin),
            "channel" => Some(Section::Channel),
            "sweep" => Some(Section::Sweep),
            _ => None,
        }
    }
}

fn parse_error(line: Option<usize>, key: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        key: key.to_string(),
        message: message.into(),
    }
}

fn parse_number(line: Option<usize>, key: &str, value: &str) -> Result<f64> {
    let v: f64 = value
        .parse()
        .map_err(|_| parse_error(line, key, format!("`{value}` is not a number")))?;
    if !v.is_finite() {
        return Err(parse_error(line, key, format!("`{value}` is not finite")));
    }
    Ok(v)
}

/// Track which line last set a sweep-level key, for invariant errors.
#[derive(Default)]
struct Origins {
    values: Option<usize>,
    t_max: Option<usize>,
    steps: Option<usize>,
    measures: Option<usize>,
}

fn assign(spec: &mut SweepSpec, origins: &mut Origins, section: Section, key: &str, value: &str, line: Option<usize>) -> Result<()> {
    match section {
        Section::Spin => {
            let slot = match key {
                "J" => &mut spec.spin.j,
                "delta_z" => &mut spec.spin.delta_z,
                "D_z" => &mut spec.spin.d_z,
                "K_z" => &mut spec.spin.k_z,
                "B" => &mut spec.spin.b,
                "T" => &mut spec.spin.temperature,
                _ => return Err(parse_error(line, key, "unknown key in [spin]")),
            };
            *slot = parse_number(line, key, value)?;
        }
        Section::Channel => {
            let slot = match key {
                "lambda" => &mut spec.channel.lambda,
                "Delta_Q" => &mut spec.channel.delta_q,
                "delta_o" => &mut spec.channel.delta_o,
                "epsilon" => &mut spec.channel.epsilon,
                _ => return Err(parse_error(line, key, "unknown key in [channel]")),
            };
            *slot = parse_number(line, key, value)?;
        }
        Section::Sweep => match key {
            "varied" => {
                spec.varied = value.parse().map_err(|m: String| parse_error(line, key, m))?;
            }
            "values" => {
                spec.values = value
                    .split(',')
                    .map(|v| parse_number(line, key, v.trim()))
                    .collect::<Result<_>>()?;
                origins.values = line;
            }
            "t_max" => {
                spec.t_max = parse_number(line, key, value)?;
                origins.t_max = line;
            }
            "steps" => {
                spec.steps = value
                    .parse()
                    .map_err(|_| parse_error(line, key, format!("`{value}` is not a non-negative integer")))?;
                origins.steps = line;
            }
            "measures" => {
                let list = value
                    .split(',')
                    .map(|m| m.trim().parse::<Measure>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|m| parse_error(line, key, m))?;
                spec.measures = MeasureSet::from_measures(list);
                origins.measures = line;
            }
            "format" => {
                spec.format = value.parse::<OutputFormat>().map_err(|m| parse_error(line, key, m))?;
            }
            _ => return Err(parse_error(line, key, "unknown key in [sweep]")),
        },
    }
    Ok(())
}

fn apply_document(spec: &mut SweepSpec, origins: &mut Origins, text: &str) -> Result<()> {
    let mut section: Option<Section> = None;
    for (index, raw) in text.lines().enumerate() {
        let line = Some(index + 1);
        let content = raw.split('#').next().unwrap_or("");
        for statement in content.split(';') {
            let statement = statement.trim();
            if statement.is_empty() {
                continue;
            }
            if let Some(name) = statement.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let name = name.trim();
                section = Some(
                    Section::parse(name).ok_or_else(|| parse_error(line, name, "unknown section"))?,
                );
                continue;
            }
            let (key, value) = statement
                .split_once('=')
                .ok_or_else(|| parse_error(line, statement, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim());
            let sec = section.ok_or_else(|| parse_error(line, key, "key appears before any [section]"))?;
            assign(spec, origins, sec, key, value, line)?;
        }
    }
    Ok(())
}

fn apply_override(spec: &mut SweepSpec, origins: &mut Origins, item: &str) -> Result<()> {
    let (path, value) = item
        .split_once('=')
        .ok_or_else(|| parse_error(None, item, "expected `section.key=value`"))?;
    let (section, key) = path
        .trim()
        .split_once('.')
        .ok_or_else(|| parse_error(None, path.trim(), "expected `section.key`"))?;
    let sec = Section::parse(section.trim()).ok_or_else(|| parse_error(None, section.trim(), "unknown section"))?;
    assign(spec, origins, sec, key.trim(), value.trim(), None)
}

fn finish(spec: SweepSpec, origins: &Origins) -> Result<SweepSpec> {
    spec.validate().map_err(|(key, message)| {
        let line = match key {
            "values" => origins.values,
            "t_max" => origins.t_max,
            "steps" => origins.steps,
            "measures" => origins.measures,
            _ => None,
        };
        parse_error(line, key, message)
    })?;
    Ok(spec)
}

/// Parse a configuration document; missing keys take their defaults.
pub fn parse_config(text: &str) -> Result<SweepSpec> {
    parse_config_with_overrides::<&str>(text, &[])
}

/// Parse a document, then apply `section.key=value` overrides in order.
pub fn parse_config_with_overrides<S: AsRef<str>>(text: &str, overrides: &[S]) -> Result<SweepSpec> {
    let mut spec = SweepSpec::default();
    let mut origins = Origins::default();
    apply_document(&mut spec, &mut origins, text)?;
    for item in overrides {
        apply_override(&mut spec, &mut origins, item.as_ref())?;
    }
    finish(spec, &origins)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::ChannelParams;
    use crate::spin::SpinParams;
    use crate::sweep::VariedParam;

    #[test]
    fn empty_document_gives_defaults() {
        let spec = parse_config("").unwrap();
        assert_eq!(spec, SweepSpec::default());
        assert_eq!(spec.varied, VariedParam::DeltaQ);
        assert_eq!(spec.values, vec![1.0, 2.0, 3.0]);
        assert_eq!(spec.spin, SpinParams { j: 1.0, delta_z: 1.0, d_z: 1.0, k_z: 5.0, b: 1.0, temperature: 1.0 });
        assert_eq!(spec.channel, ChannelParams { lambda: 1.0, delta_q: 1.0, delta_o: 1.0, epsilon: 1.0 });
        assert_eq!((spec.t_max, spec.steps), (30.0, 1500));
    }

    #[test]
    fn kz_sweep_one_line() {
        let spec = parse_config("[sweep]\nvaried = K_z; values = 1, 3, 5\n").unwrap();
        assert_eq!(spec.varied, VariedParam::Kz);
        assert_eq!(spec.values, vec![1.0, 3.0, 5.0]);
    }

    #[test]
    fn full_document() {
        let text = "# fig-like\n[spin]\nT = 0.5  # cold\nJ = -6\n[channel]\nlambda = 0.1\nDelta_Q = 2\n\
                    delta_o = 0\nepsilon = 3\n[sweep]\nvaried = J\nvalues = -6, 6\nt_max = 10\nsteps = 11\n\
                    measures = NG, FID2\nformat = json\n";
        let spec = parse_config(text).unwrap();
        assert_eq!(spec.spin.temperature, 0.5);
        assert_eq!(spec.spin.j, -6.0);
        assert_eq!(spec.channel, ChannelParams { lambda: 0.1, delta_q: 2.0, delta_o: 0.0, epsilon: 3.0 });
        assert_eq!(spec.steps, 11);
        assert_eq!(spec.format, OutputFormat::Json);
        assert!(spec.measures.contains(Measure::FidelityBell) && !spec.measures.contains(Measure::Entropy));
    }

    fn expect_parse_error(text: &str, want_line: Option<usize>, want_key: &str) {
        match parse_config(text) {
            Err(Error::Parse { line, key, .. }) => {
                assert_eq!(line, want_line, "{text}");
                assert_eq!(key, want_key, "{text}");
            }
            other => panic!("expected parse error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn rejections() {
        expect_parse_error("[sweep]\nvaried = Q_z\n", Some(2), "varied");
        expect_parse_error("[spin]\nJz = 1\n", Some(2), "Jz");
        expect_parse_error("[spin]\nJ = one\n", Some(2), "J");
        expect_parse_error("[spin]\nJ = inf\n", Some(2), "J");
        expect_parse_error("J = 1\n", Some(1), "J");
        expect_parse_error("[bath]\n", Some(1), "bath");
        expect_parse_error("[sweep]\n\nsteps = 1\n", Some(3), "steps");
        expect_parse_error("[sweep]\nt_max = -1\n", Some(2), "t_max");
        expect_parse_error("[sweep]\nvalues = 1, nan\n", Some(2), "values");
        expect_parse_error("[sweep]\nmeasures = NG, QD\n", Some(2), "measures");
        expect_parse_error("[sweep]\nformat = xml\n", Some(2), "format");
        expect_parse_error("[spin]\nJ\n", Some(2), "J");
        expect_parse_error("[sweep]\nsteps = 2.5\n", Some(2), "steps");
    }

    #[test]
    fn overrides_apply_after_document() {
        let spec = parse_config_with_overrides("[channel]\nlambda = 0.1\n", &["channel.lambda=0.3", "sweep.steps = 7"]).unwrap();
        assert_eq!(spec.channel.lambda, 0.3);
        assert_eq!(spec.steps, 7);
        assert!(matches!(
            parse_config_with_overrides("", &["spin.Q=1"]),
            Err(Error::Parse { line: None, .. })
        ));
        assert!(parse_config_with_overrides("", &["lambda=1"]).is_err());
        assert!(parse_config_with_overrides("", &["sweep.steps=1"]).is_err());
    }
}
