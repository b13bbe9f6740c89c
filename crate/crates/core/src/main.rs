use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use tmcc::sweep::{
    emit_table, parse_config_with_overrides, preset_spec, run_preset_with, run_timeseries,
    Destination, OutputFormat, PRESETS,
};
use tmcc::Error;

/// Time series of negativity, coherence, entropic uncertainty, entropy and
/// fidelity for a two-qubit Heisenberg state in a dephasing hybrid channel.
#[derive(Parser, Debug)]
#[command(name = "tmcc", version)]
struct Cli {
    /// Run a figure preset (see --list-presets)
    #[arg(long, conflicts_with = "config")]
    preset: Option<String>,

    /// Run a configuration file
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format: csv or json (default: from the config, else csv)
    #[arg(long)]
    format: Option<OutputFormat>,

    /// Final time of the grid
    #[arg(long)]
    tmax: Option<f64>,

    /// Number of grid points
    #[arg(long)]
    steps: Option<usize>,

    /// Override one parameter, e.g. `--set channel.delta_o=0`
    #[arg(long = "set", value_name = "SECTION.KEY=VALUE")]
    overrides: Vec<String>,

    /// Print the available presets and exit
    #[arg(long)]
    list_presets: bool,
}

fn run(cli: Cli) -> Result<(), Error> {
    if cli.list_presets {
        for p in PRESETS {
            println!("{:<8} {}", p.name, p.description);
        }
        return Ok(());
    }

    let mut overrides = cli.overrides.clone();
    if let Some(t) = cli.tmax {
        overrides.push(format!("sweep.t_max={t}"));
    }
    if let Some(n) = cli.steps {
        overrides.push(format!("sweep.steps={n}"));
    }

    let (spec, preset) = match (&cli.preset, &cli.config) {
        (Some(name), _) => (preset_spec(name, &overrides)?, Some(name.as_str())),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            (parse_config_with_overrides(&text, &overrides)?, None)
        }
        (None, None) => (parse_config_with_overrides("", &overrides)?, None),
    };

    let dataset = match preset {
        Some(name) => run_preset_with(name, &spec)?,
        None => run_timeseries(&spec)?,
    };
    let format = cli.format.unwrap_or(spec.format);
    let destination = cli.out.map_or(Destination::Stdout, Destination::File);
    emit_table(&dataset, format, &destination)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
