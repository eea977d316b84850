//! Command-line front end for the fluxlink simulator.
//!
//! Four subcommands: `simulate` runs the configured hysteresis experiment
//! and emits per-sample CSV, `sweep` re-runs it over a range of one numeric
//! config key and tabulates the remnant asymmetry, `phase` prints the
//! closed-loop phase of a charge around a flux filament, and `linking`
//! prints the Gauss linking number of two curves read from a file.
//!
//! Exit codes: 0 success; 2 configuration or input errors (clap uses the
//! same code for usage errors); 3 inadmissible field amplitude (the ring
//! would never quench, or the lead torus would); 4 trapped-flux
//! verification failure; 5 I/O failure.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use fluxlink::constants::{flux_quantum, COOPER_PAIR_CHARGE, ELEMENTARY_CHARGE};
use fluxlink::harness::{
    emit_csv, run_experiment, sweep_values, write_csv_file, write_loop_plot_file, write_sweep_file,
};
use fluxlink::{asymmetry, holonomy, linking_number, Curve, Error, ExperimentConfig, FieldSource, Vec3};

#[derive(Parser)]
#[command(
    name = "fluxlink",
    version,
    about = "Simulate flux trapping in a superconducting ring linked by a flux-storing torus"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the configured hysteresis experiment and emit per-sample CSV.
    Simulate {
        /// Experiment config file (key = value lines).
        #[arg(long)]
        config: PathBuf,
        /// Write the CSV here and print a summary instead of streaming it.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write B_applied/probe pairs for plotting the loop.
        #[arg(long)]
        loop_out: Option<PathBuf>,
        /// Config overrides applied after the file, e.g. --set cycles=5.
        #[arg(long, value_name = "KEY=VALUE")]
        set: Vec<String>,
    },
    /// Re-run the experiment over a range of one numeric config key and
    /// tabulate the remnant asymmetry.
    Sweep {
        /// Experiment config file providing the baseline.
        #[arg(long)]
        config: PathBuf,
        /// Config key to sweep (numeric keys only).
        #[arg(long)]
        key: String,
        /// First value of the sweep.
        #[arg(long)]
        from: f64,
        /// Last value of the sweep (inclusive).
        #[arg(long)]
        to: f64,
        /// Number of evenly spaced sweep points.
        #[arg(long)]
        points: usize,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the closed-loop phase of a charge carried once around a ring
    /// that links a flux filament carrying the given number of quanta.
    Phase {
        /// Filament flux in units of h/2e (need not be whole).
        #[arg(long)]
        flux_quanta: f64,
        /// Carry a Cooper pair (2e) instead of a single elementary charge.
        #[arg(long)]
        charge_pairs: bool,
    },
    /// Print the Gauss linking number of two closed curves.
    Linking {
        /// File with two blocks of `x y z` lines separated by a blank line;
        /// each block is one implicitly closed curve.
        #[arg(long)]
        curves: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli) {
        eprintln!("error: {err}");
        std::process::exit(exit_code(&err));
    }
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::LeadQuench { .. } | Error::NeverQuenches { .. } => 3,
        Error::VerificationFailed { .. } => 4,
        Error::Io { .. } => 5,
        _ => 2,
    }
}

fn run(cli: Cli) -> fluxlink::Result<()> {
    match cli.command {
        Command::Simulate {
            config,
            out,
            loop_out,
            set,
        } => simulate(&config, out.as_deref(), loop_out.as_deref(), &set),
        Command::Sweep {
            config,
            key,
            from,
            to,
            points,
            out,
        } => sweep(&config, &key, from, to, points, &out),
        Command::Phase {
            flux_quanta,
            charge_pairs,
        } => phase(flux_quanta, charge_pairs),
        Command::Linking { curves } => linking(&curves),
    }
}

fn simulate(
    config_path: &Path,
    out: Option<&Path>,
    loop_out: Option<&Path>,
    overrides: &[String],
) -> fluxlink::Result<()> {
    let mut config = ExperimentConfig::from_file(config_path)?;
    for pair in overrides {
        let (key, value) = pair.split_once('=').ok_or_else(|| {
            Error::Config(format!("--set expects key=value, got {pair:?}"))
        })?;
        config.set(key.trim(), value.trim())?;
    }
    config.validate()?;
    let run = run_experiment(&config)?;
    if let Some(path) = loop_out {
        write_loop_plot_file(&run.records, path)?;
    }
    match out {
        Some(path) => {
            write_csv_file(&run.records, path)?;
            let positive = run.remnants.iter().rev().find(|r| r.positive_side);
            let negative = run.remnants.iter().rev().find(|r| !r.positive_side);
            let delta = asymmetry(&run.remnants)?;
            println!("samples={}", run.records.len());
            // asymmetry() above guarantees both sides exist
            println!("remnant_pos_T={}", positive.expect("positive remnant").probe);
            println!("remnant_neg_T={}", negative.expect("negative remnant").probe);
            println!("delta_b_T={delta}");
        }
        None => {
            let stdout = std::io::stdout();
            emit_csv(&run.records, stdout.lock()).map_err(|source| Error::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })?;
        }
    }
    Ok(())
}

fn sweep(
    config_path: &Path,
    key: &str,
    from: f64,
    to: f64,
    points: usize,
    out: &Path,
) -> fluxlink::Result<()> {
    if points == 0 {
        return Err(Error::Config("points must be at least 1".to_string()));
    }
    let baseline = ExperimentConfig::from_file(config_path)?;
    let mut rows = Vec::with_capacity(points);
    for value in sweep_values(from, to, points) {
        let mut config = baseline.clone();
        config.set_numeric(key, value)?;
        config.validate()?;
        let run = run_experiment(&config)?;
        rows.push((value, asymmetry(&run.remnants)?));
    }
    write_sweep_file(key, &rows, out)
}

fn phase(flux_quanta: f64, charge_pairs: bool) -> fluxlink::Result<()> {
    let charge = if charge_pairs {
        COOPER_PAIR_CHARGE
    } else {
        ELEMENTARY_CHARGE
    };
    // unit-radius ring linking a unit-radius filament exactly once
    let gamma = Curve::circle(Vec3::zeros(), Vec3::z(), 1.0, 512)?;
    let filament = Curve::circle(Vec3::new(0.0, 1.0, 0.0), -Vec3::x(), 1.0, 512)?;
    let source = FieldSource::flux_filament(filament, flux_quanta * flux_quantum())?;
    let holonomy_rad = holonomy(charge, &source, &gamma, 1)?;
    println!("holonomy_rad={holonomy_rad}");
    println!("ratio_2pi={}", holonomy_rad / std::f64::consts::TAU);
    Ok(())
}

fn linking(curves_path: &Path) -> fluxlink::Result<()> {
    let (first, second) = read_curves_file(curves_path)?;
    let lk = linking_number(&first, &second)?;
    println!("linking_integer={}", lk.integer);
    println!("linking_raw={}", lk.raw);
    Ok(())
}

/// Parses two curves from a text file: `x y z` per line, one blank line
/// between the two blocks, closure implicit.
fn read_curves_file(path: &Path) -> fluxlink::Result<(Curve, Curve)> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut blocks: Vec<Vec<Vec3>> = vec![Vec::new()];
    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            if !blocks.last().expect("nonempty").is_empty() {
                blocks.push(Vec::new());
            }
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let mut components = [0.0_f64; 3];
        if parts.len() != 3 {
            return Err(Error::Config(format!(
                "{}: line {}: expected `x y z`, got {raw:?}",
                path.display(),
                index + 1
            )));
        }
        for (slot, part) in components.iter_mut().zip(&parts) {
            *slot = part.parse().map_err(|_| {
                Error::Config(format!(
                    "{}: line {}: {part:?} is not a number",
                    path.display(),
                    index + 1
                ))
            })?;
        }
        blocks
            .last_mut()
            .expect("nonempty")
            .push(Vec3::new(components[0], components[1], components[2]));
    }
    if blocks.last().map_or(false, Vec::is_empty) {
        blocks.pop();
    }
    if blocks.len() != 2 {
        return Err(Error::Config(format!(
            "{}: expected exactly two curves separated by a blank line, got {}",
            path.display(),
            blocks.len()
        )));
    }
    let second = Curve::closed(blocks.pop().expect("two blocks"))?;
    let first = Curve::closed(blocks.pop().expect("one block"))?;
    Ok((first, second))
}
