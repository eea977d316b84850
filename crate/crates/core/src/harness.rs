//! Hysteresis-loop experiment harness.
//!
//! Drives the ring model with a triangular applied-field waveform, records
//! every sample, captures the remnant probe readings at the zero crossings,
//! and reduces them to the asymmetry ΔB = B_rem⁺ + B_rem⁻ — the quantity
//! that vanishes for a flux-free core and grows stepwise with stored flux.
//! Output is plain CSV with Rust's shortest round-trip float formatting,
//! so a repeated run produces byte-identical files.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use crate::config::ExperimentConfig;
use crate::error::{Error, Result};
use crate::material::{Material, LEAD};
use crate::ring::{
    flux_verification_tolerance, verify_state_flux, RingModel, RingState, VerificationSettings,
};

/// Triangular drive: each cycle runs 0 → +amplitude → 0 → −amplitude → 0
/// in four quarters of equal step count, hitting the peaks and zeros
/// exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Waveform {
    /// Peak applied field B′ (T).
    pub amplitude: f64,
    /// Samples per quarter cycle (≥ 2).
    pub steps_per_quarter: u32,
    /// Number of full cycles (≥ 1).
    pub cycles: u32,
}

/// Applied-field samples (T) for `waveform` driving a ring of
/// `ring_material`: 4 · steps_per_quarter · cycles steps plus the initial
/// zero.
///
/// The amplitude must exceed the ring's critical field — otherwise the
/// ring never quenches and the hysteresis loop degenerates — while staying
/// below the lead critical field, which would release the stored flux.
pub fn generate_waveform(waveform: &Waveform, ring_material: Material) -> Result<Vec<f64>> {
    if !(waveform.amplitude.is_finite() && waveform.amplitude > 0.0) {
        return Err(Error::InvalidArgument("waveform amplitude must be positive"));
    }
    if waveform.amplitude <= ring_material.critical_field {
        return Err(Error::NeverQuenches {
            amplitude: waveform.amplitude,
            critical: ring_material.critical_field,
        });
    }
    if waveform.amplitude >= LEAD.critical_field {
        return Err(Error::LeadQuench {
            b_applied: waveform.amplitude,
            limit: LEAD.critical_field,
        });
    }
    if waveform.steps_per_quarter < 2 {
        return Err(Error::InvalidArgument("steps_per_quarter must be at least 2"));
    }
    if waveform.cycles < 1 {
        return Err(Error::InvalidArgument("cycles must be at least 1"));
    }
    let s = waveform.steps_per_quarter as u64;
    let total = 4 * s * waveform.cycles as u64;
    let mut samples = Vec::with_capacity(total as usize + 1);
    for j in 0..=total {
        let m = j % (4 * s);
        let (steps_from_zero, sign) = if m <= 2 * s {
            (if m <= s { m } else { 2 * s - m }, 1.0)
        } else {
            (if m <= 3 * s { m - 2 * s } else { 4 * s - m }, -1.0)
        };
        if steps_from_zero == 0 {
            samples.push(0.0); // keep zeros positive: never emit -0.0
        } else {
            samples.push(sign * waveform.amplitude * (steps_from_zero as f64 / s as f64));
        }
    }
    Ok(samples)
}

/// One recorded waveform sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopRecord {
    /// Sample index, starting at 0.
    pub step: usize,
    /// Applied field (T).
    pub b_applied: f64,
    /// Ring state after this sample.
    pub state: RingState,
    /// Probe reading (T).
    pub probe: f64,
    /// True when the drive returns to exactly zero after the first quarter
    /// cycle — the points where remnant readings are taken.
    pub zero_crossing: bool,
}

/// Probe reading captured at a zero crossing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Remnant {
    /// Sample index of the crossing.
    pub step: usize,
    /// Probe reading there (T).
    pub probe: f64,
    /// True when the excursion ending here went toward positive field.
    pub positive_side: bool,
}

/// Full record of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRun {
    pub records: Vec<LoopRecord>,
    pub remnants: Vec<Remnant>,
}

/// Folds an explicit sample sequence (T) through a fresh ring model.
///
/// [`run_experiment`] generates the triangular waveform and delegates here;
/// calling this directly allows forced trajectories — for instance one that
/// never quenches the ring, which the waveform generator refuses to emit.
pub fn run_samples(config: &ExperimentConfig, samples: &[f64]) -> Result<ExperimentRun> {
    config.validate()?;
    let geometry = config.ring_geometry()?;
    let core = config.torus_core()?;
    let mut model = RingModel::new(geometry, core);
    let settings = VerificationSettings {
        refine: config.refine as usize,
        ..VerificationSettings::default()
    };
    let first_quarter = config.steps_per_quarter as usize;
    let mut records = Vec::with_capacity(samples.len());
    let mut remnants = Vec::new();
    let mut excursion_sign = 0.0_f64;
    for (step, &b_applied) in samples.iter().enumerate() {
        let before = model.state();
        let (state, probe) = model.step(b_applied)?;
        let trapped = before == RingState::Normal && state != RingState::Normal;
        if trapped && config.verify {
            let residual = verify_state_flux(state, &geometry, &core, &settings)?;
            let tolerance = flux_verification_tolerance();
            if residual.abs() >= tolerance {
                return Err(Error::VerificationFailed {
                    residual,
                    tolerance,
                    step,
                });
            }
        }
        let zero_crossing = b_applied == 0.0 && step > first_quarter;
        if zero_crossing {
            remnants.push(Remnant {
                step,
                probe,
                positive_side: excursion_sign > 0.0,
            });
        }
        if b_applied != 0.0 {
            excursion_sign = if b_applied > 0.0 { 1.0 } else { -1.0 };
        }
        records.push(LoopRecord {
            step,
            b_applied,
            state,
            probe,
            zero_crossing,
        });
    }
    Ok(ExperimentRun { records, remnants })
}

/// Runs the configured triangular-waveform experiment from a fresh ring.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentRun> {
    let samples = generate_waveform(&config.waveform(), config.material)?;
    run_samples(config, &samples)
}

/// Remnant asymmetry ΔB = B_rem⁺ + B_rem⁻ (T) from the most recent
/// crossing on each side.
pub fn asymmetry(remnants: &[Remnant]) -> Result<f64> {
    let positive = remnants.iter().rev().find(|r| r.positive_side);
    let negative = remnants.iter().rev().find(|r| !r.positive_side);
    match (positive, negative) {
        (Some(p), Some(n)) => Ok(p.probe + n.probe),
        _ => Err(Error::InsufficientRemnants),
    }
}

/// Writes the per-sample CSV: `step,B_applied_T,state,n,probe_T,zero_crossing`.
/// The `n` column is empty while the ring is normal.
pub fn emit_csv<W: Write>(records: &[LoopRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "step,B_applied_T,state,n,probe_T,zero_crossing")?;
    for r in records {
        let (state, n) = match r.state {
            RingState::Normal => ("N", String::new()),
            RingState::Superconducting { n } => ("SC", n.to_string()),
        };
        writeln!(
            out,
            "{},{},{},{},{},{}",
            r.step, r.b_applied, state, n, r.probe, r.zero_crossing
        )?;
    }
    Ok(())
}

/// Writes hysteresis-plot pairs: `B_applied_T,probe_T`.
pub fn emit_loop_plot_data<W: Write>(records: &[LoopRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "B_applied_T,probe_T")?;
    for r in records {
        writeln!(out, "{},{}", r.b_applied, r.probe)?;
    }
    Ok(())
}

/// Writes sweep results as `<key>,delta_b_T` rows.
pub fn emit_sweep_csv<W: Write>(key: &str, rows: &[(f64, f64)], mut out: W) -> io::Result<()> {
    writeln!(out, "{key},delta_b_T")?;
    for (value, delta) in rows {
        writeln!(out, "{},{}", value, delta)?;
    }
    Ok(())
}

/// `points` evenly spaced values from `from` to `to` inclusive.
pub fn sweep_values(from: f64, to: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![from];
    }
    (0..points)
        .map(|i| from + (to - from) * (i as f64 / (points - 1) as f64))
        .collect()
}

/// Writes the per-sample CSV to a file.
pub fn write_csv_file(records: &[LoopRecord], path: &Path) -> Result<()> {
    with_file(path, |w| emit_csv(records, w))
}

/// Writes hysteresis-plot pairs to a file.
pub fn write_loop_plot_file(records: &[LoopRecord], path: &Path) -> Result<()> {
    with_file(path, |w| emit_loop_plot_data(records, w))
}

/// Writes sweep results to a file.
pub fn write_sweep_file(key: &str, rows: &[(f64, f64)], path: &Path) -> Result<()> {
    with_file(path, |w| emit_sweep_csv(key, rows, w))
}

fn with_file<F>(path: &Path, write: F) -> Result<()>
where
    F: FnOnce(&mut BufWriter<File>) -> io::Result<()>,
{
    let annotate = |source: io::Error| Error::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(annotate)?;
    let mut writer = BufWriter::new(file);
    write(&mut writer).map_err(annotate)?;
    writer.flush().map_err(annotate)
}
