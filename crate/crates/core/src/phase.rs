//! Quantum phases along paths: plane-wave kinematics, charged-particle
//! coupling to the vector potential, and flux quantisation.
//!
//! Conventions: metric signature (+, −, −, −); wave four-vectors store ω/c
//! in the time slot and displacement four-vectors store c·dt, so their
//! contraction is directly a phase in radians. A charge q couples to the
//! electromagnetic potential through the action increment q A · dx, so
//! transporting it around a closed loop γ produces the gauge-invariant
//! phase (q/ħ) ∮ A · dl — nonzero whenever γ links trapped flux, even
//! where B vanishes along the whole path.

use crate::constants::{COOPER_PAIR_CHARGE, REDUCED_PLANCK, SPEED_OF_LIGHT};
use crate::error::{Error, Result};
use crate::field::{FieldSource, GaugeFunction};
use crate::geometry::{Curve, Vec3};
use crate::integral::line_integral_a;

/// A four-vector with explicit time component.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector {
    /// Time component (same units as the spatial part).
    pub time: f64,
    /// Spatial components.
    pub spatial: Vec3,
}

impl FourVector {
    pub fn new(time: f64, spatial: Vec3) -> Self {
        FourVector { time, spatial }
    }

    /// Wave four-vector (ω/c, k) from angular frequency ω (rad/s) and wave
    /// vector k (rad/m).
    pub fn wave(omega: f64, k: Vec3) -> Self {
        FourVector::new(omega / SPEED_OF_LIGHT, k)
    }

    /// Displacement four-vector (c·dt, dx) from duration dt (s) and spatial
    /// step dx (m).
    pub fn displacement(dt: f64, dx: Vec3) -> Self {
        FourVector::new(SPEED_OF_LIGHT * dt, dx)
    }

    /// Minkowski contraction with signature (+, −, −, −).
    pub fn dot(&self, other: &FourVector) -> f64 {
        self.time * other.time - self.spatial.dot(&other.spatial)
    }
}

/// Phase accumulated by an action increment: dφ = dS / ħ (rad).
pub fn action_to_phase(action: f64) -> f64 {
    action / REDUCED_PLANCK
}

/// Phase advance of a plane wave across a spacetime displacement (rad):
/// ω dt − k · dx.
pub fn plane_wave_phase(wave: &FourVector, displacement: &FourVector) -> f64 {
    wave.dot(displacement)
}

/// A charge carried along a path through a vector-potential source.
#[derive(Debug, Clone)]
pub struct ChargedPath {
    charge: f64,
    path: Curve,
    source: FieldSource,
}

impl ChargedPath {
    /// A carrier of charge `charge` (C, nonzero) on `path` through `source`.
    pub fn new(charge: f64, path: Curve, source: FieldSource) -> Result<Self> {
        if charge == 0.0 || !charge.is_finite() {
            return Err(Error::ZeroCharge);
        }
        Ok(ChargedPath {
            charge,
            path,
            source,
        })
    }

    /// A Cooper pair (q = 2e) on `path` through `source`.
    pub fn cooper_pair(path: Curve, source: FieldSource) -> Self {
        ChargedPath {
            charge: COOPER_PAIR_CHARGE,
            path,
            source,
        }
    }

    pub fn charge(&self) -> f64 {
        self.charge
    }

    pub fn path(&self) -> &Curve {
        &self.path
    }

    pub fn source(&self) -> &FieldSource {
        &self.source
    }
}

/// Electromagnetic phase (q/ħ) ∫ A · dl picked up along the path (rad).
pub fn charged_phase(carrier: &ChargedPath, refine: usize) -> Result<f64> {
    Ok(carrier.charge / REDUCED_PLANCK * line_integral_a(&carrier.source, &carrier.path, refine)?)
}

/// Wraps `source` so its potential is shifted by ∇χ.
pub fn apply_gauge(source: FieldSource, chi: GaugeFunction) -> FieldSource {
    FieldSource::gauge_shifted(source, chi)
}

/// Closed-loop phase (q/ħ) ∮ A · dl around `gamma` (rad). Gauge invariant;
/// for a loop enclosing quantised flux n h/2e with q = 2e it is 2πn.
pub fn holonomy(charge: f64, source: &FieldSource, gamma: &Curve, refine: usize) -> Result<f64> {
    if !gamma.is_closed() {
        return Err(Error::InvalidCurve(
            "holonomy needs a closed curve".to_string(),
        ));
    }
    if charge == 0.0 || !charge.is_finite() {
        return Err(Error::ZeroCharge);
    }
    Ok(charge / REDUCED_PLANCK * line_integral_a(source, gamma, refine)?)
}

/// A flux split into whole quanta and a remainder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluxQuantization {
    /// Nearest whole number of flux quanta, ties away from zero.
    pub n: i64,
    /// phi − n h/2e (Wb).
    pub residual: f64,
}

/// Splits `phi` (Wb) into the nearest whole number of flux quanta plus a
/// residual of magnitude at most half a quantum.
pub fn check_flux_quantization(phi: f64) -> FluxQuantization {
    let quantum = crate::constants::flux_quantum();
    let n = (phi / quantum).round();
    FluxQuantization {
        n: n as i64,
        residual: phi - n * quantum,
    }
}
