//! Hysteresis state machine for a superconducting ring threaded by a
//! persistent-flux torus.
//!
//! The ring is either normal or superconducting with an integer number of
//! trapped flux quanta. Driving the applied field to the ring's critical
//! field quenches it; when the field falls back below critical the ring
//! goes superconducting again and freezes in the flux threading it at that
//! instant — the stored torus flux plus the applied field over the opening
//! — rounded to a whole number of quanta h/2e. Because the transition
//! happens at ±B_c depending on sweep direction, the trapped number differs
//! between the two waveform sides, and any stored torus flux shifts both:
//! the remnant readings no longer cancel. A Hall probe in the opening
//! reports the average field over the open area; the persistent current
//! adjusts so that trapped quanta minus stored flux is what the opening
//! carries.
//!
//! The lead torus must stay superconducting throughout — its critical
//! field bounds every applied-field sample — otherwise the stored flux
//! it guards would escape and the experiment's premise fails.

use std::f64::consts::PI;

use crate::constants::flux_quantum;
use crate::error::{Error, Result};
use crate::field::FieldSource;
use crate::geometry::{Curve, Vec3};
use crate::integral::line_integral_a;
use crate::material::{Material, LEAD};
use crate::phase::check_flux_quantization;

use self::RingState::{Normal, Superconducting};

/// Sense of the stored torus flux relative to the ring normal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// Stored flux threads the ring along its normal (+1).
    Aligned,
    /// Stored flux threads the ring against its normal (−1).
    Opposed,
}

impl Orientation {
    /// +1 for aligned, −1 for opposed.
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Aligned => 1.0,
            Orientation::Opposed => -1.0,
        }
    }

    /// The opposite sense.
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Aligned => Orientation::Opposed,
            Orientation::Opposed => Orientation::Aligned,
        }
    }

    /// Parses the numeric form ±1.
    pub fn from_sign(value: i64) -> Result<Self> {
        match value {
            1 => Ok(Orientation::Aligned),
            -1 => Ok(Orientation::Opposed),
            _ => Err(Error::InvalidArgument("orientation must be +1 or -1")),
        }
    }
}

/// Persistent flux stored in the torus core.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusCore {
    core_flux: f64,
    orientation: Orientation,
}

impl TorusCore {
    /// A core holding `core_flux` (Wb, ≥ 0) with the given sense.
    pub fn new(core_flux: f64, orientation: Orientation) -> Result<Self> {
        if !(core_flux.is_finite() && core_flux >= 0.0) {
            return Err(Error::InvalidArgument(
                "core flux must be finite and non-negative",
            ));
        }
        Ok(TorusCore {
            core_flux,
            orientation,
        })
    }

    /// Stored flux magnitude (Wb).
    pub fn core_flux(&self) -> f64 {
        self.core_flux
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// σ Φ_core (Wb): the flux the core threads through the ring.
    pub fn signed_flux(&self) -> f64 {
        self.orientation.sign() * self.core_flux
    }
}

/// Ring opening and material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingGeometry {
    open_area: f64,
    material: Material,
}

impl RingGeometry {
    /// A ring with opening `open_area` (m², > 0) made of `material`.
    pub fn new(open_area: f64, material: Material) -> Result<Self> {
        if !(open_area.is_finite() && open_area > 0.0) {
            return Err(Error::InvalidArgument("open area must be positive"));
        }
        Ok(RingGeometry {
            open_area,
            material,
        })
    }

    /// Opening area (m²).
    pub fn open_area(&self) -> f64 {
        self.open_area
    }

    pub fn material(&self) -> Material {
        self.material
    }
}

/// Electrodynamic state of the ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingState {
    /// Quenched: applied field passes straight through the opening.
    Normal,
    /// Superconducting with `n` trapped flux quanta.
    Superconducting { n: i64 },
}

/// Hall-probe reading (T) in the ring opening.
///
/// A normal ring passes the applied field through; a superconducting ring
/// holds the opening's total flux at n h/2e, so the probe sees the trapped
/// quanta minus the stored torus flux, averaged over the open area.
pub fn probe_reading(
    state: RingState,
    b_applied: f64,
    geometry: &RingGeometry,
    core: &TorusCore,
) -> f64 {
    match state {
        Normal => b_applied,
        Superconducting { n } => {
            (n as f64 * flux_quantum() - core.signed_flux()) / geometry.open_area()
        }
    }
}

/// Ring plus core with quench/re-trap hysteresis memory.
#[derive(Debug, Clone)]
pub struct RingModel {
    geometry: RingGeometry,
    core: TorusCore,
    state: RingState,
    last_field_sign: f64,
}

impl RingModel {
    /// A fresh superconducting ring with no trapped quanta. The sign
    /// memory starts positive: a quench released exactly at zero applied
    /// field re-traps as if approached from the positive side.
    pub fn new(geometry: RingGeometry, core: TorusCore) -> Self {
        RingModel {
            geometry,
            core,
            state: Superconducting { n: 0 },
            last_field_sign: 1.0,
        }
    }

    /// A ring resumed from a known state.
    pub fn with_state(geometry: RingGeometry, core: TorusCore, state: RingState) -> Self {
        RingModel {
            state,
            ..RingModel::new(geometry, core)
        }
    }

    pub fn state(&self) -> RingState {
        self.state
    }

    pub fn geometry(&self) -> &RingGeometry {
        &self.geometry
    }

    pub fn core(&self) -> &TorusCore {
        &self.core
    }

    /// Advances the hysteresis state machine by one applied-field sample
    /// (T) and returns the new state with its probe reading (T).
    ///
    /// Superconducting → normal at |B| ≥ B_c of the ring; normal →
    /// superconducting at |B| < B_c, trapping the nearest whole number of
    /// quanta to σ Φ_core ± B_c · area, with the sign set by the side the
    /// field is on (the last nonzero side if B is exactly zero). Any |B|
    /// at or above the lead critical field is an error: the torus guarding
    /// the stored flux must never quench.
    pub fn step(&mut self, b_applied: f64) -> Result<(RingState, f64)> {
        if !b_applied.is_finite() {
            return Err(Error::InvalidArgument("applied field must be finite"));
        }
        let lead_limit = LEAD.critical_field;
        if b_applied.abs() >= lead_limit {
            return Err(Error::LeadQuench {
                b_applied,
                limit: lead_limit,
            });
        }
        let b_c = self.geometry.material().critical_field;
        self.state = match self.state {
            Superconducting { .. } if b_applied.abs() >= b_c => Normal,
            Normal if b_applied.abs() < b_c => {
                let sign = if b_applied > 0.0 {
                    1.0
                } else if b_applied < 0.0 {
                    -1.0
                } else {
                    self.last_field_sign
                };
                let enclosed = self.core.signed_flux() + sign * (b_c * self.geometry.open_area());
                Superconducting {
                    n: check_flux_quantization(enclosed).n,
                }
            }
            unchanged => unchanged,
        };
        if b_applied != 0.0 {
            self.last_field_sign = if b_applied > 0.0 { 1.0 } else { -1.0 };
        }
        Ok((
            self.state,
            probe_reading(self.state, b_applied, &self.geometry, &self.core),
        ))
    }
}

/// Quadrature sizes for the trapped-flux consistency check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerificationSettings {
    /// Vertices on the ring contour.
    pub loop_points: usize,
    /// Vertices on the reconstructed core filament.
    pub filament_points: usize,
    /// Midpoint subdivisions per contour segment.
    pub refine: usize,
}

impl Default for VerificationSettings {
    fn default() -> Self {
        VerificationSettings {
            loop_points: 1024,
            filament_points: 1024,
            refine: 1,
        }
    }
}

/// Acceptance threshold for the trapped-flux check (Wb).
pub fn flux_verification_tolerance() -> f64 {
    1.0e-3 * flux_quantum()
}

/// Independent check of a trapped state: rebuilds the configuration as an
/// explicit field source — the stored core flux as a filament linking the
/// ring once, plus a uniform field reproducing the probe reading over the
/// opening — and returns ∮ A · dl around the ring contour minus n h/2e
/// (Wb). For a consistent state the residual is quadrature noise.
pub fn verify_state_flux(
    state: RingState,
    geometry: &RingGeometry,
    core: &TorusCore,
    settings: &VerificationSettings,
) -> Result<f64> {
    let Superconducting { n } = state else {
        return Err(Error::NotSuperconducting);
    };
    let ring_radius = (geometry.open_area() / PI).sqrt();
    let gamma = Curve::circle(Vec3::zeros(), Vec3::z(), ring_radius, settings.loop_points)?;
    let filament_path = Curve::circle(
        Vec3::new(0.0, ring_radius, 0.0),
        -Vec3::x(),
        ring_radius,
        settings.filament_points,
    )?;
    let probe = probe_reading(state, 0.0, geometry, core);
    let source = FieldSource::composite(vec![
        FieldSource::flux_filament(filament_path, core.signed_flux())?,
        FieldSource::uniform(Vec3::z() * probe),
    ]);
    let circulation = line_integral_a(&source, &gamma, settings.refine)?;
    Ok(circulation - n as f64 * flux_quantum())
}
