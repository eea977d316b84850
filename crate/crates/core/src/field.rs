//! Magnetostatic field sources and their vector potentials.
//!
//! Sources are static, so each one is fully described by its vector
//! potential A(r); the flux density B = ∇ × A is available pointwise for
//! the sources that have one.
//!
//! - A uniform field uses the symmetric gauge A = B × r / 2, which is
//!   linear in r — midpoint quadrature integrates it exactly along straight
//!   segments.
//! - A circular current loop uses the closed-form azimuthal potential in
//!   terms of complete elliptic integrals.
//! - An ideal flux filament — a closed tube carrying flux Φ with zero
//!   cross-section — has B = 0 everywhere off the path, yet
//!   A(r) = (Φ/4π) Σ Δl′ × (r − m′) / |r − m′|³ does not vanish: the
//!   circulation ∮ A · dl around a loop equals Φ times the Gauss linking
//!   number of the loop with the filament. The flux is felt only through
//!   the topology of the enclosing path.
//! - A gauge shift adds ∇χ to an inner source's potential without touching
//!   its flux density, and a composite source superposes parts linearly.

use std::f64::consts::PI;

use nalgebra::Matrix3;

use crate::constants::VACUUM_PERMEABILITY;
use crate::elliptic::complete_elliptic;
use crate::error::{Error, Result};
use crate::geometry::{Curve, Vec3};

/// Default exclusion distance around source singularities (m): evaluating
/// A or B closer than this to a conductor or filament is an error.
pub const DEFAULT_SOURCE_CLEARANCE: f64 = 1e-9;

/// Scalar gauge function χ(x). Shifting a source's potential by ∇χ changes
/// A pointwise but leaves every closed-loop circulation and the flux
/// density unchanged.
#[derive(Debug, Clone, PartialEq)]
pub enum GaugeFunction {
    /// χ = a · x
    Linear { a: Vec3 },
    /// χ = xᵀ Q x / 2; the gradient uses the symmetric part of Q.
    Quadratic { q: Matrix3<f64> },
    /// χ = c sin(k · x)
    Sinusoidal { c: f64, k: Vec3 },
}

impl GaugeFunction {
    /// χ(x) (T m²).
    pub fn value(&self, x: Vec3) -> f64 {
        match self {
            GaugeFunction::Linear { a } => a.dot(&x),
            GaugeFunction::Quadratic { q } => 0.5 * x.dot(&(q * x)),
            GaugeFunction::Sinusoidal { c, k } => c * k.dot(&x).sin(),
        }
    }

    /// ∇χ(x) (T m).
    pub fn gradient(&self, x: Vec3) -> Vec3 {
        match self {
            GaugeFunction::Linear { a } => *a,
            GaugeFunction::Quadratic { q } => (q + q.transpose()) * x * 0.5,
            GaugeFunction::Sinusoidal { c, k } => k * (*c * k.dot(&x).cos()),
        }
    }
}

/// A magnetostatic source with a vector potential.
#[derive(Debug, Clone, PartialEq)]
pub enum FieldSource {
    /// Spatially uniform flux density `b` (T) in the symmetric gauge about
    /// the origin.
    Uniform { b: Vec3 },
    /// Circular loop of `radius` (m) carrying `current` (A) about `axis`
    /// through `center`; positive current circulates right-handed about
    /// the axis.
    CurrentLoop {
        center: Vec3,
        axis: Vec3,
        radius: f64,
        current: f64,
    },
    /// Ideal closed flux tube carrying `flux` (Wb) along `path`.
    FluxFilament { path: Curve, flux: f64 },
    /// `inner` with its potential shifted by ∇χ.
    GaugeShifted {
        inner: Box<FieldSource>,
        chi: GaugeFunction,
    },
    /// Linear superposition of `parts`.
    Composite { parts: Vec<FieldSource> },
}

impl FieldSource {
    /// Uniform flux density `b` (T).
    pub fn uniform(b: Vec3) -> Self {
        FieldSource::Uniform { b }
    }

    /// Validated circular current loop.
    pub fn current_loop(center: Vec3, axis: Vec3, radius: f64, current: f64) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidArgument("loop radius must be positive"));
        }
        if !(axis.norm().is_finite() && axis.norm() > 0.0) {
            return Err(Error::InvalidArgument("loop axis must be nonzero"));
        }
        if !current.is_finite() {
            return Err(Error::InvalidArgument("loop current must be finite"));
        }
        Ok(FieldSource::CurrentLoop {
            center,
            axis,
            radius,
            current,
        })
    }

    /// Validated ideal flux filament along a closed path.
    pub fn flux_filament(path: Curve, flux: f64) -> Result<Self> {
        if !path.is_closed() {
            return Err(Error::InvalidCurve(
                "flux filament path must be closed".to_string(),
            ));
        }
        if !flux.is_finite() {
            return Err(Error::InvalidArgument("filament flux must be finite"));
        }
        Ok(FieldSource::FluxFilament { path, flux })
    }

    /// `inner` with its potential shifted by ∇χ.
    pub fn gauge_shifted(inner: FieldSource, chi: GaugeFunction) -> Self {
        FieldSource::GaugeShifted {
            inner: Box::new(inner),
            chi,
        }
    }

    /// Superposition of `parts`.
    pub fn composite(parts: Vec<FieldSource>) -> Self {
        FieldSource::Composite { parts }
    }
}

/// Vector potential A(r) (T m) with the default source clearance.
pub fn vector_potential(source: &FieldSource, point: Vec3) -> Result<Vec3> {
    vector_potential_within(source, point, DEFAULT_SOURCE_CLEARANCE)
}

/// Vector potential A(r) (T m), rejecting points within `clearance` metres
/// of a source singularity.
pub fn vector_potential_within(source: &FieldSource, point: Vec3, clearance: f64) -> Result<Vec3> {
    match source {
        FieldSource::Uniform { b } => Ok(b.cross(&point) * 0.5),
        FieldSource::CurrentLoop {
            center,
            axis,
            radius,
            current,
        } => loop_vector_potential(*center, *axis, *radius, *current, point, clearance),
        FieldSource::FluxFilament { path, flux } => {
            filament_vector_potential(path, *flux, point, clearance)
        }
        FieldSource::GaugeShifted { inner, chi } => {
            Ok(vector_potential_within(inner, point, clearance)? + chi.gradient(point))
        }
        FieldSource::Composite { parts } => {
            let mut a = Vec3::zeros();
            for part in parts {
                a += vector_potential_within(part, point, clearance)?;
            }
            Ok(a)
        }
    }
}

/// Flux density B(r) (T) with the default source clearance.
pub fn flux_density(source: &FieldSource, point: Vec3) -> Result<Vec3> {
    flux_density_within(source, point, DEFAULT_SOURCE_CLEARANCE)
}

/// Flux density B(r) (T), rejecting points within `clearance` metres of a
/// source singularity. Ideal flux filaments have no pointwise density.
pub fn flux_density_within(source: &FieldSource, point: Vec3, clearance: f64) -> Result<Vec3> {
    match source {
        FieldSource::Uniform { b } => Ok(*b),
        FieldSource::CurrentLoop {
            center,
            axis,
            radius,
            current,
        } => loop_flux_density(*center, *axis, *radius, *current, point, clearance),
        FieldSource::FluxFilament { .. } => Err(Error::UnsupportedSource("ideal flux filament")),
        FieldSource::GaugeShifted { inner, .. } => flux_density_within(inner, point, clearance),
        FieldSource::Composite { parts } => {
            let mut b = Vec3::zeros();
            for part in parts {
                b += flux_density_within(part, point, clearance)?;
            }
            Ok(b)
        }
    }
}

/// Two coaxial loops of `radius` on the z axis, centred at ±separation/2,
/// carrying `current` in the same sense. At separation = radius this is
/// the classic arrangement whose midpoint field is (4/5)^{3/2} μ₀ I / radius
/// and uniform to fourth order in the distance from the midpoint.
pub fn helmholtz_pair(radius: f64, separation: f64, current: f64) -> Result<FieldSource> {
    if !(separation.is_finite() && separation > 0.0) {
        return Err(Error::InvalidArgument("separation must be positive"));
    }
    let half = separation * 0.5;
    Ok(FieldSource::composite(vec![
        FieldSource::current_loop(Vec3::new(0.0, 0.0, -half), Vec3::z(), radius, current)?,
        FieldSource::current_loop(Vec3::new(0.0, 0.0, half), Vec3::z(), radius, current)?,
    ]))
}

/// Resolves a loop's local frame: unit axis plus validated radius.
fn loop_frame(axis: Vec3, radius: f64) -> Result<Vec3> {
    if !(radius.is_finite() && radius > 0.0) {
        return Err(Error::InvalidArgument("loop radius must be positive"));
    }
    let len = axis.norm();
    if !(len.is_finite() && len > 0.0) {
        return Err(Error::InvalidArgument("loop axis must be nonzero"));
    }
    Ok(axis / len)
}

/// ((2 − m) K(m) − 2 E(m)) / m, the elliptic combination in the loop
/// potential, evaluated stably. For small m the direct form cancels to
/// O(m²) and loses relative accuracy, so a series takes over:
/// (π/16) m (1 + 3m/4 + 75m²/128 + 245m³/512 + O(m⁴)).
fn loop_potential_combination(m: f64) -> f64 {
    if m < 3e-3 {
        let bracket = 1.0 + m * (0.75 + m * (75.0 / 128.0 + m * (245.0 / 512.0)));
        PI / 16.0 * m * bracket
    } else {
        let (k, e) = complete_elliptic(m);
        ((2.0 - m) * k - 2.0 * e) / m
    }
}

fn loop_vector_potential(
    center: Vec3,
    axis: Vec3,
    radius: f64,
    current: f64,
    point: Vec3,
    clearance: f64,
) -> Result<Vec3> {
    let w = loop_frame(axis, radius)?;
    let d = point - center;
    let z = d.dot(&w);
    let rho_vec = d - w * z;
    let rho = rho_vec.norm();
    if (rho - radius).hypot(z) <= clearance {
        return Err(Error::EvaluationOnSource { limit: clearance });
    }
    if rho <= 1e-12 * radius {
        // A is purely azimuthal and vanishes on the symmetry axis.
        return Ok(Vec3::zeros());
    }
    let q = (radius + rho).powi(2) + z * z;
    let m = 4.0 * radius * rho / q;
    let a_phi = VACUUM_PERMEABILITY * current * radius / (PI * q.sqrt())
        * loop_potential_combination(m);
    Ok(w.cross(&(rho_vec / rho)) * a_phi)
}

fn loop_flux_density(
    center: Vec3,
    axis: Vec3,
    radius: f64,
    current: f64,
    point: Vec3,
    clearance: f64,
) -> Result<Vec3> {
    let w = loop_frame(axis, radius)?;
    let d = point - center;
    let z = d.dot(&w);
    let rho_vec = d - w * z;
    let rho = rho_vec.norm();
    if (rho - radius).hypot(z) <= clearance {
        return Err(Error::EvaluationOnSource { limit: clearance });
    }
    if rho <= 1e-12 * radius {
        let axial = VACUUM_PERMEABILITY * current * radius * radius
            / (2.0 * (radius * radius + z * z).powf(1.5));
        return Ok(w * axial);
    }
    let q = (radius + rho).powi(2) + z * z;
    let dd = (radius - rho).powi(2) + z * z;
    let m = 4.0 * radius * rho / q;
    let (k, e) = complete_elliptic(m);
    let prefactor = VACUUM_PERMEABILITY * current / (2.0 * PI * q.sqrt());
    let b_rho =
        prefactor * (z / rho) * ((radius * radius + rho * rho + z * z) / dd * e - k);
    let b_z = prefactor * (k + (radius * radius - rho * rho - z * z) / dd * e);
    Ok((rho_vec / rho) * b_rho + w * b_z)
}

fn filament_vector_potential(
    path: &Curve,
    flux: f64,
    point: Vec3,
    clearance: f64,
) -> Result<Vec3> {
    if !path.is_closed() {
        return Err(Error::InvalidCurve(
            "flux filament path must be closed".to_string(),
        ));
    }
    if path.distance_to_point(point) <= clearance {
        return Err(Error::EvaluationOnSource { limit: clearance });
    }
    let mut a = Vec3::zeros();
    for (p, q) in path.segments() {
        let mid = (p + q) * 0.5;
        let r = point - mid;
        let norm = r.norm();
        a += (q - p).cross(&r) / (norm * norm * norm);
    }
    Ok(a * (flux / (4.0 * PI)))
}
