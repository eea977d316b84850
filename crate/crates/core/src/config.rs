//! Flat key=value experiment configuration.
//!
//! Nine keys, each optional with a default: `material`, `b_prime_gauss`,
//! `open_area_m2`, `core_flux_wb`, `orientation`, `steps_per_quarter`,
//! `cycles`, `refine`, `verify`. Blank lines and `#` comments are ignored;
//! when a key repeats, the last assignment wins. Applied fields enter in
//! gauss here — the one place the simulator speaks gauss — and are
//! converted to tesla on the spot.

use std::path::Path;

use crate::constants::{flux_quantum, gauss_to_tesla};
use crate::error::{Error, Result};
use crate::harness::Waveform;
use crate::material::{material, Material, TIN};
use crate::ring::{Orientation, RingGeometry, TorusCore};

/// Everything the experiment harness needs to run.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    /// Ring material (the lead torus is fixed).
    pub material: Material,
    /// Waveform peak B′ (T).
    pub b_prime: f64,
    /// Ring opening area (m²).
    pub open_area: f64,
    /// Stored core flux magnitude (Wb, ≥ 0).
    pub core_flux: f64,
    /// Sense of the stored flux relative to the ring normal.
    pub orientation: Orientation,
    /// Waveform samples per quarter cycle.
    pub steps_per_quarter: u32,
    /// Full waveform cycles.
    pub cycles: u32,
    /// Quadrature subdivision for verification integrals.
    pub refine: u32,
    /// Run the trapped-flux check at every trapping event.
    pub verify: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            material: TIN,
            // 5% above the tin critical field: quenches every half cycle,
            // nowhere near the lead limit
            b_prime: gauss_to_tesla(294.0),
            // an opening that spans 10.3 flux quanta at the critical field
            open_area: 10.3 * flux_quantum() / TIN.critical_field,
            core_flux: 0.4 * flux_quantum(),
            orientation: Orientation::Aligned,
            steps_per_quarter: 64,
            cycles: 3,
            refine: 1,
            verify: false,
        }
    }
}

impl ExperimentConfig {
    /// Parses a config file, starting from defaults.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse_str(&text)
    }

    /// Parses config text, starting from defaults.
    pub fn parse_str(text: &str) -> Result<Self> {
        let mut config = Self::default();
        for (index, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key=value, got {raw:?}", index + 1))
            })?;
            config.set(key.trim(), value.trim()).map_err(|err| match err {
                Error::Config(msg) => Error::Config(format!("line {}: {msg}", index + 1)),
                other => other,
            })?;
        }
        config.validate()?;
        Ok(config)
    }

    /// Applies one `key = value` assignment (also used for CLI overrides).
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "material" => self.material = material(value)?,
            "b_prime_gauss" => self.b_prime = gauss_to_tesla(parse_f64(key, value)?),
            "open_area_m2" => self.open_area = parse_f64(key, value)?,
            "core_flux_wb" => self.core_flux = parse_f64(key, value)?,
            "orientation" => {
                self.orientation = match value {
                    "+1" | "1" => Orientation::Aligned,
                    "-1" => Orientation::Opposed,
                    other => {
                        return Err(Error::Config(format!(
                            "orientation must be +1 or -1, got {other:?}"
                        )))
                    }
                }
            }
            "steps_per_quarter" => self.steps_per_quarter = parse_u32(key, value)?,
            "cycles" => self.cycles = parse_u32(key, value)?,
            "refine" => self.refine = parse_u32(key, value)?,
            "verify" => {
                self.verify = match value {
                    "true" => true,
                    "false" => false,
                    other => {
                        return Err(Error::Config(format!(
                            "verify must be true or false, got {other:?}"
                        )))
                    }
                }
            }
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Sets a key from a numeric sweep value. Integer keys require a whole
    /// number; `material` and `verify` cannot be swept.
    pub fn set_numeric(&mut self, key: &str, value: f64) -> Result<()> {
        let whole = |value: f64| -> Result<u32> {
            if value.fract() != 0.0 || !(0.0..=u32::MAX as f64).contains(&value) {
                return Err(Error::Config(format!(
                    "{key} needs a whole number, got {value}"
                )));
            }
            Ok(value as u32)
        };
        match key {
            "b_prime_gauss" => {
                self.b_prime = gauss_to_tesla(require_finite(key, value)?);
            }
            "open_area_m2" => self.open_area = require_finite(key, value)?,
            "core_flux_wb" => self.core_flux = require_finite(key, value)?,
            "orientation" => {
                self.orientation = if value == 1.0 {
                    Orientation::Aligned
                } else if value == -1.0 {
                    Orientation::Opposed
                } else {
                    return Err(Error::Config(format!(
                        "orientation must be +1 or -1, got {value}"
                    )));
                }
            }
            "steps_per_quarter" => self.steps_per_quarter = whole(value)?,
            "cycles" => self.cycles = whole(value)?,
            "refine" => self.refine = whole(value)?,
            "material" | "verify" => {
                return Err(Error::Config(format!("key {key:?} cannot be swept")))
            }
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Checks the assembled configuration for internal consistency.
    pub fn validate(&self) -> Result<()> {
        if !(self.b_prime.is_finite() && self.b_prime > 0.0) {
            return Err(Error::Config("b_prime_gauss must be positive".to_string()));
        }
        if !(self.open_area.is_finite() && self.open_area > 0.0) {
            return Err(Error::Config("open_area_m2 must be positive".to_string()));
        }
        if !(self.core_flux.is_finite() && self.core_flux >= 0.0) {
            return Err(Error::Config(
                "core_flux_wb must be non-negative".to_string(),
            ));
        }
        if self.steps_per_quarter < 2 {
            return Err(Error::Config(
                "steps_per_quarter must be at least 2".to_string(),
            ));
        }
        if self.cycles < 1 {
            return Err(Error::Config("cycles must be at least 1".to_string()));
        }
        if self.refine < 1 {
            return Err(Error::Config("refine must be at least 1".to_string()));
        }
        Ok(())
    }

    /// Ring geometry implied by the configuration.
    pub fn ring_geometry(&self) -> Result<RingGeometry> {
        RingGeometry::new(self.open_area, self.material)
    }

    /// Torus core implied by the configuration.
    pub fn torus_core(&self) -> Result<TorusCore> {
        TorusCore::new(self.core_flux, self.orientation)
    }

    /// Drive waveform implied by the configuration.
    pub fn waveform(&self) -> Waveform {
        Waveform {
            amplitude: self.b_prime,
            steps_per_quarter: self.steps_per_quarter,
            cycles: self.cycles,
        }
    }
}

fn parse_f64(key: &str, value: &str) -> Result<f64> {
    let parsed: f64 = value
        .parse()
        .map_err(|_| Error::Config(format!("{key} needs a number, got {value:?}")))?;
    require_finite(key, parsed)
}

fn require_finite(key: &str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::Config(format!("{key} must be finite, got {value}")));
    }
    Ok(value)
}

fn parse_u32(key: &str, value: &str) -> Result<u32> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("{key} needs a non-negative integer, got {value:?}")))
}
