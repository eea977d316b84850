//! Superconductor material data.
//!
//! Both metals in the simulated apparatus are type-I superconductors with a
//! sharp critical field: tin for the ring under test, lead for the torus
//! that stores persistent flux. The drive waveform must quench the tin ring
//! every half cycle while never approaching the lead critical field, so the
//! two values bracket every admissible field excursion.

use crate::error::{Error, Result};

/// A superconducting material with its critical field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    /// Table key, e.g. "Sn".
    pub name: &'static str,
    /// Critical field B_c (T).
    pub critical_field: f64,
}

/// Tin, the ring material: B_c = 280 gauss.
pub const TIN: Material = Material {
    name: "Sn",
    critical_field: 280.0 * 1.0e-4,
};

/// Lead, the flux-storing torus: B_c = 780 gauss.
pub const LEAD: Material = Material {
    name: "Pb",
    critical_field: 780.0 * 1.0e-4,
};

/// Every material known to the simulator.
pub fn material_table() -> &'static [Material] {
    &[TIN, LEAD]
}

/// Looks up a material by its table key.
pub fn material(name: &str) -> Result<Material> {
    material_table()
        .iter()
        .copied()
        .find(|m| m.name == name)
        .ok_or_else(|| Error::UnknownMaterial(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::gauss_to_tesla;

    #[test]
    fn critical_fields_in_tesla() {
        assert_eq!(TIN.critical_field, gauss_to_tesla(280.0));
        assert_eq!(LEAD.critical_field, gauss_to_tesla(780.0));
        assert!(TIN.critical_field < LEAD.critical_field);
    }

    #[test]
    fn lookup_by_name() {
        assert_eq!(material("Sn").unwrap(), TIN);
        assert_eq!(material("Pb").unwrap(), LEAD);
        assert!(matches!(
            material("Nb"),
            Err(Error::UnknownMaterial(name)) if name == "Nb"
        ));
    }
}
