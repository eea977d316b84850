//! Physical constants and unit conversions.
//!
//! Everything internal is SI: tesla, weber, metre, second, coulomb. Gauss
//! appears only at the configuration boundary and is converted on input by
//! [`gauss_to_tesla`]. `PLANCK` and `ELEMENTARY_CHARGE` carry the exact
//! values fixed by the 2019 SI redefinition, so derived quantities such as
//! the flux quantum are reproducible to the last bit.

use std::f64::consts::PI;

/// Planck constant h (J s, exact).
pub const PLANCK: f64 = 6.62607015e-34;

/// Elementary charge e (C, exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602176634e-19;

/// Reduced Planck constant h / 2π (J s).
pub const REDUCED_PLANCK: f64 = PLANCK / (2.0 * PI);

/// Vacuum permeability μ₀ (T m / A).
pub const VACUUM_PERMEABILITY: f64 = 4.0e-7 * PI;

/// Speed of light in vacuum (m/s, exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Charge of a Cooper pair, 2e (C). Pair condensates couple to the vector
/// potential with twice the elementary charge, which halves the flux
/// quantum relative to a single-electron carrier.
pub const COOPER_PAIR_CHARGE: f64 = 2.0 * ELEMENTARY_CHARGE;

/// Superconducting flux quantum h / 2e (Wb).
pub fn flux_quantum() -> f64 {
    PLANCK / (2.0 * ELEMENTARY_CHARGE)
}

/// Converts a field magnitude from gauss to tesla.
pub fn gauss_to_tesla(gauss: f64) -> f64 {
    gauss * 1.0e-4
}
