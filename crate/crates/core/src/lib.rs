//! Deterministic simulator of flux trapping in a superconducting ring
//! linked by a persistent-flux torus.
//!
//! The physical picture: a lead torus stores a fixed magnetic flux; a tin
//! ring is linked through it like two chain links. Cycling an applied
//! field above the tin critical field quenches the ring; each time the
//! field drops back below critical, the ring re-traps the flux threading
//! it — stored flux plus applied field over the opening — rounded to a
//! whole number of quanta h/2e. Because trapping happens at +B_c on one
//! waveform side and −B_c on the other, the pair of remnant probe readings
//! measures the stored flux: their sum ΔB steps through quantised values
//! as the stored flux grows. The same trapped flux is visible to a charge
//! carried around the ring as a closed-loop phase (q/ħ) ∮ A · dl, even
//! though B vanishes on the path itself.
//!
//! Module map, bottom-up:
//! - [`constants`] / [`material`]: exact SI constants, gauss conversion,
//!   critical fields
//! - [`geometry`]: oriented polyline curves and distance queries
//! - [`elliptic`]: complete elliptic integrals (AGM)
//! - [`field`]: vector-potential sources — uniform, circular loop, ideal
//!   flux filament, gauge shifts, superpositions
//! - [`integral`]: midpoint line integrals, polar-grid surface flux, Gauss
//!   linking numbers
//! - [`phase`]: four-vector kinematics, charged-path phases, holonomy,
//!   flux quantisation
//! - [`ring`]: the quench/re-trap hysteresis state machine and its
//!   independent flux verification
//! - [`config`] / [`harness`]: experiment configuration, triangular drive,
//!   remnant asymmetry, CSV output
//!
//! Every quadrature accumulates in a fixed sequential order: identical
//! inputs give bitwise identical outputs, so CSV files diff clean across
//! runs and machines.

pub mod config;
pub mod constants;
pub mod elliptic;
pub mod error;
pub mod field;
pub mod geometry;
pub mod harness;
pub mod integral;
pub mod material;
pub mod phase;
pub mod ring;

pub use config::ExperimentConfig;
pub use error::{Error, Result};
pub use field::{FieldSource, GaugeFunction};
pub use geometry::{Curve, Vec3};
pub use harness::{
    asymmetry, generate_waveform, run_experiment, run_samples, ExperimentRun, LoopRecord, Remnant,
    Waveform,
};
pub use integral::{line_integral_a, linking_number, surface_flux, LinkingNumber};
pub use material::{material, Material, LEAD, TIN};
pub use phase::{
    action_to_phase, apply_gauge, charged_phase, check_flux_quantization, holonomy, ChargedPath,
    FluxQuantization, FourVector,
};
pub use ring::{
    flux_verification_tolerance, probe_reading, verify_state_flux, Orientation, RingGeometry,
    RingModel, RingState, TorusCore, VerificationSettings,
};
