//! Error type shared across the crate.

use std::path::PathBuf;

/// Everything that can go wrong while building field sources, integrating,
/// stepping the ring model, or running the experiment harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A curve failed a structural requirement: too few points, repeated
    /// consecutive points, or an open curve where a closed one is needed.
    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    /// A scalar argument was out of range for the requested operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    /// The evaluation point sits within `limit` metres of a field-source
    /// singularity (a filament path or a loop conductor).
    #[error("evaluation point lies within {limit:e} m of the field source")]
    EvaluationOnSource { limit: f64 },

    /// Surface integration needs a planar boundary; this curve leaves its
    /// best-fit plane by more than the stated tolerance.
    #[error("curve is not planar within {tolerance:e} m")]
    NonPlanarCurve { tolerance: f64 },

    /// The polar surface grid needs the boundary to wind exactly once
    /// around its centroid with strictly advancing angle.
    #[error("curve is not star-shaped about its centroid")]
    NotStarShaped,

    /// The requested source has no pointwise flux density (an ideal flux
    /// filament is a singular distribution).
    #[error("flux density is not defined for this source: {0}")]
    UnsupportedSource(&'static str),

    /// Linking numbers are only defined for disjoint curves.
    #[error("curves approach within {limit:e} m of each other")]
    CurvesIntersect { limit: f64 },

    /// No material with this name in the table.
    #[error("unknown material {0:?}")]
    UnknownMaterial(String),

    /// A charged path needs a nonzero charge.
    #[error("charge must be nonzero")]
    ZeroCharge,

    /// The applied field reached the critical field of the lead torus,
    /// which must stay superconducting for the stored flux to persist.
    #[error("applied field {b_applied} T reaches the lead critical field {limit} T")]
    LeadQuench { b_applied: f64, limit: f64 },

    /// Waveform amplitude too small: the ring would never go normal and
    /// the hysteresis loop degenerates.
    #[error("waveform amplitude {amplitude} T never exceeds the ring critical field {critical} T")]
    NeverQuenches { amplitude: f64, critical: f64 },

    /// Trapped-flux bookkeeping only applies to a superconducting ring.
    #[error("ring is not superconducting")]
    NotSuperconducting,

    /// Asymmetry needs at least one remnant reading on each side.
    #[error("need remnant readings on both waveform sides")]
    InsufficientRemnants,

    /// A trapped state failed the independent flux-integral check.
    #[error("trapped-flux verification failed at step {step}: residual {residual:e} Wb exceeds {tolerance:e} Wb")]
    VerificationFailed {
        residual: f64,
        tolerance: f64,
        step: usize,
    },

    /// Configuration file or override problem.
    #[error("config: {0}")]
    Config(String),

    /// I/O failure, annotated with the path involved.
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
