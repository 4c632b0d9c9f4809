use crate::basis::BasisTag;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A wave number `k <= 0` was supplied.
    #[error("wave number k must be positive, got {0}")]
    NonPositiveWaveNumber(f64),

    /// The volume factor of a field-sampling configuration must be positive.
    #[error("volume factor must be positive, got {0}")]
    NonPositiveVolumeFactor(f64),

    /// An eigenvalue of a supposedly positive-definite matrix fell at or
    /// below the spectral floor. This signals an over-aggressive truncation
    /// or a matrix that is not the intended positive operator; eigenvalues
    /// are never clamped silently.
    #[error(
        "spectrum not strictly positive: eigenvalue {min_eigenvalue:e} at or below floor {floor:e}"
    )]
    NonPositiveSpectrum { min_eigenvalue: f64, floor: f64 },

    /// Two objects defined on different bases were combined.
    #[error("basis mismatch: {left:?} vs {right:?}")]
    BasisMismatch { left: BasisTag, right: BasisTag },

    /// A Fock index exceeds the truncation of the target basis.
    #[error("occupation ({n_fwd},{n_bwd}) exceeds truncation n_max = {n_max}")]
    OccupationOutOfRange { n_fwd: u32, n_bwd: u32, n_max: u32 },

    /// The requested forward restriction does not fit inside the basis.
    #[error("forward restriction needs n_keep + 1 <= n_max, got n_keep = {n_keep}, n_max = {n_max}")]
    ForwardSectorTooLarge { n_keep: usize, n_max: u32 },

    /// A radial coordinate below zero was supplied.
    #[error("radial coordinate must be non-negative, got {0}")]
    NegativeRadius(f64),

    /// A serialized operator or state did not match the expected schema.
    #[error("invalid serialized object: {0}")]
    InvalidSerialization(String),
}
