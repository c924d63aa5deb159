use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the numerical pipeline can report.
///
/// Each variant has a stable machine-readable [`code`](Error::code).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Schur parameter a_{index} has modulus {modulus} (must stay below 1 - 1e-12)")]
    SchurOutOfDisk { index: usize, modulus: f64 },

    #[error("order {requested} exceeds the available order {available}")]
    OrderOutOfRange { requested: usize, available: usize },

    #[error("|1 - conj(y) z| = {gap:e} is too small for the Christoffel-Darboux quotient")]
    NearDiagonal { gap: f64 },

    #[error("point of modulus {modulus} is not on the unit circle")]
    OffCircle { modulus: f64 },

    #[error("moment integration not resolved: grid doubling changed |c_{k}| by {change:e}")]
    IntegrationResolution { k: usize, change: f64 },

    #[error("moments are not positive definite: |a_{n}| = {modulus} reaches the unit circle")]
    NotPositiveDefinite { n: usize, modulus: f64 },

    #[error("moment index {needed} is outside the table range 0..={available}")]
    MomentRangeExceeded { needed: usize, available: usize },

    #[error("division by (z - w) left a remainder of {remainder:e}")]
    RemainderTooLarge { remainder: f64 },

    #[error("|alpha| = {alpha} and |beta| = {beta} must be equal and nonzero")]
    ModulusMismatch { alpha: f64, beta: f64 },

    #[error("isolated {found} zeros on the circle, expected {expected}")]
    ZeroCountMismatch { found: usize, expected: usize },

    #[error("anchor is a common zero of Phi_{n} and its reversal")]
    DegenerateAnchor { n: usize },

    #[error("coefficient alpha_{n} vanishes")]
    ZeroCoefficient { n: usize },

    #[error("imaginary part {imag:e} leaked into a real-on-circle quantity")]
    PhaseLeak { imag: f64 },

    #[error("invalid measure: {0}")]
    InvalidMeasure(String),

    #[error("invalid family: {0}")]
    InvalidFamily(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::SchurOutOfDisk { .. } => "schur_out_of_disk",
            Error::OrderOutOfRange { .. } => "order_out_of_range",
            Error::NearDiagonal { .. } => "near_diagonal",
            Error::OffCircle { .. } => "off_circle",
            Error::IntegrationResolution { .. } => "integration_resolution",
            Error::NotPositiveDefinite { .. } => "not_positive_definite",
            Error::MomentRangeExceeded { .. } => "moment_range_exceeded",
            Error::RemainderTooLarge { .. } => "remainder_too_large",
            Error::ModulusMismatch { .. } => "modulus_mismatch",
            Error::ZeroCountMismatch { .. } => "zero_count_mismatch",
            Error::DegenerateAnchor { .. } => "degenerate_anchor",
            Error::ZeroCoefficient { .. } => "zero_coefficient",
            Error::PhaseLeak { .. } => "phase_leak",
            Error::InvalidMeasure(_) => "invalid_measure",
            Error::InvalidFamily(_) => "invalid_family",
        }
    }
}
