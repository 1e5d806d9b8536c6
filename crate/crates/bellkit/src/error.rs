use thiserror::Error;

/// Errors raised across the library. Validation errors carry the measured
/// defect so callers can see how far the input was from the invariant.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |A - A'| = {defect:e})")]
    NotHermitian { defect: f64 },
    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue = {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("effect {index} is not positive semidefinite (min eigenvalue = {min_eigenvalue:e})")]
    NotPsdEffect { index: usize, min_eigenvalue: f64 },
    #[error("effects do not sum to identity (max defect = {defect:e})")]
    Incomplete { defect: f64 },
    #[error("outcome/effect count mismatch: {outcomes} outcomes, {effects} effects")]
    CountMismatch { outcomes: usize, effects: usize },
    #[error("outcome set invalid: {reason}")]
    InvalidOutcomes { reason: String },
    #[error("unknown outcome value {value}")]
    UnknownOutcome { value: f64 },
    #[error("representation invalid: {reason}")]
    InvalidRepresentation { reason: String },
    #[error("representations are incompatible: {reason}")]
    IncompatibleReps { reason: String },
    #[error("representations assemble to different states (max defect = {defect:e})")]
    DifferentStates { defect: f64 },
    #[error("symmetrized representation not supported here; use the symmetric sigma")]
    SymmetrizedRepUnsupported,
    #[error("state is not a bipartite square system (factor dims {0:?})", .factor_dims)]
    NotBipartiteSquare { factor_dims: Option<(usize, usize)> },
    #[error("argument out of range: |{name}| = {value} exceeds {limit}")]
    OutOfRange { name: &'static str, value: f64, limit: f64 },
    #[error("all gamma coefficients are zero")]
    ZeroGammas,
    #[error("gamma constraint fails: |g1*g4 + g2*g3| = {residual_first:e}, |g1*g2 + g3*g4| = {residual_second:e}")]
    InvalidGammaConstraint { residual_first: f64, residual_second: f64 },
    #[error("outcome bounds differ: {c_alice} vs {c_bob}")]
    BoundMismatch { c_alice: f64, c_bob: f64 },
    #[error("outcome bound must be 1 for Bell's correlation restriction, got {bound}")]
    BoundNotUnit { bound: f64 },
    #[error("bound must be positive, got {bound}")]
    NonpositiveBound { bound: f64 },
    #[error("unknown property {name:?}")]
    UnknownProperty { name: String },
    #[error("invalid distribution: probabilities sum to {sum}")]
    InvalidDistribution { sum: f64 },
    #[error("model invalid: {reason}")]
    InvalidModel { reason: String },
    #[error("state has wrong dimension {dim} for this sweep (need a two-qubit state)")]
    WrongDimension { dim: usize },
    #[error("trace has residual imaginary part {imag:e}")]
    ImaginaryTrace { imag: f64 },
    #[error("invalid sweep config: {reason}")]
    InvalidConfig { reason: String },
    #[error("json: {0}")]
    Json(String),
}

impl Error {
    /// Stable machine-readable variant name, used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotHermitian { .. } => "NotHermitian",
            Error::TraceNotOne { .. } => "TraceNotOne",
            Error::NotPsd { .. } => "NotPsd",
            Error::DimMismatch { .. } => "DimMismatch",
            Error::NotPsdEffect { .. } => "NotPsdEffect",
            Error::Incomplete { .. } => "Incomplete",
            Error::CountMismatch { .. } => "CountMismatch",
            Error::InvalidOutcomes { .. } => "InvalidOutcomes",
            Error::UnknownOutcome { .. } => "UnknownOutcome",
            Error::InvalidRepresentation { .. } => "InvalidRepresentation",
            Error::IncompatibleReps { .. } => "IncompatibleReps",
            Error::DifferentStates { .. } => "DifferentStates",
            Error::SymmetrizedRepUnsupported => "SymmetrizedRepUnsupported",
            Error::NotBipartiteSquare { .. } => "NotBipartiteSquare",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::ZeroGammas => "ZeroGammas",
            Error::InvalidGammaConstraint { .. } => "InvalidGammaConstraint",
            Error::BoundMismatch { .. } => "BoundMismatch",
            Error::BoundNotUnit { .. } => "BoundNotUnit",
            Error::NonpositiveBound { .. } => "NonpositiveBound",
            Error::UnknownProperty { .. } => "UnknownProperty",
            Error::InvalidDistribution { .. } => "InvalidDistribution",
            Error::InvalidModel { .. } => "InvalidModel",
            Error::WrongDimension { .. } => "WrongDimension",
            Error::ImaginaryTrace { .. } => "ImaginaryTrace",
            Error::InvalidConfig { .. } => "InvalidConfig",
            Error::Json(_) => "Json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
