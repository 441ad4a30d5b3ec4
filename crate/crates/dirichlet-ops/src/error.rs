//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index 0 is not a valid Dirichlet index (indices start at 1)")]
    ZeroIndex,

    #[error("character horizon covers the first {horizon} primes, but index {index} has prime factor {prime}")]
    HorizonExceeded {
        horizon: usize,
        index: u64,
        prime: u64,
    },

    #[error("exponential of a series with nonzero constant coefficient {value} (must vanish at index 1)")]
    NonzeroConstant { value: String },

    #[error("support overflow: index {index} raised to power {power} exceeds the cutoff {cutoff}")]
    SupportOverflow { index: u64, power: u32, cutoff: u64 },

    #[error("symbol is not validated for this operation (run validate first)")]
    UnvalidatedSymbol,

    #[error("symbol was found invalid: Re phi(it) = {value} at t = {witness}")]
    InvalidSymbol { witness: f64, value: f64 },

    #[error("missing half-plane certificate: operation requires Re phi >= 1/2 + eta on the right half-plane")]
    MissingEtaCertificate,

    #[error("operation requires c0 >= 1, got c0 = {c0}")]
    DilationRequired { c0: u32 },

    #[error("support index {index} is not {prime_limit}-smooth")]
    SmoothnessViolation { index: u64, prime_limit: u64 },

    #[error("kernel parameters at or below the convergence boundary: Re(s) + Re(w) = {exponent} <= {boundary}")]
    KernelDivergent { exponent: f64, boundary: f64 },

    #[error("kernel term budget exhausted after {terms} terms (relative tail {tail_rel})")]
    KernelBudget { terms: usize, tail_rel: f64 },

    #[error("quadrature reached accuracy {achieved} but {requested} was requested")]
    QuadratureAccuracy { requested: f64, achieved: f64 },

    #[error("power iteration did not converge within {iterations} iterations (residual {residual})")]
    PowerIterationStalled { iterations: usize, residual: f64 },

    #[error("winding number {value} is not within {snap} of an integer after full refinement")]
    WindingUnstable { value: f64, snap: f64 },

    #[error("a zero persists on the contour of every perturbed search box near {location}")]
    BoundaryZero { location: String },

    #[error("interval scan stalled while resolving a boundary crossing near t = {t}")]
    ScanStalled { t: f64 },

    #[error("invalid measure density: {0}")]
    InvalidDensity(String),

    #[error("no tail bound available: {0}")]
    TailBoundUnavailable(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unsatisfiable corpus constraints: {0}")]
    UnsatisfiableConstraints(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
