use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the gamma function at z = {0}")]
    Pole(Complex64),

    #[error("non-finite argument: {0}")]
    NonFinite(Complex64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("temperature must be {expected}, got {got}")]
    Temperature { got: f64, expected: &'static str },

    #[error(
        "characteristic frequencies are nearly degenerate (min separation {separation:e}); \
         perturb eta slightly to move off critical damping"
    )]
    DegenerateRoots { separation: f64 },

    #[error("phase-space volume v = {0} violates the Heisenberg bound v >= 1/2")]
    Heisenberg(f64),

    #[error("pure state (v = 1/2) has no finite-temperature effective oscillator")]
    PureState,

    #[error("adaptive quadrature did not converge on [{a}, {b}]")]
    Quadrature { a: f64, b: f64 },

    #[error("eigensolver failure: {0}")]
    Eigen(String),
}

pub type Result<T> = std::result::Result<T, Error>;
