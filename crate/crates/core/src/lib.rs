//! Thermodynamics of a quantum harmonic oscillator strongly coupled to an
//! Ohmic bath with Drude cutoff.
//!
//! The crate computes the exact non-Gibbsian stationary state of the
//! oscillator (variances, entropy, energy, free energy and the mean-force
//! shift), the heat, work and entropy exchanged in quasistatic mass
//! variations and in the initial coupling to the bath, closed-form
//! low-temperature expansions of those quantities, and an independent
//! finite-bath normal-mode oracle.
//!
//! ```
//! use dampedosc::{build_state, OscillatorParams};
//!
//! let p = OscillatorParams::reference();
//! let s = build_state(&p, 0.05).unwrap();
//! assert!(s.v > 0.5 && s.mean_force_shift > 0.0);
//! ```

pub mod asymptotics;
pub mod bath;
mod cubic;
pub mod error;
pub mod oscillator;
pub mod processes;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
pub use oscillator::{
    build_state, characteristic_frequencies, free_energy, mean_force_effective_oscillator,
    stationary_variances, uncoupled_state, variance_mass_derivatives, CharacteristicFrequencies,
    EffectiveOscillator, OscillatorParams, StationaryState,
};
pub use processes::{
    clausius_landauer_check, combined_process, coupling_process, erasure_protocol,
    log_temperature_grid, mass_variation, ClausiusVerdict, ErasureReport, ProcessResult,
};
pub use specfun::ComplexValue;
