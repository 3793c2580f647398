//! Quasistatic transformations of the damped oscillator and the Clausius
//! and Landauer verdicts built on them.
//!
//! Sign conventions: `q` is heat absorbed by the system, `w` work done on
//! it, so `du = q + w`. The Clausius inequality for a process starting in
//! a thermal state reads `delta = q − kT·ds ≤ 0`.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::oscillator::{
    build_state, uncoupled_state, variance_mass_derivatives, OscillatorParams, StationaryState,
};
use crate::quadrature::{adaptive_simpson, SimpsonConfig};

/// `n` temperatures log-spaced over `[tmin, tmax]`, endpoints exact.
pub fn log_temperature_grid(tmin: f64, tmax: f64, n: usize) -> Result<Vec<f64>> {
    if !(tmin > 0.0 && tmax >= tmin && tmax.is_finite()) || n == 0 || (n == 1 && tmin != tmax) {
        return Err(Error::InvalidParams(format!(
            "bad temperature grid [{tmin}, {tmax}] with {n} points"
        )));
    }
    if n == 1 {
        return Ok(vec![tmin]);
    }
    let (l0, l1) = (tmin.ln(), tmax.ln());
    let step = (l1 - l0) / (n - 1) as f64;
    let mut grid: Vec<f64> = (0..n).map(|i| (l0 + step * i as f64).exp()).collect();
    grid[0] = tmin;
    grid[n - 1] = tmax;
    Ok(grid)
}

/// Heat, work, energy and entropy balance of one quasistatic transformation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProcessResult {
    /// Heat absorbed by the system.
    pub q: f64,
    /// Work done on the system.
    pub w: f64,
    /// Internal-energy change.
    pub du: f64,
    /// Entropy change in nats.
    pub ds: f64,
    /// `q − kT·ds`.
    pub delta: f64,
    /// Mass variation only: heat from `ΔU − ΔF`, i.e. assuming the work is
    /// the free-energy difference. Diagnostic; not expected to equal `q`.
    pub q_alt: Option<f64>,
}

impl ProcessResult {
    pub const ZERO: Self = Self {
        q: 0.0,
        w: 0.0,
        du: 0.0,
        ds: 0.0,
        delta: 0.0,
        q_alt: None,
    };

    fn from_balance(q: f64, du: f64, ds: f64, kt: f64) -> Self {
        Self {
            q,
            w: du - q,
            du,
            ds,
            delta: q - kt * ds,
            q_alt: None,
        }
    }
}

/// Quadrature settings for the heat integral: relative tolerance 1e-9 with
/// an absolute floor of 1e-14·ħω.
pub fn heat_quadrature(p: &OscillatorParams) -> SimpsonConfig {
    SimpsonConfig {
        rel_tol: 1e-9,
        abs_tol: 1e-14 * p.energy_scale(),
        ..SimpsonConfig::default()
    }
}

/// Heat `∫ (∂⟨p²⟩/∂M / 2M + Mω²/2 · ∂⟨q²⟩/∂M) dM` from `p.mass` to `m1`.
pub fn mass_variation_heat(
    p: &OscillatorParams,
    m1: f64,
    temperature: f64,
    config: &SimpsonConfig,
) -> Result<f64> {
    let p1 = p.with_mass(m1)?;
    let integrand = |m: f64| -> Result<f64> {
        let pm = OscillatorParams { mass: m, ..p1 };
        let (dq2, dp2) = variance_mass_derivatives(&pm, temperature)?;
        Ok(dp2 / (2.0 * m) + 0.5 * m * p.omega * p.omega * dq2)
    };
    adaptive_simpson(integrand, p.mass, m1, config)
}

/// Quasistatic mass change `M₀ → M₁` at fixed coupling.
pub fn mass_variation(p0: &OscillatorParams, m1: f64, temperature: f64) -> Result<ProcessResult> {
    let p1 = p0.with_mass(m1)?;
    let s0 = build_state(p0, temperature)?;
    if m1 == p0.mass {
        return Ok(ProcessResult {
            q_alt: Some(0.0),
            ..ProcessResult::ZERO
        });
    }
    let s1 = build_state(&p1, temperature)?;
    let q = mass_variation_heat(p0, m1, temperature, &heat_quadrature(p0))?;
    let du = s1.energy - s0.energy;
    let mut r = ProcessResult::from_balance(
        q,
        du,
        s1.entropy - s0.entropy,
        p0.kb * temperature,
    );
    r.q_alt = Some(du - (s1.free_energy - s0.free_energy));
    Ok(r)
}

/// Quasistatic coupling `0 → η` at fixed mass; the work is the free-energy
/// difference.
pub fn coupling_process(p: &OscillatorParams, temperature: f64) -> Result<ProcessResult> {
    let start = uncoupled_state(p, temperature)?;
    if p.eta == 0.0 {
        return Ok(ProcessResult::ZERO);
    }
    let end = build_state(p, temperature)?;
    Ok(coupling_between(&start, &end, p.kb * temperature))
}

fn coupling_between(start: &StationaryState, end: &StationaryState, kt: f64) -> ProcessResult {
    let du = end.energy - start.energy;
    let w = end.free_energy - start.free_energy;
    ProcessResult::from_balance(du - w, du, end.entropy - start.entropy, kt)
}

/// Coupling at `p0.mass` followed by the mass variation `M₀ → M₁`.
pub fn combined_process(p0: &OscillatorParams, m1: f64, temperature: f64) -> Result<ProcessResult> {
    let c = coupling_process(p0, temperature)?;
    let m = mass_variation(p0, m1, temperature)?;
    let q = c.q + m.q;
    let ds = c.ds + m.ds;
    Ok(ProcessResult {
        q,
        w: c.w + m.w,
        du: c.du + m.du,
        ds,
        delta: q - p0.kb * temperature * ds,
        q_alt: None,
    })
}

/// Outcome of testing `Q ≤ kT·ΔS`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClausiusVerdict {
    pub satisfied: bool,
    /// `kT·ΔS − Q`; non-negative when satisfied.
    pub margin: f64,
    /// `kT ln 2`, reported when the entropy change is the erasure of one bit.
    pub landauer_bound: Option<f64>,
}

/// Entropy changes within this distance of `−ln 2` count as one-bit erasure.
const BIT_TOLERANCE: f64 = 1e-12;

pub fn clausius_landauer_check(q: f64, ds: f64, temperature: f64, kb: f64) -> ClausiusVerdict {
    let kt = kb * temperature;
    let margin = kt * ds - q;
    ClausiusVerdict {
        satisfied: margin >= 0.0,
        margin,
        landauer_bound: ((ds + LN_2).abs() <= BIT_TOLERANCE).then_some(kt * LN_2),
    }
}

/// Abstract one-bit erasure: the memory is first coupled to the reservoir
/// (modelled by the damped oscillator's coupling step), then reset
/// reversibly so that the total entropy change is `−ln 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErasureReport {
    pub coupling: ProcessResult,
    /// Heat absorbed during the reversible reset.
    pub q_reset: f64,
    /// Entropy change of the reset, `−ln 2 − ΔS^(C)`.
    pub ds_reset: f64,
    /// Total heat absorbed by the memory.
    pub q_total: f64,
    /// Heat dissipated into the reservoir, `−q_total`.
    pub q_dissipated: f64,
    pub verdict: ClausiusVerdict,
}

pub fn erasure_protocol(p: &OscillatorParams, temperature: f64) -> Result<ErasureReport> {
    let coupling = coupling_process(p, temperature)?;
    let kt = p.kb * temperature;
    let ds_reset = -LN_2 - coupling.ds;
    let q_reset = kt * ds_reset;
    let q_total = coupling.q + q_reset;
    let ds_total = coupling.ds + ds_reset;
    Ok(ErasureReport {
        coupling,
        q_reset,
        ds_reset,
        q_total,
        q_dissipated: -q_total,
        verdict: clausius_landauer_check(q_total, ds_total, temperature, p.kb),
    })
}
