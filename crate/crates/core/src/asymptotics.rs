//! Leading-order low-temperature, strong-coupling expansions.
//!
//! Valid for `a = βħω/2 ≫ 1`, `bᵢ = η/(Mᵢω) ≫ 1` and `cᵢ = Mᵢω_D/η ≫ 1`.
//! Results outside the gate are still returned, with `in_regime = false`.
//! The expansions neglect corrections of relative order `ln b / b` and
//! `1/ln c`, so at moderate `b` and `c` they carry a few-percent bias that
//! does not shrink as `T → 0`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::oscillator::OscillatorParams;

pub const MIN_A: f64 = 5.0;
pub const MIN_B: f64 = 10.0;
pub const MIN_C: f64 = 10.0;

/// Dimensionless parameters of the expansions for a mass change `M₀ → M₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionlessParams {
    /// `βħω/2`; infinite at `T = 0`.
    pub a: f64,
    pub b0: f64,
    pub b1: f64,
    pub c0: f64,
    pub c1: f64,
}

impl DimensionlessParams {
    /// From the initial parameters `p` (mass `M₀`), the final mass and `T ≥ 0`.
    pub fn new(p: &OscillatorParams, m1: f64, temperature: f64) -> Result<Self> {
        p.with_mass(m1)?;
        if !(temperature >= 0.0) {
            return Err(Error::Temperature {
                got: temperature,
                expected: "non-negative",
            });
        }
        let dp = Self {
            a: p.hbar * p.omega * p.beta(temperature) / 2.0,
            b0: p.eta / (p.mass * p.omega),
            b1: p.eta / (m1 * p.omega),
            c0: p.mass * p.omega_d / p.eta,
            c1: m1 * p.omega_d / p.eta,
        };
        for (name, x) in [("b0", dp.b0), ("b1", dp.b1), ("c0", dp.c0), ("c1", dp.c1)] {
            if !(x > 1.0 && x.is_finite()) {
                return Err(Error::Domain(format!(
                    "low-temperature expansion needs {name} > 1, got {x}"
                )));
            }
        }
        Ok(dp)
    }

    pub fn in_regime(&self) -> bool {
        self.a >= MIN_A
            && self.b0.min(self.b1) >= MIN_B
            && self.c0.min(self.c1) >= MIN_C
    }

    /// Human-readable reasons the point falls outside the gate.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.a < MIN_A {
            w.push(format!("a = {:.3} < {MIN_A}", self.a));
        }
        if self.b0.min(self.b1) < MIN_B {
            w.push(format!("b = {:.3} < {MIN_B}", self.b0.min(self.b1)));
        }
        if self.c0.min(self.c1) < MIN_C {
            w.push(format!("c = {:.3} < {MIN_C}", self.c0.min(self.c1)));
        }
        w
    }

    /// `π²/(6a²)`, zero at `T = 0`.
    fn thermal(&self) -> f64 {
        PI * PI / (6.0 * self.a * self.a)
    }
}

/// Variances from the lowest-order expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowTVariances {
    pub q2: f64,
    pub p2: f64,
    pub in_regime: bool,
}

pub fn low_t_variances(p: &OscillatorParams, temperature: f64) -> Result<LowTVariances> {
    let dp = DimensionlessParams::new(p, p.mass, temperature)?;
    let (m, w, eta, hbar) = (p.mass, p.omega, p.eta, p.hbar);
    let kt = p.kb * temperature;
    let q2 = 2.0 * hbar / (PI * eta) * dp.b0.ln()
        + PI * eta * kt * kt / (3.0 * hbar * m * m * w.powi(4));
    let p2 = hbar * eta / PI * dp.c0.ln();
    Ok(LowTVariances {
        q2,
        p2,
        in_regime: dp.in_regime(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowTMass {
    pub q: f64,
    pub ds: f64,
    pub delta: f64,
    pub in_regime: bool,
}

/// Heat, entropy change and `Q − kT·ΔS` of the mass variation.
pub fn low_t_mass_process(dp: &DimensionlessParams, p: &OscillatorParams) -> LowTMass {
    let hw = p.hbar * p.omega;
    let db = dp.b0 - dp.b1;
    let q = db * hw / (2.0 * PI) * (1.0 - dp.thermal());

    let log_ratio = (dp.c1.ln() / dp.c0.ln()).ln() - (dp.b0.ln() / dp.b1.ln()).ln();
    let squeeze = dp.b0 * dp.b0 / dp.b0.ln() - dp.b1 * dp.b1 / dp.b1.ln();
    let ds = 0.5 * (log_ratio - PI * PI / (24.0 * dp.a * dp.a) * squeeze);

    // Written without dividing by b0 − b1 so that b0 = b1 gives exactly 0.
    let delta = db * hw / (2.0 * PI) * (1.0 - dp.thermal()) - hw / (4.0 * dp.a) * log_ratio;
    LowTMass {
        q,
        ds,
        delta,
        in_regime: dp.in_regime(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowTCoupling {
    pub q: f64,
    pub ds: f64,
    pub in_regime: bool,
}

/// Heat and entropy change of coupling the oscillator (mass `M₀`) to the bath.
pub fn low_t_coupling_process(dp: &DimensionlessParams, p: &OscillatorParams) -> LowTCoupling {
    let hw = p.hbar * p.omega;
    let q = -hw * dp.b0 / (2.0 * PI) * (1.0 - dp.thermal());
    let ds = 1.0
        + 0.5
            * ((2.0 / (PI * PI)).ln()
                + dp.c0.ln().ln()
                + dp.b0.ln().ln()
                + PI * PI * dp.b0 * dp.b0 / (24.0 * dp.a * dp.a * dp.b0.ln()));
    LowTCoupling {
        q,
        ds,
        in_regime: dp.in_regime(),
    }
}

/// `Q − kT·ΔS` of coupling followed by the mass variation.
pub fn low_t_combined_delta(
    dp: &DimensionlessParams,
    p: &OscillatorParams,
    temperature: f64,
) -> f64 {
    let hw = p.hbar * p.omega;
    let logs = (2.0 / (PI * PI)).ln() + dp.c1.ln().ln() + dp.b1.ln().ln();
    // hw·b1/2π · π/(2a b1) = hw/(4a), kept finite at a = ∞
    -p.kb * temperature - hw * dp.b1 / (2.0 * PI) * (1.0 - dp.thermal()) - hw / (4.0 * dp.a) * logs
}

/// Entropy term of order `1/a²` in the coupling-plus-mass sum that the
/// combined expression drops: `kT·π²b₀²/(48a² ln b₀)`. With it,
/// `low_t_mass.delta + (Q − kT ΔS)_coupling = low_t_combined_delta − this`.
pub fn dropped_entropy_term(dp: &DimensionlessParams, p: &OscillatorParams, temperature: f64) -> f64 {
    p.kb * temperature * PI * PI * dp.b0 * dp.b0 / (48.0 * dp.a * dp.a * dp.b0.ln())
}
