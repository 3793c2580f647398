//! Finite-bath normal-mode oracle.
//!
//! The microscopic model is one oscillator coupled to `N` bath oscillators
//! through the completed-square interaction
//! `Σⱼ mⱼωⱼ²/2 · (xⱼ − Cⱼq/(mⱼωⱼ²))²`. Its Gibbs state is Gaussian and is
//! computed exactly from the normal modes of the `(N+1)`-dimensional
//! quadratic form, independently of the closed-form sums in
//! [`crate::oscillator`].

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::oscillator::OscillatorParams;
use crate::specfun::{coth, entropy_kernel, ln_two_sinh_half};

/// One bath oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathMode {
    pub omega: f64,
    pub mass: f64,
    pub coupling: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BathDiscretization {
    pub modes: Vec<BathMode>,
    pub omega_max: f64,
    /// Grid spacing; mode `j` represents the cell `(ωⱼ − Δω/2, ωⱼ + Δω/2]`.
    pub d_omega: f64,
}

/// Truncation frequency for `n` modes: `ω_D·√n / 4` (so `10 ω_D` at
/// `n = 1600`). Growing the cutoff with `n` shrinks the truncation and
/// spacing errors together.
pub fn truncation_frequency(p: &OscillatorParams, n: usize) -> f64 {
    p.omega_d * (n as f64).sqrt() / 4.0
}

/// Midpoint discretization of `J(ν)` on `(0, ω_max]` with unit bath masses
/// and `Cⱼ² = (2/π)·mⱼωⱼ·J(ωⱼ)·Δω`.
pub fn discretize_bath(p: &OscillatorParams, n: usize) -> Result<BathDiscretization> {
    p.validate()?;
    if n < 2 {
        return Err(Error::InvalidParams(format!(
            "bath needs at least 2 modes, got {n}"
        )));
    }
    let omega_max = truncation_frequency(p, n);
    let d_omega = omega_max / n as f64;
    let modes = (0..n)
        .map(|j| {
            let omega = (j as f64 + 0.5) * d_omega;
            let mass = 1.0;
            let c2 = 2.0 / std::f64::consts::PI * mass * omega * p.spectral_density(omega) * d_omega;
            BathMode {
                omega,
                mass,
                coupling: c2.sqrt(),
            }
        })
        .collect();
    Ok(BathDiscretization {
        modes,
        omega_max,
        d_omega,
    })
}

impl BathDiscretization {
    /// `Σ (π/2) Cⱼ²/(mⱼωⱼ)` over modes with `lo < ωⱼ ≤ hi`, the discrete
    /// counterpart of `∫ J(ν) dν` over that range.
    pub fn spectral_weight(&self, lo: f64, hi: f64) -> f64 {
        self.modes
            .iter()
            .filter(|m| m.omega > lo && m.omega <= hi)
            .map(|m| std::f64::consts::FRAC_PI_2 * m.coupling * m.coupling / (m.mass * m.omega))
            .sum()
    }

    /// Potential renormalization `Σ Cⱼ²/(mⱼωⱼ²)`.
    pub fn counter_term(&self) -> f64 {
        self.modes
            .iter()
            .map(|m| m.coupling * m.coupling / (m.mass * m.omega * m.omega))
            .sum()
    }
}

/// Mass and stiffness matrices of the full quadratic Hamiltonian
/// (index 0 is the system coordinate).
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticModel {
    pub masses: Vec<f64>,
    pub stiffness: DMatrix<f64>,
}

impl QuadraticModel {
    pub fn new(p: &OscillatorParams, bath: &BathDiscretization) -> Self {
        Self::build(p, bath, true)
    }

    /// The same model with the counter-term dropped from `K₀₀`, i.e. a bare
    /// bilinear coupling `−q Σ Cⱼxⱼ`. Loses stability at strong coupling.
    pub fn without_counter_term(p: &OscillatorParams, bath: &BathDiscretization) -> Self {
        Self::build(p, bath, false)
    }

    fn build(p: &OscillatorParams, bath: &BathDiscretization, counter_term: bool) -> Self {
        let n = bath.modes.len() + 1;
        let mut k = DMatrix::zeros(n, n);
        let mut masses = Vec::with_capacity(n);
        masses.push(p.mass);
        k[(0, 0)] = p.mass * p.omega * p.omega
            + if counter_term { bath.counter_term() } else { 0.0 };
        for (j, m) in bath.modes.iter().enumerate() {
            masses.push(m.mass);
            k[(0, j + 1)] = -m.coupling;
            k[(j + 1, 0)] = -m.coupling;
            k[(j + 1, j + 1)] = m.mass * m.omega * m.omega;
        }
        Self {
            masses,
            stiffness: k,
        }
    }

    /// Normal-mode frequencies and the squared system component of each
    /// mass-weighted eigenvector.
    pub fn normal_modes(&self) -> Result<NormalModes> {
        let inv_sqrt: Vec<f64> = self.masses.iter().map(|m| m.sqrt().recip()).collect();
        let n = self.masses.len();
        let a = DMatrix::from_fn(n, n, |i, j| self.stiffness[(i, j)] * inv_sqrt[i] * inv_sqrt[j]);
        let eig = SymmetricEigen::try_new(a, f64::EPSILON, 0)
            .ok_or_else(|| Error::Eigen("symmetric eigensolver did not converge".into()))?;

        let mut frequencies = Vec::with_capacity(n);
        let mut system_weights = Vec::with_capacity(n);
        for (k, &ev) in eig.eigenvalues.iter().enumerate() {
            if !(ev > 0.0) {
                return Err(Error::Eigen(format!(
                    "stiffness is not positive definite (eigenvalue {ev:e})"
                )));
            }
            frequencies.push(ev.sqrt());
            let u = eig.eigenvectors[(0, k)];
            system_weights.push(u * u);
        }
        Ok(NormalModes {
            frequencies,
            system_weights,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NormalModes {
    pub frequencies: Vec<f64>,
    pub system_weights: Vec<f64>,
}

/// Reduced Gaussian state of the system coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleState {
    pub q2: f64,
    pub p2: f64,
    pub v: f64,
    pub entropy: f64,
}

/// A diagonalized finite-bath model, reusable across temperatures.
#[derive(Debug, Clone)]
pub struct BathOracle {
    params: OscillatorParams,
    bath: BathDiscretization,
    modes: NormalModes,
}

impl BathOracle {
    pub fn new(p: &OscillatorParams, n: usize) -> Result<Self> {
        let bath = discretize_bath(p, n)?;
        let modes = QuadraticModel::new(p, &bath).normal_modes()?;
        Ok(Self {
            params: *p,
            bath,
            modes,
        })
    }

    pub fn bath(&self) -> &BathDiscretization {
        &self.bath
    }

    pub fn normal_modes(&self) -> &NormalModes {
        &self.modes
    }

    pub fn reduced_state(&self, temperature: f64) -> Result<OracleState> {
        let p = &self.params;
        if !(temperature >= 0.0 && temperature.is_finite()) {
            return Err(Error::Temperature {
                got: temperature,
                expected: "non-negative",
            });
        }
        let beta = p.beta(temperature);
        let mut q2 = 0.0;
        let mut p2 = 0.0;
        for (&w, &u2) in self.modes.frequencies.iter().zip(&self.modes.system_weights) {
            let c = if temperature == 0.0 {
                1.0
            } else {
                coth(0.5 * beta * p.hbar * w)
            };
            q2 += u2 * p.hbar / (2.0 * w) * c;
            p2 += u2 * p.hbar * w / 2.0 * c;
        }
        q2 /= p.mass;
        p2 *= p.mass;
        let v = (q2 * p2).sqrt() / p.hbar;
        Ok(OracleState {
            q2,
            p2,
            v,
            entropy: entropy_kernel(v)?,
        })
    }

    /// System free energy `F_total − F_bath` from normal-mode partition
    /// functions.
    pub fn free_energy(&self, temperature: f64) -> Result<f64> {
        let p = &self.params;
        if !(temperature > 0.0 && temperature.is_finite()) {
            return Err(Error::Temperature {
                got: temperature,
                expected: "positive",
            });
        }
        let beta = p.beta(temperature);
        let kt = p.kb * temperature;
        let f = |w: f64| kt * ln_two_sinh_half(beta * p.hbar * w);
        let total: f64 = self.modes.frequencies.iter().map(|&w| f(w)).sum();
        let bath: f64 = self.bath.modes.iter().map(|m| f(m.omega)).sum();
        Ok(total - bath)
    }
}

pub fn reduced_state(p: &OscillatorParams, temperature: f64, n: usize) -> Result<OracleState> {
    BathOracle::new(p, n)?.reduced_state(temperature)
}

pub fn oracle_free_energy(p: &OscillatorParams, temperature: f64, n: usize) -> Result<f64> {
    BathOracle::new(p, n)?.free_energy(temperature)
}
