//! Exact stationary state of the damped oscillator.
//!
//! The bath enters only through the Drude-regularized Ohmic spectral density
//! `J(ν) = η ν ω_D² / (ν² + ω_D²)`. The reduced state is Gaussian; its
//! variances and the system free energy are closed sums over the three
//! characteristic frequencies `λᵢ`, the roots of
//!
//! ```text
//! λ³ − ω_D λ² + (ω² + η ω_D / M) λ − ω² ω_D = 0.
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::cubic::monic_cubic_roots;
use crate::error::{Error, Result};
use crate::specfun::{
    arccoth, coth, digamma, entropy_kernel, ln_two_sinh_half, log_gamma, trigamma,
    ComplexValue, HEISENBERG_SLACK, TWO_PI,
};

/// Relative separation below which two characteristic frequencies count as
/// degenerate (critical damping).
pub const DEGENERACY_TOLERANCE: f64 = 1e-8;

/// Largest tolerated imaginary residue of the variance and free-energy sums,
/// relative to their real parts.
pub const IMAGINARY_RESIDUE_TOLERANCE: f64 = 1e-10;

/// Physical parameters of the oscillator and its bath, plus the unit
/// constants ħ and k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorParams {
    /// Oscillator mass `M`.
    pub mass: f64,
    /// Bare angular frequency `ω`.
    pub omega: f64,
    /// Damping coefficient `η` (zero means uncoupled).
    pub eta: f64,
    /// Drude cutoff `ω_D`.
    pub omega_d: f64,
    pub hbar: f64,
    pub kb: f64,
}

impl OscillatorParams {
    /// Parameters in units with ħ = k = 1.
    pub fn new(mass: f64, omega: f64, eta: f64, omega_d: f64) -> Result<Self> {
        let p = Self {
            mass,
            omega,
            eta,
            omega_d,
            hbar: 1.0,
            kb: 1.0,
        };
        p.validate()?;
        Ok(p)
    }

    /// The parameter set of the reference figures: ω = 1.2, M₀ = 1.1,
    /// η = 40ω, ω_D = 25η, ħ = k = 1.
    pub fn reference() -> Self {
        let omega = 1.2;
        let eta = 40.0 * omega;
        Self {
            mass: 1.1,
            omega,
            eta,
            omega_d: 25.0 * eta,
            hbar: 1.0,
            kb: 1.0,
        }
    }

    /// Reference final mass for the mass-variation process.
    pub const REFERENCE_FINAL_MASS: f64 = 1.11;

    /// Moderate-coupling parameters (M = ω = η = 1, ω_D = 10) where the
    /// finite-bath oracle converges at desk-scale mode counts.
    pub fn moderate() -> Self {
        Self {
            mass: 1.0,
            omega: 1.0,
            eta: 1.0,
            omega_d: 10.0,
            hbar: 1.0,
            kb: 1.0,
        }
    }

    pub fn with_units(mut self, hbar: f64, kb: f64) -> Result<Self> {
        self.hbar = hbar;
        self.kb = kb;
        self.validate()?;
        Ok(self)
    }

    pub fn with_mass(mut self, mass: f64) -> Result<Self> {
        self.mass = mass;
        self.validate()?;
        Ok(self)
    }

    pub fn with_eta(mut self, eta: f64) -> Result<Self> {
        self.eta = eta;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("mass", self.mass),
            ("omega", self.omega),
            ("omega_d", self.omega_d),
            ("hbar", self.hbar),
            ("kb", self.kb),
        ];
        for (name, value) in positive {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::InvalidParams(format!(
                    "{name} must be positive and finite, got {value}"
                )));
            }
        }
        if !(self.eta.is_finite() && self.eta >= 0.0) {
            return Err(Error::InvalidParams(format!(
                "eta must be non-negative and finite, got {}",
                self.eta
            )));
        }
        if self.omega_d <= self.omega {
            log::warn!(
                "Drude cutoff omega_d = {} does not exceed omega = {}",
                self.omega_d,
                self.omega
            );
        }
        Ok(())
    }

    /// Inverse temperature `1 / kT`; infinite at `T = 0`.
    pub fn beta(&self, temperature: f64) -> f64 {
        1.0 / (self.kb * temperature)
    }

    /// `ħω`, the natural energy scale.
    pub fn energy_scale(&self) -> f64 {
        self.hbar * self.omega
    }

    /// Drude-regularized Ohmic spectral density `J(ν)`.
    pub fn spectral_density(&self, nu: f64) -> f64 {
        self.eta * nu * self.omega_d * self.omega_d / (nu * nu + self.omega_d * self.omega_d)
    }
}

/// The three characteristic frequencies and their mass derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CharacteristicFrequencies {
    pub lambda: [ComplexValue; 3],
    pub dlambda_dm: [ComplexValue; 3],
}

impl CharacteristicFrequencies {
    /// `(λᵢ₊₁ − λᵢ)(λᵢ₋₁ − λᵢ)` with cyclic indices.
    pub fn denominator(&self, i: usize) -> ComplexValue {
        let l = &self.lambda;
        (l[(i + 1) % 3] - l[i]) * (l[(i + 2) % 3] - l[i])
    }

    fn denominator_dm(&self, i: usize) -> ComplexValue {
        let (l, d) = (&self.lambda, &self.dlambda_dm);
        let (next, prev) = ((i + 1) % 3, (i + 2) % 3);
        (d[next] - d[i]) * (l[prev] - l[i]) + (l[next] - l[i]) * (d[prev] - d[i])
    }

    /// Smallest pairwise distance between roots.
    pub fn min_separation(&self) -> f64 {
        let l = &self.lambda;
        (l[0] - l[1])
            .norm()
            .min((l[1] - l[2]).norm())
            .min((l[0] - l[2]).norm())
    }
}

fn cubic_coefficients(p: &OscillatorParams) -> (f64, f64, f64) {
    let w2 = p.omega * p.omega;
    (-p.omega_d, w2 + p.eta * p.omega_d / p.mass, -w2 * p.omega_d)
}

/// Roots of the characteristic cubic and `dλᵢ/dM` by implicit
/// differentiation.
pub fn characteristic_frequencies(p: &OscillatorParams) -> Result<CharacteristicFrequencies> {
    p.validate()?;
    let (c2, c1, c0) = cubic_coefficients(p);
    let lambda = monic_cubic_roots(c2, c1, c0);

    let freqs = CharacteristicFrequencies {
        lambda,
        dlambda_dm: [Complex64::new(0.0, 0.0); 3],
    };
    let separation = freqs.min_separation();
    if separation < DEGENERACY_TOLERANCE * p.omega_d {
        return Err(Error::DegenerateRoots { separation });
    }

    let m = p.mass;
    let dlambda_dm = lambda.map(|l| {
        let dp_dlambda = (3.0 * l + 2.0 * c2) * l + c1;
        l * (p.eta * p.omega_d / (m * m)) / dp_dlambda
    });
    Ok(CharacteristicFrequencies { lambda, dlambda_dm })
}

/// Divided-difference sums before the imaginary parts are dropped:
/// `Σ (λᵢ − ω_D) kᵢ / Dᵢ` and `Σ λᵢ kᵢ / Dᵢ`.
fn kernel_sums(
    p: &OscillatorParams,
    freqs: &CharacteristicFrequencies,
    kernel: &[ComplexValue; 3],
) -> (ComplexValue, ComplexValue) {
    let mut q_sum = Complex64::new(0.0, 0.0);
    let mut p_sum = Complex64::new(0.0, 0.0);
    for i in 0..3 {
        let l = freqs.lambda[i];
        let d = freqs.denominator(i);
        q_sum += (l - p.omega_d) * kernel[i] / d;
        p_sum += l * kernel[i] / d;
    }
    (q_sum, p_sum)
}

/// Variances `(⟨q²⟩, ⟨p²⟩)` as complex numbers, with an arbitrary kernel in
/// place of `ψ(1 + βħλ/2π)` and the classical term `kT/(Mω²)` supplied by the
/// caller. The physical result is real; the imaginary parts are exposed so
/// callers can measure residues.
pub fn variances_with_kernel(
    p: &OscillatorParams,
    freqs: &CharacteristicFrequencies,
    kernel: &[ComplexValue; 3],
    classical_term: f64,
) -> (ComplexValue, ComplexValue) {
    let (q_sum, p_sum) = kernel_sums(p, freqs, kernel);
    let m = p.mass;
    let q2 = q_sum * (p.hbar / (m * PI)) + classical_term;
    let p2 = p_sum * (p.hbar * p.eta * p.omega_d / PI) + q2 * (m * m * p.omega * p.omega);
    (q2, p2)
}

fn check_temperature(temperature: f64, allow_zero: bool) -> Result<()> {
    let ok = temperature.is_finite()
        && if allow_zero {
            temperature >= 0.0
        } else {
            temperature > 0.0
        };
    if ok {
        Ok(())
    } else {
        Err(Error::Temperature {
            got: temperature,
            expected: if allow_zero { "non-negative" } else { "positive" },
        })
    }
}

/// The kernel `ψ(1 + βħλᵢ/2π)`, or its T = 0 replacement `ln λᵢ`. The
/// dropped constant `ln(βħ/2π)` multiplies divided differences of linear
/// polynomials and so cancels exactly.
fn digamma_kernel(
    p: &OscillatorParams,
    freqs: &CharacteristicFrequencies,
    temperature: f64,
) -> Result<[ComplexValue; 3]> {
    let mut k = [Complex64::new(0.0, 0.0); 3];
    for (slot, &l) in k.iter_mut().zip(freqs.lambda.iter()) {
        *slot = if temperature == 0.0 {
            l.ln()
        } else {
            let x = p.beta(temperature) * p.hbar / TWO_PI;
            digamma(1.0 + l * x)?
        };
    }
    Ok(k)
}

fn classical_term(p: &OscillatorParams, temperature: f64) -> f64 {
    p.kb * temperature / (p.mass * p.omega * p.omega)
}

fn real_part(z: ComplexValue, what: &str) -> Result<f64> {
    if z.im.abs() > IMAGINARY_RESIDUE_TOLERANCE * z.re.abs().max(f64::MIN_POSITIVE) {
        return Err(Error::Domain(format!(
            "{what} has non-negligible imaginary part {z}"
        )));
    }
    Ok(z.re)
}

/// Stationary variances `(⟨q²⟩, ⟨p²⟩)` at temperature `T ≥ 0`.
pub fn stationary_variances(p: &OscillatorParams, temperature: f64) -> Result<(f64, f64)> {
    check_temperature(temperature, true)?;
    let freqs = characteristic_frequencies(p)?;
    variances_from(p, &freqs, temperature)
}

fn variances_from(
    p: &OscillatorParams,
    freqs: &CharacteristicFrequencies,
    temperature: f64,
) -> Result<(f64, f64)> {
    let kernel = digamma_kernel(p, freqs, temperature)?;
    let (q2, p2) = variances_with_kernel(p, freqs, &kernel, classical_term(p, temperature));
    let (q2, p2) = (real_part(q2, "<q^2>")?, real_part(p2, "<p^2>")?);
    if !(q2 > 0.0 && p2 > 0.0) {
        return Err(Error::Domain(format!(
            "non-positive variances q2 = {q2}, p2 = {p2}"
        )));
    }
    Ok((q2, p2))
}

/// Free energy of the damped oscillator (system free energy relative to the
/// free bath), from
/// `βF = ln Γ(βħω_D/2π) − Σᵢ ln Γ(βħλᵢ/2π) − ln(βħω/4π²)`.
pub fn free_energy(p: &OscillatorParams, temperature: f64) -> Result<f64> {
    check_temperature(temperature, false)?;
    let freqs = characteristic_frequencies(p)?;
    free_energy_from(p, &freqs, temperature)
}

fn free_energy_from(
    p: &OscillatorParams,
    freqs: &CharacteristicFrequencies,
    temperature: f64,
) -> Result<f64> {
    let beta = p.beta(temperature);
    let x = beta * p.hbar / TWO_PI;
    let mut beta_f = log_gamma(Complex64::new(x * p.omega_d, 0.0))?;
    for &l in &freqs.lambda {
        beta_f -= log_gamma(l * x)?;
    }
    beta_f -= (beta * p.hbar * p.omega / (4.0 * PI * PI)).ln();
    Ok(real_part(beta_f, "beta F")? / beta)
}

/// Everything known about the stationary state at one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryState {
    pub temperature: f64,
    /// `⟨q²⟩`
    pub q2: f64,
    /// `⟨p²⟩`
    pub p2: f64,
    /// Phase-space volume `√(⟨q²⟩⟨p²⟩)/ħ`.
    pub v: f64,
    /// Von Neumann entropy in nats.
    pub entropy: f64,
    /// Internal energy `⟨H_S⟩`.
    pub energy: f64,
    pub free_energy: f64,
    /// Mean-force shift `⟨H*_S − H_S⟩`.
    pub mean_force_shift: f64,
}

impl StationaryState {
    /// Assemble a state from its variances and free energy. The mean-force
    /// shift follows from `S = β(U − F + ⟨ΔH_S⟩)`.
    pub fn from_parts(
        p: &OscillatorParams,
        temperature: f64,
        q2: f64,
        p2: f64,
        free_energy: f64,
    ) -> Result<Self> {
        let v = (q2 * p2).sqrt() / p.hbar;
        if !(v >= 0.5 - HEISENBERG_SLACK) {
            return Err(Error::Heisenberg(v));
        }
        let entropy = entropy_kernel(v)?;
        let energy = p2 / (2.0 * p.mass) + 0.5 * p.mass * p.omega * p.omega * q2;
        let mean_force_shift = p.kb * temperature * entropy - energy + free_energy;
        Ok(Self {
            temperature,
            q2,
            p2,
            v,
            entropy,
            energy,
            free_energy,
            mean_force_shift,
        })
    }
}

/// Full stationary state at `T > 0`. At `η = 0` this is the closed-form
/// thermal state.
pub fn build_state(p: &OscillatorParams, temperature: f64) -> Result<StationaryState> {
    check_temperature(temperature, false)?;
    if p.eta == 0.0 {
        return uncoupled_state(p, temperature);
    }
    let freqs = characteristic_frequencies(p)?;
    let (q2, p2) = variances_from(p, &freqs, temperature)?;
    let f = free_energy_from(p, &freqs, temperature)?;
    StationaryState::from_parts(p, temperature, q2, p2, f)
}

/// Closed-form thermal state of the isolated oscillator (η ignored).
pub fn uncoupled_state(p: &OscillatorParams, temperature: f64) -> Result<StationaryState> {
    check_temperature(temperature, false)?;
    let x = p.beta(temperature) * p.hbar * p.omega;
    let c = coth(0.5 * x);
    let q2 = p.hbar / (2.0 * p.mass * p.omega) * c;
    let p2 = p.hbar * p.mass * p.omega / 2.0 * c;
    let v = 0.5 * c;
    let entropy = entropy_kernel(v)?;
    let energy = 0.5 * p.hbar * p.omega * c;
    let free_energy = p.kb * temperature * ln_two_sinh_half(x);
    Ok(StationaryState {
        temperature,
        q2,
        p2,
        v,
        entropy,
        energy,
        free_energy,
        // thermal by construction
        mean_force_shift: 0.0,
    })
}

/// Quadratic Hamiltonian of mean force: a thermal oscillator with mass `M*`
/// and frequency `ω*` whose Gibbs state equals the reduced state, plus the
/// constant `offset` that makes its partition function reproduce `F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveOscillator {
    pub mass: f64,
    pub omega: f64,
    pub offset: f64,
}

impl EffectiveOscillator {
    /// `⟨H*_S⟩` in the reduced state.
    pub fn mean_energy(&self, state: &StationaryState) -> f64 {
        state.p2 / (2.0 * self.mass)
            + 0.5 * self.mass * self.omega * self.omega * state.q2
            + self.offset
    }
}

pub fn mean_force_effective_oscillator(
    s: &StationaryState,
    p: &OscillatorParams,
) -> Result<EffectiveOscillator> {
    if !(s.v > 0.5) {
        return Err(Error::PureState);
    }
    let kt = p.kb * s.temperature;
    let omega = 2.0 * kt / p.hbar * arccoth(2.0 * s.v);
    if !(omega.is_finite() && omega > 0.0) {
        return Err(Error::PureState);
    }
    let mass = (s.p2 / s.q2).sqrt() / omega;
    let offset = s.free_energy - kt * ln_two_sinh_half(p.hbar * omega / kt);
    Ok(EffectiveOscillator {
        mass,
        omega,
        offset,
    })
}

/// Analytic `(∂⟨q²⟩/∂M, ∂⟨p²⟩/∂M)` at fixed η, ω_D and T > 0.
pub fn variance_mass_derivatives(p: &OscillatorParams, temperature: f64) -> Result<(f64, f64)> {
    check_temperature(temperature, false)?;
    let freqs = characteristic_frequencies(p)?;
    let (q2, _) = variances_from(p, &freqs, temperature)?;

    let m = p.mass;
    let x = p.beta(temperature) * p.hbar / TWO_PI;
    let mut q_sum = Complex64::new(0.0, 0.0);
    let mut dq_sum = Complex64::new(0.0, 0.0);
    let mut dp_sum = Complex64::new(0.0, 0.0);
    for i in 0..3 {
        let l = freqs.lambda[i];
        let dl = freqs.dlambda_dm[i];
        let d = freqs.denominator(i);
        let dd = freqs.denominator_dm(i);
        let psi = digamma(1.0 + l * x)?;
        let dpsi = trigamma(1.0 + l * x)? * x * dl;

        let gq = (l - p.omega_d) * psi / d;
        let gp = l * psi / d;
        q_sum += gq;
        dq_sum += (dl * psi + (l - p.omega_d) * dpsi) / d - gq * dd / d;
        dp_sum += (dl * psi + l * dpsi) / d - gp * dd / d;
    }

    let hbar = p.hbar;
    let dq2 = dq_sum * (hbar / (m * PI)) - q_sum * (hbar / (m * m * PI))
        - classical_term(p, temperature) / m;
    let dq2 = real_part(dq2, "d<q^2>/dM")?;
    let dp2 = real_part(dp_sum * (hbar * p.eta * p.omega_d / PI), "d<p^2>/dM")?
        + 2.0 * m * p.omega * p.omega * q2
        + m * m * p.omega * p.omega * dq2;
    Ok((dq2, dp2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> ComplexValue {
        Complex64::new(re, im)
    }

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn uncoupled_cubic_factors() {
        let p = OscillatorParams::new(1.0, 1.0, 0.0, 10.0).unwrap();
        let f = characteristic_frequencies(&p).unwrap();
        assert!((f.lambda[0] - c(10.0, 0.0)).norm() < 1e-12);
        assert!((f.lambda[1] - c(0.0, 1.0)).norm() < 1e-12);
        assert_eq!(f.lambda[2], f.lambda[1].conj());
        assert!(f.dlambda_dm.iter().all(|d| d.norm() == 0.0));
    }

    #[test]
    fn vieta_relations_and_derivative_sum() {
        for p in [
            OscillatorParams::reference(),
            OscillatorParams::moderate(),
            OscillatorParams::new(2.0, 0.3, 0.01, 50.0).unwrap(),
        ] {
            let f = characteristic_frequencies(&p).unwrap();
            let [a, b, cc] = f.lambda;
            let e1 = a + b + cc;
            let e2 = a * b + b * cc + a * cc;
            let e3 = a * b * cc;
            let w2 = p.omega * p.omega;
            assert!((e1 - p.omega_d).norm() <= 1e-10 * p.omega_d);
            let want2 = w2 + p.eta * p.omega_d / p.mass;
            assert!((e2 - want2).norm() <= 1e-10 * want2);
            assert!((e3 - w2 * p.omega_d).norm() <= 1e-10 * w2 * p.omega_d);
            assert!(f.lambda.iter().all(|l| l.re > 0.0));
            let dsum: Complex64 = f.dlambda_dm.iter().sum();
            let scale = f.dlambda_dm.iter().map(|d| d.norm()).fold(0.0, f64::max);
            assert!(dsum.norm() <= 1e-10 * scale.max(1e-300));
        }
    }

    #[test]
    fn reference_roots_match_high_precision() {
        let f = characteristic_frequencies(&OscillatorParams::reference()).unwrap();
        let want = [
            0.033_024_083_839_994_199_36,
            45.317_158_288_858_915_83,
            1_154.649_817_627_301_09,
        ];
        for (l, w) in f.lambda.iter().zip(want) {
            assert_eq!(l.im, 0.0);
            assert!(rel(l.re, w) < 1e-12, "{l} vs {w}");
        }
    }

    #[test]
    fn near_critical_damping_is_rejected() {
        // λ³ − ω_Dλ² + c₁λ − c₀ with a double root at r: pick ω_D, r and
        // solve for the remaining root s = ω_D − 2r, then back out η and ω.
        let (omega_d, r) = (10.0, 1.0);
        let s = omega_d - 2.0 * r;
        let w2 = r * r * s / omega_d;
        let c1 = 2.0 * r * s + r * r;
        let eta = c1 - w2; // with M = ω_D = 10 the ratio η ω_D / M is η
        let p = OscillatorParams::new(omega_d, w2.sqrt(), eta, omega_d).unwrap();
        assert!(matches!(
            characteristic_frequencies(&p),
            Err(Error::DegenerateRoots { .. })
        ));
    }

    #[test]
    fn uncoupled_variances_and_free_energy() {
        let p = OscillatorParams::new(1.3, 0.7, 0.0, 20.0).unwrap();
        for t in [0.05, 0.3, 1.0, 5.0] {
            let (q2, p2) = stationary_variances(&p, t).unwrap();
            let cth = coth(p.omega / (2.0 * t));
            assert!(rel(q2, cth / (2.0 * p.mass * p.omega)) < 1e-12);
            assert!(rel(p2, cth * p.mass * p.omega / 2.0) < 1e-12);
            let f = free_energy(&p, t).unwrap();
            assert!(rel(f, t * (2.0 * (p.omega / (2.0 * t)).sinh()).ln()) < 1e-11);
        }
        let f = free_energy(&OscillatorParams::new(1.0, 1.0, 0.0, 10.0).unwrap(), 1.0).unwrap();
        assert!((f - (2.0 * 0.5f64.sinh()).ln()).abs() < 1e-13);
        assert!((f - 0.041_324_854_612_918_16).abs() < 1e-14);
    }

    #[test]
    fn coupling_squeezes_the_state() {
        let p = OscillatorParams::reference();
        for t in [0.0, 0.05, 1.0] {
            let (q2, p2) = stationary_variances(&p, t).unwrap();
            assert!(p.mass * p.omega * p.omega * q2 < p2 / p.mass);
        }
    }

    #[test]
    fn variances_match_high_precision() {
        let (q2, p2) = stationary_variances(&OscillatorParams::reference(), 0.05).unwrap();
        assert!(rel(q2, 0.067_337_874_130_696_319_74) < 1e-11);
        assert!(rel(p2, 53.515_740_421_666_010_23) < 1e-12);
        let f = free_energy(&OscillatorParams::reference(), 0.05).unwrap();
        assert!(rel(f, 30.740_672_791_189_402_62) < 1e-12);

        let (q2, p2) = stationary_variances(&OscillatorParams::moderate(), 0.5).unwrap();
        assert!(rel(q2, 0.636_760_861_502_934_987_7) < 1e-12);
        assert!(rel(p2, 1.157_199_116_139_226_946) < 1e-12);
        let f = free_energy(&OscillatorParams::moderate(), 0.5).unwrap();
        assert!(rel(f, 0.700_147_744_963_914_914_8) < 1e-12);
    }

    #[test]
    fn zero_temperature_limit_is_continuous() {
        let p = OscillatorParams::reference();
        let (q0, p0) = stationary_variances(&p, 0.0).unwrap();
        let (q1, p1) = stationary_variances(&p, 1e-5).unwrap();
        assert!(rel(q1, q0) < 1e-4);
        assert!(rel(p1, p0) < 1e-8);
        // the oscillator stays mixed at T = 0
        assert!((q0 * p0).sqrt() / p.hbar > 0.5 + 1e-3);
    }

    #[test]
    fn temperature_errors() {
        let p = OscillatorParams::reference();
        assert!(matches!(free_energy(&p, 0.0), Err(Error::Temperature { .. })));
        assert!(matches!(build_state(&p, -1.0), Err(Error::Temperature { .. })));
        assert!(matches!(stationary_variances(&p, f64::NAN), Err(Error::Temperature { .. })));
    }

    #[test]
    fn invalid_parameters() {
        assert!(OscillatorParams::new(0.0, 1.0, 1.0, 10.0).is_err());
        assert!(OscillatorParams::new(1.0, 1.0, -1.0, 10.0).is_err());
        assert!(OscillatorParams::new(1.0, f64::NAN, 1.0, 10.0).is_err());
        assert!(OscillatorParams::moderate().with_units(0.0, 1.0).is_err());
    }

    #[test]
    fn uncoupled_state_is_thermal() {
        let p = OscillatorParams::new(1.0, 1.0, 0.0, 10.0).unwrap();
        for t in [0.1, 1.0, 3.0] {
            assert_eq!(build_state(&p, t).unwrap().mean_force_shift, 0.0);
            let (q2, p2) = stationary_variances(&p, t).unwrap();
            let f = free_energy(&p, t).unwrap();
            let general = StationaryState::from_parts(&p, t, q2, p2, f).unwrap();
            assert!(general.mean_force_shift.abs() < 1e-10, "{}", general.mean_force_shift);
            let closed = uncoupled_state(&p, t).unwrap();
            assert!(rel(general.entropy, closed.entropy) < 1e-10);
        }
        let cold = build_state(&p, 1e-3).unwrap();
        assert!((cold.v - 0.5).abs() < 1e-12);
        assert!(cold.entropy < 1e-12);
        assert!((cold.energy - 0.5).abs() < 1e-12);
    }

    #[test]
    fn reference_state_at_low_temperature() {
        let p = OscillatorParams::reference();
        let s = build_state(&p, 0.05).unwrap();
        assert!(s.v > 0.5);
        assert!(s.mean_force_shift > 0.0);
    }

    #[test]
    fn effective_oscillator_of_uncoupled_state() {
        let p = OscillatorParams::new(1.4, 0.8, 0.0, 10.0).unwrap();
        let s = uncoupled_state(&p, 0.6).unwrap();
        let e = mean_force_effective_oscillator(&s, &p).unwrap();
        assert!(rel(e.mass, p.mass) < 1e-12);
        assert!(rel(e.omega, p.omega) < 1e-12);
        assert!(e.offset.abs() < 1e-12);
    }

    #[test]
    fn effective_oscillator_identities() {
        let p = OscillatorParams::reference();
        for t in [0.05, 0.5, 3.0] {
            let s = build_state(&p, t).unwrap();
            let e = mean_force_effective_oscillator(&s, &p).unwrap();
            let lhs = e.mean_energy(&s) - s.free_energy;
            assert!((lhs - t * s.entropy).abs() <= 1e-10 * (t * s.entropy).max(1.0));
            let kinetic = s.p2 / e.mass;
            let potential = e.mass * e.omega * e.omega * s.q2;
            assert!(rel(potential, kinetic) < 1e-10);
            assert!(
                (e.mean_energy(&s) - s.energy - s.mean_force_shift).abs()
                    <= 1e-10 * s.energy.abs()
            );
        }
    }

    #[test]
    fn pure_state_has_no_effective_oscillator() {
        let p = OscillatorParams::new(1.0, 1.0, 0.0, 10.0).unwrap();
        let s = uncoupled_state(&p, 1e-3).unwrap();
        assert_eq!(
            mean_force_effective_oscillator(&s, &p),
            Err(Error::PureState)
        );
    }

    #[test]
    fn heisenberg_violation_is_reported() {
        let p = OscillatorParams::moderate();
        let r = StationaryState::from_parts(&p, 1.0, 0.1, 0.1, 0.0);
        assert!(matches!(r, Err(Error::Heisenberg(_))));
    }

    #[test]
    fn uncoupled_mass_derivatives() {
        let p = OscillatorParams::new(1.3, 0.9, 0.0, 30.0).unwrap();
        let t = 0.4;
        let (q2, p2) = stationary_variances(&p, t).unwrap();
        let (dq2, dp2) = variance_mass_derivatives(&p, t).unwrap();
        assert!(rel(dq2, -q2 / p.mass) < 1e-10);
        assert!(rel(dp2, p2 / p.mass) < 1e-10);
    }

    #[test]
    fn mass_derivatives_match_high_precision() {
        let (dq2, dp2) = variance_mass_derivatives(&OscillatorParams::reference(), 0.1).unwrap();
        assert!(rel(dq2, -0.063_986_011_295_614_871_11) < 1e-9);
        assert!(rel(dp2, 12.136_089_091_764_917_57) < 1e-10);
    }
}
