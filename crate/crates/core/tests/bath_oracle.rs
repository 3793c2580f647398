use dampedosc::bath::{discretize_bath, BathDiscretization, BathOracle};
use dampedosc::{coupling_process, free_energy, stationary_variances, OscillatorParams};

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

/// `∫ J(ν) dν` over `[lo, hi]`.
fn drude_weight(p: &OscillatorParams, lo: f64, hi: f64) -> f64 {
    let wd2 = p.omega_d * p.omega_d;
    0.5 * p.eta * wd2 * ((hi * hi + wd2) / (lo * lo + wd2)).ln()
}

/// Largest relative bin error over the given bins, each widened to the
/// edges of the cells whose midpoints it contains.
fn max_bin_error(p: &OscillatorParams, bath: &BathDiscretization, bins: &[(f64, f64)]) -> f64 {
    let h = bath.d_omega;
    bins.iter()
        .map(|&(lo, hi)| {
            let lo_edge = ((lo / h - 0.5).floor() + 1.0) * h;
            let hi_edge = ((hi / h - 0.5).floor() + 1.0) * h;
            let want = drude_weight(p, lo_edge, hi_edge);
            rel(bath.spectral_weight(lo, hi), want)
        })
        .fold(0.0, f64::max)
}

fn decade_bins(p: &OscillatorParams) -> Vec<(f64, f64)> {
    let wd = p.omega_d;
    vec![(wd / 100.0, wd / 10.0), (wd / 10.0, wd), (wd, 5.0 * wd)]
}

#[test]
fn spectral_weight_per_decade() {
    let p = OscillatorParams::moderate();
    let bath = discretize_bath(&p, 1000).unwrap();
    assert!(bath.modes.iter().all(|m| m.coupling >= 0.0 && m.omega > 0.0));
    assert!(bath.modes.last().unwrap().omega < bath.omega_max);
    let err = max_bin_error(&p, &bath, &decade_bins(&p));
    assert!(err < 0.02, "{err}");
}

#[test]
fn bin_error_halves_when_modes_double() {
    let p = OscillatorParams::moderate();
    let bins = decade_bins(&p);
    let errs: Vec<f64> = [500, 1000, 2000, 4000]
        .iter()
        .map(|&n| max_bin_error(&p, &discretize_bath(&p, n).unwrap(), &bins))
        .collect();
    for w in errs.windows(2) {
        assert!(w[1] <= 0.55 * w[0], "{errs:?}");
    }
}

#[test]
fn counter_term_converges_to_continuum() {
    // Σ C²/(mω²) → (2/π)·η·ω_D·arctan(ω_max/ω_D), and to η·ω_D as ω_max → ∞
    let p = OscillatorParams::moderate();
    let full = p.eta * p.omega_d;
    let mut last = f64::INFINITY;
    for n in [500, 2000, 8000] {
        let b = discretize_bath(&p, n).unwrap();
        let truncated = 2.0 / std::f64::consts::PI * full * (b.omega_max / p.omega_d).atan();
        assert!(rel(b.counter_term(), truncated) < 1e-3, "N = {n}");
        let err = rel(b.counter_term(), full);
        assert!(err < last);
        last = err;
    }
}

#[test]
fn oracle_reproduces_closed_forms() {
    let p = OscillatorParams::moderate();
    let oracle = BathOracle::new(&p, 1000).unwrap();
    for t in [0.2, 0.5, 1.0] {
        let s = oracle.reduced_state(t).unwrap();
        let (q2, p2) = stationary_variances(&p, t).unwrap();
        assert!(rel(s.q2, q2) < 0.01, "q2 at T = {t}");
        assert!(rel(s.p2, p2) < 0.01, "p2 at T = {t}");
        let f = oracle.free_energy(t).unwrap();
        assert!(rel(f, free_energy(&p, t).unwrap()) < 0.01, "F at T = {t}");
        assert!(s.v >= 0.5);
    }
}

#[test]
fn oracle_state_is_physical_at_strong_coupling() {
    let p = OscillatorParams::new(1.0, 1.0, 20.0, 10.0).unwrap();
    let oracle = BathOracle::new(&p, 300).unwrap();
    for t in [0.0, 0.01, 0.1, 1.0, 10.0] {
        let s = oracle.reduced_state(t).unwrap();
        assert!(s.v >= 0.5 && s.entropy >= 0.0, "T = {t}");
    }
    let modes = oracle.normal_modes();
    assert!(modes.frequencies.iter().all(|&w| w > 0.0));
    let total: f64 = modes.system_weights.iter().sum();
    assert!((total - 1.0).abs() < 1e-10);
}

#[test]
fn coupling_free_energy_sign_matches_work() {
    let t = 0.5;
    for eta in [0.3, 1.0, 3.0] {
        let p = OscillatorParams::moderate().with_eta(eta).unwrap();
        let oracle = BathOracle::new(&p, 400).unwrap();
        let bare = p.with_eta(0.0).unwrap();
        let f0 = BathOracle::new(&bare, 400).unwrap().free_energy(t).unwrap();
        let df = oracle.free_energy(t).unwrap() - f0;
        let w = coupling_process(&p, t).unwrap().w;
        assert_eq!(df.signum(), w.signum(), "η = {eta}: ΔF = {df}, W = {w}");
    }
}
