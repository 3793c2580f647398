//! Table-producing subcommands.

use std::f64::consts::LN_2;

use dampedosc::asymptotics::{
    low_t_combined_delta, low_t_coupling_process, low_t_mass_process, DimensionlessParams,
};
use dampedosc::bath::BathOracle;
use dampedosc::specfun::entropy_kernel;
use dampedosc::{
    build_state, combined_process, coupling_process, erasure_protocol, free_energy,
    mass_variation, stationary_variances, OscillatorParams, Result,
};
use rayon::prelude::*;

use crate::config::{RunConfig, DEFAULT_POINT_TEMPERATURE};
use crate::output::Table;
use crate::CliError;

const POINT_HEADER: [&str; 19] = [
    "T", "q2", "p2", "v", "S", "U", "F", "dH", "Q_M", "W_M", "dS_M", "Delta_M", "Q_C", "W_C",
    "dS_C", "Delta_C", "Delta", "Q_dis", "landauer_margin",
];

/// One row of [`POINT_HEADER`] at `T > 0`.
fn point_row(p: &OscillatorParams, m1: f64, t: f64) -> Result<Vec<f64>> {
    let s = build_state(p, t)?;
    let m = mass_variation(p, m1, t)?;
    let c = coupling_process(p, t)?;
    let all = combined_process(p, m1, t)?;
    let erase = erasure_protocol(p, t)?;
    Ok(vec![
        t,
        s.q2,
        s.p2,
        s.v,
        s.entropy,
        s.energy,
        s.free_energy,
        s.mean_force_shift,
        m.q,
        m.w,
        m.ds,
        m.delta,
        c.q,
        c.w,
        c.ds,
        c.delta,
        all.delta,
        erase.q_dissipated,
        erase.q_dissipated - p.kb * t * LN_2,
    ])
}

/// Evaluate `f` at every temperature in parallel; rows come back in grid order.
fn sweep_rows<F>(temps: &[f64], f: F) -> Result<Vec<Vec<f64>>>
where
    F: Fn(f64) -> Result<Vec<f64>> + Sync,
{
    temps.par_iter().map(|&t| f(t)).collect()
}

fn positive_grid(cfg: &RunConfig) -> std::result::Result<&[f64], CliError> {
    if cfg.temperatures.contains(&0.0) {
        return Err(CliError::Usage(
            "T = 0 is only supported by the point command".into(),
        ));
    }
    Ok(&cfg.temperatures)
}

pub fn point(cfg: &RunConfig) -> std::result::Result<Table, CliError> {
    let t = if cfg.explicit_temperatures {
        match cfg.temperatures.as_slice() {
            [t] => *t,
            _ => {
                return Err(CliError::Usage(
                    "point takes a single --temperature".into(),
                ))
            }
        }
    } else {
        DEFAULT_POINT_TEMPERATURE
    };
    if t == 0.0 {
        return Ok(ground_state_point(cfg)?);
    }
    let mut table = Table::new(POINT_HEADER.to_vec());
    table.push(point_row(&cfg.params, cfg.mass1, t)?);
    Ok(table)
}

/// `T = 0`: exact variances from the ground-state limit, processes from the
/// low-temperature expansions.
fn ground_state_point(cfg: &RunConfig) -> Result<Table> {
    let p = &cfg.params;
    let (q2, p2) = stationary_variances(p, 0.0)?;
    let v = (q2 * p2).sqrt() / p.hbar;
    let energy = p2 / (2.0 * p.mass) + 0.5 * p.mass * p.omega * p.omega * q2;
    let dp = DimensionlessParams::new(p, cfg.mass1, 0.0)?;
    for w in dp.warnings() {
        log::warn!("low-temperature expansion outside its regime: {w}");
    }
    let m = low_t_mass_process(&dp, p);
    let c = low_t_coupling_process(&dp, p);
    let mut table = Table::new(vec![
        "T",
        "q2",
        "p2",
        "v",
        "S",
        "U",
        "Q_M_lowT",
        "dS_M_lowT",
        "Delta_M_lowT",
        "Q_C_lowT",
        "dS_C_lowT",
        "Delta_lowT",
    ]);
    table.push(vec![
        0.0,
        q2,
        p2,
        v,
        entropy_kernel(v)?,
        energy,
        m.q,
        m.ds,
        m.delta,
        c.q,
        c.ds,
        low_t_combined_delta(&dp, p, 0.0),
    ]);
    Ok(table)
}

pub fn sweep(cfg: &RunConfig) -> std::result::Result<Table, CliError> {
    let temps = positive_grid(cfg)?;
    let mut table = Table::new(POINT_HEADER.to_vec());
    table.rows = sweep_rows(temps, |t| point_row(&cfg.params, cfg.mass1, t))?;
    Ok(table)
}

/// `Δ^(M)`, `Δ` and the low-temperature expression for `Δ`. The last column
/// is NaN where the expansion's logarithms are undefined.
pub fn figure1(cfg: &RunConfig) -> std::result::Result<Table, CliError> {
    let temps = positive_grid(cfg)?;
    let (p, m1) = (&cfg.params, cfg.mass1);
    let mut table = Table::new(vec!["T", "Delta_M_exact", "Delta_exact", "Delta_lowT"]);
    table.rows = sweep_rows(temps, |t| {
        let m = mass_variation(p, m1, t)?;
        let all = combined_process(p, m1, t)?;
        let low = match DimensionlessParams::new(p, m1, t) {
            Ok(dp) => low_t_combined_delta(&dp, p, t),
            Err(_) => f64::NAN,
        };
        Ok(vec![t, m.delta, all.delta, low])
    })?;
    report_regime(cfg);
    Ok(table)
}

pub fn figure2(cfg: &RunConfig) -> std::result::Result<Table, CliError> {
    let temps = positive_grid(cfg)?;
    let (p, m1) = (&cfg.params, cfg.mass1);
    let mut table = Table::new(vec!["T", "Q_C", "dS_C", "Q_M", "dS_M"]);
    table.rows = sweep_rows(temps, |t| {
        let c = coupling_process(p, t)?;
        let m = mass_variation(p, m1, t)?;
        Ok(vec![t, c.q, c.ds, m.q, m.ds])
    })?;
    Ok(table)
}

fn report_regime(cfg: &RunConfig) {
    let outside = cfg
        .temperatures
        .iter()
        .filter(|&&t| {
            DimensionlessParams::new(&cfg.params, cfg.mass1, t)
                .map(|dp| !dp.in_regime())
                .unwrap_or(true)
        })
        .count();
    if outside > 0 {
        log::warn!(
            "{outside} of {} temperatures lie outside the low-temperature expansion's regime",
            cfg.temperatures.len()
        );
    }
}

/// Bath sizes `n/8, n/4, n/2, n`.
pub fn bath_ladder(n: usize) -> std::result::Result<[usize; 4], CliError> {
    if n < 16 {
        return Err(CliError::Usage(format!("--n-bath must be at least 16, got {n}")));
    }
    Ok([n / 8, n / 4, n / 2, n])
}

fn rel_err(approx: f64, exact: f64) -> f64 {
    if exact == 0.0 {
        approx.abs()
    } else {
        ((approx - exact) / exact).abs()
    }
}

/// Finite-bath oracle against the closed forms, one row per (N, T).
pub fn oracle(cfg: &RunConfig) -> std::result::Result<Table, CliError> {
    let temps = positive_grid(cfg)?;
    let p = &cfg.params;
    let ladder = bath_ladder(cfg.n_bath)?;
    let exact: Vec<[f64; 3]> = temps
        .iter()
        .map(|&t| {
            let (q2, p2) = stationary_variances(p, t)?;
            Ok([q2, p2, free_energy(p, t)?])
        })
        .collect::<Result<_>>()?;

    let blocks: Vec<Vec<Vec<f64>>> = ladder
        .par_iter()
        .map(|&n| {
            log::info!("diagonalizing bath with {n} modes");
            let oracle = BathOracle::new(p, n)?;
            temps
                .iter()
                .zip(&exact)
                .map(|(&t, e)| {
                    let s = oracle.reduced_state(t)?;
                    let f = oracle.free_energy(t)?;
                    Ok(vec![
                        n as f64,
                        t,
                        e[0],
                        s.q2,
                        rel_err(s.q2, e[0]),
                        e[1],
                        s.p2,
                        rel_err(s.p2, e[1]),
                        e[2],
                        f,
                        rel_err(f, e[2]),
                    ])
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let mut table = Table::new(vec![
        "N",
        "T",
        "q2_exact",
        "q2_oracle",
        "q2_rel_err",
        "p2_exact",
        "p2_oracle",
        "p2_rel_err",
        "F_exact",
        "F_oracle",
        "F_rel_err",
    ]);
    table.rows = blocks.into_iter().flatten().collect();
    Ok(table)
}
