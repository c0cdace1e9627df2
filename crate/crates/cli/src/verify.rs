//! The `verify` report: invariant checks across all modules plus the two
//! diagnostics on the Pollaczek conventions.

use std::f64::consts::PI;

use hydrogen_fd::coordinate::{
    alpha_vector, ansatz_constraint_system, difference_residual, eigen_data, eigenfunction,
    energy_shift_ratio,
};
use hydrogen_fd::numerics::{format_fraction, int, rat, surd_pow, surd_to_float};
use hydrogen_fd::pollaczek::{
    closed_first_branch, closed_second_branch, initial_condition_report, mass_point,
    pollaczek_mass_closed, pollaczek_seq, trig_degree_ratios, PollaczekParams, TrigConvention,
};
use hydrogen_fd::spectral::{
    build_truncated, closed_form_vector, eigen_residual_rows, gram_matrix, largest_eigenvalues,
    proportionality_ratio,
};
use hydrogen_fd::QuadraticSurd;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::args::RunConfig;
use crate::table::{Cell, Table};

const TRIG_DEGREE: usize = 6;
const TRIG_SAMPLES: usize = 20;
const TRIG_TOLERANCE: f64 = 1e-9;

pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        name,
        passed,
        detail: detail.into(),
    }
}

/// Runs every check over the configured states. Check failures are
/// reported, not raised; errors from the library are.
pub fn run_checks(cfg: &RunConfig) -> anyhow::Result<Vec<Check>> {
    let delta = &cfg.delta;
    let states: Vec<usize> = cfg.n_range.clone().collect();
    let n_hi = *cfg.n_range.end();
    let positive = !delta.is_zero();
    let rows = cfg.kmax.max(1);
    let mut checks = vec![numerics_examples()];

    let invariants = states
        .par_iter()
        .map(|&n| Ok(eigen_data(n, delta)?.invariants_hold()))
        .collect::<anyhow::Result<Vec<bool>>>()?;
    checks.push(check(
        "eigen_data_invariants",
        invariants.iter().all(|&b| b),
        "mu^2 - (delta/n)^2 = 1, mu = 1 - delta^2 E, q (mu + delta/n) = 1",
    ));

    if positive {
        let exact = states
            .par_iter()
            .map(|&n| {
                (1..=rows).try_fold(true, |ok, k| {
                    Ok::<_, anyhow::Error>(ok && difference_residual(n, delta, k)?.is_zero())
                })
            })
            .collect::<anyhow::Result<Vec<bool>>>()?;
        checks.push(check(
            "difference_equation_exact",
            exact.iter().all(|&b| b),
            format!("residual zero at grid points k = 1..{rows}"),
        ));

        let alpha = states
            .par_iter()
            .map(|&n| {
                let solved = ansatz_constraint_system(n, delta)?.solve_alpha()?;
                Ok(solved == alpha_vector(n, delta)?)
            })
            .collect::<anyhow::Result<Vec<bool>>>()?;
        checks.push(check(
            "alpha_recursion_vs_linear_solve",
            alpha.iter().all(|&b| b),
            "coefficient recursion equals exact null vector of the ansatz constraints",
        ));
    }

    let closed = (0..n_hi)
        .into_par_iter()
        .map(|m| {
            let mp = mass_point(m, delta);
            let seq = pollaczek_seq(delta, mp.x.clone(), cfg.jmax);
            let all = (0..=cfg.jmax).all(|j| pollaczek_mass_closed(j, &mp) == seq.values[j]);
            let branches = closed_first_branch(m, &mp) == closed_second_branch(m, &mp);
            (all, branches)
        })
        .collect::<Vec<_>>();
    checks.push(check(
        "pollaczek_closed_form_vs_recursion",
        closed.iter().all(|c| c.0),
        format!("j = 0..{}, m = 0..{}", cfg.jmax, n_hi - 1),
    ));
    checks.push(check(
        "pollaczek_branch_agreement",
        closed.iter().all(|c| c.1),
        "both closed-form branches agree at j = m",
    ));

    let spectral = states
        .par_iter()
        .map(|&n| {
            let v = closed_form_vector(n, delta, rows + 1)?;
            let mu = eigen_data(n, delta)?.mu;
            let identity = eigen_residual_rows(&v, &mu).iter().take(rows).all(|r| r.is_zero());
            let proportional = !positive || {
                let ef = eigenfunction(n, delta)?;
                let grid: Vec<QuadraticSurd> = (1..=rows).map(|k| ef.grid_value(k)).collect();
                proportionality_ratio(&grid, &v.entries[..rows]).is_some()
            };
            Ok((identity, proportional))
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    checks.push(check(
        "spectral_eigen_identity",
        spectral.iter().all(|s| s.0),
        format!("tridiagonal rows 1..{rows} vanish exactly"),
    ));
    if positive {
        checks.push(check(
            "spectral_coordinate_proportional",
            spectral.iter().all(|s| s.1),
            "closed-form vector is a constant multiple of the grid eigenfunction",
        ));

        let step = delta.to_f64().unwrap_or(f64::NAN);
        let size = (400.0_f64).max((40.0 * n_hi as f64 / step).ceil()) as usize;
        let op = build_truncated(delta, size)?;
        let top: Vec<f64> = largest_eigenvalues(&op, n_hi, 1e-13)?;
        let worst = states
            .iter()
            .map(|&n| {
                let mu = eigen_data(n, delta).map(|d| d.mu.to_f64()).unwrap_or(f64::NAN);
                (top[n - 1] - mu).abs()
            })
            .fold(0.0, f64::max);
        checks.push(check(
            "sturm_point_spectrum",
            worst < 1e-8,
            format!("N = {size}, worst |x - mu_n| = {worst:.3e}"),
        ));

        let gram = gram_matrix(&states, delta, 1e-14)?;
        let mut worst = 0.0_f64;
        for (i, row) in gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                worst = worst.max((g - if i == j { 1.0 } else { 0.0 }).abs());
            }
        }
        checks.push(check(
            "orthonormality",
            worst < 1e-10,
            format!("worst Gram deviation {worst:.3e}"),
        ));
    }

    let shifts = states
        .iter()
        .map(|&n| {
            let ratio = energy_shift_ratio(n, &rat(1, 20))?;
            Ok((ratio * 8.0 * (n as f64).powi(4) - 1.0).abs())
        })
        .collect::<anyhow::Result<Vec<f64>>>()?;
    let worst = shifts.iter().copied().fold(0.0, f64::max);
    checks.push(check(
        "energy_shift_small_step",
        worst < 0.10,
        format!("at delta = 1/20, worst relative deviation from 1/(8n^4) {worst:.4}"),
    ));

    let ratios = trig_ratios(cfg, TrigConvention::Conjugate)?;
    let worst = ratios.iter().map(|r| r.max_rel_deviation).fold(0.0, f64::max);
    checks.push(check(
        "trig_formula_conjugate_sign",
        worst < TRIG_TOLERANCE,
        format!("n <= {TRIG_DEGREE}, {TRIG_SAMPLES} angles, worst deviation {worst:.3e}"),
    ));
    Ok(checks)
}

fn numerics_examples() -> Check {
    let s = |a: i64, b: i64, d: i64| QuadraticSurd::new(int(a), int(b), int(d)).unwrap();
    let root2 = s(0, 1, 2);
    let silver = s(-1, 1, 2);
    let mixed = QuadraticSurd::new(rat(1, 2), rat(1, 3), int(5)).unwrap() * s(2, 3, 5);
    let passed = &root2 * &root2 == s(2, 0, 2)
        && s(1, 1, 2) * s(1, -1, 2) == s(-1, 0, 2)
        && mixed == QuadraticSurd::new(int(6), rat(13, 6), int(5)).unwrap()
        && surd_pow(&silver, 2) == s(3, -2, 2)
        && surd_pow(&silver, 3) == s(-7, 5, 2)
        && surd_to_float(&silver, 128).is_ok_and(|x| x == 0.414_213_562_373_095_05);
    check("numerics_examples", passed, "surd products, powers and conversion")
}

fn trig_ratios(
    cfg: &RunConfig,
    convention: TrigConvention,
) -> anyhow::Result<Vec<hydrogen_fd::pollaczek::DegreeRatio>> {
    let thetas: Vec<f64> = (0..TRIG_SAMPLES)
        .map(|i| 0.1 + (PI - 0.2) * (i as f64 + 0.5) / TRIG_SAMPLES as f64)
        .collect();
    let params = PollaczekParams::hydrogen(&cfg.delta);
    Ok(trig_degree_ratios(convention, &params, &thetas, TRIG_DEGREE)?)
}

/// The two Pollaczek convention diagnostics: both candidate `P_1` values at
/// the first mass point, and the trigonometric sum to recursion ratios for
/// each sign convention.
pub fn diagnostics(cfg: &RunConfig) -> anyhow::Result<Value> {
    let x0 = mass_point(0, &cfg.delta).x;
    let p1 = initial_condition_report(&cfg.delta, x0.clone());
    let mut trig = Map::new();
    for (name, convention) in [
        ("direct", TrigConvention::Direct),
        ("conjugate", TrigConvention::Conjugate),
    ] {
        let ratios = trig_ratios(cfg, convention)?;
        let rows: Vec<Value> = ratios
            .iter()
            .map(|r| {
                json!({
                    "degree": r.degree,
                    "constant_re": finite(r.constant.re),
                    "constant_im": finite(r.constant.im),
                    "max_rel_deviation": finite(r.max_rel_deviation),
                })
            })
            .collect();
        let consistent = ratios.iter().all(|r| r.max_rel_deviation < TRIG_TOLERANCE);
        trig.insert(name.into(), json!({ "consistent": consistent, "degrees": rows }));
    }
    Ok(json!({
        "p1_convention": {
            "x": x0,
            "recursion": p1.recursion,
            "alternate": p1.alternate,
            "agree": p1.recursion == p1.alternate,
        },
        "trig_phase_ratios": trig,
    }))
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!(x.to_string())
    }
}

pub fn report_json(cfg: &RunConfig, checks: &[Check], diagnostics: Value) -> Value {
    let flags: Map<String, Value> = checks.iter().map(|c| (c.name.into(), json!(c.passed))).collect();
    let details: Map<String, Value> =
        checks.iter().map(|c| (c.name.into(), json!(c.detail))).collect();
    json!({
        "command": "verify",
        "delta": format_fraction(&cfg.delta),
        "n": [cfg.n_range.start(), cfg.n_range.end()],
        "kmax": cfg.kmax,
        "jmax": cfg.jmax,
        "all_passed": checks.iter().all(|c| c.passed),
        "checks": flags,
        "details": details,
        "diagnostics": diagnostics,
    })
}

pub fn report_table(checks: &[Check], diagnostics: &Value) -> Table {
    let mut table = Table::new("verify", &["check", "passed", "detail"]);
    for c in checks {
        table.push(vec![Cell::Text(c.name.into()), c.passed.into(), Cell::Text(c.detail.clone())]);
    }
    let p1 = &diagnostics["p1_convention"];
    table.push(vec![
        Cell::Text("diagnostic_p1_convention".into()),
        Cell::Bool(p1["agree"].as_bool().unwrap_or(false)),
        Cell::Text(format!("recursion {}; alternate {}", p1["recursion"], p1["alternate"])),
    ]);
    for name in ["direct", "conjugate"] {
        let entry = &diagnostics["trig_phase_ratios"][name];
        let worst = entry["degrees"]
            .as_array()
            .map(|rows| {
                rows.iter()
                    .filter_map(|r| r["max_rel_deviation"].as_f64())
                    .fold(0.0, f64::max)
            })
            .unwrap_or(f64::NAN);
        table.push(vec![
            Cell::Text(format!("diagnostic_trig_{name}")),
            Cell::Bool(entry["consistent"].as_bool().unwrap_or(false)),
            Cell::Text(format!("worst ratio deviation {worst:.3e}")),
        ]);
    }
    table
}
