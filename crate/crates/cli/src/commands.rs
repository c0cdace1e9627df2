//! Table-producing subcommands. Sweeps run in parallel; rows are assembled
//! in (n, δ) order.

use anyhow::{bail, Context};
use hydrogen_fd::coordinate::{alpha_inner, eigen_data, eigenfunction, laguerre_ref};
use hydrogen_fd::numerics::{int, surd_to_float};
use hydrogen_fd::pollaczek::{mass_point, pollaczek_mass_closed, pollaczek_seq};
use hydrogen_fd::{QuadraticSurd, Rational};
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::args::{Mode, RunConfig};
use crate::table::{Cell, Table};

struct Fmt {
    mode: Mode,
    bits: u32,
}

impl Fmt {
    fn new(cfg: &RunConfig) -> Self {
        Fmt {
            mode: cfg.mode,
            bits: cfg.precision_bits,
        }
    }

    fn surd(&self, x: &QuadraticSurd) -> anyhow::Result<Cell> {
        Ok(match self.mode {
            Mode::Exact => Cell::Surd(x.clone()),
            Mode::Float => Cell::Float(surd_to_float(x, self.bits)?),
        })
    }

    fn rational(&self, x: &Rational) -> Cell {
        match self.mode {
            Mode::Exact => Cell::Rational(x.clone()),
            Mode::Float => Cell::Float(x.to_f64().unwrap_or(f64::NAN)),
        }
    }
}

fn rows_in_order<T, F>(items: Vec<T>, f: F) -> anyhow::Result<Vec<Vec<Cell>>>
where
    T: Send + Sync,
    F: Fn(&T) -> anyhow::Result<Vec<Vec<Cell>>> + Send + Sync,
{
    let blocks: Vec<Vec<Vec<Cell>>> = items.par_iter().map(f).collect::<anyhow::Result<_>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

fn states(cfg: &RunConfig) -> Vec<usize> {
    cfg.n_range.clone().collect()
}

fn require_positive(delta: &Rational, command: &str) -> anyhow::Result<()> {
    if delta.is_zero() {
        bail!("{command} needs a positive step");
    }
    Ok(())
}

pub fn spectrum(cfg: &RunConfig) -> anyhow::Result<Table> {
    let fmt = Fmt::new(cfg);
    let mut table = Table::new("spectrum", &["n", "delta", "mu", "energy", "beta", "q"]);
    table.rows = rows_in_order(states(cfg), |&n| {
        let data = eigen_data(n, &cfg.delta)?;
        Ok(vec![vec![
            n.into(),
            fmt.rational(&cfg.delta),
            fmt.surd(&data.mu)?,
            fmt.surd(&data.energy)?,
            data.beta.into(),
            fmt.surd(&data.q)?,
        ]])
    })?;
    Ok(table)
}

pub fn wavefunction(cfg: &RunConfig) -> anyhow::Result<Table> {
    require_positive(&cfg.delta, "wavefunction")?;
    let fmt = Fmt::new(cfg);
    let step = cfg.delta.to_f64().unwrap_or(f64::NAN);
    let mut table = Table::new("wavefunction", &["n", "k", "r", "u", "u_continuum"]);
    table.rows = rows_in_order(states(cfg), |&n| {
        let ef = eigenfunction(n, &cfg.delta)?;
        let reference = laguerre_ref(n)?;
        (1..=cfg.kmax)
            .map(|k| {
                let r = &cfg.delta * int(k as i64);
                Ok(vec![
                    n.into(),
                    k.into(),
                    fmt.rational(&r),
                    fmt.surd(&ef.grid_value(k))?,
                    reference.evaluate(k as f64 * step).into(),
                ])
            })
            .collect()
    })?;
    Ok(table)
}

/// `P_j(x_m)` at the mass point of state `n = m + 1`, by recursion and in
/// closed form.
pub fn pollaczek(cfg: &RunConfig) -> anyhow::Result<Table> {
    let fmt = Fmt::new(cfg);
    let mut table = Table::new("pollaczek", &["n", "m", "j", "x", "recursion", "closed_form"]);
    table.rows = rows_in_order(states(cfg), |&n| {
        let mp = mass_point(n - 1, &cfg.delta);
        let recursion: Vec<Cell> = match cfg.mode {
            Mode::Exact => pollaczek_seq(&cfg.delta, mp.x.clone(), cfg.jmax)
                .values
                .into_iter()
                .map(Cell::Surd)
                .collect(),
            Mode::Float => {
                let x = surd_to_float(&mp.x, cfg.precision_bits)?;
                pollaczek_seq(&cfg.delta, x, cfg.jmax)
                    .values
                    .into_iter()
                    .map(Cell::Float)
                    .collect()
            }
        };
        recursion
            .into_iter()
            .enumerate()
            .map(|(j, value)| {
                Ok(vec![
                    n.into(),
                    mp.m.into(),
                    j.into(),
                    fmt.surd(&mp.x)?,
                    value,
                    fmt.surd(&pollaczek_mass_closed(j, &mp))?,
                ])
            })
            .collect()
    })?;
    Ok(table)
}

/// Assembled `α_(n−k)` at the configured step and the inner coefficients
/// `α_(n−k,m)`, `m = 0..⌊k/2⌋`, for `k ≤ min(kmax, n − 1)`.
pub fn coeffs(cfg: &RunConfig) -> anyhow::Result<Table> {
    let fmt = Fmt::new(cfg);
    let mut table = Table::new("coeffs", &["n", "k", "alpha", "inner"]);
    table.rows = rows_in_order(states(cfg), |&n| {
        let kmax = cfg.kmax.min(n - 1);
        let alpha = alpha_inner(n, kmax).with_context(|| format!("coefficient table for n = {n}"))?;
        (0..=kmax)
            .map(|k| {
                let inner = alpha
                    .level(k)
                    .unwrap_or_default()
                    .iter()
                    .map(|c| fmt.rational(c))
                    .collect();
                Ok(vec![
                    n.into(),
                    k.into(),
                    fmt.surd(&alpha.assemble(k, &cfg.delta)?)?,
                    Cell::List(inner),
                ])
            })
            .collect()
    })?;
    Ok(table)
}

pub fn converge(cfg: &RunConfig) -> anyhow::Result<Table> {
    for delta in &cfg.deltas {
        require_positive(delta, "converge")?;
    }
    let fmt = Fmt::new(cfg);
    let mut table = Table::new("converge", &["n", "delta", "energy", "shift", "ratio"]);
    let pairs: Vec<(usize, &Rational)> = cfg
        .n_range
        .clone()
        .flat_map(|n| cfg.deltas.iter().map(move |d| (n, d)))
        .collect();
    table.rows = rows_in_order(pairs, |&(n, delta)| {
        let data = eigen_data(n, delta)?;
        let d = data.mu.radicand().clone();
        let shift = &data.energy - &QuadraticSurd::rational_in(data.continuum_energy(), &d);
        let ratio = shift.scale(&(delta * delta).recip());
        Ok(vec![vec![
            n.into(),
            fmt.rational(delta),
            fmt.surd(&data.energy)?,
            fmt.surd(&shift)?,
            fmt.surd(&ratio)?,
        ]])
    })?;
    Ok(table)
}
