use std::ops::RangeInclusive;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hydrogen_fd::numerics::{parse_rational, DEFAULT_PRECISION_BITS};
use hydrogen_fd::Rational;

pub const OUT_DIR_ENV: &str = "HYDROGEN_FD_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "hydrogen-fd", version, about = "Exact eigenfunctions of the finite-difference hydrogen atom")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Spectrum,
    Wavefunction,
    Pollaczek,
    Coeffs,
    Verify,
    Converge,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalue data μ_n, E_n, β_n, q_n for each state.
    Spectrum(Common),
    /// Grid values u_n(kδ) for k = 1..kmax beside the continuum u_n(kδ).
    Wavefunction(Common),
    /// Pollaczek values P_j(x_m) at the mass points, j = 0..jmax.
    Pollaczek(Common),
    /// Assembled α_(n−k) and the inner coefficients α_(n−k,m).
    Coeffs(Common),
    /// Runs the invariant checks and writes a pass/fail report.
    Verify(Common),
    /// Energy shift (E_n(δ) + 1/(2n²))/δ² over a list of steps.
    Converge(Common),
}

impl Command {
    pub fn parts(&self) -> (CommandKind, &Common) {
        match self {
            Command::Spectrum(c) => (CommandKind::Spectrum, c),
            Command::Wavefunction(c) => (CommandKind::Wavefunction, c),
            Command::Pollaczek(c) => (CommandKind::Pollaczek, c),
            Command::Coeffs(c) => (CommandKind::Coeffs, c),
            Command::Verify(c) => (CommandKind::Verify, c),
            Command::Converge(c) => (CommandKind::Converge, c),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Csv,
    Json,
}

impl Output {
    pub fn extension(self) -> &'static str {
        match self {
            Output::Csv => "csv",
            Output::Json => "json",
        }
    }
}

#[derive(Debug, Args)]
pub struct Common {
    /// Lattice step as "p/q" or an exact decimal.
    #[arg(long, default_value = "1")]
    pub delta: String,
    /// Comma-separated steps for `converge`.
    #[arg(long, value_delimiter = ',')]
    pub deltas: Vec<String>,
    /// Inclusive state range "lo..hi", or a single index.
    #[arg(long = "n", default_value = "1..5")]
    pub n: String,
    #[arg(long, default_value_t = 40)]
    pub kmax: usize,
    #[arg(long, default_value_t = 20)]
    pub jmax: usize,
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    pub mode: Mode,
    /// Working precision for surd-to-float conversion.
    #[arg(long, default_value_t = DEFAULT_PRECISION_BITS)]
    pub precision_bits: u32,
    #[arg(long, value_enum, default_value_t = Output::Csv)]
    pub output: Output,
    /// Report file. Defaults to `<command>.<ext>` in the output directory, or stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, env = OUT_DIR_ENV)]
    pub out_dir: Option<PathBuf>,
}

/// Validated configuration for one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub delta: Rational,
    pub deltas: Vec<Rational>,
    pub n_range: RangeInclusive<usize>,
    pub kmax: usize,
    pub jmax: usize,
    pub mode: Mode,
    pub precision_bits: u32,
    pub output: Output,
    pub out_path: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> anyhow::Result<Self> {
        let (command, common) = cli.command.parts();
        let allow_float = common.mode == Mode::Float;
        let parse = |text: &str| {
            parse_rational(text, allow_float).with_context(|| format!("invalid step {text:?}"))
        };
        let delta = parse(&common.delta)?;
        let deltas = if common.deltas.is_empty() {
            vec![delta.clone()]
        } else {
            common.deltas.iter().map(|d| parse(d)).collect::<anyhow::Result<_>>()?
        };
        if deltas.iter().chain([&delta]).any(|d| d < &Rational::from_integer(0.into())) {
            bail!("steps must be nonnegative");
        }
        if common.precision_bits < 64 {
            bail!("--precision-bits must be at least 64");
        }
        let out_path = match (&common.out, &common.out_dir) {
            (Some(path), _) => Some(path.clone()),
            (None, Some(dir)) => {
                let name = format!("{}.{}", command_name(command), common.output.extension());
                Some(dir.join(name))
            }
            (None, None) => None,
        };
        Ok(RunConfig {
            command,
            delta,
            deltas,
            n_range: parse_range(&common.n)?,
            kmax: common.kmax,
            jmax: common.jmax,
            mode: common.mode,
            precision_bits: common.precision_bits,
            output: common.output,
            out_path,
        })
    }
}

pub fn command_name(kind: CommandKind) -> &'static str {
    match kind {
        CommandKind::Spectrum => "spectrum",
        CommandKind::Wavefunction => "wavefunction",
        CommandKind::Pollaczek => "pollaczek",
        CommandKind::Coeffs => "coeffs",
        CommandKind::Verify => "verify",
        CommandKind::Converge => "converge",
    }
}

/// `"3"`, `"1..5"` (inclusive) or `"1..=5"`.
pub fn parse_range(text: &str) -> anyhow::Result<RangeInclusive<usize>> {
    let index = |s: &str| -> anyhow::Result<usize> {
        let v: usize = s.trim().parse().with_context(|| format!("invalid state index {s:?}"))?;
        if v == 0 {
            bail!("state indices start at 1");
        }
        Ok(v)
    };
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (index(lo)?, index(hi.trim_start_matches('='))?),
        None => {
            let v = index(text)?;
            (v, v)
        }
    };
    if lo > hi {
        bail!("empty state range {text:?}");
    }
    Ok(lo..=hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("1..5").unwrap(), 1..=5);
        assert_eq!(parse_range("2..=4").unwrap(), 2..=4);
        assert_eq!(parse_range("7").unwrap(), 7..=7);
        assert!(parse_range("0..3").is_err());
        assert!(parse_range("5..2").is_err());
        assert!(parse_range("a..b").is_err());
    }
}
