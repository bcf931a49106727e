//! The `hilbert-lattice` command line.
//!
//! Every subcommand writes a CSV (UTF-8, `\n`, header row) and optionally an
//! SVG rendering of the same data. Output depends only on the flags.
//! Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.

mod svg;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::decomp::{canonical_partition, Convention, ScrambleSequence};
use crate::doublewell::{build, DoubleWellParams, DoubleWellSystem};
use crate::error::Error;
use crate::exec::Exec;
use crate::numtheory::{omega_table, CensusResult};
use crate::sweep::{scramble_sweep, spread_scan};
use svg::Series;

pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "hilbert-lattice",
    version,
    about = "Lattice structure from finite-dimensional Hilbert spaces"
)]
pub struct Cli {
    /// Run every loop on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ω(n) and ω(n) for every integer strictly inside a range.
    Census(CensusArgs),
    /// Energy spectrum and selected wavefunctions of the double well.
    Spectrum(SpectrumArgs),
    /// Tr(H_tunnel²) along one seeded scrambling sequence.
    ScrambleSweep(SweepArgs),
    /// Tunneling spread and projected energy of every eigenstate.
    SpreadScan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct Output {
    /// CSV destination (stdout if omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write an SVG plot here.
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CensusArgs {
    /// Exclusive lower bound, e.g. `18446744073709546616` or `2^64-5000`.
    #[arg(long, requires = "hi", conflicts_with_all = ["center", "halfwidth"])]
    pub lo: Option<String>,
    /// Exclusive upper bound.
    #[arg(long, requires = "lo")]
    pub hi: Option<String>,
    /// Range center; the census covers center ± halfwidth, exclusive.
    #[arg(long, default_value = "2^64")]
    pub center: String,
    #[arg(long, default_value_t = 5000)]
    pub halfwidth: u128,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct WellArgs {
    /// Half-width of the lattice, N = 2l + 1.
    #[arg(long, default_value_t = 150)]
    pub l: usize,
    /// Central barrier height (default: V_edge / 3).
    #[arg(long)]
    pub v0: Option<f64>,
    /// Edge barrier height (default: 10‖π̂²/2‖₂).
    #[arg(long)]
    pub v_edge: Option<f64>,
}

impl WellArgs {
    fn params(&self) -> DoubleWellParams {
        let mut p = DoubleWellParams::with_l(self.l);
        if let Some(v_edge) = self.v_edge {
            p.v_edge = v_edge;
            p.v0 = v_edge / 3.0;
        }
        if let Some(v0) = self.v0 {
            p.v0 = v0;
        }
        p
    }
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub well: WellArgs,
    /// Wavefunction CSV (default: `wavefunctions.csv` next to --out).
    #[arg(long)]
    pub wavefunctions: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub well: WellArgs,
    /// Swap counts: `a..b` (inclusive), `a..=b`, or a comma list.
    #[arg(long)]
    pub swaps: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ConventionArg {
    Weight,
    Unit,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Weight => Convention::Weight,
            ConventionArg::Unit => Convention::Unit,
        }
    }
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub well: WellArgs,
    /// `canonical` and/or `scrambled:k1,k2,…`.
    #[arg(long, default_value = "canonical,scrambled:30")]
    pub partitions: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = ConventionArg::Weight)]
    pub convention: ConventionArg,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numerical(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Numerical(_) => EXIT_NUMERICAL,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NoConvergence { .. } | Error::NotFinite(_) | Error::NotHermitian { .. } => {
                CliError::Numerical(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

/// Parses arguments, runs, reports errors on stderr and returns the exit
/// code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    match &cli.command {
        Command::Census(a) => cmd_census(a, exec),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::ScrambleSweep(a) => cmd_scramble_sweep(a, exec),
        Command::SpreadScan(a) => cmd_spread_scan(a, exec),
    }
}

/// Lossless 17-significant-digit rendering.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// Parses `123`, `2^64`, `2^64-5000`, `2^64+1`.
pub fn parse_u128_expr(s: &str) -> Result<u128, CliError> {
    let bad = || CliError::Usage(format!("cannot parse integer expression {s:?}"));
    let s = s.trim();
    let mut total: Option<u128> = None;
    let mut sign = 1i8;
    let mut rest = s;
    loop {
        let end = rest[1.min(rest.len())..]
            .find(['+', '-'])
            .map(|i| i + 1)
            .unwrap_or(rest.len());
        let term = rest[..end].trim();
        let value = match term.split_once('^') {
            Some((b, e)) => {
                let b: u128 = b.trim().parse().map_err(|_| bad())?;
                let e: u32 = e.trim().parse().map_err(|_| bad())?;
                b.checked_pow(e).ok_or_else(bad)?
            }
            None => term.parse().map_err(|_| bad())?,
        };
        total = Some(match (total, sign) {
            (None, _) => value,
            (Some(t), 1) => t.checked_add(value).ok_or_else(bad)?,
            (Some(t), _) => t.checked_sub(value).ok_or_else(bad)?,
        });
        if end == rest.len() {
            break;
        }
        sign = if rest.as_bytes()[end] == b'+' { 1 } else { -1 };
        rest = &rest[end + 1..];
        if rest.is_empty() {
            return Err(bad());
        }
    }
    total.ok_or_else(bad)
}

/// `a..b` and `a..=b` are inclusive; otherwise a comma-separated list.
pub fn parse_swaps(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("cannot parse swap list {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        Ok((a..=b).collect())
    } else {
        s.split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionSpec {
    Canonical,
    Scrambled(usize),
}

impl PartitionSpec {
    pub fn label(&self) -> String {
        match self {
            PartitionSpec::Canonical => "canonical".into(),
            PartitionSpec::Scrambled(k) => format!("scrambled:{k}"),
        }
    }
}

/// `canonical,scrambled:30,60` → [Canonical, Scrambled(30), Scrambled(60)].
/// Bare numbers continue the preceding `scrambled:` list.
pub fn parse_partitions(s: &str) -> Result<Vec<PartitionSpec>, CliError> {
    let bad = |t: &str| CliError::Usage(format!("bad partition token {t:?}"));
    let mut out = Vec::new();
    let mut in_scrambled = false;
    for token in s.split(',').map(str::trim) {
        if token == "canonical" {
            out.push(PartitionSpec::Canonical);
            in_scrambled = false;
        } else if let Some(k) = token.strip_prefix("scrambled:") {
            out.push(PartitionSpec::Scrambled(k.parse().map_err(|_| bad(token))?));
            in_scrambled = true;
        } else if in_scrambled {
            out.push(PartitionSpec::Scrambled(
                token.parse().map_err(|_| bad(token))?,
            ));
        } else {
            return Err(bad(token));
        }
    }
    if out.is_empty() {
        return Err(bad(s));
    }
    Ok(out)
}

fn csv_writer(path: Option<&Path>) -> Result<csv::Writer<Box<dyn Write>>, CliError> {
    let sink: Box<dyn Write> = match path {
        Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    };
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink))
}

fn write_svg(path: Option<&PathBuf>, render: impl FnOnce() -> String) -> Result<(), CliError> {
    if let Some(p) = path {
        std::fs::write(p, render())?;
    }
    Ok(())
}

fn build_system(well: &WellArgs) -> Result<DoubleWellSystem, CliError> {
    let params = well.params();
    params.validate()?;
    Ok(build(params)?)
}

fn cmd_census(a: &CensusArgs, exec: Exec) -> Result<(), CliError> {
    let (lo, hi) = match (&a.lo, &a.hi) {
        (Some(lo), Some(hi)) => (parse_u128_expr(lo)?, parse_u128_expr(hi)?),
        _ => {
            let c = parse_u128_expr(&a.center)?;
            let lo = c
                .checked_sub(a.halfwidth)
                .ok_or_else(|| CliError::Usage("halfwidth exceeds center".into()))?;
            let hi = c
                .checked_add(a.halfwidth)
                .ok_or_else(|| CliError::Usage("range overflows 128 bits".into()))?;
            (lo, hi)
        }
    };
    let rows = omega_table(lo, hi, exec)?;
    let summary = CensusResult::from_rows(lo, hi, &rows);

    let mut w = csv_writer(a.output.out.as_deref())?;
    w.write_record(["n", "omega_big", "omega_distinct"])?;
    for r in &rows {
        w.write_record([
            r.n.to_string(),
            r.big_omega.to_string(),
            r.small_omega.to_string(),
        ])?;
    }
    w.flush()?;
    eprintln!(
        "count,mean,std\n{},{},{}",
        summary.count,
        fmt_f64(summary.mean_omega),
        fmt_f64(summary.std_omega)
    );
    write_svg(a.output.svg.as_ref(), || {
        let bins: Vec<(u32, u64)> = summary.histogram.iter().map(|(&k, &c)| (k, c)).collect();
        svg::histogram(&format!("Omega(n), {lo} < n < {hi}"), "Omega(n)", &bins)
    })
}

fn cmd_spectrum(a: &SpectrumArgs) -> Result<(), CliError> {
    let sys = build_system(&a.well)?;
    let n = sys.dim();
    let energies = sys.energies();

    let mut w = csv_writer(a.output.out.as_deref())?;
    w.write_record(["n", "E_n"])?;
    for (k, e) in energies.iter().enumerate() {
        w.write_record([(k + 1).to_string(), fmt_f64(*e)])?;
    }
    w.flush()?;

    let wf_path = a.wavefunctions.clone().or_else(|| {
        a.output
            .out
            .as_ref()
            .map(|p| p.with_file_name("wavefunctions.csv"))
    });
    if let Some(path) = wf_path {
        let mut states: Vec<usize> = vec![1, 2, n.saturating_sub(3)];
        states.retain(|&k| k >= 1 && k <= n);
        states.dedup();
        let waves = states
            .iter()
            .map(|&k| sys.wavefunction(k))
            .collect::<crate::Result<Vec<_>>>()?;
        let phi = sys.pair.phi_values();
        let v = sys.potential_values();
        let mut w = csv_writer(Some(&path))?;
        let mut head = vec!["j".to_string(), "phi_j".into(), "V_j".into()];
        head.extend(states.iter().map(|k| format!("psi_{k}")));
        w.write_record(&head)?;
        for s in 0..n {
            let mut row = vec![sys.site(s).to_string(), fmt_f64(phi[s]), fmt_f64(v[s])];
            row.extend(waves.iter().map(|wf| fmt_f64(wf.amplitudes[s])));
            w.write_record(&row)?;
        }
        w.flush()?;
    }
    write_svg(a.output.svg.as_ref(), || {
        let pts = energies
            .iter()
            .enumerate()
            .map(|(k, &e)| ((k + 1) as f64, e))
            .collect();
        svg::scatter(
            "Double-well energy spectrum",
            "n",
            "E_n",
            &[Series {
                name: "E_n",
                points: pts,
            }],
            false,
        )
    })
}

fn cmd_scramble_sweep(a: &SweepArgs, exec: Exec) -> Result<(), CliError> {
    let base = canonical_partition(a.well.l)?;
    let max = ScrambleSequence::new(&base, a.seed)?.max_swaps();
    let counts = match &a.swaps {
        Some(s) => parse_swaps(s)?,
        None => (0..=max).collect(),
    };
    // Validate bounds before the eigensolve.
    if let Some(&k) = counts.iter().find(|&&k| k > max) {
        return Err(Error::TooManySwaps { requested: k, max }.into());
    }
    let sys = build_system(&a.well)?;
    let points = scramble_sweep(&sys, &base, &counts, a.seed, exec)?;

    let mut w = csv_writer(a.output.out.as_deref())?;
    w.write_record(["n_swaps", "tunnel_trace"])?;
    for p in &points {
        w.write_record([p.n_swaps.to_string(), fmt_f64(p.tunnel_trace)])?;
    }
    w.flush()?;
    write_svg(a.output.svg.as_ref(), || {
        let pts = points
            .iter()
            .map(|p| (p.n_swaps as f64, p.tunnel_trace))
            .collect();
        svg::scatter(
            &format!("Tr(H_tunnel^2) vs swaps, seed {}", a.seed),
            "swaps",
            "Tr(H_tunnel^2)",
            &[Series {
                name: "trace",
                points: pts,
            }],
            false,
        )
    })
}

fn cmd_spread_scan(a: &ScanArgs, exec: Exec) -> Result<(), CliError> {
    let specs = parse_partitions(&a.partitions)?;
    let base = canonical_partition(a.well.l)?;
    let seq = ScrambleSequence::new(&base, a.seed)?;
    let partitions = specs
        .iter()
        .map(|spec| {
            let p = match spec {
                PartitionSpec::Canonical => base.clone(),
                PartitionSpec::Scrambled(k) => seq.partition_at(*k)?,
            };
            Ok((spec.label(), p))
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let sys = build_system(&a.well)?;
    let records = spread_scan(&sys, &partitions, a.convention.into(), exec)?;
    let n = sys.dim();

    let mut w = csv_writer(a.output.out.as_deref())?;
    w.write_record([
        "partition",
        "n",
        "E_n",
        "spread",
        "projected_energy",
        "note",
    ])?;
    for r in &records {
        let note = if r.n + 3 > n { "cyclic-artifact" } else { "" };
        w.write_record([
            r.partition.clone(),
            r.n.to_string(),
            fmt_f64(r.energy),
            fmt_opt(r.spread),
            fmt_opt(r.projected_energy),
            note.to_string(),
        ])?;
    }
    w.flush()?;
    write_svg(a.output.svg.as_ref(), || {
        let series: Vec<Series> = partitions
            .iter()
            .map(|(label, _)| Series {
                name: label,
                points: records
                    .iter()
                    .filter(|r| &r.partition == label)
                    .filter_map(|r| r.spread.map(|s| (r.energy, s)))
                    .collect(),
            })
            .collect();
        svg::scatter(
            "Tunneling spread of projected eigenstates",
            "E_n",
            "spread",
            &series,
            true,
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_expressions() {
        assert_eq!(parse_u128_expr("2^64").unwrap(), 1u128 << 64);
        assert_eq!(parse_u128_expr("2^64-5000").unwrap(), (1u128 << 64) - 5000);
        assert_eq!(parse_u128_expr("2^64+5000").unwrap(), (1u128 << 64) + 5000);
        assert_eq!(parse_u128_expr(" 17 ").unwrap(), 17);
        assert_eq!(parse_u128_expr("10-3+1").unwrap(), 8);
        assert!(parse_u128_expr("2^200").is_err());
        assert!(parse_u128_expr("3-5").is_err());
        assert!(parse_u128_expr("x").is_err());
        assert!(parse_u128_expr("5+").is_err());
    }

    #[test]
    fn swap_lists() {
        assert_eq!(parse_swaps("0..3").unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(parse_swaps("2..=3").unwrap(), vec![2, 3]);
        assert_eq!(parse_swaps("5,1,9").unwrap(), vec![5, 1, 9]);
        assert!(parse_swaps("4..1").is_err());
    }

    #[test]
    fn partition_lists() {
        assert_eq!(
            parse_partitions("canonical,scrambled:30,60").unwrap(),
            vec![
                PartitionSpec::Canonical,
                PartitionSpec::Scrambled(30),
                PartitionSpec::Scrambled(60)
            ]
        );
        assert!(parse_partitions("30").is_err());
        assert!(parse_partitions("scrambled:x").is_err());
    }

    #[test]
    fn float_format_is_lossless() {
        for x in [0.1, 1.0 / 3.0, 234.83469, -1e-300, 6.02214076e23] {
            assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        }
    }
}
