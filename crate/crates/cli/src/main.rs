//! `whitham-mi`: modulational-instability diagnostics for Whitham-type
//! nonlocal dispersive equations.
//!
//! Every subcommand prints one table (CSV by default, JSON with
//! `--format json`) whose metadata lines echo the full run configuration;
//! identical invocations produce byte-identical output. Errors exit
//! nonzero with a single `error: <category>: <reason>` line on stderr.

mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use whitham_mi::bloch::{assemble_bloch, spectrum};
use whitham_mi::criticality::{critical_wavenumber, DEFAULT_INTERVAL};
use whitham_mi::indices::{classify, gamma_index, lambda_index, StabilityClass, DEFAULT_TIE_TOL};
use whitham_mi::reduction::{pencil_closed_form, product_discriminant};
use whitham_mi::stokes::solve_wave;
use whitham_mi::Symbol;

use table::{Cell, Table};

#[derive(Parser)]
#[command(
    name = "whitham-mi",
    version,
    about = "Decide modulational instability of small-amplitude periodic waves \
             in Whitham-type nonlocal dispersive equations",
    after_help = "Symbols: whitham | fkdv:<sigma> | ilw:<depth> | kdv | bbm (case-insensitive)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the table to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form stability indices at one wavenumber or over a grid.
    Index(IndexArgs),
    /// Locate the critical wavenumber where the index changes sign.
    Critical(CriticalArgs),
    /// Tabulate the sideband index Gamma over a wavenumber grid.
    Scan(ScanArgs),
    /// Solve one periodic traveling wave (coefficients or sampled profile).
    Wave(WaveArgs),
    /// Bloch spectra of the linearization about a solved wave.
    Bloch(BlochArgs),
    /// Reduced 3x3 pencil discriminants over a wavenumber grid.
    Pencil(PencilArgs),
}

#[derive(Args)]
struct IndexArgs {
    /// Dispersion symbol (whitham | fkdv:<sigma> | ilw:<depth> | kdv | bbm).
    #[arg(long)]
    symbol: String,
    /// Single wavenumber (exclusive with --kappa-range).
    #[arg(long)]
    kappa: Option<f64>,
    /// Wavenumber grid `lo,hi,n` (inclusive endpoints, n >= 2).
    #[arg(long, value_name = "LO,HI,N")]
    kappa_range: Option<String>,
}

#[derive(Args)]
struct CriticalArgs {
    /// Dispersion symbol.
    #[arg(long)]
    symbol: String,
    /// Search interval `lo,hi` (default 0.01,50).
    #[arg(long, value_name = "LO,HI")]
    interval: Option<String>,
    /// Relative tolerance of the root refinement.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(Args)]
struct ScanArgs {
    /// Dispersion symbol.
    #[arg(long)]
    symbol: String,
    /// Wavenumber grid `lo,hi,n` (inclusive endpoints, n >= 2).
    #[arg(long, value_name = "LO,HI,N")]
    kappa_range: String,
}

#[derive(Args)]
struct WaveArgs {
    /// Dispersion symbol.
    #[arg(long)]
    symbol: String,
    /// Wavenumber of the fundamental harmonic.
    #[arg(long)]
    kappa: f64,
    /// Amplitude parameter (first cosine coefficient), |a| <= 0.2.
    #[arg(long, default_value_t = 0.0)]
    a: f64,
    /// Constant-of-integration parameter, |b| <= 0.2.
    #[arg(long, default_value_t = 0.0)]
    b: f64,
    /// Galerkin truncation: cosine modes 0..=N.
    #[arg(long, default_value_t = 64)]
    modes: usize,
    /// Newton convergence tolerance on the full spectral residual.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Emit the sampled profile (z, w) on a uniform 512-point grid instead
    /// of the coefficient table.
    #[arg(long)]
    profile: bool,
}

#[derive(Args)]
struct BlochArgs {
    /// Dispersion symbol.
    #[arg(long)]
    symbol: String,
    /// Wavenumber of the fundamental harmonic.
    #[arg(long)]
    kappa: f64,
    /// Amplitude parameter, |a| <= 0.2.
    #[arg(long, default_value_t = 0.0)]
    a: f64,
    /// Constant-of-integration parameter, |b| <= 0.2.
    #[arg(long, default_value_t = 0.0)]
    b: f64,
    /// Fourier truncation: the Bloch matrix covers modes -N..=N.
    #[arg(long, default_value_t = 64)]
    modes: usize,
    /// Newton convergence tolerance of the wave solve.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Floquet-exponent grid `lo,hi,n` (inclusive endpoints, n >= 2).
    #[arg(long, value_name = "LO,HI,N", default_value = "0,0.25,101")]
    tau_range: String,
    /// Emit one growth-summary row per slice (tau, max_growth) instead of
    /// per-eigenvalue rows.
    #[arg(long)]
    growth: bool,
}

#[derive(Args)]
struct PencilArgs {
    /// Dispersion symbol.
    #[arg(long)]
    symbol: String,
    /// Single wavenumber (exclusive with --kappa-range).
    #[arg(long)]
    kappa: Option<f64>,
    /// Wavenumber grid `lo,hi,n` (inclusive endpoints, n >= 2).
    #[arg(long, value_name = "LO,HI,N")]
    kappa_range: Option<String>,
    /// Floquet exponent of the pencil, in [-1/2, 1/2].
    #[arg(long, default_value_t = 0.05)]
    tau: f64,
    /// Amplitude parameter, |a| <= 0.2.
    #[arg(long, default_value_t = 0.02)]
    a: f64,
}

enum CliError {
    /// Bad invocation (flag combinations, malformed ranges).
    Usage(String),
    /// A library computation failed; its display is category-prefixed.
    Lib(whitham_mi::Error),
    /// Pre-formatted full error line.
    Raw(String),
    Io(std::io::Error),
}

impl From<whitham_mi::Error> for CliError {
    fn from(e: whitham_mi::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn line(&self) -> String {
        match self {
            CliError::Usage(m) => format!("error: usage: {m}"),
            CliError::Lib(e) => format!("error: {e}"),
            CliError::Raw(m) => m.clone(),
            CliError::Io(e) => format!("error: io: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.line());
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let t = match &cli.command {
        Command::Index(args) => cmd_index(args)?,
        Command::Critical(args) => cmd_critical(args)?,
        Command::Scan(args) => cmd_scan(args)?,
        Command::Wave(args) => cmd_wave(args)?,
        Command::Bloch(args) => cmd_bloch(args)?,
        Command::Pencil(args) => cmd_pencil(args)?,
    };
    let body = match cli.format {
        Format::Csv => t.render_csv(),
        Format::Json => t.render_json(),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, body)?,
        None => print!("{body}"),
    }
    Ok(())
}

/// Parse `lo,hi,n` into an inclusive, increasing grid.
fn parse_grid(spec: &str, what: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = spec.split(',').collect();
    let usage = |d: &str| CliError::Usage(format!("{what} must be `lo,hi,n` with {d}: got {spec:?}"));
    if parts.len() != 3 {
        return Err(usage("three comma-separated fields"));
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| usage("numeric lo"))?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| usage("numeric hi"))?;
    let n: usize = parts[2].trim().parse().map_err(|_| usage("integer n"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(usage("finite lo < hi"));
    }
    if n < 2 {
        return Err(usage("n >= 2"));
    }
    Ok((0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect())
}

fn parse_interval(spec: &str) -> Result<(f64, f64), CliError> {
    let parts: Vec<&str> = spec.split(',').collect();
    let usage =
        || CliError::Usage(format!("interval must be `lo,hi` with finite lo < hi: got {spec:?}"));
    if parts.len() != 2 {
        return Err(usage());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| usage())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| usage())?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(usage());
    }
    Ok((lo, hi))
}

/// Resolve the `--kappa` / `--kappa-range` pair into a grid.
fn kappa_grid(kappa: Option<f64>, range: &Option<String>) -> Result<Vec<f64>, CliError> {
    match (kappa, range) {
        (Some(k), None) => Ok(vec![k]),
        (None, Some(spec)) => parse_grid(spec, "--kappa-range"),
        (Some(_), Some(_)) => Err(CliError::Usage(
            "--kappa and --kappa-range are mutually exclusive".into(),
        )),
        (None, None) => Err(CliError::Usage(
            "one of --kappa or --kappa-range is required".into(),
        )),
    }
}

fn cmd_index(args: &IndexArgs) -> Result<Table, CliError> {
    let sym = Symbol::parse(&args.symbol)?;
    let kappas = kappa_grid(args.kappa, &args.kappa_range)?;
    let mut t = Table::new(&["kappa", "gamma", "lambda", "classification"]);
    t.meta("command", "index");
    t.meta("symbol", sym);
    t.meta("kappa_count", kappas.len());
    t.meta("tie_tol", table::fmt_float(DEFAULT_TIE_TOL));
    for &kappa in &kappas {
        let gamma = gamma_index(&sym, kappa)?;
        let lambda = lambda_index(&sym, kappa)?;
        let class = classify(&sym, kappa, DEFAULT_TIE_TOL)?;
        t.row(vec![
            Cell::Float(kappa),
            Cell::Float(gamma),
            Cell::Float(lambda),
            Cell::Text(class.to_string()),
        ]);
    }
    Ok(t)
}

fn cmd_critical(args: &CriticalArgs) -> Result<Table, CliError> {
    let sym = Symbol::parse(&args.symbol)?;
    let interval = match &args.interval {
        Some(spec) => Some(parse_interval(spec)?),
        None => None,
    };
    let (lo, hi) = interval.unwrap_or(DEFAULT_INTERVAL);
    let result = critical_wavenumber(&sym, interval, args.tol).map_err(|e| match e {
        whitham_mi::Error::NoBracket { lo, hi } => CliError::Raw(format!(
            "error: bracket: no stability switch on interval [{lo}, {hi}]"
        )),
        other => CliError::Lib(other),
    })?;
    let mut t = Table::new(&["root", "bracket_lo", "bracket_hi", "residual"]);
    t.meta("command", "critical");
    t.meta("symbol", sym);
    t.meta("interval_lo", table::fmt_float(lo));
    t.meta("interval_hi", table::fmt_float(hi));
    t.meta("tol", table::fmt_float(args.tol));
    t.meta("evaluations", result.iterations);
    t.meta("transversal", result.transversal);
    t.row(vec![
        Cell::Float(result.root),
        Cell::Float(result.bracket.0),
        Cell::Float(result.bracket.1),
        Cell::Float(result.residual),
    ]);
    Ok(t)
}

fn cmd_scan(args: &ScanArgs) -> Result<Table, CliError> {
    let sym = Symbol::parse(&args.symbol)?;
    let zs = parse_grid(&args.kappa_range, "--kappa-range")?;
    let mut t = Table::new(&["z", "gamma"]);
    t.meta("command", "scan");
    t.meta("symbol", sym);
    t.meta("kappa_count", zs.len());
    for &z in &zs {
        t.row(vec![Cell::Float(z), Cell::Float(gamma_index(&sym, z)?)]);
    }
    Ok(t)
}

/// Shared wave-solve meta echo.
fn wave_meta(t: &mut Table, args_symbol: &Symbol, wave: &whitham_mi::TravelingWave, tol: f64) {
    t.meta("symbol", args_symbol);
    t.meta("kappa", table::fmt_float(wave.kappa));
    t.meta("a", table::fmt_float(wave.a));
    t.meta("b", table::fmt_float(wave.b));
    t.meta("modes", wave.cos_coeffs.len() - 1);
    t.meta("tol", table::fmt_float(tol));
    t.meta("c", table::fmt_float(wave.c));
    t.meta("residual_norm", table::fmt_float(wave.residual_norm));
    t.meta("iterations", wave.iterations);
}

fn cmd_wave(args: &WaveArgs) -> Result<Table, CliError> {
    let sym = Symbol::parse(&args.symbol)?;
    let wave = solve_wave(&sym, args.kappa, args.a, args.b, args.modes, args.tol)?;
    if args.profile {
        let mut t = Table::new(&["z", "w"]);
        t.meta("command", "wave-profile");
        wave_meta(&mut t, &sym, &wave, args.tol);
        t.meta("samples", 512);
        for i in 0..512 {
            let z = 2.0 * std::f64::consts::PI * i as f64 / 512.0;
            t.row(vec![Cell::Float(z), Cell::Float(wave.eval(z))]);
        }
        Ok(t)
    } else {
        let mut t = Table::new(&["n", "w_hat_n"]);
        t.meta("command", "wave");
        wave_meta(&mut t, &sym, &wave, args.tol);
        for (n, &w) in wave.cos_coeffs.iter().enumerate() {
            t.row(vec![Cell::Int(n as i64), Cell::Float(w)]);
        }
        Ok(t)
    }
}

fn cmd_bloch(args: &BlochArgs) -> Result<Table, CliError> {
    let sym = Symbol::parse(&args.symbol)?;
    let taus = parse_grid(&args.tau_range, "--tau-range")?;
    let wave = solve_wave(&sym, args.kappa, args.a, args.b, args.modes, args.tol)?;
    let slices: Vec<whitham_mi::SpectrumSlice> = taus
        .iter()
        .map(|&tau| -> Result<_, whitham_mi::Error> {
            spectrum(&assemble_bloch(&wave, tau, args.modes)?)
        })
        .collect::<Result<_, _>>()?;
    let overall = slices.iter().map(|s| s.max_growth).fold(0.0f64, f64::max);

    let mut t = Table::new(if args.growth {
        &["tau", "max_growth"][..]
    } else {
        &["tau", "re_mu", "im_mu"][..]
    });
    t.meta("command", if args.growth { "bloch-growth" } else { "bloch" });
    wave_meta(&mut t, &sym, &wave, args.tol);
    t.meta("bloch_modes", args.modes);
    t.meta("tau_count", taus.len());
    t.meta("tau_lo", table::fmt_float(taus[0]));
    t.meta("tau_hi", table::fmt_float(taus[taus.len() - 1]));
    t.meta("overall_max_growth", table::fmt_float(overall));
    for (tau, slice) in taus.iter().zip(&slices) {
        if args.growth {
            t.row(vec![Cell::Float(*tau), Cell::Float(slice.max_growth)]);
        } else {
            for mu in &slice.eigenvalues {
                t.row(vec![
                    Cell::Float(*tau),
                    Cell::Float(mu.re),
                    Cell::Float(mu.im),
                ]);
            }
        }
    }
    Ok(t)
}

fn cmd_pencil(args: &PencilArgs) -> Result<Table, CliError> {
    let sym = Symbol::parse(&args.symbol)?;
    let kappas = kappa_grid(args.kappa, &args.kappa_range)?;
    let mut t = Table::new(&[
        "kappa",
        "tau",
        "a",
        "delta_full",
        "delta_tau0",
        "lambda",
        "classification",
    ]);
    t.meta("command", "pencil");
    t.meta("symbol", sym);
    t.meta("kappa_count", kappas.len());
    t.meta("tau", table::fmt_float(args.tau));
    t.meta("a", table::fmt_float(args.a));
    for &kappa in &kappas {
        let pencil = pencil_closed_form(&sym, kappa, args.tau, args.a)?;
        let delta_tau0 = product_discriminant(&sym, kappa, args.tau)?;
        let lambda = lambda_index(&sym, kappa)?;
        let class = if pencil.discriminant.abs() <= DEFAULT_TIE_TOL {
            StabilityClass::Inconclusive
        } else if pencil.discriminant < 0.0 {
            StabilityClass::ModulationallyUnstable
        } else {
            StabilityClass::SpectrallyStable
        };
        t.row(vec![
            Cell::Float(kappa),
            Cell::Float(args.tau),
            Cell::Float(args.a),
            Cell::Float(pencil.discriminant),
            Cell::Float(delta_tau0),
            Cell::Float(lambda),
            Cell::Text(class.to_string()),
        ]);
    }
    Ok(t)
}
