use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};

use qdot_cli::output::{self, Table};
use qdot_cli::records;
use qdot_core::heun::{admissible_roots, build_solution, sample_u, ROOT_TOL};
use qdot_core::numerov::{bound_states, find_eigenvalues, SpectrumRequest, DEFAULT_MAX_STATES};
use qdot_core::validation::{self, Expectations, Table as Report, ETA_FLOOR};
use qdot_core::{Error, GridSettings, InnerBoundary, PotentialKind};

const EXIT_FAILED_ROWS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;
const EXIT_NUMERICAL: u8 = 4;

/// Spectra of two electrons in a planar parabolic trap (atomic units; omega
/// is half the trap frequency).
#[derive(Parser)]
#[command(name = "qdot", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact polynomial solutions at the admissible frequencies.
    Poly(PolyArgs),
    /// Numerov eigenvalues in an energy window.
    Spectrum(SpectrumArgs),
    /// Negative-energy (l = 0) states; they depend on the inner cutoff.
    Bound(BoundArgs),
    /// Compare both engines with the published tables.
    Validate(ValidateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Grid flags; each falls back to its environment variable, then the default.
#[derive(Args)]
struct GridArgs {
    /// Inner cutoff in Bohr [default: 1e-3]
    #[arg(long, env = "QDOT_RMIN")]
    rmin: Option<f64>,
    /// Outer cutoff in Bohr [default: 40/sqrt(omega)]
    #[arg(long, env = "QDOT_RMAX")]
    rmax: Option<f64>,
    /// Grid points [default: 20000]
    #[arg(long, env = "QDOT_STEPS")]
    steps: Option<usize>,
    /// Eigenvalue tolerance in Ha [default: 1e-6]
    #[arg(long, env = "QDOT_TOL")]
    tol: Option<f64>,
}

impl GridArgs {
    fn settings(&self) -> GridSettings {
        let d = GridSettings::default();
        GridSettings {
            r_min: self.rmin.unwrap_or(d.r_min),
            r_max: self.rmax.or(d.r_max),
            steps: self.steps.unwrap_or(d.steps),
            tol: self.tol.unwrap_or(d.tol),
        }
    }
}

#[derive(Args)]
struct PolyArgs {
    /// Polynomial degree
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=20))]
    n: u32,
    #[arg(long)]
    l: u32,
    /// Only this root (ascending order, from 0)
    #[arg(long)]
    root_index: Option<usize>,
    /// Also emit u(r) on the default grid for each selected root
    #[arg(long)]
    samples: bool,
    /// Keep every k-th wavefunction sample
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    stride: u64,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

fn parse_potential(s: &str) -> Result<PotentialKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Args)]
struct SpectrumArgs {
    /// coulomb (1/r), log (ln r) or none
    #[arg(long, value_parser = parse_potential)]
    potential: PotentialKind,
    #[arg(long)]
    omega: f64,
    #[arg(long)]
    l: u32,
    #[arg(long, allow_hyphen_values = true)]
    eta_min: f64,
    #[arg(long, allow_hyphen_values = true)]
    eta_max: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_STATES)]
    max_states: usize,
    /// Also emit the normalised wavefunctions
    #[arg(long)]
    wavefunctions: bool,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    stride: u64,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long, value_parser = parse_potential)]
    potential: PotentialKind,
    #[arg(long)]
    omega: f64,
    /// Lowest energy searched, in Ha
    #[arg(long, default_value_t = ETA_FLOOR, allow_hyphen_values = true)]
    eta_floor: f64,
    /// Rejected: bound states exist only for l = 0.
    #[arg(long, hide = true)]
    l: Option<String>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    stride: u64,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct ValidateArgs {
    /// 1, 2, 3, 4, bound, poly, linearity, overlap or all
    #[arg(long, default_value = "all")]
    table: String,
    /// Expectations file replacing the built-in one
    #[arg(long)]
    expectations: Option<PathBuf>,
    #[command(flatten)]
    grid: GridArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

/// Failure after argument parsing, with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NoConvergence { .. } | Error::GridTooCoarse { .. } => EXIT_NUMERICAL,
            Error::Domain(_) | Error::Argument(_) | Error::DegreeTooLarge(_) | Error::Parse { .. } => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<output::OutputError> for Failure {
    fn from(e: output::OutputError) -> Self {
        Failure {
            code: EXIT_NUMERICAL,
            message: e.to_string(),
        }
    }
}

fn emit(tables: &[Table], format: Format) -> Result<(), Failure> {
    let text = match format {
        Format::Csv => output::to_csv(tables)?,
        Format::Json => output::to_json(tables)? + "\n",
    };
    print!("{text}");
    Ok(())
}

fn poly(args: &PolyArgs) -> Result<u8, Failure> {
    let roots = admissible_roots(args.n, args.l, ROOT_TOL)?;
    let indices: Vec<usize> = match args.root_index {
        Some(i) if i >= roots.roots.len() => {
            return Err(Error::Argument(format!(
                "root index {i} out of range: n = {}, l = {} has {} positive roots",
                args.n,
                args.l,
                roots.roots.len()
            ))
            .into())
        }
        Some(i) => vec![i],
        None => (0..roots.roots.len()).collect(),
    };
    let solutions = indices
        .iter()
        .map(|&i| build_solution(args.n, args.l, i))
        .collect::<Result<Vec<_>, _>>()?;
    if roots.asymptotic {
        eprintln!("note: t = 0 is also a root (omega -> infinity), the non-interacting Laguerre solution");
    }

    let mut tables = vec![records::heun_roots(args.n, args.l, &roots, &solutions)];
    tables.extend(solutions.iter().map(records::y_coefficients));
    if args.samples {
        let settings = args.grid.settings();
        for s in &solutions {
            let problem = settings.problem(PotentialKind::Coulomb, s.omega, s.l)?;
            let wave = sample_u(s, &problem.grid())?;
            tables.push(
                records::wavefunctions(&problem, [(s.root_index, &wave)], args.stride as usize)
                    .meta("solution", format!("n={} l={} root_index={}", s.n, s.l, s.root_index)),
            );
        }
    }
    emit(&tables, args.format)?;
    Ok(0)
}

fn spectrum(args: &SpectrumArgs) -> Result<u8, Failure> {
    let problem = args.grid.settings().problem(args.potential, args.omega, args.l)?;
    let request = SpectrumRequest::new(problem, args.eta_min, args.eta_max)
        .with_max_states(args.max_states)
        .with_tol(args.grid.settings().tol);
    let states = find_eigenvalues(&request)?;
    if states.is_empty() {
        eprintln!("note: no eigenvalue in [{}, {}] Ha", args.eta_min, args.eta_max);
    }
    let mut tables = vec![records::eigenvalues(&problem, &states)];
    if args.wavefunctions {
        let waves = states.iter().enumerate().map(|(i, s)| (i, &s.wave));
        tables.push(records::wavefunctions(&problem, waves, args.stride as usize));
    }
    emit(&tables, args.format)?;
    Ok(0)
}

fn bound(args: &BoundArgs) -> Result<u8, Failure> {
    let problem = args
        .grid
        .settings()
        .problem(args.potential, args.omega, 0)?
        .with_inner(InnerBoundary::CutoffSeed);
    let found = bound_states(&problem, args.eta_floor)?;
    if found.states.is_empty() {
        eprintln!(
            "note: no negative level above {} Ha at r_min = {}; the depth depends on the cutoff",
            args.eta_floor, found.r_min
        );
    }
    let mut tables = vec![records::eigenvalues(&problem, &found.states)];
    if let Some(ground) = found.states.first() {
        tables.push(records::wavefunctions(
            &problem,
            [(0, &ground.wave)],
            args.stride as usize,
        ));
    }
    emit(&tables, args.format)?;
    Ok(0)
}

fn validate(args: &ValidateArgs) -> Result<u8, Failure> {
    let selected: Vec<Report> = match args.table.as_str() {
        "all" => Report::ALL.to_vec(),
        name => vec![name.parse::<Report>().map_err(|_| Failure {
            code: EXIT_USAGE,
            message: format!(
                "unknown table `{name}` (expected one of {}, all)",
                Report::ALL.map(|t| t.name()).join(", ")
            ),
        })?],
    };
    let expectations = match &args.expectations {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure {
                code: EXIT_USAGE,
                message: format!("cannot read {}: {e}", path.display()),
            })?;
            Expectations::parse(&text)?
        }
        None => Expectations::embedded(),
    };
    let reports = validation::run_all(&selected, &expectations, &args.grid.settings())?;

    let mut tables = Vec::new();
    for r in &reports {
        let counted = r.rows.iter().filter(|row| row.counts()).count();
        let failed = r.failures().count();
        let state = if !r.is_conclusive() {
            "INCONCLUSIVE"
        } else if failed > 0 {
            "FAIL"
        } else {
            "PASS"
        };
        eprintln!("{state} {}: {}/{counted} rows pass", r.label, counted - failed);
        tables.extend(records::report(r));
    }
    emit(&tables, args.format)?;

    Ok(if reports.iter().any(|r| !r.is_conclusive()) {
        EXIT_INCONCLUSIVE
    } else if reports.iter().any(|r| !r.passed()) {
        EXIT_FAILED_ROWS
    } else {
        0
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Poly(a) => poly(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Bound(a) => {
            if let Some(l) = &a.l {
                Cli::command()
                    .error(
                        ErrorKind::ArgumentConflict,
                        format!(
                            "`bound` takes no --l (got {l}): bound states exist only for l = 0, because for \
                             l >= 1 the centrifugal term (l^2 - 1/4)/r^2 is repulsive"
                        ),
                    )
                    .exit();
            }
            bound(a)
        }
        Command::Validate(a) => validate(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
