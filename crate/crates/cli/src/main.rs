//! `spectral`: command-line front end for spectral-core.
//!
//! Every command prints a JSON report (or CSV with `--format csv`).
//! Exit codes: 0 success, 2 input error, 3 domain or contract error.

mod commands;
mod problem;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spectral_core::constants;

use crate::commands::ScanArgs;
use crate::problem::InvariantInput;
use crate::report::{input, CliError, CommandEcho, Conventions, Outcome, ReportDocument, SCHEMA};

#[derive(Parser)]
#[command(name = "spectral", version, about = "Twisted Dirac spectra, Floquet symbols and spin invariants")]
struct Cli {
    /// Print the convention block and exit.
    #[arg(long)]
    convention: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form or discrete model spectra.
    Spectrum {
        #[command(subcommand)]
        kind: SpectrumKind,
    },
    /// Locate twists in one period where the discrete circle operator has a kernel.
    TwistScan(TwistScanArgs),
    /// Unit-circle invertibility test of a Laurent symbol.
    Fredholm {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, default_value_t = constants::CIRCLE_GRID)]
        grid: usize,
        /// Ascending finite-section sizes, e.g. 16,32,64.
        #[arg(long, value_delimiter = ',')]
        sections: Vec<usize>,
    },
    /// Half-line index of a Fredholm symbol.
    Index {
        file: PathBuf,
        #[arg(long)]
        tol: Option<f64>,
        /// Also count kernel and cokernel on a finite section of this many periods.
        #[arg(long)]
        section: Option<usize>,
    },
    /// Spectral flow of a one-parameter family.
    SpectralFlow {
        file: PathBuf,
        #[arg(long, default_value_t = 200)]
        steps: usize,
    },
    /// Exact spin invariants.
    Invariant {
        #[command(subcommand)]
        kind: InvariantKind,
    },
    /// Intersection forms.
    Forms {
        #[command(subcommand)]
        action: FormsAction,
    },
}

#[derive(Subcommand)]
enum SpectrumKind {
    Circle {
        #[arg(long, default_value = "bounding")]
        spin: String,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        c: f64,
        /// Eigenvalues with |λ| ≤ band are listed.
        #[arg(long, default_value_t = 3)]
        band: usize,
        /// Eigensolve the discrete operator on this many sites instead.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value = "spectral")]
        scheme: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    Sphere {
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 3)]
        kmax: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Squared spectrum of circle × S^l up to a cutoff.
    Product {
        #[arg(long, default_value = "bounding")]
        spin: String,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        c: f64,
        #[arg(long)]
        l: u32,
        #[arg(long, default_value_t = 10.0)]
        cutoff: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Args)]
struct TwistScanArgs {
    #[arg(long)]
    spin: String,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    c_from: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    c_to: f64,
    #[arg(long, default_value_t = 200)]
    steps: usize,
    #[arg(long, default_value_t = constants::DEFAULT_GRID)]
    grid: usize,
    #[arg(long, default_value = "spectral")]
    scheme: String,
    /// Mass of the two-component operator D⊗σx + m·1⊗σz; 0 scans D itself.
    #[arg(long, default_value_t = 0.0)]
    mass: f64,
    /// Relative threshold on min |λ| for a numerical kernel.
    #[arg(long, default_value_t = 1e-10)]
    zero_tol: f64,
    #[arg(long, value_enum, default_value_t)]
    format: Format,
}

#[derive(Subcommand)]
enum InvariantKind {
    /// α_n from analytic data; give the one datum matching n mod 8.
    Alpha {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_hyphen_values = true)]
        ind_plus: Option<i64>,
        #[arg(long)]
        dim_ker: Option<u64>,
        #[arg(long)]
        dim_ker_plus: Option<u64>,
        #[arg(long, allow_hyphen_values = true)]
        sign: Option<i64>,
    },
    /// ρ = sign(W)/8 mod 2.
    Rohlin {
        #[arg(long, allow_hyphen_values = true)]
        sig_w: i64,
        #[arg(long)]
        strict: bool,
    },
    /// w = ind + sign(W)/8.
    W {
        #[arg(long, allow_hyphen_values = true)]
        ind_plus: i64,
        #[arg(long, allow_hyphen_values = true)]
        sig_w: i64,
    },
    /// β = ρ − sign(V)/16 mod 2.
    Beta {
        #[arg(long, allow_hyphen_values = true)]
        rho: String,
        #[arg(long, allow_hyphen_values = true)]
        sig_v: i64,
        #[arg(long)]
        strict: bool,
    },
    /// w_cs = ind + sign(W)/8 − sign(V)/16.
    Wcs {
        #[arg(long, allow_hyphen_values = true)]
        ind_plus: i64,
        #[arg(long, allow_hyphen_values = true)]
        sig_w: i64,
        #[arg(long, allow_hyphen_values = true)]
        sig_v: i64,
    },
    /// Read the inputs from an [invariant] problem file.
    File { path: PathBuf },
}

#[derive(Subcommand)]
enum FormsAction {
    List,
    Show { name: String },
    /// Sum of named forms, e.g. "-E8+E8+3H".
    Sum {
        #[arg(allow_hyphen_values = true)]
        spec: String,
    },
    /// Load a [form] problem file.
    Load { path: PathBuf },
}

/// `SPECTRAL_TOL`, if set, must be a positive float.
fn eig_tol() -> Result<f64, CliError> {
    match std::env::var("SPECTRAL_TOL") {
        Err(_) => Ok(constants::DEFAULT_TOL),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t.is_finite() && t > 0.0 => Ok(constants::default_tol()),
            _ => Err(input(format!("SPECTRAL_TOL must be a positive number, got `{s}`"))),
        },
    }
}

fn run(command: Command) -> Result<(&'static str, Outcome, Format), CliError> {
    let tol = eig_tol()?;
    let json = Format::Json;
    Ok(match command {
        Command::Spectrum { kind } => match kind {
            SpectrumKind::Circle { spin, c, band, grid, scheme, format } => (
                "spectrum circle",
                commands::spectrum_circle(&spin, c, band, grid, &scheme, tol)?,
                format,
            ),
            SpectrumKind::Sphere { l, kmax, format } => {
                ("spectrum sphere", commands::spectrum_sphere(l, kmax)?, format)
            }
            SpectrumKind::Product { spin, c, l, cutoff, format } => (
                "spectrum product",
                commands::spectrum_product(&spin, c, l, cutoff)?,
                format,
            ),
        },
        Command::TwistScan(a) => {
            let out = commands::twist_scan(ScanArgs {
                spin: &a.spin,
                scheme: &a.scheme,
                c_from: a.c_from,
                c_to: a.c_to,
                steps: a.steps,
                grid: a.grid,
                mass: a.mass,
                zero_tol: a.zero_tol,
                eig_tol: tol,
            })?;
            ("twist-scan", out, a.format)
        }
        Command::Fredholm { file, tol, grid, sections } => {
            ("fredholm", commands::fredholm(&file, tol, grid, &sections)?, json)
        }
        Command::Index { file, tol, section } => ("index", commands::index(&file, tol, section)?, json),
        Command::SpectralFlow { file, steps } => {
            ("spectral-flow", commands::spectral_flow(&file, steps, tol)?, json)
        }
        Command::Invariant { kind } => {
            let inv = match kind {
                InvariantKind::File { path } => {
                    return Ok(("invariant", commands::invariant_file(&path)?, json))
                }
                InvariantKind::Alpha { n, ind_plus, dim_ker, dim_ker_plus, sign } => InvariantInput {
                    kind: "alpha".into(),
                    n: Some(n),
                    ind_plus,
                    dim_ker,
                    dim_ker_plus,
                    sign,
                    ..Default::default()
                },
                InvariantKind::Rohlin { sig_w, strict } => InvariantInput {
                    kind: "rohlin".into(),
                    sig_w: Some(sig_w),
                    strict,
                    ..Default::default()
                },
                InvariantKind::W { ind_plus, sig_w } => InvariantInput {
                    kind: "w".into(),
                    ind_plus: Some(ind_plus),
                    sig_w: Some(sig_w),
                    ..Default::default()
                },
                InvariantKind::Beta { rho, sig_v, strict } => InvariantInput {
                    kind: "beta".into(),
                    rho: Some(problem::RationalInput::Text(rho)),
                    sig_v: Some(sig_v),
                    strict,
                    ..Default::default()
                },
                InvariantKind::Wcs { ind_plus, sig_w, sig_v } => InvariantInput {
                    kind: "wcs".into(),
                    ind_plus: Some(ind_plus),
                    sig_w: Some(sig_w),
                    sig_v: Some(sig_v),
                    ..Default::default()
                },
            };
            ("invariant", commands::invariant(&inv)?, json)
        }
        Command::Forms { action } => {
            let out = match action {
                FormsAction::List => commands::forms_list()?,
                FormsAction::Show { name } => commands::forms_show(&name)?,
                FormsAction::Sum { spec } => commands::forms_sum(&spec)?,
                FormsAction::Load { path } => commands::forms_load(&path)?,
            };
            ("forms", out, json)
        }
    })
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if cli.convention {
        let block = serde_json::to_string_pretty(&Conventions::current()).expect("serializable");
        emit(&format!("{block}\n"));
        return ExitCode::SUCCESS;
    }
    let Some(command) = cli.command else {
        eprintln!("error: no command given; see `spectral --help`");
        return ExitCode::from(2);
    };

    let start = Instant::now();
    match run(command) {
        Ok((name, outcome, format)) => {
            match (format, outcome.csv) {
                (Format::Csv, Some(csv)) => emit(&csv),
                _ => {
                    let doc = ReportDocument {
                        schema: SCHEMA.into(),
                        command: CommandEcho {
                            name: name.into(),
                            argv: std::env::args().skip(1).collect(),
                        },
                        conventions: Conventions::current(),
                        tolerances: outcome.tolerances,
                        results: outcome.results,
                        timing_ms: start.elapsed().as_secs_f64() * 1e3,
                    };
                    emit(&doc.to_json());
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
