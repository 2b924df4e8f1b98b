//! The `nslct` command-line tool.
//!
//! Exit codes: `0` success, `1` verification failed, `2` usage, parse or I/O
//! error, `3` validation error, `4` numeric error. Error messages on stderr
//! start with the library error variant name.

pub mod format;
pub mod suite;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::nslct::{nslct_direct, nslct_fast, nslct_inverse};
use crate::sampling::{lp_norm, SampledSignal};
use crate::stnslct::{stnslct_gram, stnslct_reconstruct, Normalization, WindowSpec};
use crate::symplectic::FreeSymplecticMatrix;
use crate::{Complex64, Error};
use format::{read_document, read_matrix, Document, ReadError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_NUMERIC: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "nslct", version, about = "Non-separable linear canonical transforms and their short-time variant")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Fast,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Norm {
    Pointwise,
    Constant,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Transform a signal; writes a spectrum (or a points file with --points).
    Transform {
        #[arg(long)]
        signal: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Fast)]
        method: Method,
        /// Evaluate at these points instead of the warped lattice (direct only).
        #[arg(long)]
        points: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Short-time transform of a signal with a window; writes a gram.
    Gram {
        #[arg(long)]
        signal: PathBuf,
        #[arg(long)]
        window: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, default_value_t = 1)]
        stride: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Invert a spectrum or reconstruct from a gram; writes a signal.
    Invert {
        /// Spectrum or gram file.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        matrix: PathBuf,
        /// Window used to build the gram (required for grams).
        #[arg(long)]
        window: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Norm::Pointwise)]
        norm: Norm,
        /// Print the relative L2 residual against this signal.
        #[arg(long)]
        reference: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a seeded verification suite and write a CSV report.
    Verify {
        /// One of all, parseval, moyal, bounded, heisenberg, pitt, lieb, hy, log.
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

/// Everything that can stop a command.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io { path: PathBuf, msg: String },
    Parse { path: PathBuf, line: usize, msg: String },
    Lib(Error),
    VerifyFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } | CliError::Parse { .. } => EXIT_USAGE,
            CliError::VerifyFailed(_) => EXIT_VERIFY_FAILED,
            CliError::Lib(e) => match e {
                Error::SymplecticViolation { .. }
                | Error::SingularB { .. }
                | Error::DimensionError(_)
                | Error::GridMismatch(_)
                | Error::BadParam(_)
                | Error::BadAlpha { .. }
                | Error::BadP(_)
                | Error::BadBox(_) => EXIT_VALIDATION,
                Error::CoverageError { .. } | Error::ZeroSignal(_) | Error::DomainError(_) => EXIT_NUMERIC,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "UsageError: {m}"),
            CliError::Io { path, msg } => write!(f, "IoError: {}: {msg}", path.display()),
            CliError::Parse { path, line, msg } => write!(f, "ParseError: {}:{line}: {msg}", path.display()),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::VerifyFailed(k) => write!(f, "VerificationFailed: {k} record(s) outside tolerance"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io { path: path.to_path_buf(), msg: e.to_string() })
}

fn lift(path: &Path, e: ReadError) -> CliError {
    match e {
        ReadError::Parse(p) => CliError::Parse { path: path.to_path_buf(), line: p.line, msg: p.msg },
        ReadError::Invalid(e) => CliError::Lib(e),
    }
}

fn load_document(path: &Path) -> Result<Document, CliError> {
    read_document(&read_text(path)?).map_err(|e| lift(path, e))
}

fn load_signal(path: &Path) -> Result<SampledSignal, CliError> {
    match load_document(path)? {
        Document::Signal(s) => Ok(s),
        other => Err(CliError::Usage(format!("{} holds a {}, expected a signal", path.display(), other.kind()))),
    }
}

fn load_matrix(path: &Path) -> Result<FreeSymplecticMatrix, CliError> {
    read_matrix(&read_text(path)?).map_err(|e| lift(path, e))
}

/// Write via a temporary file in the same directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Io { path: path.to_path_buf(), msg: e.to_string() };
    let name = path.file_name().ok_or_else(|| CliError::Usage(format!("{} is not a file path", path.display())))?;
    let tmp = path.with_file_name(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    fs::write(&tmp, contents).map_err(io)?;
    fs::rename(&tmp, path).map_err(|e| {
        let _ = fs::remove_file(&tmp);
        io(e)
    })
}

fn relative_residual(got: &SampledSignal, reference: &SampledSignal) -> Result<f64, CliError> {
    let diff = got.combine(Complex64::new(1.0, 0.0), reference, Complex64::new(-1.0, 0.0))?;
    Ok(lp_norm(&diff, 2.0)? / lp_norm(reference, 2.0)?)
}

/// Run one parsed command; human-readable output goes to stdout.
pub fn execute(cmd: &Command) -> Result<(), CliError> {
    match cmd {
        Command::Transform { signal, matrix, method, points, out } => {
            let f = load_signal(signal)?;
            let m = load_matrix(matrix)?;
            let text = match (method, points) {
                (Method::Fast, Some(_)) => {
                    return Err(CliError::Usage("--points requires --method direct".into()));
                }
                (Method::Fast, None) => format::write_spectrum(&nslct_fast(&f, &m)?),
                (Method::Direct, None) => {
                    let lattice = nslct_fast(&f, &m)?;
                    let pts: Vec<_> = lattice.wgrid().points().collect();
                    let values = nslct_direct(&f, &m, &pts)?;
                    format::write_spectrum(&crate::sampling::Spectrum::new(lattice.wgrid().clone(), values)?)
                }
                (Method::Direct, Some(p)) => match load_document(p)? {
                    Document::Points { n, points, .. } => {
                        if n != f.grid().dim() {
                            return Err(Error::DimensionError(format!(
                                "points are {n}-D but the signal is {}-D",
                                f.grid().dim()
                            ))
                            .into());
                        }
                        let values = nslct_direct(&f, &m, &points)?;
                        format::write_points(n, &points, Some(&values))
                    }
                    other => {
                        return Err(CliError::Usage(format!(
                            "{} holds a {}, expected points",
                            p.display(),
                            other.kind()
                        )))
                    }
                },
            };
            write_atomic(out, &text)
        }
        Command::Gram { signal, window, matrix, stride, out } => {
            let f = load_signal(signal)?;
            let phi = load_signal(window)?;
            let m = load_matrix(matrix)?;
            if *stride == 0 || f.grid().counts().iter().any(|c| c % stride != 0) {
                return Err(CliError::Usage(format!(
                    "--stride {stride} must divide every axis count {:?}",
                    f.grid().counts()
                )));
            }
            let ws = WindowSpec::new(phi, *stride)?;
            write_atomic(out, &format::write_gram(&stnslct_gram(&f, &ws, &m)?))
        }
        Command::Invert { input, matrix, window, norm, reference, out } => {
            let m = load_matrix(matrix)?;
            let signal = match load_document(input)? {
                Document::Spectrum(s) => nslct_inverse(&s, &m)?,
                Document::Gram(g) => {
                    let Some(wpath) = window else {
                        return Err(CliError::Usage("inverting a gram needs --window".into()));
                    };
                    let ws = WindowSpec::new(load_signal(wpath)?, g.shifts().stride())?;
                    let mode = match norm {
                        Norm::Pointwise => Normalization::Pointwise,
                        Norm::Constant => Normalization::Constant,
                    };
                    stnslct_reconstruct(&g, &ws, &m, mode)?
                }
                other => {
                    return Err(CliError::Usage(format!(
                        "{} holds a {}, expected a spectrum or gram",
                        input.display(),
                        other.kind()
                    )))
                }
            };
            write_atomic(out, &format::write_signal(&signal))?;
            if let Some(r) = reference {
                let res = relative_residual(&signal, &load_signal(r)?)?;
                println!("relative_l2_residual={res:.6e}");
            }
            Ok(())
        }
        Command::Verify { suite: name, seed, out } => {
            if !suite::SUITES.contains(&name.as_str()) {
                return Err(CliError::Usage(format!(
                    "unknown suite '{name}', expected one of {}",
                    suite::SUITES.join(", ")
                )));
            }
            let reports = suite::run_suite(name, *seed)?;
            write_atomic(out, &suite::write_report(&reports))?;
            let failed = reports.iter().filter(|r| !r.passes()).count();
            let mut families: Vec<&str> = reports.iter().map(|r| r.name.as_str()).collect();
            families.dedup();
            for fam in &families {
                let rs: Vec<_> = reports.iter().filter(|r| r.name == *fam).collect();
                let bad = rs.iter().filter(|r| !r.passes()).count();
                println!("{fam}: {} records, {} failed", rs.len(), bad);
            }
            for r in reports.iter().filter(|r| !r.passes()) {
                println!("FAIL {r}");
            }
            if failed > 0 {
                Err(CliError::VerifyFailed(failed))
            } else {
                Ok(())
            }
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("NSLCT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("NSLCT_THREADS='{v}' must be a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure {n} threads: {e}")))
}

/// Parse the process arguments, run, and return the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match configure_threads().and_then(|_| execute(&cli.command)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
