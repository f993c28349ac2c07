//! The `freecurve` command line: argument handling, the worker pool and
//! JSON-lines reports with a trailing summary.

pub mod commands;
pub mod report;

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, Read, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

pub use report::Report;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping the number of worker threads.
pub const WORKERS_ENV: &str = "FREECURVE_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CommandName {
    /// List segments, components or reduced segments with their counts.
    Enumerate,
    /// Seeded curve certificates for classification-table cases and Płoski curves.
    Generate,
    /// Run checks over a certificate stream.
    Verify,
    /// Closed-form counts against brute force.
    Count,
    /// Tjurina numbers of a generated corpus or a certificate stream.
    Tjurina,
}

impl CommandName {
    fn name(self) -> &'static str {
        match self {
            CommandName::Enumerate => "enumerate",
            CommandName::Generate => "generate",
            CommandName::Verify => "verify",
            CommandName::Count => "count",
            CommandName::Tjurina => "tjurina",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Segments,
    Components,
    Hred,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Table1,
    Ploski,
    All,
}

#[derive(Debug, Parser)]
#[command(name = "freecurve", version, about = "Free plane curves with a linear Jacobian syzygy")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: CommandName,
    #[arg(long)]
    pub n: Option<u32>,
    /// Last degree of the range starting at `--n`.
    #[arg(long = "n-max")]
    pub n_max: Option<u32>,
    #[arg(long, value_enum)]
    pub what: Option<What>,
    #[arg(long, value_enum, default_value = "all")]
    pub family: FamilyArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Comma-separated check names, or `all`.
    #[arg(long)]
    pub checks: Option<String>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Certificate stream for `verify` and `tjurina`; `-` or absent reads standard input.
    pub input: Option<PathBuf>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(io::Error),
    /// A library error on inputs that passed validation.
    Internal(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage: {m}"),
            CliError::Io(e) => write!(f, "io: {e}"),
            CliError::Internal(m) => write!(f, "error: {m}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<freecurve::Error> for CliError {
    fn from(e: freecurve::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
            CliError::Internal(_) => EXIT_FAIL,
        }
    }
}

impl Cli {
    /// `(n, n_max)` with `n_max` defaulting to `n`.
    pub fn range(&self) -> Result<Option<(u32, u32)>, CliError> {
        match (self.n, self.n_max) {
            (None, None) => Ok(None),
            (None, Some(_)) => Err(CliError::Usage("--n-max needs --n".into())),
            (Some(n), m) => {
                let m = m.unwrap_or(n);
                if m < n {
                    return Err(CliError::Usage(format!("--n-max {m} is below --n {n}")));
                }
                Ok(Some((n, m)))
            }
        }
    }

    pub fn require_range(&self) -> Result<(u32, u32), CliError> {
        self.range()?
            .ok_or_else(|| CliError::Usage(format!("{} needs --n", self.command.name())))
    }
}

/// Worker pool sized by `FREECURVE_WORKERS` when set.
pub fn worker_pool() -> Result<rayon::ThreadPool, CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let k: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&k| k > 0)
            .ok_or_else(|| CliError::Usage(format!("{WORKERS_ENV} must be a positive integer, got '{v}'")))?;
        builder = builder.num_threads(k);
    }
    builder.build().map_err(|e| CliError::Internal(e.to_string()))
}

fn needs_input(cli: &Cli) -> bool {
    match cli.command {
        CommandName::Verify => true,
        CommandName::Tjurina => cli.n.is_none(),
        _ => false,
    }
}

fn read_input(cli: &Cli, stdin: &mut dyn BufRead) -> Result<Vec<u8>, CliError> {
    let mut buf = Vec::new();
    match &cli.input {
        Some(p) if p.as_os_str() != "-" => {
            let mut file = File::open(p).map_err(|e| CliError::Usage(format!("cannot open {}: {e}", p.display())))?;
            file.read_to_end(&mut buf)?;
        }
        _ => {
            stdin.read_to_end(&mut buf)?;
        }
    }
    Ok(buf)
}

fn execute(cli: &Cli, stdin: &mut dyn BufRead) -> Result<Report, CliError> {
    let pool = worker_pool()?;
    let input = if needs_input(cli) { read_input(cli, stdin)? } else { Vec::new() };
    pool.install(|| match cli.command {
        CommandName::Enumerate => commands::enumerate(cli),
        CommandName::Count => commands::count(cli),
        CommandName::Generate => commands::generate(cli),
        CommandName::Verify => commands::verify(cli, &mut input.as_slice()),
        CommandName::Tjurina if cli.n.is_some() => commands::tjurina(cli, None),
        CommandName::Tjurina => commands::tjurina(cli, Some(&mut input.as_slice())),
    })
}

/// Parses `args` (program name first), runs the command and writes the report.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let report = match execute(&cli, stdin) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "freecurve: {e}");
            return e.exit_code();
        }
    };
    let written = match &cli.out {
        Some(p) => File::create(p).and_then(|f| {
            let mut w = io::BufWriter::new(f);
            report.write_to(&mut w)
        }),
        None => report.write_to(stdout),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "freecurve: io: {e}");
        return EXIT_USAGE;
    }
    if report.failures() > 0 {
        let _ = writeln!(stderr, "freecurve: {} item(s) failed", report.failures());
    }
    report.exit_code()
}
