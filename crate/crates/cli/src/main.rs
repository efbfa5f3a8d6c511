use std::path::PathBuf;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ranksurf::conics::{pell_base_solution, pell_fundamental, slopes, ConicQ, PellIter, SearchOutcome};
use ranksurf::exactmath::rat::{parse_rat, rat_to_string};
use ranksurf::families::{self, ansatz_checks, check_family, parse_params, Params};
use ranksurf::scan::{emit_report, scan, ConicMethod, FiberSource, OutputFormat, ScanConfig};
use ranksurf::weierstrass::SurfaceQt;
use ranksurf::{Error, Rat};

/// Exit status for a completed run where some verification failed.
const VERIFY_FAILED: u8 = 1;
/// Exit status for bad arguments, unknown families and unreadable input.
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "ranksurf", version, about = "Rational elliptic surfaces: verification and fiber rank scans")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List registered families and their parameters.
    Families,
    /// Specialize a family over many fibers and certify rank lower bounds.
    Scan(ScanArgs),
    /// Check every claimed section, bisection and invariant of a family exactly.
    Verify(VerifyArgs),
    /// Rational points on X^2 = A T^2 + B.
    #[command(subcommand)]
    Conic(ConicCommand),
    /// c4, c6 and the discriminant of a surface.
    Invariants(InvariantsArgs),
    /// Residuals of the quadratic ansatz equations.
    #[command(subcommand)]
    Constraints(ConstraintsCommand),
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long)]
    family: String,
    /// Comma-separated overrides, e.g. `v=1,w=-1` or `u=-5/12`.
    #[arg(long, default_value = "")]
    params: String,
}

impl FamilyArgs {
    fn params(&self) -> Result<Params, Error> {
        parse_params(&self.params)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> OutputFormat {
        match f {
            Format::Text => OutputFormat::Text,
            Format::Csv => OutputFormat::Csv,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Auto,
    Pell,
    Chord,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    family: FamilyArgs,
    /// Integer fibers `lo..hi`, both ends included.
    #[arg(long, value_parser = parse_range, conflicts_with = "conic", allow_hyphen_values = true)]
    range: Option<(i64, i64)>,
    /// Number of fibers to take from the family's conic.
    #[arg(long)]
    conic: Option<usize>,
    #[arg(long, value_enum, default_value = "auto")]
    conic_method: Method,
    #[arg(long, default_value_t = 1e-3)]
    target_error: f64,
    /// Naive point search bound; 0 disables the search.
    #[arg(long, default_value_t = 0)]
    search_height: u64,
    /// Worker threads (0: one per core). RANKSURF_THREADS overrides this.
    #[arg(long, default_value_t = 0)]
    parallelism: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    family: FamilyArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum ConicCommand {
    /// Find a point by bounded search and list further points by chord slopes.
    Solve {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value_t = 100)]
        bound: u64,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Solutions of x^2 - D t^2 = N from the fundamental unit.
    Pell {
        #[arg(long)]
        d: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, default_value_t = 5)]
        count: usize,
        /// Largest t tried for the first solution.
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
}

#[derive(Args)]
struct InvariantsArgs {
    /// JSON file `{"a2": [...], "a4": [...], "a6": [...]}` with coefficients
    /// from the constant term up.
    #[arg(long, conflicts_with = "family")]
    surface: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value = "")]
    params: String,
}

#[derive(Subcommand)]
enum ConstraintsCommand {
    /// Evaluate the ansatz equations on a family's claimed points.
    Check {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        json: bool,
    },
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound in {s:?}"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound in {s:?}"))?;
    Ok((lo, hi))
}

enum Failure {
    Usage(String),
    Runtime(String),
    /// stdout was closed by the reader, e.g. `ranksurf families | head`.
    Closed,
}

fn write_stdout(args: std::fmt::Arguments<'_>) -> Result<(), Failure> {
    match std::io::stdout().lock().write_fmt(args) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Err(Failure::Closed),
        Err(e) => Err(Failure::Runtime(format!("cannot write to stdout: {e}"))),
    }
}

macro_rules! out {
    ($($arg:tt)*) => { write_stdout(format_args!($($arg)*))? };
}

macro_rules! outln {
    ($($arg:tt)*) => { write_stdout(format_args!("{}\n", format_args!($($arg)*)))? };
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse(_)
            | Error::Config(_)
            | Error::InvalidParams(_)
            | Error::UnknownFamily(_)
            | Error::SideCondition(_)
            | Error::ZeroDenominator { .. }
            | Error::SquareDiscriminant(_)
            | Error::Json(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Families => families_cmd(),
        Command::Scan(a) => scan_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Conic(c) => conic_cmd(c),
        Command::Invariants(a) => invariants_cmd(a),
        Command::Constraints(ConstraintsCommand::Check { family, json }) => constraints_cmd(family, json),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(VERIFY_FAILED),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(VERIFY_FAILED)
        }
        Err(Failure::Closed) => ExitCode::SUCCESS,
    }
}

fn families_cmd() -> Outcome {
    for f in families::registry().iter() {
        outln!("{}  {}", f.name(), f.summary());
        for p in f.params() {
            let default = p.default.unwrap_or("derived");
            outln!("    {}={}  {}", p.name, default, p.doc);
        }
    }
    Ok(true)
}

fn scan_cmd(a: ScanArgs) -> Outcome {
    let source = match (a.range, a.conic) {
        (Some((lo, hi)), None) => FiberSource::Range { lo, hi },
        (None, Some(count)) => FiberSource::Conic {
            count,
            method: match a.conic_method {
                Method::Auto => ConicMethod::Auto,
                Method::Pell => ConicMethod::Pell,
                Method::Chord => ConicMethod::Chord,
            },
        },
        _ => return Err(Failure::Usage("give exactly one of --range or --conic".into())),
    };
    let cfg = ScanConfig {
        target_error: a.target_error,
        search_height: a.search_height,
        parallelism: a.parallelism,
        format: a.format.into(),
        ..ScanConfig::new(&a.family.family, a.family.params()?, source)
    };
    let report = scan(&cfg)?;
    let doc = emit_report(&report, cfg.format);
    match &a.output {
        Some(path) => std::fs::write(path, &doc)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => out!("{doc}"),
    }
    for line in &report.log {
        eprintln!("{line}");
    }
    let over: Vec<String> = report
        .rows
        .iter()
        .filter(|r| r.paper_rank.is_some_and(|p| r.rank_lower_bound as u32 > p))
        .map(|r| rat_to_string(&r.t0))
        .collect();
    if !over.is_empty() {
        eprintln!("certified bound exceeds the reference rank at t = {}", over.join(", "));
    }
    Ok(over.is_empty())
}

fn verify_cmd(a: VerifyArgs) -> Outcome {
    let spec = families::build(&a.family.family, &a.family.params()?)?;
    let report = check_family(&spec);
    if a.json {
        outln!("{}", serde_json::to_string_pretty(&report).map_err(Error::from)?);
    } else {
        out!("{report}");
    }
    Ok(report.all_passed)
}

fn rat_arg(name: &str, s: &str) -> Result<Rat, Failure> {
    parse_rat(s).map_err(|e| Failure::Usage(format!("--{name}: {e}")))
}

fn conic_cmd(c: ConicCommand) -> Outcome {
    match c {
        ConicCommand::Solve { a, b, bound, count } => {
            let conic = ConicQ::new(rat_arg("a", &a)?, rat_arg("b", &b)?)?;
            let base = match conic.small_search(bound) {
                SearchOutcome::Found(x, t) => (x, t),
                SearchOutcome::Obstructed => {
                    outln!("no real points");
                    return Ok(false);
                }
                SearchOutcome::NotFoundBelowBound => {
                    outln!("no point with T of height <= {bound}");
                    return Ok(false);
                }
            };
            let par = conic.parametrize(base.clone())?;
            let (xf, tf) = par.as_ratfns();
            outln!("base point (X, T) = ({}, {})", rat_to_string(&base.0), rat_to_string(&base.1));
            outln!("X(m) = {}", xf.display_in("m"));
            outln!("T(m) = {}", tf.display_in("m"));
            for (m, (x, t)) in slopes().filter_map(|m| par.point_at(&m).map(|p| (m, p))).take(count) {
                outln!("m = {:>6}  X = {}  T = {}", rat_to_string(&m), rat_to_string(&x), rat_to_string(&t));
            }
            Ok(true)
        }
        ConicCommand::Pell { d, n, count, bound } => {
            let (d, n) = (d.into(), n.into());
            let unit = pell_fundamental(&d)?;
            outln!("fundamental unit {} + {} sqrt({d})", unit.x, unit.t);
            let Some(base) = pell_base_solution(&d, &n, bound)? else {
                outln!("no solution of x^2 - {d} t^2 = {n} with t <= {bound}");
                return Ok(false);
            };
            for s in PellIter::new(&d, base, 200)?.take(count) {
                outln!("x = {}  t = {}", s.x, s.t);
            }
            Ok(true)
        }
    }
}

fn invariants_cmd(a: InvariantsArgs) -> Outcome {
    let surface: SurfaceQt = match (&a.surface, &a.family) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(Error::from)?
        }
        (None, Some(name)) => families::build(name, &parse_params(&a.params)?)?.surface,
        _ => return Err(Failure::Usage("give exactly one of --surface or --family".into())),
    };
    let inv = surface.invariants();
    let identity = &(&(&inv.c4 * &inv.c4) * &inv.c4) - &(&inv.c6 * &inv.c6) == inv.delta.scale(&Rat::from_integer(1728.into()));
    outln!("a2 = {}", surface.a2);
    outln!("a4 = {}", surface.a4);
    outln!("a6 = {}", surface.a6);
    outln!("c4 = {}", inv.c4);
    outln!("c6 = {}", inv.c6);
    outln!("discriminant = {}", inv.delta);
    outln!("deg discriminant = {}", inv.delta.degree().map_or("-".into(), |d| d.to_string()));
    outln!("squarefree = {}", inv.delta.is_squarefree());
    outln!("c4^3 - c6^2 = 1728 discriminant: {identity}");
    Ok(identity)
}

fn constraints_cmd(f: FamilyArgs, json: bool) -> Outcome {
    let spec = families::build(&f.family, &f.params()?)?;
    let rows = ansatz_checks(&spec)?;
    if json {
        outln!("{}", serde_json::to_string_pretty(&rows).map_err(Error::from)?);
    } else {
        for r in &rows {
            let kind = if r.bisection { "bisection" } else { "section" };
            if !r.matches_ansatz {
                outln!("SKIP {kind} {}: not of ansatz shape", r.label);
                continue;
            }
            let tag = if r.vanishes() { "PASS" } else { "FAIL" };
            let coeffs: Vec<String> = r.residuals.iter().map(rat_to_string).collect();
            outln!("{tag} {kind} {}: t^6..t^0 residuals [{}]", r.label, coeffs.join(", "));
        }
    }
    Ok(rows.iter().all(|r| !r.matches_ansatz || r.vanishes()))
}
