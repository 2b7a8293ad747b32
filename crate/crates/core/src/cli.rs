//! Command-line front end.
//!
//! Exit codes: 0 ok, 1 usage or parse error, 2 domain precondition,
//! 3 verification violation.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::distance::{psrd_simple, DistanceReport};
use crate::error::Error;
use crate::graph::BreakpointGraph;
use crate::oracle::{build_oracle_with_cap, enumerate_simple_with_cap, Generators, OracleTable};
use crate::perm::{parse_permutation, SignedPermutation};
use crate::sorter::{sort_simple, Checkpoint};
use crate::verify::{check_lemma9_with_cap, verify_theorems, Lemma9Report, VerificationReport, DEFAULT_LEMMA9_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "burnt-pancake", version, about = "Sort signed permutations by prefix signed reversals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Lower bound, and exact distance for simple permutations.
    Distance(PermArgs),
    /// Optimal flip sequence for a simple permutation.
    Sort {
        #[command(flatten)]
        input: PermArgs,
        /// Print one line per flip with its move kind and the result.
        #[arg(long)]
        trace: bool,
    },
    /// Breakpoint graph dump: edges, cycles and components.
    Analyze(PermArgs),
    /// Check the formulas against an exhaustive BFS table.
    Verify {
        n: usize,
        /// `prefix-signed-reversals` (alias `signed`) or `prefix-exchanges` (alias `unsigned`).
        #[arg(long, default_value = "prefix-signed-reversals")]
        generators: String,
        /// Also explore merging/splitting move sequences from hurdle-like states.
        #[arg(long)]
        lemma9: bool,
        /// Raise the size cap for the table (and for --lemma9).
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        machine: bool,
        /// Read the table from this file instead of running BFS.
        #[arg(long)]
        load_table: Option<PathBuf>,
        /// Write the table to this file after building it.
        #[arg(long)]
        dump_table: Option<PathBuf>,
    },
    /// List every simple signed permutation of length n.
    EnumerateSimple {
        n: usize,
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Seeded random signed permutations.
    Random {
        #[arg(long = "n")]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Rejection-sample until the permutation is simple.
        #[arg(long)]
        simple: bool,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_attempts: u64,
    },
}

#[derive(Debug, Args)]
pub struct PermArgs {
    /// Permutations, one per argument, e.g. "-7 3 -1 4 2 8 -6 -5".
    pub perms: Vec<String>,
    /// Read one permutation per line; blank lines and `#` comments are skipped.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// JSON output, one object per permutation.
    #[arg(long)]
    pub machine: bool,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Empty
        | Error::InvalidToken(_)
        | Error::ZeroEntry(_)
        | Error::Duplicate(_)
        | Error::Gap { .. }
        | Error::Table(_) => EXIT_USAGE,
        Error::Internal(_) => EXIT_VIOLATION,
        _ => EXIT_PRECONDITION,
    }
}

fn looks_like_permutation(arg: &str) -> bool {
    let mut tokens = arg.split_whitespace().peekable();
    tokens.peek().is_some()
        && tokens.all(|t| {
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        })
}

/// Moves permutation arguments behind `--` so that leading minus signs are
/// not mistaken for flags.
fn relocate_permutations(args: Vec<String>) -> Vec<String> {
    let takes_perms = args.iter().skip(1).find(|a| !a.starts_with('-'));
    if !matches!(takes_perms.map(String::as_str), Some("distance" | "sort" | "analyze")) || args.iter().any(|a| a == "--") {
        return args;
    }
    let mut rest = Vec::new();
    let mut perms = Vec::new();
    let mut after_file = false;
    for (i, a) in args.into_iter().enumerate() {
        if i > 0 && !after_file && looks_like_permutation(&a) {
            perms.push(a);
        } else {
            after_file = a == "--file";
            rest.push(a);
        }
    }
    rest.push("--".into());
    rest.extend(perms);
    rest
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<String>,
{
    let args = relocate_permutations(args.into_iter().map(Into::into).collect());
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(CliError::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

#[derive(Debug)]
enum CliError {
    Domain(Error),
    Usage(String),
    Io(std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Distance(input) => for_each_perm(&input, out, err, |pi, batch, out| {
            let report = DistanceReport::new(pi);
            if input.machine {
                writeln!(out, "{}", to_json(&report))?;
            } else if batch {
                writeln!(out, "{}", report.to_line())?;
            } else {
                write!(out, "{}", report.to_text())?;
            }
            Ok(())
        }),
        Command::Sort { input, trace } => for_each_perm(&input, out, err, |pi, batch, out| {
            let bg = BreakpointGraph::new(pi);
            if !bg.is_simple() {
                return Err(CliError::Domain(Error::Precondition(format!(
                    "{pi} is not simple; use `distance` for its lower bound"
                ))));
            }
            let sorted = sort_simple(pi)?;
            // Self-check before anything is printed.
            if !sorted.flips.apply(pi)?.is_identity() {
                return Err(CliError::Domain(Error::Internal(format!(
                    "flips {} do not sort {pi}; trace: {:?}",
                    sorted.flips, sorted.checkpoints
                ))));
            }
            if input.machine {
                writeln!(out, "{}", to_json(&SortOutput::new(pi, &sorted.flips, &sorted.checkpoints)?))?;
            } else if batch && !trace {
                writeln!(out, "{pi}\t{}", sorted.flips)?;
            } else {
                writeln!(out, "{}", sorted.flips)?;
                if trace {
                    write!(out, "{}", sorted.to_text())?;
                }
            }
            Ok(())
        }),
        Command::Analyze(input) => for_each_perm(&input, out, err, |pi, batch, out| {
            let bg = BreakpointGraph::new(pi);
            if input.machine {
                writeln!(out, "{}", to_json(&bg.to_dump()))?;
            } else {
                if batch {
                    writeln!(out)?;
                }
                write!(out, "{}", bg.dump())?;
            }
            Ok(())
        }),
        Command::Verify { n, generators, lemma9, max_n, machine, load_table, dump_table } => {
            let generators: Generators = generators.parse().map_err(|_| {
                CliError::Usage(format!("unknown generator set `{generators}`"))
            })?;
            let table = match load_table {
                Some(path) => {
                    let table = OracleTable::read_from(fs::File::open(&path)?)?;
                    if table.n() != n || table.generators() != generators {
                        return Err(CliError::Usage(format!(
                            "{} holds n = {} {}, not n = {n} {generators}",
                            path.display(),
                            table.n(),
                            table.generators()
                        )));
                    }
                    table
                }
                None => build_oracle_with_cap(n, generators, max_n.unwrap_or(generators.default_cap()))?,
            };
            if let Some(path) = dump_table {
                table.write_to(std::io::BufWriter::new(fs::File::create(path)?))?;
            }
            let report = verify_theorems(&table);
            let lemma9_report = if lemma9 {
                Some(check_lemma9_with_cap(n, max_n.unwrap_or(DEFAULT_LEMMA9_CAP))?)
            } else {
                None
            };
            if machine {
                writeln!(out, "{}", to_json(&VerifyOutput { report: &report, lemma9: lemma9_report.as_ref() }))?;
            } else {
                write!(out, "{}", report.to_text())?;
                if let Some(r) = &lemma9_report {
                    write!(out, "{}", r.to_text())?;
                }
            }
            let ok = report.passed() && lemma9_report.as_ref().is_none_or(Lemma9Report::passed);
            Ok(if ok { EXIT_OK } else { EXIT_VIOLATION })
        }
        Command::EnumerateSimple { n, max_n } => {
            for pi in enumerate_simple_with_cap(n, max_n.unwrap_or(crate::oracle::DEFAULT_SIMPLE_CAP))? {
                writeln!(out, "{pi}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Random { n, seed, simple, count, max_attempts } => {
            if n == 0 {
                return Err(CliError::Domain(Error::Precondition("n must be at least 1".into())));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let pi = random_permutation(&mut rng, n, simple, max_attempts)?;
                writeln!(out, "{pi}")?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn random_permutation(rng: &mut ChaCha8Rng, n: usize, simple: bool, max_attempts: u64) -> Result<SignedPermutation, Error> {
    for _ in 0..max_attempts.max(1) {
        let mut entries: Vec<i32> = (1..=n as i32).collect();
        entries.shuffle(rng);
        for e in &mut entries {
            if rng.gen::<bool>() {
                *e = -*e;
            }
        }
        let pi = SignedPermutation::from_entries(entries)?;
        if !simple || BreakpointGraph::new(&pi).is_simple() {
            return Ok(pi);
        }
    }
    Err(Error::Precondition(format!("no simple permutation of length {n} found in {max_attempts} attempts")))
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("report types serialize")
}

#[derive(Serialize)]
struct SortOutput {
    permutation: String,
    flips: Vec<usize>,
    length: usize,
    psrd: usize,
    checkpoints: Vec<CheckpointOutput>,
}

#[derive(Serialize)]
struct CheckpointOutput {
    kind: String,
    flips: Vec<usize>,
    after: String,
}

impl SortOutput {
    fn new(pi: &SignedPermutation, flips: &crate::perm::FlipSequence, cps: &[Checkpoint]) -> Result<Self, Error> {
        Ok(SortOutput {
            permutation: pi.to_string(),
            flips: flips.lengths().to_vec(),
            length: flips.len(),
            psrd: psrd_simple(pi)?,
            checkpoints: cps
                .iter()
                .map(|c| CheckpointOutput {
                    kind: c.kind.to_string(),
                    flips: c.flips.lengths().to_vec(),
                    after: c.after.to_string(),
                })
                .collect(),
        })
    }
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    report: &'a VerificationReport,
    lemma9: Option<&'a Lemma9Report>,
}

/// Runs `f` on every permutation named on the command line or in `--file`.
/// Errors on individual permutations are reported and processing continues;
/// the first nonzero exit code wins.
fn for_each_perm<F>(input: &PermArgs, out: &mut dyn Write, err: &mut dyn Write, mut f: F) -> Result<i32, CliError>
where
    F: FnMut(&SignedPermutation, bool, &mut dyn Write) -> Result<(), CliError>,
{
    let mut texts: Vec<(String, String)> =
        input.perms.iter().enumerate().map(|(i, p)| (format!("argument {}", i + 1), p.clone())).collect();
    let from_file = input.file.is_some();
    if let Some(path) = &input.file {
        let content = fs::read_to_string(path)?;
        for (i, line) in content.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            texts.push((format!("{}:{}", path.display(), i + 1), line.to_string()));
        }
    }
    if texts.is_empty() {
        return Err(CliError::Usage("no permutation given".into()));
    }
    let batch = from_file || texts.len() > 1;
    let mut code = EXIT_OK;
    for (origin, text) in texts {
        let result = parse_permutation(&text).map_err(CliError::from).and_then(|pi| f(&pi, batch, out));
        let failure = match result {
            Ok(()) => continue,
            Err(CliError::Domain(e)) => (exit_code(&e), e.to_string()),
            Err(CliError::Usage(m)) => (EXIT_USAGE, m),
            Err(CliError::Io(e)) => return Err(CliError::Io(e)),
        };
        let _ = writeln!(err, "error: {origin}: {}", failure.1);
        if code == EXIT_OK {
            code = failure.0;
        }
    }
    Ok(code)
}
