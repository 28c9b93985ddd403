//! The `ntf` command-line front end.
//!
//! Results go to standard output, diagnostics to standard error. Semantic
//! commands (`check-model`, `find-countermodel`) print exactly one SZS status
//! line.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::derivation::{build_dag_partial, verify_structure};
use crate::embedding::embed;
use crate::kripke::{check_model, parse_interpretation, search_countermodel, write_interpretation, SearchBounds, SearchOutcome};
use crate::logic::problem_logic;
use crate::syntax::{
    census, check_types, diagnostics, load_problem, print_problem, resolve_defaults, Problem, Severity, TypedProblem,
};
use crate::szs::SzsStatus;

/// Environment variable naming a default include directory.
pub const INCLUDE_ENV: &str = "NTF_INCLUDE_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "ntf", version, about = "Tools for TPTP non-classical typed first-order problems")]
struct Cli {
    /// Directory searched for included files (repeatable).
    #[arg(long = "include-dir", global = true, env = INCLUDE_ENV, value_delimiter = ':')]
    include_dirs: Vec<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and type-check a problem, reporting diagnostics.
    Parse { file: PathBuf },
    /// Print syntax statistics.
    Census { file: PathBuf },
    /// Normalise and print the logic specification.
    CheckSpec { file: PathBuf },
    /// Write the classical embedding of a modal problem.
    Embed {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Precede each statement with a provenance comment.
        #[arg(long)]
        ledger: bool,
    },
    /// Evaluate a problem in a finite Kripke interpretation.
    CheckModel {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        problem: PathBuf,
    },
    /// Search for a finite countermodel.
    FindCountermodel {
        file: PathBuf,
        #[arg(long)]
        max_worlds: usize,
        #[arg(long)]
        max_elems: usize,
        /// Per-sort element bound, as SORT=N (repeatable).
        #[arg(long = "sort-bound", value_parser = parse_sort_bound)]
        sort_bounds: Vec<(String, usize)>,
        /// Atom-evaluation budget.
        #[arg(long)]
        budget: Option<u64>,
        /// Where to write a model; defaults to FILE with extension `.model.p`.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check a derivation's structure, optionally against its problem.
    VerifyDerivation {
        file: PathBuf,
        #[arg(long)]
        problem: Option<PathBuf>,
    },
}

fn parse_sort_bound(s: &str) -> Result<(String, usize), String> {
    let (sort, n) = s.split_once('=').ok_or_else(|| format!("expected SORT=N, got `{s}`"))?;
    let n = n.parse().map_err(|e| format!("bad bound in `{s}`: {e}"))?;
    Ok((sort.to_string(), n))
}

/// Exit code and SZS status of one invocation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub szs: Option<SzsStatus>,
}

impl CommandResult {
    fn ok() -> Self {
        CommandResult { exit_code: EXIT_OK, szs: None }
    }
}

/// An input problem (exit 1) or an internal failure (exit 2).
enum Failure {
    Input(String),
    Internal(String),
}

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::Internal(e.to_string())
}

/// Runs `ntf` with `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return CommandResult { exit_code: code, szs: None };
        }
    };
    match dispatch(&cli, out, err) {
        Ok(r) => r,
        Err(Failure::Input(m)) => {
            let _ = writeln!(err, "error: {m}");
            CommandResult { exit_code: EXIT_INPUT, szs: None }
        }
        Err(Failure::Internal(m)) => {
            let _ = writeln!(err, "internal error: {m}");
            CommandResult { exit_code: EXIT_INTERNAL, szs: None }
        }
    }
}

fn load(path: &Path, cli: &Cli) -> Result<Problem, Failure> {
    load_problem(path, &cli.include_dirs).map_err(input)
}

/// Loads and types a problem, failing on type errors.
fn load_typed(path: &Path, cli: &Cli) -> Result<TypedProblem, Failure> {
    let tp = resolve_defaults(&load(path, cli)?).map_err(input)?;
    let issues = check_types(&tp);
    if let Some(first) = issues.first() {
        return Err(Failure::Input(format!("{}: {first}", path.display())));
    }
    Ok(tp)
}

fn szs_line(out: &mut dyn Write, status: SzsStatus, file: &Path) -> Result<(), Failure> {
    writeln!(out, "{}", status.line(&file.display().to_string())).map_err(internal)
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<CommandResult, Failure> {
    match &cli.command {
        Command::Parse { file } => {
            let p = load(file, cli)?;
            let mut errors = 0;
            for d in diagnostics(&p) {
                errors += usize::from(d.severity == Severity::Error);
                writeln!(err, "{}: {d}", file.display()).map_err(internal)?;
            }
            let tp = resolve_defaults(&p).map_err(input)?;
            for issue in check_types(&tp) {
                errors += 1;
                writeln!(err, "{}: {issue}", file.display()).map_err(internal)?;
            }
            writeln!(out, "{}: {} statements, {} errors", file.display(), p.statements.len(), errors)
                .map_err(internal)?;
            Ok(CommandResult { exit_code: if errors == 0 { EXIT_OK } else { EXIT_INPUT }, szs: None })
        }
        Command::Census { file } => {
            writeln!(out, "{}", census(&load(file, cli)?)).map_err(internal)?;
            Ok(CommandResult::ok())
        }
        Command::CheckSpec { file } => {
            let logic = problem_logic(&load(file, cli)?).map_err(input)?;
            writeln!(out, "{logic}").map_err(internal)?;
            Ok(CommandResult::ok())
        }
        Command::Embed { file, output, ledger } => {
            let p = load(file, cli)?;
            let logic = problem_logic(&p).map_err(input)?;
            let tp = load_typed(file, cli)?;
            let emb = embed(&tp, &logic).map_err(input)?;
            let text = if *ledger { emb.print_with_ledger() } else { print_problem(&emb.problem) };
            std::fs::write(output, text).map_err(|e| internal(format!("{}: {e}", output.display())))?;
            for (class, n) in emb.ledger.counts() {
                writeln!(out, "{class}: {n}").map_err(internal)?;
            }
            Ok(CommandResult::ok())
        }
        Command::CheckModel { model, problem } => {
            let p = load(problem, cli)?;
            let logic = problem_logic(&p).map_err(input)?;
            let tp = load_typed(problem, cli)?;
            let (m, warnings) = parse_interpretation(&load(model, cli)?, Some(&tp.signature)).map_err(input)?;
            for w in warnings {
                writeln!(err, "{}: warning: {w}", model.display()).map_err(internal)?;
            }
            let verdict = check_model(&m, &tp, &logic).map_err(input)?;
            writeln!(out, "{verdict}").map_err(internal)?;
            let status = verdict.szs();
            szs_line(out, status, problem)?;
            Ok(CommandResult { exit_code: EXIT_OK, szs: Some(status) })
        }
        Command::FindCountermodel { file, max_worlds, max_elems, sort_bounds, budget, output } => {
            let p = load(file, cli)?;
            let logic = problem_logic(&p).map_err(input)?;
            let tp = load_typed(file, cli)?;
            let mut bounds = SearchBounds::new(*max_worlds, *max_elems);
            for (sort, n) in sort_bounds {
                bounds = bounds.with_sort_bound(sort, *n);
            }
            if let Some(b) = budget {
                bounds = bounds.with_budget(*b);
            }
            let (outcome, stats) = search_countermodel(&tp, &logic, &bounds).map_err(input)?;
            writeln!(
                err,
                "{}: {} frames, {} domain assignments, {} nodes, {} atom evaluations",
                file.display(),
                stats.frames,
                stats.domain_assignments,
                stats.nodes,
                stats.atoms
            )
            .map_err(internal)?;
            let (status, code) = match outcome {
                SearchOutcome::Found(m) => {
                    // Re-check independently of the search's own bookkeeping.
                    let verdict = check_model(&m, &tp, &logic).map_err(internal)?;
                    if !matches!(verdict.szs(), SzsStatus::CounterSatisfiable | SzsStatus::Satisfiable) {
                        return Err(Failure::Internal(format!("search returned a model that fails checking:\n{verdict}")));
                    }
                    let taken: BTreeSet<String> = tp
                        .signature
                        .symbols
                        .keys()
                        .chain(&tp.signature.sorts)
                        .chain(tp.problem.statements.iter().map(|s| &s.name))
                        .cloned()
                        .collect();
                    let stem = file.file_stem().and_then(|s| s.to_str()).unwrap_or("problem");
                    let name = format!("{}_model", stem.replace(|c: char| !c.is_ascii_alphanumeric(), "_").to_lowercase());
                    let name = if name.starts_with(|c: char| c.is_ascii_lowercase()) { name } else { format!("m{name}") };
                    let model_text = print_problem(&write_interpretation(&m, &name, &taken));
                    let path = output.clone().unwrap_or_else(|| file.with_extension("model.p"));
                    std::fs::write(&path, model_text).map_err(|e| internal(format!("{}: {e}", path.display())))?;
                    writeln!(out, "model written to {}", path.display()).map_err(internal)?;
                    (verdict.szs(), EXIT_OK)
                }
                SearchOutcome::NotFound => (SzsStatus::Unknown, EXIT_OK),
                SearchOutcome::BudgetExhausted => (SzsStatus::GaveUp, EXIT_BUDGET),
            };
            szs_line(out, status, file)?;
            Ok(CommandResult { exit_code: code, szs: Some(status) })
        }
        Command::VerifyDerivation { file, problem } => {
            let d = build_dag_partial(&load(file, cli)?).map_err(input)?;
            let tp = match problem {
                Some(path) => Some(resolve_defaults(&load(path, cli)?).map_err(input)?),
                None => None,
            };
            let report = verify_structure(&d, tp.as_ref());
            writeln!(out, "{report}").map_err(internal)?;
            Ok(CommandResult { exit_code: if report.passed() { EXIT_OK } else { EXIT_INPUT }, szs: None })
        }
    }
}
