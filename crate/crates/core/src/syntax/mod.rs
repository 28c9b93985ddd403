//! The NX0 subset of the TPTP language: lexing, parsing, printing, typing and
//! census, plus problem-level diagnostics and include resolution.

pub mod ast;
pub mod census;
pub mod lexer;
pub mod parser;
pub mod printer;
pub mod typing;

use std::collections::HashSet;
use std::fmt;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub use ast::*;
pub use census::{census, SyntaxStatistics};
pub use lexer::{tokenize, LexError, Pos, Token, TokenKind};
pub use parser::{parse_formula, parse_problem, parse_term, ParseError};
pub use printer::{print_formula, print_problem, print_statement, print_term, print_type};
pub use typing::{check_types, resolve_defaults, Signature, SymbolType, TypeIssue, TypedProblem, TypingError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Warning,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub pos: Pos,
    pub statement: Option<String>,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{sev}: {}: ", self.pos)?;
        if let Some(s) = &self.statement {
            write!(f, "in `{s}`: ")?;
        }
        f.write_str(&self.message)
    }
}

fn uses_nonclassical(s: &AnnotatedFormula) -> bool {
    let mut found = false;
    if let Some(f) = s.formula() {
        f.visit(&mut |g| found |= matches!(g, Formula::NonClassical { .. }));
    }
    found
}

/// Problem-level checks that the grammar cannot express.
pub fn diagnostics(p: &Problem) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let diag = |severity, s: &AnnotatedFormula, message: String| Diagnostic {
        severity,
        pos: s.pos,
        statement: Some(s.name.clone()),
        message,
    };
    let mut seen = HashSet::new();
    let mut logic_count = 0;
    let mut first_nonclassical: Option<&AnnotatedFormula> = None;
    for s in &p.statements {
        if !seen.insert((s.name.as_str(), s.role)) {
            out.push(diag(Severity::Warning, s, format!("duplicate statement name with role `{}`", s.role)));
        }
        if let Statement::Raw(_) = s.body {
            out.push(diag(Severity::Warning, s, "higher-order formula kept unparsed".into()));
        }
        if s.role.base == RoleBase::Logic {
            logic_count += 1;
            if logic_count > 1 {
                out.push(diag(Severity::Error, s, "more than one logic specification".into()));
            } else if let Some(nc) = first_nonclassical {
                out.push(diag(
                    Severity::Warning,
                    s,
                    format!("logic specification comes after non-classical connectives are used in `{}`", nc.name),
                ));
            }
        }
        if first_nonclassical.is_none() && uses_nonclassical(s) {
            first_nonclassical = Some(s);
        }
    }
    if let (0, Some(nc)) = (logic_count, first_nonclassical) {
        out.push(diag(Severity::Error, nc, "non-classical connectives used without a logic specification".into()));
    }
    out
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
    #[error("{path}: include file `{file}` not found")]
    IncludeNotFound { path: PathBuf, file: String },
    #[error("{path}: include cycle through `{file}`")]
    IncludeCycle { path: PathBuf, file: String },
}

/// Reads and parses `path`, splicing in included files. Includes are looked up
/// relative to the including file first, then in each of `include_dirs`.
pub fn load_problem(path: &Path, include_dirs: &[PathBuf]) -> Result<Problem, LoadError> {
    let mut stack = Vec::new();
    load_rec(path, include_dirs, &mut stack)
}

fn load_rec(path: &Path, include_dirs: &[PathBuf], stack: &mut Vec<PathBuf>) -> Result<Problem, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.into(), source })?;
    let parsed = parse_problem(&text).map_err(|source| LoadError::Parse { path: path.into(), source })?;
    let canonical = path.canonicalize().unwrap_or_else(|_| path.to_path_buf());
    stack.push(canonical);
    let mut out = Problem::default();
    for inc in &parsed.includes {
        let rel = Path::new(inc.path());
        let base = path.parent().map(|d| d.join(rel));
        let found = base
            .into_iter()
            .chain(include_dirs.iter().map(|d| d.join(rel)))
            .find(|c| c.is_file())
            .ok_or_else(|| LoadError::IncludeNotFound { path: path.into(), file: inc.path().into() })?;
        let key = found.canonicalize().unwrap_or_else(|_| found.clone());
        if stack.contains(&key) {
            return Err(LoadError::IncludeCycle { path: path.into(), file: inc.path().into() });
        }
        let sub = load_rec(&found, include_dirs, stack)?;
        out.statements.extend(
            sub.statements
                .into_iter()
                .filter(|s| inc.selection.as_ref().is_none_or(|names| names.contains(&s.name))),
        );
    }
    stack.pop();
    out.statements.extend(parsed.statements);
    Ok(out)
}
