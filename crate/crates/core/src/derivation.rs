//! TPTP derivations as DAGs, with structural, origin and completeness
//! checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::syntax::{symbol_key, Formula, GeneralTerm, Problem, RoleBase, Role, Statement, Term, TypedProblem};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DerivationError {
    #[error("node `{node}` cites `{parent}`, which is not in the derivation")]
    DanglingReference { node: String, parent: String },
    #[error("duplicate node name `{0}`")]
    DuplicateName(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    File { file: String, name: Option<String> },
    Inference { rule: String, info: Vec<GeneralTerm>, parents: Vec<String> },
    NameRef(String),
    /// `introduced(...)`, `theory(...)` and anything else without parents.
    Other(GeneralTerm),
    None,
}

impl Source {
    pub fn parents(&self) -> &[String] {
        match self {
            Source::Inference { parents, .. } => parents,
            Source::NameRef(n) => std::slice::from_ref(n),
            _ => &[],
        }
    }

    /// The SZS value of a `status(...)` entry in an inference's info list.
    pub fn status(&self) -> Option<&str> {
        let Source::Inference { info, .. } = self else { return None };
        info.iter().find_map(|g| match g {
            GeneralTerm::App(f, args) if f == "status" => args.first().and_then(GeneralTerm::as_word),
            _ => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub name: String,
    pub role: Role,
    /// `None` for nodes synthesised from nested inference records.
    pub body: Option<Statement>,
    pub source: Source,
}

impl Node {
    pub fn is_false(&self) -> bool {
        match &self.body {
            Some(Statement::Formula(Formula::False)) => true,
            Some(Statement::Raw(toks)) => toks.len() == 1 && toks[0] == "$false",
            _ => false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Derivation {
    pub nodes: BTreeMap<String, Node>,
    /// References to nodes outside the derivation, tolerated by
    /// [`build_dag_partial`].
    pub dangling: Vec<(String, String)>,
}

impl Derivation {
    /// `(child, parent)` pairs.
    pub fn edges(&self) -> BTreeSet<(String, String)> {
        self.nodes
            .values()
            .flat_map(|n| n.source.parents().iter().map(move |p| (n.name.clone(), p.clone())))
            .collect()
    }

    pub fn sinks(&self) -> impl Iterator<Item = &Node> {
        let cited: BTreeSet<&String> = self.nodes.values().flat_map(|n| n.source.parents()).collect();
        self.nodes.values().filter(move |n| !cited.contains(&n.name))
    }
}

/// Builds the DAG of a derivation file; every reference must resolve.
pub fn build_dag(p: &Problem) -> Result<Derivation, DerivationError> {
    let d = build_dag_partial(p)?;
    match d.dangling.first() {
        Some((node, parent)) => Err(DerivationError::DanglingReference { node: node.clone(), parent: parent.clone() }),
        None => Ok(d),
    }
}

/// As [`build_dag`], but records unresolved references instead of failing,
/// for excerpts of longer derivations.
pub fn build_dag_partial(p: &Problem) -> Result<Derivation, DerivationError> {
    let mut d = Derivation::default();
    let mut taken: BTreeSet<String> = BTreeSet::new();
    for s in &p.statements {
        if matches!(s.role.base, RoleBase::Type | RoleBase::Logic) {
            continue;
        }
        if !taken.insert(s.name.clone()) {
            return Err(DerivationError::DuplicateName(s.name.clone()));
        }
    }
    for s in &p.statements {
        if matches!(s.role.base, RoleBase::Type | RoleBase::Logic) {
            continue;
        }
        let source = match &s.source {
            Some(g) => source_of(g, &s.name, &mut taken, &mut d),
            None => Source::None,
        };
        d.nodes.insert(s.name.clone(), Node { name: s.name.clone(), role: s.role, body: Some(s.body.clone()), source });
    }
    let mut dangling = Vec::new();
    for n in d.nodes.values() {
        for parent in n.source.parents() {
            if !d.nodes.contains_key(parent) {
                dangling.push((n.name.clone(), parent.clone()));
            }
        }
    }
    d.dangling = dangling;
    Ok(d)
}

fn source_of(g: &GeneralTerm, owner: &str, taken: &mut BTreeSet<String>, d: &mut Derivation) -> Source {
    match g {
        GeneralTerm::Word(w) | GeneralTerm::Integer(w) => Source::NameRef(symbol_key(w).to_string()),
        GeneralTerm::App(f, args) if f == "file" => Source::File {
            file: args.first().and_then(GeneralTerm::as_word).unwrap_or_default().to_string(),
            name: args.get(1).and_then(GeneralTerm::as_word).map(|n| symbol_key(n).to_string()),
        },
        GeneralTerm::App(f, args) if f == "inference" && args.len() == 3 => {
            let rule = args[0].as_word().unwrap_or_default().to_string();
            let info = match &args[1] {
                GeneralTerm::List(xs) => xs.clone(),
                other => vec![other.clone()],
            };
            let cited = match &args[2] {
                GeneralTerm::List(xs) => xs.as_slice(),
                other => std::slice::from_ref(other),
            };
            let mut parents = Vec::new();
            for c in cited {
                match c {
                    GeneralTerm::Word(w) | GeneralTerm::Integer(w) => parents.push(symbol_key(w).to_string()),
                    GeneralTerm::Colon(name, _) => {
                        if let Some(w) = name.as_word() {
                            parents.push(symbol_key(w).to_string());
                        }
                    }
                    GeneralTerm::App(f, _) if f == "inference" || f == "file" => {
                        let name = fresh(owner, taken);
                        let source = source_of(c, &name, taken, d);
                        d.nodes.insert(
                            name.clone(),
                            Node { name: name.clone(), role: Role::new(RoleBase::Plain), body: None, source },
                        );
                        parents.push(name);
                    }
                    // theory(equality) and similar cite no node
                    _ => {}
                }
            }
            Source::Inference { rule, info, parents }
        }
        other => Source::Other(other.clone()),
    }
}

fn fresh(owner: &str, taken: &mut BTreeSet<String>) -> String {
    let mut k = 1;
    loop {
        let name = format!("{owner}_{k}");
        if taken.insert(name.clone()) {
            return name;
        }
        k += 1;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckResult {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckResult::Pass => "pass",
            CheckResult::Fail => "fail",
            CheckResult::NotApplicable => "n/a",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CheckKind {
    Acyclicity,
    Origin,
    Completeness,
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckKind::Acyclicity => "acyclicity",
            CheckKind::Origin => "origin",
            CheckKind::Completeness => "completeness",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub check: CheckKind,
    pub node: Option<String>,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralReport {
    pub acyclicity: CheckResult,
    pub origin: CheckResult,
    pub completeness: CheckResult,
    /// Sorted, so the report does not depend on statement order.
    pub violations: Vec<Violation>,
    /// `(node, status)` from inference info lists; reported, not validated.
    pub statuses: Vec<(String, String)>,
    pub dangling: Vec<(String, String)>,
}

impl StructuralReport {
    pub fn passed(&self) -> bool {
        ![self.acyclicity, self.origin, self.completeness].contains(&CheckResult::Fail)
    }
}

impl fmt::Display for StructuralReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            match &v.node {
                Some(n) => writeln!(f, "{} violation at {n}: {}", v.check, v.message)?,
                None => writeln!(f, "{} violation: {}", v.check, v.message)?,
            }
        }
        for (node, parent) in &self.dangling {
            writeln!(f, "warning: {node} cites {parent}, which is not in the derivation")?;
        }
        writeln!(f, "acyclicity: {}", self.acyclicity)?;
        writeln!(f, "origin: {}", self.origin)?;
        writeln!(f, "completeness: {}", self.completeness)?;
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Acyclicity, leaf origin (when `problem` is given) and completeness.
pub fn verify_structure(d: &Derivation, problem: Option<&TypedProblem>) -> StructuralReport {
    let mut violations = Vec::new();

    let cyclic = cyclic_nodes(d);
    for n in &cyclic {
        violations.push(Violation { check: CheckKind::Acyclicity, node: Some(n.clone()), message: "lies on a cycle".into() });
    }
    let acyclicity = if cyclic.is_empty() { CheckResult::Pass } else { CheckResult::Fail };

    let origin = match problem {
        None => CheckResult::NotApplicable,
        Some(tp) => {
            let before = violations.len();
            for n in d.nodes.values() {
                let Source::File { name: Some(original), .. } = &n.source else { continue };
                let found = tp.problem.statements.iter().find(|s| symbol_key(&s.name) == original);
                let message = match found {
                    None => Some(format!("cites `{original}`, which the problem does not contain")),
                    Some(s) => {
                        let expected = match (&s.body, n.role.base) {
                            (Statement::Formula(f), RoleBase::NegatedConjecture) if s.role.base == RoleBase::Conjecture => {
                                Statement::Formula(Formula::not(f.clone()))
                            }
                            (body, _) => body.clone(),
                        };
                        let same = n.body.as_ref().is_some_and(|b| alpha_equivalent(b, &expected));
                        (!same).then(|| format!("formula differs from `{original}` in the problem"))
                    }
                };
                if let Some(message) = message {
                    violations.push(Violation { check: CheckKind::Origin, node: Some(n.name.clone()), message });
                }
            }
            if violations.len() == before { CheckResult::Pass } else { CheckResult::Fail }
        }
    };

    let claims_refutation =
        d.nodes.values().any(|n| n.role.base == RoleBase::NegatedConjecture || n.is_false());
    let completeness = if !claims_refutation {
        CheckResult::NotApplicable
    } else if d.sinks().any(Node::is_false) {
        CheckResult::Pass
    } else {
        violations.push(Violation {
            check: CheckKind::Completeness,
            node: None,
            message: "refutation has no $false sink".into(),
        });
        CheckResult::Fail
    };

    violations.sort();
    let statuses = d
        .nodes
        .values()
        .filter_map(|n| n.source.status().map(|s| (n.name.clone(), s.to_string())))
        .collect();
    let mut dangling = d.dangling.clone();
    dangling.sort();
    StructuralReport { acyclicity, origin, completeness, violations, statuses, dangling }
}

/// Nodes on some cycle of the parent relation (self-citations included).
fn cyclic_nodes(d: &Derivation) -> BTreeSet<String> {
    // A node is cyclic iff it reaches itself through parent links.
    let names: Vec<&String> = d.nodes.keys().collect();
    let index: BTreeMap<&String, usize> = names.iter().enumerate().map(|(i, n)| (*n, i)).collect();
    let parents: Vec<Vec<usize>> = names
        .iter()
        .map(|n| d.nodes[*n].source.parents().iter().filter_map(|p| index.get(p).copied()).collect())
        .collect();
    let mut out = BTreeSet::new();
    for start in 0..names.len() {
        let mut seen = vec![false; names.len()];
        let mut stack = parents[start].clone();
        while let Some(i) = stack.pop() {
            if i == start {
                out.insert(names[start].clone());
                break;
            }
            if !std::mem::replace(&mut seen[i], true) {
                stack.extend(&parents[i]);
            }
        }
    }
    out
}

/// Equality up to consistent renaming of bound variables. Raw bodies are
/// compared token-wise with upper words renamed by first occurrence.
pub fn alpha_equivalent(a: &Statement, b: &Statement) -> bool {
    match (a, b) {
        (Statement::Formula(x), Statement::Formula(y)) => canonical(x) == canonical(y),
        (Statement::Raw(x), Statement::Raw(y)) => canonical_tokens(x) == canonical_tokens(y),
        _ => a == b,
    }
}

fn canonical_tokens(toks: &[String]) -> Vec<String> {
    let mut names: BTreeMap<&str, usize> = BTreeMap::new();
    toks.iter()
        .map(|t| {
            if t.starts_with(|c: char| c.is_ascii_uppercase()) {
                let k = names.len();
                format!("V{}", names.entry(t).or_insert(k))
            } else {
                t.clone()
            }
        })
        .collect()
}

fn canonical(f: &Formula) -> Formula {
    let mut env = Vec::new();
    let mut counter = 0;
    rename(f, &mut env, &mut counter)
}

fn rename_term(t: &Term, env: &[(String, String)]) -> Term {
    match t {
        Term::Variable(v) => match env.iter().rev().find(|(old, _)| old == v) {
            Some((_, new)) => Term::Variable(new.clone()),
            None => t.clone(),
        },
        Term::Function { symbol, args } => {
            Term::Function { symbol: symbol.clone(), args: args.iter().map(|a| rename_term(a, env)).collect() }
        }
        other => other.clone(),
    }
}

fn rename(f: &Formula, env: &mut Vec<(String, String)>, counter: &mut usize) -> Formula {
    let b = |g: &Formula, env: &mut Vec<(String, String)>, counter: &mut usize| Box::new(rename(g, env, counter));
    match f {
        Formula::Atom { predicate, args } => {
            Formula::Atom { predicate: predicate.clone(), args: args.iter().map(|a| rename_term(a, env)).collect() }
        }
        Formula::Equality(x, y) => Formula::Equality(rename_term(x, env), rename_term(y, env)),
        Formula::Inequality(x, y) => Formula::Inequality(rename_term(x, env), rename_term(y, env)),
        Formula::Not(g) => Formula::Not(b(g, env, counter)),
        Formula::And(xs) => Formula::And(xs.iter().map(|x| rename(x, env, counter)).collect()),
        Formula::Or(xs) => Formula::Or(xs.iter().map(|x| rename(x, env, counter)).collect()),
        Formula::Implies(x, y) => Formula::Implies(b(x, env, counter), b(y, env, counter)),
        Formula::ReverseImplies(x, y) => Formula::ReverseImplies(b(x, env, counter), b(y, env, counter)),
        Formula::Iff(x, y) => Formula::Iff(b(x, env, counter), b(y, env, counter)),
        Formula::Xor(x, y) => Formula::Xor(b(x, env, counter), b(y, env, counter)),
        Formula::Forall(vs, body) | Formula::Exists(vs, body) => {
            let depth = env.len();
            let mut renamed = Vec::new();
            for v in vs {
                let new = format!("V{counter}");
                *counter += 1;
                env.push((v.name.clone(), new.clone()));
                // An untyped variable is an individual.
                let ty = Some(v.ty.clone().unwrap_or(crate::syntax::TptpType::Individual));
                renamed.push(crate::syntax::TypedVariable { name: new, ty });
            }
            let body = b(body, env, counter);
            env.truncate(depth);
            if matches!(f, Formula::Forall(..)) {
                Formula::Forall(renamed, body)
            } else {
                Formula::Exists(renamed, body)
            }
        }
        Formula::NonClassical { connective, args } => Formula::NonClassical {
            connective: connective.clone(),
            args: args.iter().map(|x| rename(x, env, counter)).collect(),
        },
        Formula::InWorld { world, body } => Formula::InWorld { world: rename_term(world, env), body: b(body, env, counter) },
        Formula::True | Formula::False => f.clone(),
    }
}
