//! Default typing and type checking.
//!
//! Undeclared symbols receive the usual TPTP defaults: predicates of arity n
//! get `($i * … * $i) > $o`, functions `($i * … * $i) > $i`, and untyped
//! quantified variables `$i`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::ast::*;
use super::lexer::Pos;
use super::printer::print_type;

/// The type of a symbol, uncurried: `(args) > result`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolType {
    pub args: Vec<TptpType>,
    pub result: TptpType,
    /// False when the type was filled in by default typing.
    pub declared: bool,
}

impl SymbolType {
    pub fn from_type(ty: &TptpType, declared: bool) -> Self {
        match ty {
            TptpType::Mapping(args, result) => {
                SymbolType { args: args.clone(), result: (**result).clone(), declared }
            }
            other => SymbolType { args: Vec::new(), result: other.clone(), declared },
        }
    }

    pub fn is_predicate(&self) -> bool {
        self.result == TptpType::Bool
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn to_type(&self) -> TptpType {
        if self.args.is_empty() {
            self.result.clone()
        } else {
            TptpType::Mapping(self.args.clone(), Box::new(self.result.clone()))
        }
    }
}

impl fmt::Display for SymbolType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_type(&self.to_type()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    /// User sorts declared with `$tType`.
    pub sorts: BTreeSet<String>,
    /// Keyed by [`symbol_key`].
    pub symbols: BTreeMap<String, SymbolType>,
}

impl Signature {
    pub fn get(&self, symbol: &str) -> Option<&SymbolType> {
        self.symbols.get(symbol_key(symbol)).or_else(|| builtin(symbol))
    }

    /// User-declared symbols (not sorts), in name order.
    pub fn user_symbols(&self) -> impl Iterator<Item = (&String, &SymbolType)> {
        self.symbols.iter()
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&String, &SymbolType)> {
        self.symbols.iter().filter(|(_, t)| t.is_predicate())
    }

    pub fn functions(&self) -> impl Iterator<Item = (&String, &SymbolType)> {
        self.symbols.iter().filter(|(_, t)| !t.is_predicate())
    }

    /// Whether `ty` may be the type of a term.
    pub fn is_term_type(&self, ty: &TptpType) -> bool {
        match ty {
            TptpType::Individual | TptpType::World => true,
            TptpType::User(s) => self.sorts.contains(symbol_key(s)),
            _ => false,
        }
    }
}

fn builtin(symbol: &str) -> Option<&'static SymbolType> {
    use std::sync::OnceLock;
    static LOCAL: OnceLock<SymbolType> = OnceLock::new();
    static ACC: OnceLock<SymbolType> = OnceLock::new();
    match symbol {
        "$local_world" => Some(LOCAL.get_or_init(|| SymbolType {
            args: Vec::new(),
            result: TptpType::World,
            declared: true,
        })),
        "$accessible_world" => Some(ACC.get_or_init(|| SymbolType {
            args: vec![TptpType::World, TptpType::World],
            result: TptpType::Bool,
            declared: true,
        })),
        _ => None,
    }
}

/// A problem whose variables all carry types, plus its signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypedProblem {
    pub problem: Problem,
    pub signature: Signature,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TypingError {
    #[error("{pos}: in `{statement}`: symbol `{symbol}` used {first} and {second}")]
    InconsistentUse { statement: String, pos: Pos, symbol: String, first: String, second: String },
}

fn describe(predicate: bool, arity: usize) -> String {
    format!("as a {} of arity {arity}", if predicate { "predicate" } else { "function" })
}

/// Fills in default types for undeclared symbols and untyped variables.
pub fn resolve_defaults(p: &Problem) -> Result<TypedProblem, TypingError> {
    let mut sig = Signature::default();
    for s in &p.statements {
        if let Statement::Type(d) = &s.body {
            match &d.ty {
                DeclaredType::Sort => {
                    sig.sorts.insert(symbol_key(&d.symbol).to_string());
                }
                DeclaredType::Type(t) => {
                    sig.symbols
                        .entry(symbol_key(&d.symbol).to_string())
                        .or_insert_with(|| SymbolType::from_type(t, true));
                }
            }
        }
    }
    // (predicate?, arity) of every undeclared symbol, with the first use site.
    let mut uses: BTreeMap<String, (bool, usize)> = BTreeMap::new();
    for s in &p.statements {
        let Some(f) = s.formula() else { continue };
        let mut err = None;
        let mut record = |sym: &str, pred: bool, arity: usize| {
            if sym.starts_with('$') || err.is_some() {
                return;
            }
            let key = symbol_key(sym);
            if sig.symbols.contains_key(key) {
                return;
            }
            match uses.get(key) {
                Some(&(p0, a0)) if (p0, a0) != (pred, arity) => {
                    err = Some(TypingError::InconsistentUse {
                        statement: s.name.clone(),
                        pos: s.pos,
                        symbol: key.to_string(),
                        first: describe(p0, a0),
                        second: describe(pred, arity),
                    });
                }
                Some(_) => {}
                None => {
                    uses.insert(key.to_string(), (pred, arity));
                }
            }
        };
        f.visit(&mut |g| match g {
            Formula::Atom { predicate, args } => {
                record(predicate, true, args.len());
                args.iter().for_each(|t| record_terms(t, &mut record));
            }
            Formula::Equality(a, b) | Formula::Inequality(a, b) => {
                record_terms(a, &mut record);
                record_terms(b, &mut record);
            }
            Formula::InWorld { world, .. } => record_terms(world, &mut record),
            _ => {}
        });
        if let Some(e) = err {
            return Err(e);
        }
    }
    for (sym, (pred, arity)) in uses {
        let result = if pred { TptpType::Bool } else { TptpType::Individual };
        sig.symbols.insert(sym, SymbolType { args: vec![TptpType::Individual; arity], result, declared: false });
    }
    let mut problem = p.clone();
    for s in &mut problem.statements {
        if let Statement::Formula(f) = &mut s.body {
            default_variables(f);
        }
    }
    Ok(TypedProblem { problem, signature: sig })
}

fn record_terms(t: &Term, record: &mut impl FnMut(&str, bool, usize)) {
    if let Term::Function { symbol, args } = t {
        record(symbol, false, args.len());
        args.iter().for_each(|a| record_terms(a, record));
    }
}

fn default_variables(f: &mut Formula) {
    match f {
        Formula::Forall(vars, body) | Formula::Exists(vars, body) => {
            for v in vars.iter_mut() {
                v.ty.get_or_insert(TptpType::Individual);
            }
            default_variables(body);
        }
        Formula::Not(a) => default_variables(a),
        Formula::And(xs) | Formula::Or(xs) => xs.iter_mut().for_each(default_variables),
        Formula::Implies(a, b) | Formula::ReverseImplies(a, b) | Formula::Iff(a, b) | Formula::Xor(a, b) => {
            default_variables(a);
            default_variables(b);
        }
        Formula::NonClassical { args, .. } => args.iter_mut().for_each(default_variables),
        Formula::InWorld { body, .. } => default_variables(body),
        Formula::Atom { .. } | Formula::Equality(..) | Formula::Inequality(..) | Formula::True | Formula::False => {}
    }
}

/// One type error, located at its statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeIssue {
    pub statement: String,
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for TypeIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: in `{}`: {}", self.pos, self.statement, self.message)
    }
}

/// Type checks every formula and declaration; an empty report means well-typed.
/// Higher-order statements kept unparsed are not checked.
pub fn check_types(tp: &TypedProblem) -> Vec<TypeIssue> {
    let mut issues = Vec::new();
    let sig = &tp.signature;
    let mut seen: BTreeMap<&str, &DeclaredType> = BTreeMap::new();
    for s in &tp.problem.statements {
        let mut report = |message: String| {
            issues.push(TypeIssue { statement: s.name.clone(), pos: s.pos, message })
        };
        match &s.body {
            Statement::Type(d) => {
                let key = symbol_key(&d.symbol);
                if let Some(prev) = seen.insert(key, &d.ty) {
                    if *prev != d.ty {
                        report(format!("conflicting declarations of `{key}`"));
                    }
                }
                if let DeclaredType::Type(t) = &d.ty {
                    check_declared_type(sig, t, &mut report);
                }
            }
            Statement::Formula(f) => {
                let mut cx = Checker { sig, env: Vec::new(), report: &mut report };
                cx.formula(f);
            }
            Statement::Logic(_) | Statement::Raw(_) => {}
        }
    }
    issues
}

fn check_declared_type(sig: &Signature, t: &TptpType, report: &mut impl FnMut(String)) {
    let st = SymbolType::from_type(t, true);
    for a in &st.args {
        if !sig.is_term_type(a) {
            report(format!("`{}` is not a term type", print_type(a)));
        }
    }
    match &st.result {
        TptpType::Bool => {}
        r if sig.is_term_type(r) => {}
        r => report(format!("`{}` is not a result type", print_type(r))),
    }
}

struct Checker<'a, R: FnMut(String)> {
    sig: &'a Signature,
    env: Vec<(String, TptpType)>,
    report: &'a mut R,
}

impl<R: FnMut(String)> Checker<'_, R> {
    fn formula(&mut self, f: &Formula) {
        match f {
            Formula::Atom { predicate, args } => match self.sig.get(predicate) {
                None => (self.report)(format!("unknown predicate `{predicate}`")),
                Some(st) if !st.is_predicate() => {
                    (self.report)(format!("`{predicate}` is not a predicate"));
                }
                Some(st) => {
                    let st = st.clone();
                    self.arguments(predicate, &st, args);
                }
            },
            Formula::Equality(a, b) | Formula::Inequality(a, b) => {
                let (ta, tb) = (self.term(a), self.term(b));
                if let (Some(ta), Some(tb)) = (ta, tb) {
                    if ta != tb {
                        (self.report)(format!(
                            "equality between `{}` and `{}` terms",
                            print_type(&ta),
                            print_type(&tb)
                        ));
                    }
                }
            }
            Formula::Not(a) => self.formula(a),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| self.formula(x)),
            Formula::Implies(a, b) | Formula::ReverseImplies(a, b) | Formula::Iff(a, b) | Formula::Xor(a, b) => {
                self.formula(a);
                self.formula(b);
            }
            Formula::Forall(vars, body) | Formula::Exists(vars, body) => {
                let n = self.env.len();
                for v in vars {
                    let ty = v.ty.clone().unwrap_or(TptpType::Individual);
                    if ty == TptpType::Bool {
                        (self.report)(format!("Boolean variable `{}` is not supported", v.name));
                    } else if !self.sig.is_term_type(&ty) {
                        (self.report)(format!("variable `{}` has unknown type `{}`", v.name, print_type(&ty)));
                    }
                    self.env.push((v.name.clone(), ty));
                }
                self.formula(body);
                self.env.truncate(n);
            }
            Formula::True | Formula::False => {}
            Formula::NonClassical { args, .. } => args.iter().for_each(|x| self.formula(x)),
            Formula::InWorld { world, body } => {
                if let Some(t) = self.term(world) {
                    if t != TptpType::World {
                        (self.report)(format!("`$in_world` expects a `$world`, found `{}`", print_type(&t)));
                    }
                }
                self.formula(body);
            }
        }
    }

    fn arguments(&mut self, symbol: &str, st: &SymbolType, args: &[Term]) {
        if st.arity() != args.len() {
            (self.report)(format!("`{symbol}` expects {} argument(s), found {}", st.arity(), args.len()));
            args.iter().for_each(|a| {
                self.term(a);
            });
            return;
        }
        for (i, (a, expected)) in args.iter().zip(&st.args).enumerate() {
            if let Some(found) = self.term(a) {
                if found != *expected {
                    (self.report)(format!(
                        "argument {} of `{symbol}` should be `{}`, found `{}`",
                        i + 1,
                        print_type(expected),
                        print_type(&found)
                    ));
                }
            }
        }
    }

    /// The type of `t`, or `None` after reporting an error.
    fn term(&mut self, t: &Term) -> Option<TptpType> {
        match t {
            Term::Variable(v) => match self.env.iter().rev().find(|(n, _)| n == v) {
                Some((_, ty)) => Some(ty.clone()),
                None => {
                    (self.report)(format!("free variable `{v}`"));
                    None
                }
            },
            Term::Integer(n) => {
                (self.report)(format!("number `{n}` outside connective parameters"));
                None
            }
            Term::Defined(d) => match self.sig.get(d) {
                Some(st) if st.args.is_empty() && !st.is_predicate() => Some(st.result.clone()),
                _ => {
                    (self.report)(format!("unsupported defined term `{d}`"));
                    None
                }
            },
            Term::Function { symbol, args } => match self.sig.get(symbol) {
                None => {
                    (self.report)(format!("unknown function `{symbol}`"));
                    None
                }
                Some(st) if st.is_predicate() => {
                    (self.report)(format!("predicate `{symbol}` used as a term"));
                    None
                }
                Some(st) => {
                    let st = st.clone();
                    self.arguments(symbol, &st, args);
                    Some(st.result)
                }
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parser::parse_problem;

    const DECLS: &str = "tff(p,type,person: $tType).\ntff(r,type,product: $tType).\n\
        tff(a,type,alex: person).\ntff(l,type,leo: product).\n\
        tff(w,type,work_hard: ( person * product ) > $o).\n";

    fn typed(src: &str) -> TypedProblem {
        resolve_defaults(&parse_problem(src).unwrap()).unwrap()
    }

    #[test]
    fn defaults_for_undeclared_symbols() {
        let tp = typed("tff(a,axiom,bird(tweety)).\ntff(b,axiom,! [X] : r(X,f(X))).");
        assert_eq!(tp.signature.get("bird").unwrap().to_type(), TptpType::Mapping(vec![TptpType::Individual], Box::new(TptpType::Bool)));
        assert_eq!(tp.signature.get("tweety").unwrap().to_type(), TptpType::Individual);
        assert_eq!(tp.signature.get("f").unwrap().arity(), 1);
        let Formula::Forall(vs, _) = tp.problem.statements[1].formula().unwrap() else { panic!() };
        assert_eq!(vs[0].ty, Some(TptpType::Individual));
        assert!(check_types(&tp).is_empty());
    }

    #[test]
    fn inconsistent_arity_is_an_error() {
        let p = parse_problem("tff(a,axiom,p(a) & p(a,b)).").unwrap();
        assert!(matches!(resolve_defaults(&p), Err(TypingError::InconsistentUse { .. })));
        let p = parse_problem("tff(a,axiom,p(a) & q(p)).").unwrap();
        assert!(resolve_defaults(&p).is_err());
    }

    #[test]
    fn swapped_arguments_give_two_mismatches() {
        let tp = typed(&format!("{DECLS}tff(h,hypothesis,work_hard(leo,alex))."));
        let issues = check_types(&tp);
        assert_eq!(issues.len(), 2, "{issues:?}");
        assert!(issues.iter().all(|i| i.statement == "h"));
    }

    #[test]
    fn cross_sort_equality_is_reported() {
        let tp = typed(&format!("{DECLS}tff(h,axiom,alex = leo)."));
        assert_eq!(check_types(&tp).len(), 1);
    }

    #[test]
    fn numbers_rejected_outside_parameters() {
        let tp = typed("tff(a,axiom,p(1)).");
        assert!(check_types(&tp)[0].message.contains("number"));
        let tp = typed("tff(a,axiom,{$box(#1, n := 2)} @ (q)).");
        assert!(check_types(&tp).is_empty());
    }

    #[test]
    fn world_builtins_type_check() {
        let tp = typed("tff(w,type,w1: $world).\ntff(a,axiom,$accessible_world($local_world,w1) & $in_world(w1, p)).");
        assert!(check_types(&tp).is_empty(), "{:?}", check_types(&tp));
    }

    #[test]
    fn resolve_is_idempotent() {
        let tp = typed("tff(a,axiom,! [X] : ? [Y: $i] : r(X,Y)).");
        assert_eq!(resolve_defaults(&tp.problem).unwrap(), tp);
    }
}
