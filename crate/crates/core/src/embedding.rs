//! Shallow semantic embedding of modal problems into classical typed
//! first-order logic.
//!
//! Worlds become elements of a fresh sort; each accessibility relation a
//! binary predicate on it. Predicates (and, under flexible designation,
//! functions) take the world as an extra first argument. Axiom sets are
//! expressed by their frame conditions, domain regimes by existence guards.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::logic::{connective_kind, ConnectiveKind, Designation, Domains, FrameCondition, LogicError, NormalizedModalLogic, Terms};
use crate::syntax::{
    print_statement, symbol_key, AnnotatedFormula, DeclaredType, Formula, Language, Problem, Role, RoleBase,
    Statement, SymbolType, Term, TptpType, TypeDeclaration, TypedProblem, TypedVariable,
};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EmbeddingError {
    #[error("unsupported connective {0} under $modal")]
    UnsupportedConnective(String),
    #[error("unsupported dialect: {0}")]
    UnsupportedDialect(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// Why a statement of the output exists.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Declaration,
    Frame,
    Domain,
    Nonemptiness,
    TermLocality,
    /// Translation of the named source statement.
    Lifted(String),
}

impl Provenance {
    pub fn class(&self) -> &'static str {
        match self {
            Provenance::Declaration => "declaration",
            Provenance::Frame => "frame",
            Provenance::Domain => "domain",
            Provenance::Nonemptiness => "nonemptiness",
            Provenance::TermLocality => "term-locality",
            Provenance::Lifted(_) => "lifted",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Lifted(src) => write!(f, "lifted from {src}"),
            other => f.write_str(other.class()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolTranslation {
    pub source: String,
    pub source_type: TptpType,
    pub target: String,
    pub target_type: TptpType,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ledger {
    pub symbols: Vec<SymbolTranslation>,
    /// One entry per output statement, in order.
    pub provenance: Vec<Provenance>,
}

impl Ledger {
    /// Statement counts per provenance class.
    pub fn counts(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for p in &self.provenance {
            *out.entry(p.class()).or_insert(0) += 1;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingOutput {
    pub problem: Problem,
    pub ledger: Ledger,
}

impl EmbeddingOutput {
    /// The problem text with a `%` comment naming each statement's provenance,
    /// preceded by the per-class counts.
    pub fn print_with_ledger(&self) -> String {
        let mut out = String::new();
        for (class, n) in self.ledger.counts() {
            out.push_str(&format!("% {class}: {n}\n"));
        }
        for (s, p) in self.problem.statements.iter().zip(&self.ledger.provenance) {
            out.push_str(&format!("\n% provenance: {p}\n{}\n", print_statement(s)));
        }
        out
    }
}

/// Names chosen for the embedding and the symbol translation table.
#[derive(Clone, Debug)]
pub struct EmbeddingContext {
    pub logic: NormalizedModalLogic,
    pub world_sort: String,
    /// Keyed by connective index; `None` is the unindexed relation.
    pub accessibility: BTreeMap<Option<String>, String>,
    pub local_world: String,
    /// Existence guard per sort name (`$i` or a user sort); empty under
    /// constant domains.
    pub guards: BTreeMap<String, String>,
    /// Source symbol → lifted type.
    pub symbols: BTreeMap<String, SymbolType>,
    taken: BTreeSet<String>,
    variables: BTreeSet<String>,
    next_world_var: usize,
}

impl EmbeddingContext {
    /// Fresh names for `tp` under `logic`: never equal to a symbol, sort or
    /// statement name of the source.
    pub fn new(tp: &TypedProblem, logic: &NormalizedModalLogic) -> Result<Self, EmbeddingError> {
        let mut taken: BTreeSet<String> = tp.signature.sorts.iter().cloned().collect();
        taken.extend(tp.signature.symbols.keys().cloned());
        taken.extend(tp.problem.statements.iter().map(|s| s.name.clone()));
        let mut variables = BTreeSet::new();
        // Every user sort is guarded; `$i` only when something uses it.
        let mut sorts: BTreeSet<String> = tp.signature.sorts.iter().cloned().collect();
        let mut indices = BTreeSet::new();
        for st in tp.signature.symbols.values() {
            for t in st.args.iter().chain(std::iter::once(&st.result)) {
                if let Some(s) = sort_key(t) {
                    sorts.insert(s);
                }
            }
        }
        for s in &tp.problem.statements {
            match &s.body {
                Statement::Formula(f) => {
                    let mut err = None;
                    f.visit(&mut |g| match g {
                        Formula::Forall(vs, _) | Formula::Exists(vs, _) => {
                            for v in vs {
                                variables.insert(v.name.clone());
                                if let Some(s) = v.ty.as_ref().and_then(sort_key) {
                                    sorts.insert(s);
                                }
                            }
                        }
                        Formula::NonClassical { connective, .. } => match connective_kind(connective, logic) {
                            Ok(ConnectiveKind::Box(i) | ConnectiveKind::Dia(i)) => {
                                indices.insert(i);
                            }
                            Ok(ConnectiveKind::Foreign) => {
                                err.get_or_insert(EmbeddingError::UnsupportedConnective(connective.name.clone()));
                            }
                            Err(e) => {
                                err.get_or_insert(EmbeddingError::Logic(e));
                            }
                        },
                        Formula::InWorld { .. } => {
                            err.get_or_insert(EmbeddingError::UnsupportedDialect("$in_world".into()));
                        }
                        _ => {}
                    });
                    if let Some(e) = err {
                        return Err(e);
                    }
                }
                Statement::Raw(_) => {
                    return Err(EmbeddingError::UnsupportedDialect(format!("higher-order statement `{}`", s.name)))
                }
                _ => {}
            }
        }
        indices.extend(logic.per_index.keys().cloned().map(Some));

        let mut cx = EmbeddingContext {
            logic: logic.clone(),
            world_sort: String::new(),
            accessibility: BTreeMap::new(),
            local_world: String::new(),
            guards: BTreeMap::new(),
            symbols: BTreeMap::new(),
            taken,
            variables,
            next_world_var: 0,
        };
        cx.world_sort = cx.fresh("world");
        for idx in indices {
            cx.relation(&idx);
        }
        cx.local_world = cx.fresh("local_world");
        if logic.domains != Domains::Constant {
            for s in sorts {
                let name = cx.fresh(&format!("eiw_{}", s.trim_start_matches('$')));
                cx.guards.insert(s, name);
            }
        }
        let world = cx.world_type();
        let flexible = logic.designation == Designation::Flexible;
        for (name, st) in &tp.signature.symbols {
            let args: Vec<TptpType> = st.args.iter().map(|t| cx.lift_type(t)).collect();
            let result = cx.lift_type(&st.result);
            let lifted_args = if st.is_predicate() || flexible { [vec![world.clone()], args].concat() } else { args };
            cx.symbols.insert(name.clone(), SymbolType { args: lifted_args, result, declared: true });
        }
        Ok(cx)
    }

    fn fresh(&mut self, base: &str) -> String {
        let mut name = base.to_string();
        let mut k = 1;
        while self.taken.contains(&name) {
            name = format!("{base}{k}");
            k += 1;
        }
        self.taken.insert(name.clone());
        name
    }

    /// A world variable name unused by the source.
    fn world_var(&mut self) -> String {
        loop {
            let k = self.next_world_var;
            self.next_world_var += 1;
            let name = if k == 0 { "W".to_string() } else { format!("W{k}") };
            if !self.variables.contains(&name) {
                return name;
            }
        }
    }

    pub fn world_type(&self) -> TptpType {
        TptpType::User(self.world_sort.clone())
    }

    fn lift_type(&self, t: &TptpType) -> TptpType {
        match t {
            TptpType::World => self.world_type(),
            other => other.clone(),
        }
    }

    fn flexible(&self) -> bool {
        self.logic.designation == Designation::Flexible
    }

    fn guard(&self, ty: &TptpType, w: &Term, x: Term) -> Option<Formula> {
        let g = self.guards.get(&sort_key(ty)?)?;
        Some(Formula::atom(g.clone(), vec![w.clone(), x]))
    }

    fn acc(&self, index: &Option<String>, a: Term, b: Term) -> Formula {
        Formula::atom(self.accessibility[index].clone(), vec![a, b])
    }

    /// The relation name for `index`, allocating one for indices the source
    /// problem never mentioned.
    fn relation(&mut self, index: &Option<String>) -> String {
        if let Some(r) = self.accessibility.get(index) {
            return r.clone();
        }
        let base = match index {
            None => "acc".to_string(),
            Some(i) => format!("acc_{}", i.trim_start_matches('#')),
        };
        let name = self.fresh(&base);
        self.accessibility.insert(index.clone(), name.clone());
        name
    }

    fn term(&self, t: &Term, w: &Term) -> Result<Term, EmbeddingError> {
        Ok(match t {
            Term::Variable(_) => t.clone(),
            Term::Function { symbol, args } => {
                let mut out: Vec<Term> = if self.flexible() { vec![w.clone()] } else { Vec::new() };
                for a in args {
                    out.push(self.term(a, w)?);
                }
                Term::app(symbol.clone(), out)
            }
            Term::Defined(d) | Term::Integer(d) => {
                return Err(EmbeddingError::UnsupportedDialect(format!("defined term `{d}`")))
            }
        })
    }
}

fn sort_key(t: &TptpType) -> Option<String> {
    match t {
        TptpType::Individual => Some("$i".into()),
        TptpType::User(s) => Some(symbol_key(s).to_string()),
        _ => None,
    }
}

/// `⟦φ⟧(w)`: the truth of `φ` at the world denoted by `w`.
pub fn embed_formula(f: &Formula, w: &Term, cx: &mut EmbeddingContext) -> Result<Formula, EmbeddingError> {
    let b = Box::new;
    Ok(match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom { predicate, args } => {
            let mut out = vec![w.clone()];
            for a in args {
                out.push(cx.term(a, w)?);
            }
            Formula::atom(predicate.clone(), out)
        }
        Formula::Equality(a, c) => Formula::Equality(cx.term(a, w)?, cx.term(c, w)?),
        Formula::Inequality(a, c) => Formula::not(Formula::Equality(cx.term(a, w)?, cx.term(c, w)?)),
        Formula::Not(a) => Formula::not(embed_formula(a, w, cx)?),
        Formula::And(xs) => Formula::And(xs.iter().map(|x| embed_formula(x, w, cx)).collect::<Result<_, _>>()?),
        Formula::Or(xs) => Formula::Or(xs.iter().map(|x| embed_formula(x, w, cx)).collect::<Result<_, _>>()?),
        Formula::Implies(a, c) => Formula::Implies(b(embed_formula(a, w, cx)?), b(embed_formula(c, w, cx)?)),
        Formula::ReverseImplies(a, c) => {
            Formula::ReverseImplies(b(embed_formula(a, w, cx)?), b(embed_formula(c, w, cx)?))
        }
        Formula::Iff(a, c) => Formula::Iff(b(embed_formula(a, w, cx)?), b(embed_formula(c, w, cx)?)),
        Formula::Xor(a, c) => Formula::Xor(b(embed_formula(a, w, cx)?), b(embed_formula(c, w, cx)?)),
        Formula::Forall(vs, body) | Formula::Exists(vs, body) => {
            let universal = matches!(f, Formula::Forall(..));
            let inner = embed_formula(body, w, cx)?;
            let vars: Vec<TypedVariable> = vs
                .iter()
                .map(|v| TypedVariable { name: v.name.clone(), ty: Some(v.ty.clone().unwrap_or(TptpType::Individual)) })
                .collect();
            let guards: Vec<Formula> = vars
                .iter()
                .filter_map(|v| cx.guard(v.ty.as_ref().expect("typed above"), w, Term::var(v.name.clone())))
                .collect();
            let body = match (guards.len(), universal) {
                (0, _) => inner,
                (_, true) => Formula::implies(conjunction(guards), inner),
                (_, false) => conjunction([guards, vec![inner]].concat()),
            };
            if universal {
                Formula::forall(vars, body)
            } else {
                Formula::exists(vars, body)
            }
        }
        Formula::NonClassical { connective, args } => {
            let (is_box, index) = match connective_kind(connective, &cx.logic)? {
                ConnectiveKind::Box(i) => (true, i),
                ConnectiveKind::Dia(i) => (false, i),
                ConnectiveKind::Foreign => return Err(EmbeddingError::UnsupportedConnective(connective.name.clone())),
            };
            let [arg] = args.as_slice() else {
                return Err(EmbeddingError::UnsupportedConnective(format!("{} with {} arguments", connective.name, args.len())));
            };
            let v = cx.world_var();
            let vt = Term::var(v.clone());
            let inner = embed_formula(arg, &vt, cx)?;
            let edge = Formula::atom(cx.relation(&index), vec![w.clone(), vt]);
            let var = vec![TypedVariable::new(v, cx.world_type())];
            if is_box {
                Formula::forall(var, Formula::implies(edge, inner))
            } else {
                Formula::exists(var, Formula::And(vec![edge, inner]))
            }
        }
        Formula::InWorld { .. } => return Err(EmbeddingError::UnsupportedDialect("$in_world".into())),
    })
}

fn conjunction(mut xs: Vec<Formula>) -> Formula {
    if xs.len() == 1 {
        xs.pop().expect("one element")
    } else {
        Formula::And(xs)
    }
}

fn frame_axiom(c: FrameCondition, cx: &EmbeddingContext, index: &Option<String>) -> Formula {
    let world = cx.world_type();
    let vars = |names: &[&str]| names.iter().map(|n| TypedVariable::new(*n, world.clone())).collect::<Vec<_>>();
    let r = |a: &str, b: &str| cx.acc(index, Term::var(a), Term::var(b));
    let and = |a, b| Formula::And(vec![a, b]);
    match c {
        FrameCondition::Reflexive => Formula::forall(vars(&["W"]), r("W", "W")),
        FrameCondition::Symmetric => Formula::forall(vars(&["W", "V"]), Formula::implies(r("W", "V"), r("V", "W"))),
        FrameCondition::Serial => Formula::forall(vars(&["W"]), Formula::exists(vars(&["V"]), r("W", "V"))),
        FrameCondition::Transitive => Formula::forall(
            vars(&["W", "V", "U"]),
            Formula::implies(and(r("W", "V"), r("V", "U")), r("W", "U")),
        ),
        FrameCondition::Euclidean => Formula::forall(
            vars(&["W", "V", "U"]),
            Formula::implies(and(r("W", "V"), r("W", "U")), r("V", "U")),
        ),
        FrameCondition::Functional => Formula::forall(
            vars(&["W", "V", "U"]),
            Formula::implies(and(r("W", "V"), r("W", "U")), Formula::Equality(Term::var("V"), Term::var("U"))),
        ),
        FrameCondition::ShiftReflexive => {
            Formula::forall(vars(&["W", "V"]), Formula::implies(r("W", "V"), r("V", "V")))
        }
        FrameCondition::Dense => Formula::forall(
            vars(&["W", "V"]),
            Formula::implies(r("W", "V"), Formula::exists(vars(&["U"]), and(r("W", "U"), r("U", "V")))),
        ),
        FrameCondition::Confluent => Formula::forall(
            vars(&["W", "V", "U"]),
            Formula::implies(
                and(r("W", "V"), r("W", "U")),
                Formula::exists(vars(&["X"]), and(r("V", "X"), r("U", "X"))),
            ),
        ),
    }
}

/// Embeds `tp` under `logic`.
pub fn embed(tp: &TypedProblem, logic: &NormalizedModalLogic) -> Result<EmbeddingOutput, EmbeddingError> {
    let mut cx = EmbeddingContext::new(tp, logic)?;
    let mut statements = Vec::new();
    let mut provenance = Vec::new();
    // Generated statements never reuse a source statement name.
    let mut names: BTreeSet<String> = tp.problem.statements.iter().map(|s| s.name.clone()).collect();
    // Re-emitted declarations keep the name of the source declaration.
    let source_decls: BTreeMap<&str, &str> = tp
        .problem
        .statements
        .iter()
        .rev()
        .filter_map(|s| match &s.body {
            Statement::Type(d) => Some((symbol_key(&d.symbol), s.name.as_str())),
            _ => None,
        })
        .collect();
    let decl_name = |symbol: &str, fallback: String| match source_decls.get(symbol_key(symbol)) {
        Some(n) => n.to_string(),
        None => fallback,
    };
    let mut reuse: BTreeSet<String> = source_decls.values().map(|n| n.to_string()).collect();
    let mut emit = |cx_name: String, role: RoleBase, body: Statement, p: Provenance, stmts: &mut Vec<AnnotatedFormula>| {
        let mut name = cx_name.clone();
        let mut k = 1;
        let verbatim = matches!(p, Provenance::Lifted(_)) || reuse.remove(&name);
        while !verbatim && !names.insert(name.clone()) {
            name = format!("{cx_name}_{k}");
            k += 1;
        }
        stmts.push(AnnotatedFormula::new(Language::Tff, name, Role::new(role), body));
        provenance.push(p);
    };
    let decl = |symbol: &str, ty: DeclaredType| Statement::Type(TypeDeclaration { symbol: symbol.to_string(), ty });

    let world = cx.world_type();
    emit(format!("{}_type", cx.world_sort), RoleBase::Type, decl(&cx.world_sort, DeclaredType::Sort), Provenance::Declaration, &mut statements);
    for s in &tp.signature.sorts {
        emit(decl_name(s, format!("{s}_type")), RoleBase::Type, decl(s, DeclaredType::Sort), Provenance::Declaration, &mut statements);
    }
    for name in cx.accessibility.values() {
        let ty = TptpType::Mapping(vec![world.clone(), world.clone()], Box::new(TptpType::Bool));
        emit(format!("{name}_decl"), RoleBase::Type, decl(name, DeclaredType::Type(ty)), Provenance::Declaration, &mut statements);
    }
    emit(
        format!("{}_decl", cx.local_world),
        RoleBase::Type,
        decl(&cx.local_world, DeclaredType::Type(world.clone())),
        Provenance::Declaration,
        &mut statements,
    );
    for (sort, g) in &cx.guards {
        let ty = TptpType::Mapping(vec![world.clone(), sort_type(sort)], Box::new(TptpType::Bool));
        emit(format!("{g}_decl"), RoleBase::Type, decl(g, DeclaredType::Type(ty)), Provenance::Declaration, &mut statements);
    }
    let mut symbols = Vec::new();
    for (name, st) in &cx.symbols {
        let source = tp.signature.symbols[name].to_type();
        emit(decl_name(name, format!("{name}_decl")), RoleBase::Type, decl(name, DeclaredType::Type(st.to_type())), Provenance::Declaration, &mut statements);
        symbols.push(SymbolTranslation { source: name.clone(), source_type: source, target: name.clone(), target_type: st.to_type() });
    }

    for (index, acc) in &cx.accessibility {
        for c in logic.frame_conditions_for(index.as_deref())? {
            let f = frame_axiom(c, &cx, index);
            let cname = c.name().replace('-', "_");
            emit(format!("{acc}_{cname}"), RoleBase::Axiom, Statement::Formula(f), Provenance::Frame, &mut statements);
        }
    }

    let wv = || TypedVariable::new("W", world.clone());
    for (sort, g) in &cx.guards {
        let ty = sort_type(sort);
        let f = Formula::forall(
            vec![wv()],
            Formula::exists(vec![TypedVariable::new("X", ty.clone())], Formula::atom(g.clone(), vec![Term::var("W"), Term::var("X")])),
        );
        emit(format!("{g}_nonempty"), RoleBase::Axiom, Statement::Formula(f), Provenance::Nonemptiness, &mut statements);
    }
    if matches!(logic.domains, Domains::Cumulative | Domains::Decreasing) {
        let cumulative = logic.domains == Domains::Cumulative;
        for (index, acc) in &cx.accessibility {
            for (sort, g) in &cx.guards {
                let at = |w: &str| Formula::atom(g.clone(), vec![Term::var(w), Term::var("X")]);
                let (from, to) = if cumulative { ("W", "V") } else { ("V", "W") };
                let f = Formula::forall(
                    vec![wv(), TypedVariable::new("V", world.clone()), TypedVariable::new("X", sort_type(sort))],
                    Formula::implies(Formula::And(vec![cx.acc(index, Term::var("W"), Term::var("V")), at(from)]), at(to)),
                );
                let kind = if cumulative { "cumulative" } else { "decreasing" };
                emit(format!("{g}_{acc}_{kind}"), RoleBase::Axiom, Statement::Formula(f), Provenance::Domain, &mut statements);
            }
        }
    }
    if logic.terms == Terms::Local && logic.domains != Domains::Constant {
        for (name, st) in &tp.signature.symbols {
            if st.is_predicate() {
                continue;
            }
            let Some(result_guard) = cx.guards.get(&sort_key(&st.result).unwrap_or_default()).cloned() else { continue };
            let vars: Vec<TypedVariable> =
                st.args.iter().enumerate().map(|(i, t)| TypedVariable::new(format!("X{}", i + 1), t.clone())).collect();
            let w = Term::var("W");
            let app = cx.term(&Term::app(name.clone(), vars.iter().map(|v| Term::var(v.name.clone())).collect()), &w)?;
            let conclusion = Formula::atom(result_guard, vec![w.clone(), app]);
            let premises: Vec<Formula> = vars
                .iter()
                .filter_map(|v| cx.guard(v.ty.as_ref().expect("typed"), &w, Term::var(v.name.clone())))
                .collect();
            let body = if premises.is_empty() { conclusion } else { Formula::implies(conjunction(premises), conclusion) };
            let f = Formula::forall([vec![wv()], vars].concat(), body);
            emit(format!("{name}_local"), RoleBase::Axiom, Statement::Formula(f), Provenance::TermLocality, &mut statements);
        }
    }

    for s in &tp.problem.statements {
        let Statement::Formula(f) = &s.body else { continue };
        let base = s.role.base;
        let lifted = if base == RoleBase::Conjecture {
            (RoleBase::Conjecture, embed_formula(f, &Term::constant(cx.local_world.clone()), &mut cx)?)
        } else if base.is_assumption() || base == RoleBase::NegatedConjecture {
            if s.role.is_local_assumption() {
                (RoleBase::Axiom, embed_formula(f, &Term::constant(cx.local_world.clone()), &mut cx)?)
            } else {
                cx.next_world_var = 0;
                let w = cx.world_var();
                let body = embed_formula(f, &Term::var(w.clone()), &mut cx)?;
                (RoleBase::Axiom, Formula::forall(vec![TypedVariable::new(w, world.clone())], body))
            }
        } else {
            continue;
        };
        cx.next_world_var = 0;
        emit(s.name.clone(), lifted.0, Statement::Formula(lifted.1), Provenance::Lifted(s.name.clone()), &mut statements);
    }
    Ok(EmbeddingOutput { problem: Problem { includes: Vec::new(), statements }, ledger: Ledger { symbols, provenance } })
}

fn sort_type(sort: &str) -> TptpType {
    match sort {
        "$i" => TptpType::Individual,
        other => TptpType::User(other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::problem_logic;
    use crate::syntax::{check_types, parse_formula, parse_problem, print_formula, resolve_defaults};

    fn setup(src: &str) -> (TypedProblem, NormalizedModalLogic) {
        let p = parse_problem(src).unwrap();
        let logic = problem_logic(&p).unwrap();
        (resolve_defaults(&p).unwrap(), logic)
    }

    const K_CONST: &str = "tff(s,logic,$modal == [$domains == $constant, $designation == $rigid, \
                           $terms == $global, $modalities == $modal_system_K]).\n";

    #[test]
    fn dia_and_zero_arity_lift() {
        let (tp, logic) = setup(&format!("{K_CONST}tff(a,axiom,p)."));
        let mut cx = EmbeddingContext::new(&tp, &logic).unwrap();
        let w = Term::var("A");
        let f = embed_formula(&parse_formula("{$dia} @ (p)").unwrap(), &w, &mut cx).unwrap();
        assert_eq!(print_formula(&f), "? [W: world] : ( acc(A,W) & p(W) )");
        let f = embed_formula(&parse_formula("p").unwrap(), &w, &mut cx).unwrap();
        assert_eq!(print_formula(&f), "p(A)");
    }

    #[test]
    fn guarded_quantifier_under_varying_domains() {
        let src = "tff(s,logic,$modal == [$domains == $varying, $designation == $rigid, \
                   $terms == $global, $modalities == $modal_system_K]).\n\
                   tff(person_type,type,person: $tType).\ntff(a,axiom,![X: person]: q(X)).\n\
                   tff(q_decl,type,q: person > $o).";
        let (tp, logic) = setup(src);
        let mut cx = EmbeddingContext::new(&tp, &logic).unwrap();
        let f = embed_formula(&parse_formula("![X: person]: q(X)").unwrap(), &Term::var("A"), &mut cx).unwrap();
        assert_eq!(print_formula(&f), "! [X: person] : ( eiw_person(A,X) => q(A,X) )");
    }

    #[test]
    fn fresh_names_avoid_source_symbols() {
        let (tp, logic) = setup(&format!("{K_CONST}tff(a,axiom,world(c) & acc & local_world(c) & [.] p)."));
        let cx = EmbeddingContext::new(&tp, &logic).unwrap();
        assert_eq!(cx.world_sort, "world1");
        assert_eq!(cx.accessibility[&None], "acc1");
        assert_eq!(cx.local_world, "local_world1");
    }

    #[test]
    fn output_is_classical_and_typed() {
        let (tp, logic) = setup(&format!(
            "{K_CONST}tff(a,axiom,![X]: (p(X) => [.] <.> q(f(X)))).\ntff(h,hypothesis,p(c)).\ntff(c,conjecture,<.> q(c))."
        ));
        let out = embed(&tp, &logic).unwrap();
        let mut nonclassical = false;
        for (_, f) in out.problem.formulas() {
            f.visit(&mut |g| nonclassical |= matches!(g, Formula::NonClassical { .. }));
        }
        assert!(!nonclassical);
        let typed = resolve_defaults(&out.problem).unwrap();
        assert_eq!(check_types(&typed), vec![]);
        assert_eq!(out.ledger.provenance.len(), out.problem.statements.len());
        assert_eq!(out.problem.get("h").map(|s| s.role.base), Some(RoleBase::Axiom));
        assert_eq!(out.problem.get("c").map(|s| s.role.base), Some(RoleBase::Conjecture));
    }

    #[test]
    fn foreign_connective_is_rejected() {
        let (tp, logic) = setup(&format!("{K_CONST}tff(a,axiom,{{$usually}} @ (p))."));
        assert_eq!(embed(&tp, &logic).unwrap_err(), EmbeddingError::UnsupportedConnective("$usually".into()));
    }

    #[test]
    fn local_role_variants_coincide() {
        let (a, logic) = setup(&format!("{K_CONST}tff(x,axiom-local,[.] p)."));
        let (b, _) = setup(&format!("{K_CONST}tff(x,hypothesis,[.] p)."));
        assert_eq!(embed(&a, &logic).unwrap().problem, embed(&b, &logic).unwrap().problem);
        let (a, _) = setup(&format!("{K_CONST}tff(x,hypothesis-global,[.] p)."));
        let (b, _) = setup(&format!("{K_CONST}tff(x,axiom,[.] p)."));
        assert_eq!(embed(&a, &logic).unwrap().problem, embed(&b, &logic).unwrap().problem);
    }

    const WORKERS: &str = include_str!("../tests/fixtures/leo_workers.p");

    fn workers_with(domains: &str) -> EmbeddingOutput {
        let (tp, logic) = setup(&WORKERS.replace("$domains == $constant", domains));
        embed(&tp, &logic).unwrap()
    }

    #[test]
    fn workers_statements() {
        let out = workers_with("$domains == $constant");
        let text = |name: &str| print_formula(out.problem.get(name).unwrap().formula().unwrap());
        assert_eq!(
            text("work_hard_to_get_rich"),
            "! [W: world] : ! [P: person] : ( ? [R: product] : work_hard(W,P,R) => ? [W1: world] : ( acc(W,W1) & gets_rich(W1,P) ) )"
        );
        assert_eq!(text("alex_works_on_leo_here"), "work_hard(local_world,alex,leo)");
        assert_eq!(text("acc_reflexive"), "! [W: world] : acc(W,W)");
        assert!(out.problem.logic_statement().is_none());
        assert!(matches!(out.problem.get("work_hard_decl").unwrap().body, Statement::Type(_)));
        assert!(out.problem.statements.iter().all(|s| !s.name.ends_with("_decl_1")));
    }

    #[test]
    fn workers_ledger_counts() {
        let counts = workers_with("$domains == $constant").ledger.counts();
        assert_eq!(counts.get("frame"), Some(&1));
        assert_eq!(counts.get("domain"), None);
        assert_eq!(counts.get("nonemptiness"), None);
        let out = workers_with("$domains == $constant");
        assert!(!out.problem.statements.iter().any(|s| s.name.starts_with("eiw")));

        let counts = workers_with("$domains == $cumulative").ledger.counts();
        assert_eq!(counts.get("nonemptiness"), Some(&2));
        assert_eq!(counts.get("domain"), Some(&2));
        assert_eq!(counts.get("term-locality"), None);
    }

    #[test]
    fn term_locality_threads_world_under_flexible_designation() {
        let out = workers_with("$domains == $varying").problem;
        assert!(out.get("advisor_of_local").is_none());
        let (tp, logic) = setup(
            &WORKERS
                .replace("$domains == $constant", "$domains == $varying")
                .replace("$designation == $rigid", "$designation == $flexible")
                .replace("$terms == $global", "$terms == $local"),
        );
        let out = embed(&tp, &logic).unwrap();
        let text = |name: &str| print_formula(out.problem.get(name).unwrap().formula().unwrap());
        assert_eq!(
            text("advisor_of_local"),
            "! [W: world,X1: person] : ( eiw_person(W,X1) => eiw_person(W,advisor_of(W,X1)) )"
        );
        assert_eq!(text("alex_local"), "! [W: world] : eiw_person(W,alex(W))");
        assert_eq!(check_types(&resolve_defaults(&out.problem).unwrap()), vec![]);
    }
}
