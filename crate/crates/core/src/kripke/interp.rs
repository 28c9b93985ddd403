//! Reading and writing interpretation files.
//!
//! Domains follow the promotion convention: for each problem sort `X` there
//! is a domain type `d_X` whose declared constants are the elements, and a
//! promoter `d2x: d_X > X`. A domain statement enumerates the elements
//! (`! [DP: d_X] : (DP = e1 | ...)`); mapping statements give function values
//! and predicate literals on promoted elements. Kripke interpretations add an
//! `interpretation-worlds` statement and scope each world's formulae with
//! `$in_world(w, ...)`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::syntax::{
    AnnotatedFormula, DeclaredType, Formula, Language, Problem, Role, RoleBase, Signature, Statement, SubRole,
    Term, TptpType, TypeDeclaration, TypedVariable,
};

use super::compile::sort_name;
use super::model::{tuple_count, tuple_index, FiniteKripkeModel, FunctionInterp, PredicateInterp, Sort};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum InterpretationError {
    #[error("no interpretation statements")]
    Empty,
    #[error("the worlds statement does not fix `$local_world`")]
    MissingLocalWorld,
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("no exhaustive enumeration of the domain of {sort} at {world}")]
    NonExhaustiveDomain { sort: String, world: String },
    #[error("contradictory interpretation of `{symbol}` at {world}")]
    Contradiction { symbol: String, world: String },
    #[error("`{0}` is not declared by the problem")]
    UndeclaredSymbol(String),
    #[error("`{symbol}` is used with sorts that disagree with {context}")]
    SortMismatch { symbol: String, context: String },
    #[error("unrecognised interpretation formula: {0}")]
    Unrecognised(String),
    #[error("unknown domain element `{0}`")]
    UnknownElement(String),
}

const ACCESSIBLE: &str = "$accessible_world";
const INDEXED_ACCESSIBLE: &str = "$$accessible_world_";

/// Declared domain types, elements and promoters of an interpretation file.
#[derive(Default)]
struct Declarations {
    worlds: Vec<String>,
    /// element → domain type
    elements: BTreeMap<String, String>,
    /// element declaration order
    element_order: Vec<String>,
    /// promoter → (domain type, problem sort)
    promoters: BTreeMap<String, (String, String)>,
}

impl Declarations {
    fn collect(p: &Problem) -> Self {
        let mut d = Declarations::default();
        for s in &p.statements {
            let Statement::Type(TypeDeclaration { symbol, ty }) = &s.body else { continue };
            match ty {
                DeclaredType::Type(TptpType::World) => d.worlds.push(symbol.clone()),
                DeclaredType::Type(TptpType::Mapping(args, res)) => {
                    if let ([TptpType::User(dom)], Some(target)) = (args.as_slice(), sort_name(res)) {
                        d.promoters.insert(symbol.clone(), (dom.clone(), target));
                    }
                }
                DeclaredType::Type(TptpType::User(t)) => {
                    d.elements.insert(symbol.clone(), t.clone());
                    d.element_order.push(symbol.clone());
                }
                _ => {}
            }
        }
        // Only constants of promoted domain types are elements.
        let promoted: BTreeSet<&String> = d.promoters.values().map(|(dom, _)| dom).collect();
        d.elements.retain(|_, t| promoted.contains(t));
        let elements = &d.elements;
        d.element_order.retain(|e| elements.contains_key(e));
        d
    }

    fn sort_of_domain(&self, dom: &str) -> Option<&str> {
        self.promoters.values().find(|(d, _)| d == dom).map(|(_, s)| s.as_str())
    }
}

fn conjuncts(f: &Formula, out: &mut Vec<Formula>) {
    match f {
        Formula::And(xs) => xs.iter().for_each(|x| conjuncts(x, out)),
        other => out.push(other.clone()),
    }
}

/// Reads a Tarskian or Kripke interpretation. With a signature, every
/// interpreted symbol must be declared by it with matching sorts. Returns the
/// model and warnings about ignored literals.
pub fn parse_interpretation(
    p: &Problem,
    signature: Option<&Signature>,
) -> Result<(FiniteKripkeModel, Vec<String>), InterpretationError> {
    let decls = Declarations::collect(p);
    let mut warnings = Vec::new();

    let mut worlds: Vec<String> = Vec::new();
    let mut local_world = None;
    let mut edges: Vec<(Option<String>, String, String)> = Vec::new();
    let mut has_worlds_statement = false;
    let mut bodies: Vec<(Option<String>, Formula)> = Vec::new();
    for s in &p.statements {
        let Statement::Formula(f) = &s.body else { continue };
        if s.role.base != RoleBase::Interpretation {
            continue;
        }
        let mut parts = Vec::new();
        conjuncts(f, &mut parts);
        if s.role.subrole == Some(SubRole::Worlds) {
            has_worlds_statement = true;
            for c in parts {
                read_world_fact(&c, &mut worlds, &mut local_world, &mut edges)?;
            }
            continue;
        }
        for c in parts {
            match c {
                Formula::InWorld { world, body } => {
                    let Term::Function { symbol, args } = &world else {
                        return Err(InterpretationError::Unrecognised(format!("world term {world:?}")));
                    };
                    if !args.is_empty() {
                        return Err(InterpretationError::UnknownWorld(symbol.clone()));
                    }
                    let mut inner = Vec::new();
                    conjuncts(&body, &mut inner);
                    bodies.extend(inner.into_iter().map(|b| (Some(symbol.clone()), b)));
                }
                other => bodies.push((None, other)),
            }
        }
    }
    if bodies.is_empty() && !has_worlds_statement {
        return Err(InterpretationError::Empty);
    }
    if has_worlds_statement {
        if worlds.is_empty() {
            worlds = decls.worlds.clone();
        }
        if local_world.is_none() {
            return Err(InterpretationError::MissingLocalWorld);
        }
    } else {
        worlds = vec!["w1".into()];
        local_world = Some("w1".into());
    }
    let world_id = |w: &str| {
        worlds.iter().position(|x| x == w).ok_or_else(|| InterpretationError::UnknownWorld(w.to_string()))
    };
    let n = worlds.len();
    let local = world_id(local_world.as_deref().unwrap_or_default())?;
    let mut relations: BTreeMap<Option<String>, BTreeSet<(usize, usize)>> = BTreeMap::new();
    for (idx, u, v) in &edges {
        relations.entry(idx.clone()).or_default().insert((world_id(u)?, world_id(v)?));
    }
    let targets = |scope: &Option<String>| -> Result<Vec<usize>, InterpretationError> {
        match scope {
            Some(w) => Ok(vec![world_id(w)?]),
            None => Ok((0..n).collect()),
        }
    };

    // Domains: enumerations per world.
    let mut enumerations: BTreeMap<String, Vec<Option<Vec<String>>>> = BTreeMap::new();
    let mut mappings = Vec::new();
    for (scope, f) in &bodies {
        match classify_domain(f, &decls)? {
            DomainFact::Enumeration(dom, elems) => {
                let per_world = enumerations.entry(dom).or_insert_with(|| vec![None; n]);
                for w in targets(scope)? {
                    per_world[w] = Some(elems.clone());
                }
            }
            DomainFact::Ignored => {}
            DomainFact::Distinct(a, b) => {
                if a == b {
                    return Err(InterpretationError::Contradiction {
                        symbol: a,
                        world: scope.clone().unwrap_or_else(|| "every world".into()),
                    });
                }
            }
            DomainFact::NotDomain => mappings.push((scope.clone(), f.clone())),
        }
    }
    let mut sorts = Vec::new();
    let mut domain_of_sort = Vec::new();
    for (dom, target) in decls.promoters.values().map(|(d, t)| (d.clone(), t.clone())).collect::<BTreeSet<_>>() {
        let Some(per_world) = enumerations.get(&dom) else {
            return Err(InterpretationError::NonExhaustiveDomain { sort: target, world: worlds[0].clone() });
        };
        let mut elements: Vec<String> = Vec::new();
        for (w, e) in per_world.iter().enumerate() {
            let Some(e) = e else {
                return Err(InterpretationError::NonExhaustiveDomain { sort: target, world: worlds[w].clone() });
            };
            for x in e {
                if !elements.contains(x) {
                    elements.push(x.clone());
                }
            }
        }
        // Declaration order names elements stably.
        elements.sort_by_key(|e| decls.element_order.iter().position(|x| x == e));
        sorts.push(Sort { name: target, elements });
        domain_of_sort.push(dom);
    }
    let domains: Vec<Vec<BTreeSet<usize>>> = (0..n)
        .map(|w| {
            domain_of_sort
                .iter()
                .zip(&sorts)
                .map(|(dom, sort)| {
                    enumerations[dom][w]
                        .iter()
                        .flatten()
                        .map(|e| sort.elements.iter().position(|x| x == e).expect("element of the union"))
                        .collect()
                })
                .collect()
        })
        .collect();

    // Mappings: function values and predicate literals.
    let mut cx = Mapping {
        decls: &decls,
        sorts: &sorts,
        signature,
        functions: BTreeMap::new(),
        predicates: BTreeMap::new(),
        warnings: &mut warnings,
    };
    for (scope, f) in &mappings {
        for w in targets(scope)? {
            cx.fact(f, w, &worlds[w])?;
        }
    }
    let sizes = |args: &[usize]| args.iter().map(|&s| sorts[s].elements.len()).collect::<Vec<_>>();
    let functions = cx
        .functions
        .into_iter()
        .map(|(name, (args, result, facts))| {
            let sz = sizes(&args);
            let mut tables = vec![vec![None; tuple_count(sz.iter().copied())]; n];
            for ((w, tuple), v) in facts {
                tables[w][tuple_index(&sz, &tuple)] = Some(v);
            }
            (name, FunctionInterp { args, result, tables })
        })
        .collect();
    let predicates = cx
        .predicates
        .into_iter()
        .map(|(name, (args, facts))| {
            let sz = sizes(&args);
            let mut tables = vec![vec![false; tuple_count(sz.iter().copied())]; n];
            for ((w, tuple), v) in facts {
                tables[w][tuple_index(&sz, &tuple)] = v;
            }
            (name, PredicateInterp { args, tables })
        })
        .collect();
    let model = FiniteKripkeModel { worlds, local_world: local, relations, sorts, domains, functions, predicates };
    Ok((model, warnings))
}

fn world_name(t: &Term) -> Result<String, InterpretationError> {
    match t {
        Term::Function { symbol, args } if args.is_empty() => Ok(symbol.clone()),
        other => Err(InterpretationError::Unrecognised(format!("world term {other:?}"))),
    }
}

fn read_world_fact(
    f: &Formula,
    worlds: &mut Vec<String>,
    local: &mut Option<String>,
    edges: &mut Vec<(Option<String>, String, String)>,
) -> Result<(), InterpretationError> {
    match f {
        Formula::Forall(vs, body) if vs.len() == 1 => {
            let mut alts = Vec::new();
            match body.as_ref() {
                Formula::Or(xs) => alts.extend(xs.iter()),
                other => alts.push(other),
            }
            for a in alts {
                match a {
                    Formula::Equality(Term::Variable(v), w) if *v == vs[0].name => worlds.push(world_name(w)?),
                    other => return Err(InterpretationError::Unrecognised(format!("{other:?}"))),
                }
            }
            Ok(())
        }
        Formula::Equality(Term::Defined(d), w) | Formula::Equality(w, Term::Defined(d)) if d == "$local_world" => {
            *local = Some(world_name(w)?);
            Ok(())
        }
        Formula::Atom { predicate, args } if args.len() == 2 => {
            let index = if predicate == ACCESSIBLE {
                None
            } else if let Some(i) = predicate.strip_prefix(INDEXED_ACCESSIBLE) {
                Some(format!("#{i}"))
            } else {
                return Err(InterpretationError::Unrecognised(predicate.clone()));
            };
            edges.push((index, world_name(&args[0])?, world_name(&args[1])?));
            Ok(())
        }
        // Distinctness of world constants is built in.
        Formula::Inequality(..) => Ok(()),
        other => Err(InterpretationError::Unrecognised(format!("{other:?}"))),
    }
}

enum DomainFact {
    Enumeration(String, Vec<String>),
    Distinct(String, String),
    Ignored,
    NotDomain,
}

fn var_type(v: &TypedVariable) -> Option<&str> {
    match &v.ty {
        Some(TptpType::User(t)) => Some(t),
        _ => None,
    }
}

fn classify_domain(f: &Formula, decls: &Declarations) -> Result<DomainFact, InterpretationError> {
    let is_domain_type = |t: &str| decls.sort_of_domain(t).is_some();
    Ok(match f {
        Formula::Forall(vs, body) if vs.len() == 1 => {
            let v = &vs[0];
            match body.as_ref() {
                // Surjectivity of the promoter.
                Formula::Exists(..) => DomainFact::Ignored,
                _ if var_type(v).is_some_and(is_domain_type) => {
                    let dom = var_type(v).unwrap_or_default().to_string();
                    let mut alts = Vec::new();
                    match body.as_ref() {
                        Formula::Or(xs) => alts.extend(xs.iter()),
                        other => alts.push(other),
                    }
                    let mut elems = Vec::new();
                    for a in alts {
                        match a {
                            Formula::Equality(Term::Variable(x), Term::Function { symbol, args })
                                if *x == v.name && args.is_empty() && decls.elements.get(symbol) == Some(&dom) =>
                            {
                                elems.push(symbol.clone())
                            }
                            other => return Err(InterpretationError::Unrecognised(format!("{other:?}"))),
                        }
                    }
                    DomainFact::Enumeration(dom, elems)
                }
                _ => DomainFact::NotDomain,
            }
        }
        // Injectivity of the promoter.
        Formula::Forall(vs, _) if vs.len() == 2 && vs.iter().all(|v| var_type(v).is_some_and(is_domain_type)) => {
            DomainFact::Ignored
        }
        Formula::Inequality(Term::Function { symbol: a, args: xa }, Term::Function { symbol: b, args: xb })
            if xa.is_empty() && xb.is_empty() && decls.elements.contains_key(a) && decls.elements.contains_key(b) =>
        {
            DomainFact::Distinct(a.clone(), b.clone())
        }
        _ => DomainFact::NotDomain,
    })
}

type Facts<V> = BTreeMap<(usize, Vec<usize>), V>;

struct Mapping<'a> {
    decls: &'a Declarations,
    sorts: &'a [Sort],
    signature: Option<&'a Signature>,
    functions: BTreeMap<String, (Vec<usize>, usize, Facts<usize>)>,
    predicates: BTreeMap<String, (Vec<usize>, Facts<bool>)>,
    warnings: &'a mut Vec<String>,
}

enum Resolved {
    Element(usize, usize),
    /// An element declared but in no enumeration.
    Outside(String),
}

impl Mapping<'_> {
    /// `d2x(e)` or a bare `e`, as (sort, element).
    fn element(&self, t: &Term) -> Result<Resolved, InterpretationError> {
        let (name, via) = match t {
            Term::Function { symbol, args } if args.len() == 1 && self.decls.promoters.contains_key(symbol) => {
                match &args[0] {
                    Term::Function { symbol: e, args } if args.is_empty() => (e, Some(symbol)),
                    other => return Err(InterpretationError::Unrecognised(format!("{other:?}"))),
                }
            }
            Term::Function { symbol, args } if args.is_empty() => (symbol, None),
            other => return Err(InterpretationError::Unrecognised(format!("{other:?}"))),
        };
        let dom = self.decls.elements.get(name).ok_or_else(|| InterpretationError::UnknownElement(name.clone()))?;
        if let Some(p) = via {
            if &self.decls.promoters[p].0 != dom {
                return Err(InterpretationError::SortMismatch { symbol: p.clone(), context: name.clone() });
            }
        }
        let target = self.decls.sort_of_domain(dom).expect("elements have promoted types");
        let s = self.sorts.iter().position(|s| s.name == target).expect("sorts cover promoted types");
        Ok(match self.sorts[s].elements.iter().position(|e| e == name) {
            Some(e) => Resolved::Element(s, e),
            None => Resolved::Outside(name.clone()),
        })
    }

    fn check_signature(&self, symbol: &str, args: &[usize], result: Option<usize>) -> Result<(), InterpretationError> {
        let Some(sig) = self.signature else { return Ok(()) };
        let st = sig.get(symbol).ok_or_else(|| InterpretationError::UndeclaredSymbol(symbol.to_string()))?;
        let want: Vec<Option<String>> = st.args.iter().map(sort_name).collect();
        let have: Vec<Option<String>> = args.iter().map(|&s| Some(self.sorts[s].name.clone())).collect();
        let result_ok = match result {
            Some(r) => sort_name(&st.result).as_deref() == Some(self.sorts[r].name.as_str()),
            None => st.is_predicate(),
        };
        if want != have || !result_ok {
            return Err(InterpretationError::SortMismatch { symbol: symbol.to_string(), context: "the problem".into() });
        }
        Ok(())
    }

    fn fact(&mut self, f: &Formula, w: usize, world: &str) -> Result<(), InterpretationError> {
        let contradiction = |symbol: &str| InterpretationError::Contradiction {
            symbol: symbol.to_string(),
            world: world.to_string(),
        };
        match f {
            Formula::Equality(lhs, rhs) => {
                let (symbol, args) = match lhs {
                    Term::Function { symbol, args } if !self.decls.promoters.contains_key(symbol) => (symbol, args),
                    other => return Err(InterpretationError::Unrecognised(format!("{other:?}"))),
                };
                let mut sorts = Vec::new();
                let mut tuple = Vec::new();
                for a in args.iter().chain(std::iter::once(rhs)) {
                    match self.element(a)? {
                        Resolved::Element(s, e) => {
                            sorts.push(s);
                            tuple.push(e);
                        }
                        Resolved::Outside(e) => {
                            self.warnings.push(format!("ignored `{symbol}` on `{e}`, which no domain enumerates"));
                            return Ok(());
                        }
                    }
                }
                let (result, value) = (sorts.pop().unwrap_or_default(), tuple.pop().unwrap_or_default());
                self.check_signature(symbol, &sorts, Some(result))?;
                let entry = self.functions.entry(symbol.clone()).or_insert_with(|| (sorts.clone(), result, Facts::new()));
                if entry.0 != sorts || entry.1 != result {
                    return Err(InterpretationError::SortMismatch { symbol: symbol.clone(), context: "earlier uses".into() });
                }
                if *entry.2.entry((w, tuple)).or_insert(value) != value {
                    return Err(contradiction(symbol));
                }
                Ok(())
            }
            Formula::Atom { .. } | Formula::Not(_) => {
                let (positive, atom) = match f {
                    Formula::Not(inner) => (false, inner.as_ref()),
                    atom => (true, atom),
                };
                let Formula::Atom { predicate, args } = atom else {
                    return Err(InterpretationError::Unrecognised(crate::syntax::print_formula(f)));
                };
                let mut sorts = Vec::new();
                let mut tuple = Vec::new();
                for a in args {
                    match self.element(a)? {
                        Resolved::Element(s, e) => {
                            sorts.push(s);
                            tuple.push(e);
                        }
                        Resolved::Outside(e) => {
                            self.warnings.push(format!("ignored `{predicate}` on `{e}`, which no domain enumerates"));
                            return Ok(());
                        }
                    }
                }
                self.check_signature(predicate, &sorts, None)?;
                let entry = self.predicates.entry(predicate.clone()).or_insert_with(|| (sorts.clone(), Facts::new()));
                if entry.0 != sorts {
                    return Err(InterpretationError::SortMismatch {
                        symbol: predicate.clone(),
                        context: "earlier uses".into(),
                    });
                }
                if *entry.1.entry((w, tuple)).or_insert(positive) != positive {
                    return Err(contradiction(predicate));
                }
                Ok(())
            }
            other => Err(InterpretationError::Unrecognised(crate::syntax::print_formula(other))),
        }
    }
}

/// Renders `m` as a Kripke interpretation named `name`: world and domain
/// declarations, a worlds statement and one `$in_world` block per world.
/// `taken` lists symbols the generated names must avoid.
pub fn write_interpretation(m: &FiniteKripkeModel, name: &str, taken: &BTreeSet<String>) -> Problem {
    let mut used: BTreeSet<String> = taken.clone();
    used.extend(m.functions.keys().cloned());
    used.extend(m.predicates.keys().cloned());
    used.extend(m.sorts.iter().map(|s| s.name.clone()));
    let mut fresh = |base: String| {
        let mut candidate = base.clone();
        let mut k = 1;
        while used.contains(&candidate) {
            candidate = format!("{base}_{k}");
            k += 1;
        }
        used.insert(candidate.clone());
        candidate
    };
    let world_names: Vec<String> = (1..=m.worlds.len()).map(|i| fresh(format!("w{i}"))).collect();
    struct SortNames {
        ty: String,
        promoter: String,
        elements: Vec<String>,
    }
    let names: Vec<SortNames> = m
        .sorts
        .iter()
        .map(|s| {
            let stem = s.name.trim_start_matches('$').to_string();
            SortNames {
                ty: fresh(format!("d_{stem}")),
                promoter: fresh(format!("d2{stem}")),
                elements: (1..=s.elements.len()).map(|k| fresh(format!("d_{stem}_{k}"))).collect(),
            }
        })
        .collect();
    let sort_type = |s: &Sort| match s.name.as_str() {
        "$i" => TptpType::Individual,
        other => TptpType::User(other.to_string()),
    };

    let mut statements = Vec::new();
    let decl = |sym: &str, ty: DeclaredType| {
        AnnotatedFormula::new(
            Language::Tff,
            format!("{sym}_decl"),
            Role::new(RoleBase::Type),
            Statement::Type(TypeDeclaration { symbol: sym.to_string(), ty }),
        )
    };
    for w in &world_names {
        statements.push(decl(w, DeclaredType::Type(TptpType::World)));
    }
    for (s, n) in m.sorts.iter().zip(&names) {
        statements.push(decl(&n.ty, DeclaredType::Sort));
        for e in &n.elements {
            statements.push(decl(e, DeclaredType::Type(TptpType::User(n.ty.clone()))));
        }
        statements.push(decl(
            &n.promoter,
            DeclaredType::Type(TptpType::Mapping(vec![TptpType::User(n.ty.clone())], Box::new(sort_type(s)))),
        ));
    }

    let world_term = |w: usize| Term::constant(world_names[w].clone());
    let mut facts = vec![Formula::forall(
        vec![TypedVariable::new("W", TptpType::World)],
        Formula::Or(
            (0..m.worlds.len()).map(|w| Formula::Equality(Term::var("W"), world_term(w))).collect(),
        ),
    )];
    facts.push(Formula::Equality(Term::Defined("$local_world".into()), world_term(m.local_world)));
    for (idx, rel) in &m.relations {
        let pred = match idx {
            None => ACCESSIBLE.to_string(),
            Some(i) => format!("{INDEXED_ACCESSIBLE}{}", i.trim_start_matches('#')),
        };
        for &(u, v) in rel {
            facts.push(Formula::atom(pred.clone(), vec![world_term(u), world_term(v)]));
        }
    }
    statements.push(AnnotatedFormula::new(
        Language::Tff,
        name,
        Role::with_subrole(RoleBase::Interpretation, SubRole::Worlds),
        Statement::Formula(flat_and(facts)),
    ));

    let promoted = |s: usize, e: usize| Term::app(names[s].promoter.clone(), vec![Term::constant(names[s].elements[e].clone())]);
    let mut blocks = Vec::new();
    for w in 0..m.worlds.len() {
        let mut body = Vec::new();
        for (s, sort) in m.sorts.iter().enumerate() {
            let n = &names[s];
            body.push(Formula::forall(
                vec![TypedVariable::new("X", sort_type(sort))],
                Formula::exists(
                    vec![TypedVariable::new("D", TptpType::User(n.ty.clone()))],
                    Formula::Equality(Term::var("X"), Term::app(n.promoter.clone(), vec![Term::var("D")])),
                ),
            ));
            let dom: Vec<usize> = m.domains[w][s].iter().copied().collect();
            body.push(Formula::forall(
                vec![TypedVariable::new("D", TptpType::User(n.ty.clone()))],
                flat_or(dom.iter().map(|&e| Formula::Equality(Term::var("D"), Term::constant(n.elements[e].clone()))).collect()),
            ));
            for (i, &a) in dom.iter().enumerate() {
                for &b in &dom[i + 1..] {
                    body.push(Formula::Inequality(Term::constant(n.elements[a].clone()), Term::constant(n.elements[b].clone())));
                }
            }
        }
        for (fname, f) in &m.functions {
            let sizes = m.sizes(&f.args);
            for (t, v) in f.tables[w].iter().enumerate() {
                let Some(v) = v else { continue };
                let args = super::model::tuple_of(&sizes, t);
                let lhs = Term::app(fname.clone(), args.iter().zip(&f.args).map(|(&e, &s)| promoted(s, e)).collect());
                body.push(Formula::Equality(lhs, promoted(f.result, *v)));
            }
        }
        for (pname, p) in &m.predicates {
            let sizes = m.sizes(&p.args);
            for (t, &v) in p.tables[w].iter().enumerate() {
                let args = super::model::tuple_of(&sizes, t);
                let atom = Formula::atom(pname.clone(), args.iter().zip(&p.args).map(|(&e, &s)| promoted(s, e)).collect());
                body.push(if v { atom } else { Formula::not(atom) });
            }
        }
        blocks.push(Formula::InWorld { world: world_term(w), body: Box::new(flat_and(body)) });
    }
    statements.push(AnnotatedFormula::new(
        Language::Tff,
        name,
        Role::new(RoleBase::Interpretation),
        Statement::Formula(flat_and(blocks)),
    ));
    Problem { includes: Vec::new(), statements }
}

fn flat_and(mut xs: Vec<Formula>) -> Formula {
    match xs.len() {
        0 => Formula::True,
        1 => xs.pop().unwrap_or(Formula::True),
        _ => Formula::And(xs),
    }
}

fn flat_or(mut xs: Vec<Formula>) -> Formula {
    match xs.len() {
        0 => Formula::False,
        1 => xs.pop().unwrap_or(Formula::False),
        _ => Formula::Or(xs),
    }
}
