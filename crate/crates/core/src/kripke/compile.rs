//! Compilation of formulae to a positional form for fast evaluation.
//!
//! Symbols, sorts and accessibility relations are numbered by a
//! [`Vocabulary`]; variables become de Bruijn levels into an environment
//! stack.

use std::collections::BTreeSet;

use crate::logic::{connective_kind, ConnectiveKind, NormalizedModalLogic};
use crate::syntax::{symbol_key, Formula, Statement, Term, TptpType, TypedProblem};

use super::model::FiniteKripkeModel;
use super::KripkeError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctionSym {
    pub name: String,
    pub args: Vec<usize>,
    pub result: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateSym {
    pub name: String,
    pub args: Vec<usize>,
}

/// Numbering of the sorts, symbols and relations a set of formulae uses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Vocabulary {
    pub sorts: Vec<String>,
    pub functions: Vec<FunctionSym>,
    pub predicates: Vec<PredicateSym>,
    pub relations: Vec<Option<String>>,
}

/// The name a term type has as a model sort.
pub fn sort_name(ty: &TptpType) -> Option<String> {
    match ty {
        TptpType::Individual => Some("$i".into()),
        TptpType::User(s) => Some(symbol_key(s).to_string()),
        _ => None,
    }
}

impl Vocabulary {
    /// The vocabulary of a model: its sorts, symbols and relations.
    pub fn from_model(m: &FiniteKripkeModel) -> Self {
        Vocabulary {
            sorts: m.sorts.iter().map(|s| s.name.clone()).collect(),
            functions: m
                .functions
                .iter()
                .map(|(n, f)| FunctionSym { name: n.clone(), args: f.args.clone(), result: f.result })
                .collect(),
            predicates: m
                .predicates
                .iter()
                .map(|(n, p)| PredicateSym { name: n.clone(), args: p.args.clone() })
                .collect(),
            relations: m.relations.keys().cloned().collect(),
        }
    }

    /// The vocabulary of a typed problem under `logic`: every declared or
    /// defaulted symbol over term sorts, and the relations of the modal
    /// connectives that occur.
    pub fn for_problem(tp: &TypedProblem, logic: &NormalizedModalLogic) -> Result<Self, KripkeError> {
        let sig = &tp.signature;
        let mut sorts = BTreeSet::new();
        let mut relations = BTreeSet::new();
        let term_types = |tys: &mut dyn Iterator<Item = &TptpType>| -> Option<Vec<String>> {
            tys.map(sort_name).collect::<Option<Vec<_>>>()
        };
        let mut fsyms = Vec::new();
        let mut psyms = Vec::new();
        for (name, st) in sig.user_symbols() {
            if name.starts_with('$') {
                continue;
            }
            let Some(args) = term_types(&mut st.args.iter()) else { continue };
            if st.is_predicate() {
                sorts.extend(args.iter().cloned());
                psyms.push((name.clone(), args));
            } else if let Some(result) = sort_name(&st.result) {
                sorts.extend(args.iter().cloned());
                sorts.insert(result.clone());
                fsyms.push((name.clone(), args, result));
            }
        }
        for s in &tp.problem.statements {
            let Statement::Formula(f) = &s.body else { continue };
            let mut err = None;
            f.visit(&mut |g| match g {
                Formula::Forall(vs, _) | Formula::Exists(vs, _) => {
                    for v in vs {
                        if let Some(n) = v.ty.as_ref().and_then(sort_name) {
                            sorts.insert(n);
                        }
                    }
                }
                Formula::NonClassical { connective, .. } => match connective_kind(connective, logic) {
                    Ok(ConnectiveKind::Box(i) | ConnectiveKind::Dia(i)) => {
                        relations.insert(i);
                    }
                    Ok(ConnectiveKind::Foreign) => {
                        err.get_or_insert(KripkeError::UnsupportedConnective(connective.name.clone()));
                    }
                    Err(e) => {
                        err.get_or_insert(KripkeError::Logic(e));
                    }
                },
                _ => {}
            });
            if let Some(e) = err {
                return Err(e);
            }
        }
        let sorts: Vec<String> = sorts.into_iter().collect();
        let id = |n: &String| sorts.iter().position(|s| s == n).unwrap();
        Ok(Vocabulary {
            functions: fsyms
                .into_iter()
                .map(|(name, args, result)| FunctionSym {
                    name,
                    args: args.iter().map(id).collect(),
                    result: id(&result),
                })
                .collect(),
            predicates: psyms
                .into_iter()
                .map(|(name, args)| PredicateSym { name, args: args.iter().map(id).collect() })
                .collect(),
            relations: relations.into_iter().collect(),
            sorts,
        })
    }

    pub fn sort_id(&self, name: &str) -> Option<usize> {
        self.sorts.iter().position(|s| s == name)
    }

    pub fn function_id(&self, name: &str) -> Option<usize> {
        let key = symbol_key(name);
        self.functions.iter().position(|f| f.name == key)
    }

    pub fn predicate_id(&self, name: &str) -> Option<usize> {
        let key = symbol_key(name);
        self.predicates.iter().position(|p| p.name == key)
    }

    pub fn relation_id(&self, index: &Option<String>) -> Option<usize> {
        self.relations.iter().position(|r| r == index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CTerm {
    /// De Bruijn level into the environment.
    Var(usize),
    App(usize, Vec<CTerm>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CFormula {
    True,
    False,
    Pred(usize, Vec<CTerm>),
    Eq(CTerm, CTerm),
    Not(Box<CFormula>),
    And(Vec<CFormula>),
    Or(Vec<CFormula>),
    Implies(Box<CFormula>, Box<CFormula>),
    Iff(Box<CFormula>, Box<CFormula>),
    /// Quantifier over one variable of the given sort, bound at the next level.
    Forall(usize, Box<CFormula>),
    Exists(usize, Box<CFormula>),
    Box(usize, Box<CFormula>),
    Dia(usize, Box<CFormula>),
}

/// Compiles `f`. `free` lists the free variables with their sorts, in
/// environment order.
pub fn compile(
    f: &Formula,
    vocab: &Vocabulary,
    logic: &NormalizedModalLogic,
    free: &[(String, usize)],
) -> Result<CFormula, KripkeError> {
    let mut cx = Compiler { vocab, logic, env: free.to_vec() };
    cx.formula(f)
}

struct Compiler<'a> {
    vocab: &'a Vocabulary,
    logic: &'a NormalizedModalLogic,
    env: Vec<(String, usize)>,
}

impl Compiler<'_> {
    fn formula(&mut self, f: &Formula) -> Result<CFormula, KripkeError> {
        let b = |x: CFormula| Box::new(x);
        Ok(match f {
            Formula::True => CFormula::True,
            Formula::False => CFormula::False,
            Formula::Atom { predicate, args } => {
                let id = self
                    .vocab
                    .predicate_id(predicate)
                    .ok_or_else(|| KripkeError::UnknownSymbol(predicate.clone()))?;
                let sym = &self.vocab.predicates[id];
                if sym.args.len() != args.len() {
                    return Err(KripkeError::SignatureMismatch(format!("arity of `{predicate}`")));
                }
                let expected = sym.args.clone();
                CFormula::Pred(id, self.terms(args, &expected)?)
            }
            Formula::Equality(a, c) | Formula::Inequality(a, c) => {
                let (ta, sa) = self.term(a)?;
                let (tc, sc) = self.term(c)?;
                if sa != sc {
                    return Err(KripkeError::SignatureMismatch("equality between different sorts".into()));
                }
                let eq = CFormula::Eq(ta, tc);
                if matches!(f, Formula::Inequality(..)) {
                    CFormula::Not(b(eq))
                } else {
                    eq
                }
            }
            Formula::Not(a) => CFormula::Not(b(self.formula(a)?)),
            Formula::And(xs) => CFormula::And(xs.iter().map(|x| self.formula(x)).collect::<Result<_, _>>()?),
            Formula::Or(xs) => CFormula::Or(xs.iter().map(|x| self.formula(x)).collect::<Result<_, _>>()?),
            Formula::Implies(a, c) => CFormula::Implies(b(self.formula(a)?), b(self.formula(c)?)),
            Formula::ReverseImplies(a, c) => CFormula::Implies(b(self.formula(c)?), b(self.formula(a)?)),
            Formula::Iff(a, c) => CFormula::Iff(b(self.formula(a)?), b(self.formula(c)?)),
            Formula::Xor(a, c) => CFormula::Not(b(CFormula::Iff(b(self.formula(a)?), b(self.formula(c)?)))),
            Formula::Forall(vars, body) | Formula::Exists(vars, body) => {
                let n = self.env.len();
                let mut sorts = Vec::new();
                for v in vars {
                    let ty = v.ty.clone().unwrap_or(TptpType::Individual);
                    let name = sort_name(&ty).ok_or_else(|| KripkeError::UnsupportedSort(format!("{ty:?}")))?;
                    let s = self.vocab.sort_id(&name).ok_or(KripkeError::UnsupportedSort(name))?;
                    self.env.push((v.name.clone(), s));
                    sorts.push(s);
                }
                let mut out = self.formula(body)?;
                self.env.truncate(n);
                let universal = matches!(f, Formula::Forall(..));
                for s in sorts.into_iter().rev() {
                    out = if universal { CFormula::Forall(s, b(out)) } else { CFormula::Exists(s, b(out)) };
                }
                out
            }
            Formula::NonClassical { connective, args } => {
                let kind = connective_kind(connective, self.logic)?;
                let (is_box, index) = match kind {
                    ConnectiveKind::Box(i) => (true, i),
                    ConnectiveKind::Dia(i) => (false, i),
                    ConnectiveKind::Foreign => {
                        return Err(KripkeError::UnsupportedConnective(connective.name.clone()))
                    }
                };
                let [arg] = args.as_slice() else {
                    return Err(KripkeError::UnsupportedConnective(format!(
                        "{} with {} arguments",
                        connective.name,
                        args.len()
                    )));
                };
                let rel = self
                    .vocab
                    .relation_id(&index)
                    .ok_or_else(|| KripkeError::UnknownSymbol(format!("relation {index:?}")))?;
                let body = b(self.formula(arg)?);
                if is_box {
                    CFormula::Box(rel, body)
                } else {
                    CFormula::Dia(rel, body)
                }
            }
            Formula::InWorld { .. } => return Err(KripkeError::UnsupportedConnective("$in_world".into())),
        })
    }

    fn terms(&self, args: &[Term], expected: &[usize]) -> Result<Vec<CTerm>, KripkeError> {
        args.iter()
            .zip(expected)
            .map(|(a, &s)| {
                let (t, found) = self.term(a)?;
                if found != s {
                    return Err(KripkeError::SignatureMismatch(format!(
                        "expected sort `{}`, found `{}`",
                        self.vocab.sorts[s], self.vocab.sorts[found]
                    )));
                }
                Ok(t)
            })
            .collect()
    }

    fn term(&self, t: &Term) -> Result<(CTerm, usize), KripkeError> {
        match t {
            Term::Variable(v) => self
                .env
                .iter()
                .rposition(|(n, _)| n == v)
                .map(|i| (CTerm::Var(i), self.env[i].1))
                .ok_or_else(|| KripkeError::UnboundVariable(v.clone())),
            Term::Function { symbol, args } => {
                let id = self.vocab.function_id(symbol).ok_or_else(|| KripkeError::UnknownSymbol(symbol.clone()))?;
                let sym = &self.vocab.functions[id];
                if sym.args.len() != args.len() {
                    return Err(KripkeError::SignatureMismatch(format!("arity of `{symbol}`")));
                }
                Ok((CTerm::App(id, self.terms(args, &sym.args)?), sym.result))
            }
            Term::Defined(d) | Term::Integer(d) => Err(KripkeError::UnknownSymbol(d.clone())),
        }
    }
}
