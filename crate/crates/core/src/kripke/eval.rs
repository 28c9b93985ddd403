//! Kleene three-valued evaluation of compiled formulae.
//!
//! The evaluator is shared by model checking, where every value is known,
//! and countermodel search, where a partial interpretation leaves cells
//! open. Connectives follow the strong Kleene tables, which are monotone:
//! a result that is known stays the same under any extension.

use std::collections::BTreeMap;

use crate::logic::{connective_kind, ConnectiveKind, NormalizedModalLogic};
use crate::syntax::Formula;

use super::compile::{compile, CFormula, CTerm, Vocabulary};
use super::model::{tuple_index, FiniteKripkeModel, FunctionInterp, PredicateInterp};
use super::KripkeError;

/// Worlds, accessibility and domains, numbered by a [`Vocabulary`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    pub worlds: usize,
    /// `succ[rel][w]`: successors of `w`.
    pub succ: Vec<Vec<Vec<usize>>>,
    /// `domains[w][sort]`: elements existing at `w`, ascending.
    pub domains: Vec<Vec<Vec<usize>>>,
}

impl Frame {
    /// The frame of `m` seen through `vocab`; relations the model lacks are empty.
    pub fn of_model(m: &FiniteKripkeModel, vocab: &Vocabulary) -> Result<Self, KripkeError> {
        let sort_map = model_sorts(m, vocab)?;
        let n = m.worlds.len();
        let succ = vocab
            .relations
            .iter()
            .map(|idx| {
                let rel = m.relation(idx.as_deref());
                (0..n).map(|w| (0..n).filter(|&v| rel.contains(&(w, v))).collect()).collect()
            })
            .collect();
        let domains = (0..n)
            .map(|w| sort_map.iter().map(|&s| m.domains[w][s].iter().copied().collect()).collect())
            .collect();
        Ok(Frame { worlds: n, succ, domains })
    }
}

fn model_sorts(m: &FiniteKripkeModel, vocab: &Vocabulary) -> Result<Vec<usize>, KripkeError> {
    vocab
        .sorts
        .iter()
        .map(|s| m.sort_index(s).ok_or_else(|| KripkeError::SignatureMismatch(format!("model has no sort `{s}`"))))
        .collect()
}

/// An uninterpreted position: a function value or predicate entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell {
    pub predicate: bool,
    pub symbol: usize,
    pub world: usize,
    pub tuple: usize,
}

/// Symbol interpretation; `Err` names a cell whose value is not known.
pub trait Interp {
    fn func(&self, w: usize, f: usize, args: &[usize]) -> Result<usize, Cell>;
    fn pred(&self, w: usize, p: usize, args: &[usize]) -> Result<bool, Cell>;
}

/// The interpretation of a model, numbered by a vocabulary. Symbols the model
/// does not interpret are unknown.
pub struct ModelInterp<'m> {
    functions: Vec<Option<(&'m FunctionInterp, Vec<usize>)>>,
    predicates: Vec<Option<(&'m PredicateInterp, Vec<usize>)>>,
}

impl<'m> ModelInterp<'m> {
    pub fn new(m: &'m FiniteKripkeModel, vocab: &Vocabulary) -> Result<Self, KripkeError> {
        let sort_map = model_sorts(m, vocab)?;
        let same = |ours: &[usize], theirs: &[usize]| {
            ours.len() == theirs.len() && ours.iter().zip(theirs).all(|(&a, &b)| sort_map[a] == b)
        };
        let mut functions = Vec::new();
        for f in &vocab.functions {
            functions.push(match m.functions.get(&f.name) {
                Some(fi) if same(&f.args, &fi.args) && sort_map[f.result] == fi.result => {
                    Some((fi, m.sizes(&fi.args)))
                }
                Some(_) => return Err(KripkeError::SignatureMismatch(format!("sorts of `{}`", f.name))),
                None => None,
            });
        }
        let mut predicates = Vec::new();
        for p in &vocab.predicates {
            predicates.push(match m.predicates.get(&p.name) {
                Some(pi) if same(&p.args, &pi.args) => Some((pi, m.sizes(&pi.args))),
                Some(_) => return Err(KripkeError::SignatureMismatch(format!("sorts of `{}`", p.name))),
                None => None,
            });
        }
        Ok(ModelInterp { functions, predicates })
    }
}

impl Interp for ModelInterp<'_> {
    fn func(&self, w: usize, f: usize, args: &[usize]) -> Result<usize, Cell> {
        let cell = |tuple| Cell { predicate: false, symbol: f, world: w, tuple };
        match &self.functions[f] {
            Some((fi, sizes)) => {
                let t = tuple_index(sizes, args);
                fi.tables[w][t].ok_or(cell(t))
            }
            None => Err(cell(0)),
        }
    }

    fn pred(&self, w: usize, p: usize, args: &[usize]) -> Result<bool, Cell> {
        match &self.predicates[p] {
            Some((pi, sizes)) => Ok(pi.tables[w][tuple_index(sizes, args)]),
            None => Err(Cell { predicate: true, symbol: p, world: w, tuple: 0 }),
        }
    }
}

/// Evaluation state: the environment, an atom counter for budgets, and the
/// first unknown cell met since the last reset.
pub struct Evaluator<'a, I: Interp> {
    pub frame: &'a Frame,
    pub interp: &'a I,
    pub atoms: u64,
    pub unknown: Option<Cell>,
    pub env: Vec<usize>,
}

impl<'a, I: Interp> Evaluator<'a, I> {
    pub fn new(frame: &'a Frame, interp: &'a I) -> Self {
        Evaluator { frame, interp, atoms: 0, unknown: None, env: Vec::new() }
    }

    pub fn term(&mut self, t: &CTerm, w: usize) -> Option<usize> {
        match t {
            CTerm::Var(i) => Some(self.env[*i]),
            CTerm::App(f, args) => {
                let mut buf = [0usize; 8];
                let mut heap;
                let vals: &mut [usize] = if args.len() <= buf.len() {
                    &mut buf[..args.len()]
                } else {
                    heap = vec![0; args.len()];
                    &mut heap
                };
                for (slot, a) in vals.iter_mut().zip(args) {
                    *slot = self.term(a, w)?;
                }
                match self.interp.func(w, *f, vals) {
                    Ok(v) => Some(v),
                    Err(c) => {
                        self.unknown.get_or_insert(c);
                        None
                    }
                }
            }
        }
    }

    /// `Some(truth)` when determined, `None` when it depends on unknown cells.
    pub fn formula(&mut self, f: &CFormula, w: usize) -> Option<bool> {
        match f {
            CFormula::True => Some(true),
            CFormula::False => Some(false),
            CFormula::Pred(p, args) => {
                self.atoms += 1;
                let mut buf = [0usize; 8];
                let mut heap;
                let vals: &mut [usize] = if args.len() <= buf.len() {
                    &mut buf[..args.len()]
                } else {
                    heap = vec![0; args.len()];
                    &mut heap
                };
                for (slot, a) in vals.iter_mut().zip(args) {
                    *slot = self.term(a, w)?;
                }
                match self.interp.pred(w, *p, vals) {
                    Ok(v) => Some(v),
                    Err(c) => {
                        self.unknown.get_or_insert(c);
                        None
                    }
                }
            }
            CFormula::Eq(a, b) => {
                self.atoms += 1;
                let a = self.term(a, w);
                let b = self.term(b, w);
                Some(a? == b?)
            }
            CFormula::Not(a) => self.formula(a, w).map(|v| !v),
            CFormula::And(xs) => {
                let mut all = Some(true);
                for x in xs {
                    match self.formula(x, w) {
                        Some(false) => return Some(false),
                        None => all = None,
                        Some(true) => {}
                    }
                }
                all
            }
            CFormula::Or(xs) => {
                let mut any = Some(false);
                for x in xs {
                    match self.formula(x, w) {
                        Some(true) => return Some(true),
                        None => any = None,
                        Some(false) => {}
                    }
                }
                any
            }
            CFormula::Implies(a, b) => match self.formula(a, w) {
                Some(false) => Some(true),
                va => match self.formula(b, w) {
                    Some(true) => Some(true),
                    Some(false) => va.map(|v| !v),
                    None => None,
                },
            },
            CFormula::Iff(a, b) => {
                let va = self.formula(a, w);
                let vb = self.formula(b, w);
                Some(va? == vb?)
            }
            CFormula::Forall(s, body) => self.quantify(*s, body, w, false),
            CFormula::Exists(s, body) => self.quantify(*s, body, w, true),
            CFormula::Box(r, body) => self.modal(*r, body, w, false),
            CFormula::Dia(r, body) => self.modal(*r, body, w, true),
        }
    }

    /// `∀` when `exists` is false: some false decides, else any unknown is unknown.
    fn quantify(&mut self, sort: usize, body: &CFormula, w: usize, exists: bool) -> Option<bool> {
        let frame = self.frame;
        let mut result = Some(!exists);
        self.env.push(0);
        let slot = self.env.len() - 1;
        for &e in &frame.domains[w][sort] {
            self.env[slot] = e;
            match self.formula(body, w) {
                Some(v) if v == exists => {
                    result = Some(exists);
                    break;
                }
                None => result = None,
                Some(_) => {}
            }
        }
        self.env.pop();
        result
    }

    fn modal(&mut self, rel: usize, body: &CFormula, w: usize, exists: bool) -> Option<bool> {
        let frame = self.frame;
        let mut result = Some(!exists);
        for &v in &frame.succ[rel][w] {
            match self.formula(body, v) {
                Some(t) if t == exists => return Some(exists),
                None => result = None,
                Some(_) => {}
            }
        }
        result
    }
}

/// An element of a model sort, for assignments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pub sort: usize,
    pub index: usize,
}

pub type Assignment = BTreeMap<String, Element>;

/// Truth of `f` at world `w` of `m` under assignment `a`.
pub fn eval(
    m: &FiniteKripkeModel,
    w: usize,
    f: &Formula,
    a: &Assignment,
    logic: &NormalizedModalLogic,
) -> Result<bool, KripkeError> {
    let mut vocab = Vocabulary::from_model(m);
    let mut err = None;
    f.visit(&mut |g| {
        if let Formula::NonClassical { connective, .. } = g {
            match connective_kind(connective, logic) {
                Ok(ConnectiveKind::Box(i) | ConnectiveKind::Dia(i)) => {
                    if vocab.relation_id(&i).is_none() {
                        vocab.relations.push(i);
                    }
                }
                Ok(ConnectiveKind::Foreign) => {
                    err.get_or_insert(KripkeError::UnsupportedConnective(connective.name.clone()));
                }
                Err(e) => {
                    err.get_or_insert(KripkeError::Logic(e));
                }
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let free: Vec<(String, usize)> = a.iter().map(|(v, e)| (v.clone(), e.sort)).collect();
    let cf = compile(f, &vocab, logic, &free)?;
    let frame = Frame::of_model(m, &vocab)?;
    let interp = ModelInterp::new(m, &vocab)?;
    let mut ev = Evaluator::new(&frame, &interp);
    ev.env = a.values().map(|e| e.index).collect();
    let v = ev.formula(&cf, w);
    known(v, ev.unknown, &vocab, m)
}

/// Turns a three-valued result into a two-valued one, naming the missing
/// value when there is one.
pub fn known(
    v: Option<bool>,
    unknown: Option<Cell>,
    vocab: &Vocabulary,
    m: &FiniteKripkeModel,
) -> Result<bool, KripkeError> {
    v.ok_or_else(|| {
        let what = match unknown {
            Some(c) if c.predicate => format!("predicate `{}`", vocab.predicates[c.symbol].name),
            Some(c) => format!("function `{}` at {}", vocab.functions[c.symbol].name, m.worlds[c.world]),
            None => "a symbol".into(),
        };
        KripkeError::Undefined(what)
    })
}
