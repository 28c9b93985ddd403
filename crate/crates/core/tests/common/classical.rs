//! A direct Tarskian evaluator for classical many-sorted formulae, written
//! independently of the library's compiled Kripke evaluator, and the
//! two-sorted structure a Kripke model induces on an embedding's vocabulary.

use std::collections::BTreeMap;

use ntf_core::embedding::EmbeddingContext;
use ntf_core::kripke::model::tuple_index;
use ntf_core::kripke::FiniteKripkeModel;
use ntf_core::logic::Designation;
use ntf_core::syntax::{Formula, Term, TptpType};

pub trait Structure {
    fn size(&self, sort: &str) -> usize;
    fn func(&self, name: &str, args: &[usize]) -> usize;
    fn pred(&self, name: &str, args: &[usize]) -> bool;
}

fn sort_of(ty: &Option<TptpType>) -> String {
    match ty {
        None | Some(TptpType::Individual) => "$i".into(),
        Some(TptpType::User(s)) => s.clone(),
        Some(other) => panic!("unexpected variable type {other:?}"),
    }
}

pub fn term(s: &dyn Structure, t: &Term, env: &BTreeMap<String, usize>) -> usize {
    match t {
        Term::Variable(v) => *env.get(v).unwrap_or_else(|| panic!("unbound {v}")),
        Term::Function { symbol, args } => {
            let vals: Vec<usize> = args.iter().map(|a| term(s, a, env)).collect();
            s.func(symbol, &vals)
        }
        other => panic!("unexpected term {other:?}"),
    }
}

pub fn holds(s: &dyn Structure, f: &Formula, env: &mut BTreeMap<String, usize>) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom { predicate, args } => {
            let vals: Vec<usize> = args.iter().map(|a| term(s, a, env)).collect();
            s.pred(predicate, &vals)
        }
        Formula::Equality(a, b) => term(s, a, env) == term(s, b, env),
        Formula::Inequality(a, b) => term(s, a, env) != term(s, b, env),
        Formula::Not(a) => !holds(s, a, env),
        Formula::And(xs) => xs.iter().all(|x| holds(s, x, env)),
        Formula::Or(xs) => xs.iter().any(|x| holds(s, x, env)),
        Formula::Implies(a, b) => !holds(s, a, env) || holds(s, b, env),
        Formula::ReverseImplies(a, b) => holds(s, a, env) || !holds(s, b, env),
        Formula::Iff(a, b) => holds(s, a, env) == holds(s, b, env),
        Formula::Xor(a, b) => holds(s, a, env) != holds(s, b, env),
        Formula::Forall(vs, body) | Formula::Exists(vs, body) => {
            let universal = matches!(f, Formula::Forall(..));
            quantify(s, vs, 0, body, env, universal)
        }
        other => panic!("not classical: {other:?}"),
    }
}

fn quantify(
    s: &dyn Structure,
    vs: &[ntf_core::syntax::TypedVariable],
    i: usize,
    body: &Formula,
    env: &mut BTreeMap<String, usize>,
    universal: bool,
) -> bool {
    let Some(v) = vs.get(i) else { return holds(s, body, env) };
    let saved = env.get(&v.name).copied();
    let mut result = universal;
    for e in 0..s.size(&sort_of(&v.ty)) {
        env.insert(v.name.clone(), e);
        if quantify(s, vs, i + 1, body, env, universal) != universal {
            result = !universal;
            break;
        }
    }
    match saved {
        Some(x) => env.insert(v.name.clone(), x),
        None => env.remove(&v.name),
    };
    result
}

/// Worlds as the world sort, union domains as the other sorts, guards as
/// per-world domains, accessibility predicates as the model's relations.
pub struct Induced<'a> {
    pub m: &'a FiniteKripkeModel,
    pub cx: &'a EmbeddingContext,
}

impl Induced<'_> {
    fn sort_size(&self, name: &str) -> usize {
        let s = self.m.sort_index(name).unwrap_or_else(|| panic!("no sort {name}"));
        self.m.sorts[s].elements.len()
    }
}

impl Structure for Induced<'_> {
    fn size(&self, sort: &str) -> usize {
        if sort == self.cx.world_sort {
            self.m.worlds.len()
        } else {
            self.sort_size(sort)
        }
    }

    fn func(&self, name: &str, args: &[usize]) -> usize {
        if name == self.cx.local_world {
            return self.m.local_world;
        }
        let f = &self.m.functions[name];
        let (w, rest) = match self.cx.logic.designation {
            Designation::Flexible => (args[0], &args[1..]),
            // Rigid tables agree across worlds.
            Designation::Rigid => (0, args),
        };
        let sizes = self.m.sizes(&f.args);
        f.tables[w][tuple_index(&sizes, rest)].expect("total table")
    }

    fn pred(&self, name: &str, args: &[usize]) -> bool {
        if let Some((index, _)) = self.cx.accessibility.iter().find(|(_, n)| n.as_str() == name) {
            return self.m.accessible(index.as_deref(), args[0], args[1]);
        }
        if let Some((sort, _)) = self.cx.guards.iter().find(|(_, n)| n.as_str() == name) {
            let s = self.m.sort_index(sort).unwrap();
            return self.m.domains[args[0]][s].contains(&args[1]);
        }
        let p = &self.m.predicates[name];
        let sizes = self.m.sizes(&p.args);
        p.tables[args[0]][tuple_index(&sizes, &args[1..])]
    }
}
