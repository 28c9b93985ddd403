//! Random signatures, modal problems and Kripke models within small bounds.

use std::collections::{BTreeMap, BTreeSet};

use ntf_core::kripke::{FiniteKripkeModel, FunctionInterp, PredicateInterp, Sort};
use ntf_core::logic::{problem_logic, Designation, Domains, FrameCondition, ModalSystem, NormalizedModalLogic, Terms};
use ntf_core::syntax::{parse_problem, print_formula, resolve_defaults, Formula, Term, TptpType, TypedProblem, TypedVariable};
use rand::seq::SliceRandom;
use rand::Rng;

pub const DOMAINS: [Domains; 4] = [Domains::Constant, Domains::Varying, Domains::Cumulative, Domains::Decreasing];
pub const DESIGNATIONS: [Designation; 2] = [Designation::Rigid, Designation::Flexible];
pub const TERMS: [Terms; 2] = [Terms::Global, Terms::Local];

/// Sorts by name, predicates and functions with sort indices.
#[derive(Clone, Debug)]
pub struct Sig {
    pub sorts: Vec<String>,
    pub predicates: Vec<(String, Vec<usize>)>,
    pub functions: Vec<(String, Vec<usize>, usize)>,
}

impl Sig {
    pub fn sort_type(&self, s: usize) -> TptpType {
        match self.sorts[s].as_str() {
            "$i" => TptpType::Individual,
            other => TptpType::User(other.to_string()),
        }
    }

    fn type_text(&self, s: usize) -> &str {
        &self.sorts[s]
    }
}

/// At most two sorts (possibly `$i`), up to three predicates of arity ≤ 2,
/// up to two functions, and a constant for every sort.
pub fn signature(rng: &mut impl Rng) -> Sig {
    let n_sorts = rng.gen_range(1..=2);
    let mut sorts: Vec<String> = (1..=n_sorts).map(|i| format!("s{i}")).collect();
    if rng.gen_bool(0.3) {
        sorts[0] = "$i".into();
    }
    let n_preds = rng.gen_range(1..=3);
    let predicates = (0..n_preds)
        .map(|i| {
            let arity = rng.gen_range(0..=2);
            (format!("p{i}"), (0..arity).map(|_| rng.gen_range(0..n_sorts)).collect())
        })
        .collect();
    let mut functions: Vec<(String, Vec<usize>, usize)> =
        (0..n_sorts).map(|s| (format!("c{s}"), Vec::new(), s)).collect();
    if n_sorts == 1 && rng.gen_bool(0.7) {
        functions.push(("f0".into(), vec![0], 0));
    }
    Sig { sorts, predicates, functions }
}

pub struct FormulaGen<'a> {
    pub sig: &'a Sig,
    pub max_quant: usize,
    pub max_modal: usize,
    /// Indices the generated modal connectives choose from.
    pub indices: Vec<Option<String>>,
    vars: usize,
}

impl<'a> FormulaGen<'a> {
    pub fn new(sig: &'a Sig) -> Self {
        FormulaGen { sig, max_quant: 2, max_modal: 3, indices: vec![None], vars: 0 }
    }

    pub fn term(&mut self, rng: &mut impl Rng, env: &[(String, usize)], sort: usize, depth: usize) -> Term {
        let vars: Vec<&String> = env.iter().filter(|(_, s)| *s == sort).map(|(v, _)| v).collect();
        if !vars.is_empty() && rng.gen_bool(0.6) {
            return Term::var((*vars.choose(rng).unwrap()).clone());
        }
        let fs: Vec<_> = self
            .sig
            .functions
            .iter()
            .filter(|(_, args, r)| *r == sort && (depth > 0 || args.is_empty()))
            .collect();
        let (name, args, _) = fs.choose(rng).expect("every sort has a constant");
        let args = args.clone();
        let name = name.clone();
        Term::app(name, args.iter().map(|&s| self.term(rng, env, s, depth.saturating_sub(1))).collect())
    }

    fn atom(&mut self, rng: &mut impl Rng, env: &[(String, usize)]) -> Formula {
        if rng.gen_bool(0.15) {
            let s = rng.gen_range(0..self.sig.sorts.len());
            let a = self.term(rng, env, s, 1);
            let b = self.term(rng, env, s, 1);
            return if rng.gen_bool(0.5) { Formula::Equality(a, b) } else { Formula::Inequality(a, b) };
        }
        if rng.gen_bool(0.03) {
            return if rng.gen_bool(0.5) { Formula::True } else { Formula::False };
        }
        let (p, args) = self.sig.predicates.choose(rng).unwrap().clone();
        Formula::atom(p, args.iter().map(|&s| self.term(rng, env, s, 1)).collect())
    }

    fn modal(&self, index: &Option<String>, is_box: bool, f: Formula) -> Formula {
        use ntf_core::syntax::NcConnective;
        let name = if is_box { "$box" } else { "$dia" };
        let connective = match index {
            None => NcConnective::simple(name),
            Some(i) => NcConnective::indexed(name, i.clone()),
        };
        Formula::NonClassical { connective, args: vec![f] }
    }

    /// A formula of roughly `size` connectives over the variables of `env`.
    pub fn formula(
        &mut self,
        rng: &mut impl Rng,
        env: &mut Vec<(String, usize)>,
        quant: usize,
        modal: usize,
        size: usize,
    ) -> Formula {
        if size == 0 {
            return self.atom(rng, env);
        }
        let b = Box::new;
        let choice = rng.gen_range(0..10);
        match choice {
            0 => Formula::not(self.formula(rng, env, quant, modal, size - 1)),
            1..=3 => {
                let l = rng.gen_range(0..size);
                let x = self.formula(rng, env, quant, modal, l);
                let y = self.formula(rng, env, quant, modal, size - 1 - l);
                match rng.gen_range(0..7) {
                    0 | 1 => Formula::And(vec![x, y]),
                    2 | 3 => Formula::Or(vec![x, y]),
                    4 => Formula::Implies(b(x), b(y)),
                    5 => Formula::Iff(b(x), b(y)),
                    _ => {
                        if rng.gen_bool(0.5) {
                            Formula::Xor(b(x), b(y))
                        } else {
                            Formula::ReverseImplies(b(x), b(y))
                        }
                    }
                }
            }
            4..=6 if quant < self.max_quant => {
                let n = rng.gen_range(1..=2);
                let depth = env.len();
                let mut vars = Vec::new();
                for _ in 0..n {
                    let s = rng.gen_range(0..self.sig.sorts.len());
                    let name = format!("X{}", self.vars);
                    self.vars += 1;
                    env.push((name.clone(), s));
                    vars.push(TypedVariable::new(name, self.sig.sort_type(s)));
                }
                let body = self.formula(rng, env, quant + 1, modal, size - 1);
                env.truncate(depth);
                if rng.gen_bool(0.5) {
                    Formula::forall(vars, body)
                } else {
                    Formula::exists(vars, body)
                }
            }
            _ if modal < self.max_modal => {
                let index = self.indices.choose(rng).unwrap().clone();
                let body = self.formula(rng, env, quant, modal + 1, size - 1);
                self.modal(&index, rng.gen_bool(0.5), body)
            }
            _ => self.atom(rng, env),
        }
    }
}

/// The logic statement for a regime and a modal system.
pub fn logic_text(domains: Domains, designation: Designation, terms: Terms, system: ModalSystem) -> String {
    format!(
        "tff(semantics,logic,$modal == [$domains == {}, $designation == {}, $terms == {}, $modalities == {}]).\n",
        domains.tptp_name(),
        designation.tptp_name(),
        terms.tptp_name(),
        system.tptp_name()
    )
}

pub fn declarations(sig: &Sig) -> String {
    let mut out = String::new();
    for s in &sig.sorts {
        if s != "$i" {
            out.push_str(&format!("tff({s}_type,type,{s}: $tType).\n"));
        }
    }
    for (p, args) in &sig.predicates {
        out.push_str(&format!("tff({p}_decl,type,{p}: {}).\n", mapping(sig, args, "$o")));
    }
    for (f, args, r) in &sig.functions {
        out.push_str(&format!("tff({f}_decl,type,{f}: {}).\n", mapping(sig, args, sig.type_text(*r))));
    }
    out
}

fn mapping(sig: &Sig, args: &[usize], result: &str) -> String {
    match args {
        [] => result.to_string(),
        [a] => format!("{} > {result}", sig.type_text(*a)),
        _ => format!(
            "( {} ) > {result}",
            args.iter().map(|&a| sig.type_text(a)).collect::<Vec<_>>().join(" * ")
        ),
    }
}

pub struct Case {
    pub sig: Sig,
    pub text: String,
    pub tp: TypedProblem,
    pub logic: NormalizedModalLogic,
}

pub const ROLES: [&str; 5] = ["axiom", "hypothesis", "axiom-local", "hypothesis-global", "conjecture"];

/// A random problem of 1–3 closed statements under the given regime.
pub fn problem(rng: &mut impl Rng, domains: Domains, designation: Designation, terms: Terms) -> Case {
    let sig = signature(rng);
    let system = *ModalSystem::ALL.choose(rng).unwrap();
    let mut text = logic_text(domains, designation, terms, system);
    text.push_str(&declarations(&sig));
    let mut g = FormulaGen::new(&sig);
    for i in 0..rng.gen_range(1..=3) {
        let size = rng.gen_range(1..=6);
        let f = g.formula(rng, &mut Vec::new(), 0, 0, size);
        let role = ROLES.choose(rng).unwrap();
        text.push_str(&format!("tff(st{i},{role},{}).\n", print_formula(&f)));
    }
    let p = parse_problem(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    let logic = problem_logic(&p).unwrap();
    let tp = resolve_defaults(&p).unwrap();
    Case { sig, text, tp, logic }
}

fn relation_ok(n: usize, rel: &BTreeSet<(usize, usize)>, conditions: &BTreeSet<FrameCondition>) -> bool {
    conditions.iter().all(|c| c.holds(n, |a, b| rel.contains(&(a, b))))
}

/// A model of `sig` on ≤ `max_worlds` worlds and ≤ `max_elems` elements per
/// sort that satisfies the frame conditions and the domain, designation and
/// term regimes of `logic`.
pub fn model(rng: &mut impl Rng, sig: &Sig, logic: &NormalizedModalLogic, max_worlds: usize, max_elems: usize) -> FiniteKripkeModel {
    let conditions = logic.frame_conditions_for(None).unwrap_or_default();
    let mut n = rng.gen_range(1..=max_worlds);
    let mut rel = BTreeSet::new();
    let mut found = false;
    for _ in 0..200 {
        rel = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|_| rng.gen_bool(0.45))
            .collect();
        if relation_ok(n, &rel, &conditions) {
            found = true;
            break;
        }
    }
    if !found {
        // A single reflexive world satisfies every frame condition.
        n = 1;
        rel = [(0, 0)].into();
    }
    let sizes: Vec<usize> = sig.sorts.iter().map(|_| rng.gen_range(1..=max_elems)).collect();
    let local_terms = logic.terms == Terms::Local;
    let mut domains: Vec<Vec<BTreeSet<usize>>> = (0..n)
        .map(|_| {
            sizes
                .iter()
                .map(|&k| {
                    let mut d: BTreeSet<usize> = (0..k).filter(|_| rng.gen_bool(0.6)).collect();
                    if d.is_empty() || local_terms {
                        // Under local terms element 0 exists everywhere, so
                        // every term has somewhere to denote.
                        d.insert(if local_terms { 0 } else { rng.gen_range(0..k) });
                    }
                    d
                })
                .collect()
        })
        .collect();
    for (s, &k) in sizes.iter().enumerate() {
        for e in 0..k {
            if !(0..n).any(|w| domains[w][s].contains(&e)) {
                domains[rng.gen_range(0..n)][s].insert(e);
            }
        }
    }
    match logic.domains {
        Domains::Constant => {
            for doms in domains.iter_mut().take(n) {
                for (d, &k) in doms.iter_mut().zip(&sizes) {
                    *d = (0..k).collect();
                }
            }
        }
        Domains::Varying => {}
        Domains::Cumulative | Domains::Decreasing => loop {
            let mut changed = false;
            for &(a, b) in &rel {
                let (from, to) = if logic.domains == Domains::Cumulative { (a, b) } else { (b, a) };
                let src = domains[from].clone();
                for (d, extra) in domains[to].iter_mut().zip(src) {
                    let before = d.len();
                    d.extend(extra);
                    changed |= d.len() != before;
                }
            }
            if !changed {
                break;
            }
        },
    }

    let rigid = logic.designation == Designation::Rigid;
    let mut functions = BTreeMap::new();
    for (name, args, result) in &sig.functions {
        let arg_sizes: Vec<usize> = args.iter().map(|&a| sizes[a]).collect();
        let count: usize = arg_sizes.iter().product();
        let tuples: Vec<Vec<usize>> = (0..count).map(|i| ntf_core::kripke::model::tuple_of(&arg_sizes, i)).collect();
        let pick = |rng: &mut _, w: Option<usize>, tuple: &[usize]| -> usize {
            if !local_terms {
                return Rng::gen_range(rng, 0..sizes[*result]);
            }
            // Worlds where the arguments exist; the value must exist there too.
            let worlds: Vec<usize> = match w {
                Some(w) => vec![w],
                None => (0..n).collect(),
            };
            let mut allowed: BTreeSet<usize> = (0..sizes[*result]).collect();
            for w in worlds {
                if tuple.iter().zip(args).all(|(e, &s)| domains[w][s].contains(e)) {
                    allowed = allowed.intersection(&domains[w][*result]).copied().collect();
                }
            }
            let allowed: Vec<usize> = allowed.into_iter().collect();
            *allowed.choose(rng).unwrap()
        };
        let tables: Vec<Vec<Option<usize>>> = if rigid {
            let t: Vec<Option<usize>> = tuples.iter().map(|t| Some(pick(rng, None, t))).collect();
            vec![t; n]
        } else {
            (0..n).map(|w| tuples.iter().map(|t| Some(pick(rng, Some(w), t))).collect()).collect()
        };
        functions.insert(name.clone(), FunctionInterp { args: args.clone(), result: *result, tables });
    }
    let mut predicates = BTreeMap::new();
    for (name, args) in &sig.predicates {
        let count: usize = args.iter().map(|&a| sizes[a]).product();
        let tables = (0..n).map(|_| (0..count).map(|_| rng.gen_bool(0.5)).collect()).collect();
        predicates.insert(name.clone(), PredicateInterp { args: args.clone(), tables });
    }
    let sorts = sig
        .sorts
        .iter()
        .zip(&sizes)
        .map(|(name, &k)| Sort { name: name.clone(), elements: (1..=k).map(|i| format!("e{i}")).collect() })
        .collect();
    let m = FiniteKripkeModel {
        worlds: (1..=n).map(|i| format!("w{i}")).collect(),
        local_world: rng.gen_range(0..n),
        relations: [(None, rel)].into(),
        sorts,
        domains,
        functions,
        predicates,
    };
    m.validate().unwrap();
    m
}
