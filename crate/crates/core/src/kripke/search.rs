//! Bounded countermodel search.
//!
//! Candidates are enumerated in a fixed order: world count, then domain
//! sizes (by total, then lexicographically), then accessibility relations,
//! then per-world domain memberships. Frames and domains are generated only
//! in a canonical form up to renaming of the non-local worlds and of the
//! elements of a sort. For each candidate frame the interpretation is found by
//! backtracking over table cells, guided by three-valued evaluation of the
//! constraints: every global assumption at every world, the local
//! assumptions and the negated conjecture at the local world.

use std::collections::BTreeMap;

use crate::logic::{Designation, Domains, FrameCondition, NormalizedModalLogic, Terms};
use crate::syntax::TypedProblem;

use super::check::Scope;
use super::compile::{compile, CFormula, Vocabulary};
use super::eval::{Cell, Evaluator, Frame, Interp};
use super::model::{tuple_count, tuple_index, FiniteKripkeModel, FunctionInterp, PredicateInterp, Sort};
use super::KripkeError;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_worlds: usize,
    pub max_elems_per_sort: usize,
    /// Per-sort overrides of `max_elems_per_sort`, by sort name.
    pub sort_bounds: BTreeMap<String, usize>,
    /// Atom evaluations allowed before giving up.
    pub budget: u64,
}

impl SearchBounds {
    pub fn new(max_worlds: usize, max_elems_per_sort: usize) -> Self {
        SearchBounds { max_worlds, max_elems_per_sort, sort_bounds: BTreeMap::new(), budget: DEFAULT_BUDGET }
    }

    pub fn with_sort_bound(mut self, sort: &str, n: usize) -> Self {
        self.sort_bounds.insert(sort.to_string(), n);
        self
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    fn bound_for(&self, sort: &str) -> usize {
        self.sort_bounds.get(sort).copied().unwrap_or(self.max_elems_per_sort)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// The first model in enumeration order falsifying the conjecture (or,
    /// without a conjecture, satisfying the assumptions).
    Found(FiniteKripkeModel),
    NotFound,
    BudgetExhausted,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub frames: u64,
    pub domain_assignments: u64,
    pub nodes: u64,
    pub atoms: u64,
}

struct Exhausted;

/// Searches for a countermodel of `tp` under `logic` within `bounds`.
pub fn search_countermodel(
    tp: &TypedProblem,
    logic: &NormalizedModalLogic,
    bounds: &SearchBounds,
) -> Result<(SearchOutcome, SearchStats), KripkeError> {
    let vocab = Vocabulary::for_problem(tp, logic)?;
    let mut global = Vec::new();
    let mut local = Vec::new();
    let mut conjectures = Vec::new();
    for (s, f) in tp.problem.formulas() {
        match Scope::of(s) {
            Some(Scope::Global) => global.push(compile(f, &vocab, logic, &[])?),
            Some(Scope::Local) => local.push(compile(f, &vocab, logic, &[])?),
            Some(Scope::Conjecture) => conjectures.push(compile(f, &vocab, logic, &[])?),
            None => {}
        }
    }
    if !conjectures.is_empty() {
        local.push(CFormula::Not(Box::new(CFormula::And(conjectures))));
    }
    let conditions: Vec<Vec<FrameCondition>> = vocab
        .relations
        .iter()
        .map(|idx| logic.frame_conditions_for(idx.as_deref()).map(|c| c.into_iter().collect()))
        .collect::<Result<_, _>>()?;

    let mut search = Search {
        vocab: &vocab,
        logic,
        global: &global,
        local: &local,
        conditions: &conditions,
        budget: bounds.budget,
        stats: SearchStats::default(),
    };
    let sort_bounds: Vec<usize> = vocab.sorts.iter().map(|s| bounds.bound_for(s).max(1)).collect();
    let outcome = match search.run(bounds.max_worlds.max(1), &sort_bounds) {
        Ok(Some(m)) => SearchOutcome::Found(m),
        Ok(None) => SearchOutcome::NotFound,
        Err(Exhausted) => SearchOutcome::BudgetExhausted,
    };
    Ok((outcome, search.stats))
}

/// Domain size vectors ordered by total, then lexicographically.
fn size_vectors(bounds: &[usize]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for &b in bounds {
        out = out.into_iter().flat_map(|v| (1..=b).map(move |k| [v.as_slice(), &[k]].concat())).collect();
    }
    out.sort_by_key(|v| (v.iter().sum::<usize>(), v.clone()));
    out
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let rest: Vec<usize> = items.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &y)| y).collect();
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Relation on `n` worlds as a bitmask: bit `w * n + v` is the edge `(w, v)`.
fn edge(rel: u64, n: usize, w: usize, v: usize) -> bool {
    rel >> (w * n + v) & 1 == 1
}

fn permute_relation(rel: u64, n: usize, perm: &[usize]) -> u64 {
    let mut out = 0;
    for w in 0..n {
        for v in 0..n {
            if edge(rel, n, w, v) {
                out |= 1 << (perm[w] * n + perm[v]);
            }
        }
    }
    out
}

fn permute_mask(mask: u32, perm: &[usize]) -> u32 {
    perm.iter().enumerate().filter(|&(w, _)| mask >> w & 1 == 1).fold(0, |acc, (_, &p)| acc | 1 << p)
}

/// Masks for `k` elements over `n` worlds, non-increasing, covering every world.
fn mask_vectors(k: usize, n: usize, allowed: &dyn Fn(u32) -> bool) -> Vec<Vec<u32>> {
    let full = (1u32 << n) - 1;
    let masks: Vec<u32> = (1..=full).rev().filter(|&m| allowed(m)).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(masks: &[u32], k: usize, full: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            if cur.iter().fold(0, |a, m| a | m) == full {
                out.push(cur.clone());
            }
            return;
        }
        for (i, &m) in masks.iter().enumerate() {
            cur.push(m);
            rec(&masks[i..], k, full, cur, out);
            cur.pop();
        }
    }
    rec(&masks, k, full, &mut cur, &mut out);
    out
}

struct Search<'a> {
    vocab: &'a Vocabulary,
    logic: &'a NormalizedModalLogic,
    global: &'a [CFormula],
    local: &'a [CFormula],
    conditions: &'a [Vec<FrameCondition>],
    budget: u64,
    stats: SearchStats,
}

impl Search<'_> {
    fn spend(&mut self, atoms: u64) -> Result<(), Exhausted> {
        self.stats.atoms += atoms;
        if self.stats.atoms > self.budget {
            Err(Exhausted)
        } else {
            Ok(())
        }
    }

    fn run(&mut self, max_worlds: usize, sort_bounds: &[usize]) -> Result<Option<FiniteKripkeModel>, Exhausted> {
        for n in 1..=max_worlds.min(8) {
            for sizes in size_vectors(sort_bounds) {
                if let Some(m) = self.frames(n, &sizes)? {
                    return Ok(Some(m));
                }
            }
        }
        Ok(None)
    }

    fn frames(&mut self, n: usize, sizes: &[usize]) -> Result<Option<FiniteKripkeModel>, Exhausted> {
        let rels = self.vocab.relations.len();
        let perms: Vec<Vec<usize>> =
            permutations(&(1..n).collect::<Vec<_>>()).into_iter().map(|p| [&[0][..], &p].concat()).collect();
        let per_relation: Vec<Vec<u64>> = (0..rels)
            .map(|r| {
                (0..1u64 << (n * n))
                    .filter(|&rel| self.conditions[r].iter().all(|c| c.holds(n, |w, v| edge(rel, n, w, v))))
                    .collect()
            })
            .collect();
        let mut choice = vec![0usize; rels];
        loop {
            if per_relation.iter().any(Vec::is_empty) {
                return Ok(None);
            }
            let tuple: Vec<u64> = choice.iter().zip(&per_relation).map(|(&i, l)| l[i]).collect();
            self.spend(1)?;
            if reachable(&tuple, n) && perms.iter().all(|p| tuple <= perm_tuple(&tuple, n, p)) {
                self.stats.frames += 1;
                let autos: Vec<&Vec<usize>> = perms.iter().filter(|p| perm_tuple(&tuple, n, p) == tuple).collect();
                if let Some(m) = self.domains(n, sizes, &tuple, &autos)? {
                    return Ok(Some(m));
                }
            }
            // Advance the mixed-radix counter, last relation fastest.
            let mut r = rels;
            loop {
                if r == 0 {
                    return Ok(None);
                }
                r -= 1;
                choice[r] += 1;
                if choice[r] < per_relation[r].len() {
                    break;
                }
                choice[r] = 0;
            }
        }
    }

    fn domains(
        &mut self,
        n: usize,
        sizes: &[usize],
        rels: &[u64],
        autos: &[&Vec<usize>],
    ) -> Result<Option<FiniteKripkeModel>, Exhausted> {
        let full = (1u32 << n) - 1;
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|w| (0..n).map(move |v| (w, v)))
            .filter(|&(w, v)| rels.iter().any(|&r| edge(r, n, w, v)))
            .collect();
        let regime = self.logic.domains;
        let allowed = |m: u32| match regime {
            Domains::Constant => m == full,
            Domains::Varying => true,
            Domains::Cumulative => edges.iter().all(|&(w, v)| m >> w & 1 == 0 || m >> v & 1 == 1),
            Domains::Decreasing => edges.iter().all(|&(w, v)| m >> v & 1 == 0 || m >> w & 1 == 1),
        };
        let options: Vec<Vec<Vec<u32>>> = sizes.iter().map(|&k| mask_vectors(k, n, &allowed)).collect();
        if options.iter().any(Vec::is_empty) {
            return Ok(None);
        }
        let mut choice = vec![0usize; sizes.len()];
        loop {
            let masks: Vec<&Vec<u32>> = choice.iter().zip(&options).map(|(&i, o)| &o[i]).collect();
            self.spend(1)?;
            let canonical = autos.iter().all(|p| {
                let permuted: Vec<Vec<u32>> = masks
                    .iter()
                    .map(|ms| {
                        let mut v: Vec<u32> = ms.iter().map(|&m| permute_mask(m, p)).collect();
                        v.sort_unstable_by(|a, b| b.cmp(a));
                        v
                    })
                    .collect();
                masks.iter().zip(&permuted).map(|(a, b)| a.as_slice().cmp(b.as_slice())).find(|o| o.is_ne())
                    != Some(std::cmp::Ordering::Greater)
            });
            if canonical {
                self.stats.domain_assignments += 1;
                let masks: Vec<Vec<u32>> = masks.into_iter().cloned().collect();
                if let Some(m) = self.interpret(n, rels, &masks)? {
                    return Ok(Some(m));
                }
            }
            let mut s = sizes.len();
            loop {
                if s == 0 {
                    return Ok(None);
                }
                s -= 1;
                choice[s] += 1;
                if choice[s] < options[s].len() {
                    break;
                }
                choice[s] = 0;
            }
        }
    }

    fn interpret(&mut self, n: usize, rels: &[u64], masks: &[Vec<u32>]) -> Result<Option<FiniteKripkeModel>, Exhausted> {
        let vocab = self.vocab;
        let frame = Frame {
            worlds: n,
            succ: rels.iter().map(|&r| (0..n).map(|w| (0..n).filter(|&v| edge(r, n, w, v)).collect()).collect()).collect(),
            domains: (0..n)
                .map(|w| {
                    masks.iter().map(|ms| (0..ms.len()).filter(|&e| ms[e] >> w & 1 == 1).collect()).collect()
                })
                .collect(),
        };
        let store = Store::new(vocab, &frame, masks, self.logic);
        let mut constraints = Vec::new();
        for f in self.global {
            constraints.extend((0..n).map(|w| (f, w)));
        }
        constraints.extend(self.local.iter().map(|f| (f, 0)));
        let mut solver = Solver {
            frame: &frame,
            store,
            masks,
            constraints,
            sat: Vec::new(),
            trail: Vec::new(),
        };
        solver.sat = vec![false; solver.constraints.len()];
        let constants: Vec<usize> = (0..solver.store.fn_cells.len())
            .filter(|&c| vocab.functions[solver.store.fn_cells[c].symbol].args.is_empty())
            .collect();
        if solver.assign_constants(&constants, 0, self)? {
            return Ok(Some(solver.extract(vocab, rels)));
        }
        Ok(None)
    }
}

fn reachable(rels: &[u64], n: usize) -> bool {
    let mut seen = 1u32;
    let mut stack = vec![0];
    while let Some(w) = stack.pop() {
        for v in 0..n {
            if seen >> v & 1 == 0 && rels.iter().any(|&r| edge(r, n, w, v)) {
                seen |= 1 << v;
                stack.push(v);
            }
        }
    }
    seen.count_ones() as usize == n
}

fn perm_tuple(rels: &[u64], n: usize, p: &[usize]) -> Vec<u64> {
    rels.iter().map(|&r| permute_relation(r, n, p)).collect()
}

const UNSET: u32 = u32::MAX;

#[derive(Clone, Copy)]
struct FnCell {
    symbol: usize,
}

/// Flat table storage for one candidate frame.
struct Store {
    fn_base: Vec<Vec<usize>>,
    fn_sizes: Vec<Vec<usize>>,
    fn_vals: Vec<u32>,
    fn_cells: Vec<FnCell>,
    fn_cands: Vec<Vec<u32>>,
    pred_base: Vec<Vec<usize>>,
    pred_sizes: Vec<Vec<usize>>,
    pred_vals: Vec<u8>,
}

impl Store {
    fn new(vocab: &Vocabulary, frame: &Frame, masks: &[Vec<u32>], logic: &NormalizedModalLogic) -> Self {
        let n = frame.worlds;
        let sort_size = |s: usize| masks[s].len();
        let rigid = logic.designation == Designation::Rigid;
        let local_terms = logic.terms == Terms::Local;
        let mut st = Store {
            fn_base: Vec::new(),
            fn_sizes: Vec::new(),
            fn_vals: Vec::new(),
            fn_cells: Vec::new(),
            fn_cands: Vec::new(),
            pred_base: Vec::new(),
            pred_sizes: Vec::new(),
            pred_vals: Vec::new(),
        };
        for (f, sym) in vocab.functions.iter().enumerate() {
            let sizes: Vec<usize> = sym.args.iter().map(|&s| sort_size(s)).collect();
            let count = tuple_count(sizes.iter().copied());
            let copies = if rigid { 1 } else { n };
            let mut bases = Vec::new();
            for copy in 0..copies {
                bases.push(st.fn_vals.len());
                for t in 0..count {
                    let args = super::model::tuple_of(&sizes, t);
                    let worlds: Vec<usize> = if rigid { (0..n).collect() } else { vec![copy] };
                    // Worlds whose domain contains all arguments constrain the value.
                    let binding = |w: usize| args.iter().zip(&sym.args).all(|(&e, &s)| masks[s][e] >> w & 1 == 1);
                    let cands = (0..sort_size(sym.result) as u32)
                        .filter(|&v| {
                            !local_terms
                                || worlds.iter().all(|&w| !binding(w) || masks[sym.result][v as usize] >> w & 1 == 1)
                        })
                        .collect();
                    st.fn_vals.push(UNSET);
                    st.fn_cells.push(FnCell { symbol: f });
                    st.fn_cands.push(cands);
                }
            }
            st.fn_base.push(if rigid { vec![bases[0]; n] } else { bases });
            st.fn_sizes.push(sizes);
        }
        for p in &vocab.predicates {
            let sizes: Vec<usize> = p.args.iter().map(|&s| sort_size(s)).collect();
            let count = tuple_count(sizes.iter().copied());
            let bases = (0..n)
                .map(|_| {
                    let b = st.pred_vals.len();
                    st.pred_vals.extend(std::iter::repeat_n(2, count));
                    b
                })
                .collect();
            st.pred_base.push(bases);
            st.pred_sizes.push(sizes);
        }
        st
    }
}

impl Interp for Store {
    fn func(&self, w: usize, f: usize, args: &[usize]) -> Result<usize, Cell> {
        let i = self.fn_base[f][w] + tuple_index(&self.fn_sizes[f], args);
        match self.fn_vals[i] {
            UNSET => Err(Cell { predicate: false, symbol: f, world: w, tuple: i }),
            v => Ok(v as usize),
        }
    }

    fn pred(&self, w: usize, p: usize, args: &[usize]) -> Result<bool, Cell> {
        let i = self.pred_base[p][w] + tuple_index(&self.pred_sizes[p], args);
        match self.pred_vals[i] {
            2 => Err(Cell { predicate: true, symbol: p, world: w, tuple: i }),
            v => Ok(v == 1),
        }
    }
}

struct Solver<'a> {
    frame: &'a Frame,
    store: Store,
    masks: &'a [Vec<u32>],
    constraints: Vec<(&'a CFormula, usize)>,
    sat: Vec<bool>,
    trail: Vec<usize>,
}

impl Solver<'_> {
    /// Constants first: within a class of elements with equal domain
    /// membership, only elements already named by an earlier constant or the
    /// least unnamed one are tried.
    fn assign_constants(&mut self, constants: &[usize], i: usize, search: &mut Search) -> Result<bool, Exhausted> {
        let Some(&cell) = constants.get(i) else {
            return self.solve(search);
        };
        let sym = self.store.fn_cells[cell].symbol;
        let vocab = search.vocab;
        let sort = vocab.functions[sym].result;
        let used = |st: &Store, v: u32| {
            constants[..i]
                .iter()
                .any(|&c| st.fn_vals[c] == v && vocab.functions[st.fn_cells[c].symbol].result == sort)
        };
        let mut tried_fresh: Vec<u32> = Vec::new();
        for v in self.store.fn_cands[cell].clone() {
            if !used(&self.store, v) {
                let class = self.masks[sort][v as usize];
                if tried_fresh.contains(&class) {
                    continue;
                }
                tried_fresh.push(class);
            }
            self.store.fn_vals[cell] = v;
            if self.assign_constants(constants, i + 1, search)? {
                return Ok(true);
            }
        }
        self.store.fn_vals[cell] = UNSET;
        Ok(false)
    }

    fn solve(&mut self, search: &mut Search) -> Result<bool, Exhausted> {
        search.stats.nodes += 1;
        let mark = self.trail.len();
        let mut branch = None;
        for c in 0..self.constraints.len() {
            if self.sat[c] {
                continue;
            }
            let (f, w) = self.constraints[c];
            let mut ev = Evaluator::new(self.frame, &self.store);
            let v = ev.formula(f, w);
            let (atoms, unknown) = (ev.atoms, ev.unknown);
            search.spend(atoms)?;
            match v {
                Some(true) => {
                    self.sat[c] = true;
                    self.trail.push(c);
                }
                Some(false) => {
                    self.undo(mark);
                    return Ok(false);
                }
                None => {
                    branch.get_or_insert(unknown.expect("an unknown result names its cell"));
                }
            }
        }
        let Some(cell) = branch else { return Ok(true) };
        if cell.predicate {
            for v in [0, 1] {
                self.store.pred_vals[cell.tuple] = v;
                if self.solve(search)? {
                    return Ok(true);
                }
            }
            self.store.pred_vals[cell.tuple] = 2;
        } else {
            for v in self.store.fn_cands[cell.tuple].clone() {
                self.store.fn_vals[cell.tuple] = v;
                if self.solve(search)? {
                    return Ok(true);
                }
            }
            self.store.fn_vals[cell.tuple] = UNSET;
        }
        self.undo(mark);
        Ok(false)
    }

    fn undo(&mut self, mark: usize) {
        for c in self.trail.drain(mark..) {
            self.sat[c] = false;
        }
    }

    /// The current partial interpretation, completed arbitrarily: every
    /// constraint is already true and stays true under any completion.
    fn extract(&self, vocab: &Vocabulary, rels: &[u64]) -> FiniteKripkeModel {
        let n = self.frame.worlds;
        let sorts: Vec<Sort> = vocab
            .sorts
            .iter()
            .enumerate()
            .map(|(s, name)| {
                let stem = name.trim_start_matches('$');
                Sort { name: name.clone(), elements: (1..=self.masks[s].len()).map(|k| format!("{stem}_{k}")).collect() }
            })
            .collect();
        let relations = vocab
            .relations
            .iter()
            .zip(rels)
            .map(|(idx, &r)| {
                let pairs = (0..n).flat_map(|w| (0..n).map(move |v| (w, v))).filter(|&(w, v)| edge(r, n, w, v));
                (idx.clone(), pairs.collect())
            })
            .collect();
        let domains = self
            .frame
            .domains
            .iter()
            .map(|per_sort| per_sort.iter().map(|d| d.iter().copied().collect()).collect())
            .collect();
        let st = &self.store;
        let functions = vocab
            .functions
            .iter()
            .enumerate()
            .map(|(f, sym)| {
                let count = tuple_count(st.fn_sizes[f].iter().copied());
                let tables = (0..n)
                    .map(|w| {
                        (0..count)
                            .map(|t| {
                                let i = st.fn_base[f][w] + t;
                                let v = match st.fn_vals[i] {
                                    UNSET => st.fn_cands[i].first().copied().unwrap_or(0),
                                    v => v,
                                };
                                Some(v as usize)
                            })
                            .collect()
                    })
                    .collect();
                (sym.name.clone(), FunctionInterp { args: sym.args.clone(), result: sym.result, tables })
            })
            .collect();
        let predicates = vocab
            .predicates
            .iter()
            .enumerate()
            .map(|(p, sym)| {
                let count = tuple_count(st.pred_sizes[p].iter().copied());
                let tables = (0..n)
                    .map(|w| (0..count).map(|t| st.pred_vals[st.pred_base[p][w] + t] == 1).collect())
                    .collect();
                (sym.name.clone(), PredicateInterp { args: sym.args.clone(), tables })
            })
            .collect();
        FiniteKripkeModel {
            worlds: (1..=n).map(|i| format!("w{i}")).collect(),
            local_world: 0,
            relations,
            sorts,
            domains,
            functions,
            predicates,
        }
    }
}
