//! Finite first-order Kripke structures.

use std::collections::{BTreeMap, BTreeSet};

use super::KripkeError;

/// A sort with its union domain: every element existing in some world.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sort {
    pub name: String,
    pub elements: Vec<String>,
}

/// Per-world function tables, dense over argument tuples of the union
/// domains. `None` entries mark values an interpretation file left open.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FunctionInterp {
    pub args: Vec<usize>,
    pub result: usize,
    pub tables: Vec<Vec<Option<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PredicateInterp {
    pub args: Vec<usize>,
    pub tables: Vec<Vec<bool>>,
}

/// `M = (W, R, D, I)` with worlds and elements identified by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteKripkeModel {
    pub worlds: Vec<String>,
    pub local_world: usize,
    /// Keyed by connective index; `None` is the unindexed relation.
    pub relations: BTreeMap<Option<String>, BTreeSet<(usize, usize)>>,
    pub sorts: Vec<Sort>,
    /// `domains[w][s]`: elements of sort `s` existing at world `w`.
    pub domains: Vec<Vec<BTreeSet<usize>>>,
    pub functions: BTreeMap<String, FunctionInterp>,
    pub predicates: BTreeMap<String, PredicateInterp>,
}

/// Number of argument tuples over sorts of the given sizes.
pub fn tuple_count(sizes: impl IntoIterator<Item = usize>) -> usize {
    sizes.into_iter().product()
}

/// Mixed-radix index of `args`, first argument most significant.
pub fn tuple_index(sizes: &[usize], args: &[usize]) -> usize {
    args.iter().zip(sizes).fold(0, |acc, (a, s)| acc * s + a)
}

pub fn tuple_of(sizes: &[usize], mut index: usize) -> Vec<usize> {
    let mut out = vec![0; sizes.len()];
    for (slot, s) in out.iter_mut().zip(sizes).rev() {
        *slot = index % s;
        index /= s;
    }
    out
}

impl FiniteKripkeModel {
    pub fn sort_index(&self, name: &str) -> Option<usize> {
        self.sorts.iter().position(|s| s.name == name)
    }

    pub fn world_index(&self, name: &str) -> Option<usize> {
        self.worlds.iter().position(|w| w == name)
    }

    pub fn sizes(&self, sorts: &[usize]) -> Vec<usize> {
        sorts.iter().map(|&s| self.sorts[s].elements.len()).collect()
    }

    /// The relation for `index`; absent relations are empty.
    pub fn relation(&self, index: Option<&str>) -> BTreeSet<(usize, usize)> {
        self.relations.get(&index.map(str::to_string)).cloned().unwrap_or_default()
    }

    pub fn accessible(&self, index: Option<&str>, w: usize, v: usize) -> bool {
        self.relations.get(&index.map(str::to_string)).is_some_and(|r| r.contains(&(w, v)))
    }

    pub fn function_value(&self, f: &str, w: usize, args: &[usize]) -> Option<usize> {
        let fi = self.functions.get(f)?;
        fi.tables[w][tuple_index(&self.sizes(&fi.args), args)]
    }

    pub fn predicate_holds(&self, p: &str, w: usize, args: &[usize]) -> Option<bool> {
        let pi = self.predicates.get(p)?;
        Some(pi.tables[w][tuple_index(&self.sizes(&pi.args), args)])
    }

    /// Function tables are world-independent.
    pub fn is_rigid(&self) -> bool {
        self.functions.values().all(|f| f.tables.windows(2).all(|w| w[0] == w[1]))
    }

    /// Structural invariants: worlds, relations, non-empty domains, table shapes.
    pub fn validate(&self) -> Result<(), KripkeError> {
        let bad = |msg: String| Err(KripkeError::InvalidModel(msg));
        let n = self.worlds.len();
        if n == 0 {
            return bad("no worlds".into());
        }
        if self.local_world >= n {
            return bad("local world out of range".into());
        }
        let distinct: BTreeSet<_> = self.worlds.iter().collect();
        if distinct.len() != n {
            return bad("duplicate world names".into());
        }
        for (idx, rel) in &self.relations {
            if rel.iter().any(|&(a, b)| a >= n || b >= n) {
                return bad(format!("relation {idx:?} relates unknown worlds"));
            }
        }
        if self.domains.len() != n {
            return bad("one domain vector per world expected".into());
        }
        for (w, doms) in self.domains.iter().enumerate() {
            if doms.len() != self.sorts.len() {
                return bad(format!("world {} lacks domains", self.worlds[w]));
            }
            for (s, d) in doms.iter().enumerate() {
                if d.is_empty() {
                    return bad(format!("empty domain of {} at {}", self.sorts[s].name, self.worlds[w]));
                }
                if d.iter().any(|&e| e >= self.sorts[s].elements.len()) {
                    return bad(format!("unknown element in domain of {}", self.sorts[s].name));
                }
            }
        }
        for (name, f) in &self.functions {
            let len = tuple_count(self.sizes(&f.args));
            let range = self.sorts.get(f.result).map(|s| s.elements.len());
            if f.tables.len() != n || f.tables.iter().any(|t| t.len() != len) {
                return bad(format!("table of `{name}` has the wrong shape"));
            }
            if f.tables.iter().flatten().flatten().any(|&v| Some(v) >= range) {
                return bad(format!("`{name}` has a value outside its sort"));
            }
        }
        for (name, p) in &self.predicates {
            let len = tuple_count(self.sizes(&p.args));
            if p.tables.len() != n || p.tables.iter().any(|t| t.len() != len) {
                return bad(format!("table of `{name}` has the wrong shape"));
            }
        }
        Ok(())
    }

    /// The isomorphic copy obtained by sending world `w` to `world_perm[w]` and
    /// element `e` of sort `s` to `elem_perms[s][e]`. Names move with positions.
    pub fn permuted(&self, world_perm: &[usize], elem_perms: &[Vec<usize>]) -> Self {
        let n = self.worlds.len();
        let mut worlds = vec![String::new(); n];
        for (w, name) in self.worlds.iter().enumerate() {
            worlds[world_perm[w]] = name.clone();
        }
        let sorts: Vec<Sort> = self
            .sorts
            .iter()
            .enumerate()
            .map(|(s, sort)| {
                let mut elements = vec![String::new(); sort.elements.len()];
                for (e, name) in sort.elements.iter().enumerate() {
                    elements[elem_perms[s][e]] = name.clone();
                }
                Sort { name: sort.name.clone(), elements }
            })
            .collect();
        let relations = self
            .relations
            .iter()
            .map(|(k, r)| (k.clone(), r.iter().map(|&(a, b)| (world_perm[a], world_perm[b])).collect()))
            .collect();
        let mut domains = vec![Vec::new(); n];
        for (w, doms) in self.domains.iter().enumerate() {
            domains[world_perm[w]] = doms
                .iter()
                .enumerate()
                .map(|(s, d)| d.iter().map(|&e| elem_perms[s][e]).collect())
                .collect();
        }
        let move_tuple = |sorts: &[usize], idx: usize| {
            let sizes = self.sizes(sorts);
            let t = tuple_of(&sizes, idx);
            let moved: Vec<usize> = t.iter().zip(sorts).map(|(&e, &s)| elem_perms[s][e]).collect();
            tuple_index(&sizes, &moved)
        };
        let functions = self
            .functions
            .iter()
            .map(|(name, f)| {
                let mut tables = vec![Vec::new(); n];
                for (w, t) in f.tables.iter().enumerate() {
                    let mut nt = vec![None; t.len()];
                    for (i, v) in t.iter().enumerate() {
                        nt[move_tuple(&f.args, i)] = v.map(|v| elem_perms[f.result][v]);
                    }
                    tables[world_perm[w]] = nt;
                }
                (name.clone(), FunctionInterp { args: f.args.clone(), result: f.result, tables })
            })
            .collect();
        let predicates = self
            .predicates
            .iter()
            .map(|(name, p)| {
                let mut tables = vec![Vec::new(); n];
                for (w, t) in p.tables.iter().enumerate() {
                    let mut nt = vec![false; t.len()];
                    for (i, &v) in t.iter().enumerate() {
                        nt[move_tuple(&p.args, i)] = v;
                    }
                    tables[world_perm[w]] = nt;
                }
                (name.clone(), PredicateInterp { args: p.args.clone(), tables })
            })
            .collect();
        FiniteKripkeModel {
            worlds,
            local_world: world_perm[self.local_world],
            relations,
            sorts,
            domains,
            functions,
            predicates,
        }
    }
}
