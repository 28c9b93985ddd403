//! Verification of a finite model against a problem and its logic.

use std::collections::BTreeSet;
use std::fmt;

use crate::logic::{Designation, Domains, FrameCondition, NormalizedModalLogic, Terms};
use crate::syntax::{AnnotatedFormula, Formula, RoleBase, TypedProblem};
use crate::szs::SzsStatus;

use super::compile::{compile, sort_name, CFormula, Vocabulary};
use super::eval::{known, Evaluator, Frame, ModelInterp};
use super::model::{tuple_count, tuple_of, FiniteKripkeModel};
use super::KripkeError;

/// Where a statement must hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// At every world.
    Global,
    /// At the local world.
    Local,
    /// Evaluated at the local world and reported.
    Conjecture,
}

impl Scope {
    pub fn of(s: &AnnotatedFormula) -> Option<Scope> {
        match s.role.base {
            RoleBase::Conjecture => Some(Scope::Conjecture),
            b if b.is_assumption() || b == RoleBase::NegatedConjecture => {
                Some(if s.role.is_local_assumption() { Scope::Local } else { Scope::Global })
            }
            _ => None,
        }
    }
}

/// A world and a binding of the statement's outer universal variables under
/// which it is false.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub world: String,
    pub assignment: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatementCheck {
    pub name: String,
    pub scope: Scope,
    pub holds: bool,
    /// Present when `holds` is false.
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameCheck {
    pub index: Option<String>,
    pub condition: FrameCondition,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub holds: bool,
    /// The first violation found.
    pub detail: Option<String>,
}

impl ConditionCheck {
    fn from(violation: Option<String>) -> Self {
        ConditionCheck { holds: violation.is_none(), detail: violation }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    /// A valid model in which the conjecture is false.
    CounterSatisfiable,
    /// A valid model of a problem without conjecture.
    Satisfiable,
    /// A valid model in which the conjecture holds; evidence, not proof.
    ConsistentWithTheorem,
    /// Some assumption or structural condition fails.
    Invalid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub statements: Vec<StatementCheck>,
    /// Truth of the conjunction of conjectures at the local world.
    pub conjecture: Option<bool>,
    pub frame: Vec<FrameCheck>,
    pub domains: ConditionCheck,
    pub designation: ConditionCheck,
    pub terms: ConditionCheck,
    pub classification: Classification,
}

impl Verdict {
    /// Assumptions and structural conditions all hold.
    pub fn model_valid(&self) -> bool {
        self.statements.iter().all(|s| s.scope == Scope::Conjecture || s.holds)
            && self.frame.iter().all(|f| f.holds)
            && self.domains.holds
            && self.designation.holds
            && self.terms.holds
    }

    pub fn szs(&self) -> SzsStatus {
        match self.classification {
            Classification::CounterSatisfiable => SzsStatus::CounterSatisfiable,
            Classification::Satisfiable => SzsStatus::Satisfiable,
            Classification::ConsistentWithTheorem | Classification::Invalid => SzsStatus::Unknown,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.statements {
            let scope = match s.scope {
                Scope::Global => "global",
                Scope::Local => "local",
                Scope::Conjecture => "conjecture",
            };
            write!(f, "{} ({scope}): {}", s.name, if s.holds { "true" } else { "false" })?;
            if let Some(w) = &s.witness {
                write!(f, " at {}", w.world)?;
                if !w.assignment.is_empty() {
                    let binds: Vec<_> = w.assignment.iter().map(|(v, e)| format!("{v}={e}")).collect();
                    write!(f, " with {}", binds.join(", "))?;
                }
            }
            writeln!(f)?;
        }
        for c in &self.frame {
            let idx = c.index.as_deref().unwrap_or("(mono)");
            writeln!(f, "frame {idx} {}: {}", c.condition, if c.holds { "ok" } else { "violated" })?;
        }
        for (what, c) in [("domains", &self.domains), ("designation", &self.designation), ("terms", &self.terms)] {
            match &c.detail {
                None => writeln!(f, "{what}: ok")?,
                Some(d) => writeln!(f, "{what}: violated ({d})")?,
            }
        }
        write!(f, "classification: {:?}", self.classification)
    }
}

/// Checks `m` against the assumptions, conjecture and logic of `tp`.
pub fn check_model(
    m: &FiniteKripkeModel,
    tp: &TypedProblem,
    logic: &NormalizedModalLogic,
) -> Result<Verdict, KripkeError> {
    m.validate()?;
    let mut vocab = Vocabulary::for_problem(tp, logic)?;
    for idx in m.relations.keys() {
        if vocab.relation_id(idx).is_none() {
            vocab.relations.push(idx.clone());
        }
    }
    let frame = Frame::of_model(m, &vocab)?;
    let interp = ModelInterp::new(m, &vocab)?;

    let mut statements = Vec::new();
    let mut conjecture: Option<bool> = None;
    for (s, f) in tp.problem.formulas() {
        let Some(scope) = Scope::of(s) else { continue };
        let (vars, body) = universal_prefix(f);
        let free = vars
            .iter()
            .map(|(v, ty)| {
                let name = sort_name(ty).ok_or_else(|| KripkeError::UnsupportedSort(format!("{ty:?}")))?;
                let id = vocab.sort_id(&name).ok_or(KripkeError::UnsupportedSort(name))?;
                Ok((v.clone(), id))
            })
            .collect::<Result<Vec<_>, KripkeError>>()?;
        let cf = compile(body, &vocab, logic, &free)?;
        let worlds: Vec<usize> = match scope {
            Scope::Global => (0..m.worlds.len()).collect(),
            _ => vec![m.local_world],
        };
        let mut witness = None;
        for w in worlds {
            if let Some(binding) = falsifying(&frame, &interp, &vocab, m, &cf, &free, w)? {
                let assignment = free
                    .iter()
                    .zip(&binding)
                    .map(|((v, s), &e)| (v.clone(), m.sorts[sort_of(m, &vocab, *s)].elements[e].clone()))
                    .collect();
                witness = Some(Witness { world: m.worlds[w].clone(), assignment });
                break;
            }
        }
        let holds = witness.is_none();
        if scope == Scope::Conjecture {
            conjecture = Some(conjecture.unwrap_or(true) && holds);
        }
        statements.push(StatementCheck { name: s.name.clone(), scope, holds, witness });
    }

    let n = m.worlds.len();
    let mut frame_checks = Vec::new();
    for (r, idx) in vocab.relations.iter().enumerate() {
        // Relations only the model has may lack a modality: no conditions then.
        for condition in logic.frame_conditions_for(idx.as_deref()).unwrap_or_default() {
            let holds = condition.holds(n, |a, b| frame.succ[r][a].contains(&b));
            frame_checks.push(FrameCheck { index: idx.clone(), condition, holds });
        }
    }

    let edges: BTreeSet<(usize, usize)> = vocab
        .relations
        .iter()
        .flat_map(|idx| m.relation(idx.as_deref()))
        .collect();
    let domains = ConditionCheck::from(domain_violation(m, logic.domains, &edges));
    let designation = ConditionCheck::from(match logic.designation {
        Designation::Rigid => {
            m.functions.iter().find(|(_, f)| f.tables.windows(2).any(|t| t[0] != t[1])).map(|(name, _)| {
                format!("`{name}` differs between worlds")
            })
        }
        Designation::Flexible => None,
    });
    let terms = ConditionCheck::from(match logic.terms {
        Terms::Local => term_locality_violation(m),
        Terms::Global => None,
    });

    let mut verdict = Verdict {
        statements,
        conjecture,
        frame: frame_checks,
        domains,
        designation,
        terms,
        classification: Classification::Invalid,
    };
    verdict.classification = if !verdict.model_valid() {
        Classification::Invalid
    } else {
        match conjecture {
            Some(false) => Classification::CounterSatisfiable,
            Some(true) => Classification::ConsistentWithTheorem,
            None => Classification::Satisfiable,
        }
    };
    Ok(verdict)
}

fn sort_of(m: &FiniteKripkeModel, vocab: &Vocabulary, s: usize) -> usize {
    m.sort_index(&vocab.sorts[s]).expect("frame construction checked the sorts")
}

/// Splits off the outermost universal quantifiers (possibly nested).
fn universal_prefix(f: &Formula) -> (Vec<(String, crate::syntax::TptpType)>, &Formula) {
    let mut vars = Vec::new();
    let mut body = f;
    while let Formula::Forall(vs, inner) = body {
        for v in vs {
            vars.push((v.name.clone(), v.ty.clone().unwrap_or(crate::syntax::TptpType::Individual)));
        }
        body = inner;
    }
    (vars, body)
}

/// A binding of `free` over the domains of `w` making `cf` false, if any.
fn falsifying(
    frame: &Frame,
    interp: &ModelInterp<'_>,
    vocab: &Vocabulary,
    m: &FiniteKripkeModel,
    cf: &CFormula,
    free: &[(String, usize)],
    w: usize,
) -> Result<Option<Vec<usize>>, KripkeError> {
    let doms: Vec<&Vec<usize>> = free.iter().map(|(_, s)| &frame.domains[w][*s]).collect();
    let sizes: Vec<usize> = doms.iter().map(|d| d.len()).collect();
    for i in 0..tuple_count(sizes.iter().copied()) {
        let binding: Vec<usize> = tuple_of(&sizes, i).iter().zip(&doms).map(|(&k, d)| d[k]).collect();
        let mut ev = Evaluator::new(frame, interp);
        ev.env = binding.clone();
        let v = ev.formula(cf, w);
        if !known(v, ev.unknown, vocab, m)? {
            return Ok(Some(binding));
        }
    }
    Ok(None)
}

fn domain_violation(m: &FiniteKripkeModel, regime: Domains, edges: &BTreeSet<(usize, usize)>) -> Option<String> {
    let subset = |a: usize, b: usize| (0..m.sorts.len()).find(|&s| !m.domains[a][s].is_subset(&m.domains[b][s]));
    let describe = |s: usize, a: usize, b: usize| {
        format!("domain of {} at {} is not included in that at {}", m.sorts[s].name, m.worlds[a], m.worlds[b])
    };
    match regime {
        Domains::Varying => None,
        Domains::Constant => (1..m.worlds.len()).find_map(|w| {
            (0..m.sorts.len())
                .find(|&s| m.domains[w][s] != m.domains[0][s])
                .map(|s| format!("domain of {} differs between {} and {}", m.sorts[s].name, m.worlds[0], m.worlds[w]))
        }),
        Domains::Cumulative => edges.iter().find_map(|&(a, b)| subset(a, b).map(|s| describe(s, a, b))),
        Domains::Decreasing => edges.iter().find_map(|&(a, b)| subset(b, a).map(|s| describe(s, b, a))),
    }
}

fn term_locality_violation(m: &FiniteKripkeModel) -> Option<String> {
    for (name, f) in &m.functions {
        let sizes = m.sizes(&f.args);
        for w in 0..m.worlds.len() {
            let dom = &m.domains[w];
            for (i, v) in f.tables[w].iter().enumerate() {
                let Some(v) = *v else { continue };
                let args = tuple_of(&sizes, i);
                if args.iter().zip(&f.args).all(|(e, &s)| dom[s].contains(e)) && !dom[f.result].contains(&v) {
                    return Some(format!("`{name}` leaves the domain of {}", m.worlds[w]));
                }
            }
        }
    }
    None
}
