//! Sampled agreement checks shared by the property suites and the
//! acceptance run. Each returns a description of the first disagreement.

use std::collections::BTreeMap;

use ntf_core::embedding::{embed, embed_formula, EmbeddingContext, Provenance};
use ntf_core::kripke::{eval, Assignment, Element, FiniteKripkeModel, Scope};
use ntf_core::logic::{Designation, Domains, FrameCondition, ModalAxiom, NormalizedModalLogic, Terms};
use ntf_core::syntax::{print_formula, Formula, NcConnective, Statement, Term, TypedVariable};
use rand::Rng;

use super::classical::{holds, Induced};
use super::gen;
use super::modal::{valid_on, Frame};

/// One (problem, regime, model) triple: every source statement evaluated
/// directly at every world agrees with its embedded translation, lifted
/// statements agree with their role's reading, and every generated axiom
/// holds in the induced structure.
pub fn fidelity_case(
    rng: &mut impl Rng,
    domains: Domains,
    designation: Designation,
    terms: Terms,
) -> Result<(), String> {
    let case = gen::problem(rng, domains, designation, terms);
    let m = gen::model(rng, &case.sig, &case.logic, 3, 3);
    let ctx = |what: String| format!("{what}\nproblem:\n{}\nmodel: {m:?}", case.text);
    let out = embed(&case.tp, &case.logic).map_err(|e| ctx(e.to_string()))?;
    let mut cx = EmbeddingContext::new(&case.tp, &case.logic).map_err(|e| ctx(e.to_string()))?;
    let world_var = "WORLD";
    for (s, f) in case.tp.problem.formulas() {
        let translated = embed_formula(f, &Term::var(world_var), &mut cx).map_err(|e| ctx(e.to_string()))?;
        let structure = Induced { m: &m, cx: &cx };
        let mut direct = Vec::new();
        for w in 0..m.worlds.len() {
            let expected = eval(&m, w, f, &Assignment::new(), &case.logic).map_err(|e| ctx(e.to_string()))?;
            let mut env = BTreeMap::from([(world_var.to_string(), w)]);
            let got = holds(&structure, &translated, &mut env);
            if expected != got {
                return Err(ctx(format!(
                    "`{}` at world {w}: direct {expected}, embedded {got}\nembedded: {}",
                    s.name,
                    print_formula(&translated)
                )));
            }
            direct.push(expected);
        }
        let lifted = out.problem.get(&s.name).and_then(|t| t.formula()).ok_or_else(|| ctx(format!("`{}` missing", s.name)))?;
        let expected = match Scope::of(s) {
            Some(Scope::Global) => direct.iter().all(|&b| b),
            Some(Scope::Local | Scope::Conjecture) => direct[m.local_world],
            None => continue,
        };
        let got = holds(&structure, lifted, &mut BTreeMap::new());
        if expected != got {
            return Err(ctx(format!("lifted `{}`: expected {expected}, embedded {got}", s.name)));
        }
    }
    let structure = Induced { m: &m, cx: &cx };
    for (st, p) in out.problem.statements.iter().zip(&out.ledger.provenance) {
        if matches!(p, Provenance::Frame | Provenance::Domain | Provenance::Nonemptiness | Provenance::TermLocality) {
            let Statement::Formula(f) = &st.body else { return Err(ctx(format!("{} is not a formula", st.name))) };
            if !holds(&structure, f, &mut BTreeMap::new()) {
                return Err(ctx(format!("{p} axiom `{}` fails: {}", st.name, print_formula(f))));
            }
        }
    }
    Ok(())
}

/// Frame condition of `axiom` against validity of its scheme on every frame
/// of 1..=3 worlds. Returns the number of frames checked.
pub fn frame_correspondence(axiom: ModalAxiom) -> Result<usize, String> {
    let condition: FrameCondition = axiom.frame_condition().ok_or("axiom has no frame condition")?;
    let scheme = axiom.scheme();
    let mut frames = 0;
    for n in 1..=3usize {
        for bits in 0u32..1 << (n * n) {
            let frame = Frame::from_bits(n, bits);
            let semantic = frame.satisfies(condition);
            let library = condition.holds(n, |a, b| frame.r[a][b]);
            let valid = valid_on(&frame, &scheme);
            if semantic != valid || library != semantic {
                return Err(format!(
                    "{} / {condition} on {n} worlds, edges {bits:#b}: condition {semantic}, library {library}, scheme valid {valid}",
                    axiom.short_name()
                ));
            }
            frames += 1;
        }
    }
    Ok(frames)
}

fn dia(f: Formula) -> Formula {
    Formula::NonClassical { connective: NcConnective::simple("$dia"), args: vec![f] }
}

fn bx(f: Formula) -> Formula {
    Formula::NonClassical { connective: NcConnective::simple("$box"), args: vec![f] }
}

/// A random model with a random formula `φ` having at most one free
/// variable, for evaluation-level properties.
pub struct Sample {
    pub m: FiniteKripkeModel,
    pub logic: NormalizedModalLogic,
    pub phi: Formula,
    pub var: TypedVariable,
    pub var_sort: usize,
}

pub fn sample(rng: &mut impl Rng, domains: Domains) -> Sample {
    let designation = gen::DESIGNATIONS[rng.gen_range(0..2)];
    let terms = gen::TERMS[rng.gen_range(0..2)];
    let sig = gen::signature(rng);
    let logic = NormalizedModalLogic::uniform(domains, designation, terms, [ModalAxiom::K].into());
    let m = gen::model(rng, &sig, &logic, 3, 3);
    let var_sort = rng.gen_range(0..sig.sorts.len());
    let var = TypedVariable::new("Y", sig.sort_type(var_sort));
    let mut g = gen::FormulaGen::new(&sig);
    g.max_quant = 1;
    g.max_modal = 2;
    let size = rng.gen_range(0..=4);
    let phi = g.formula(rng, &mut vec![("Y".to_string(), var_sort)], 0, 0, size);
    Sample { m, logic, phi, var, var_sort }
}

/// ◇φ ≡ ¬□¬φ and ∃y.φ ≡ ¬∀y.¬φ at every world and assignment of `y`.
pub fn duality_case(rng: &mut impl Rng) -> Result<(), String> {
    let domains = gen::DOMAINS[rng.gen_range(0..4)];
    let s = sample(rng, domains);
    let value = |f: &Formula, w: usize, a: &Assignment| {
        eval(&s.m, w, f, a, &s.logic).map_err(|e| format!("{e} on {}", print_formula(f)))
    };
    let modal = (dia(s.phi.clone()), Formula::not(bx(Formula::not(s.phi.clone()))));
    let quant = (
        Formula::exists(vec![s.var.clone()], s.phi.clone()),
        Formula::not(Formula::forall(vec![s.var.clone()], Formula::not(s.phi.clone()))),
    );
    for w in 0..s.m.worlds.len() {
        for e in 0..s.m.sorts[s.var_sort].elements.len() {
            let a = Assignment::from([("Y".to_string(), Element { sort: s.var_sort, index: e })]);
            if value(&modal.0, w, &a)? != value(&modal.1, w, &a)? {
                return Err(format!("modal duality fails for {} at {w}", print_formula(&s.phi)));
            }
        }
        if value(&quant.0, w, &Assignment::new())? != value(&quant.1, w, &Assignment::new())? {
            return Err(format!("quantifier duality fails for {} at {w}", print_formula(&s.phi)));
        }
    }
    Ok(())
}

/// Under cumulative domains □∀y.φ → ∀y.□φ holds everywhere; under
/// decreasing domains ∀y.□φ → □∀y.φ does.
pub fn barcan_case(rng: &mut impl Rng, domains: Domains) -> Result<(), String> {
    let s = sample(rng, domains);
    let all = |f: Formula| Formula::forall(vec![s.var.clone()], f);
    let f = match domains {
        Domains::Cumulative => Formula::implies(bx(all(s.phi.clone())), all(bx(s.phi.clone()))),
        Domains::Decreasing => Formula::implies(all(bx(s.phi.clone())), bx(all(s.phi.clone()))),
        other => return Err(format!("no Barcan direction for {other:?}")),
    };
    for w in 0..s.m.worlds.len() {
        if !eval(&s.m, w, &f, &Assignment::new(), &s.logic).map_err(|e| e.to_string())? {
            return Err(format!("{} false at {w} in {:?}", print_formula(&f), s.m));
        }
    }
    Ok(())
}
