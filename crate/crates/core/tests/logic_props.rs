mod common;

use std::collections::BTreeMap;

use common::checks::frame_correspondence;
use common::gen::{DESIGNATIONS, DOMAINS, TERMS};
use ntf_core::logic::{
    connective_kind, problem_logic, system_axioms, AxiomSet, ConnectiveKind, LogicError, ModalAxiom, ModalFamily,
    ModalSystem, NormalizedModalLogic,
};
use ntf_core::syntax::{
    parse_problem, print_statement, AnnotatedFormula, Language, NcConnective, Role, RoleBase, Statement,
};
use proptest::prelude::*;
use proptest::sample::{select, subsequence};

fn axiom_set() -> impl Strategy<Value = AxiomSet> {
    subsequence(ModalAxiom::ALL.to_vec(), 0..=4).prop_map(|v| {
        let mut s: AxiomSet = v.into_iter().collect();
        s.insert(ModalAxiom::K);
        s
    })
}

fn logic() -> impl Strategy<Value = NormalizedModalLogic> {
    (
        select(vec![ModalFamily::Modal, ModalFamily::Alethic, ModalFamily::Deontic, ModalFamily::Epistemic, ModalFamily::Doxastic]),
        select(DOMAINS.to_vec()),
        select(DESIGNATIONS.to_vec()),
        select(TERMS.to_vec()),
        proptest::option::of(axiom_set()),
        proptest::collection::btree_map(select(vec!["#1", "#2", "#a"]).prop_map(String::from), axiom_set(), 0..=2),
    )
        .prop_filter("some modality is specified", |(_, _, _, _, d, per)| d.is_some() || !per.is_empty())
        .prop_map(|(family, domains, designation, terms, default, per_index)| {
            let mut l = NormalizedModalLogic::uniform(domains, designation, terms, AxiomSet::new());
            l.family = family;
            l.default = default;
            l.per_index = per_index;
            l
        })
}

fn reparse(l: &NormalizedModalLogic) -> Result<NormalizedModalLogic, LogicError> {
    let st = AnnotatedFormula::new(Language::Tff, "spec", Role::new(RoleBase::Logic), Statement::Logic(l.to_specification()));
    let text = print_statement(&st);
    problem_logic(&parse_problem(&text).unwrap())
}

proptest! {
    #[test]
    fn normalisation_is_idempotent_on_printed_form(l in logic()) {
        prop_assert_eq!(reparse(&l).unwrap(), l);
    }
}

#[test]
fn every_system_contains_k() {
    for s in ModalSystem::ALL {
        assert!(system_axioms(s).contains(&ModalAxiom::K), "{}", s.short_name());
    }
}

#[test]
fn frame_conditions_correspond_to_their_schemes() {
    for a in ModalAxiom::ALL.into_iter().filter(|a| *a != ModalAxiom::K) {
        // 2 + 16 + 512 frames on one to three worlds
        assert_eq!(frame_correspondence(a), Ok(530));
    }
}

#[test]
fn specifying_one_polarity_specifies_both() {
    let src = "tff(s,logic,$modal == [$domains == $constant, $designation == $rigid, $terms == $global, \
               $modalities == [$modal_system_K, {$box(#1)} == $modal_system_S5, {$dia(#2)} == $modal_system_D]]).";
    let l = problem_logic(&parse_problem(src).unwrap()).unwrap();
    let expect: BTreeMap<&str, AxiomSet> =
        [("#1", system_axioms(ModalSystem::S5)), ("#2", system_axioms(ModalSystem::D))].into();
    for (idx, set) in expect {
        for name in ["$box", "$dia"] {
            let c = NcConnective::indexed(name, idx);
            let kind = connective_kind(&c, &l).unwrap();
            assert!(matches!(kind, ConnectiveKind::Box(Some(ref i)) | ConnectiveKind::Dia(Some(ref i)) if i == idx));
        }
        assert_eq!(l.axioms_for(Some(idx)).unwrap(), &set);
    }
}
