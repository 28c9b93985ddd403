mod common;

use common::checks::{barcan_case, duality_case};
use common::gen::{self, DESIGNATIONS, DOMAINS, TERMS};
use common::workers_variant;
use ntf_core::kripke::{
    check_model, eval, parse_interpretation, search_countermodel, write_interpretation, Assignment, Classification,
    SearchBounds, SearchOutcome,
};
use ntf_core::logic::{problem_logic, Domains};
use ntf_core::syntax::{parse_problem, print_problem, resolve_defaults};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn permutation(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn modal_and_quantifier_duality(seed in any::<u64>()) {
        if let Err(e) = duality_case(&mut StdRng::seed_from_u64(seed)) {
            prop_assert!(false, "{}", e);
        }
    }

    #[test]
    fn converse_barcan_under_cumulative_domains(seed in any::<u64>()) {
        if let Err(e) = barcan_case(&mut StdRng::seed_from_u64(seed), Domains::Cumulative) {
            prop_assert!(false, "{}", e);
        }
    }

    #[test]
    fn barcan_under_decreasing_domains(seed in any::<u64>()) {
        if let Err(e) = barcan_case(&mut StdRng::seed_from_u64(seed), Domains::Decreasing) {
            prop_assert!(false, "{}", e);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn truth_is_invariant_under_isomorphism(seed in any::<u64>(), d in 0..4usize, des in 0..2usize, t in 0..2usize) {
        let mut rng = StdRng::seed_from_u64(seed);
        let case = gen::problem(&mut rng, DOMAINS[d], DESIGNATIONS[des], TERMS[t]);
        let m = gen::model(&mut rng, &case.sig, &case.logic, 3, 3);
        let wp = permutation(&mut rng, m.worlds.len());
        let ep: Vec<Vec<usize>> = m.sorts.iter().map(|s| permutation(&mut rng, s.elements.len())).collect();
        let image = m.permuted(&wp, &ep);
        prop_assert_eq!(image.local_world, wp[m.local_world]);
        for (_, f) in case.tp.problem.formulas() {
            for (w, &v) in wp.iter().enumerate() {
                let a = eval(&m, w, f, &Assignment::new(), &case.logic).unwrap();
                let b = eval(&image, v, f, &Assignment::new(), &case.logic).unwrap();
                prop_assert_eq!(a, b);
            }
        }
        let before = check_model(&m, &case.tp, &case.logic).unwrap();
        let after = check_model(&image, &case.tp, &case.logic).unwrap();
        prop_assert_eq!(before.classification, after.classification);
        prop_assert_eq!(before.conjecture, after.conjecture);
    }

    #[test]
    fn interpretations_round_trip(seed in any::<u64>(), d in 0..4usize) {
        let mut rng = StdRng::seed_from_u64(seed);
        let case = gen::problem(&mut rng, DOMAINS[d], DESIGNATIONS[0], TERMS[0]);
        let m = gen::model(&mut rng, &case.sig, &case.logic, 3, 3);
        let written = write_interpretation(&m, "m", &Default::default());
        let reread = parse_problem(&print_problem(&written)).unwrap();
        let (back, warnings) = parse_interpretation(&reread, Some(&case.tp.signature)).unwrap();
        prop_assert!(warnings.is_empty());
        let original = check_model(&m, &case.tp, &case.logic).unwrap();
        let copy = check_model(&back, &case.tp, &case.logic).unwrap();
        prop_assert_eq!(original.classification, copy.classification);
        prop_assert_eq!(back.worlds.len(), m.worlds.len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn search_is_deterministic_and_sound(seed in any::<u64>(), d in 0..4usize) {
        let mut rng = StdRng::seed_from_u64(seed);
        let case = gen::problem(&mut rng, DOMAINS[d], DESIGNATIONS[0], TERMS[0]);
        let bounds = SearchBounds::new(2, 2).with_budget(200_000);
        let (first, _) = search_countermodel(&case.tp, &case.logic, &bounds).unwrap();
        let (second, _) = search_countermodel(&case.tp, &case.logic, &bounds).unwrap();
        prop_assert_eq!(&first, &second);
        if let SearchOutcome::Found(m) = first {
            let verdict = check_model(&m, &case.tp, &case.logic).unwrap();
            prop_assert!(verdict.model_valid(), "{}", verdict);
            prop_assert!(matches!(
                verdict.classification,
                Classification::CounterSatisfiable | Classification::Satisfiable
            ));
        }
    }
}

#[test]
fn workers_problem_has_a_countermodel_under_d() {
    let p = parse_problem(&workers_variant("$modal_system_D", "$constant")).unwrap();
    let (tp, logic) = (resolve_defaults(&p).unwrap(), problem_logic(&p).unwrap());
    let bounds = SearchBounds::new(3, 3).with_sort_bound("product", 1);
    let (out, _) = search_countermodel(&tp, &logic, &bounds).unwrap();
    let SearchOutcome::Found(m) = out else { panic!("{out:?}") };
    assert!(m.relation(None).len() >= m.worlds.len());
    assert_eq!(check_model(&m, &tp, &logic).unwrap().classification, Classification::CounterSatisfiable);
}
