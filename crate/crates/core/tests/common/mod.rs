//! Test support shared by the integration suites: random generators and
//! oracles that do not reuse the library's evaluators.

#![allow(dead_code)]

pub mod checks;
pub mod classical;
pub mod fuzz;
pub mod gen;
pub mod modal;

use std::path::PathBuf;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

/// Every fixture file name.
pub const FIXTURES: [&str; 10] = [
    "leo_workers.p",
    "leo_workers_nh0.p",
    "multimodal_spec.p",
    "cantor_derivation.s",
    "leo_workers_proof.s",
    "leo_workers_tarski.p",
    "leo_workers_kripke_fragment.p",
    "leo_workers_kripke.p",
    "set557.p",
    "tweety_defaults.p",
];

/// The workers problem with its modal system and domain regime replaced.
pub fn workers_variant(system: &str, domains: &str) -> String {
    fixture("leo_workers.p")
        .replace("$modal_system_M", system)
        .replace("$domains == $constant", &format!("$domains == {domains}"))
}
