//! Toolkit for the TPTP non-classical typed first-order language (NX0).

pub mod cli;
pub mod derivation;
pub mod embedding;
pub mod kripke;
pub mod logic;
pub mod syntax;
pub mod szs;
