//! SZS ontology status values reported by the semantic commands.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SzsStatus {
    Theorem,
    CounterSatisfiable,
    Satisfiable,
    Unsatisfiable,
    Unknown,
    GaveUp,
}

impl SzsStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SzsStatus::Theorem => "Theorem",
            SzsStatus::CounterSatisfiable => "CounterSatisfiable",
            SzsStatus::Satisfiable => "Satisfiable",
            SzsStatus::Unsatisfiable => "Unsatisfiable",
            SzsStatus::Unknown => "Unknown",
            SzsStatus::GaveUp => "GaveUp",
        }
    }

    /// The conventional status line, e.g. `% SZS status Theorem for p.p`.
    pub fn line(self, file: &str) -> String {
        format!("% SZS status {} for {file}", self.as_str())
    }
}

impl fmt::Display for SzsStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
