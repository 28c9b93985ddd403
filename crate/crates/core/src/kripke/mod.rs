//! Finite first-order Kripke structures: interpretation files, direct
//! evaluation, model checking against a problem, and bounded countermodel
//! search.

pub mod check;
pub mod compile;
pub mod eval;
pub mod interp;
pub mod model;
pub mod search;

use thiserror::Error;

use crate::logic::LogicError;

pub use check::{check_model, Classification, ConditionCheck, FrameCheck, Scope, StatementCheck, Verdict, Witness};
pub use compile::{compile, CFormula, CTerm, Vocabulary};
pub use eval::{eval, Assignment, Element};
pub use interp::{parse_interpretation, write_interpretation, InterpretationError};
pub use model::{FiniteKripkeModel, FunctionInterp, PredicateInterp, Sort};
pub use search::{search_countermodel, SearchBounds, SearchOutcome, SearchStats};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum KripkeError {
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("unsupported connective {0}")]
    UnsupportedConnective(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("unsupported sort {0}")]
    UnsupportedSort(String),
    #[error("unbound variable {0}")]
    UnboundVariable(String),
    #[error("the model does not interpret {0}")]
    Undefined(String),
}
