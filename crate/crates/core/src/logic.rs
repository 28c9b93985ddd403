//! The `$modal` logic family: normalisation of logic specifications, modal
//! systems and axiom schemes, and the frame conditions they correspond to.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::syntax::printer::print_term;
use crate::syntax::{
    Formula, LogicSpecification, NcConnective, Problem, SpecEntry, SpecKey, SpecProperty, SpecValue, Term,
};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LogicError {
    #[error("no logic specification")]
    NoSpecification,
    #[error("unsupported logic `{0}`")]
    UnsupportedLogic(String),
    #[error("missing {0}")]
    MissingProperty(String),
    #[error("duplicate property {0}")]
    DuplicateProperty(String),
    #[error("unknown property {0}")]
    UnknownProperty(String),
    #[error("invalid value `{value}` for {property}")]
    InvalidValue { property: String, value: String },
    #[error("unknown modal system or axiom `{0}`")]
    UnknownModality(String),
    #[error("duplicate modality for {0}")]
    DuplicateIndex(String),
    #[error("the default modality must be the first entry of the list")]
    MisplacedDefault,
    #[error("`{0}` cannot key a modality of this logic")]
    InvalidKey(String),
    #[error("unspecified modality for index {0}")]
    UnspecifiedModality(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModalFamily {
    Modal,
    Alethic,
    Deontic,
    Epistemic,
    Doxastic,
}

impl ModalFamily {
    pub const ALL: [ModalFamily; 5] =
        [ModalFamily::Modal, ModalFamily::Alethic, ModalFamily::Deontic, ModalFamily::Epistemic, ModalFamily::Doxastic];

    pub fn logic_name(self) -> &'static str {
        match self {
            ModalFamily::Modal => "$modal",
            ModalFamily::Alethic => "$alethic_modal",
            ModalFamily::Deontic => "$deontic_modal",
            ModalFamily::Epistemic => "$epistemic_modal",
            ModalFamily::Doxastic => "$doxastic_modal",
        }
    }

    /// The family's (box, dia) connective names.
    pub fn connectives(self) -> (&'static str, &'static str) {
        match self {
            ModalFamily::Modal => ("$box", "$dia"),
            ModalFamily::Alethic => ("$necessary", "$possible"),
            ModalFamily::Deontic => ("$obligatory", "$permissible"),
            ModalFamily::Epistemic => ("$knows", "$canKnow"),
            ModalFamily::Doxastic => ("$believes", "$canBelieve"),
        }
    }

    pub fn from_logic_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.logic_name() == name)
    }

    /// Whether `name` is a box (`Some(true)`) or dia (`Some(false)`) of this
    /// family. The generic `$box`/`$dia` are accepted by every family.
    pub fn polarity(self, name: &str) -> Option<bool> {
        let (b, d) = self.connectives();
        if name == b || name == "$box" {
            Some(true)
        } else if name == d || name == "$dia" {
            Some(false)
        } else {
            None
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModalAxiom {
    K,
    M,
    B,
    D,
    Four,
    Five,
    CD,
    BoxM,
    C4,
    C,
}

pub type AxiomSet = BTreeSet<ModalAxiom>;

impl ModalAxiom {
    pub const ALL: [ModalAxiom; 10] = [
        ModalAxiom::K,
        ModalAxiom::M,
        ModalAxiom::B,
        ModalAxiom::D,
        ModalAxiom::Four,
        ModalAxiom::Five,
        ModalAxiom::CD,
        ModalAxiom::BoxM,
        ModalAxiom::C4,
        ModalAxiom::C,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            ModalAxiom::K => "K",
            ModalAxiom::M => "M",
            ModalAxiom::B => "B",
            ModalAxiom::D => "D",
            ModalAxiom::Four => "4",
            ModalAxiom::Five => "5",
            ModalAxiom::CD => "CD",
            ModalAxiom::BoxM => "BoxM",
            ModalAxiom::C4 => "C4",
            ModalAxiom::C => "C",
        }
    }

    pub fn tptp_name(self) -> String {
        format!("$modal_axiom_{}", self.short_name())
    }

    pub fn from_tptp_name(name: &str) -> Option<Self> {
        let short = name.strip_prefix("$modal_axiom_")?;
        Self::ALL.into_iter().find(|a| a.short_name() == short)
    }

    /// The axiom scheme over the propositional metavariables `phi` and `psi`.
    pub fn scheme(self) -> Formula {
        let phi = || Formula::atom("phi", vec![]);
        let psi = || Formula::atom("psi", vec![]);
        let bx = Formula::box_;
        let di = Formula::dia;
        let imp = Formula::implies;
        match self {
            ModalAxiom::K => imp(bx(imp(phi(), psi())), imp(bx(phi()), bx(psi()))),
            ModalAxiom::M => imp(bx(phi()), phi()),
            ModalAxiom::B => imp(phi(), bx(di(phi()))),
            ModalAxiom::D => imp(bx(phi()), di(phi())),
            ModalAxiom::Four => imp(bx(phi()), bx(bx(phi()))),
            ModalAxiom::Five => imp(di(phi()), bx(di(phi()))),
            ModalAxiom::CD => imp(di(phi()), bx(phi())),
            ModalAxiom::BoxM => bx(imp(bx(phi()), phi())),
            ModalAxiom::C4 => imp(bx(bx(phi())), bx(phi())),
            ModalAxiom::C => imp(di(bx(phi())), bx(di(phi()))),
        }
    }

    pub fn frame_condition(self) -> Option<FrameCondition> {
        match self {
            ModalAxiom::K => None,
            ModalAxiom::M => Some(FrameCondition::Reflexive),
            ModalAxiom::B => Some(FrameCondition::Symmetric),
            ModalAxiom::D => Some(FrameCondition::Serial),
            ModalAxiom::Four => Some(FrameCondition::Transitive),
            ModalAxiom::Five => Some(FrameCondition::Euclidean),
            ModalAxiom::CD => Some(FrameCondition::Functional),
            ModalAxiom::BoxM => Some(FrameCondition::ShiftReflexive),
            ModalAxiom::C4 => Some(FrameCondition::Dense),
            ModalAxiom::C => Some(FrameCondition::Confluent),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModalSystem {
    K,
    KB,
    K4,
    K5,
    K45,
    KB5,
    D,
    DB,
    D4,
    D5,
    D45,
    M,
    B,
    S4,
    S5,
}

impl ModalSystem {
    pub const ALL: [ModalSystem; 15] = [
        ModalSystem::K,
        ModalSystem::KB,
        ModalSystem::K4,
        ModalSystem::K5,
        ModalSystem::K45,
        ModalSystem::KB5,
        ModalSystem::D,
        ModalSystem::DB,
        ModalSystem::D4,
        ModalSystem::D5,
        ModalSystem::D45,
        ModalSystem::M,
        ModalSystem::B,
        ModalSystem::S4,
        ModalSystem::S5,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            ModalSystem::K => "K",
            ModalSystem::KB => "KB",
            ModalSystem::K4 => "K4",
            ModalSystem::K5 => "K5",
            ModalSystem::K45 => "K45",
            ModalSystem::KB5 => "KB5",
            ModalSystem::D => "D",
            ModalSystem::DB => "DB",
            ModalSystem::D4 => "D4",
            ModalSystem::D5 => "D5",
            ModalSystem::D45 => "D45",
            ModalSystem::M => "M",
            ModalSystem::B => "B",
            ModalSystem::S4 => "S4",
            ModalSystem::S5 => "S5",
        }
    }

    pub fn tptp_name(self) -> String {
        format!("$modal_system_{}", self.short_name())
    }

    /// `T` is accepted as a synonym of `M`.
    pub fn from_tptp_name(name: &str) -> Option<Self> {
        let short = name.strip_prefix("$modal_system_")?;
        if short == "T" {
            return Some(ModalSystem::M);
        }
        Self::ALL.into_iter().find(|s| s.short_name() == short)
    }
}

/// The axiom schemes of a modal system.
pub fn system_axioms(system: ModalSystem) -> AxiomSet {
    use ModalAxiom::*;
    let extra: &[ModalAxiom] = match system {
        ModalSystem::K => &[],
        ModalSystem::KB => &[B],
        ModalSystem::K4 => &[Four],
        ModalSystem::K5 => &[Five],
        ModalSystem::K45 => &[Four, Five],
        ModalSystem::KB5 => &[B, Five],
        ModalSystem::D => &[D],
        ModalSystem::DB => &[D, B],
        ModalSystem::D4 => &[D, Four],
        ModalSystem::D5 => &[D, Five],
        ModalSystem::D45 => &[D, Four, Five],
        ModalSystem::M => &[M],
        ModalSystem::B => &[B],
        ModalSystem::S4 => &[M, Four],
        ModalSystem::S5 => &[M, B, Five],
    };
    std::iter::once(K).chain(extra.iter().copied()).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FrameCondition {
    Reflexive,
    Symmetric,
    Serial,
    Transitive,
    Euclidean,
    /// At most one successor.
    Functional,
    /// Every successor is reflexive.
    ShiftReflexive,
    Dense,
    Confluent,
}

impl FrameCondition {
    pub const ALL: [FrameCondition; 9] = [
        FrameCondition::Reflexive,
        FrameCondition::Symmetric,
        FrameCondition::Serial,
        FrameCondition::Transitive,
        FrameCondition::Euclidean,
        FrameCondition::Functional,
        FrameCondition::ShiftReflexive,
        FrameCondition::Dense,
        FrameCondition::Confluent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FrameCondition::Reflexive => "reflexive",
            FrameCondition::Symmetric => "symmetric",
            FrameCondition::Serial => "serial",
            FrameCondition::Transitive => "transitive",
            FrameCondition::Euclidean => "euclidean",
            FrameCondition::Functional => "at-most-one-successor",
            FrameCondition::ShiftReflexive => "shift-reflexive",
            FrameCondition::Dense => "dense",
            FrameCondition::Confluent => "confluent",
        }
    }

    /// Decides the condition on the relation `r` over worlds `0..n`.
    pub fn holds(self, n: usize, r: impl Fn(usize, usize) -> bool) -> bool {
        let ws = || 0..n;
        match self {
            FrameCondition::Reflexive => ws().all(|w| r(w, w)),
            FrameCondition::Symmetric => ws().all(|w| ws().all(|v| !r(w, v) || r(v, w))),
            FrameCondition::Serial => ws().all(|w| ws().any(|v| r(w, v))),
            FrameCondition::Transitive => {
                ws().all(|w| ws().all(|v| !r(w, v) || ws().all(|u| !r(v, u) || r(w, u))))
            }
            FrameCondition::Euclidean => {
                ws().all(|w| ws().all(|v| !r(w, v) || ws().all(|u| !r(w, u) || r(v, u))))
            }
            FrameCondition::Functional => ws().all(|w| ws().filter(|&v| r(w, v)).count() <= 1),
            FrameCondition::ShiftReflexive => ws().all(|w| ws().all(|v| !r(w, v) || r(v, v))),
            FrameCondition::Dense => {
                ws().all(|w| ws().all(|v| !r(w, v) || ws().any(|u| r(w, u) && r(u, v))))
            }
            FrameCondition::Confluent => ws().all(|w| {
                ws().all(|v| {
                    ws().all(|u| !(r(w, v) && r(w, u)) || ws().any(|x| r(v, x) && r(u, x)))
                })
            }),
        }
    }
}

impl fmt::Display for FrameCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn frame_conditions(axioms: &AxiomSet) -> BTreeSet<FrameCondition> {
    axioms.iter().filter_map(|a| a.frame_condition()).collect()
}

macro_rules! keyword_enum {
    ($name:ident { $($variant:ident => $kw:literal),* $(,)? }) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum $name { $($variant),* }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),*];

            pub fn tptp_name(self) -> &'static str {
                match self { $($name::$variant => $kw),* }
            }

            pub fn from_tptp_name(name: &str) -> Option<Self> {
                match name { $($kw => Some($name::$variant),)* _ => None }
            }
        }
    };
}

keyword_enum!(Domains { Constant => "$constant", Varying => "$varying", Cumulative => "$cumulative", Decreasing => "$decreasing" });
keyword_enum!(Designation { Rigid => "$rigid", Flexible => "$flexible" });
keyword_enum!(Terms { Global => "$global", Local => "$local" });

/// How a modal connective resolves under a logic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ConnectiveKind {
    /// `None` is the mono-modal (unindexed) connective.
    Box(Option<String>),
    Dia(Option<String>),
    Foreign,
}

/// The resolved semantics of a `$modal`-family specification.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalizedModalLogic {
    pub family: ModalFamily,
    pub domains: Domains,
    pub designation: Designation,
    pub terms: Terms,
    pub default: Option<AxiomSet>,
    /// Keyed by the `#`-prefixed index.
    pub per_index: BTreeMap<String, AxiomSet>,
}

impl NormalizedModalLogic {
    /// A mono-modal logic with one axiom set for every index.
    pub fn uniform(domains: Domains, designation: Designation, terms: Terms, axioms: AxiomSet) -> Self {
        NormalizedModalLogic {
            family: ModalFamily::Modal,
            domains,
            designation,
            terms,
            default: Some(with_k(axioms)),
            per_index: BTreeMap::new(),
        }
    }

    /// The axiom set governing `index` (`None` for the unindexed connective).
    pub fn axioms_for(&self, index: Option<&str>) -> Result<&AxiomSet, LogicError> {
        index
            .and_then(|i| self.per_index.get(i))
            .or(self.default.as_ref())
            .ok_or_else(|| LogicError::UnspecifiedModality(index.unwrap_or("(none)").to_string()))
    }

    pub fn frame_conditions_for(&self, index: Option<&str>) -> Result<BTreeSet<FrameCondition>, LogicError> {
        self.axioms_for(index).map(frame_conditions)
    }

    /// Renders the logic as a specification that normalises back to `self`.
    pub fn to_specification(&self) -> LogicSpecification {
        let word = |s: &str| SpecValue::Term(Term::Defined(s.to_string()));
        let axioms = |set: &AxiomSet| {
            SpecValue::List(set.iter().map(|a| SpecEntry::Value(word(&a.tptp_name()))).collect())
        };
        let modalities = if self.per_index.is_empty() {
            match &self.default {
                Some(d) => axioms(d),
                None => SpecValue::List(Vec::new()),
            }
        } else {
            let mut entries = Vec::new();
            if let Some(d) = &self.default {
                entries.push(SpecEntry::Value(axioms(d)));
            }
            for (idx, set) in &self.per_index {
                entries.push(SpecEntry::Keyed {
                    key: SpecKey::Connective(NcConnective::indexed(self.family.connectives().0, idx.clone())),
                    value: axioms(set),
                });
            }
            SpecValue::List(entries)
        };
        LogicSpecification {
            logic: self.family.logic_name().to_string(),
            properties: vec![
                SpecProperty { name: "$domains".into(), value: word(self.domains.tptp_name()) },
                SpecProperty { name: "$designation".into(), value: word(self.designation.tptp_name()) },
                SpecProperty { name: "$terms".into(), value: word(self.terms.tptp_name()) },
                SpecProperty { name: "$modalities".into(), value: modalities },
            ],
        }
    }
}

fn with_k(mut set: AxiomSet) -> AxiomSet {
    set.insert(ModalAxiom::K);
    set
}

fn axiom_list(set: &AxiomSet) -> String {
    let names: Vec<&str> = set.iter().map(|a| a.short_name()).collect();
    format!("{{{}}}", names.join(","))
}

impl fmt::Display for NormalizedModalLogic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "logic: {}", self.family.logic_name())?;
        writeln!(f, "domains: {}", self.domains.tptp_name())?;
        writeln!(f, "designation: {}", self.designation.tptp_name())?;
        writeln!(f, "terms: {}", self.terms.tptp_name())?;
        match &self.default {
            Some(d) => write!(f, "modalities default: {}", axiom_list(d))?,
            None => write!(f, "modalities default: none")?,
        }
        for (idx, set) in &self.per_index {
            write!(f, "\nmodalities {idx}: {}", axiom_list(set))?;
        }
        Ok(())
    }
}

/// Normalises the logic specification of `p`.
pub fn problem_logic(p: &Problem) -> Result<NormalizedModalLogic, LogicError> {
    normalize_spec(p.logic_specification().ok_or(LogicError::NoSpecification)?)
}

pub fn normalize_spec(spec: &LogicSpecification) -> Result<NormalizedModalLogic, LogicError> {
    let family =
        ModalFamily::from_logic_name(&spec.logic).ok_or_else(|| LogicError::UnsupportedLogic(spec.logic.clone()))?;
    let mut props: BTreeMap<&str, &SpecValue> = BTreeMap::new();
    for p in &spec.properties {
        if !matches!(p.name.as_str(), "$domains" | "$designation" | "$terms" | "$modalities") {
            return Err(LogicError::UnknownProperty(p.name.clone()));
        }
        if props.insert(&p.name, &p.value).is_some() {
            return Err(LogicError::DuplicateProperty(p.name.clone()));
        }
    }
    let get = |name: &str| props.get(name).copied().ok_or_else(|| LogicError::MissingProperty(name.to_string()));
    fn keyword<T>(property: &str, v: &SpecValue, parse: impl Fn(&str) -> Option<T>) -> Result<T, LogicError> {
        match v {
            SpecValue::Term(Term::Defined(s)) => parse(s),
            _ => None,
        }
        .ok_or_else(|| LogicError::InvalidValue { property: property.to_string(), value: spec_value_text(v) })
    }
    let domains = keyword("$domains", get("$domains")?, Domains::from_tptp_name)?;
    let designation = keyword("$designation", get("$designation")?, Designation::from_tptp_name)?;
    let terms = keyword("$terms", get("$terms")?, Terms::from_tptp_name)?;
    let (default, per_index) = modalities(family, get("$modalities")?)?;
    Ok(NormalizedModalLogic { family, domains, designation, terms, default, per_index })
}

fn spec_value_text(v: &SpecValue) -> String {
    match v {
        SpecValue::Term(t) => print_term(t),
        SpecValue::List(_) => "[...]".into(),
    }
}

type Modalities = (Option<AxiomSet>, BTreeMap<String, AxiomSet>);

fn modalities(family: ModalFamily, v: &SpecValue) -> Result<Modalities, LogicError> {
    let SpecValue::List(entries) = v else {
        return Ok((Some(mono_spec(v)?), BTreeMap::new()));
    };
    let keyed = entries.iter().any(|e| matches!(e, SpecEntry::Keyed { .. }));
    if !keyed {
        // A plain list of axiom names.
        return Ok((Some(mono_spec(v)?), BTreeMap::new()));
    }
    let mut default = None;
    let mut per_index = BTreeMap::new();
    for (i, e) in entries.iter().enumerate() {
        match e {
            SpecEntry::Value(v) => {
                if i != 0 {
                    return Err(LogicError::MisplacedDefault);
                }
                default = Some(mono_spec(v)?);
            }
            SpecEntry::Keyed { key, value } => {
                let SpecKey::Connective(c) = key else {
                    let SpecKey::Symbol(s) = key else { unreachable!() };
                    return Err(LogicError::InvalidKey(s.clone()));
                };
                if family.polarity(&c.name).is_none() || !c.params.is_empty() {
                    return Err(LogicError::InvalidKey(c.name.clone()));
                }
                let set = mono_spec(value)?;
                match &c.index {
                    None => {
                        if default.replace(set).is_some() {
                            return Err(LogicError::DuplicateIndex("the unindexed connective".into()));
                        }
                    }
                    Some(idx) => {
                        if per_index.insert(idx.clone(), set).is_some() {
                            return Err(LogicError::DuplicateIndex(idx.clone()));
                        }
                    }
                }
            }
        }
    }
    Ok((default, per_index))
}

/// A system name, a single axiom name, or a list of axiom names.
fn mono_spec(v: &SpecValue) -> Result<AxiomSet, LogicError> {
    match v {
        SpecValue::Term(Term::Defined(name)) => {
            if let Some(s) = ModalSystem::from_tptp_name(name) {
                Ok(system_axioms(s))
            } else if let Some(a) = ModalAxiom::from_tptp_name(name) {
                Ok(with_k([a].into()))
            } else {
                Err(LogicError::UnknownModality(name.clone()))
            }
        }
        SpecValue::Term(t) => Err(LogicError::UnknownModality(print_term(t))),
        SpecValue::List(entries) => {
            let mut set = AxiomSet::new();
            for e in entries {
                match e {
                    SpecEntry::Value(SpecValue::Term(Term::Defined(name))) => {
                        set.insert(
                            ModalAxiom::from_tptp_name(name)
                                .ok_or_else(|| LogicError::UnknownModality(name.clone()))?,
                        );
                    }
                    SpecEntry::Value(other) => return Err(LogicError::UnknownModality(spec_value_text(other))),
                    SpecEntry::Keyed { .. } => return Err(LogicError::UnknownModality("key-value pair".into())),
                }
            }
            Ok(with_k(set))
        }
    }
}

/// Classifies a connective under `logic`. Modal connectives must have a
/// specified modality for their index.
pub fn connective_kind(c: &NcConnective, logic: &NormalizedModalLogic) -> Result<ConnectiveKind, LogicError> {
    let Some(is_box) = logic.family.polarity(&c.name) else {
        return Ok(ConnectiveKind::Foreign);
    };
    logic.axioms_for(c.index.as_deref())?;
    Ok(if is_box { ConnectiveKind::Box(c.index.clone()) } else { ConnectiveKind::Dia(c.index.clone()) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_problem;

    fn spec(src: &str) -> Result<NormalizedModalLogic, LogicError> {
        problem_logic(&parse_problem(&format!("tff(s,logic,{src}).")).unwrap())
    }

    const FULL: &str = "$domains == $constant, $designation == $rigid, $terms == $global";

    #[test]
    fn table_spot_values() {
        use ModalAxiom::*;
        assert_eq!(system_axioms(ModalSystem::S5), [K, M, B, Five].into());
        assert_eq!(system_axioms(ModalSystem::K), [K].into());
        assert_eq!(system_axioms(ModalSystem::D45), [K, D, Four, Five].into());
        assert_eq!(system_axioms(ModalSystem::B), system_axioms(ModalSystem::KB));
        assert!(ModalSystem::ALL.iter().all(|s| system_axioms(*s).contains(&K)));
    }

    #[test]
    fn names_round_trip() {
        for a in ModalAxiom::ALL {
            assert_eq!(ModalAxiom::from_tptp_name(&a.tptp_name()), Some(a));
        }
        for s in ModalSystem::ALL {
            assert_eq!(ModalSystem::from_tptp_name(&s.tptp_name()), Some(s));
        }
    }

    #[test]
    fn conditions() {
        use ModalAxiom::*;
        assert_eq!(frame_conditions(&[K, M].into()), [FrameCondition::Reflexive].into());
        assert_eq!(frame_conditions(&[K, D].into()), [FrameCondition::Serial].into());
        assert!(frame_conditions(&[K].into()).is_empty());
        let r = |w: usize, v: usize| [(0, 0), (0, 1), (1, 1)].contains(&(w, v));
        assert!(FrameCondition::Reflexive.holds(2, r));
        assert!(!FrameCondition::Symmetric.holds(2, r));
    }

    #[test]
    fn axiom_list_gets_k() {
        let l = spec(&format!("$modal == [{FULL}, $modalities == [$modal_axiom_D]]")).unwrap();
        assert_eq!(l.default, Some([ModalAxiom::K, ModalAxiom::D].into()));
    }

    #[test]
    fn errors() {
        assert_eq!(
            spec("$modal == [$designation == $rigid, $terms == $global, $modalities == $modal_system_K]"),
            Err(LogicError::MissingProperty("$domains".into()))
        );
        assert!(matches!(spec("$$fancy == []"), Err(LogicError::UnsupportedLogic(_))));
        assert!(matches!(
            spec(&format!("$modal == [{FULL}, $modalities == $modal_system_Q]")),
            Err(LogicError::UnknownModality(_))
        ));
        assert!(matches!(
            spec(&format!("$modal == [{FULL}, $terms == $local, $modalities == $modal_system_K]")),
            Err(LogicError::DuplicateProperty(_))
        ));
        assert!(matches!(
            spec(&format!(
                "$modal == [{FULL}, $modalities == [{{$box(#1)}} == $modal_system_K, {{$dia(#1)}} == $modal_system_D]]"
            )),
            Err(LogicError::DuplicateIndex(_))
        ));
        assert!(matches!(
            spec(&format!("$modal == [{FULL}, $modalities == [{{$box(#1)}} == $modal_system_K, $modal_system_D]]")),
            Err(LogicError::MisplacedDefault)
        ));
    }

    #[test]
    fn dia_keys_index_by_duality() {
        let l = spec(&format!("$modal == [{FULL}, $modalities == [{{$dia(#a)}} == $modal_system_S4]]")).unwrap();
        assert_eq!(l.per_index["#a"], system_axioms(ModalSystem::S4));
        let k = connective_kind(&NcConnective::indexed("$box", "#a"), &l).unwrap();
        assert_eq!(k, ConnectiveKind::Box(Some("#a".into())));
        assert_eq!(
            connective_kind(&NcConnective::indexed("$box", "#b"), &l),
            Err(LogicError::UnspecifiedModality("#b".into()))
        );
    }

    #[test]
    fn family_connectives() {
        let l = spec(&format!("$deontic_modal == [{FULL}, $modalities == $modal_system_D]")).unwrap();
        assert_eq!(connective_kind(&NcConnective::simple("$permissible"), &l).unwrap(), ConnectiveKind::Dia(None));
        assert_eq!(connective_kind(&NcConnective::simple("$box"), &l).unwrap(), ConnectiveKind::Box(None));
        assert_eq!(connective_kind(&NcConnective::simple("$knows"), &l).unwrap(), ConnectiveKind::Foreign);
        // An index without a key falls back to the default.
        assert_eq!(
            connective_kind(&NcConnective::indexed("$obligatory", "#3"), &l).unwrap(),
            ConnectiveKind::Box(Some("#3".into()))
        );
    }

    #[test]
    fn specification_renders_back() {
        let l = spec(&format!(
            "$modal == [{FULL}, $modalities == [$modal_system_K, {{$box(#1)}} == $modal_system_S5]]"
        ))
        .unwrap();
        assert_eq!(normalize_spec(&l.to_specification()).unwrap(), l);
    }
}
