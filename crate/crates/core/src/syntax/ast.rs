//! Abstract syntax for the NX0 fragment: annotated formulae, formulae, terms,
//! types, non-classical connectives and logic specifications.

use std::collections::BTreeSet;
use std::fmt;

use super::lexer::Pos;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Language {
    Tff,
    Thf,
    Fof,
}

impl Language {
    pub fn as_str(self) -> &'static str {
        match self {
            Language::Tff => "tff",
            Language::Thf => "thf",
            Language::Fof => "fof",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RoleBase {
    Axiom,
    Hypothesis,
    Conjecture,
    NegatedConjecture,
    Plain,
    Lemma,
    Type,
    Logic,
    Interpretation,
}

impl RoleBase {
    pub const ALL: [RoleBase; 9] = [
        RoleBase::Axiom,
        RoleBase::Hypothesis,
        RoleBase::Conjecture,
        RoleBase::NegatedConjecture,
        RoleBase::Plain,
        RoleBase::Lemma,
        RoleBase::Type,
        RoleBase::Logic,
        RoleBase::Interpretation,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RoleBase::Axiom => "axiom",
            RoleBase::Hypothesis => "hypothesis",
            RoleBase::Conjecture => "conjecture",
            RoleBase::NegatedConjecture => "negated_conjecture",
            RoleBase::Plain => "plain",
            RoleBase::Lemma => "lemma",
            RoleBase::Type => "type",
            RoleBase::Logic => "logic",
            RoleBase::Interpretation => "interpretation",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        RoleBase::ALL.into_iter().find(|r| r.as_str() == name)
    }

    /// Roles whose formula is an assumption, and so may carry `-local`/`-global`.
    pub fn is_assumption(self) -> bool {
        matches!(self, RoleBase::Axiom | RoleBase::Hypothesis | RoleBase::Lemma | RoleBase::Plain)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubRole {
    Local,
    Global,
    Domain,
    Mapping,
    Worlds,
}

impl SubRole {
    pub fn as_str(self) -> &'static str {
        match self {
            SubRole::Local => "local",
            SubRole::Global => "global",
            SubRole::Domain => "domain",
            SubRole::Mapping => "mapping",
            SubRole::Worlds => "worlds",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        [SubRole::Local, SubRole::Global, SubRole::Domain, SubRole::Mapping, SubRole::Worlds]
            .into_iter()
            .find(|r| r.as_str() == name)
    }

    /// Whether this subrole may be attached to `base`.
    pub fn allowed_on(self, base: RoleBase) -> bool {
        match self {
            SubRole::Local | SubRole::Global => base.is_assumption(),
            SubRole::Domain | SubRole::Mapping | SubRole::Worlds => base == RoleBase::Interpretation,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Role {
    pub base: RoleBase,
    pub subrole: Option<SubRole>,
}

impl Role {
    pub fn new(base: RoleBase) -> Self {
        Role { base, subrole: None }
    }

    pub fn with_subrole(base: RoleBase, subrole: SubRole) -> Self {
        Role { base, subrole: Some(subrole) }
    }

    /// Local/global reading of an assumption role: `hypothesis` and `-local`
    /// are local, `axiom`-like roles and `-global` are global.
    pub fn is_local_assumption(&self) -> bool {
        match self.subrole {
            Some(SubRole::Local) => true,
            Some(SubRole::Global) => false,
            _ => matches!(self.base, RoleBase::Hypothesis | RoleBase::NegatedConjecture),
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.base.as_str())?;
        if let Some(sub) = self.subrole {
            write!(f, "-{}", sub.as_str())?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TptpType {
    /// `$i`
    Individual,
    /// `$o`
    Bool,
    /// `$world`
    World,
    /// `$int`; accepted by the parser only.
    Int,
    User(String),
    Mapping(Vec<TptpType>, Box<TptpType>),
}

impl TptpType {
    pub fn from_atomic(name: &str) -> Option<Self> {
        match name {
            "$i" => Some(TptpType::Individual),
            "$o" => Some(TptpType::Bool),
            "$world" => Some(TptpType::World),
            "$int" => Some(TptpType::Int),
            _ if name.starts_with('$') => None,
            _ => Some(TptpType::User(name.to_string())),
        }
    }

    pub fn is_atomic(&self) -> bool {
        !matches!(self, TptpType::Mapping(..))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Variable(String),
    /// Function application; constants have no arguments.
    Function { symbol: String, args: Vec<Term> },
    /// A `$`-prefixed defined constant such as `$local_world`.
    Defined(String),
    Integer(String),
}

impl Term {
    pub fn constant(symbol: impl Into<String>) -> Self {
        Term::Function { symbol: symbol.into(), args: Vec::new() }
    }

    pub fn app(symbol: impl Into<String>, args: Vec<Term>) -> Self {
        Term::Function { symbol: symbol.into(), args }
    }

    pub fn var(name: impl Into<String>) -> Self {
        Term::Variable(name.into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TypedVariable {
    pub name: String,
    pub ty: Option<TptpType>,
}

impl TypedVariable {
    pub fn new(name: impl Into<String>, ty: TptpType) -> Self {
        TypedVariable { name: name.into(), ty: Some(ty) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamValue {
    Term(Term),
    Formula(Formula),
    List(Vec<ParamValue>),
}

/// A brace-wrapped connective `{$name(#index, key := value, ...)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NcConnective {
    pub name: String,
    /// The `#`-prefixed index, kept with its `#`.
    pub index: Option<String>,
    pub params: Vec<(String, ParamValue)>,
}

impl NcConnective {
    pub fn simple(name: impl Into<String>) -> Self {
        NcConnective { name: name.into(), index: None, params: Vec::new() }
    }

    pub fn indexed(name: impl Into<String>, index: impl Into<String>) -> Self {
        NcConnective { name: name.into(), index: Some(index.into()), params: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom { predicate: String, args: Vec<Term> },
    Equality(Term, Term),
    Inequality(Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    ReverseImplies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Xor(Box<Formula>, Box<Formula>),
    Forall(Vec<TypedVariable>, Box<Formula>),
    Exists(Vec<TypedVariable>, Box<Formula>),
    True,
    False,
    NonClassical { connective: NcConnective, args: Vec<Formula> },
    /// `$in_world(w, φ)`: worldly scope in interpretations.
    InWorld { world: Term, body: Box<Formula> },
}

impl Formula {
    pub fn atom(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom { predicate: predicate.into(), args }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn forall(vars: Vec<TypedVariable>, body: Formula) -> Self {
        Formula::Forall(vars, Box::new(body))
    }

    pub fn exists(vars: Vec<TypedVariable>, body: Formula) -> Self {
        Formula::Exists(vars, Box::new(body))
    }

    pub fn box_(f: Formula) -> Self {
        Formula::NonClassical { connective: NcConnective::simple("$box"), args: vec![f] }
    }

    pub fn dia(f: Formula) -> Self {
        Formula::NonClassical { connective: NcConnective::simple("$dia"), args: vec![f] }
    }

    /// Pre-order traversal over every sub-formula, including formulae nested
    /// in connective parameters.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Not(a) => a.visit(f),
            Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| x.visit(f)),
            Formula::Implies(a, b)
            | Formula::ReverseImplies(a, b)
            | Formula::Iff(a, b)
            | Formula::Xor(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Forall(_, body) | Formula::Exists(_, body) | Formula::InWorld { body, .. } => {
                body.visit(f)
            }
            Formula::NonClassical { connective, args } => {
                for (_, p) in &connective.params {
                    p.visit_formulas(f);
                }
                args.iter().for_each(|x| x.visit(f));
            }
            Formula::Atom { .. }
            | Formula::Equality(..)
            | Formula::Inequality(..)
            | Formula::True
            | Formula::False => {}
        }
    }

    /// Names of variables occurring free.
    pub fn free_variables(&self) -> BTreeSet<String> {
        fn term(t: &Term, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match t {
                Term::Variable(v) if !bound.contains(v) => {
                    out.insert(v.clone());
                }
                Term::Function { args, .. } => args.iter().for_each(|a| term(a, bound, out)),
                _ => {}
            }
        }
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
            match f {
                Formula::Atom { args, .. } => args.iter().for_each(|a| term(a, bound, out)),
                Formula::Equality(a, b) | Formula::Inequality(a, b) => {
                    term(a, bound, out);
                    term(b, bound, out);
                }
                Formula::Not(a) => go(a, bound, out),
                Formula::And(xs) | Formula::Or(xs) => xs.iter().for_each(|x| go(x, bound, out)),
                Formula::Implies(a, b)
                | Formula::ReverseImplies(a, b)
                | Formula::Iff(a, b)
                | Formula::Xor(a, b) => {
                    go(a, bound, out);
                    go(b, bound, out);
                }
                Formula::Forall(vs, body) | Formula::Exists(vs, body) => {
                    let n = bound.len();
                    bound.extend(vs.iter().map(|v| v.name.clone()));
                    go(body, bound, out);
                    bound.truncate(n);
                }
                Formula::NonClassical { args, .. } => args.iter().for_each(|x| go(x, bound, out)),
                Formula::InWorld { world, body } => {
                    term(world, bound, out);
                    go(body, bound, out);
                }
                Formula::True | Formula::False => {}
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }
}

impl ParamValue {
    fn visit_formulas<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        match self {
            ParamValue::Formula(x) => x.visit(f),
            ParamValue::List(xs) => xs.iter().for_each(|x| x.visit_formulas(f)),
            ParamValue::Term(_) => {}
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DeclaredType {
    /// `$tType`: the symbol is a new sort.
    Sort,
    Type(TptpType),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypeDeclaration {
    pub symbol: String,
    pub ty: DeclaredType,
}

/// `logic_name == [ property == value, ... ]`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LogicSpecification {
    pub logic: String,
    pub properties: Vec<SpecProperty>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpecProperty {
    pub name: String,
    pub value: SpecValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpecValue {
    Term(Term),
    List(Vec<SpecEntry>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpecEntry {
    Value(SpecValue),
    Keyed { key: SpecKey, value: SpecValue },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SpecKey {
    Symbol(String),
    Connective(NcConnective),
}

/// Opaque source / useful-info terms, carried verbatim.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GeneralTerm {
    Word(String),
    Variable(String),
    Integer(String),
    App(String, Vec<GeneralTerm>),
    List(Vec<GeneralTerm>),
    Colon(Box<GeneralTerm>, Box<GeneralTerm>),
}

impl GeneralTerm {
    /// The atomic word, if this is one.
    pub fn as_word(&self) -> Option<&str> {
        match self {
            GeneralTerm::Word(w) | GeneralTerm::Integer(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Statement {
    Formula(Formula),
    Type(TypeDeclaration),
    Logic(LogicSpecification),
    /// A body outside the supported grammar, kept as its token lexemes. Only
    /// produced for higher-order (`thf`) statements.
    Raw(Vec<String>),
}

#[derive(Clone, Debug)]
pub struct AnnotatedFormula {
    pub language: Language,
    pub name: String,
    pub role: Role,
    pub body: Statement,
    pub source: Option<GeneralTerm>,
    pub useful_info: Option<GeneralTerm>,
    /// Where the statement starts in its file; ignored by equality.
    pub pos: Pos,
}

impl PartialEq for AnnotatedFormula {
    fn eq(&self, other: &Self) -> bool {
        self.language == other.language
            && self.name == other.name
            && self.role == other.role
            && self.body == other.body
            && self.source == other.source
            && self.useful_info == other.useful_info
    }
}

impl Eq for AnnotatedFormula {}

impl AnnotatedFormula {
    pub fn new(language: Language, name: impl Into<String>, role: Role, body: Statement) -> Self {
        AnnotatedFormula {
            language,
            name: name.into(),
            role,
            body,
            source: None,
            useful_info: None,
            pos: Pos::default(),
        }
    }

    pub fn formula(&self) -> Option<&Formula> {
        match &self.body {
            Statement::Formula(f) => Some(f),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Include {
    /// The quoted file name, with its quotes.
    pub file: String,
    pub selection: Option<Vec<String>>,
}

impl Include {
    pub fn path(&self) -> &str {
        self.file.trim_matches('\'')
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Problem {
    pub includes: Vec<Include>,
    pub statements: Vec<AnnotatedFormula>,
}

impl Problem {
    pub fn is_empty(&self) -> bool {
        self.includes.is_empty() && self.statements.is_empty()
    }

    pub fn logic_statement(&self) -> Option<&AnnotatedFormula> {
        self.statements.iter().find(|s| s.role.base == RoleBase::Logic)
    }

    pub fn logic_specification(&self) -> Option<&LogicSpecification> {
        self.statements.iter().find_map(|s| match &s.body {
            Statement::Logic(spec) => Some(spec),
            _ => None,
        })
    }

    pub fn get(&self, name: &str) -> Option<&AnnotatedFormula> {
        self.statements.iter().find(|s| s.name == name)
    }

    pub fn formulas(&self) -> impl Iterator<Item = (&AnnotatedFormula, &Formula)> {
        self.statements.iter().filter_map(|s| s.formula().map(|f| (s, f)))
    }

    pub fn conjecture(&self) -> Option<&AnnotatedFormula> {
        self.statements.iter().find(|s| s.role.base == RoleBase::Conjecture)
    }
}

/// Canonical key of a symbol: a single-quoted atom whose contents form a
/// legal lower word denotes the same symbol as that word.
pub fn symbol_key(name: &str) -> &str {
    if let Some(inner) = name.strip_prefix('\'').and_then(|s| s.strip_suffix('\'')) {
        let mut chars = inner.chars();
        if chars.next().is_some_and(|c| c.is_ascii_lowercase())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        {
            return inner;
        }
    }
    name
}
