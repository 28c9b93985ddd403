//! Recursive-descent parser for TPTP problems in the NX0 fragment.
//!
//! `tff`/`fof` bodies are parsed strictly. `thf` bodies are read first-order
//! where possible: an application chain `p @ a @ b` whose head is a symbol
//! becomes the atom `p(a, b)`, and curried types over atomic types become
//! mapping types. Anything genuinely higher-order (lambdas, applied
//! variables, functional types) is kept as a [`Statement::Raw`] token list.

use thiserror::Error;

use super::ast::*;
use super::lexer::{tokenize, LexError, Pos, Token, TokenKind};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("syntax error at {pos}: {message}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected one of: {})", expected.join(" "))
    }
}

impl From<LexError> for ParseError {
    fn from(e: LexError) -> Self {
        ParseError { pos: e.pos, message: e.message, expected: Vec::new() }
    }
}

impl ParseError {
    fn unsupported(pos: Pos, what: &str) -> Self {
        ParseError { pos, message: format!("unsupported dialect: {what}"), expected: Vec::new() }
    }

    pub fn is_unsupported_dialect(&self) -> bool {
        self.message.starts_with("unsupported dialect")
    }
}

type PResult<T> = Result<T, ParseError>;

/// Parses a whole problem or solution file.
pub fn parse_problem(input: &str) -> PResult<Problem> {
    let mut p = Parser::new(input)?;
    let mut problem = Problem::default();
    while !p.at_end() {
        let tok = p.peek().clone();
        match tok.lexeme.as_str() {
            "include" if tok.kind == TokenKind::Keyword => problem.includes.push(p.include()?),
            "tff" | "thf" | "fof" if tok.kind == TokenKind::Keyword => {
                problem.statements.push(p.annotated_formula()?)
            }
            "cnf" if tok.kind == TokenKind::Keyword => {
                return Err(ParseError::unsupported(tok.pos, "cnf"))
            }
            _ => return Err(p.error_expected("expected an annotated formula", &["tff", "thf", "fof", "include"])),
        }
    }
    Ok(problem)
}

/// Parses a single `tff` formula.
pub fn parse_formula(input: &str) -> PResult<Formula> {
    let mut p = Parser::new(input)?;
    let f = p.logic_formula()?;
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

/// Parses a single `tff` term.
pub fn parse_term(input: &str) -> PResult<Term> {
    let mut p = Parser::new(input)?;
    let t = p.term()?;
    if !p.at_end() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(t)
}

struct Parser {
    tokens: Vec<Token>,
    idx: usize,
    end: Token,
    /// Reading a `thf` body first-order.
    thf: bool,
}

impl Parser {
    fn new(input: &str) -> PResult<Self> {
        let tokens: Vec<Token> =
            tokenize(input)?.into_iter().filter(|t| t.kind != TokenKind::Comment).collect();
        let (line, column) = input.lines().enumerate().last().map_or((1, 1), |(i, l)| (i + 1, l.len() + 1));
        let end = Token {
            kind: TokenKind::Punct,
            lexeme: String::new(),
            pos: Pos { line, column, offset: input.len() },
        };
        Ok(Parser { tokens, idx: 0, end, thf: false })
    }

    fn at_end(&self) -> bool {
        self.idx >= self.tokens.len()
    }

    fn peek(&self) -> &Token {
        self.tokens.get(self.idx).unwrap_or(&self.end)
    }

    fn peek_at(&self, n: usize) -> &Token {
        self.tokens.get(self.idx + n).unwrap_or(&self.end)
    }

    fn peek_is(&self, lexeme: &str) -> bool {
        self.peek().is(lexeme)
    }

    fn bump(&mut self) -> Token {
        let t = self.peek().clone();
        if !self.at_end() {
            self.idx += 1;
        }
        t
    }

    fn eat(&mut self, lexeme: &str) -> bool {
        if self.peek_is(lexeme) {
            self.idx += 1;
            true
        } else {
            false
        }
    }

    fn error(&self, message: &str) -> ParseError {
        let tok = self.peek();
        let found = if self.at_end() { "end of input".to_string() } else { format!("`{}`", tok.lexeme) };
        ParseError { pos: tok.pos, message: format!("{message}, found {found}"), expected: Vec::new() }
    }

    fn error_expected(&self, message: &str, expected: &[&str]) -> ParseError {
        let mut e = self.error(message);
        e.expected = expected.iter().map(|s| s.to_string()).collect();
        e
    }

    fn expect(&mut self, lexeme: &str) -> PResult<Token> {
        if self.peek_is(lexeme) {
            Ok(self.bump())
        } else {
            Err(self.error_expected(&format!("expected `{lexeme}`"), &[lexeme]))
        }
    }

    // ---------------------------------------------------------------- top level

    fn include(&mut self) -> PResult<Include> {
        self.bump();
        self.expect("(")?;
        let file = self.bump();
        if file.kind != TokenKind::SingleQuoted {
            return Err(ParseError {
                pos: file.pos,
                message: "expected a quoted file name".into(),
                expected: vec!["'file'".into()],
            });
        }
        let mut selection = None;
        if self.eat(",") {
            self.expect("[")?;
            let mut names = Vec::new();
            if !self.peek_is("]") {
                loop {
                    names.push(self.name()?);
                    if !self.eat(",") {
                        break;
                    }
                }
            }
            self.expect("]")?;
            selection = Some(names);
        }
        self.expect(")")?;
        self.expect(".")?;
        Ok(Include { file: file.lexeme, selection })
    }

    fn name(&mut self) -> PResult<String> {
        let tok = self.peek();
        match tok.kind {
            TokenKind::LowerWord | TokenKind::Keyword | TokenKind::SingleQuoted | TokenKind::Integer => {
                Ok(self.bump().lexeme)
            }
            _ => Err(self.error_expected("expected a name", &["<atomic word>", "<integer>"])),
        }
    }

    fn role(&mut self) -> PResult<Role> {
        let tok = self.bump();
        let base = RoleBase::from_name(&tok.lexeme)
            .filter(|_| matches!(tok.kind, TokenKind::LowerWord | TokenKind::Keyword))
            .ok_or_else(|| ParseError {
                pos: tok.pos,
                message: format!("unknown role `{}`", tok.lexeme),
                expected: RoleBase::ALL.iter().map(|r| r.as_str().to_string()).collect(),
            })?;
        let mut role = Role::new(base);
        if self.eat("-") {
            let sub_tok = self.bump();
            let sub = SubRole::from_name(&sub_tok.lexeme).ok_or_else(|| ParseError {
                pos: sub_tok.pos,
                message: format!("unknown subrole `{}`", sub_tok.lexeme),
                expected: vec!["local".into(), "global".into(), "domain".into(), "mapping".into(), "worlds".into()],
            })?;
            if !sub.allowed_on(base) {
                return Err(ParseError {
                    pos: sub_tok.pos,
                    message: format!("subrole `{}` is not allowed on role `{}`", sub.as_str(), base.as_str()),
                    expected: Vec::new(),
                });
            }
            role.subrole = Some(sub);
        }
        Ok(role)
    }

    fn annotated_formula(&mut self) -> PResult<AnnotatedFormula> {
        let kw = self.bump();
        let language = match kw.lexeme.as_str() {
            "tff" => Language::Tff,
            "thf" => Language::Thf,
            _ => Language::Fof,
        };
        self.expect("(")?;
        let name = self.name()?;
        self.expect(",")?;
        let role = self.role()?;
        self.expect(",")?;
        let body = self.statement_body(language, role)?;
        let mut source = None;
        let mut useful_info = None;
        if self.eat(",") {
            source = Some(self.general_term()?);
            if self.eat(",") {
                useful_info = Some(self.general_term()?);
            }
        }
        self.expect(")")?;
        self.expect(".")?;
        Ok(AnnotatedFormula { language, name, role, body, source, useful_info, pos: kw.pos })
    }

    fn statement_body(&mut self, language: Language, role: Role) -> PResult<Statement> {
        let start = self.idx;
        let strict = |p: &mut Parser| -> PResult<Statement> {
            let body = match role.base {
                RoleBase::Type => Statement::Type(p.type_declaration()?),
                RoleBase::Logic => Statement::Logic(p.logic_specification()?),
                _ => Statement::Formula(p.logic_formula()?),
            };
            if !(p.peek_is(",") || p.peek_is(")")) {
                return Err(p.error_expected("expected end of formula", &[",", ")"]));
            }
            Ok(body)
        };
        if language != Language::Thf {
            return strict(self);
        }
        self.thf = true;
        let attempt = strict(self);
        self.thf = false;
        match attempt {
            Ok(body) => Ok(body),
            Err(_) => {
                self.idx = start;
                self.raw_body()
            }
        }
    }

    /// Captures tokens up to the next top-level `,` or `)`.
    fn raw_body(&mut self) -> PResult<Statement> {
        let start = self.peek().pos;
        let mut depth = 0usize;
        let mut out = Vec::new();
        loop {
            if self.at_end() {
                return Err(ParseError {
                    pos: start,
                    message: "unterminated formula".into(),
                    expected: vec![")".into()],
                });
            }
            let tok = self.peek();
            if depth == 0 && (tok.is(",") || tok.is(")")) {
                break;
            }
            if tok.kind == TokenKind::Punct {
                match tok.lexeme.as_str() {
                    "(" | "[" | "{" => depth += 1,
                    ")" | "]" | "}" => depth = depth.saturating_sub(1),
                    _ => {}
                }
            }
            out.push(self.bump().lexeme);
        }
        if out.is_empty() {
            return Err(self.error("expected a formula"));
        }
        Ok(Statement::Raw(out))
    }

    fn general_term(&mut self) -> PResult<GeneralTerm> {
        let data = if self.eat("[") {
            let mut items = Vec::new();
            if !self.peek_is("]") {
                loop {
                    items.push(self.general_term()?);
                    if !self.eat(",") {
                        break;
                    }
                }
            }
            self.expect("]")?;
            return Ok(GeneralTerm::List(items));
        } else {
            let tok = self.bump();
            match tok.kind {
                TokenKind::UpperWord => GeneralTerm::Variable(tok.lexeme),
                TokenKind::Integer => GeneralTerm::Integer(tok.lexeme),
                TokenKind::LowerWord
                | TokenKind::Keyword
                | TokenKind::SingleQuoted
                | TokenKind::DefinedWord
                | TokenKind::SystemWord => {
                    if self.eat("(") {
                        let mut args = Vec::new();
                        loop {
                            args.push(self.general_term()?);
                            if !self.eat(",") {
                                break;
                            }
                        }
                        self.expect(")")?;
                        GeneralTerm::App(tok.lexeme, args)
                    } else {
                        GeneralTerm::Word(tok.lexeme)
                    }
                }
                _ => {
                    self.idx -= 1;
                    return Err(self.error("expected a general term"));
                }
            }
        };
        if self.eat(":") {
            let rest = self.general_term()?;
            return Ok(GeneralTerm::Colon(Box::new(data), Box::new(rest)));
        }
        Ok(data)
    }

    // ---------------------------------------------------------------- types

    fn type_declaration(&mut self) -> PResult<TypeDeclaration> {
        if self.eat("(") {
            let decl = self.type_declaration()?;
            self.expect(")")?;
            return Ok(decl);
        }
        let tok = self.bump();
        let symbol = match tok.kind {
            TokenKind::LowerWord
            | TokenKind::Keyword
            | TokenKind::SingleQuoted
            | TokenKind::SystemWord
            | TokenKind::DefinedWord => tok.lexeme,
            _ => {
                self.idx -= 1;
                return Err(self.error_expected("expected a symbol to declare", &["<atomic word>"]));
            }
        };
        self.expect(":")?;
        if self.eat("$tType") {
            return Ok(TypeDeclaration { symbol, ty: DeclaredType::Sort });
        }
        let ty = if self.thf { self.thf_type()? } else { self.tff_type()? };
        Ok(TypeDeclaration { symbol, ty: DeclaredType::Type(ty) })
    }

    fn atomic_type(&mut self) -> PResult<TptpType> {
        let tok = self.bump();
        match tok.kind {
            TokenKind::DefinedWord => match tok.lexeme.as_str() {
                "$rat" | "$real" => Err(ParseError::unsupported(tok.pos, "arithmetic types")),
                "$tType" => Err(ParseError::unsupported(tok.pos, "polymorphic types")),
                other => TptpType::from_atomic(other).ok_or_else(|| ParseError {
                    pos: tok.pos,
                    message: format!("unknown defined type `{other}`"),
                    expected: Vec::new(),
                }),
            },
            TokenKind::LowerWord | TokenKind::Keyword | TokenKind::SingleQuoted => {
                Ok(TptpType::User(tok.lexeme))
            }
            TokenKind::UpperWord => Err(ParseError::unsupported(tok.pos, "type variables")),
            _ => {
                self.idx -= 1;
                Err(self.error_expected("expected a type", &["$i", "$o", "<type name>"]))
            }
        }
    }

    fn tff_type(&mut self) -> PResult<TptpType> {
        if self.peek_is("!>") {
            return Err(ParseError::unsupported(self.peek().pos, "polymorphic types"));
        }
        let args = if self.eat("(") {
            let mut args = vec![self.atomic_type()?];
            while self.eat("*") {
                args.push(self.atomic_type()?);
            }
            self.expect(")")?;
            args
        } else {
            vec![self.atomic_type()?]
        };
        if self.eat(">") {
            let result = self.atomic_type()?;
            if self.peek_is(">") {
                return Err(ParseError::unsupported(self.peek().pos, "curried (higher-order) types"));
            }
            Ok(TptpType::Mapping(args, Box::new(result)))
        } else if args.len() == 1 {
            Ok(args.into_iter().next().unwrap())
        } else {
            Err(self.error_expected("expected `>` after a product type", &[">"]))
        }
    }

    /// Curried `thf` types, flattened when every argument is atomic.
    fn thf_type(&mut self) -> PResult<TptpType> {
        let mut parts = vec![self.thf_type_unit()?];
        while self.eat(">") {
            parts.push(self.thf_type_unit()?);
        }
        let result = parts.pop().unwrap();
        if parts.is_empty() {
            return Ok(result);
        }
        if !result.is_atomic() || parts.iter().any(|t| !t.is_atomic()) {
            return Err(self.error("higher-order type"));
        }
        Ok(TptpType::Mapping(parts, Box::new(result)))
    }

    fn thf_type_unit(&mut self) -> PResult<TptpType> {
        if self.eat("(") {
            let t = self.thf_type()?;
            self.expect(")")?;
            Ok(t)
        } else {
            self.atomic_type()
        }
    }

    // ---------------------------------------------------------------- logic specifications

    fn logic_specification(&mut self) -> PResult<LogicSpecification> {
        let tok = self.bump();
        if !matches!(tok.kind, TokenKind::DefinedWord | TokenKind::SystemWord) {
            self.idx -= 1;
            return Err(self.error_expected("expected a logic name", &["$modal", "<$-word>"]));
        }
        self.expect("==")?;
        self.expect("[")?;
        let mut properties = Vec::new();
        if !self.peek_is("]") {
            loop {
                let key = self.bump();
                if !matches!(key.kind, TokenKind::DefinedWord | TokenKind::SystemWord) {
                    self.idx -= 1;
                    return Err(self.error_expected("expected a property name", &["$domains", "<$-word>"]));
                }
                self.expect("==")?;
                let value = self.spec_value()?;
                properties.push(SpecProperty { name: key.lexeme, value });
                if !self.eat(",") {
                    break;
                }
            }
        }
        self.expect("]")?;
        Ok(LogicSpecification { logic: tok.lexeme, properties })
    }

    fn spec_value(&mut self) -> PResult<SpecValue> {
        if self.eat("[") {
            let mut entries = Vec::new();
            if !self.peek_is("]") {
                loop {
                    entries.push(self.spec_entry()?);
                    if !self.eat(",") {
                        break;
                    }
                }
            }
            self.expect("]")?;
            Ok(SpecValue::List(entries))
        } else {
            let pos = self.peek().pos;
            let t = self.term()?;
            if self.peek_is("==") {
                return Err(ParseError {
                    pos,
                    message: "key-value pair outside a list".into(),
                    expected: vec!["[".into()],
                });
            }
            Ok(SpecValue::Term(t))
        }
    }

    fn spec_entry(&mut self) -> PResult<SpecEntry> {
        if self.peek_is("{") {
            let connective = self.connective()?;
            self.expect("==")?;
            let value = self.spec_value()?;
            return Ok(SpecEntry::Keyed { key: SpecKey::Connective(connective), value });
        }
        if self.peek_is("[") {
            return Ok(SpecEntry::Value(self.spec_value()?));
        }
        let t = self.term()?;
        if self.eat("==") {
            let key = match t {
                Term::Defined(s) => s,
                Term::Function { symbol, args } if args.is_empty() => symbol,
                _ => return Err(self.error("expected a constant key")),
            };
            let value = self.spec_value()?;
            return Ok(SpecEntry::Keyed { key: SpecKey::Symbol(key), value });
        }
        Ok(SpecEntry::Value(SpecValue::Term(t)))
    }

    // ---------------------------------------------------------------- formulae

    fn logic_formula(&mut self) -> PResult<Formula> {
        let first = self.unit_formula()?;
        let op = self.peek().clone();
        if op.kind != TokenKind::Connective {
            return Ok(first);
        }
        match op.lexeme.as_str() {
            "&" | "|" => {
                let mut items = vec![first];
                while self.eat(&op.lexeme) {
                    items.push(self.unit_formula()?);
                }
                if op.lexeme == "&" {
                    Ok(Formula::And(items))
                } else {
                    Ok(Formula::Or(items))
                }
            }
            "=>" | "<=" | "<=>" | "<~>" | "~|" | "~&" => {
                self.bump();
                let rhs = self.unit_formula()?;
                let (a, b) = (Box::new(first), Box::new(rhs));
                Ok(match op.lexeme.as_str() {
                    "=>" => Formula::Implies(a, b),
                    "<=" => Formula::ReverseImplies(a, b),
                    "<=>" => Formula::Iff(a, b),
                    "<~>" => Formula::Xor(a, b),
                    "~|" => Formula::not(Formula::Or(vec![*a, *b])),
                    _ => Formula::not(Formula::And(vec![*a, *b])),
                })
            }
            _ => Ok(first),
        }
    }

    fn unit_formula(&mut self) -> PResult<Formula> {
        let tok = self.peek().clone();
        match tok.kind {
            TokenKind::Connective => match tok.lexeme.as_str() {
                "~" => {
                    self.bump();
                    Ok(Formula::not(self.unit_formula()?))
                }
                "!" | "?" => self.quantified(),
                "[.]" => {
                    self.bump();
                    Ok(Formula::box_(self.unit_formula()?))
                }
                "<.>" => {
                    self.bump();
                    Ok(Formula::dia(self.unit_formula()?))
                }
                "!>" | "?*" | "@+" | "@-" | "^" => {
                    Err(ParseError::unsupported(tok.pos, &format!("`{}`", tok.lexeme)))
                }
                _ => Err(self.error("expected a formula")),
            },
            TokenKind::Punct => match tok.lexeme.as_str() {
                "(" => {
                    self.bump();
                    let f = self.logic_formula()?;
                    self.expect(")")?;
                    Ok(f)
                }
                "{" => self.nc_application(),
                "[" => Err(ParseError::unsupported(tok.pos, "tuples")),
                _ => Err(self.error_expected(
                    "expected a formula",
                    &["(", "~", "!", "?", "{", "[.]", "<.>", "<atom>"],
                )),
            },
            TokenKind::DefinedWord if tok.lexeme == "$true" || tok.lexeme == "$false" => {
                self.bump();
                Ok(if tok.lexeme == "$true" { Formula::True } else { Formula::False })
            }
            TokenKind::DefinedWord if tok.lexeme == "$in_world" && self.peek_at(1).is("(") => {
                self.bump();
                self.bump();
                let world = self.term()?;
                self.expect(",")?;
                let body = self.logic_formula()?;
                self.expect(")")?;
                Ok(Formula::InWorld { world, body: Box::new(body) })
            }
            _ => self.atomic_formula(),
        }
    }

    fn atomic_formula(&mut self) -> PResult<Formula> {
        let pos = self.peek().pos;
        let lhs = if self.thf { self.thf_term()? } else { self.term()? };
        if self.peek_is("=") || self.peek_is("!=") {
            let eq = self.bump().lexeme == "=";
            let rhs = if self.thf { self.thf_term()? } else { self.term()? };
            return Ok(if eq { Formula::Equality(lhs, rhs) } else { Formula::Inequality(lhs, rhs) });
        }
        match lhs {
            Term::Function { symbol, args } => Ok(Formula::Atom { predicate: symbol, args }),
            Term::Defined(name) => Ok(Formula::Atom { predicate: name, args: Vec::new() }),
            Term::Variable(_) => Err(ParseError::unsupported(pos, "Boolean variables as formulae")),
            Term::Integer(_) => Err(ParseError { pos, message: "a number is not a formula".into(), expected: Vec::new() }),
        }
    }

    fn quantified(&mut self) -> PResult<Formula> {
        let q = self.bump();
        self.expect("[")?;
        let mut vars = Vec::new();
        loop {
            let v = self.bump();
            if v.kind != TokenKind::UpperWord {
                self.idx -= 1;
                return Err(self.error_expected("expected a variable", &["<Variable>"]));
            }
            let ty = if self.eat(":") {
                let t = if self.thf { self.thf_type()? } else { self.atomic_type()? };
                if !t.is_atomic() {
                    return Err(self.error("higher-order variable type"));
                }
                Some(t)
            } else {
                None
            };
            vars.push(TypedVariable { name: v.lexeme, ty });
            if !self.eat(",") {
                break;
            }
        }
        self.expect("]")?;
        // The colon is mandatory in the grammar; a missing colon before a
        // parenthesised body is accepted.
        if !self.eat(":") && !self.peek_is("(") {
            return Err(self.error_expected("expected `:` after the variable list", &[":"]));
        }
        let body = Box::new(self.unit_formula()?);
        Ok(if q.lexeme == "!" { Formula::Forall(vars, body) } else { Formula::Exists(vars, body) })
    }

    fn connective(&mut self) -> PResult<NcConnective> {
        self.expect("{")?;
        let name = self.bump();
        if !matches!(name.kind, TokenKind::DefinedWord | TokenKind::SystemWord) {
            self.idx -= 1;
            return Err(self.error_expected("expected a connective name", &["<$-word>", "<$$-word>"]));
        }
        let mut connective = NcConnective::simple(name.lexeme);
        if self.eat("(") {
            let mut first = true;
            loop {
                let tok = self.peek().clone();
                if first && tok.kind == TokenKind::HashWord {
                    self.bump();
                    connective.index = Some(tok.lexeme);
                } else {
                    let key = self.bump();
                    if !matches!(
                        key.kind,
                        TokenKind::LowerWord | TokenKind::Keyword | TokenKind::DefinedWord | TokenKind::SystemWord
                    ) {
                        self.idx -= 1;
                        return Err(self.error_expected("expected a parameter", &["#index", "key := value"]));
                    }
                    if tok.kind == TokenKind::HashWord {
                        return Err(ParseError {
                            pos: tok.pos,
                            message: "the index must be the first parameter".into(),
                            expected: Vec::new(),
                        });
                    }
                    self.expect(":=")?;
                    let value = self.param_value()?;
                    if connective.params.iter().any(|(k, _)| *k == key.lexeme) {
                        return Err(ParseError {
                            pos: key.pos,
                            message: format!("duplicate parameter `{}`", key.lexeme),
                            expected: Vec::new(),
                        });
                    }
                    connective.params.push((key.lexeme, value));
                }
                first = false;
                if !self.eat(",") {
                    break;
                }
            }
            self.expect(")")?;
        }
        self.expect("}")?;
        Ok(connective)
    }

    fn param_value(&mut self) -> PResult<ParamValue> {
        if self.eat("[") {
            let mut items = Vec::new();
            if !self.peek_is("]") {
                loop {
                    items.push(self.param_value()?);
                    if !self.eat(",") {
                        break;
                    }
                }
            }
            self.expect("]")?;
            return Ok(ParamValue::List(items));
        }
        let start = self.idx;
        if let Ok(t) = self.term() {
            if self.peek_is(",") || self.peek_is(")") || self.peek_is("]") {
                return Ok(ParamValue::Term(t));
            }
        }
        self.idx = start;
        Ok(ParamValue::Formula(self.logic_formula()?))
    }

    fn nc_application(&mut self) -> PResult<Formula> {
        let connective = self.connective()?;
        self.expect("@")?;
        let mut args = Vec::new();
        if self.thf {
            args.push(self.unit_formula()?);
            while self.eat("@") {
                args.push(self.unit_formula()?);
            }
        } else if self.eat("(") {
            loop {
                args.push(self.logic_formula()?);
                if !self.eat(",") {
                    break;
                }
            }
            self.expect(")")?;
        } else {
            args.push(self.unit_formula()?);
        }
        Ok(Formula::NonClassical { connective, args })
    }

    // ---------------------------------------------------------------- terms

    fn term(&mut self) -> PResult<Term> {
        let tok = self.bump();
        match tok.kind {
            TokenKind::UpperWord => Ok(Term::Variable(tok.lexeme)),
            TokenKind::Integer => Ok(Term::Integer(tok.lexeme)),
            TokenKind::LowerWord | TokenKind::Keyword | TokenKind::SingleQuoted | TokenKind::SystemWord => {
                let args = self.term_args()?;
                Ok(Term::Function { symbol: tok.lexeme, args })
            }
            TokenKind::DefinedWord => {
                if self.peek_is("(") {
                    if matches!(tok.lexeme.as_str(), "$ite" | "$let") {
                        return Err(ParseError::unsupported(tok.pos, &format!("`{}`", tok.lexeme)));
                    }
                    let args = self.term_args()?;
                    Ok(Term::Function { symbol: tok.lexeme, args })
                } else {
                    Ok(Term::Defined(tok.lexeme))
                }
            }
            TokenKind::Punct if tok.lexeme == "[" => Err(ParseError::unsupported(tok.pos, "tuples")),
            _ => {
                self.idx -= 1;
                Err(self.error_expected("expected a term", &["<Variable>", "<constant>", "<function>"]))
            }
        }
    }

    fn term_args(&mut self) -> PResult<Vec<Term>> {
        let mut args = Vec::new();
        if self.eat("(") {
            loop {
                args.push(self.term()?);
                if !self.eat(",") {
                    break;
                }
            }
            self.expect(")")?;
        }
        Ok(args)
    }

    /// `head @ arg @ ...` with a symbol head, read as `head(arg, ...)`.
    fn thf_term(&mut self) -> PResult<Term> {
        let tok = self.bump();
        let head = match tok.kind {
            TokenKind::UpperWord => {
                if self.peek_is("@") {
                    return Err(self.error("applied variable"));
                }
                return Ok(Term::Variable(tok.lexeme));
            }
            TokenKind::Integer => return Ok(Term::Integer(tok.lexeme)),
            TokenKind::LowerWord | TokenKind::Keyword | TokenKind::SingleQuoted | TokenKind::SystemWord => tok.lexeme,
            TokenKind::DefinedWord => {
                if !self.peek_is("@") {
                    return Ok(Term::Defined(tok.lexeme));
                }
                tok.lexeme
            }
            _ => {
                self.idx -= 1;
                return Err(self.error("expected a term"));
            }
        };
        let mut args = Vec::new();
        while self.eat("@") {
            args.push(self.thf_argument()?);
        }
        Ok(Term::Function { symbol: head, args })
    }

    fn thf_argument(&mut self) -> PResult<Term> {
        if self.eat("(") {
            let t = self.thf_term()?;
            self.expect(")")?;
            return Ok(t);
        }
        let tok = self.bump();
        match tok.kind {
            TokenKind::UpperWord => Ok(Term::Variable(tok.lexeme)),
            TokenKind::Integer => Ok(Term::Integer(tok.lexeme)),
            TokenKind::LowerWord | TokenKind::Keyword | TokenKind::SingleQuoted | TokenKind::SystemWord => {
                Ok(Term::constant(tok.lexeme))
            }
            TokenKind::DefinedWord => Ok(Term::Defined(tok.lexeme)),
            _ => {
                self.idx -= 1;
                Err(self.error("expected an argument"))
            }
        }
    }
}
