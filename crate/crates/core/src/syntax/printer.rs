//! Canonical TPTP rendering.
//!
//! Output is deterministic and re-parses to a structurally equal problem.
//! Binary formulae are parenthesised whenever they are operands, short forms
//! print as `{$box} @ (φ)`, and `thf` statements print in `@`-application
//! style.

use std::fmt::Write;

use super::ast::*;

pub fn print_problem(p: &Problem) -> String {
    let mut out = String::new();
    for inc in &p.includes {
        out.push_str(&print_include(inc));
        out.push('\n');
    }
    if !p.includes.is_empty() && !p.statements.is_empty() {
        out.push('\n');
    }
    for (i, s) in p.statements.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&print_statement(s));
        out.push('\n');
    }
    out
}

pub fn print_include(inc: &Include) -> String {
    match &inc.selection {
        None => format!("include({}).", inc.file),
        Some(names) => format!("include({},[{}]).", inc.file, names.join(",")),
    }
}

pub fn print_statement(s: &AnnotatedFormula) -> String {
    let thf = s.language == Language::Thf;
    let body = match &s.body {
        Statement::Formula(f) => print_formula_in(f, thf),
        Statement::Type(d) => print_type_declaration(d, thf),
        Statement::Logic(spec) => print_logic_specification(spec),
        Statement::Raw(tokens) => tokens.join(" "),
    };
    let mut out = format!("{}({},{},\n    {}", s.language.as_str(), s.name, s.role, body);
    if let Some(src) = &s.source {
        let _ = write!(out, ",\n    {}", print_general_term(src));
        if let Some(info) = &s.useful_info {
            let _ = write!(out, ",\n    {}", print_general_term(info));
        }
    }
    out.push_str(" ).");
    out
}

/// Renders a formula in `tff` syntax.
pub fn print_formula(f: &Formula) -> String {
    print_formula_in(f, false)
}

pub fn print_formula_in(f: &Formula, thf: bool) -> String {
    let mut out = String::new();
    Printer { thf }.formula(f, &mut out);
    out
}

pub fn print_term(t: &Term) -> String {
    let mut out = String::new();
    Printer { thf: false }.term(t, &mut out);
    out
}

pub fn print_type(t: &TptpType) -> String {
    print_type_in(t, false)
}

fn print_type_in(t: &TptpType, thf: bool) -> String {
    match t {
        TptpType::Individual => "$i".into(),
        TptpType::Bool => "$o".into(),
        TptpType::World => "$world".into(),
        TptpType::Int => "$int".into(),
        TptpType::User(name) => name.clone(),
        TptpType::Mapping(args, result) => {
            let args: Vec<String> = args.iter().map(|a| print_type_in(a, thf)).collect();
            let result = print_type_in(result, thf);
            if thf {
                format!("{} > {}", args.join(" > "), result)
            } else if args.len() == 1 {
                format!("{} > {}", args[0], result)
            } else {
                format!("( {} ) > {}", args.join(" * "), result)
            }
        }
    }
}

pub fn print_type_declaration(d: &TypeDeclaration, thf: bool) -> String {
    match &d.ty {
        DeclaredType::Sort => format!("{}: $tType", d.symbol),
        DeclaredType::Type(t) => format!("{}: {}", d.symbol, print_type_in(t, thf)),
    }
}

pub fn print_logic_specification(spec: &LogicSpecification) -> String {
    let props: Vec<String> =
        spec.properties.iter().map(|p| format!("{} == {}", p.name, print_spec_value(&p.value))).collect();
    format!("{} == [ {} ]", spec.logic, props.join(", "))
}

fn print_spec_value(v: &SpecValue) -> String {
    match v {
        SpecValue::Term(t) => print_term(t),
        SpecValue::List(entries) => {
            let items: Vec<String> = entries
                .iter()
                .map(|e| match e {
                    SpecEntry::Value(v) => print_spec_value(v),
                    SpecEntry::Keyed { key, value } => {
                        let key = match key {
                            SpecKey::Symbol(s) => s.clone(),
                            SpecKey::Connective(c) => print_connective(c),
                        };
                        format!("{} == {}", key, print_spec_value(value))
                    }
                })
                .collect();
            format!("[{}]", items.join(", "))
        }
    }
}

pub fn print_connective(c: &NcConnective) -> String {
    let mut out = String::new();
    Printer { thf: false }.connective(c, &mut out);
    out
}

pub fn print_general_term(t: &GeneralTerm) -> String {
    match t {
        GeneralTerm::Word(w) | GeneralTerm::Variable(w) | GeneralTerm::Integer(w) => w.clone(),
        GeneralTerm::App(f, args) => {
            let args: Vec<String> = args.iter().map(print_general_term).collect();
            format!("{}({})", f, args.join(","))
        }
        GeneralTerm::List(items) => {
            let items: Vec<String> = items.iter().map(print_general_term).collect();
            format!("[{}]", items.join(","))
        }
        GeneralTerm::Colon(a, b) => format!("{}:{}", print_general_term(a), print_general_term(b)),
    }
}

struct Printer {
    thf: bool,
}

fn is_binary(f: &Formula) -> bool {
    matches!(
        f,
        Formula::And(_)
            | Formula::Or(_)
            | Formula::Implies(..)
            | Formula::ReverseImplies(..)
            | Formula::Iff(..)
            | Formula::Xor(..)
    )
}

impl Printer {
    fn formula(&self, f: &Formula, out: &mut String) {
        match f {
            Formula::Atom { predicate, args } => {
                if self.thf {
                    out.push_str(predicate);
                    for a in args {
                        out.push_str(" @ ");
                        self.thf_argument(a, out);
                    }
                } else {
                    self.application(predicate, args, out);
                }
            }
            Formula::Equality(a, b) | Formula::Inequality(a, b) => {
                self.term(a, out);
                out.push_str(if matches!(f, Formula::Equality(..)) { " = " } else { " != " });
                self.term(b, out);
            }
            Formula::Not(a) => {
                out.push_str("~ ");
                self.operand(a, out);
            }
            Formula::And(xs) | Formula::Or(xs) => {
                let op = if matches!(f, Formula::And(_)) { " & " } else { " | " };
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        out.push_str(op);
                    }
                    self.operand(x, out);
                }
            }
            Formula::Implies(a, b)
            | Formula::ReverseImplies(a, b)
            | Formula::Iff(a, b)
            | Formula::Xor(a, b) => {
                let op = match f {
                    Formula::Implies(..) => " => ",
                    Formula::ReverseImplies(..) => " <= ",
                    Formula::Iff(..) => " <=> ",
                    _ => " <~> ",
                };
                self.operand(a, out);
                out.push_str(op);
                self.operand(b, out);
            }
            Formula::Forall(vars, body) | Formula::Exists(vars, body) => {
                out.push_str(if matches!(f, Formula::Forall(..)) { "! [" } else { "? [" });
                for (i, v) in vars.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push_str(&v.name);
                    if let Some(ty) = &v.ty {
                        out.push_str(": ");
                        out.push_str(&print_type_in(ty, self.thf));
                    }
                }
                out.push_str("] : ");
                self.operand(body, out);
            }
            Formula::True => out.push_str("$true"),
            Formula::False => out.push_str("$false"),
            Formula::NonClassical { connective, args } => {
                self.connective(connective, out);
                if self.thf {
                    for a in args {
                        out.push_str(" @ ( ");
                        self.formula(a, out);
                        out.push_str(" )");
                    }
                } else {
                    out.push_str(" @ ( ");
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            out.push_str(" , ");
                        }
                        self.formula(a, out);
                    }
                    out.push_str(" )");
                }
            }
            Formula::InWorld { world, body } => {
                out.push_str("$in_world(");
                self.term(world, out);
                out.push_str(", ");
                self.formula(body, out);
                out.push(')');
            }
        }
    }

    /// An operand of a connective: binary formulae and equations get parentheses.
    fn operand(&self, f: &Formula, out: &mut String) {
        if is_binary(f) || matches!(f, Formula::Equality(..) | Formula::Inequality(..)) {
            out.push_str("( ");
            self.formula(f, out);
            out.push_str(" )");
        } else {
            self.formula(f, out);
        }
    }

    fn connective(&self, c: &NcConnective, out: &mut String) {
        out.push('{');
        out.push_str(&c.name);
        if c.index.is_some() || !c.params.is_empty() {
            out.push('(');
            let mut first = true;
            if let Some(idx) = &c.index {
                out.push_str(idx);
                first = false;
            }
            for (k, v) in &c.params {
                if !first {
                    out.push_str(", ");
                }
                first = false;
                out.push_str(k);
                out.push_str(" := ");
                self.param(v, out);
            }
            out.push(')');
        }
        out.push('}');
    }

    fn param(&self, v: &ParamValue, out: &mut String) {
        match v {
            ParamValue::Term(t) => self.term(t, out),
            // Parenthesised so an atomic formula is not re-read as a term.
            ParamValue::Formula(f) => {
                out.push_str("( ");
                Printer { thf: false }.formula(f, out);
                out.push_str(" )");
            }
            ParamValue::List(items) => {
                out.push('[');
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    self.param(x, out);
                }
                out.push(']');
            }
        }
    }

    fn application(&self, symbol: &str, args: &[Term], out: &mut String) {
        out.push_str(symbol);
        if !args.is_empty() {
            out.push('(');
            for (i, a) in args.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                self.term(a, out);
            }
            out.push(')');
        }
    }

    fn term(&self, t: &Term, out: &mut String) {
        match t {
            Term::Variable(v) | Term::Defined(v) | Term::Integer(v) => out.push_str(v),
            Term::Function { symbol, args } => {
                if self.thf {
                    out.push_str(symbol);
                    for a in args {
                        out.push_str(" @ ");
                        self.thf_argument(a, out);
                    }
                } else {
                    self.application(symbol, args, out);
                }
            }
        }
    }

    fn thf_argument(&self, t: &Term, out: &mut String) {
        match t {
            Term::Function { args, .. } if !args.is_empty() => {
                out.push_str("( ");
                self.term(t, out);
                out.push_str(" )");
            }
            _ => self.term(t, out),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parser::{parse_formula, parse_problem};

    fn round_trip(src: &str) {
        let p = parse_problem(src).unwrap();
        let printed = print_problem(&p);
        let q = parse_problem(&printed).unwrap_or_else(|e| panic!("{e}\n{printed}"));
        assert_eq!(p, q, "{printed}");
    }

    #[test]
    fn empty_problem_prints_nothing() {
        assert_eq!(print_problem(&Problem::default()), "");
    }

    #[test]
    fn short_forms_print_long() {
        let f = parse_formula("[.] <.> p").unwrap();
        assert_eq!(print_formula(&f), "{$box} @ ( {$dia} @ ( p ) )");
    }

    #[test]
    fn nested_binaries_are_parenthesised() {
        let f = parse_formula("(a & b) | ~ (c => d)").unwrap();
        assert_eq!(print_formula(&f), "( a & b ) | ~ ( c => d )");
    }

    #[test]
    fn mixed_statements_round_trip() {
        round_trip(
            "include('a.ax').\n\
             tff(t,type,f: ( $i * person ) > $o).\n\
             tff(a,axiom-local,! [X: $i] : ? [Y] : ( f(X,Y) <~> X != Y ), file('x.p',a)).\n\
             tff(b,hypothesis,{$box(#1, k := [a,b], g := ( p ))} @ ( p , q )).\n\
             tff(c,logic,$modal == [$domains == $constant, $modalities == [$modal_system_K, {$box(#1)} == [$modal_axiom_K]]]).\n\
             thf(d,axiom,p @ a @ ( f @ b ),inference(r,[status(thm)],[a,b])).\n\
             thf(e,conjecture,? [F: $i > $o] : ( F @ a )).",
        );
    }

    #[test]
    fn thf_prints_applicatively() {
        let p = parse_problem("thf(a,axiom,{$box} @ p).").unwrap();
        assert!(print_problem(&p).contains("{$box} @ ( p )"));
        let p = parse_problem("thf(t,type,f: a > b > $o).").unwrap();
        assert!(print_problem(&p).contains("f: a > b > $o"));
    }
}
