//! A grammar-directed generator of NX0 problem text with varied layout:
//! comments, redundant parentheses, short and long modal forms, subroles,
//! logic specifications and annotations.

use rand::seq::SliceRandom;
use rand::Rng;

const PREDICATES: [&str; 4] = ["p", "q", "rel", "'quoted pred'"];
const FUNCTIONS: [&str; 3] = ["f", "g", "'Fun'"];
const CONSTANTS: [&str; 4] = ["a", "b", "'c d'", "e_1"];
const CONNECTIVES: [&str; 5] = ["$box", "$dia", "$knows", "$necessary", "$$custom"];
const SORTS: [&str; 3] = ["$i", "thing", "$o"];

pub struct Fuzzer<'r, R: Rng> {
    rng: &'r mut R,
}

impl<'r, R: Rng> Fuzzer<'r, R> {
    pub fn new(rng: &'r mut R) -> Self {
        Fuzzer { rng }
    }

    fn ws(&mut self) -> String {
        match self.rng.gen_range(0..10) {
            0 => "\n    ".into(),
            1 => "  ".into(),
            2 => " /* block */ ".into(),
            3 => "\n% line comment\n".into(),
            _ => " ".into(),
        }
    }

    fn pick(&mut self, xs: &[&str]) -> String {
        xs.choose(self.rng).unwrap().to_string()
    }

    fn term(&mut self, vars: &[String], depth: usize) -> String {
        if !vars.is_empty() && self.rng.gen_bool(0.4) {
            return vars.choose(self.rng).unwrap().clone();
        }
        if depth == 0 || self.rng.gen_bool(0.5) {
            return match self.rng.gen_range(0..8) {
                0 => self.rng.gen_range(0..100).to_string(),
                1 => "$local_world".into(),
                _ => self.pick(&CONSTANTS),
            };
        }
        let n = self.rng.gen_range(1..=2);
        let args: Vec<String> = (0..n).map(|_| self.term(vars, depth - 1)).collect();
        format!("{}({})", self.pick(&FUNCTIONS), args.join(","))
    }

    fn atom(&mut self, vars: &[String]) -> String {
        match self.rng.gen_range(0..10) {
            0 => "$true".into(),
            1 => "$false".into(),
            2 => format!("{} = {}", self.term(vars, 1), self.term(vars, 1)),
            3 => format!("{} != {}", self.term(vars, 1), self.term(vars, 1)),
            4 => self.pick(&PREDICATES),
            _ => {
                let n = self.rng.gen_range(1..=3);
                let args: Vec<String> = (0..n).map(|_| self.term(vars, 2)).collect();
                format!("{}({})", self.pick(&PREDICATES), args.join(","))
            }
        }
    }

    fn connective(&mut self) -> String {
        let name = self.pick(&CONNECTIVES);
        let mut params = Vec::new();
        if self.rng.gen_bool(0.3) {
            params.push(format!("#{}", self.pick(&["1", "2", "a", "alice"])));
        }
        if self.rng.gen_bool(0.15) {
            params.push(format!("k := {}", self.pick(&CONSTANTS)));
        }
        if params.is_empty() {
            format!("{{{name}}}")
        } else {
            format!("{{{name}({})}}", params.join(", "))
        }
    }

    /// A unit formula: safe to place after a unary or binary connective.
    fn unit(&mut self, vars: &mut Vec<String>, depth: usize) -> String {
        if depth == 0 {
            let a = self.atom(vars);
            return if a.contains('=') { format!("( {a} )") } else { a };
        }
        match self.rng.gen_range(0..9) {
            0 => format!("~{}{}", self.ws(), self.unit(vars, depth - 1)),
            1 | 2 => {
                let q = self.pick(&["!", "?"]);
                let n = self.rng.gen_range(1..=2);
                let start = vars.len();
                let mut decl = Vec::new();
                for _ in 0..n {
                    let v = format!("X{}", vars.len());
                    vars.push(v.clone());
                    decl.push(match self.rng.gen_range(0..3) {
                        0 => v,
                        1 => format!("{v}: $i"),
                        _ => format!("{v}: thing"),
                    });
                }
                let body = self.unit(vars, depth - 1);
                vars.truncate(start);
                format!("{q} [{}] :{}{body}", decl.join(","), self.ws())
            }
            3 => format!("[.] {}", self.unit(vars, depth - 1)),
            4 => format!("<.> {}", self.unit(vars, depth - 1)),
            5 => {
                let c = self.connective();
                let n = if c.contains("custom") { self.rng.gen_range(1..=2) } else { 1 };
                let args: Vec<String> = (0..n).map(|_| self.formula(vars, depth - 1)).collect();
                format!("{c} @ ({})", args.join(", "))
            }
            6 => format!("( {} )", self.formula(vars, depth - 1)),
            _ => self.atom(vars),
        }
    }

    pub fn formula(&mut self, vars: &mut Vec<String>, depth: usize) -> String {
        match self.rng.gen_range(0..4) {
            0 if depth > 0 => {
                let op = self.pick(&["&", "|"]);
                let n = self.rng.gen_range(2..=3);
                let items: Vec<String> = (0..n).map(|_| self.unit(vars, depth - 1)).collect();
                let sep = format!("{}{op} ", self.ws());
                items.join(&sep)
            }
            1 if depth > 0 => {
                let op = self.pick(&["=>", "<=", "<=>", "<~>", "~|", "~&"]);
                let a = self.unit(vars, depth - 1);
                let b = self.unit(vars, depth - 1);
                format!("{a} {op}{}{b}", self.ws())
            }
            _ => self.unit(vars, depth),
        }
    }

    fn type_decl(&mut self, i: usize) -> String {
        let body = match self.rng.gen_range(0..4) {
            0 => "thing: $tType".to_string(),
            1 => format!("{}: {}", self.pick(&CONSTANTS), self.pick(&SORTS[..2])),
            2 => format!("{}: {} > {}", self.pick(&FUNCTIONS), self.pick(&SORTS[..2]), self.pick(&SORTS)),
            _ => format!("{}: ( $i * thing ) > $o", self.pick(&PREDICATES)),
        };
        format!("tff(decl_{i},type,{}{body}).", self.ws())
    }

    fn logic_spec(&mut self) -> String {
        let family = self.pick(&["$modal", "$alethic_modal", "$epistemic_modal", "$deontic_modal"]);
        let mut props = vec![
            format!("$domains == {}", self.pick(&["$constant", "$varying", "$cumulative", "$decreasing"])),
            format!("$designation == {}", self.pick(&["$rigid", "$flexible"])),
            format!("$terms == {}", self.pick(&["$global", "$local"])),
        ];
        let modalities = match self.rng.gen_range(0..3) {
            0 => self.pick(&["$modal_system_K", "$modal_system_S5", "$modal_system_D45"]),
            1 => "[$modal_axiom_K, $modal_axiom_M]".to_string(),
            _ => "[$modal_system_K, {$box(#1)} == $modal_system_S5, {$dia(#2)} == [$modal_axiom_D]]".to_string(),
        };
        props.push(format!("$modalities == {modalities}"));
        props.shuffle(self.rng);
        format!("tff(spec,logic,{family} ==\n    [ {} ] ).", props.join(",\n      "))
    }

    fn annotation(&mut self) -> String {
        match self.rng.gen_range(0..5) {
            0 => ",file('source.p',orig)".into(),
            1 => ",inference(rule,[status(thm)],[s1,inference(inner,[],[s2])])".into(),
            2 => ",introduced(definition),[useful,info(1)]".into(),
            _ => String::new(),
        }
    }

    /// A problem of a few statements.
    pub fn problem(&mut self) -> String {
        let mut out = Vec::new();
        if self.rng.gen_bool(0.2) {
            out.push("include('Axioms/AX001.ax').".to_string());
        }
        if self.rng.gen_bool(0.5) {
            out.push(self.logic_spec());
        }
        for i in 0..self.rng.gen_range(1..=6) {
            let stmt = if self.rng.gen_bool(0.2) {
                self.type_decl(i)
            } else {
                let role = self.pick(&[
                    "axiom",
                    "hypothesis",
                    "conjecture",
                    "negated_conjecture",
                    "plain",
                    "lemma",
                    "axiom-local",
                    "hypothesis-global",
                ]);
                let depth = self.rng.gen_range(0..=4);
                let f = self.formula(&mut Vec::new(), depth);
                let ann = self.annotation();
                format!("tff(s{i},{role},{}{f}{ann}).", self.ws())
            };
            out.push(stmt);
        }
        out.join("\n\n")
    }
}
