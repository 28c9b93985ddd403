//! Propositional modal evaluation over finite frames and first-order frame
//! conditions, stated directly from their textbook definitions.

use ntf_core::logic::FrameCondition;
use ntf_core::syntax::Formula;

/// A frame on worlds `0..n` with `r[a][b]` meaning `a` sees `b`.
pub struct Frame {
    pub n: usize,
    pub r: Vec<Vec<bool>>,
}

impl Frame {
    /// The frame whose edges are the set bits of `bits` (bit `a * n + b`).
    pub fn from_bits(n: usize, bits: u32) -> Self {
        let r = (0..n).map(|a| (0..n).map(|b| bits >> (a * n + b) & 1 == 1).collect()).collect();
        Frame { n, r }
    }

    fn sees(&self, a: usize, b: usize) -> bool {
        self.r[a][b]
    }

    pub fn satisfies(&self, c: FrameCondition) -> bool {
        let w = 0..self.n;
        let all = |f: &dyn Fn(usize) -> bool| (0..self.n).all(f);
        let any = |f: &dyn Fn(usize) -> bool| (0..self.n).any(f);
        match c {
            FrameCondition::Reflexive => w.clone().all(|a| self.sees(a, a)),
            FrameCondition::Symmetric => all(&|a| all(&|b| !self.sees(a, b) || self.sees(b, a))),
            FrameCondition::Serial => all(&|a| any(&|b| self.sees(a, b))),
            FrameCondition::Transitive => {
                all(&|a| all(&|b| all(&|c| !(self.sees(a, b) && self.sees(b, c)) || self.sees(a, c))))
            }
            FrameCondition::Euclidean => {
                all(&|a| all(&|b| all(&|c| !(self.sees(a, b) && self.sees(a, c)) || self.sees(b, c))))
            }
            FrameCondition::Functional => all(&|a| all(&|b| all(&|c| !(self.sees(a, b) && self.sees(a, c)) || b == c))),
            FrameCondition::ShiftReflexive => all(&|a| all(&|b| !self.sees(a, b) || self.sees(b, b))),
            FrameCondition::Dense => all(&|a| all(&|b| !self.sees(a, b) || any(&|c| self.sees(a, c) && self.sees(c, b)))),
            FrameCondition::Confluent => all(&|a| {
                all(&|b| {
                    all(&|c| !(self.sees(a, b) && self.sees(a, c)) || any(&|d| self.sees(b, d) && self.sees(c, d)))
                })
            }),
        }
    }

    /// Truth of a propositional modal formula at `w`; `val(atom, world)`
    /// interprets the atoms.
    pub fn holds(&self, f: &Formula, w: usize, val: &dyn Fn(&str, usize) -> bool) -> bool {
        match f {
            Formula::True => true,
            Formula::False => false,
            Formula::Atom { predicate, args } if args.is_empty() => val(predicate, w),
            Formula::Not(a) => !self.holds(a, w, val),
            Formula::And(xs) => xs.iter().all(|x| self.holds(x, w, val)),
            Formula::Or(xs) => xs.iter().any(|x| self.holds(x, w, val)),
            Formula::Implies(a, b) => !self.holds(a, w, val) || self.holds(b, w, val),
            Formula::Iff(a, b) => self.holds(a, w, val) == self.holds(b, w, val),
            Formula::NonClassical { connective, args } => {
                let succ = (0..self.n).filter(|&v| self.sees(w, v));
                match connective.name.as_str() {
                    "$box" => succ.clone().all(|v| self.holds(&args[0], v, val)),
                    "$dia" => succ.clone().any(|v| self.holds(&args[0], v, val)),
                    other => panic!("unexpected connective {other}"),
                }
            }
            other => panic!("not propositional modal: {other:?}"),
        }
    }
}

/// The atoms of a propositional formula, in first-occurrence order.
pub fn atoms(f: &Formula) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    f.visit(&mut |g| {
        if let Formula::Atom { predicate, .. } = g {
            if !out.contains(predicate) {
                out.push(predicate.clone());
            }
        }
    });
    out
}

/// Whether `f` is true at every world of the frame under every valuation of
/// its atoms.
pub fn valid_on(frame: &Frame, f: &Formula) -> bool {
    let names = atoms(f);
    let bits = names.len() * frame.n;
    (0u64..1 << bits).all(|v| {
        let val = |atom: &str, w: usize| {
            let i = names.iter().position(|a| a == atom).unwrap();
            v >> (i * frame.n + w) & 1 == 1
        };
        (0..frame.n).all(|w| frame.holds(f, w, &val))
    })
}
