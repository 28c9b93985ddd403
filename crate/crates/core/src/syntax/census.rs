//! Syntactic statistics of a problem.

use std::collections::BTreeMap;
use std::fmt;

use super::ast::*;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SyntaxStatistics {
    pub formulas: usize,
    /// Keyed by the role's base name.
    pub by_role: BTreeMap<&'static str, usize>,
    pub type_declarations: usize,
    pub user_types: usize,
    pub nonclassical_nonindexed: usize,
    pub nonclassical_indexed: usize,
    pub equalities: usize,
    pub quantifiers: usize,
}

impl SyntaxStatistics {
    pub fn nonclassical_total(&self) -> usize {
        self.nonclassical_nonindexed + self.nonclassical_indexed
    }

    pub fn role(&self, base: RoleBase) -> usize {
        self.by_role.get(base.as_str()).copied().unwrap_or(0)
    }
}

pub fn census(p: &Problem) -> SyntaxStatistics {
    let mut st = SyntaxStatistics { formulas: p.statements.len(), ..Default::default() };
    for s in &p.statements {
        *st.by_role.entry(s.role.base.as_str()).or_default() += 1;
        match &s.body {
            Statement::Type(d) => {
                st.type_declarations += 1;
                if d.ty == DeclaredType::Sort {
                    st.user_types += 1;
                }
            }
            Statement::Formula(f) => f.visit(&mut |g| match g {
                Formula::NonClassical { connective, .. } => {
                    if connective.index.is_some() {
                        st.nonclassical_indexed += 1;
                    } else {
                        st.nonclassical_nonindexed += 1;
                    }
                }
                Formula::Equality(..) | Formula::Inequality(..) => st.equalities += 1,
                Formula::Forall(..) | Formula::Exists(..) => st.quantifiers += 1,
                _ => {}
            }),
            Statement::Logic(_) | Statement::Raw(_) => {}
        }
    }
    st
}

impl fmt::Display for SyntaxStatistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "formulae: {}", self.formulas)?;
        for (role, n) in &self.by_role {
            writeln!(f, "role {role}: {n}")?;
        }
        writeln!(f, "type declarations: {}", self.type_declarations)?;
        writeln!(f, "user types: {}", self.user_types)?;
        writeln!(f, "nonclassical: {} {{.}}; {} {{#}}", self.nonclassical_nonindexed, self.nonclassical_indexed)?;
        writeln!(f, "equalities: {}", self.equalities)?;
        write!(f, "quantifiers: {}", self.quantifiers)
    }
}
