use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::Result;
use crate::parse::parse_equation;
use crate::term::{Substitution, Term};

/// `lhs = rhs` over possibly open terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Equation {
        Equation { lhs, rhs }
    }

    pub fn parse(src: &str) -> Result<Equation> {
        let (lhs, rhs) = parse_equation(src)?;
        Ok(Equation { lhs, rhs })
    }

    pub fn vars(&self) -> BTreeSet<Arc<str>> {
        let mut v = self.lhs.vars();
        v.extend(self.rhs.vars());
        v
    }

    pub fn is_closed(&self) -> bool {
        self.lhs.is_closed() && self.rhs.is_closed()
    }

    pub fn symmetric(&self) -> Equation {
        Equation { lhs: self.rhs.clone(), rhs: self.lhs.clone() }
    }

    pub fn apply(&self, s: &Substitution) -> Equation {
        Equation { lhs: s.apply(&self.lhs), rhs: s.apply(&self.rhs) }
    }

    /// Both sides put in AC-canonical form.
    pub fn canon(&self) -> Equation {
        Equation { lhs: self.lhs.canon(), rhs: self.rhs.canon() }
    }

    pub fn ac_eq(&self, other: &Equation) -> bool {
        self.lhs.ac_eq(&other.lhs) && self.rhs.ac_eq(&other.rhs)
    }

    pub fn size(&self) -> usize {
        self.lhs.size().max(self.rhs.size())
    }

    pub fn map(&self, f: impl Fn(&Term) -> Term) -> Equation {
        Equation { lhs: f(&self.lhs), rhs: f(&self.rhs) }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}
