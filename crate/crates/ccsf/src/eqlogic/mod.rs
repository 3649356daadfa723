//! Axiom systems, equational proofs and bounded proof search.

pub mod matching;
pub mod proof;
pub mod search;
pub mod table;

pub use proof::{check_proof, hat_proof, Proof, ProofError, Rule};
pub use search::{bounded_derivable, Limits, SearchOutcome};

use std::collections::BTreeSet;

use serde::Serialize;

use crate::equation::Equation;
use crate::error::{Error, Result};
use crate::parse::relocate;
use crate::rules::RuleSet;
use crate::semantics::enumerate::SyncTreeEnumerator;
use crate::semantics::sound::{sound_in, SoundVerdict};
use crate::semantics::store::Store;
use crate::term::{Substitution, Term};

/// A named, ordered list of axioms. Names default to `E<line>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomSystem {
    pub name: String,
    axioms: Vec<(String, Equation)>,
}

impl AxiomSystem {
    pub fn new(name: &str, axioms: Vec<(String, Equation)>) -> AxiomSystem {
        AxiomSystem { name: name.to_string(), axioms }
    }

    pub fn empty(name: &str) -> AxiomSystem {
        AxiomSystem::new(name, Vec::new())
    }

    /// One equation per line, optionally prefixed by `Label:`; `#` starts a
    /// comment line. Errors carry the line and column in `src`.
    pub fn parse(name: &str, src: &str) -> Result<AxiomSystem> {
        let mut axioms = Vec::new();
        for (i, raw) in src.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let lead = raw.len() - trimmed.len();
            let (label, body, offset) = match trimmed.split_once(':') {
                Some((l, rest)) => {
                    let l = l.trim();
                    let ok = l.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                        && l.chars().all(|c| c.is_ascii_alphanumeric() || "_-.'~/[]".contains(c));
                    if !ok {
                        return Err(Error::Parse {
                            line,
                            column: lead + 1,
                            message: format!("invalid axiom label `{l}`"),
                        });
                    }
                    (l.to_string(), rest, lead + trimmed.len() - rest.len())
                }
                None => (format!("E{line}"), trimmed, lead),
            };
            let eq = Equation::parse(body).map_err(|e| relocate(e, line, offset))?;
            axioms.push((label, eq));
        }
        Ok(AxiomSystem::new(name, axioms))
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Equation> {
        self.axioms.get(i).map(|(_, e)| e)
    }

    pub fn label(&self, i: usize) -> Option<&str> {
        self.axioms.get(i).map(|(n, _)| n.as_str())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.axioms.iter().position(|(n, _)| n == label)
    }

    pub fn axioms(&self) -> impl Iterator<Item = &Equation> {
        self.axioms.iter().map(|(_, e)| e)
    }

    pub fn named(&self) -> impl Iterator<Item = (&str, &Equation)> {
        self.axioms.iter().map(|(n, e)| (n.as_str(), e))
    }

    fn contains(&self, eq: &Equation) -> bool {
        self.axioms().any(|e| e.ac_eq(eq))
    }

    /// Appends the axioms of `other` not already present modulo AC.
    pub fn union(&self, other: &AxiomSystem) -> AxiomSystem {
        let mut out = self.clone();
        for (n, e) in &other.axioms {
            if !out.contains(e) {
                out.axioms.push((n.clone(), e.clone()));
            }
        }
        out
    }

    pub fn is_symmetry_closed(&self) -> bool {
        self.axioms().all(|e| self.contains(&e.symmetric()))
    }

    /// Adds `u = t` for every `t = u` lacking its counterpart.
    pub fn symmetric_closure(&self) -> AxiomSystem {
        let mut out = self.clone();
        for (n, e) in &self.axioms {
            let s = e.symmetric();
            if !out.contains(&s) {
                out.axioms.push((format!("{n}~"), s));
            }
        }
        out
    }

    /// `cl(E)`: adds `sigma(t)/0 = sigma(u)/0` for every axiom and every
    /// substitution mapping a subset of its variables to `0`. Duplicates
    /// modulo AC are dropped.
    pub fn cl(&self) -> Result<AxiomSystem> {
        if let Some((n, e)) = self.axioms.iter().find(|(_, e)| e.lhs.has_par() || e.rhs.has_par()) {
            return Err(Error::ParNotAllowed(format!("axiom {n}: {e}")));
        }
        let mut out = self.clone();
        for (n, e) in &self.axioms {
            let vars: Vec<_> = e.vars().into_iter().collect();
            for mask in 0u64..(1u64 << vars.len()) {
                let mut s = Substitution::new();
                for (j, x) in vars.iter().enumerate() {
                    if mask & (1 << j) != 0 {
                        s.insert_arc(x.clone(), Term::Nil);
                    }
                }
                let inst = e.apply(&s);
                let z = Equation::new(inst.lhs.strip_zero()?, inst.rhs.strip_zero()?);
                if !out.contains(&z) {
                    out.axioms.push((format!("{n}/0[{mask:b}]"), z));
                }
            }
        }
        Ok(out)
    }

    pub fn is_saturated(&self) -> Result<bool> {
        Ok(self.cl()?.len() == self.len())
    }

    /// The axioms with every `||` replaced by its expansion into `f`.
    pub fn hat(&self) -> AxiomSystem {
        let axioms = self.axioms.iter().map(|(n, e)| (n.clone(), e.map(Term::hat))).collect();
        AxiomSystem::new(&format!("{}^", self.name), axioms)
    }

    /// Swaps `a` and `a'` in every axiom.
    pub fn rename(&self) -> AxiomSystem {
        let axioms = self.axioms.iter().map(|(n, e)| (n.clone(), e.map(Term::rename))).collect();
        AxiomSystem::new(&self.name, axioms)
    }

    pub fn max_size(&self) -> usize {
        self.axioms().map(|e| e.lhs.size().max(e.rhs.size())).max().unwrap_or(0)
    }

    pub fn to_text(&self) -> String {
        self.axioms.iter().map(|(n, e)| format!("{n}: {e}\n")).collect()
    }

    pub fn canonical_set(&self) -> BTreeSet<Equation> {
        self.axioms().map(Equation::canon).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomVerdict {
    pub name: String,
    pub equation: Equation,
    pub verdict: SoundVerdict,
}

/// Bounded soundness of every axiom of `e` under `rs`.
pub fn sound_axioms(rs: &RuleSet, e: &AxiomSystem, enm: &SyncTreeEnumerator) -> Result<Vec<AxiomVerdict>> {
    let mut store = Store::new();
    let mut out = Vec::new();
    for (n, eq) in e.named() {
        let base = store.mark();
        let verdict = sound_in(&mut store, rs, eq, enm, u128::MAX)?;
        store.truncate(base);
        out.push(AxiomVerdict { name: n.to_string(), equation: eq.clone(), verdict });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::Action;
    use crate::rules::Sync;

    #[test]
    fn parse_labels_comments_and_errors() {
        let e = AxiomSystem::parse("t", "# c\nA1: x + x = x\n\n  y = y\n").unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.label(0), Some("A1"));
        assert_eq!(e.label(1), Some("E4"));
        match AxiomSystem::parse("t", "A1: x + x = x\nB: f(x, a'.(0 = 0\n") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 15)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn cl_of_commutativity() {
        let e = AxiomSystem::parse("c", "x + y = y + x").unwrap();
        let c = e.cl().unwrap();
        let expect: BTreeSet<Equation> = ["x + y = y + x", "y = y", "x = x", "0 = 0"]
            .into_iter()
            .map(|s| Equation::parse(s).unwrap().canon())
            .collect();
        assert_eq!(c.canonical_set(), expect);
        assert_eq!(AxiomSystem::empty("e").cl().unwrap().len(), 0);
        let par = AxiomSystem::parse("p", "x || y = y || x").unwrap();
        assert!(matches!(par.cl(), Err(Error::ParNotAllowed(_))));
    }

    #[test]
    fn cl_is_idempotent_on_the_shipped_files() {
        for (_, src) in table::FILES {
            let e = AxiomSystem::parse("f", src).unwrap().symmetric_closure();
            let c = e.cl().unwrap();
            assert!(c.is_symmetry_closed());
            assert_eq!(c.cl().unwrap().canonical_set(), c.canonical_set());
            assert!(c.is_saturated().unwrap());
        }
    }

    #[test]
    fn sound_axiom_examples() {
        let enm = SyncTreeEnumerator::new(2, 2);
        let labat = RuleSet::new(&Action::ALL, &[], &[Sync::AABar]);
        let f1 = AxiomSystem::parse("f1", "F1: f(0, x) = 0").unwrap();
        assert!(!sound_axioms(&labat, &f1, &enm).unwrap()[0].verdict.is_refuted());
        let r = RuleSet::new(&[Action::ABar, Action::Tau], &[Action::A], &[Sync::AABar]);
        match &sound_axioms(&r, &f1, &enm).unwrap()[0].verdict {
            SoundVerdict::Refuted { substitution, .. } => {
                assert_eq!(substitution.to_string(), "{x -> a.0}");
            }
            other => panic!("{other:?}"),
        }
    }
}
