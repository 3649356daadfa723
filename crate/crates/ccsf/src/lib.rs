//! A workbench for CCS extended with one binary operator `f` whose
//! semantics is given by an admissible set of de Simone rules.
//!
//! Closed terms get a labelled transition system ([`sos`]), bisimilarity is
//! decided by partition refinement ([`semantics::bisim`]) and, independently,
//! by evaluation into hash-consed synchronisation trees
//! ([`semantics::store`]). On top of that sit bounded soundness checks for
//! open equations, equational proofs ([`eqlogic`]), the space of admissible
//! operators ([`operators`]), witness families ([`witness`]) and the
//! open-term transition machinery ([`open`]).

pub mod action;
pub mod eqlogic;
pub mod equation;
pub mod gen;
pub mod error;
pub mod open;
pub mod operators;
pub mod parse;
pub mod rules;
pub mod semantics;
pub mod sos;
pub mod term;
pub mod witness;

pub use action::Action;
pub use equation::Equation;
pub use error::{Error, Result};
pub use parse::{parse_equation, parse_term};
pub use rules::{RuleSet, Sync};
pub use term::{Substitution, Term};
