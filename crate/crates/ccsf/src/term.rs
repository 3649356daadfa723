//! Terms of the language, substitutions and the syntactic transforms used by
//! the equational layer (hat, zero stripping).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::action::Action;
use crate::error::Error;

/// Abstract syntax of a term.
///
/// The derived `Ord` compares constructor tags first (in declaration order)
/// and then children; [`Term::canon`] sorts summands by it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Nil,
    Var(Arc<str>),
    Prefix(Action, Arc<Term>),
    Sum(Arc<Term>, Arc<Term>),
    Par(Arc<Term>, Arc<Term>),
    F(Arc<Term>, Arc<Term>),
}

impl Term {
    pub fn nil() -> Term {
        Term::Nil
    }

    pub fn var(name: &str) -> Term {
        Term::Var(Arc::from(name))
    }

    pub fn prefix(a: Action, body: Term) -> Term {
        Term::Prefix(a, Arc::new(body))
    }

    pub fn sum(l: Term, r: Term) -> Term {
        Term::Sum(Arc::new(l), Arc::new(r))
    }

    pub fn par(l: Term, r: Term) -> Term {
        Term::Par(Arc::new(l), Arc::new(r))
    }

    pub fn f(l: Term, r: Term) -> Term {
        Term::F(Arc::new(l), Arc::new(r))
    }

    /// Left-nested sum of the given terms; the empty sum is `0`.
    pub fn sum_all<I: IntoIterator<Item = Term>>(terms: I) -> Term {
        let mut it = terms.into_iter();
        match it.next() {
            None => Term::Nil,
            Some(first) => it.fold(first, Term::sum),
        }
    }

    /// Left-nested parallel composition; the empty composition is `0`.
    pub fn par_all<I: IntoIterator<Item = Term>>(terms: I) -> Term {
        let mut it = terms.into_iter();
        match it.next() {
            None => Term::Nil,
            Some(first) => it.fold(first, Term::par),
        }
    }

    /// `mu^n.0`.
    pub fn chain(a: Action, n: usize) -> Term {
        (0..n).fold(Term::Nil, |t, _| Term::prefix(a, t))
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, Term::Nil)
    }

    /// Number of operator symbols; `0` counts, variables do not.
    pub fn size(&self) -> usize {
        match self {
            Term::Nil => 1,
            Term::Var(_) => 0,
            Term::Prefix(_, t) => 1 + t.size(),
            Term::Sum(l, r) | Term::Par(l, r) | Term::F(l, r) => 1 + l.size() + r.size(),
        }
    }

    pub fn vars(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Term::Nil => {}
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::Prefix(_, t) => t.collect_vars(out),
            Term::Sum(l, r) | Term::Par(l, r) | Term::F(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Term::Nil => true,
            Term::Var(_) => false,
            Term::Prefix(_, t) => t.is_closed(),
            Term::Sum(l, r) | Term::Par(l, r) | Term::F(l, r) => l.is_closed() && r.is_closed(),
        }
    }

    pub fn has_par(&self) -> bool {
        match self {
            Term::Nil | Term::Var(_) => false,
            Term::Par(..) => true,
            Term::Prefix(_, t) => t.has_par(),
            Term::Sum(l, r) | Term::F(l, r) => l.has_par() || r.has_par(),
        }
    }

    pub fn has_f(&self) -> bool {
        match self {
            Term::Nil | Term::Var(_) => false,
            Term::F(..) => true,
            Term::Prefix(_, t) => t.has_f(),
            Term::Sum(l, r) | Term::Par(l, r) => l.has_f() || r.has_f(),
        }
    }

    /// Flattened summands, left to right. No element has `+` as head.
    pub fn summands(&self) -> Vec<Term> {
        let mut out = Vec::new();
        self.push_summands(&mut out);
        out
    }

    fn push_summands(&self, out: &mut Vec<Term>) {
        match self {
            Term::Sum(l, r) => {
                l.push_summands(out);
                r.push_summands(out);
            }
            t => out.push(t.clone()),
        }
    }

    /// Canonical representative modulo associativity and commutativity of
    /// `+`: summands are flattened, canonicalised, sorted and re-nested to
    /// the left. Duplicates and `0` summands are kept.
    pub fn canon(&self) -> Term {
        match self {
            Term::Nil | Term::Var(_) => self.clone(),
            Term::Prefix(a, t) => Term::prefix(*a, t.canon()),
            Term::Par(l, r) => Term::par(l.canon(), r.canon()),
            Term::F(l, r) => Term::f(l.canon(), r.canon()),
            Term::Sum(..) => {
                let mut parts: Vec<Term> = self.summands().iter().map(Term::canon).collect();
                parts.sort();
                Term::sum_all(parts)
            }
        }
    }

    /// Canonical sum of already canonical terms: flattens, sorts, re-nests.
    pub fn canon_sum(parts: Vec<Term>) -> Term {
        let mut flat = Vec::with_capacity(parts.len());
        for p in parts {
            p.push_summands(&mut flat);
        }
        flat.sort();
        Term::sum_all(flat)
    }

    /// Equality modulo associativity and commutativity of `+`.
    pub fn ac_eq(&self, other: &Term) -> bool {
        self == other || self.canon() == other.canon()
    }

    /// Replaces every `p || q` by `f(p^, q^) + f(q^, p^)`.
    pub fn hat(&self) -> Term {
        match self {
            Term::Nil | Term::Var(_) => self.clone(),
            Term::Prefix(a, t) => Term::prefix(*a, t.hat()),
            Term::Sum(l, r) => Term::sum(l.hat(), r.hat()),
            Term::F(l, r) => Term::f(l.hat(), r.hat()),
            Term::Par(l, r) => {
                let (l, r) = (l.hat(), r.hat());
                Term::sum(Term::f(l.clone(), r.clone()), Term::f(r, l))
            }
        }
    }

    /// Membership in the grammar `N ::= 0 | N + N | f(N, t)`.
    ///
    /// For an operator that distributes over `+` in its first argument this
    /// holds exactly for the terms all of whose closed instances are
    /// bisimilar to `0`.
    pub fn in_nil_grammar(&self) -> bool {
        match self {
            Term::Nil => true,
            Term::Sum(l, r) => l.in_nil_grammar() && r.in_nil_grammar(),
            Term::F(l, _) => l.in_nil_grammar(),
            _ => false,
        }
    }

    /// `t/0`: removes `0` summands and `0` factors, deciding "is `0`" with
    /// [`Term::in_nil_grammar`]. Rejects terms containing `||`.
    pub fn strip_zero(&self) -> Result<Term, Error> {
        self.strip_zero_with(&|t: &Term| t.in_nil_grammar())
    }

    /// `t/0` with a caller-supplied "is bisimilar to `0`" oracle.
    pub fn strip_zero_with(&self, is_nil: &dyn Fn(&Term) -> bool) -> Result<Term, Error> {
        Ok(match self {
            Term::Nil | Term::Var(_) => self.clone(),
            Term::Prefix(a, t) => Term::prefix(*a, t.strip_zero_with(is_nil)?),
            Term::Sum(l, r) => {
                if is_nil(l) {
                    r.strip_zero_with(is_nil)?
                } else if is_nil(r) {
                    l.strip_zero_with(is_nil)?
                } else {
                    Term::sum(l.strip_zero_with(is_nil)?, r.strip_zero_with(is_nil)?)
                }
            }
            Term::F(l, r) => {
                if is_nil(l) {
                    Term::Nil
                } else if is_nil(r) {
                    l.strip_zero_with(is_nil)?
                } else {
                    Term::f(l.strip_zero_with(is_nil)?, r.strip_zero_with(is_nil)?)
                }
            }
            Term::Par(..) => return Err(Error::ParNotAllowed(self.to_string())),
        })
    }

    /// True iff no subterm is a sum with a `0`-class summand or an
    /// `f`- or `||`-application with a `0`-class argument (per the NIL
    /// grammar).
    pub fn is_zero_clean(&self) -> bool {
        match self {
            Term::Nil | Term::Var(_) => true,
            Term::Prefix(_, t) => t.is_zero_clean(),
            Term::Sum(l, r) => {
                !l.in_nil_grammar() && !r.in_nil_grammar() && l.is_zero_clean() && r.is_zero_clean()
            }
            Term::F(l, r) | Term::Par(l, r) => {
                !l.in_nil_grammar() && !r.in_nil_grammar() && l.is_zero_clean() && r.is_zero_clean()
            }
        }
    }

    /// Applies the `a <-> a'` renaming to every prefix.
    pub fn rename(&self) -> Term {
        match self {
            Term::Nil | Term::Var(_) => self.clone(),
            Term::Prefix(a, t) => Term::prefix(a.rename(), t.rename()),
            Term::Sum(l, r) => Term::sum(l.rename(), r.rename()),
            Term::Par(l, r) => Term::par(l.rename(), r.rename()),
            Term::F(l, r) => Term::f(l.rename(), r.rename()),
        }
    }

    /// Swaps the two arguments of every `f`.
    pub fn swap_f_args(&self) -> Term {
        match self {
            Term::Nil | Term::Var(_) => self.clone(),
            Term::Prefix(a, t) => Term::prefix(*a, t.swap_f_args()),
            Term::Sum(l, r) => Term::sum(l.swap_f_args(), r.swap_f_args()),
            Term::Par(l, r) => Term::par(l.swap_f_args(), r.swap_f_args()),
            Term::F(l, r) => Term::f(r.swap_f_args(), l.swap_f_args()),
        }
    }
}

/// Finite map from variables to terms; identity outside its domain.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution {
    map: BTreeMap<Arc<str>, Term>,
}

impl Substitution {
    pub fn new() -> Substitution {
        Substitution::default()
    }

    pub fn from_pairs<'a, I: IntoIterator<Item = (&'a str, Term)>>(pairs: I) -> Substitution {
        let mut s = Substitution::new();
        for (x, t) in pairs {
            s.insert(x, t);
        }
        s
    }

    pub fn insert(&mut self, x: &str, t: Term) {
        self.map.insert(Arc::from(x), t);
    }

    pub fn insert_arc(&mut self, x: Arc<str>, t: Term) {
        self.map.insert(x, t);
    }

    pub fn get(&self, x: &str) -> Option<&Term> {
        self.map.get(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Arc<str>, &Term)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, t: &Term) -> Term {
        match t {
            Term::Nil => Term::Nil,
            Term::Var(x) => self.map.get(x).cloned().unwrap_or_else(|| t.clone()),
            Term::Prefix(a, u) => Term::prefix(*a, self.apply(u)),
            Term::Sum(l, r) => Term::sum(self.apply(l), self.apply(r)),
            Term::Par(l, r) => Term::par(self.apply(l), self.apply(r)),
            Term::F(l, r) => Term::f(self.apply(l), self.apply(r)),
        }
    }

    /// Every term in the range is closed.
    pub fn is_closed(&self) -> bool {
        self.map.values().all(Term::is_closed)
    }

    /// Every non-identity image is `0`.
    pub fn is_zero_substitution(&self) -> bool {
        self.map.iter().all(|(x, t)| t.is_nil() || matches!(t, Term::Var(y) if y == x))
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (x, t)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x} -> {t}")?;
        }
        f.write_str("}")
    }
}

// Precedence levels: 0 sum, 1 parallel, 2 prefix operand.
fn write_term(t: &Term, level: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        Term::Nil => out.write_str("0"),
        Term::Var(x) => out.write_str(x),
        Term::Prefix(a, body) => {
            write!(out, "{a}.")?;
            write_term(body, 2, out)
        }
        Term::F(l, r) => {
            out.write_str("f(")?;
            write_term(l, 0, out)?;
            out.write_str(", ")?;
            write_term(r, 0, out)?;
            out.write_str(")")
        }
        Term::Sum(l, r) => {
            if level > 0 {
                out.write_str("(")?;
            }
            write_term(l, 0, out)?;
            out.write_str(" + ")?;
            write_term(r, 1, out)?;
            if level > 0 {
                out.write_str(")")?;
            }
            Ok(())
        }
        Term::Par(l, r) => {
            if level > 1 {
                out.write_str("(")?;
            }
            write_term(l, 1, out)?;
            out.write_str(" || ")?;
            write_term(r, 2, out)?;
            if level > 1 {
                out.write_str(")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, 0, f)
    }
}

impl serde::Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}
