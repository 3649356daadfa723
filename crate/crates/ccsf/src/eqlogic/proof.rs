//! Proof trees for equational logic modulo AC of `+`, and their checker.

use std::fmt;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::action::Action;
use crate::eqlogic::AxiomSystem;
use crate::equation::Equation;
use crate::term::{Substitution, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    Axiom { index: usize, substitution: Substitution },
    Reflexivity,
    Symmetry,
    Transitivity,
    CongPrefix(Action),
    CongSum,
    CongF,
    CongPar,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Axiom { index, substitution } => write!(f, "axiom #{index} {substitution}"),
            Rule::Reflexivity => f.write_str("reflexivity"),
            Rule::Symmetry => f.write_str("symmetry"),
            Rule::Transitivity => f.write_str("transitivity"),
            Rule::CongPrefix(a) => write!(f, "congruence {a}."),
            Rule::CongSum => f.write_str("congruence +"),
            Rule::CongF => f.write_str("congruence f"),
            Rule::CongPar => f.write_str("congruence ||"),
        }
    }
}

/// A node concluding `conclusion` from `premises` by `rule`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub rule: Rule,
    pub premises: Vec<Proof>,
    pub conclusion: Equation,
}

impl Proof {
    /// `sigma(l) = sigma(r)` for axiom `index` of `e`.
    pub fn axiom(e: &AxiomSystem, index: usize, substitution: Substitution) -> Proof {
        let ax = e.get(index).expect("axiom index in range");
        Proof {
            conclusion: ax.apply(&substitution),
            rule: Rule::Axiom { index, substitution },
            premises: Vec::new(),
        }
    }

    pub fn refl(t: Term) -> Proof {
        Proof { rule: Rule::Reflexivity, premises: Vec::new(), conclusion: Equation::new(t.clone(), t) }
    }

    pub fn symm(p: Proof) -> Proof {
        Proof { rule: Rule::Symmetry, conclusion: p.conclusion.symmetric(), premises: vec![p] }
    }

    pub fn trans(p: Proof, q: Proof) -> Proof {
        let conclusion = Equation::new(p.conclusion.lhs.clone(), q.conclusion.rhs.clone());
        Proof { rule: Rule::Transitivity, premises: vec![p, q], conclusion }
    }

    pub fn cong_prefix(a: Action, p: Proof) -> Proof {
        let conclusion = p.conclusion.map(|t| Term::prefix(a, t.clone()));
        Proof { rule: Rule::CongPrefix(a), premises: vec![p], conclusion }
    }

    fn binary(rule: Rule, p: Proof, q: Proof, op: fn(Term, Term) -> Term) -> Proof {
        let conclusion = Equation::new(
            op(p.conclusion.lhs.clone(), q.conclusion.lhs.clone()),
            op(p.conclusion.rhs.clone(), q.conclusion.rhs.clone()),
        );
        Proof { rule, premises: vec![p, q], conclusion }
    }

    pub fn cong_sum(p: Proof, q: Proof) -> Proof {
        Proof::binary(Rule::CongSum, p, q, Term::sum)
    }

    pub fn cong_f(p: Proof, q: Proof) -> Proof {
        Proof::binary(Rule::CongF, p, q, Term::f)
    }

    pub fn cong_par(p: Proof, q: Proof) -> Proof {
        Proof::binary(Rule::CongPar, p, q, Term::par)
    }

    /// Chains proofs `t0 = t1`, `t1 = t2`, ... by transitivity.
    pub fn chain(steps: Vec<Proof>) -> Option<Proof> {
        steps.into_iter().reduce(Proof::trans)
    }

    /// Same proof with the root conclusion replaced by an AC-equal one.
    pub fn with_conclusion(mut self, eq: Equation) -> Proof {
        self.conclusion = eq;
        self
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Proof::height).max().unwrap_or(0)
    }

    /// Nodes in pre-order together with their paths.
    pub fn nodes(&self) -> Vec<(Vec<usize>, &Proof)> {
        let mut out = Vec::new();
        fn go<'a>(p: &'a Proof, path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, &'a Proof)>) {
            out.push((path.clone(), p));
            for (i, c) in p.premises.iter().enumerate() {
                path.push(i);
                go(c, path, out);
                path.pop();
            }
        }
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn node_mut(&mut self, path: &[usize]) -> &mut Proof {
        match path.split_first() {
            None => self,
            Some((&i, rest)) => self.premises[i].node_mut(rest),
        }
    }
}

/// One conclusion per line, premises indented below their conclusion.
impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (path, node) in self.nodes() {
            if !path.is_empty() {
                writeln!(f)?;
            }
            write!(f, "{}{}   [{}]", "  ".repeat(path.len()), node.conclusion, node.rule)?;
        }
        Ok(())
    }
}

impl Serialize for Proof {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Proof", 3)?;
        st.serialize_field("rule", &self.rule.to_string())?;
        st.serialize_field("conclusion", &self.conclusion.to_string())?;
        st.serialize_field("premises", &self.premises)?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProofError {
    /// Child indices from the root to the offending node.
    pub path: Vec<usize>,
    pub rule: String,
    pub message: String,
}

impl fmt::Display for ProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {:?} ({}): {}", self.path, self.rule, self.message)
    }
}

fn expected(rule: &Rule, e: &AxiomSystem, premises: &[Proof]) -> Result<Equation, String> {
    let arity = match rule {
        Rule::Axiom { .. } | Rule::Reflexivity => 0,
        Rule::Symmetry | Rule::CongPrefix(_) => 1,
        _ => 2,
    };
    if premises.len() != arity {
        return Err(format!("expected {arity} premises, found {}", premises.len()));
    }
    let c = |i: usize| &premises[i].conclusion;
    let bin = |op: fn(Term, Term) -> Term| {
        Equation::new(op(c(0).lhs.clone(), c(1).lhs.clone()), op(c(0).rhs.clone(), c(1).rhs.clone()))
    };
    Ok(match rule {
        Rule::Axiom { index, substitution } => {
            let ax = e.get(*index).ok_or_else(|| format!("no axiom #{index}"))?;
            ax.apply(substitution)
        }
        Rule::Reflexivity => return Err(String::new()),
        Rule::Symmetry => c(0).symmetric(),
        Rule::Transitivity => {
            if !c(0).rhs.ac_eq(&c(1).lhs) {
                return Err(format!("middle terms differ: {} vs {}", c(0).rhs, c(1).lhs));
            }
            Equation::new(c(0).lhs.clone(), c(1).rhs.clone())
        }
        Rule::CongPrefix(a) => c(0).map(|t| Term::prefix(*a, t.clone())),
        Rule::CongSum => bin(Term::sum),
        Rule::CongF => bin(Term::f),
        Rule::CongPar => bin(Term::par),
    })
}

fn check_node(e: &AxiomSystem, p: &Proof) -> Result<(), String> {
    if p.rule == Rule::Reflexivity {
        if !p.premises.is_empty() {
            return Err("reflexivity has no premises".into());
        }
        return if p.conclusion.lhs.ac_eq(&p.conclusion.rhs) {
            Ok(())
        } else {
            Err(format!("sides differ: {}", p.conclusion))
        };
    }
    let want = expected(&p.rule, e, &p.premises)?;
    if want.ac_eq(&p.conclusion) {
        Ok(())
    } else {
        Err(format!("concludes {} but the rule yields {}", p.conclusion, want))
    }
}

/// Validates every node, premises before conclusions, reporting the first
/// invalid one.
pub fn check_proof(e: &AxiomSystem, pr: &Proof) -> Result<(), ProofError> {
    fn go(e: &AxiomSystem, p: &Proof, path: &mut Vec<usize>) -> Result<(), ProofError> {
        for (i, c) in p.premises.iter().enumerate() {
            path.push(i);
            go(e, c, path)?;
            path.pop();
        }
        check_node(e, p).map_err(|message| ProofError {
            path: path.clone(),
            rule: p.rule.to_string(),
            message,
        })
    }
    go(e, pr, &mut Vec::new())
}

/// Transforms a proof from `E` into one from `E^` of the hatted conclusion:
/// congruence for `||` becomes congruence for `f(x,y) + f(y,x)`.
pub fn hat_proof(pr: &Proof) -> Proof {
    let conclusion = pr.conclusion.map(Term::hat);
    let premises: Vec<Proof> = pr.premises.iter().map(hat_proof).collect();
    match &pr.rule {
        Rule::Axiom { index, substitution } => {
            let mut s = Substitution::new();
            for (x, t) in substitution.iter() {
                s.insert_arc(x.clone(), t.hat());
            }
            Proof { rule: Rule::Axiom { index: *index, substitution: s }, premises, conclusion }
        }
        Rule::CongPar => {
            let (p, q) = (premises[0].clone(), premises[1].clone());
            let out = Proof::cong_sum(Proof::cong_f(p.clone(), q.clone()), Proof::cong_f(q, p));
            out.with_conclusion(conclusion)
        }
        rule => Proof { rule: rule.clone(), premises, conclusion },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn e() -> AxiomSystem {
        AxiomSystem::parse("e", "A1: x + x = x\nA2: x + y = y + x\nP: x || 0 = x").unwrap()
    }

    #[test]
    fn axiom_instance_checks() {
        let p = Proof::axiom(&e(), 0, Substitution::from_pairs([("x", t("a.0"))]));
        assert_eq!(p.conclusion.to_string(), "a.0 + a.0 = a.0");
        assert!(check_proof(&e(), &p).is_ok());
        assert!(check_proof(&e(), &Proof::refl(t("a.0 + tau.0"))).is_ok());
    }

    #[test]
    fn modulo_ac() {
        let p = Proof::axiom(&e(), 0, Substitution::from_pairs([("x", t("a.0 + tau.0"))]))
            .with_conclusion(Equation::parse("tau.0 + a.0 + a.0 + tau.0 = a.0 + tau.0").unwrap());
        assert!(check_proof(&e(), &p).is_ok());
    }

    #[test]
    fn wrong_prefix_is_rejected() {
        let inner = Proof::axiom(&e(), 0, Substitution::from_pairs([("x", t("0"))]));
        let mut p = Proof::cong_prefix(Action::A, inner);
        p.conclusion.lhs = t("tau.(0 + 0)");
        let err = check_proof(&e(), &p).unwrap_err();
        assert!(err.path.is_empty());
        let mut q = Proof::symm(Proof::refl(t("a.0")));
        q.premises[0].conclusion.rhs = t("tau.0");
        assert_eq!(check_proof(&e(), &q).unwrap_err().path, vec![0]);
    }

    #[test]
    fn transitivity_and_congruence() {
        let ax = Proof::axiom(&e(), 0, Substitution::from_pairs([("x", t("a.0"))]));
        let p = Proof::cong_par(ax.clone(), Proof::refl(t("tau.0")));
        assert!(check_proof(&e(), &p).is_ok());
        let q = Proof::trans(ax.clone(), Proof::symm(ax));
        assert!(check_proof(&e(), &q).is_ok());
        assert!(q.conclusion.lhs.ac_eq(&q.conclusion.rhs));
    }

    #[test]
    fn hat_lifts_par_congruence() {
        let ax = Proof::axiom(&e(), 2, Substitution::from_pairs([("x", t("a.0 || tau.0"))]));
        let p = Proof::cong_par(ax, Proof::refl(t("a'.0")));
        assert!(check_proof(&e(), &p).is_ok());
        let h = hat_proof(&p);
        assert!(!h.conclusion.lhs.has_par());
        assert_eq!(check_proof(&e().hat(), &h), Ok(()));
    }
}
