//! Bounded derivability: closed equational proofs found by bidirectional
//! breadth-first rewriting over canonical terms, axioms used both ways.

use std::collections::HashMap;

use serde::Serialize;

use crate::eqlogic::matching::match_ac;
use crate::eqlogic::proof::Proof;
use crate::eqlogic::AxiomSystem;
use crate::equation::Equation;
use crate::error::{Error, Result};
use crate::term::{Substitution, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Largest term visited; raised to the size of the goal's sides.
    pub max_size: usize,
    /// Longest chain of single rewrite steps.
    pub max_depth: usize,
    /// Visited-term budget across both directions.
    pub max_terms: usize,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits { max_size: 30, max_depth: 8, max_terms: 2_000_000 }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SearchOutcome {
    Derivable { proof: Proof, steps: usize },
    /// No proof within the limits.
    Exhausted { explored: usize, size_cap: usize, zero_clean: bool },
    /// The visited-term budget ran out first; nothing is certified.
    ResourceCap { explored: usize },
}

impl SearchOutcome {
    pub fn is_derivable(&self) -> bool {
        matches!(self, SearchOutcome::Derivable { .. })
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, SearchOutcome::Exhausted { .. })
    }
}

struct Directed {
    index: usize,
    reversed: bool,
    from: Term,
    to: Term,
}

/// The axioms of a system as rewrite rules in both directions. Rules whose
/// target has variables the source does not bind are dropped.
pub struct Rewriter<'a> {
    e: &'a AxiomSystem,
    rules: Vec<Directed>,
}

type Out = Vec<(Term, Option<Proof>)>;

impl<'a> Rewriter<'a> {
    pub fn new(e: &'a AxiomSystem) -> Rewriter<'a> {
        let mut rules = Vec::new();
        for (index, ax) in e.axioms().enumerate() {
            if ax.lhs.ac_eq(&ax.rhs) {
                continue;
            }
            for reversed in [false, true] {
                let (from, to) = if reversed { (&ax.rhs, &ax.lhs) } else { (&ax.lhs, &ax.rhs) };
                let dup = rules.iter().any(|d: &Directed| d.from.ac_eq(from) && d.to.ac_eq(to));
                if to.vars().is_subset(&from.vars()) && !dup {
                    rules.push(Directed { index, reversed, from: from.clone(), to: to.clone() });
                }
            }
        }
        Rewriter { e, rules }
    }

    /// Every one-step rewrite of canonical `t`, as canonical terms, with a
    /// proof of `t = t'` when `want_proof`.
    pub fn successors(&self, t: &Term, want_proof: bool) -> Out {
        let mut out = Vec::new();
        self.go(t, want_proof, &mut out);
        out
    }

    fn root(&self, t: &Term, want: bool, out: &mut Out) {
        for r in &self.rules {
            for s in match_ac(&r.from, t, &Substitution::new()) {
                let res = s.apply(&r.to).canon();
                let pf = want.then(|| {
                    let ax = Proof::axiom(self.e, r.index, s.clone());
                    let ax = if r.reversed { Proof::symm(ax) } else { ax };
                    ax.with_conclusion(Equation::new(t.clone(), res.clone()))
                });
                out.push((res, pf));
            }
        }
    }

    fn go(&self, t: &Term, want: bool, out: &mut Out) {
        self.root(t, want, out);
        match t {
            Term::Sum(..) => {
                let ss = t.summands();
                let k = ss.len();
                let in_context = |rest: &[Term], inner: Out, out: &mut Out| {
                    let rest_t = Term::canon_sum(rest.to_vec());
                    for (res, pf) in inner {
                        let whole = Term::canon_sum(vec![res, rest_t.clone()]);
                        let pf = pf.map(|p| {
                            Proof::cong_sum(p, Proof::refl(rest_t.clone()))
                                .with_conclusion(Equation::new(t.clone(), whole.clone()))
                        });
                        out.push((whole, pf));
                    }
                };
                if (3..=16).contains(&k) {
                    let mut seen = Vec::new();
                    for m in 1u32..(1 << k) - 1 {
                        if m.count_ones() < 2 {
                            continue;
                        }
                        let chosen: Vec<Term> = (0..k).filter(|j| m & (1 << j) != 0).map(|j| ss[j].clone()).collect();
                        if seen.contains(&chosen) {
                            continue;
                        }
                        let rest: Vec<Term> = (0..k).filter(|j| m & (1 << j) == 0).map(|j| ss[j].clone()).collect();
                        let mut inner = Vec::new();
                        self.root(&Term::canon_sum(chosen.clone()), want, &mut inner);
                        seen.push(chosen);
                        in_context(&rest, inner, out);
                    }
                }
                for j in 0..k {
                    if ss[..j].contains(&ss[j]) {
                        continue;
                    }
                    let mut inner = Vec::new();
                    self.go(&ss[j], want, &mut inner);
                    let rest: Vec<Term> = ss.iter().enumerate().filter(|(i, _)| *i != j).map(|(_, s)| s.clone()).collect();
                    in_context(&rest, inner, out);
                }
            }
            Term::Prefix(a, u) => {
                let mut inner = Vec::new();
                self.go(u, want, &mut inner);
                for (res, pf) in inner {
                    out.push((Term::prefix(*a, res), pf.map(|p| Proof::cong_prefix(*a, p))));
                }
            }
            Term::F(l, r) | Term::Par(l, r) => {
                let is_f = matches!(t, Term::F(..));
                let (op, cong): (fn(Term, Term) -> Term, fn(Proof, Proof) -> Proof) = if is_f {
                    (Term::f, Proof::cong_f)
                } else {
                    (Term::par, Proof::cong_par)
                };
                let mut inner = Vec::new();
                self.go(l, want, &mut inner);
                for (res, pf) in inner {
                    out.push((op(res, (**r).clone()), pf.map(|p| cong(p, Proof::refl((**r).clone())))));
                }
                let mut inner = Vec::new();
                self.go(r, want, &mut inner);
                for (res, pf) in inner {
                    out.push((op((**l).clone(), res), pf.map(|p| cong(Proof::refl((**l).clone()), p))));
                }
            }
            Term::Nil | Term::Var(_) => {}
        }
    }

    /// A proof of the single step `from -> to`, if there is one.
    pub fn step_proof(&self, from: &Term, to: &Term) -> Option<Proof> {
        self.successors(from, true).into_iter().find(|(t, _)| t == to).and_then(|(_, p)| p)
    }
}

/// Searches for a proof of the closed `goal` from `e`.
///
/// When `e` is saturated and both sides of the goal have no `0` summands
/// or factors, only such terms are visited: a proof through other terms
/// can then always be replaced by one avoiding them.
pub fn bounded_derivable(e: &AxiomSystem, goal: &Equation, limits: Limits) -> Result<SearchOutcome> {
    if !goal.is_closed() {
        return Err(Error::OpenTerm(goal.to_string()));
    }
    let (l, r) = (goal.lhs.canon(), goal.rhs.canon());
    if l == r {
        return Ok(SearchOutcome::Derivable { proof: Proof::refl(l).with_conclusion(goal.clone()), steps: 0 });
    }
    let zero_clean = l.is_zero_clean() && r.is_zero_clean() && e.is_saturated().unwrap_or(false);
    let cap = limits.max_size.max(l.size()).max(r.size());
    let rw = Rewriter::new(e);
    // Parent pointers per side; `None` marks a root.
    let mut seen: [HashMap<Term, Option<Term>>; 2] = [HashMap::new(), HashMap::new()];
    seen[0].insert(l.clone(), None);
    seen[1].insert(r.clone(), None);
    let mut frontier = [vec![l.clone()], vec![r.clone()]];
    let mut dist = [0usize, 0usize];
    while dist[0] + dist[1] < limits.max_depth {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        if frontier[side].is_empty() {
            break;
        }
        let mut next = Vec::new();
        for t in std::mem::take(&mut frontier[side]) {
            for (u, _) in rw.successors(&t, false) {
                if u == t || u.size() > cap || (zero_clean && !u.is_zero_clean()) || seen[side].contains_key(&u) {
                    continue;
                }
                seen[side].insert(u.clone(), Some(t.clone()));
                if seen[1 - side].contains_key(&u) {
                    let proof = reconstruct(&rw, &seen, &u)?.with_conclusion(goal.clone());
                    let steps = count_trans(&proof);
                    return Ok(SearchOutcome::Derivable { proof, steps });
                }
                next.push(u);
                if seen[0].len() + seen[1].len() > limits.max_terms {
                    return Ok(SearchOutcome::ResourceCap { explored: seen[0].len() + seen[1].len() });
                }
            }
        }
        frontier[side] = next;
        dist[side] += 1;
    }
    Ok(SearchOutcome::Exhausted { explored: seen[0].len() + seen[1].len(), size_cap: cap, zero_clean })
}

fn count_trans(p: &Proof) -> usize {
    match p.rule {
        crate::eqlogic::Rule::Transitivity => p.premises.iter().map(count_trans).sum(),
        _ => 1,
    }
}

fn reconstruct(rw: &Rewriter, seen: &[HashMap<Term, Option<Term>>; 2], meet: &Term) -> Result<Proof> {
    let walk = |m: &HashMap<Term, Option<Term>>| {
        let mut path = vec![meet.clone()];
        while let Some(Some(p)) = m.get(path.last().unwrap()) {
            path.push(p.clone());
        }
        path
    };
    let mut path = walk(&seen[0]);
    path.reverse();
    path.extend(walk(&seen[1]).into_iter().skip(1));
    let steps = path
        .windows(2)
        .map(|w| {
            rw.step_proof(&w[0], &w[1])
                .ok_or_else(|| Error::Proof(format!("lost the step {} -> {}", w[0], w[1])))
        })
        .collect::<Result<Vec<_>>>()?;
    Proof::chain(steps).ok_or_else(|| Error::Proof("empty path".into()))
}
