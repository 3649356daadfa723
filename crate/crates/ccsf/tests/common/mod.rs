//! Helpers shared by the integration targets: proptest strategies, a proof
//! generator and oracles that do not reuse the library's algorithms.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use ccsf::eqlogic::{table, AxiomSystem, Proof};
use ccsf::operators::enumerate_admissible;
use ccsf::sos::Lts;
use ccsf::{Action, RuleSet, Substitution, Term};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

pub fn t(s: &str) -> Term {
    ccsf::parse_term(s).unwrap()
}

pub fn action() -> impl Strategy<Value = Action> {
    prop_oneof![Just(Action::A), Just(Action::ABar), Just(Action::Tau)]
}

/// Synchronisation trees (0, prefix, +).
pub fn tree(depth: u32) -> BoxedStrategy<Term> {
    Just(Term::Nil)
        .prop_recursive(depth, 12, 3, |inner| {
            prop_oneof![
                (action(), inner.clone()).prop_map(|(a, p)| Term::prefix(a, p)),
                (inner.clone(), inner).prop_map(|(p, q)| Term::sum(p, q)),
            ]
        })
        .boxed()
}

/// Closed terms over all five constructors; `||` only when `par`.
pub fn closed(depth: u32, par: bool) -> BoxedStrategy<Term> {
    Just(Term::Nil)
        .prop_recursive(depth, 10, 2, move |inner| {
            let base = prop_oneof![
                (action(), inner.clone()).prop_map(|(a, p)| Term::prefix(a, p)),
                (inner.clone(), inner.clone()).prop_map(|(p, q)| Term::sum(p, q)),
                (inner.clone(), inner.clone()).prop_map(|(p, q)| Term::f(p, q)),
            ];
            if par {
                prop_oneof![3 => base, 1 => (inner.clone(), inner).prop_map(|(p, q)| Term::par(p, q))].boxed()
            } else {
                base.boxed()
            }
        })
        .boxed()
}

/// Terms over `x` and `y`.
pub fn open(depth: u32, par: bool) -> BoxedStrategy<Term> {
    prop_oneof![Just(Term::Nil), Just(Term::var("x")), Just(Term::var("y"))]
        .prop_recursive(depth, 10, 2, move |inner| {
            let base = prop_oneof![
                (action(), inner.clone()).prop_map(|(a, p)| Term::prefix(a, p)),
                (inner.clone(), inner.clone()).prop_map(|(p, q)| Term::sum(p, q)),
                (inner.clone(), inner.clone()).prop_map(|(p, q)| Term::f(p, q)),
            ];
            if par {
                prop_oneof![3 => base, 1 => (inner.clone(), inner).prop_map(|(p, q)| Term::par(p, q))].boxed()
            } else {
                base.boxed()
            }
        })
        .boxed()
}

pub fn admissible() -> impl Strategy<Value = RuleSet> {
    let all = enumerate_admissible();
    (0..all.len()).prop_map(move |i| all[i])
}

pub fn any_rule_set() -> impl Strategy<Value = RuleSet> {
    (0u8..=255).prop_map(RuleSet::from_code)
}

/// Reverses a sum's summand order at every level; AC-equal to the input.
pub fn reverse_sums(t: &Term) -> Term {
    match t {
        Term::Sum(..) => Term::sum_all(t.summands().iter().rev().map(reverse_sums)),
        Term::Prefix(a, p) => Term::prefix(*a, reverse_sums(p)),
        Term::F(p, q) => Term::f(reverse_sums(p), reverse_sums(q)),
        Term::Par(p, q) => Term::par(reverse_sums(p), reverse_sums(q)),
        Term::Nil | Term::Var(_) => t.clone(),
    }
}

/// Naive greatest fixed point: start from all pairs, drop pairs that fail
/// the transfer condition until nothing changes.
pub fn naive_bisim(lts: &Lts) -> Vec<Vec<bool>> {
    let n = lts.states.len();
    let mut rel = vec![vec![true; n]; n];
    loop {
        let mut changed = false;
        for s in 0..n {
            for u in 0..n {
                if !rel[s][u] {
                    continue;
                }
                let fwd = lts.succ[s]
                    .iter()
                    .all(|(a, s2)| lts.succ[u].iter().any(|(b, u2)| a == b && rel[*s2][*u2]));
                let bwd = lts.succ[u]
                    .iter()
                    .all(|(b, u2)| lts.succ[s].iter().any(|(a, s2)| a == b && rel[*s2][*u2]));
                if !(fwd && bwd) {
                    rel[s][u] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return rel;
        }
    }
}

/// Longest path by explicit trace enumeration.
pub fn depth_by_traces(rs: &RuleSet, p: &Term) -> usize {
    ccsf::sos::traces(rs, p).unwrap().iter().map(Vec::len).max().unwrap_or(0)
}

/// `A1-A4, F0, F1, F2` closed under symmetry: sound for the rule sets with
/// every rule on the left and none on the right.
pub fn labat_system() -> AxiomSystem {
    let f12 = AxiomSystem::parse("f12", table::file("lall-rnone.axioms").unwrap()).unwrap();
    table::common().union(&f12).symmetric_closure()
}

pub fn random_tree(rng: &mut StdRng) -> Term {
    ccsf::gen::random_tree(rng, 2, 2)
}

/// A random closed proof from `e`: axiom instances under tree
/// substitutions, combined with symmetry, congruences and transitivity.
pub fn random_proof(rng: &mut StdRng, e: &AxiomSystem, depth: usize) -> Proof {
    let k = if depth == 0 { 0 } else { rng.gen_range(0..7) };
    match k {
        0 | 1 => {
            let i = rng.gen_range(0..e.len());
            let mut s = Substitution::new();
            for x in e.get(i).unwrap().vars() {
                s.insert_arc(x, random_tree(rng));
            }
            let p = Proof::axiom(e, i, s);
            if k == 1 {
                Proof::symm(p)
            } else {
                p
            }
        }
        2 => Proof::cong_prefix(Action::ALL[rng.gen_range(0..3)], random_proof(rng, e, depth - 1)),
        3 => Proof::cong_sum(random_proof(rng, e, depth - 1), Proof::refl(random_tree(rng))),
        4 => Proof::cong_f(random_proof(rng, e, depth - 1), random_proof(rng, e, depth - 1)),
        5 => Proof::cong_par(Proof::refl(random_tree(rng)), random_proof(rng, e, depth - 1)),
        _ => {
            // Extend with an A1 or A4 step on the right-hand side.
            let p = random_proof(rng, e, depth - 1);
            let label = if rng.gen_bool(0.5) { "A1" } else { "A4" };
            let i = e.index_of(label).unwrap();
            let s = Substitution::from_pairs([("x", p.conclusion.rhs.clone())]);
            Proof::trans(p, Proof::symm(Proof::axiom(e, i, s)))
        }
    }
}

/// Mutations that every correct checker must reject.
pub fn mutate(rng: &mut StdRng, pr: &Proof) -> Proof {
    let mut m = pr.clone();
    let nodes: Vec<Vec<usize>> = m.nodes().into_iter().map(|(path, _)| path).collect();
    let path = nodes[rng.gen_range(0..nodes.len())].clone();
    let node = m.node_mut(&path);
    match rng.gen_range(0..3) {
        0 => node.conclusion.lhs = Term::prefix(Action::Tau, node.conclusion.lhs.clone()),
        1 => node.conclusion.rhs = Term::f(node.conclusion.rhs.clone(), Term::prefix(Action::A, Term::Nil)),
        _ => {
            if node.premises.is_empty() {
                node.premises.push(Proof::refl(Term::Nil));
            } else {
                node.premises.pop();
            }
        }
    }
    m
}

/// Every syntactic term of nesting depth at most `d` over `0`, prefixes,
/// `+` and `||`.
pub fn par_terms(d: usize) -> Vec<Term> {
    let mut level = vec![Term::Nil];
    for _ in 0..d {
        let mut next = vec![Term::Nil];
        for p in &level {
            for a in Action::ALL {
                next.push(Term::prefix(a, p.clone()));
            }
        }
        for p in &level {
            for q in &level {
                next.push(Term::sum(p.clone(), q.clone()));
                next.push(Term::par(p.clone(), q.clone()));
            }
        }
        level = next;
    }
    level
}

/// Admissibility restated from the definition: every action has a rule on
/// some side and some synchronisation rule exists.
pub fn admissible_by_definition(rs: &RuleSet) -> bool {
    Action::ALL.iter().all(|&a| rs.has_left(a) || rs.has_right(a)) && !rs.sync().is_empty()
}

/// Multiset of `(label, target)` pairs for comparison.
pub fn moves(v: Vec<(Action, Term)>) -> BTreeMap<(Action, Term), usize> {
    let mut m = BTreeMap::new();
    for x in v {
        *m.entry(x).or_insert(0) += 1;
    }
    m
}

pub fn set<T: Ord>(v: impl IntoIterator<Item = T>) -> BTreeSet<T> {
    v.into_iter().collect()
}
