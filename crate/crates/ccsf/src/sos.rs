//! Structural operational semantics and finite transition systems.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::action::Action;
use crate::error::{Error, Result};
use crate::rules::RuleSet;
use crate::term::Term;

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

/// One-step derivatives, treating variables as inert.
///
/// Targets are built from subterms and `||`, so they are AC-canonical
/// whenever `p` is.
pub fn step_open(rs: &RuleSet, p: &Term) -> Vec<(Action, Term)> {
    let mut out = Vec::new();
    push_steps(rs, p, &mut out);
    out.sort();
    out.dedup();
    out
}

fn push_steps(rs: &RuleSet, p: &Term, out: &mut Vec<(Action, Term)>) {
    match p {
        Term::Nil | Term::Var(_) => {}
        Term::Prefix(a, t) => out.push((*a, (**t).clone())),
        Term::Sum(l, r) => {
            push_steps(rs, l, out);
            push_steps(rs, r, out);
        }
        Term::Par(l, r) => {
            let (ls, rs_) = (step_open(rs, l), step_open(rs, r));
            for (a, l2) in &ls {
                out.push((*a, Term::par(l2.clone(), (**r).clone())));
            }
            for (a, r2) in &rs_ {
                out.push((*a, Term::par((**l).clone(), r2.clone())));
            }
            for (a, l2) in &ls {
                for (b, r2) in &rs_ {
                    if a.is_complementary(*b) {
                        out.push((Action::Tau, Term::par(l2.clone(), r2.clone())));
                    }
                }
            }
        }
        Term::F(l, r) => {
            let (ls, rs_) = (step_open(rs, l), step_open(rs, r));
            for (a, l2) in &ls {
                if rs.has_left(*a) {
                    out.push((*a, Term::par(l2.clone(), (**r).clone())));
                }
            }
            for (a, r2) in &rs_ {
                if rs.has_right(*a) {
                    out.push((*a, Term::par((**l).clone(), r2.clone())));
                }
            }
            for (a, l2) in &ls {
                for (b, r2) in &rs_ {
                    if rs.syncs(*a, *b) {
                        out.push((Action::Tau, Term::par(l2.clone(), r2.clone())));
                    }
                }
            }
        }
    }
}

fn require_closed(p: &Term) -> Result<()> {
    if p.is_closed() {
        Ok(())
    } else {
        Err(Error::OpenTerm(p.to_string()))
    }
}

/// One-step derivatives of a closed term, targets AC-canonical.
pub fn step(rs: &RuleSet, p: &Term) -> Result<Vec<(Action, Term)>> {
    require_closed(p)?;
    Ok(step_open(rs, &p.canon()))
}

/// Finite labelled transition system over AC-canonical closed terms.
#[derive(Clone, Debug, Serialize)]
pub struct Lts {
    pub states: Vec<Term>,
    pub succ: Vec<Vec<(Action, usize)>>,
    pub root: usize,
}

impl Lts {
    pub fn num_transitions(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, Action, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(s, v)| v.iter().map(move |(a, t)| (s, *a, *t)))
    }

    /// Length of the longest path from each state.
    pub fn depths(&self) -> Vec<usize> {
        self.fold_dag(|succ| succ.iter().map(|d| d + 1).max().unwrap_or(0))
    }

    /// Length of the shortest path to a deadlocked state from each state.
    pub fn norms(&self) -> Vec<usize> {
        self.fold_dag(|succ| succ.iter().map(|d| d + 1).min().unwrap_or(0))
    }

    // States are numbered in BFS order and every transition strictly
    // decreases term size, so the graph is acyclic; evaluate in reverse
    // topological order.
    fn fold_dag(&self, f: impl Fn(&[usize]) -> usize) -> Vec<usize> {
        let order = self.topo_order();
        let mut val = vec![0usize; self.states.len()];
        for &s in order.iter().rev() {
            let succ: Vec<usize> = self.succ[s].iter().map(|(_, t)| val[*t]).collect();
            val[s] = f(&succ);
        }
        val
    }

    fn topo_order(&self) -> Vec<usize> {
        let n = self.states.len();
        let mut indeg = vec![0usize; n];
        for (_, _, t) in self.transitions() {
            indeg[t] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|s| indeg[*s] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(s) = queue.pop_front() {
            order.push(s);
            for (_, t) in &self.succ[s] {
                indeg[*t] -= 1;
                if indeg[*t] == 0 {
                    queue.push_back(*t);
                }
            }
        }
        assert_eq!(order.len(), n, "transition graph must be acyclic");
        order
    }
}

/// Builds the joint LTS reachable from several closed roots; returns the
/// state index of each root. `Lts::root` is the first of them.
pub fn build_lts_joint(rs: &RuleSet, roots: &[Term], cap: usize) -> Result<(Lts, Vec<usize>)> {
    let mut index: HashMap<Term, usize> = HashMap::new();
    let mut states: Vec<Term> = Vec::new();
    let mut succ: Vec<Vec<(Action, usize)>> = Vec::new();
    let mut queue = VecDeque::new();
    let mut root_ids = Vec::new();
    let mut intern = |t: Term,
                      states: &mut Vec<Term>,
                      succ: &mut Vec<Vec<(Action, usize)>>,
                      queue: &mut VecDeque<usize>|
     -> Result<usize> {
        if let Some(&i) = index.get(&t) {
            return Ok(i);
        }
        if states.len() >= cap {
            return Err(Error::StateCap { cap });
        }
        let i = states.len();
        index.insert(t.clone(), i);
        states.push(t);
        succ.push(Vec::new());
        queue.push_back(i);
        Ok(i)
    };
    for r in roots {
        require_closed(r)?;
        let id = intern(r.canon(), &mut states, &mut succ, &mut queue)?;
        root_ids.push(id);
    }
    while let Some(s) = queue.pop_front() {
        let moves = step_open(rs, &states[s].clone());
        let mut out = Vec::with_capacity(moves.len());
        for (a, t) in moves {
            let id = intern(t, &mut states, &mut succ, &mut queue)?;
            out.push((a, id));
        }
        out.sort();
        out.dedup();
        succ[s] = out;
    }
    let root = root_ids.first().copied().unwrap_or(0);
    Ok((Lts { states, succ, root }, root_ids))
}

pub fn build_lts_capped(rs: &RuleSet, p: &Term, cap: usize) -> Result<Lts> {
    Ok(build_lts_joint(rs, std::slice::from_ref(p), cap)?.0)
}

pub fn build_lts(rs: &RuleSet, p: &Term) -> Result<Lts> {
    build_lts_capped(rs, p, DEFAULT_STATE_CAP)
}

pub fn depth(rs: &RuleSet, p: &Term) -> Result<usize> {
    let lts = build_lts(rs, p)?;
    Ok(lts.depths()[lts.root])
}

pub fn norm(rs: &RuleSet, p: &Term) -> Result<usize> {
    let lts = build_lts(rs, p)?;
    Ok(lts.norms()[lts.root])
}

pub fn initials(rs: &RuleSet, p: &Term) -> Result<BTreeSet<Action>> {
    Ok(step(rs, p)?.into_iter().map(|(a, _)| a).collect())
}

/// All traces of `p`, including the empty one.
pub fn traces(rs: &RuleSet, p: &Term) -> Result<BTreeSet<Vec<Action>>> {
    let lts = build_lts(rs, p)?;
    let mut out = BTreeSet::new();
    let mut stack = vec![(lts.root, Vec::new())];
    while let Some((s, tr)) = stack.pop() {
        for (a, t) in &lts.succ[s] {
            let mut next = tr.clone();
            next.push(*a);
            stack.push((*t, next));
        }
        out.insert(tr);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::Action::{ABar, Tau, A};
    use crate::parse::parse_term;
    use crate::rules::Sync;

    fn labat() -> RuleSet {
        RuleSet::new(&[A, ABar, Tau], &[], &[Sync::AABar])
    }

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn par_steps() {
        let got = step(&labat(), &t("a.0 || a'.0")).unwrap();
        let expect = vec![
            (A, t("0 || a'.0")),
            (ABar, t("a.0 || 0")),
            (Tau, t("0 || 0")),
        ];
        assert_eq!(got.len(), 3);
        for e in expect {
            assert!(got.contains(&e), "{e:?}");
        }
    }

    #[test]
    fn f_steps_follow_flags() {
        let got = step(&labat(), &t("f(a.0, a'.0)")).unwrap();
        assert_eq!(got, vec![(A, t("0 || a'.0")), (Tau, t("0 || 0"))]);
        assert!(step(&labat(), &Term::Nil).unwrap().is_empty());
        assert!(step(&labat(), &t("x")).is_err());
    }

    #[test]
    fn lts_sizes() {
        let l = build_lts(&labat(), &t("a.0")).unwrap();
        assert_eq!((l.states.len(), l.num_transitions()), (2, 1));
        let l = build_lts(&labat(), &t("a.0 || a'.0")).unwrap();
        assert_eq!((l.states.len(), l.num_transitions()), (4, 5));
    }

    #[test]
    fn depth_norm_traces() {
        let rs = labat();
        assert_eq!(depth(&rs, &Term::Nil).unwrap(), 0);
        assert_eq!(norm(&rs, &Term::Nil).unwrap(), 0);
        assert_eq!(norm(&rs, &t("a.0 + a.a.0 + a.a.a.0")).unwrap(), 1);
        assert_eq!(depth(&rs, &t("a.0 + a.a.0 + a.a.a.0")).unwrap(), 3);
        assert_eq!(depth(&rs, &t("(a.0 + tau.tau.0) || a'.a.0")).unwrap(), 4);
        let tr = traces(&rs, &t("a.0 + tau.a'.0")).unwrap();
        assert_eq!(tr.len(), 4);
        assert_eq!(initials(&rs, &t("a.0 + tau.a'.0")).unwrap().len(), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let p = t("(a.0 + a'.0) || (a.0 + tau.0) || a.a.0");
        assert!(matches!(build_lts_capped(&labat(), &p, 3), Err(Error::StateCap { cap: 3 })));
    }
}
