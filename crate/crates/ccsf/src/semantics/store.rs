//! Hash-consed synchronisation trees modulo bisimilarity.
//!
//! A node is the sorted, duplicate-free set of its `(action, child)` moves,
//! children being node ids. Two finite processes are bisimilar iff they
//! intern to the same id. Operators are evaluated compositionally, which is
//! sound because bisimilarity is a congruence for de Simone operators.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::action::Action;
use crate::error::{Error, Result};
use crate::rules::RuleSet;
use crate::term::Term;

pub type Pid = u32;

#[derive(Clone, Debug)]
pub struct Store {
    nodes: Vec<Box<[(Action, Pid)]>>,
    depth: Vec<u32>,
    index: HashMap<Box<[(Action, Pid)]>, Pid>,
    par_memo: HashMap<(Pid, Pid), Pid>,
}

impl Default for Store {
    fn default() -> Store {
        Store::new()
    }
}

impl Store {
    pub const NIL: Pid = 0;

    pub fn new() -> Store {
        let mut s = Store {
            nodes: Vec::new(),
            depth: Vec::new(),
            index: HashMap::new(),
            par_memo: HashMap::new(),
        };
        s.intern(Vec::new());
        s
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn moves(&self, p: Pid) -> &[(Action, Pid)] {
        &self.nodes[p as usize]
    }

    pub fn depth(&self, p: Pid) -> usize {
        self.depth[p as usize] as usize
    }

    pub fn intern(&mut self, mut moves: Vec<(Action, Pid)>) -> Pid {
        moves.sort_unstable();
        moves.dedup();
        let key = moves.into_boxed_slice();
        if let Some(&id) = self.index.get(&key) {
            return id;
        }
        let id = self.nodes.len() as Pid;
        let d = key.iter().map(|(_, c)| self.depth[*c as usize] + 1).max().unwrap_or(0);
        self.index.insert(key.clone(), id);
        self.nodes.push(key);
        self.depth.push(d);
        id
    }

    /// Number of nodes; everything interned later can be dropped with
    /// [`Store::truncate`].
    pub fn mark(&self) -> usize {
        self.nodes.len()
    }

    /// Forgets every node created after `mark` and clears the memo table.
    pub fn truncate(&mut self, mark: usize) {
        for key in self.nodes.drain(mark..) {
            self.index.remove(&key);
        }
        self.depth.truncate(mark);
        self.par_memo.clear();
    }

    pub fn prefix(&mut self, a: Action, p: Pid) -> Pid {
        self.intern(vec![(a, p)])
    }

    pub fn sum(&mut self, p: Pid, q: Pid) -> Pid {
        if p == q || q == Store::NIL {
            return p;
        }
        if p == Store::NIL {
            return q;
        }
        let mut v = self.moves(p).to_vec();
        v.extend_from_slice(self.moves(q));
        self.intern(v)
    }

    pub fn sum_all(&mut self, ps: &[Pid]) -> Pid {
        let v: Vec<(Action, Pid)> = ps.iter().flat_map(|p| self.moves(*p).to_vec()).collect();
        self.intern(v)
    }

    pub fn par(&mut self, p: Pid, q: Pid) -> Pid {
        if q == Store::NIL {
            return p;
        }
        if p == Store::NIL {
            return q;
        }
        let key = if p <= q { (p, q) } else { (q, p) };
        if let Some(&r) = self.par_memo.get(&key) {
            return r;
        }
        let (pm, qm) = (self.moves(p).to_vec(), self.moves(q).to_vec());
        let mut v = Vec::with_capacity(pm.len() + qm.len());
        for &(a, p2) in &pm {
            v.push((a, self.par(p2, q)));
        }
        for &(b, q2) in &qm {
            v.push((b, self.par(p, q2)));
        }
        for &(a, p2) in &pm {
            for &(b, q2) in &qm {
                if a.is_complementary(b) {
                    v.push((Action::Tau, self.par(p2, q2)));
                }
            }
        }
        let r = self.intern(v);
        self.par_memo.insert(key, r);
        r
    }

    pub fn f(&mut self, rs: &RuleSet, p: Pid, q: Pid) -> Pid {
        let (pm, qm) = (self.moves(p).to_vec(), self.moves(q).to_vec());
        let mut v = Vec::new();
        for &(a, p2) in &pm {
            if rs.has_left(a) {
                v.push((a, self.par(p2, q)));
            }
        }
        for &(b, q2) in &qm {
            if rs.has_right(b) {
                v.push((b, self.par(p, q2)));
            }
        }
        for &(a, p2) in &pm {
            for &(b, q2) in &qm {
                if rs.syncs(a, b) {
                    v.push((Action::Tau, self.par(p2, q2)));
                }
            }
        }
        self.intern(v)
    }

    /// Evaluates a term whose variables are bound by `env`.
    pub fn eval_with(&mut self, rs: &RuleSet, t: &Term, env: &[(Arc<str>, Pid)]) -> Result<Pid> {
        Ok(match t {
            Term::Nil => Store::NIL,
            Term::Var(x) => env
                .iter()
                .find(|(y, _)| y == x)
                .map(|(_, p)| *p)
                .ok_or_else(|| Error::OpenTerm(t.to_string()))?,
            Term::Prefix(a, u) => {
                let p = self.eval_with(rs, u, env)?;
                self.prefix(*a, p)
            }
            Term::Sum(l, r) => {
                let (p, q) = (self.eval_with(rs, l, env)?, self.eval_with(rs, r, env)?);
                self.sum(p, q)
            }
            Term::Par(l, r) => {
                let (p, q) = (self.eval_with(rs, l, env)?, self.eval_with(rs, r, env)?);
                self.par(p, q)
            }
            Term::F(l, r) => {
                let (p, q) = (self.eval_with(rs, l, env)?, self.eval_with(rs, r, env)?);
                self.f(rs, p, q)
            }
        })
    }

    pub fn eval(&mut self, rs: &RuleSet, t: &Term) -> Result<Pid> {
        self.eval_with(rs, t, &[])
    }

    /// Length of a shortest maximal trace.
    pub fn norm(&self, p: Pid) -> usize {
        let mut memo = HashMap::new();
        self.norm_memo(p, &mut memo)
    }

    fn norm_memo(&self, p: Pid, memo: &mut HashMap<Pid, usize>) -> usize {
        if let Some(&n) = memo.get(&p) {
            return n;
        }
        let n = self
            .moves(p)
            .iter()
            .map(|(_, c)| self.norm_memo(*c, memo) + 1)
            .min()
            .unwrap_or(0);
        memo.insert(p, n);
        n
    }

    /// Initial actions.
    pub fn initials(&self, p: Pid) -> BTreeSet<Action> {
        self.moves(p).iter().map(|(a, _)| *a).collect()
    }

    /// All ids reachable from `p`, including `p`.
    pub fn reachable(&self, p: Pid) -> BTreeSet<Pid> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![p];
        while let Some(q) = stack.pop() {
            if seen.insert(q) {
                stack.extend(self.moves(q).iter().map(|(_, c)| *c));
            }
        }
        seen
    }

    /// A synchronisation tree in the bisimilarity class of `p`; summands are
    /// in canonical order.
    pub fn to_term(&self, p: Pid) -> Term {
        let parts: Vec<Term> = self
            .moves(p)
            .iter()
            .map(|(a, c)| Term::prefix(*a, self.to_term(*c)))
            .collect();
        Term::sum_all(parts).canon()
    }
}
