//! Bisimilarity by signature-based partition refinement on the joint LTS,
//! with Hennessy-Milner distinguishing formulas for inequivalent roots.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::action::Action;
use crate::error::Result;
use crate::rules::RuleSet;
use crate::sos::{build_lts_joint, Lts, DEFAULT_STATE_CAP};
use crate::term::Term;

/// Hennessy-Milner formula. `Diamond(a, phis)` is `<a>(phi_1 & ... & phi_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Hml {
    True,
    Diamond(Action, Vec<Hml>),
    Not(Box<Hml>),
}

impl Hml {
    pub fn holds(&self, lts: &Lts, s: usize) -> bool {
        match self {
            Hml::True => true,
            Hml::Not(p) => !p.holds(lts, s),
            Hml::Diamond(a, phis) => lts.succ[s]
                .iter()
                .any(|(b, t)| a == b && phis.iter().all(|p| p.holds(lts, *t))),
        }
    }

    /// Number of modal operators on the longest branch.
    pub fn modal_depth(&self) -> usize {
        match self {
            Hml::True => 0,
            Hml::Not(p) => p.modal_depth(),
            Hml::Diamond(_, phis) => 1 + phis.iter().map(Hml::modal_depth).max().unwrap_or(0),
        }
    }
}

impl fmt::Display for Hml {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hml::True => f.write_str("tt"),
            Hml::Not(p) => write!(f, "!{p}"),
            Hml::Diamond(a, phis) => {
                write!(f, "<{a}>")?;
                match phis.as_slice() {
                    [] => f.write_str("tt"),
                    [p] => write!(f, "{p}"),
                    ps => {
                        f.write_str("(")?;
                        for (i, p) in ps.iter().enumerate() {
                            if i > 0 {
                                f.write_str(" & ")?;
                            }
                            write!(f, "{p}")?;
                        }
                        f.write_str(")")
                    }
                }
            }
        }
    }
}

impl Serialize for Hml {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Coarsest bisimulation on an LTS, with the block history of each round.
pub struct Refinement {
    /// `levels[k][s]` is the block of `s` after `k` rounds.
    pub levels: Vec<Vec<usize>>,
}

impl Refinement {
    pub fn run(lts: &Lts) -> Refinement {
        let n = lts.states.len();
        let mut levels = vec![vec![0usize; n]];
        let mut count = 1usize;
        loop {
            let cur = levels.last().expect("non-empty");
            let mut ids: HashMap<(usize, Vec<(Action, usize)>), usize> = HashMap::new();
            let mut next = Vec::with_capacity(n);
            for s in 0..n {
                let mut sig: Vec<(Action, usize)> =
                    lts.succ[s].iter().map(|(a, t)| (*a, cur[*t])).collect();
                sig.sort_unstable();
                sig.dedup();
                let fresh = ids.len();
                next.push(*ids.entry((cur[s], sig)).or_insert(fresh));
            }
            let new_count = ids.len();
            levels.push(next);
            if new_count == count {
                break;
            }
            count = new_count;
        }
        Refinement { levels }
    }

    pub fn blocks(&self) -> &[usize] {
        self.levels.last().expect("non-empty")
    }

    pub fn partition(&self) -> Vec<Vec<usize>> {
        let mut by: HashMap<usize, Vec<usize>> = HashMap::new();
        for (s, b) in self.blocks().iter().enumerate() {
            by.entry(*b).or_default().push(s);
        }
        let mut out: Vec<Vec<usize>> = by.into_values().collect();
        out.sort();
        out
    }

    fn split_level(&self, s: usize, t: usize) -> Option<usize> {
        (0..self.levels.len()).find(|&k| self.levels[k][s] != self.levels[k][t])
    }

    /// A formula true at `s` and false at `t`; `None` if they are bisimilar.
    pub fn distinguish(&self, lts: &Lts, s: usize, t: usize) -> Option<Hml> {
        let mut memo = HashMap::new();
        self.distinguish_memo(lts, s, t, &mut memo)
    }

    fn distinguish_memo(
        &self,
        lts: &Lts,
        s: usize,
        t: usize,
        memo: &mut HashMap<(usize, usize), Hml>,
    ) -> Option<Hml> {
        let k = self.split_level(s, t)?;
        if let Some(h) = memo.get(&(s, t)) {
            return Some(h.clone());
        }
        let prev = &self.levels[k - 1];
        let sig = |x: usize| -> BTreeSet<(Action, usize)> {
            lts.succ[x].iter().map(|(a, y)| (*a, prev[*y])).collect()
        };
        let (ss, ts) = (sig(s), sig(t));
        let h = if let Some(&(a, b)) = ss.difference(&ts).next() {
            let s2 = lts.succ[s]
                .iter()
                .find(|(c, y)| *c == a && prev[*y] == b)
                .map(|(_, y)| *y)
                .expect("signature witness");
            let mut phis = Vec::new();
            for (c, t2) in &lts.succ[t] {
                if *c == a {
                    let phi = self
                        .distinguish_memo(lts, s2, *t2, memo)
                        .expect("distinct blocks one level down");
                    if !phis.contains(&phi) {
                        phis.push(phi);
                    }
                }
            }
            Hml::Diamond(a, phis)
        } else {
            let inner = self.distinguish_memo(lts, t, s, memo).expect("asymmetric split");
            Hml::Not(Box::new(inner))
        };
        memo.insert((s, t), h.clone());
        Some(h)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BisimResult {
    pub equivalent: bool,
    /// Formula satisfied by the first process and not by the second.
    pub witness: Option<Hml>,
    /// Blocks of the coarsest bisimulation over the joint state space.
    pub partition: Option<Vec<Vec<String>>>,
    pub states: usize,
}

pub fn bisim_capped(rs: &RuleSet, p: &Term, q: &Term, cap: usize) -> Result<BisimResult> {
    let (lts, roots) = build_lts_joint(rs, &[p.clone(), q.clone()], cap)?;
    let refined = Refinement::run(&lts);
    let (rp, rq) = (roots[0], roots[1]);
    let equivalent = refined.blocks()[rp] == refined.blocks()[rq];
    let partition = equivalent.then(|| {
        refined
            .partition()
            .into_iter()
            .map(|b| b.into_iter().map(|s| lts.states[s].to_string()).collect())
            .collect()
    });
    Ok(BisimResult {
        equivalent,
        witness: refined.distinguish(&lts, rp, rq),
        partition,
        states: lts.states.len(),
    })
}

pub fn bisim(rs: &RuleSet, p: &Term, q: &Term) -> Result<BisimResult> {
    bisim_capped(rs, p, q, DEFAULT_STATE_CAP)
}
