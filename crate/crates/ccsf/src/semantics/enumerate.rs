//! Exhaustive enumeration of synchronisation trees modulo bisimilarity.
//!
//! A tree of depth at most `d` is a set of at most `w` distinct moves
//! `(mu, child)`, each child a tree of depth at most `d - 1`. Since children
//! are themselves canonical, distinct sets are never bisimilar, so the
//! enumeration is duplicate-free by construction. Trees are ranked: index
//! `i` denotes the `i`-th tree in (width, colex) order, so any tree can be
//! produced without materialising its predecessors.

use serde::Serialize;

use crate::action::Action;
use crate::error::{Error, Result};
use crate::semantics::store::{Pid, Store};
use crate::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SyncTreeEnumerator {
    pub max_depth: usize,
    pub max_width: usize,
}

fn binom(n: u128, k: usize) -> Option<u128> {
    if (k as u128) > n {
        return Some(0);
    }
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

impl SyncTreeEnumerator {
    pub const DEFAULT: SyncTreeEnumerator = SyncTreeEnumerator { max_depth: 3, max_width: 3 };

    pub fn new(max_depth: usize, max_width: usize) -> SyncTreeEnumerator {
        SyncTreeEnumerator { max_depth, max_width }
    }

    /// Number of trees of depth at most `d`; `None` on overflow.
    pub fn count_at(&self, d: usize) -> Option<u128> {
        let mut n: u128 = 1;
        for _ in 0..d {
            let moves = n.checked_mul(3)?;
            let mut next: u128 = 0;
            for k in 0..=self.max_width {
                next = next.checked_add(binom(moves, k)?)?;
            }
            n = next;
        }
        Some(n)
    }

    pub fn count(&self) -> Option<u128> {
        self.count_at(self.max_depth)
    }

    /// Move indices `c_1 > ... > c_k` of the `rank`-th tree at depth `d`.
    fn unrank_moves(&self, d: usize, rank: u128) -> Vec<u128> {
        let moves = self.count_at(d - 1).expect("checked by caller") * 3;
        let mut r = rank;
        let mut k = 0;
        loop {
            let block = binom(moves, k).expect("checked by caller");
            if r < block {
                break;
            }
            r -= block;
            k += 1;
        }
        let mut out = Vec::with_capacity(k);
        let mut hi = moves;
        for i in (1..=k).rev() {
            // Largest c < hi with C(c, i) <= r.
            let (mut lo, mut up) = (i as u128 - 1, hi - 1);
            while lo < up {
                let mid = lo + (up - lo).div_ceil(2);
                if binom(mid, i).expect("bounded") <= r {
                    lo = mid;
                } else {
                    up = mid - 1;
                }
            }
            r -= binom(lo, i).expect("bounded");
            out.push(lo);
            hi = lo;
        }
        out
    }

    fn check_index(&self, index: u128) -> Result<()> {
        match self.count() {
            None => Err(Error::TooLarge(format!(
                "tree count for depth {} width {} overflows",
                self.max_depth, self.max_width
            ))),
            Some(n) if index >= n => Err(Error::TooLarge(format!("tree index {index} out of range {n}"))),
            Some(_) => Ok(()),
        }
    }

    fn tree_at(&self, d: usize, rank: u128) -> Term {
        if d == 0 {
            return Term::Nil;
        }
        let parts: Vec<Term> = self
            .unrank_moves(d, rank)
            .into_iter()
            .rev()
            .map(|c| Term::prefix(Action::ALL[(c % 3) as usize], self.tree_at(d - 1, c / 3)))
            .collect();
        Term::sum_all(parts)
    }

    fn pid_at(&self, store: &mut Store, d: usize, rank: u128) -> Pid {
        if d == 0 || rank == 0 {
            return Store::NIL;
        }
        let moves: Vec<(Action, Pid)> = self
            .unrank_moves(d, rank)
            .into_iter()
            .map(|c| (Action::ALL[(c % 3) as usize], self.pid_at(store, d - 1, c / 3)))
            .collect();
        store.intern(moves)
    }

    /// The `index`-th tree as a term.
    pub fn tree(&self, index: u128) -> Result<Term> {
        self.check_index(index)?;
        Ok(self.tree_at(self.max_depth, index))
    }

    /// The `index`-th tree interned in `store`.
    pub fn tree_pid(&self, store: &mut Store, index: u128) -> Result<Pid> {
        self.check_index(index)?;
        Ok(self.pid_at(store, self.max_depth, index))
    }

    /// All trees interned in `store`, refusing more than `limit`.
    pub fn pids(&self, store: &mut Store, limit: u128) -> Result<Vec<Pid>> {
        let n = self.count().filter(|n| *n <= limit).ok_or_else(|| {
            Error::TooLarge(format!(
                "depth {} width {} has {} trees, limit {limit}",
                self.max_depth,
                self.max_width,
                self.count().map_or("more than 2^128".to_string(), |n| n.to_string())
            ))
        })?;
        Ok((0..n).map(|i| self.pid_at(store, self.max_depth, i)).collect())
    }

    pub fn iter(&self) -> impl Iterator<Item = Term> + '_ {
        (0..self.count().unwrap_or(0)).map(move |i| self.tree_at(self.max_depth, i))
    }
}
