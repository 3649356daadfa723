//! Primality and prime decomposition with respect to `||`.
//!
//! Every finite process can run its second component to a deadlock, so a
//! factor `q` of `p ~ q || r` is bisimilar to a derivative of `p`. Candidate
//! factors are therefore the reachable classes of `p`; the enumerator-based
//! search is kept as an independent check.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::rules::RuleSet;
use crate::semantics::enumerate::SyncTreeEnumerator;
use crate::semantics::store::{Pid, Store};
use crate::term::Term;

/// All unordered pairs `(q, r)`, `q <= r`, of non-nil classes with
/// `q || r ~ p`.
pub fn factorizations(store: &mut Store, p: Pid) -> Vec<(Pid, Pid)> {
    let d = store.depth(p);
    let cands: Vec<Pid> = store
        .reachable(p)
        .into_iter()
        .filter(|&q| q != Store::NIL && q != p)
        .collect();
    let mut out = Vec::new();
    for (i, &q) in cands.iter().enumerate() {
        for &r in &cands[i..] {
            if store.depth(q) + store.depth(r) == d && store.par(q, r) == p {
                out.push((q, r));
            }
        }
    }
    out
}

pub fn is_prime_pid(store: &mut Store, p: Pid) -> bool {
    p != Store::NIL && factorizations(store, p).is_empty()
}

/// A multiset of primes whose composition is `p`, sorted by id.
pub fn decompose_pid(store: &mut Store, p: Pid) -> Vec<Pid> {
    if p == Store::NIL {
        return Vec::new();
    }
    match factorizations(store, p).first() {
        None => vec![p],
        Some(&(q, r)) => {
            let mut v = decompose_pid(store, q);
            v.extend(decompose_pid(store, r));
            v.sort_unstable();
            v
        }
    }
}

/// Every prime multiset reachable by splitting along all factorizations.
pub fn all_decompositions(store: &mut Store, p: Pid) -> BTreeSet<Vec<Pid>> {
    let mut memo = HashMap::new();
    all_decompositions_memo(store, p, &mut memo)
}

fn all_decompositions_memo(
    store: &mut Store,
    p: Pid,
    memo: &mut HashMap<Pid, BTreeSet<Vec<Pid>>>,
) -> BTreeSet<Vec<Pid>> {
    if let Some(s) = memo.get(&p) {
        return s.clone();
    }
    let mut out = BTreeSet::new();
    if p == Store::NIL {
        out.insert(Vec::new());
    } else {
        let fs = factorizations(store, p);
        if fs.is_empty() {
            out.insert(vec![p]);
        }
        for (q, r) in fs {
            let (dq, dr) = (
                all_decompositions_memo(store, q, memo),
                all_decompositions_memo(store, r, memo),
            );
            for a in &dq {
                for b in &dr {
                    let mut v = a.clone();
                    v.extend(b);
                    v.sort_unstable();
                    out.insert(v);
                }
            }
        }
    }
    memo.insert(p, out.clone());
    out
}

fn check_depth(store: &Store, p: Pid, enm: &SyncTreeEnumerator) -> Result<()> {
    let depth = store.depth(p);
    if depth > enm.max_depth {
        Err(Error::DepthBound { depth, bound: enm.max_depth })
    } else {
        Ok(())
    }
}

/// `p` is not bisimilar to `0` and has no non-trivial factorisation.
pub fn is_prime(rs: &RuleSet, p: &Term, enm: &SyncTreeEnumerator) -> Result<bool> {
    let mut store = Store::new();
    let id = store.eval(rs, p)?;
    check_depth(&store, id, enm)?;
    Ok(is_prime_pid(&mut store, id))
}

/// Prime factors of `p`, as synchronisation trees.
pub fn prime_decompose(rs: &RuleSet, p: &Term, enm: &SyncTreeEnumerator) -> Result<Vec<Term>> {
    let mut store = Store::new();
    let id = store.eval(rs, p)?;
    check_depth(&store, id, enm)?;
    Ok(decompose_pid(&mut store, id).into_iter().map(|q| store.to_term(q)).collect())
}

/// Primality by trying every pair of enumerated trees as factors.
pub fn is_prime_exhaustive(rs: &RuleSet, p: &Term, enm: &SyncTreeEnumerator) -> Result<bool> {
    let mut store = Store::new();
    let id = store.eval(rs, p)?;
    check_depth(&store, id, enm)?;
    if id == Store::NIL {
        return Ok(false);
    }
    let d = store.depth(id);
    let trees = enm.pids(&mut store, 5_000_000)?;
    for (i, &q) in trees.iter().enumerate() {
        if q == Store::NIL || store.depth(q) >= d {
            continue;
        }
        for &r in &trees[i..] {
            if r != Store::NIL && store.depth(q) + store.depth(r) == d && store.par(q, r) == id {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
