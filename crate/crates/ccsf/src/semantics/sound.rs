//! Bounded soundness of open equations: every substitution of enumerated
//! synchronisation trees for the variables is checked.

use std::sync::Arc;

use serde::Serialize;

use crate::equation::Equation;
use crate::error::{Error, Result};
use crate::rules::RuleSet;
use crate::semantics::enumerate::SyncTreeEnumerator;
use crate::semantics::store::{Pid, Store};
use crate::term::{Substitution, Term};

const MATERIALISE_LIMIT: u128 = 2_000_000;
const TRUNCATE_EVERY: u128 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SoundVerdict {
    Refuted { substitution: Substitution, lhs: Term, rhs: Term },
    /// No counterexample among the first `checked` substitutions; `exhaustive`
    /// when that was all of them.
    NoCounterexample { checked: u128, exhaustive: bool },
}

impl SoundVerdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, SoundVerdict::Refuted { .. })
    }
}

#[derive(Serialize)]
struct VerdictJson<'a> {
    verdict: &'a str,
    substitution: Option<Vec<(String, String)>>,
    lhs: Option<String>,
    rhs: Option<String>,
    checked: Option<String>,
    exhaustive: Option<bool>,
}

impl Serialize for SoundVerdict {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SoundVerdict::Refuted { substitution, lhs, rhs } => VerdictJson {
                verdict: "refuted",
                substitution: Some(
                    substitution.iter().map(|(x, t)| (x.to_string(), t.to_string())).collect(),
                ),
                lhs: Some(lhs.to_string()),
                rhs: Some(rhs.to_string()),
                checked: None,
                exhaustive: None,
            },
            SoundVerdict::NoCounterexample { checked, exhaustive } => VerdictJson {
                verdict: "no-counterexample",
                substitution: None,
                lhs: None,
                rhs: None,
                checked: Some(checked.to_string()),
                exhaustive: Some(*exhaustive),
            },
        }
        .serialize(s)
    }
}

/// Number of substitutions `sound` would check, if representable.
pub fn substitution_count(eq: &Equation, enm: &SyncTreeEnumerator) -> Option<u128> {
    let n = enm.count()?;
    eq.vars().iter().try_fold(1u128, |acc, _| acc.checked_mul(n))
}

/// Exhaustive bounded soundness check.
pub fn sound(rs: &RuleSet, eq: &Equation, enm: &SyncTreeEnumerator) -> Result<SoundVerdict> {
    sound_bounded(rs, eq, enm, u128::MAX)
}

/// As [`sound`], stopping after `limit` substitutions.
pub fn sound_bounded(
    rs: &RuleSet,
    eq: &Equation,
    enm: &SyncTreeEnumerator,
    limit: u128,
) -> Result<SoundVerdict> {
    let mut store = Store::new();
    sound_in(&mut store, rs, eq, enm, limit)
}

/// As [`sound_bounded`], reusing `store` for interned trees.
pub fn sound_in(
    store: &mut Store,
    rs: &RuleSet,
    eq: &Equation,
    enm: &SyncTreeEnumerator,
    limit: u128,
) -> Result<SoundVerdict> {
    let vars: Vec<Arc<str>> = eq.vars().into_iter().collect();
    let n = enm
        .count()
        .ok_or_else(|| Error::TooLarge(format!("enumerator {enm:?} overflows")))?;
    let total = substitution_count(eq, enm);
    let trees: Option<Vec<Pid>> = if n <= MATERIALISE_LIMIT {
        Some(enm.pids(store, MATERIALISE_LIMIT)?)
    } else {
        None
    };
    let base = store.mark();
    let mut idx = vec![0u128; vars.len()];
    let mut checked: u128 = 0;
    loop {
        if checked >= limit {
            return Ok(SoundVerdict::NoCounterexample {
                checked,
                exhaustive: total == Some(checked),
            });
        }
        let mut env = Vec::with_capacity(vars.len());
        for (x, &i) in vars.iter().zip(&idx) {
            let p = match &trees {
                Some(v) => v[i as usize],
                None => enm.tree_pid(store, i)?,
            };
            env.push((x.clone(), p));
        }
        let l = store.eval_with(rs, &eq.lhs, &env)?;
        let r = store.eval_with(rs, &eq.rhs, &env)?;
        checked += 1;
        if l != r {
            let mut substitution = Substitution::new();
            for (x, &i) in vars.iter().zip(&idx) {
                substitution.insert_arc(x.clone(), enm.tree(i)?);
            }
            return Ok(SoundVerdict::Refuted {
                lhs: substitution.apply(&eq.lhs),
                rhs: substitution.apply(&eq.rhs),
                substitution,
            });
        }
        if checked % TRUNCATE_EVERY == 0 {
            store.truncate(base);
        }
        // Odometer, last variable fastest.
        let mut k = idx.len();
        loop {
            if k == 0 {
                return Ok(SoundVerdict::NoCounterexample { checked, exhaustive: true });
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < n {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Checks `eq` under a single closed substitution.
pub fn holds_under(rs: &RuleSet, eq: &Equation, s: &Substitution) -> Result<bool> {
    let mut store = Store::new();
    let l = store.eval(rs, &s.apply(&eq.lhs))?;
    let r = store.eval(rs, &s.apply(&eq.rhs))?;
    Ok(l == r)
}
