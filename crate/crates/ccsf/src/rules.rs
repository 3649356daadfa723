//! Rule sets for `f`: which actions each argument may perform on its own,
//! and which synchronisation rules are present.
//!
//! Targets are fixed: a left move of `f(x1,x2)` goes to `y1 || x2`, a right
//! move to `x1 || y2`, a synchronisation to `y1 || y2`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::action::Action;
use crate::error::{Error, Result};

/// A synchronisation rule: `AABar` is S_{a,a'} (first argument does `a`,
/// second does `a'`), `ABarA` is S_{a',a}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sync {
    #[serde(rename = "a/a'")]
    AABar,
    #[serde(rename = "a'/a")]
    ABarA,
}

impl Sync {
    pub const ALL: [Sync; 2] = [Sync::AABar, Sync::ABarA];

    /// The sync whose first component is `alpha`.
    pub fn led_by(alpha: Action) -> Sync {
        match alpha {
            Action::A => Sync::AABar,
            Action::ABar => Sync::ABarA,
            Action::Tau => panic!("tau does not synchronise"),
        }
    }

    /// Action of the first argument.
    pub fn first(self) -> Action {
        match self {
            Sync::AABar => Action::A,
            Sync::ABarA => Action::ABar,
        }
    }

    pub fn flip(self) -> Sync {
        match self {
            Sync::AABar => Sync::ABarA,
            Sync::ABarA => Sync::AABar,
        }
    }

    fn bit(self) -> u8 {
        match self {
            Sync::AABar => 1,
            Sync::ABarA => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Sync::AABar => "a/a'",
            Sync::ABarA => "a'/a",
        }
    }
}

/// A clause of admissibility that a rule set fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    ActionWithoutRule(Action),
    NoSync,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ActionWithoutRule(a) => write!(f, "{a} has no rule"),
            Violation::NoSync => f.write_str("no sync rule"),
        }
    }
}

/// Flags L_mu, R_mu and S_{alpha,alpha'} packed as bit sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleSet {
    left: u8,
    right: u8,
    sync: u8,
}

fn mask(actions: &[Action]) -> u8 {
    actions.iter().fold(0, |m, a| m | (1 << a.index()))
}

fn unmask(m: u8) -> Vec<Action> {
    Action::ALL.into_iter().filter(|a| m & (1 << a.index()) != 0).collect()
}

impl RuleSet {
    pub fn new(left: &[Action], right: &[Action], sync: &[Sync]) -> RuleSet {
        RuleSet {
            left: mask(left),
            right: mask(right),
            sync: sync.iter().fold(0, |m, s| m | s.bit()),
        }
    }

    pub fn has_left(&self, a: Action) -> bool {
        self.left & (1 << a.index()) != 0
    }

    pub fn has_right(&self, a: Action) -> bool {
        self.right & (1 << a.index()) != 0
    }

    pub fn has_sync(&self, s: Sync) -> bool {
        self.sync & s.bit() != 0
    }

    /// Whether `f` synchronises a first-argument `x` with a second-argument `y`.
    pub fn syncs(&self, x: Action, y: Action) -> bool {
        match (x, y) {
            (Action::A, Action::ABar) => self.has_sync(Sync::AABar),
            (Action::ABar, Action::A) => self.has_sync(Sync::ABarA),
            _ => false,
        }
    }

    pub fn left(&self) -> Vec<Action> {
        unmask(self.left)
    }

    pub fn right(&self) -> Vec<Action> {
        unmask(self.right)
    }

    pub fn sync(&self) -> Vec<Sync> {
        Sync::ALL.into_iter().filter(|s| self.has_sync(*s)).collect()
    }

    /// Compact code, unique per rule set.
    pub fn code(&self) -> u8 {
        self.left | (self.right << 3) | (self.sync << 6)
    }

    pub fn from_code(code: u8) -> RuleSet {
        RuleSet { left: code & 7, right: (code >> 3) & 7, sync: code >> 6 }
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out: Vec<Violation> = Action::ALL
            .into_iter()
            .filter(|a| !self.has_left(*a) && !self.has_right(*a))
            .map(Violation::ActionWithoutRule)
            .collect();
        if self.sync == 0 {
            out.push(Violation::NoSync);
        }
        out
    }

    /// Admissibility: every action has a rule and some sync rule exists.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }

    pub fn is_admissible(&self) -> bool {
        self.violations().is_empty()
    }

    /// The rule set of `f'(x,y) = f(y,x)`: L and R swapped, syncs flipped.
    pub fn mirror(&self) -> RuleSet {
        RuleSet {
            left: self.right,
            right: self.left,
            sync: ((self.sync & 1) << 1) | ((self.sync >> 1) & 1),
        }
    }

    /// The rule set under the `a <-> a'` renaming.
    pub fn rename(&self) -> RuleSet {
        let swap = |m: u8| (m & 4) | ((m & 1) << 1) | ((m >> 1) & 1);
        RuleSet {
            left: swap(self.left),
            right: swap(self.right),
            sync: ((self.sync & 1) << 1) | ((self.sync >> 1) & 1),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&RuleSetJson::from(*self)).expect("rule set serialises")
    }

    pub fn from_json(src: &str) -> Result<RuleSet> {
        let j: RuleSetJson = serde_json::from_str(src).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Ok(RuleSet::new(&j.left, &j.right, &j.sync))
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = |v: Vec<Action>| v.iter().map(|a| a.name()).collect::<Vec<_>>().join(",");
        let syncs = self.sync().iter().map(|s| s.name()).collect::<Vec<_>>().join(",");
        write!(f, "L{{{}}} R{{{}}} S{{{}}}", names(self.left()), names(self.right()), syncs)
    }
}

/// Wire format: `{"left": [..], "right": [..], "sync": [..]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleSetJson {
    pub left: Vec<Action>,
    pub right: Vec<Action>,
    pub sync: Vec<Sync>,
}

impl From<RuleSet> for RuleSetJson {
    fn from(rs: RuleSet) -> RuleSetJson {
        RuleSetJson { left: rs.left(), right: rs.right(), sync: rs.sync() }
    }
}

impl Serialize for RuleSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RuleSetJson::from(*self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RuleSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<RuleSet, D::Error> {
        let j = RuleSetJson::deserialize(d)?;
        Ok(RuleSet::new(&j.left, &j.right, &j.sync))
    }
}
