use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the three actions `a`, `a'` (the complement of `a`) and `tau`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Action {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "a'")]
    ABar,
    #[serde(rename = "tau")]
    Tau,
}

impl Action {
    pub const ALL: [Action; 3] = [Action::A, Action::ABar, Action::Tau];
    pub const VISIBLE: [Action; 2] = [Action::A, Action::ABar];

    /// Complement of a visible action; `None` for `tau`.
    pub fn complement(self) -> Option<Action> {
        match self {
            Action::A => Some(Action::ABar),
            Action::ABar => Some(Action::A),
            Action::Tau => None,
        }
    }

    /// Complement of a visible action. Panics on `tau`.
    pub fn bar(self) -> Action {
        self.complement().expect("tau has no complement")
    }

    pub fn is_visible(self) -> bool {
        self != Action::Tau
    }

    /// Whether `self` and `other` can synchronise in a parallel composition.
    pub fn is_complementary(self, other: Action) -> bool {
        self.complement() == Some(other)
    }

    /// The action under the renaming that swaps `a` and `a'`.
    pub fn rename(self) -> Action {
        match self {
            Action::A => Action::ABar,
            Action::ABar => Action::A,
            Action::Tau => Action::Tau,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Action::A => "a",
            Action::ABar => "a'",
            Action::Tau => "tau",
        }
    }

    pub fn from_name(s: &str) -> Option<Action> {
        match s {
            "a" => Some(Action::A),
            "a'" => Some(Action::ABar),
            "tau" => Some(Action::Tau),
            _ => None,
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_is_an_involution_on_visible_actions() {
        for a in Action::VISIBLE {
            assert_eq!(a.bar().bar(), a);
            assert_ne!(a.bar(), a);
        }
        assert_eq!(Action::A.complement(), Some(Action::ABar));
        assert_eq!(Action::Tau.complement(), None);
    }

    #[test]
    fn names_round_trip() {
        for a in Action::ALL {
            assert_eq!(Action::from_name(a.name()), Some(a));
        }
        assert_eq!(Action::from_name("b"), None);
    }

    #[test]
    fn serde_uses_surface_names() {
        let s = serde_json::to_string(&Action::ABar).unwrap();
        assert_eq!(s, "\"a'\"");
        let back: Action = serde_json::from_str("\"tau\"").unwrap();
        assert_eq!(back, Action::Tau);
    }
}
