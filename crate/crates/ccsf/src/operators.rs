//! The space of admissible rule sets, their distributivity class and the
//! witness family that applies to each.

use std::fmt;

use serde::Serialize;

use crate::action::Action;
use crate::rules::{RuleSet, Sync};

/// Number of admissible operators over `n` complementary action pairs.
pub fn operator_count(n: u32) -> u128 {
    3u128.pow(3 * n + 1)
}

/// Which arguments an action may move in: L only, R only, or both.
const SIDES: [(bool, bool); 3] = [(true, false), (false, true), (true, true)];
const SYNCS: [&[Sync]; 3] = [&[Sync::AABar], &[Sync::ABarA], &[Sync::AABar, Sync::ABarA]];

/// All admissible rule sets, in a fixed order: `a`'s sides vary slowest,
/// then `a'`, then `tau`, then the sync choice.
pub fn enumerate_admissible() -> Vec<RuleSet> {
    let mut out = Vec::with_capacity(81);
    for sa in SIDES {
        for sb in SIDES {
            for st in SIDES {
                for sync in SYNCS {
                    let pick = |f: fn(&(bool, bool)) -> bool| -> Vec<Action> {
                        [(Action::A, sa), (Action::ABar, sb), (Action::Tau, st)]
                            .into_iter()
                            .filter(|(_, s)| f(s))
                            .map(|(a, _)| a)
                            .collect()
                    };
                    out.push(RuleSet::new(&pick(|s| s.0), &pick(|s| s.1), sync));
                }
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Distributivity {
    First,
    Second,
    Neither,
}

/// `f` distributes over `+` in an argument iff every rule tests that
/// argument: no right rules for the first, no left rules for the second.
pub fn classify_distributivity(rs: &RuleSet) -> Distributivity {
    if rs.right().is_empty() {
        Distributivity::First
    } else if rs.left().is_empty() {
        Distributivity::Second
    } else {
        Distributivity::Neither
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ClassTag {
    RenamingOfPar,
    DistributesFirst,
    DistributesSecond,
    NonDistributive,
}

/// The five witness families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    Labat,
    LaRa,
    LaRbaSync,
    LaRbaNosync,
    Ltau,
}

impl Family {
    pub const ALL: [Family; 5] =
        [Family::Labat, Family::LaRa, Family::LaRbaSync, Family::LaRbaNosync, Family::Ltau];

    pub fn name(self) -> &'static str {
        match self {
            Family::Labat => "labat",
            Family::LaRa => "lara",
            Family::LaRbaSync => "larba-sync",
            Family::LaRbaNosync => "larba-nosync",
            Family::Ltau => "ltau",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Case {
    Canonical(Family),
    /// The family applies to the mirrored rule set; witnesses get their
    /// `f`-arguments swapped.
    SymmetricVariant(Family),
    HennessyLike,
    Unassigned,
}

impl Case {
    pub fn family(self) -> Option<(Family, bool)> {
        match self {
            Case::Canonical(f) => Some((f, false)),
            Case::SymmetricVariant(f) => Some((f, true)),
            _ => None,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::Canonical(x) => f.write_str(x.name()),
            Case::SymmetricVariant(x) => write!(f, "symmetric-{}", x.name()),
            Case::HennessyLike => f.write_str("hennessy-like"),
            Case::Unassigned => f.write_str("unassigned"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OperatorClass {
    pub tag: ClassTag,
    pub case: Case,
    /// The visible action the family is instantiated with, in the frame of
    /// the canonical (unmirrored) rule set.
    pub alpha: Option<Action>,
    pub diagnostic: Option<String>,
}

fn both(rs: &RuleSet, a: Action) -> bool {
    rs.has_left(a) && rs.has_right(a)
}

fn left_only(rs: &RuleSet, a: Action) -> bool {
    rs.has_left(a) && !rs.has_right(a)
}

fn right_only(rs: &RuleSet, a: Action) -> bool {
    rs.has_right(a) && !rs.has_left(a)
}

fn single_sync(rs: &RuleSet) -> Option<Sync> {
    match rs.sync().as_slice() {
        [s] => Some(*s),
        _ => None,
    }
}

fn non_distributive_case(rs: &RuleSet) -> Option<(Case, Action)> {
    if let Some(alpha) = Action::VISIBLE.into_iter().find(|a| both(rs, *a)) {
        return Some((Case::Canonical(Family::LaRa), alpha));
    }
    if let Some(alpha) = Action::VISIBLE
        .into_iter()
        .find(|a| left_only(rs, *a) && right_only(rs, a.bar()))
    {
        let fam = if rs.has_sync(Sync::led_by(alpha)) {
            Family::LaRbaSync
        } else {
            Family::LaRbaNosync
        };
        return Some((Case::Canonical(fam), alpha));
    }
    let (a, b) = (Action::A, Action::ABar);
    if right_only(rs, a) && right_only(rs, b) && rs.has_left(Action::Tau) {
        return Some((Case::Canonical(Family::Ltau), Action::A));
    }
    if left_only(rs, a) && left_only(rs, b) && rs.has_right(Action::Tau) {
        return Some((Case::SymmetricVariant(Family::Ltau), Action::A));
    }
    None
}

/// Assigns a rule set to its witness family.
///
/// Clause order: renaming of `||`, one-argument distributivity (Hennessy-like
/// with both syncs, else the all-left family or its mirror), then for
/// non-distributive operators: some visible action on both sides, visible
/// actions on opposite sides, both visible actions on the right with `tau`
/// on the left, and that configuration mirrored.
pub fn dispatch(rs: &RuleSet) -> OperatorClass {
    let all = Action::ALL;
    let renaming = all.iter().all(|a| both(rs, *a)) && rs.sync().len() == 2;
    let dist = classify_distributivity(rs);
    let tag = if renaming {
        ClassTag::RenamingOfPar
    } else {
        match dist {
            Distributivity::First => ClassTag::DistributesFirst,
            Distributivity::Second => ClassTag::DistributesSecond,
            Distributivity::Neither => ClassTag::NonDistributive,
        }
    };
    let (case, alpha) = match dist {
        Distributivity::First | Distributivity::Second => match single_sync(rs) {
            None => (Case::HennessyLike, None),
            Some(s) if dist == Distributivity::First => (Case::Canonical(Family::Labat), Some(s.first())),
            Some(s) => (Case::SymmetricVariant(Family::Labat), Some(s.flip().first())),
        },
        Distributivity::Neither => match non_distributive_case(rs) {
            Some((c, a)) => (c, Some(a)),
            None => (Case::Unassigned, None),
        },
    };
    let diagnostic = (case == Case::Unassigned).then(|| format!("no dispatch clause fires for {rs}"));
    OperatorClass { tag, case, alpha, diagnostic }
}

/// One line of the enumeration listing: the rule set's wire encoding
/// followed by its classification, with keys in sorted order.
pub fn enumeration_line(rs: &RuleSet) -> String {
    let class = dispatch(rs);
    let line = serde_json::json!({
        "left": rs.left(),
        "right": rs.right(),
        "sync": rs.sync(),
        "tag": class.tag,
        "distributes": classify_distributivity(rs),
        "case": class.case.to_string(),
        "alpha": class.alpha,
    });
    line.to_string()
}

/// Representative rule set for each family, instantiated with `alpha = a`.
pub fn representative(family: Family) -> RuleSet {
    use Action::{ABar, Tau, A};
    match family {
        Family::Labat => RuleSet::new(&[A, ABar, Tau], &[], &[Sync::AABar]),
        Family::LaRa => RuleSet::new(&[A, Tau], &[A, ABar], &[Sync::AABar]),
        Family::LaRbaSync => RuleSet::new(&[A, Tau], &[ABar], &[Sync::AABar]),
        Family::LaRbaNosync => RuleSet::new(&[A, Tau], &[ABar], &[Sync::ABarA]),
        Family::Ltau => RuleSet::new(&[Tau], &[A, ABar], &[Sync::AABar]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::Action::{ABar, Tau, A};
    use std::collections::{HashMap, HashSet};

    #[test]
    fn eighty_one_distinct_admissible_operators() {
        let all = enumerate_admissible();
        assert_eq!(all.len(), 81);
        assert_eq!(operator_count(1), 81);
        assert!(all.iter().all(RuleSet::is_admissible));
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), 81);
        let admissible_by_brute_force = (0..=255u8)
            .map(RuleSet::from_code)
            .filter(RuleSet::is_admissible)
            .count();
        assert_eq!(admissible_by_brute_force, 81);
    }

    #[test]
    fn distributivity_examples() {
        let rs = RuleSet::new(&[A, ABar, Tau], &[], &[Sync::AABar]);
        assert_eq!(classify_distributivity(&rs), Distributivity::First);
        let rs = RuleSet::new(&[A, Tau], &[A, ABar], &[Sync::AABar]);
        assert_eq!(classify_distributivity(&rs), Distributivity::Neither);
        assert_eq!(classify_distributivity(&rs.mirror().mirror()), Distributivity::Neither);
        let rs = RuleSet::new(&[], &[A, ABar, Tau], &[Sync::ABarA]);
        assert_eq!(classify_distributivity(&rs), Distributivity::Second);
    }

    #[test]
    fn dispatch_examples() {
        let labat = dispatch(&RuleSet::new(&[A, ABar, Tau], &[], &[Sync::AABar]));
        assert_eq!(labat.case, Case::Canonical(Family::Labat));
        assert_eq!(labat.alpha, Some(A));
        let lara = dispatch(&RuleSet::new(&[A], &[A, ABar, Tau], &[Sync::ABarA]));
        assert_eq!(lara.case, Case::Canonical(Family::LaRa));
        for extra in [&[][..], &[Tau][..]] {
            let mut right = vec![A, ABar];
            right.extend_from_slice(extra);
            for sync in SYNCS {
                let c = dispatch(&RuleSet::new(&[Tau], &right, sync));
                assert_eq!(c.case, Case::Canonical(Family::Ltau));
            }
        }
        let par = dispatch(&RuleSet::new(&Action::ALL, &Action::ALL, &Sync::ALL));
        assert_eq!(par.tag, ClassTag::RenamingOfPar);
    }

    #[test]
    fn dispatch_covers_everything_with_expected_counts() {
        let mut counts: HashMap<String, usize> = HashMap::new();
        for rs in enumerate_admissible() {
            let c = dispatch(&rs);
            assert_ne!(c.case, Case::Unassigned, "{rs}");
            *counts.entry(c.case.to_string()).or_default() += 1;
        }
        assert_eq!(counts["labat"], 2);
        assert_eq!(counts["symmetric-labat"], 2);
        assert_eq!(counts["hennessy-like"], 2);
        assert_eq!(counts["lara"], 45);
        assert_eq!(counts["larba-sync"] + counts["larba-nosync"], 18);
        assert_eq!(counts["ltau"], 6);
        assert_eq!(counts["symmetric-ltau"], 6);
    }

    #[test]
    fn dispatch_commutes_with_mirror_and_renaming() {
        for rs in enumerate_admissible() {
            let c = dispatch(&rs);
            let m = dispatch(&rs.mirror());
            let expected = match c.case {
                Case::Canonical(f @ (Family::Labat | Family::Ltau)) => Case::SymmetricVariant(f),
                Case::SymmetricVariant(f) => Case::Canonical(f),
                other => other,
            };
            assert_eq!(m.case, expected, "{rs}");
            let r = dispatch(&rs.rename());
            assert_eq!(r.case, c.case, "{rs}");
            let tie = matches!(c.case, Case::Canonical(Family::LaRa | Family::Ltau) | Case::SymmetricVariant(Family::Ltau));
            if !tie {
                assert_eq!(r.alpha, c.alpha.map(Action::rename), "{rs}");
            }
        }
    }

    #[test]
    fn representatives_dispatch_to_their_family() {
        for f in Family::ALL {
            assert_eq!(dispatch(&representative(f)).case, Case::Canonical(f));
        }
    }
}
