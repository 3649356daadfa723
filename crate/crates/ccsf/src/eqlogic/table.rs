//! The shipped axiom groups and the rule sets each group is stated for.
//! Files are written with `alpha = a`; the `alpha = a'` reading is obtained
//! by renaming both the axioms and the rule sets.

use crate::action::Action::{self, ABar, Tau, A};
use crate::eqlogic::AxiomSystem;
use crate::operators::enumerate_admissible;
use crate::rules::{RuleSet, Sync};

macro_rules! file {
    ($name:literal) => {
        ($name, include_str!(concat!("../../axioms/", $name)))
    };
}

/// Every shipped axiom file, by name.
pub const FILES: &[(&str, &str)] = &[
    file!("a1-a4.axioms"),
    file!("f-common.axioms"),
    file!("catalogue.axioms"),
    file!("lall-rnone.axioms"),
    file!("lnone-rall.axioms"),
    file!("lall-ra.axioms"),
    file!("lall-rb.axioms"),
    file!("lall-rt.axioms"),
    file!("la-rall.axioms"),
    file!("lb-rall.axioms"),
    file!("lt-rall.axioms"),
    file!("lall-rab.axioms"),
    file!("lall-rat.axioms"),
    file!("lall-rbt.axioms"),
    file!("lab-rall.axioms"),
    file!("lat-rall.axioms"),
    file!("lbt-rall.axioms"),
    file!("lat-rb-sab.axioms"),
    file!("lat-rb-sba.axioms"),
    file!("lat-rab.axioms"),
    file!("lat-rbt-sab.axioms"),
    file!("lat-rbt-sba.axioms"),
    file!("lb-rat-sba.axioms"),
    file!("lb-rat-sab.axioms"),
    file!("lab-rat.axioms"),
    file!("lbt-rat-sab.axioms"),
    file!("lbt-rat-sba.axioms"),
    file!("la-rbt-sab.axioms"),
    file!("la-rbt-sba.axioms"),
    file!("lt-rab.axioms"),
    file!("lbt-ra-sba.axioms"),
    file!("lbt-ra-sab.axioms"),
    file!("lab-rt.axioms"),
    file!("lab-rbt.axioms"),
    file!("lbt-rab.axioms"),
];

pub fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// An axiom group together with the rule availability it assumes.
#[derive(Clone, Copy, Debug)]
pub struct Heading {
    pub file: &'static str,
    pub left: &'static [Action],
    pub right: &'static [Action],
    /// `None`: every sync choice.
    pub sync: Option<Sync>,
}

const ALL: &[Action] = &[A, ABar, Tau];

macro_rules! heading {
    ($f:literal, $l:expr, $r:expr, $s:expr) => {
        Heading { file: $f, left: $l, right: $r, sync: $s }
    };
}

pub const HEADINGS: &[Heading] = &[
    heading!("lall-rnone.axioms", ALL, &[], None),
    heading!("lnone-rall.axioms", &[], ALL, None),
    heading!("lall-ra.axioms", ALL, &[A], None),
    heading!("lall-rb.axioms", ALL, &[ABar], None),
    heading!("lall-rt.axioms", ALL, &[Tau], None),
    heading!("la-rall.axioms", &[A], ALL, None),
    heading!("lb-rall.axioms", &[ABar], ALL, None),
    heading!("lt-rall.axioms", &[Tau], ALL, None),
    heading!("lall-rab.axioms", ALL, &[A, ABar], None),
    heading!("lall-rat.axioms", ALL, &[A, Tau], None),
    heading!("lall-rbt.axioms", ALL, &[ABar, Tau], None),
    heading!("lab-rall.axioms", &[A, ABar], ALL, None),
    heading!("lat-rall.axioms", &[A, Tau], ALL, None),
    heading!("lbt-rall.axioms", &[ABar, Tau], ALL, None),
    heading!("lat-rb-sab.axioms", &[A, Tau], &[ABar], Some(Sync::AABar)),
    heading!("lat-rb-sba.axioms", &[A, Tau], &[ABar], Some(Sync::ABarA)),
    heading!("lat-rab.axioms", &[A, Tau], &[A, ABar], None),
    heading!("lat-rbt-sab.axioms", &[A, Tau], &[ABar, Tau], Some(Sync::AABar)),
    heading!("lat-rbt-sba.axioms", &[A, Tau], &[ABar, Tau], Some(Sync::ABarA)),
    heading!("lb-rat-sba.axioms", &[ABar], &[A, Tau], Some(Sync::ABarA)),
    heading!("lb-rat-sab.axioms", &[ABar], &[A, Tau], Some(Sync::AABar)),
    heading!("lab-rat.axioms", &[A, ABar], &[A, Tau], None),
    heading!("lbt-rat-sab.axioms", &[ABar, Tau], &[A, Tau], Some(Sync::AABar)),
    heading!("lbt-rat-sba.axioms", &[ABar, Tau], &[A, Tau], Some(Sync::ABarA)),
    heading!("la-rbt-sab.axioms", &[A], &[ABar, Tau], Some(Sync::AABar)),
    heading!("la-rbt-sba.axioms", &[A], &[ABar, Tau], Some(Sync::ABarA)),
    heading!("lt-rab.axioms", &[Tau], &[A, ABar], None),
    heading!("lbt-ra-sba.axioms", &[ABar, Tau], &[A], Some(Sync::ABarA)),
    heading!("lbt-ra-sab.axioms", &[ABar, Tau], &[A], Some(Sync::AABar)),
    heading!("lab-rt.axioms", &[A, ABar], &[Tau], None),
    heading!("lab-rbt.axioms", &[A, ABar], &[ABar, Tau], None),
    heading!("lbt-rab.axioms", &[ABar, Tau], &[A, ABar], None),
];

impl Heading {
    pub fn axioms(&self, alpha: Action) -> AxiomSystem {
        let e = AxiomSystem::parse(self.file, file(self.file).expect("shipped file"))
            .expect("shipped files parse");
        if alpha == A {
            e
        } else {
            e.rename()
        }
    }

    /// Admissible rule sets with exactly the listed rules.
    pub fn rule_sets(&self, alpha: Action) -> Vec<RuleSet> {
        let syncs: Vec<Vec<Sync>> = match self.sync {
            Some(s) => vec![vec![s]],
            None => vec![vec![Sync::AABar], vec![Sync::ABarA], Sync::ALL.to_vec()],
        };
        syncs
            .into_iter()
            .map(|s| RuleSet::new(self.left, self.right, &s))
            .map(|rs| if alpha == A { rs } else { rs.rename() })
            .filter(RuleSet::is_admissible)
            .collect()
    }

    pub fn describe(&self) -> String {
        let syncs = self.sync.map(|s| vec![s]).unwrap_or_default();
        let rs = RuleSet::new(self.left, self.right, &syncs);
        let shown = rs.to_string();
        if self.sync.is_none() {
            format!("{shown} (any sync)")
        } else {
            shown
        }
    }
}

/// `A1`..`A4` together with `F0`: sound under every admissible rule set.
pub fn common() -> AxiomSystem {
    let a = AxiomSystem::parse("a1-a4", file("a1-a4.axioms").unwrap()).unwrap();
    let f = AxiomSystem::parse("f-common", file("f-common.axioms").unwrap()).unwrap();
    a.union(&f)
}

/// A named axiom from the catalogue, e.g. `F11`.
pub fn axiom(label: &str) -> Option<crate::equation::Equation> {
    let c = AxiomSystem::parse("catalogue", file("catalogue.axioms")?).ok()?;
    c.index_of(label).and_then(|i| c.get(i).cloned())
}

/// Rule sets for the common group: all of them.
pub fn common_rule_sets() -> Vec<RuleSet> {
    enumerate_admissible()
}
