//! Witness processes, the equation families `e_n` and the summand property
//! `W_n` ("has a summand bisimilar to the witness").

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::action::Action;
use crate::eqlogic::{sound_axioms, AxiomSystem};
use crate::equation::Equation;
use crate::error::{Error, Result};
use crate::gen::random_tree;
use crate::operators::{dispatch, Family, OperatorClass};
use crate::rules::RuleSet;
use crate::semantics::bisim::bisim;
use crate::semantics::enumerate::SyncTreeEnumerator;
use crate::semantics::primes::is_prime;
use crate::semantics::store::{Pid, Store};
use crate::sos;
use crate::term::{Substitution, Term};

/// Where the sums in `p_n`, `q_n` and `e_n` start. Both give bisimilar
/// families up to one `i = 0` summand per sum.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    #[default]
    Zero,
    One,
}

impl Origin {
    fn start(self) -> usize {
        match self {
            Origin::Zero => 0,
            Origin::One => 1,
        }
    }
}

/// `mu^{<=i} = mu + mu^2 + ... + mu^i`; `0` for `i = 0`.
pub fn ladder(mu: Action, i: usize) -> Term {
    Term::sum_all((1..=i).map(|j| Term::chain(mu, j)))
}

fn indexed(n: usize, origin: Origin, f: impl Fn(usize) -> Term) -> Term {
    Term::sum_all((origin.start()..=n).map(f))
}

/// `p_n = sum_i alpha'.alpha^{<=i}`.
pub fn p_n(alpha: Action, n: usize, origin: Origin) -> Term {
    indexed(n, origin, |i| Term::prefix(alpha.bar(), ladder(alpha, i)))
}

/// `q_n = sum_i alpha.alpha'^{<=i}`.
pub fn q_n(alpha: Action, n: usize, origin: Origin) -> Term {
    indexed(n, origin, |i| Term::prefix(alpha, ladder(alpha.bar(), i)))
}

fn unit(a: Action) -> Term {
    Term::prefix(a, Term::Nil)
}

/// Witness and `e_n` for a family in its canonical orientation.
pub fn canonical_witness(family: Family, alpha: Action, n: usize, origin: Origin) -> (Term, Equation) {
    assert!(alpha.is_visible(), "alpha must be visible");
    let b = alpha.bar();
    let pn = p_n(alpha, n, origin);
    let qn = q_n(alpha, n, origin);
    let taus = || indexed(n, origin, |i| Term::prefix(Action::Tau, ladder(alpha, i)));
    let bar_pars = || {
        indexed(n, origin, |i| Term::prefix(b, Term::par(unit(alpha), ladder(alpha, i))))
    };
    let (witness, rhs) = match family {
        Family::Labat => (
            Term::f(unit(alpha), pn.clone()),
            Term::sum(Term::prefix(alpha, pn), taus()),
        ),
        Family::LaRa => (
            Term::f(unit(alpha), qn.clone()),
            Term::sum(
                Term::prefix(alpha, qn),
                indexed(n, origin, |i| Term::prefix(alpha, Term::par(unit(alpha), ladder(b, i)))),
            ),
        ),
        Family::LaRbaSync => (
            Term::f(unit(alpha), pn.clone()),
            Term::sum(Term::sum(Term::prefix(alpha, pn), bar_pars()), taus()),
        ),
        Family::LaRbaNosync => (
            Term::f(unit(alpha), pn.clone()),
            Term::sum(Term::prefix(alpha, pn), bar_pars()),
        ),
        Family::Ltau => (
            Term::f(unit(Action::Tau), qn.clone()),
            Term::sum(
                Term::prefix(Action::Tau, qn),
                indexed(n, origin, |i| {
                    Term::prefix(alpha, Term::par(unit(Action::Tau), ladder(b, i)))
                }),
            ),
        ),
    };
    let eq = Equation::new(witness.clone(), rhs);
    (witness, eq)
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessFamily {
    pub case: String,
    pub family: Family,
    pub symmetric: bool,
    pub alpha: Action,
    pub n: usize,
    pub witness: Term,
    pub equation: Equation,
    pub property: String,
}

/// Witness and `e_n` for a dispatched operator class. Symmetric variants
/// swap the arguments of every `f`.
pub fn witness_terms(class: &OperatorClass, n: usize, origin: Origin) -> Result<WitnessFamily> {
    let (family, symmetric) = class
        .case
        .family()
        .ok_or_else(|| Error::Unsupported(format!("no witness family for case {}", class.case)))?;
    let alpha = class
        .alpha
        .ok_or_else(|| Error::Unsupported("operator class without alpha".into()))?;
    let (mut witness, mut equation) = canonical_witness(family, alpha, n, origin);
    if symmetric {
        witness = witness.swap_f_args();
        equation = equation.map(Term::swap_f_args);
    }
    Ok(WitnessFamily {
        case: class.case.to_string(),
        family,
        symmetric,
        alpha,
        n,
        property: format!("has a summand bisimilar to {witness}"),
        witness,
        equation,
    })
}

/// `W_n`: some summand of `p` is bisimilar to `witness`.
pub fn has_witness_summand(rs: &RuleSet, p: &Term, witness: &Term) -> Result<bool> {
    let mut store = Store::new();
    let w = store.eval(rs, witness)?;
    has_witness_summand_in(&mut store, rs, p, w)
}

pub fn has_witness_summand_in(store: &mut Store, rs: &RuleSet, p: &Term, w: Pid) -> Result<bool> {
    for s in p.summands() {
        if store.eval(rs, &s)? == w {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NVerdict {
    pub n: usize,
    pub equation: String,
    pub equivalent: bool,
    pub distinguishing: Option<String>,
    pub lhs_has_witness: bool,
    pub rhs_has_witness: bool,
    pub depth_lhs: usize,
    pub depth_rhs: usize,
    pub lemma: LemmaCheck,
}

impl NVerdict {
    pub fn ok(&self) -> bool {
        self.equivalent
            && self.lhs_has_witness
            && !self.rhs_has_witness
            && self.depth_lhs == self.n + 2
            && self.depth_rhs == self.n + 2
            && self.lemma.holds
    }
}

fn lemma(rs: &RuleSet, wf: &WitnessFamily, origin: Origin) -> Result<LemmaCheck> {
    let a = wf.alpha;
    let orient = |t: Term| if wf.symmetric { t.swap_f_args() } else { t };
    let par_check = |name: &str, mu: Action, q: Term| -> Result<LemmaCheck> {
        let lhs = orient(Term::f(unit(mu), q.clone()));
        let holds = bisim(rs, &lhs, &Term::par(unit(mu), q))?.equivalent;
        Ok(LemmaCheck { name: name.into(), holds })
    };
    match wf.family {
        Family::Labat | Family::LaRbaNosync => {
            let enm = SyncTreeEnumerator::new(wf.n + 2, usize::MAX);
            Ok(LemmaCheck {
                name: "witness is prime".into(),
                holds: is_prime(rs, &wf.witness, &enm)?,
            })
        }
        Family::LaRa => par_check("f(alpha, q_n) ~ alpha || q_n", a, q_n(a, wf.n, origin)),
        Family::LaRbaSync => par_check("f(alpha, p_n) ~ alpha || p_n", a, p_n(a, wf.n, origin)),
        Family::Ltau => par_check("f(tau, q_n) ~ tau || q_n", Action::Tau, q_n(a, wf.n, origin)),
    }
}

/// Checks `e_n` under `rs`: bisimilarity, the summand asymmetry, the depth
/// `n + 2` and the family's lemma.
pub fn verify_one(rs: &RuleSet, class: &OperatorClass, n: usize, origin: Origin) -> Result<NVerdict> {
    let wf = witness_terms(class, n, origin)?;
    let (l, r) = (&wf.equation.lhs, &wf.equation.rhs);
    let b = bisim(rs, l, r)?;
    Ok(NVerdict {
        n,
        equation: wf.equation.to_string(),
        equivalent: b.equivalent,
        distinguishing: b.witness.map(|h| h.to_string()),
        lhs_has_witness: has_witness_summand(rs, l, &wf.witness)?,
        rhs_has_witness: has_witness_summand(rs, r, &wf.witness)?,
        depth_lhs: sos::depth(rs, l)?,
        depth_rhs: sos::depth(rs, r)?,
        lemma: lemma(rs, &wf, origin)?,
    })
}

/// [`verify_one`] for every `n` up to `n_max`. With sums from 1 the family
/// starts at `n = 1`.
pub fn verify_family(rs: &RuleSet, class: &OperatorClass, n_max: usize, origin: Origin) -> Result<Vec<NVerdict>> {
    (origin.start()..=n_max).map(|n| verify_one(rs, class, n, origin)).collect()
}

/// As [`verify_family`] with the class obtained by dispatch.
pub fn verify_auto(rs: &RuleSet, n_max: usize, origin: Origin) -> Result<(OperatorClass, Vec<NVerdict>)> {
    let class = dispatch(rs);
    let v = verify_family(rs, &class, n_max, origin)?;
    Ok((class, v))
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub axiom: String,
    pub lhs: String,
    pub rhs: String,
    pub lhs_has_witness: bool,
    pub rhs_has_witness: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PreservationReport {
    pub n: usize,
    pub trials: usize,
    /// Instances where both sides have the witness summand.
    pub witness_instances: usize,
    /// Draws discarded because a side had a `0` summand or factor.
    pub discarded: usize,
    pub violations: Vec<Violation>,
}

/// Enumerator used to gate the experiment on soundness of `E`.
pub fn gate_enumerator(vars: usize) -> SyncTreeEnumerator {
    if vars <= 2 {
        SyncTreeEnumerator::new(2, 2)
    } else {
        SyncTreeEnumerator::new(2, 1)
    }
}

/// Rejects `E` if any axiom is refuted by [`gate_enumerator`] or is not
/// smaller than `n`.
pub fn preservation_gate(rs: &RuleSet, e: &AxiomSystem, n: usize) -> Result<()> {
    for (name, ax) in e.named() {
        if ax.lhs.size().max(ax.rhs.size()) >= n {
            return Err(Error::Unsupported(format!(
                "n = {n} must exceed the size of axiom {name}: {ax}"
            )));
        }
    }
    for (name, ax) in e.named() {
        let single = AxiomSystem::new("gate", vec![(name.to_string(), ax.clone())]);
        let enm = gate_enumerator(ax.vars().len());
        if let Some(v) = sound_axioms(rs, &single, &enm)?.into_iter().find(|v| v.verdict.is_refuted()) {
            return Err(Error::Unsupported(format!("axiom {} is unsound: {}", v.name, v.equation)));
        }
    }
    Ok(())
}

fn shuffle_sum(rng: &mut StdRng, t: &Term) -> Term {
    let mut s = t.summands();
    for i in (1..s.len()).rev() {
        s.swap(i, rng.gen_range(0..=i));
    }
    Term::sum_all(s)
}

/// Closed terms the experiment plugs into axioms: the witness and terms
/// bisimilar to it, summands of `e_n`, and small random trees.
fn pool_term(rng: &mut StdRng, wf: &WitnessFamily) -> Term {
    match rng.gen_range(0..6) {
        0 => wf.witness.clone(),
        1 => shuffle_sum(rng, &wf.witness),
        2 => {
            let s = wf.equation.rhs.summands();
            s[rng.gen_range(0..s.len())].clone()
        }
        3 => Term::sum(wf.witness.clone(), random_tree(rng, 2, 2)),
        4 => Term::Nil,
        _ => random_tree(rng, 2, 2),
    }
}

/// A random one-hole context of depth at most one.
fn context(rng: &mut StdRng, other: Term) -> impl Fn(&Term) -> Term {
    let k = rng.gen_range(0..7);
    move |x: &Term| -> Term {
        let x = x.clone();
        match k {
            0 => x,
            1 => Term::sum(x, other.clone()),
            2 => Term::sum(other.clone(), x),
            3 => Term::f(x, other.clone()),
            4 => Term::f(other.clone(), x),
            5 => Term::par(x, other.clone()),
            _ => Term::prefix(Action::Tau, x),
        }
    }
}

/// Generates closed instances of `E`'s axioms (both orientations), wraps
/// them in a random one-step context and compares `W_n` on both sides.
///
/// When `E` is saturated only instances without `0` summands or factors
/// are kept, since proofs from a saturated system can avoid the others.
pub fn wn_preservation_experiment(
    rs: &RuleSet,
    e: &AxiomSystem,
    n: usize,
    trials: usize,
    seed: u64,
) -> Result<PreservationReport> {
    let class = dispatch(rs);
    let wf = witness_terms(&class, n, Origin::Zero)?;
    preservation_gate(rs, e, n)?;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut store = Store::new();
    let w = store.eval(rs, &wf.witness)?;
    let base = store.mark();
    let axioms: Vec<(String, Equation)> =
        e.named().map(|(n, a)| (n.to_string(), a.clone())).collect();
    let mut report =
        PreservationReport { n, trials: 0, witness_instances: 0, discarded: 0, violations: Vec::new() };
    if axioms.is_empty() {
        return Ok(report);
    }
    let zero_clean = e.is_saturated().unwrap_or(false);
    let max_draws = trials.saturating_mul(50).max(1000);
    while report.trials < trials && report.trials + report.discarded < max_draws {
        let (name, ax) = &axioms[rng.gen_range(0..axioms.len())];
        let ax = if rng.gen_bool(0.5) { ax.symmetric() } else { ax.clone() };
        let mut sigma = Substitution::new();
        for x in ax.vars() {
            sigma.insert_arc(x, pool_term(&mut rng, &wf));
        }
        let inst = ax.apply(&sigma);
        let other = pool_term(&mut rng, &wf);
        let ctx = context(&mut rng, other);
        let (l, r) = (ctx(&inst.lhs), ctx(&inst.rhs));
        if zero_clean && !(l.is_zero_clean() && r.is_zero_clean()) {
            report.discarded += 1;
            continue;
        }
        report.trials += 1;
        let hl = has_witness_summand_in(&mut store, rs, &l, w)?;
        let hr = has_witness_summand_in(&mut store, rs, &r, w)?;
        if hl && hr {
            report.witness_instances += 1;
        }
        if hl != hr {
            report.violations.push(Violation {
                axiom: name.clone(),
                lhs: l.to_string(),
                rhs: r.to_string(),
                lhs_has_witness: hl,
                rhs_has_witness: hr,
            });
        }
        store.truncate(base);
    }
    Ok(report)
}
