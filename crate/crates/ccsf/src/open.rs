//! Transitions of open terms: configurations, the auxiliary relation that
//! records which variable is responsible for a move, and the unguarded
//! occurrence relation `x |>^w_mu t`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::action::Action;
use crate::error::{Error, Result};
use crate::rules::RuleSet;
use crate::semantics::store::Store;
use crate::sos::{step, step_open};
use crate::term::{Substitution, Term};

/// Which rules of `f` let the variable's move through.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    L,
    R,
    B,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::L, Mode::R, Mode::B];

    /// Whether `rs` allows a `mu` move in this mode.
    pub fn allowed(self, rs: &RuleSet, mu: Action) -> bool {
        match self {
            Mode::L => rs.has_left(mu),
            Mode::R => rs.has_right(mu),
            Mode::B => rs.has_left(mu) && rs.has_right(mu),
        }
    }

    /// The mode fixed by the rules for `mu`: `b` when both sides move.
    pub fn of(rs: &RuleSet, mu: Action) -> Option<Mode> {
        match (rs.has_left(mu), rs.has_right(mu)) {
            (true, true) => Some(Mode::B),
            (true, false) => Some(Mode::L),
            (false, true) => Some(Mode::R),
            (false, false) => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mode::L => "l",
            Mode::R => "r",
            Mode::B => "b",
        }
    }

    pub fn from_name(s: &str) -> Option<Mode> {
        Mode::ALL.into_iter().find(|m| m.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AuxLabel {
    pub var: Arc<str>,
    pub mode: Mode,
    pub action: Action,
}

impl fmt::Display for AuxLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{} {}", self.var, self.mode.name(), self.action)
    }
}

/// `c ::= t | x_d | c || t | t || c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Configuration {
    Plain(Term),
    DVar(Arc<str>),
    ParLeft(Box<Configuration>, Term),
    ParRight(Term, Box<Configuration>),
}

impl Configuration {
    /// `sigma[x_d -> p](c)`.
    pub fn instantiate(&self, sigma: &Substitution, p: &Term) -> Term {
        match self {
            Configuration::Plain(t) => sigma.apply(t),
            Configuration::DVar(_) => p.clone(),
            Configuration::ParLeft(c, t) => Term::par(c.instantiate(sigma, p), sigma.apply(t)),
            Configuration::ParRight(t, c) => Term::par(sigma.apply(t), c.instantiate(sigma, p)),
        }
    }

    /// Number of `x_d` occurrences.
    pub fn dvars(&self) -> usize {
        match self {
            Configuration::Plain(_) => 0,
            Configuration::DVar(_) => 1,
            Configuration::ParLeft(c, _) | Configuration::ParRight(_, c) => c.dvars(),
        }
    }

    /// The `x` and the terms `t'` with `c = x_d || t'` up to the placement
    /// of the parallel components.
    pub fn extract(&self) -> Option<(Arc<str>, Vec<Term>)> {
        match self {
            Configuration::Plain(_) => None,
            Configuration::DVar(x) => Some((x.clone(), Vec::new())),
            Configuration::ParLeft(c, t) | Configuration::ParRight(t, c) => {
                let (x, mut rest) = c.extract()?;
                rest.push(t.clone());
                Some((x, rest))
            }
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Configuration::Plain(t) => write!(f, "{t}"),
            Configuration::DVar(x) => write!(f, "{x}_d"),
            Configuration::ParLeft(c, t) => write!(f, "({c} || {t})"),
            Configuration::ParRight(t, c) => write!(f, "({t} || {c})"),
        }
    }
}

impl Serialize for Configuration {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Serialize for AuxLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("AuxLabel", 3)?;
        st.serialize_field("var", &*self.var)?;
        st.serialize_field("mode", &self.mode)?;
        st.serialize_field("action", &self.action)?;
        st.end()
    }
}

fn reject_par(t: &Term) -> Result<()> {
    if t.has_par() {
        Err(Error::ParNotAllowed(t.to_string()))
    } else {
        Ok(())
    }
}

/// The auxiliary transitions of a `||`-free term.
pub fn aux_step(rs: &RuleSet, t: &Term) -> Result<Vec<(AuxLabel, Configuration)>> {
    reject_par(t)?;
    let mut out = BTreeSet::new();
    aux(rs, t, &mut out);
    Ok(out.into_iter().collect())
}

fn aux(rs: &RuleSet, t: &Term, out: &mut BTreeSet<(AuxLabel, Configuration)>) {
    match t {
        Term::Var(x) => {
            for mu in Action::ALL {
                for mode in Mode::ALL {
                    if mode.allowed(rs, mu) {
                        out.insert((AuxLabel { var: x.clone(), mode, action: mu }, Configuration::DVar(x.clone())));
                    }
                }
            }
        }
        Term::Sum(l, r) => {
            aux(rs, l, out);
            aux(rs, r, out);
        }
        Term::F(l, r) => {
            let mut sub = BTreeSet::new();
            aux(rs, l, &mut sub);
            for (lab, c) in sub {
                if matches!(lab.mode, Mode::L | Mode::B) {
                    out.insert((lab, Configuration::ParLeft(Box::new(c), (**r).clone())));
                }
            }
            let mut sub = BTreeSet::new();
            aux(rs, r, &mut sub);
            for (lab, c) in sub {
                if matches!(lab.mode, Mode::R | Mode::B) {
                    out.insert((lab, Configuration::ParRight((**l).clone(), Box::new(c))));
                }
            }
        }
        Term::Nil | Term::Prefix(..) | Term::Par(..) => {}
    }
}

/// `x |>^w_mu t`: an occurrence of `x` in `t` not under a prefix, reached
/// through first arguments of `f` only (`l`), second only (`r`) or either
/// (`b`), with the rules for `mu` matching the mode at the variable.
pub fn trt(rs: &RuleSet, x: &str, mode: Mode, mu: Action, t: &Term) -> bool {
    match t {
        Term::Var(y) => &**y == x && mode.allowed(rs, mu),
        Term::Sum(l, r) => trt(rs, x, mode, mu, l) || trt(rs, x, mode, mu, r),
        Term::F(l, r) => match mode {
            Mode::L => trt(rs, x, mode, mu, l),
            Mode::R => trt(rs, x, mode, mu, r),
            Mode::B => trt(rs, x, mode, mu, l) || trt(rs, x, mode, mu, r),
        },
        Term::Nil | Term::Prefix(..) | Term::Par(..) => false,
    }
}

/// Every `(mode, mu)` with `x |>^mode_mu t`.
pub fn trt_all(rs: &RuleSet, x: &str, t: &Term) -> Vec<(Mode, Action)> {
    let mut v = Vec::new();
    for mode in Mode::ALL {
        for mu in Action::ALL {
            if trt(rs, x, mode, mu, t) {
                v.push((mode, mu));
            }
        }
    }
    v
}

/// Triples where `trt` and the auxiliary relation disagree, or where an
/// auxiliary target is not of the shape `x_d || t'`.
pub fn check_trt_open(rs: &RuleSet, t: &Term) -> Result<Vec<String>> {
    let steps = aux_step(rs, t)?;
    let mut bad = Vec::new();
    for (lab, c) in &steps {
        if c.dvars() != 1 || c.extract().map(|(x, _)| x) != Some(lab.var.clone()) {
            bad.push(format!("{t}: target {c} of {lab} is not x_d || t'"));
        }
    }
    for x in t.vars() {
        for mode in Mode::ALL {
            for mu in Action::ALL {
                let by_trt = trt(rs, &x, mode, mu, t);
                let by_aux = steps.iter().any(|(l, _)| l.var == x && l.mode == mode && l.action == mu);
                if by_trt != by_aux {
                    bad.push(format!("{t}: {x} {} {mu}: trt={by_trt} aux={by_aux}", mode.name()));
                }
            }
        }
    }
    Ok(bad)
}

/// Every auxiliary transition of `t` combined with a matching move of
/// `sigma(x)` yields a move of `sigma(t)`; so does every transition of `t`
/// itself. Returns the moves that are missing.
pub fn check_o2c(rs: &RuleSet, t: &Term, sigma: &Substitution) -> Result<Vec<String>> {
    let closed = sigma.apply(t);
    let moves: BTreeSet<(Action, Term)> = step(rs, &closed)?.into_iter().collect();
    let mut bad = Vec::new();
    for (lab, c) in aux_step(rs, t)? {
        let Some(sx) = sigma.get(&lab.var) else { continue };
        for (mu, p) in step(rs, sx)? {
            if mu != lab.action {
                continue;
            }
            let target = c.instantiate(sigma, &p).canon();
            if !moves.contains(&(mu, target.clone())) {
                bad.push(format!("{closed} lacks --{mu}-> {target} from {lab} into {c}"));
            }
        }
    }
    for (mu, u) in step_open(rs, t) {
        let target = sigma.apply(&u).canon();
        if !moves.contains(&(mu, target.clone())) {
            bad.push(format!("{closed} lacks --{mu}-> {target} from {t} --{mu}-> {u}"));
        }
    }
    Ok(bad)
}

/// Every visible move of `sigma(t)` is a move of `t` instantiated, or an
/// auxiliary move in the mode fixed by the rules combined with a move of
/// the responsible variable. Returns the unexplained moves.
pub fn check_c2o(rs: &RuleSet, t: &Term, sigma: &Substitution) -> Result<Vec<String>> {
    reject_par(t)?;
    let closed = sigma.apply(t);
    let own: BTreeSet<(Action, Term)> =
        step_open(rs, t).into_iter().map(|(mu, u)| (mu, sigma.apply(&u).canon())).collect();
    let aux = aux_step(rs, t)?;
    let mut bad = Vec::new();
    for (alpha, p) in step(rs, &closed)? {
        if !alpha.is_visible() || own.contains(&(alpha, p.clone())) {
            continue;
        }
        let Some(mode) = Mode::of(rs, alpha) else {
            bad.push(format!("{closed} --{alpha}-> {p} but f has no rule for {alpha}"));
            continue;
        };
        let mut explained = false;
        'search: for (lab, c) in aux.iter().filter(|(l, _)| l.action == alpha && l.mode == mode) {
            let Some(sx) = sigma.get(&lab.var) else { continue };
            for (mu, q) in step(rs, sx)? {
                if mu == alpha && c.instantiate(sigma, &q).canon() == p {
                    explained = true;
                    break 'search;
                }
            }
        }
        if !explained {
            bad.push(format!("{closed} --{alpha}-> {p} is unexplained"));
        }
    }
    Ok(bad)
}

#[derive(Clone, Debug, Serialize)]
pub struct TrtDepthVerdict {
    /// A mode `w` with `init(sigma(x))` inside `{mu | x |>^w_mu t}`, if the
    /// premises of the inequality hold.
    pub precondition: Option<Mode>,
    pub depth_t: usize,
    pub depth_x: usize,
    pub holds: bool,
}

/// Compares `depth(sigma(t))` with `depth(sigma(x))`, and reports whether
/// the premises under which the first bounds the second are met.
pub fn check_trt_depth(rs: &RuleSet, x: &str, t: &Term, sigma: &Substitution) -> Result<TrtDepthVerdict> {
    reject_par(t)?;
    let sx = sigma.get(x).ok_or_else(|| Error::OpenTerm(format!("{x} is not substituted")))?;
    let mut store = Store::new();
    let pt = store.eval(rs, &sigma.apply(t))?;
    let px = store.eval(rs, sx)?;
    let init = store.initials(px);
    let precondition = if t.is_zero_clean() {
        Mode::ALL.into_iter().find(|&w| {
            let allowed: Vec<Action> = Action::ALL.into_iter().filter(|&mu| trt(rs, x, w, mu, t)).collect();
            !allowed.is_empty() && init.iter().all(|mu| allowed.contains(mu))
        })
    } else {
        None
    };
    let (depth_t, depth_x) = (store.depth(pt), store.depth(px));
    Ok(TrtDepthVerdict { precondition, depth_t, depth_x, holds: depth_t >= depth_x })
}

/// The scenario where the rules for `f` block part of `x`: left rules for
/// `alpha` and `tau`, a right rule for `alpha'`, sync led by `alpha`,
/// `t = f(x, tau.0)` and `sigma(x) = alpha + tau + alpha'.alpha^n`.
pub fn blocked_example(alpha: Action, n: usize) -> (RuleSet, Term, Substitution) {
    let b = alpha.bar();
    let rs = RuleSet::new(&[alpha, Action::Tau], &[b], &[crate::rules::Sync::led_by(alpha)]);
    let t = Term::f(Term::var("x"), Term::prefix(Action::Tau, Term::Nil));
    let sx = Term::sum_all([
        Term::prefix(alpha, Term::Nil),
        Term::prefix(Action::Tau, Term::Nil),
        Term::prefix(b, Term::chain(alpha, n)),
    ]);
    (rs, t, Substitution::from_pairs([("x", sx)]))
}
