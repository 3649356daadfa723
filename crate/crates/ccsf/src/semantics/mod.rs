//! Bisimilarity, bounded soundness of open equations, primality.

pub mod bisim;
pub mod enumerate;
pub mod primes;
pub mod sound;
pub mod store;

pub use bisim::{bisim, BisimResult, Hml};
pub use enumerate::SyncTreeEnumerator;
pub use primes::{is_prime, is_prime_exhaustive, prime_decompose};
pub use sound::{sound, sound_bounded, SoundVerdict};
pub use store::{Pid, Store};

use crate::error::Result;
use crate::rules::RuleSet;
use crate::sos::step;
use crate::term::Term;

/// Head normal form `sum mu_i.p_i` of a closed term, read off its moves.
pub fn expand_par(rs: &RuleSet, p: &Term) -> Result<Term> {
    Ok(Term::sum_all(step(rs, p)?.into_iter().map(|(a, q)| Term::prefix(a, q))))
}

/// Whether a closed term is bisimilar to `0`.
pub fn is_nil(rs: &RuleSet, p: &Term) -> Result<bool> {
    Ok(crate::sos::initials(rs, p)?.is_empty())
}

/// Bisimilarity via the canonical store rather than partition refinement.
pub fn bisimilar_fast(rs: &RuleSet, p: &Term, q: &Term) -> Result<bool> {
    let mut st = Store::new();
    Ok(st.eval(rs, p)? == st.eval(rs, q)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::Action;
    use crate::parse::parse_term;
    use crate::rules::Sync;

    #[test]
    fn expansion_of_par() {
        let rs = RuleSet::new(&Action::ALL, &[], &[Sync::AABar]);
        let p = parse_term("a.0 || a'.0").unwrap();
        let e = expand_par(&rs, &p).unwrap();
        let expect = parse_term("a.(0 || a'.0) + a'.(a.0 || 0) + tau.(0 || 0)").unwrap();
        assert!(e.ac_eq(&expect), "{e}");
        assert!(bisim(&rs, &e, &p).unwrap().equivalent);
        assert_eq!(expand_par(&rs, &Term::Nil).unwrap(), Term::Nil);
    }
}
