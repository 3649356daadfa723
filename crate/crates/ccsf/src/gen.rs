//! Seeded generators and exhaustive enumeration of terms, for property
//! checks and experiments.

use rand::Rng;

use crate::action::Action;
use crate::term::Term;

/// A synchronisation tree of depth at most `depth` with at most `width`
/// summands per node.
pub fn random_tree<R: Rng>(rng: &mut R, depth: usize, width: usize) -> Term {
    if depth == 0 {
        return Term::Nil;
    }
    let w = rng.gen_range(0..=width);
    Term::sum_all((0..w).map(|_| {
        let a = Action::ALL[rng.gen_range(0..3)];
        let d = rng.gen_range(0..depth);
        Term::prefix(a, random_tree(rng, d, width))
    }))
}

/// A term of size at most `budget` over `vars`, with `||` when `par`.
pub fn random_term<R: Rng>(rng: &mut R, budget: usize, vars: &[&str], par: bool) -> Term {
    let leaf = |rng: &mut R| {
        if !vars.is_empty() && (budget == 0 || rng.gen_bool(0.6)) {
            Term::var(vars[rng.gen_range(0..vars.len())])
        } else {
            Term::Nil
        }
    };
    if budget <= 1 {
        return leaf(rng);
    }
    let rest = budget - 1;
    // Without variables every subterm costs at least one.
    let min = usize::from(vars.is_empty());
    if rest < 2 * min {
        return leaf(rng);
    }
    let split = |rng: &mut R| {
        let l = rng.gen_range(min..=rest - min);
        (l, rest - l)
    };
    match rng.gen_range(0..if par { 5 } else { 4 }) {
        0 => leaf(rng),
        1 => Term::prefix(Action::ALL[rng.gen_range(0..3)], random_term(rng, rest, vars, par)),
        2 => {
            let (l, r) = split(rng);
            Term::sum(random_term(rng, l, vars, par), random_term(rng, r, vars, par))
        }
        3 => {
            let (l, r) = split(rng);
            Term::f(random_term(rng, l, vars, par), random_term(rng, r, vars, par))
        }
        _ => {
            let (l, r) = split(rng);
            Term::par(random_term(rng, l, vars, par), random_term(rng, r, vars, par))
        }
    }
}

/// Every term of size at most `max_size` over `vars` (syntactically
/// distinct; no quotient by AC).
pub fn terms_up_to(max_size: usize, vars: &[&str], par: bool) -> Vec<Term> {
    let mut by_size: Vec<Vec<Term>> = vec![vars.iter().map(|x| Term::var(x)).collect()];
    for s in 1..=max_size {
        let mut v = Vec::new();
        if s == 1 {
            v.push(Term::Nil);
        }
        for t in &by_size[s - 1] {
            for a in Action::ALL {
                v.push(Term::prefix(a, t.clone()));
            }
        }
        for l in 0..s {
            let r = s - 1 - l;
            for x in &by_size[l] {
                for y in &by_size[r] {
                    v.push(Term::sum(x.clone(), y.clone()));
                    v.push(Term::f(x.clone(), y.clone()));
                    if par {
                        v.push(Term::par(x.clone(), y.clone()));
                    }
                }
            }
        }
        by_size.push(v);
    }
    by_size.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn exhaustive_terms_have_the_right_sizes() {
        let ts = terms_up_to(3, &["x"], false);
        assert!(ts.iter().all(|t| t.size() <= 3 && !t.has_par()));
        let n = ts.len();
        let mut d = ts.clone();
        d.sort();
        d.dedup();
        assert_eq!(d.len(), n);
        // size 0: x; size 1: 0, 3 prefixes of x, x+x, f(x,x).
        assert_eq!(terms_up_to(1, &["x"], false).len(), 1 + 1 + 3 + 2);
    }

    #[test]
    fn random_terms_respect_budget() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let t = random_term(&mut rng, 8, &["x", "y"], true);
            assert!(t.size() <= 8, "{t}");
            let c = random_term(&mut rng, 6, &[], false);
            assert!(c.size() <= 6 && c.is_closed(), "{c}");
            let u = random_tree(&mut rng, 2, 2);
            assert!(u.is_closed() && !u.has_f());
        }
    }
}
