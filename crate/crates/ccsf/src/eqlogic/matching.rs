//! Matching modulo associativity and commutativity of `+`.

use crate::term::{Substitution, Term};

/// Every extension of `base` that maps `pattern` to `term` modulo AC.
/// `term` and the values bound in `base` must be canonical; bound values
/// in the results are canonical.
pub fn match_ac(pattern: &Term, term: &Term, base: &Substitution) -> Vec<Substitution> {
    let mut out = Vec::new();
    go(pattern, term, base.clone(), &mut |s| {
        if !out.contains(&s) {
            out.push(s);
        }
    });
    out
}

fn go(p: &Term, t: &Term, s: Substitution, k: &mut dyn FnMut(Substitution)) {
    match (p, t) {
        (Term::Var(x), _) => match s.get(x) {
            Some(v) if v == t => k(s),
            Some(_) => {}
            None => {
                let mut s = s;
                s.insert_arc(x.clone(), t.clone());
                k(s)
            }
        },
        (Term::Sum(..), _) => {
            let mut pats = p.summands();
            // Variables last, so fixed-shape summands prune first.
            pats.sort_by_key(|q| matches!(q, Term::Var(_)));
            let ts = t.summands();
            let used = vec![false; ts.len()];
            assign(&pats, &ts, used, s, k);
        }
        (Term::Nil, Term::Nil) => k(s),
        (Term::Prefix(a, p1), Term::Prefix(b, t1)) if a == b => go(p1, t1, s, k),
        (Term::F(p1, p2), Term::F(t1, t2)) | (Term::Par(p1, p2), Term::Par(t1, t2)) => {
            go(p1, t1, s, &mut |s1| go(p2, t2, s1, k))
        }
        _ => {}
    }
}

fn assign(pats: &[Term], ts: &[Term], used: Vec<bool>, s: Substitution, k: &mut dyn FnMut(Substitution)) {
    let Some((p, rest)) = pats.split_first() else {
        if used.iter().all(|&u| u) {
            k(s);
        }
        return;
    };
    let free: Vec<usize> = (0..ts.len()).filter(|&i| !used[i]).collect();
    match p {
        Term::Var(x) => {
            if let Some(v) = s.get(x) {
                // Consume the bound value's summands.
                let mut used = used.clone();
                for part in v.summands() {
                    match free.iter().find(|&&i| !used[i] && ts[i] == part) {
                        Some(&i) => used[i] = true,
                        None => return,
                    }
                }
                assign(rest, ts, used, s, k);
                return;
            }
            let last_var = rest.is_empty();
            if free.is_empty() || free.len() > 20 {
                return;
            }
            let n = free.len();
            let masks: Box<dyn Iterator<Item = u32>> = if last_var {
                Box::new(std::iter::once((1u32 << n) - 1))
            } else {
                Box::new(1..(1u32 << n))
            };
            let mut seen = Vec::new();
            for m in masks {
                let chosen: Vec<Term> =
                    (0..n).filter(|j| m & (1 << j) != 0).map(|j| ts[free[j]].clone()).collect();
                if seen.contains(&chosen) {
                    continue;
                }
                seen.push(chosen.clone());
                let mut used = used.clone();
                for j in 0..n {
                    if m & (1 << j) != 0 {
                        used[free[j]] = true;
                    }
                }
                let mut s = s.clone();
                s.insert_arc(x.clone(), Term::canon_sum(chosen));
                assign(rest, ts, used, s, k);
            }
        }
        _ => {
            let mut tried: Vec<&Term> = Vec::new();
            for &i in &free {
                if tried.contains(&&ts[i]) {
                    continue;
                }
                tried.push(&ts[i]);
                let mut used = used.clone();
                used[i] = true;
                go(p, &ts[i], s.clone(), &mut |s1| assign(rest, ts, used.clone(), s1, k));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap().canon()
    }

    fn matches(p: &str, u: &str) -> Vec<String> {
        let mut v: Vec<String> =
            match_ac(&parse_term(p).unwrap(), &t(u), &Substitution::new()).iter().map(|s| s.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn idempotence_pattern() {
        assert_eq!(matches("x + x", "a.0 + a.0"), vec!["{x -> a.0}"]);
        assert!(matches("x + x", "a.0 + tau.0").is_empty());
        assert_eq!(matches("x + x", "a.0 + tau.0 + a.0 + tau.0"), vec!["{x -> a.0 + tau.0}"]);
    }

    #[test]
    fn commutative_split() {
        let m = matches("x + y", "a.0 + tau.0 + 0");
        assert_eq!(m.len(), 6, "{m:?}");
        assert!(m.contains(&"{x -> 0 + a.0, y -> tau.0}".to_string()));
    }

    #[test]
    fn nested_sum_in_f() {
        let m = matches("f(0, a'.x + w)", "f(0, tau.0 + a'.a.0)");
        assert_eq!(m, vec!["{w -> tau.0, x -> a.0}"]);
        assert!(matches("f(0, a'.x + w)", "f(0, a'.a.0)").is_empty());
    }

    #[test]
    fn results_instantiate_back() {
        for (p, u) in [("x + y", "a.0 + tau.0 + a.0"), ("f(x, y) + z", "f(a.0, 0) + tau.0 + a.a.0")] {
            let pt = parse_term(p).unwrap();
            for s in match_ac(&pt, &t(u), &Substitution::new()) {
                assert_eq!(s.apply(&pt).canon(), t(u));
            }
        }
    }
}
