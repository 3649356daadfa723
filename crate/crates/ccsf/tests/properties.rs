mod common;

use ccsf::eqlogic::{check_proof, hat_proof, AxiomSystem};
use ccsf::open::{aux_step, check_c2o, check_o2c, check_trt_open, trt, Mode};
use ccsf::operators::{dispatch, enumerate_admissible, representative, ClassTag, Family};
use ccsf::semantics::{bisim, prime_decompose, sound, SyncTreeEnumerator};
use ccsf::sos::{build_lts, build_lts_joint, depth, norm, step, step_open};
use ccsf::witness::{p_n, q_n, Origin};
use ccsf::{Action, Equation, RuleSet, Substitution, Term};
use common::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn eq4() -> Equation {
    Equation::parse("x || y = f(x, y) + f(y, x)").unwrap()
}

fn labat() -> RuleSet {
    representative(Family::Labat)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ac_equality_is_a_congruence(p in open(4, true), q in open(3, true), a in action()) {
        let p2 = reverse_sums(&p);
        prop_assert!(p.ac_eq(&p));
        prop_assert!(p.ac_eq(&p2) && p2.ac_eq(&p));
        prop_assert!(p.ac_eq(&p.canon()));
        prop_assert!(Term::prefix(a, p.clone()).ac_eq(&Term::prefix(a, p2.clone())));
        prop_assert!(Term::sum(p.clone(), q.clone()).ac_eq(&Term::sum(q.clone(), p2.clone())));
        prop_assert!(Term::f(p.clone(), q.clone()).ac_eq(&Term::f(p2.clone(), q.clone())));
        prop_assert!(Term::par(q.clone(), p.clone()).ac_eq(&Term::par(q.clone(), p2)));
    }

    #[test]
    fn hat_eliminates_par(p in open(5, true)) {
        prop_assert!(!p.hat().has_par());
    }

    #[test]
    fn strip_zero_is_idempotent(p in open(5, false)) {
        let s = p.strip_zero().unwrap();
        prop_assert_eq!(s.strip_zero().unwrap(), s.clone());
        prop_assert!(s.is_zero_clean(), "{}", s);
    }

    #[test]
    fn strip_zero_commutes_with_zero_substitutions(p in open(5, false), mask in 0u8..4) {
        let mut s = Substitution::new();
        for (i, x) in ["x", "y"].into_iter().enumerate() {
            if mask & (1 << i) != 0 {
                s.insert(x, Term::Nil);
            }
        }
        let l = s.apply(&p.strip_zero().unwrap()).strip_zero().unwrap();
        let r = s.apply(&p).strip_zero().unwrap();
        prop_assert!(l.ac_eq(&r), "{} vs {}", l, r);
    }

    #[test]
    fn hat_is_bisimilar(rs in admissible(), p in closed(3, true)) {
        prop_assert!(bisim(&rs, &p, &p.hat()).unwrap().equivalent);
    }

    #[test]
    fn strip_zero_is_bisimilar_for_left_only_operators(p in closed(4, false), sync in 1u8..4) {
        let rs = RuleSet::from_code(0b111 | (sync << 6));
        prop_assert!(bisim(&rs, &p, &p.strip_zero().unwrap()).unwrap().equivalent);
    }

    #[test]
    fn f_moves_follow_the_rule_table(rs in admissible(), p in tree(3), q in tree(3)) {
        let mut want = Vec::new();
        let (sp, sq) = (step(&rs, &p).unwrap(), step(&rs, &q).unwrap());
        for (a, p1) in &sp {
            if rs.has_left(*a) {
                want.push((*a, Term::par(p1.clone(), q.clone()).canon()));
            }
        }
        for (b, q1) in &sq {
            if rs.has_right(*b) {
                want.push((*b, Term::par(p.clone(), q1.clone()).canon()));
            }
        }
        for (a, p1) in &sp {
            for (b, q1) in &sq {
                if rs.syncs(*a, *b) {
                    want.push((Action::Tau, Term::par(p1.clone(), q1.clone()).canon()));
                }
            }
        }
        let got = step(&rs, &Term::f(p, q)).unwrap();
        prop_assert_eq!(set(got), set(want));
    }

    #[test]
    fn lts_construction_is_deterministic(rs in admissible(), p in closed(3, true)) {
        let (a, b) = (build_lts(&rs, &p).unwrap(), build_lts(&rs, &reverse_sums(&p)).unwrap());
        prop_assert_eq!(a.states, b.states);
        prop_assert_eq!(a.succ, b.succ);
    }

    #[test]
    fn depth_of_f_is_bounded(rs in admissible(), p in closed(3, true), q in closed(3, true)) {
        let d = depth(&rs, &Term::f(p.clone(), q.clone())).unwrap();
        prop_assert!(d <= depth(&rs, &p).unwrap() + depth(&rs, &q).unwrap());
        prop_assert_eq!(
            depth(&rs, &Term::par(p.clone(), q.clone())).unwrap(),
            depth(&rs, &p).unwrap() + depth(&rs, &q).unwrap()
        );
        prop_assert_eq!(d, depth_by_traces(&rs, &Term::f(p, q)));
    }

    #[test]
    fn bisimilarity_is_a_congruence(rs in admissible(), p in closed(3, true), r in tree(2), a in action()) {
        let q = ccsf::semantics::expand_par(&rs, &p).unwrap();
        prop_assert!(bisim(&rs, &p, &q).unwrap().equivalent);
        prop_assert!(bisim(&rs, &q, &p).unwrap().equivalent);
        for (l, rr) in [
            (Term::prefix(a, p.clone()), Term::prefix(a, q.clone())),
            (Term::sum(p.clone(), r.clone()), Term::sum(r.clone(), q.clone())),
            (Term::f(p.clone(), r.clone()), Term::f(q.clone(), r.clone())),
            (Term::f(r.clone(), p.clone()), Term::f(r.clone(), q.clone())),
            (Term::par(r.clone(), p.clone()), Term::par(q.clone(), r.clone())),
        ] {
            prop_assert!(bisim(&rs, &l, &rr).unwrap().equivalent, "{} vs {}", l, rr);
        }
    }

    #[test]
    fn bisimilar_processes_share_depth_and_norm(rs in admissible(), p in closed(3, true), q in closed(3, true)) {
        let b = bisim(&rs, &p, &q).unwrap();
        if b.equivalent {
            prop_assert_eq!(depth(&rs, &p).unwrap(), depth(&rs, &q).unwrap());
            prop_assert_eq!(norm(&rs, &p).unwrap(), norm(&rs, &q).unwrap());
        } else {
            prop_assert!(b.witness.is_some());
        }
    }

    #[test]
    fn partition_refinement_matches_the_naive_fixed_point(rs in admissible(), p in closed(3, true), q in closed(3, true)) {
        let (lts, roots) = build_lts_joint(&rs, &[p.clone(), q.clone()], 50).unwrap_or_default_lts();
        prop_assume!(!lts.states.is_empty());
        let rel = naive_bisim(&lts);
        prop_assert_eq!(bisim(&rs, &p, &q).unwrap().equivalent, rel[roots[0]][roots[1]]);
    }

    #[test]
    fn decomposition_recomposes(p in closed(3, true), q in tree(2)) {
        let rs = labat();
        let enm = SyncTreeEnumerator::new(6, usize::MAX);
        let parts = prime_decompose(&rs, &p, &enm).unwrap();
        let back = Term::par_all(parts.iter().cloned());
        prop_assert!(bisim(&rs, &back, &p).unwrap().equivalent);
        let mut store = ccsf::semantics::Store::new();
        let pq = store.eval(&rs, &Term::par(p.clone(), q.clone())).unwrap();
        prop_assert_eq!(ccsf::semantics::primes::all_decompositions(&mut store, pq).len(), 1);
    }

    #[test]
    fn generated_proofs_are_sound(seed in any::<u64>()) {
        let e = labat_system();
        let mut rng = StdRng::seed_from_u64(seed);
        let pr = random_proof(&mut rng, &e, 4);
        prop_assert_eq!(check_proof(&e, &pr), Ok(()));
        prop_assert!(bisim(&labat(), &pr.conclusion.lhs, &pr.conclusion.rhs).unwrap().equivalent);
        let h = hat_proof(&pr);
        prop_assert_eq!(check_proof(&e.hat(), &h), Ok(()));
        prop_assert!(!h.conclusion.lhs.has_par() && !h.conclusion.rhs.has_par());
        prop_assert!(check_proof(&e, &mutate(&mut rng, &pr)).is_err());
    }

    #[test]
    fn trt_agrees_with_auxiliary_transitions(rs in admissible(), p in open(4, false)) {
        prop_assert_eq!(check_trt_open(&rs, &p).unwrap(), Vec::<String>::new());
        for (lab, c) in aux_step(&rs, &p).unwrap() {
            prop_assert!(trt(&rs, &lab.var, lab.mode, lab.action, &p));
            let (x, _) = c.extract().unwrap();
            prop_assert_eq!(x, lab.var);
        }
    }

    #[test]
    fn open_and_closed_moves_correspond(rs in admissible(), p in open(4, false), sx in tree(2), sy in tree(2)) {
        let s = Substitution::from_pairs([("x", sx), ("y", sy)]);
        prop_assert_eq!(check_o2c(&rs, &p, &s).unwrap(), Vec::<String>::new());
        prop_assert_eq!(check_c2o(&rs, &p, &s).unwrap(), Vec::<String>::new());
    }

    #[test]
    fn substitution_lemma(rs in admissible(), p in open(4, true), sx in tree(2), sy in tree(2)) {
        let s = Substitution::from_pairs([("x", sx), ("y", sy)]);
        let closed = step(&rs, &s.apply(&p)).unwrap();
        for (mu, u) in step_open(&rs, &p) {
            prop_assert!(closed.contains(&(mu, s.apply(&u).canon())));
        }
    }

    #[test]
    fn trt_is_insensitive_to_sum_context(rs in admissible(), u in open(3, false), a in action()) {
        let x = Term::var("x");
        for m in Mode::ALL {
            let both = trt(&rs, "x", m, a, &x) || trt(&rs, "x", m, a, &u);
            prop_assert_eq!(trt(&rs, "x", m, a, &Term::sum(x.clone(), u.clone())), both);
            prop_assert_eq!(trt(&rs, "x", m, a, &Term::sum(u.clone(), x.clone())), both);
        }
    }

    #[test]
    fn depth_bound_holds_under_its_premises(rs in admissible(), p in open(4, false), sx in tree(3)) {
        let s = Substitution::from_pairs([("x", sx), ("y", Term::Nil)]);
        prop_assume!(p.vars().contains("x"));
        let v = ccsf::open::check_trt_depth(&rs, "x", &p, &s).unwrap();
        if v.precondition.is_some() {
            prop_assert!(v.holds, "{:?}", v);
        }
    }

    #[test]
    fn print_then_parse_is_the_identity(p in open(5, true)) {
        let back = ccsf::parse_term(&p.to_string()).unwrap();
        prop_assert!(back.ac_eq(&p), "{} vs {}", back, p);
        let c = p.canon();
        prop_assert_eq!(ccsf::parse_term(&c.to_string()).unwrap().canon(), c);
    }
}

/// `build_lts_joint` with a state cap: skip instances that exceed it.
trait OrEmpty {
    fn unwrap_or_default_lts(self) -> (ccsf::sos::Lts, Vec<usize>);
}

impl OrEmpty for ccsf::Result<(ccsf::sos::Lts, Vec<usize>)> {
    fn unwrap_or_default_lts(self) -> (ccsf::sos::Lts, Vec<usize>) {
        self.unwrap_or_else(|_| (ccsf::sos::Lts { states: Vec::new(), succ: Vec::new(), root: 0 }, Vec::new()))
    }
}

#[test]
fn equation_four_is_sound_exactly_for_admissible_rule_sets() {
    let enm = SyncTreeEnumerator::new(2, 2);
    for code in 0u8..=255 {
        let rs = RuleSet::from_code(code);
        if rs.code() != code {
            continue;
        }
        assert_eq!(rs.is_admissible(), admissible_by_definition(&rs), "{rs}");
        let v = sound(&rs, &eq4(), &enm).unwrap();
        assert_eq!(v.is_refuted(), !rs.is_admissible(), "{rs}: {v:?}");
    }
}

#[test]
fn renaming_of_par_is_par() {
    let enm = SyncTreeEnumerator::new(2, 2);
    let eq = Equation::parse("f(x, y) = x || y").unwrap();
    let mut seen = 0;
    for rs in enumerate_admissible() {
        if dispatch(&rs).tag == ClassTag::RenamingOfPar {
            seen += 1;
            assert!(!sound(&rs, &eq, &enm).unwrap().is_refuted());
        }
    }
    assert_eq!(seen, 1);
}

#[test]
fn witness_components_grow_with_n() {
    for a in Action::VISIBLE {
        for o in [Origin::Zero, Origin::One] {
            for n in 1..8 {
                assert!(p_n(a, n, o).size() > p_n(a, n - 1, o).size());
                assert!(q_n(a, n, o).size() > q_n(a, n - 1, o).size());
                assert!(p_n(a, n, o).size() >= n);
            }
        }
    }
}

#[test]
fn decomposition_is_unique_on_small_par_terms() {
    let rs = labat();
    let mut store = ccsf::semantics::Store::new();
    for p in par_terms(2) {
        let pid = store.eval(&rs, &p).unwrap();
        let all = ccsf::semantics::primes::all_decompositions(&mut store, pid);
        assert_eq!(all.len(), 1, "{p}");
    }
}

#[test]
fn axiom_systems_round_trip_through_text() {
    let e = labat_system().cl().unwrap();
    let back = AxiomSystem::parse("back", &e.to_text()).unwrap();
    assert_eq!(back.canonical_set(), e.canonical_set());
}
