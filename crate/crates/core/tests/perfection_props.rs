mod common;

use std::sync::Arc;

use charp::decomp::{ass_monomial, build_unbounded_ass};
use charp::perfection::{
    fseq_verify, perfection_member, ClosureParams, FSequence, PerfectionElement, PerfectionIdeal,
};
use charp::{GroebnerBudget, Ideal, Monomial, Polynomial, Ring};
use proptest::prelude::*;
use rand::Rng;

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn monomial(ring: &Arc<Ring>, exps: &[u64]) -> Polynomial {
    Polynomial::monomial(ring.base(), Monomial::from_exponents(exps).unwrap(), 1)
}

proptest! {
    #![proptest_config(cfg(24))]

    /// `m ∈ a_n` iff `m^p ∈ a_{n+1}`, both on the terms and through the
    /// element API, for every monomial with exponents up to `p^N`.
    #[test]
    fn membership_is_depth_consistent(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3]), k in 0usize..=2) {
        let b = GroebnerBudget::default();
        let r = common::ring(p, &["X", "Y"]);
        let mut rng = common::rng(seed);
        let gens = common::random_monomial_ideal(&mut rng, &r, 3, 3);
        let a = PerfectionIdeal::finitely_generated(k, &gens);
        let depth = 2usize;
        let bound = p.pow(depth as u32);
        for n in 0..depth {
            let here = a.backing().term(n, &b).unwrap();
            let next = a.backing().term(n + 1, &b).unwrap();
            for x in 0..=bound {
                for y in 0..=bound {
                    let m = monomial(&r, &[x, y]);
                    let mp = m.frobenius(1).unwrap();
                    prop_assert_eq!(here.contains(&m, &b).unwrap(), next.contains(&mp, &b).unwrap());
                    let shallow = PerfectionElement::raw(n as u32, m.clone());
                    let deep = PerfectionElement::raw(n as u32 + 1, mp);
                    prop_assert_eq!(
                        perfection_member(&a, &shallow, &b).unwrap(),
                        perfection_member(&a, &deep, &b).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn fg_sequences_verify(seed in any::<u64>(), k in 0usize..=2) {
        let b = GroebnerBudget::default();
        let r = common::ring(2, &["X", "Y", "Z"]);
        let mut rng = common::rng(seed);
        let gens = common::random_ideal(&mut rng, &r, 2, 2, 3);
        let s = FSequence::fg_perfection(k, &gens, ClosureParams::default());
        prop_assert!(fseq_verify(&s, 3, &b).unwrap().passed());
    }

    #[test]
    fn ass_grows_along_monomial_sequences(seed in any::<u64>(), k in 0usize..=2) {
        let b = GroebnerBudget::default();
        let r = common::ring(3, &["X", "Y"]);
        let mut rng = common::rng(seed);
        let gens = common::random_monomial_ideal(&mut rng, &r, 3, 4);
        let s = FSequence::fg_perfection(k, &gens, ClosureParams::default());
        prop_assert!(fseq_verify(&s, 3, &b).unwrap().passed());
        for n in 0..3 {
            let here = ass_monomial(&s.term(n, &b).unwrap(), &b).unwrap();
            let next = ass_monomial(&s.term(n + 1, &b).unwrap(), &b).unwrap();
            prop_assert!(here.iter().all(|q| next.contains(q)));
        }
    }

    #[test]
    fn intersection_sequences_are_termwise(seed in any::<u64>()) {
        let b = GroebnerBudget::default();
        let r = common::ring(2, &["X", "Y"]);
        let mut rng = common::rng(seed);
        let s1 = FSequence::fg_perfection(rng.gen_range(0..=1), &common::random_ideal(&mut rng, &r, 2, 2, 3), ClosureParams::default());
        let s2 = FSequence::frobenius_powers(&common::random_ideal(&mut rng, &r, 2, 2, 3));
        let both = FSequence::intersection(vec![s1.clone(), s2.clone()]).unwrap();
        for n in 0..=2 {
            let t = both.term(n, &b).unwrap();
            let a = s1.term(n, &b).unwrap();
            let c = s2.term(n, &b).unwrap();
            prop_assert!(t.is_subset(&a, &b).unwrap() && t.is_subset(&c, &b).unwrap());
            prop_assert!(a.intersect(&c, &b).unwrap().is_subset(&t, &b).unwrap());
        }
        prop_assert!(fseq_verify(&both, 2, &b).unwrap().passed());
    }
}

/// Every generator `r` of a constant prime sequence gives members
/// `r^(1/p^(n+1))` whose p-th power is `r^(1/p^n)`.
#[test]
fn constant_primes_are_perfect() {
    let b = GroebnerBudget::default();
    for (p, gens) in [(2u64, vec!["X", "Y"]), (3, vec!["X"]), (5, vec!["Y - 2", "X"])] {
        let r = common::ring(p, &["X", "Y"]);
        let prime = Ideal::parse(&r, &gens).unwrap();
        let a = PerfectionIdeal::new(FSequence::constant_prime(&prime));
        for g in prime.gens() {
            for n in 0..4u32 {
                let root = PerfectionElement::new(n + 1, g.clone());
                assert!(perfection_member(&a, &root, &b).unwrap());
                assert_eq!(root.frobenius().unwrap(), PerfectionElement::new(n, g.clone()));
            }
        }
        assert!(fseq_verify(a.backing(), 4, &b).unwrap().passed());
    }
}

#[test]
fn unbounded_ass_example_is_strict() {
    let b = GroebnerBudget::default();
    for (p, l, t) in [(5u64, 2u64, vec![1u64, 1, 1]), (5, 5, vec![2, 1, 3]), (3, 3, vec![1, 2])] {
        let depth = t.len();
        let rep = build_unbounded_ass(p, l, &t, depth, &b).unwrap();
        assert!(rep.verify.passed(), "p={p} l={l} t={t:?}");
        for w in rep.steps.windows(2) {
            assert!(w[0].ass.iter().all(|q| w[1].ass.contains(q)));
            assert_eq!(w[1].ass.len(), w[0].ass.len() + 1);
        }
        assert_eq!(rep.certificate.h as u64, *t.iter().max().unwrap());
        assert!(rep.no_primary_decomposition);
    }
}
