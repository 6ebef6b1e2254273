//! Seeded random corpora shared by the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use charp::{Ideal, Monomial, MonomialOrder, PolyRing, Polynomial, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn ring(p: u64, vars: &[&str]) -> Arc<Ring> {
    Ring::polynomial(PolyRing::new(p, vars, MonomialOrder::Grevlex).unwrap())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random exponent vector of total degree in `1..=max_deg`.
pub fn random_monomial(rng: &mut ChaCha8Rng, nvars: usize, max_deg: u64) -> Monomial {
    let target = rng.gen_range(1..=max_deg);
    let mut exps = vec![0u64; nvars];
    for _ in 0..target {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::from_exponents(&exps).unwrap()
}

/// Random polynomial without constant term: up to `max_terms` terms of
/// degree at most `max_deg`. Ideals built from these are proper.
pub fn random_poly(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, max_terms: usize, max_deg: u64) -> Polynomial {
    let base = ring.base();
    let p = base.characteristic() as u32;
    loop {
        let n = rng.gen_range(1..=max_terms);
        let terms: Vec<_> = (0..n)
            .map(|_| (random_monomial(rng, base.nvars(), max_deg), rng.gen_range(1..p)))
            .collect();
        let g = Polynomial::from_terms(base, terms);
        if !g.is_zero() {
            return g;
        }
    }
}

/// Random ideal with 1..=max_gens generators of degree at most `max_deg`.
pub fn random_ideal(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, max_gens: usize, max_terms: usize, max_deg: u64) -> Ideal {
    let n = rng.gen_range(1..=max_gens);
    let gens = (0..n).map(|_| random_poly(rng, ring, max_terms, max_deg)).collect();
    Ideal::new(ring, gens).unwrap()
}

/// Random monomial ideal with 1..=max_gens generators of degree 1..=max_deg.
pub fn random_monomial_ideal(rng: &mut ChaCha8Rng, ring: &Arc<Ring>, max_gens: usize, max_exp: u64) -> Ideal {
    let base = ring.base();
    let n = rng.gen_range(1..=max_gens);
    let gens = (0..n)
        .map(|_| {
            let exps: Vec<u64> = loop {
                let e: Vec<u64> = (0..base.nvars()).map(|_| rng.gen_range(0..=max_exp)).collect();
                if e.iter().any(|x| *x > 0) {
                    break e;
                }
            };
            Polynomial::monomial(base, Monomial::from_exponents(&exps).unwrap(), 1)
        })
        .collect();
    Ideal::new(ring, gens).unwrap()
}
