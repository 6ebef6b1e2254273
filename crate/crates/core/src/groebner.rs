//! Reduced Gröbner bases by Buchberger's algorithm.
//!
//! Pairs are managed with the Gebauer–Möller installation (product and chain
//! criteria) and selected by the normal strategy: smallest lcm under the
//! active order, ties broken by basis index. Reducers are chosen as the first
//! divisor in basis order. Both choices are fixed, so the computation is
//! reproducible and the final reduced basis is unique anyway.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};
use std::sync::Arc;

use crate::error::{BudgetLimit, Error, Result};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Term};
use crate::ring::PolyRing;

/// Per-computation resource caps, plus shared counters of what was used.
#[derive(Clone, Debug)]
pub struct GroebnerBudget {
    pub max_pairs: u64,
    pub max_poly_terms: u64,
    pub max_degree: u64,
    usage: Arc<BudgetUsage>,
}

#[derive(Debug, Default)]
pub struct BudgetUsage {
    pub computations: AtomicU64,
    pub pairs: AtomicU64,
    pub max_pairs_single: AtomicU64,
    pub max_terms: AtomicU64,
    pub max_degree: AtomicU64,
}

/// Snapshot of [`BudgetUsage`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct UsageSnapshot {
    pub computations: u64,
    pub pairs: u64,
    pub max_pairs_single: u64,
    pub max_terms: u64,
    pub max_degree: u64,
}

impl Default for GroebnerBudget {
    fn default() -> Self {
        Self::new(200_000, 100_000, 4096)
    }
}

impl GroebnerBudget {
    pub fn new(max_pairs: u64, max_poly_terms: u64, max_degree: u64) -> Self {
        Self {
            max_pairs: max_pairs.max(1),
            max_poly_terms: max_poly_terms.max(1),
            max_degree: max_degree.max(1),
            usage: Arc::default(),
        }
    }

    pub fn usage(&self) -> UsageSnapshot {
        let u = &self.usage;
        UsageSnapshot {
            computations: u.computations.load(AtomicOrdering::Relaxed),
            pairs: u.pairs.load(AtomicOrdering::Relaxed),
            max_pairs_single: u.max_pairs_single.load(AtomicOrdering::Relaxed),
            max_terms: u.max_terms.load(AtomicOrdering::Relaxed),
            max_degree: u.max_degree.load(AtomicOrdering::Relaxed),
        }
    }

    fn check_terms(&self, n: usize) -> Result<()> {
        self.usage
            .max_terms
            .fetch_max(n as u64, AtomicOrdering::Relaxed);
        if n as u64 > self.max_poly_terms {
            return Err(Error::GroebnerBudgetExceeded {
                limit: BudgetLimit::PolyTerms,
                value: self.max_poly_terms,
            });
        }
        Ok(())
    }

    fn check_degree(&self, d: u64) -> Result<()> {
        self.usage.max_degree.fetch_max(d, AtomicOrdering::Relaxed);
        if d > self.max_degree {
            return Err(Error::GroebnerBudgetExceeded {
                limit: BudgetLimit::Degree,
                value: self.max_degree,
            });
        }
        Ok(())
    }
}

/// Full reduction of `f` by the monic polynomials `basis`; the remainder has
/// no term divisible by any leading monomial of `basis`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], budget: &GroebnerBudget) -> Result<Polynomial> {
    let ring = f.ring().clone();
    let field = *ring.field();
    let order = ring.order();
    let mut work: Vec<Term> = f.terms().to_vec();
    let mut start = 0usize;
    let mut rem: Vec<Term> = Vec::new();
    while start < work.len() {
        let (m, c) = &work[start];
        let reducer = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(m)));
        match reducer {
            None => {
                rem.push(work[start].clone());
                start += 1;
            }
            Some(g) => {
                debug_assert_eq!(g.leading_coeff(), 1);
                let q = m.div(g.leading_monomial().unwrap()).unwrap();
                let factor = field.neg(*c);
                // merge work[start+1..] with factor * q * tail(g)
                let tail = &g.terms()[1..];
                let a = &work[start + 1..];
                let mut out = Vec::with_capacity(a.len() + tail.len());
                let (mut i, mut j) = (0usize, 0usize);
                let mut pending: Option<Term> = None;
                loop {
                    if pending.is_none() && j < tail.len() {
                        pending = Some((tail[j].0.mul(&q)?, field.mul(tail[j].1, factor)));
                        j += 1;
                    }
                    match (a.get(i), pending.as_ref()) {
                        (None, None) => break,
                        (Some(_), None) => {
                            out.extend_from_slice(&a[i..]);
                            break;
                        }
                        (None, Some(_)) => out.push(pending.take().unwrap()),
                        (Some((am, ac)), Some((bm, bc))) => match order.compare(am, bm) {
                            Ordering::Greater => {
                                out.push((am.clone(), *ac));
                                i += 1;
                            }
                            Ordering::Less => out.push(pending.take().unwrap()),
                            Ordering::Equal => {
                                let s = field.add(*ac, *bc);
                                if s != 0 {
                                    out.push((am.clone(), s));
                                }
                                i += 1;
                                pending = None;
                            }
                        },
                    }
                }
                budget.check_terms(out.len() + rem.len())?;
                work = out;
                start = 0;
            }
        }
    }
    Ok(Polynomial::from_sorted(&ring, rem))
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Buchberger<'a> {
    ring: Arc<PolyRing>,
    budget: &'a GroebnerBudget,
    polys: Vec<Polynomial>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    processed: u64,
}

impl<'a> Buchberger<'a> {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().unwrap()
    }

    fn active_polys(&self) -> Vec<Polynomial> {
        self.active.iter().map(|&i| self.polys[i].clone()).collect()
    }

    /// Gebauer–Möller update after appending `h`.
    fn install(&mut self, h_poly: Polynomial) -> Result<()> {
        self.budget.check_degree(h_poly.total_degree())?;
        self.budget.check_terms(h_poly.len())?;
        let h = self.polys.len();
        self.polys.push(h_poly);
        let lm_h = self.lm(h).clone();

        let candidates: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| Pair {
                i: g,
                j: h,
                lcm: self.lm(g).lcm(&lm_h),
            })
            .collect();
        let mut kept: Vec<Pair> = Vec::new();
        for (k, c) in candidates.iter().enumerate() {
            let coprime = self.lm(c.i).is_coprime(&lm_h);
            let dominated = candidates[k + 1..]
                .iter()
                .chain(kept.iter())
                .any(|o| o.lcm.divides(&c.lcm));
            if coprime || !dominated {
                kept.push(c.clone());
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|c| !self.lm(c.i).is_coprime(&lm_h))
            .collect();

        let old = std::mem::take(&mut self.pairs);
        for pr in old {
            let keep = !lm_h.divides(&pr.lcm)
                || self.lm(pr.i).lcm(&lm_h) == pr.lcm
                || self.lm(pr.j).lcm(&lm_h) == pr.lcm;
            if keep {
                self.pairs.push(pr);
            }
        }
        self.pairs.extend(fresh);

        let polys = &self.polys;
        self.active
            .retain(|&g| !lm_h.divides(polys[g].leading_monomial().unwrap()));
        self.active.push(h);
        Ok(())
    }

    fn select(&mut self) -> Option<Pair> {
        let order = self.ring.order();
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                order
                    .compare(&a.lcm, &b.lcm)
                    .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, pr: &Pair) -> Result<Polynomial> {
        let f = &self.polys[pr.i];
        let g = &self.polys[pr.j];
        let uf = pr.lcm.div(f.leading_monomial().unwrap()).unwrap();
        let ug = pr.lcm.div(g.leading_monomial().unwrap()).unwrap();
        let minus_one = self.ring.field().neg(1);
        f.mul_term(&uf, 1)?.add_mul_term(minus_one, &ug, g)
    }

    fn run(&mut self) -> Result<()> {
        while let Some(pr) = self.select() {
            self.processed += 1;
            self.budget.usage.pairs.fetch_add(1, AtomicOrdering::Relaxed);
            if self.processed > self.budget.max_pairs {
                return Err(Error::GroebnerBudgetExceeded {
                    limit: BudgetLimit::Pairs,
                    value: self.budget.max_pairs,
                });
            }
            self.budget.check_degree(pr.lcm.degree())?;
            let s = self.spoly(&pr)?;
            let h = normal_form(&s, &self.active_polys(), self.budget)?;
            if !h.is_zero() {
                self.install(h.make_monic())?;
            }
        }
        Ok(())
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, all of which must
/// live in `ring` (whose order is the one used). The result is monic, fully
/// inter-reduced and sorted by descending leading monomial.
pub fn reduced_groebner_basis(
    ring: &Arc<PolyRing>,
    gens: &[Polynomial],
    budget: &GroebnerBudget,
) -> Result<Vec<Polynomial>> {
    budget.usage.computations.fetch_add(1, AtomicOrdering::Relaxed);
    for g in gens {
        if !PolyRing::same(g.ring(), ring) {
            return Err(Error::RingMismatch);
        }
    }
    let order = ring.order();
    let mut input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    input.sort_by(|a, b| {
        order
            .compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
            .then_with(|| a.len().cmp(&b.len()))
    });
    let mut bb = Buchberger {
        ring: ring.clone(),
        budget,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        processed: 0,
    };
    for f in input {
        let h = normal_form(&f, &bb.active_polys(), budget)?;
        if !h.is_zero() {
            if h.is_constant() {
                return Ok(vec![Polynomial::one(ring)]);
            }
            bb.install(h.make_monic())?;
        }
    }
    bb.run()?;
    let pairs_used = bb.processed;
    budget
        .usage
        .max_pairs_single
        .fetch_max(pairs_used, AtomicOrdering::Relaxed);

    let mut basis = bb.active_polys();
    basis.sort_by(|a, b| order.compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap()));
    if basis.iter().any(|g| g.is_constant()) {
        return Ok(vec![Polynomial::one(ring)]);
    }
    // tail-reduce each element by the others; leading terms are untouched
    // because the basis is minimal
    let mut reduced = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others: Vec<Polynomial> = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, g)| g.clone())
            .collect();
        let g = &basis[k];
        let (lm, lc) = g.leading_term().unwrap().clone();
        let tail = Polynomial::from_sorted(ring, g.terms()[1..].to_vec());
        let tail = normal_form(&tail, &others, budget)?;
        let head = Polynomial::monomial(ring, lm, lc);
        reduced.push(head.add(&tail)?);
    }
    Ok(reduced)
}

/// Whether `basis` is a Gröbner basis, by the S-pair criterion. Test oracle.
pub fn is_groebner_basis(basis: &[Polynomial], budget: &GroebnerBudget) -> Result<bool> {
    let monic: Vec<Polynomial> = basis.iter().map(|g| g.make_monic()).collect();
    let ring = match monic.first() {
        Some(g) => g.ring().clone(),
        None => return Ok(true),
    };
    let minus_one = ring.field().neg(1);
    for i in 0..monic.len() {
        for j in i + 1..monic.len() {
            let (f, g) = (&monic[i], &monic[j]);
            let lcm = f.leading_monomial().unwrap().lcm(g.leading_monomial().unwrap());
            let uf = lcm.div(f.leading_monomial().unwrap()).unwrap();
            let ug = lcm.div(g.leading_monomial().unwrap()).unwrap();
            let s = f.mul_term(&uf, 1)?.add_mul_term(minus_one, &ug, g)?;
            if !normal_form(&s, &monic, budget)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
