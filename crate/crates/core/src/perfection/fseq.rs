//! Lazily evaluated, memoized f-sequences `(a_n)` with `f^{-1}(a_{n+1}) = a_n`.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::decomp::{localize_contract, MonomialPrime};
use crate::error::{Error, Result};
use crate::frobenius::{f_closure, frob_power, frob_root, DEFAULT_CONFIRM, DEFAULT_MAX_E};
use crate::groebner::GroebnerBudget;
use crate::ideal::{minimalize, monomial_ideal, Ideal};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;

/// Stopping rule for F-closures taken while evaluating terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureParams {
    pub max_e: usize,
    pub confirm: usize,
}

impl Default for ClosureParams {
    fn default() -> Self {
        Self {
            max_e: DEFAULT_MAX_E,
            confirm: DEFAULT_CONFIRM,
        }
    }
}

type TermFn = dyn Fn(usize, &GroebnerBudget) -> Result<Ideal> + Send + Sync;

/// How a [`SeqKind::Table`] continues past its explicit terms.
#[derive(Clone)]
pub enum Extender {
    None,
    /// `a_{last+k} = a_last^[p^k]`.
    FrobeniusOfLast,
    Custom(Arc<TermFn>),
}

impl std::fmt::Debug for Extender {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Extender::None => f.write_str("None"),
            Extender::FrobeniusOfLast => f.write_str("FrobeniusOfLast"),
            Extender::Custom(_) => f.write_str("Custom(..)"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum SeqKind {
    /// `a_n = a^[p^n]`; an f-sequence whenever every ideal is F-closed.
    FrobeniusPowers(Ideal),
    /// `a_n = (b^[p^n])^F`.
    Canonical { base: Ideal, closure: ClosureParams },
    /// `a_n = P` for a prime `P`.
    ConstantPrime(Ideal),
    /// The sequence of `(x^{-k} g_1 x^k, ...)R^∞`: `a_{k+n} = ((g)^[p^n])^F`
    /// and `a_j = f^{-(k-j)}(a_k)` below `k`.
    FgPerfection {
        k: usize,
        gens: Ideal,
        closure: ClosureParams,
    },
    Table { terms: Vec<Ideal>, extender: Extender },
    Intersection(Vec<FSequence>),
    LocalizeContract {
        inner: FSequence,
        prime: MonomialPrime,
        s_hint: Option<Polynomial>,
    },
    /// Term-wise radical of monomial terms.
    Radical(FSequence),
}

struct SeqInner {
    ring: Arc<Ring>,
    kind: SeqKind,
    memo: Mutex<BTreeMap<usize, Ideal>>,
    verified_to: Mutex<Option<usize>>,
}

/// A shared handle; clones see the same memo table.
#[derive(Clone)]
pub struct FSequence {
    inner: Arc<SeqInner>,
}

impl std::fmt::Debug for FSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FSequence")
            .field("kind", &self.inner.kind)
            .finish()
    }
}

impl FSequence {
    pub fn new(ring: &Arc<Ring>, kind: SeqKind) -> Result<Self> {
        let check = |i: &Ideal| {
            if Ring::same(i.ring(), ring) {
                Ok(())
            } else {
                Err(Error::RingMismatch)
            }
        };
        match &kind {
            SeqKind::FrobeniusPowers(a) | SeqKind::ConstantPrime(a) => check(a)?,
            SeqKind::Canonical { base, .. } => check(base)?,
            SeqKind::FgPerfection { gens, .. } => check(gens)?,
            SeqKind::Table { terms, .. } => terms.iter().try_for_each(check)?,
            SeqKind::Intersection(list) => {
                if list.is_empty() {
                    return Err(Error::Invalid("empty intersection".into()));
                }
                for s in list {
                    if !Ring::same(s.ring(), ring) {
                        return Err(Error::RingMismatch);
                    }
                }
            }
            SeqKind::LocalizeContract { inner, .. } | SeqKind::Radical(inner) => {
                if !Ring::same(inner.ring(), ring) {
                    return Err(Error::RingMismatch);
                }
            }
        }
        Ok(Self {
            inner: Arc::new(SeqInner {
                ring: ring.clone(),
                kind,
                memo: Mutex::default(),
                verified_to: Mutex::default(),
            }),
        })
    }

    pub fn frobenius_powers(a: &Ideal) -> Self {
        Self::new(a.ring(), SeqKind::FrobeniusPowers(a.clone())).unwrap()
    }

    pub fn canonical(b: &Ideal, closure: ClosureParams) -> Self {
        Self::new(
            b.ring(),
            SeqKind::Canonical {
                base: b.clone(),
                closure,
            },
        )
        .unwrap()
    }

    pub fn constant_prime(p: &Ideal) -> Self {
        Self::new(p.ring(), SeqKind::ConstantPrime(p.clone())).unwrap()
    }

    pub fn fg_perfection(k: usize, gens: &Ideal, closure: ClosureParams) -> Self {
        Self::new(
            gens.ring(),
            SeqKind::FgPerfection {
                k,
                gens: gens.clone(),
                closure,
            },
        )
        .unwrap()
    }

    pub fn table(ring: &Arc<Ring>, terms: Vec<Ideal>, extender: Extender) -> Result<Self> {
        Self::new(ring, SeqKind::Table { terms, extender })
    }

    pub fn intersection(list: Vec<FSequence>) -> Result<Self> {
        let ring = list
            .first()
            .ok_or_else(|| Error::Invalid("empty intersection".into()))?
            .ring()
            .clone();
        Self::new(&ring, SeqKind::Intersection(list))
    }

    pub fn localize_contract(inner: &FSequence, prime: MonomialPrime, s_hint: Option<Polynomial>) -> Self {
        Self::new(
            inner.ring(),
            SeqKind::LocalizeContract {
                inner: inner.clone(),
                prime,
                s_hint,
            },
        )
        .unwrap()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.inner.ring
    }

    pub fn kind(&self) -> &SeqKind {
        &self.inner.kind
    }

    /// Depth up to which [`fseq_verify`] has passed, if any.
    pub fn verified_to(&self) -> Option<usize> {
        *self.inner.verified_to.lock().unwrap()
    }

    fn memo_get(&self, n: usize) -> Option<Ideal> {
        self.inner.memo.lock().unwrap().get(&n).cloned()
    }

    /// The n-th term, computed once and memoized.
    pub fn term(&self, n: usize, budget: &GroebnerBudget) -> Result<Ideal> {
        if let Some(t) = self.memo_get(n) {
            return Ok(t);
        }
        let t = self.compute(n, budget)?.canonicalized(budget)?;
        self.inner
            .memo
            .lock()
            .unwrap()
            .entry(n)
            .or_insert_with(|| t.clone());
        Ok(t)
    }

    /// Terms `0..=depth`.
    pub fn terms(&self, depth: usize, budget: &GroebnerBudget) -> Result<Vec<Ideal>> {
        (0..=depth).map(|n| self.term(n, budget)).collect()
    }

    fn compute(&self, n: usize, budget: &GroebnerBudget) -> Result<Ideal> {
        let e = |k: usize| u32::try_from(k).map_err(|_| Error::ExponentOverflow);
        match &self.inner.kind {
            SeqKind::FrobeniusPowers(a) => frob_power(a, e(n)?),
            SeqKind::Canonical { base, closure } => closed(&frob_power(base, e(n)?)?, *closure, budget),
            SeqKind::ConstantPrime(p) => Ok(p.clone()),
            SeqKind::FgPerfection { k, gens, closure } => {
                if n >= *k {
                    closed(&frob_power(gens, e(n - k)?)?, *closure, budget)
                } else {
                    frob_root(&self.term(n + 1, budget)?, budget)
                }
            }
            SeqKind::Table { terms, extender } => {
                if let Some(t) = terms.get(n) {
                    return Ok(t.clone());
                }
                match extender {
                    Extender::None => Err(Error::TermUnavailable(n)),
                    Extender::FrobeniusOfLast => {
                        let last = terms.len().checked_sub(1).ok_or(Error::TermUnavailable(n))?;
                        frob_power(&terms[last], e(n - last)?)
                    }
                    Extender::Custom(f) => f(n, budget),
                }
            }
            SeqKind::Intersection(list) => {
                let mut acc = list[0].term(n, budget)?;
                for s in &list[1..] {
                    acc = acc.intersect(&s.term(n, budget)?, budget)?;
                }
                Ok(acc)
            }
            SeqKind::LocalizeContract { inner, prime, s_hint } => {
                localize_contract(&inner.term(n, budget)?, prime, s_hint.as_ref(), budget)
            }
            SeqKind::Radical(inner) => monomial_radical(&inner.term(n, budget)?),
        }
    }
}

/// F-closure under `params`; skipped in polynomial rings, where every ideal
/// is F-closed.
fn closed(i: &Ideal, params: ClosureParams, budget: &GroebnerBudget) -> Result<Ideal> {
    if i.ring().is_polynomial_ring() {
        return Ok(i.clone());
    }
    Ok(f_closure(i, params.max_e, params.confirm, budget)?.closure)
}

/// Radical of a monomial ideal: squarefree parts of the generators.
pub fn monomial_radical(i: &Ideal) -> Result<Ideal> {
    if !i.is_monomial() || !i.ring().is_polynomial_ring() {
        return Err(Error::NonMonomial(None));
    }
    let gens: Vec<Monomial> = i.monomial_gens().iter().map(Monomial::radical).collect();
    monomial_ideal(i.ring(), minimalize(gens))
}

/// Which f-sequence condition broke.
#[derive(Clone, Debug)]
pub enum VerifyFailure {
    /// `f^{-1}(a_{n+1}) != a_n`.
    RootMismatch { root: Ideal, expected: Ideal },
    /// `a_{n+1} ⊄ a_n`.
    NotDescending,
    /// `a_n^[p] ⊄ a_{n+1}`.
    FrobeniusNotContained,
}

#[derive(Clone, Debug)]
pub enum VerifyOutcome {
    Pass { depth: usize },
    Failure {
        index: usize,
        failure: VerifyFailure,
        witness: Option<Polynomial>,
    },
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, VerifyOutcome::Pass { .. })
    }
}

/// Checks `f^{-1}(a_{n+1}) = a_n`, `a_{n+1} ⊆ a_n` and `a_n^[p] ⊆ a_{n+1}`
/// for `n = 0..depth`, reporting the first failing index.
pub fn fseq_verify(s: &FSequence, depth: usize, budget: &GroebnerBudget) -> Result<VerifyOutcome> {
    if depth == 0 {
        return Err(Error::Invalid("verification depth must be at least 1".into()));
    }
    for n in 0..depth {
        let cur = s.term(n, budget)?;
        let next = s.term(n + 1, budget)?;
        let root = frob_root(&next, budget)?;
        if !root.equals(&cur, budget)? {
            let witness = match root.first_gen_outside(&cur, budget)? {
                Some(w) => Some(w),
                None => cur.first_gen_outside(&root, budget)?,
            };
            return Ok(VerifyOutcome::Failure {
                index: n,
                failure: VerifyFailure::RootMismatch {
                    root,
                    expected: cur,
                },
                witness,
            });
        }
        if let Some(w) = next.first_gen_outside(&cur, budget)? {
            return Ok(VerifyOutcome::Failure {
                index: n,
                failure: VerifyFailure::NotDescending,
                witness: Some(w),
            });
        }
        if let Some(w) = frob_power(&cur, 1)?.first_gen_outside(&next, budget)? {
            return Ok(VerifyOutcome::Failure {
                index: n,
                failure: VerifyFailure::FrobeniusNotContained,
                witness: Some(w),
            });
        }
    }
    let mut v = s.inner.verified_to.lock().unwrap();
    *v = Some(v.map_or(depth, |d| d.max(depth)));
    Ok(VerifyOutcome::Pass { depth })
}

/// Term-wise radical (monomial terms only).
pub fn fseq_radical(s: &FSequence) -> FSequence {
    FSequence::new(s.ring(), SeqKind::Radical(s.clone())).unwrap()
}

/// Whether terms `0..=depth` all coincide.
pub fn is_constant_to(s: &FSequence, depth: usize, budget: &GroebnerBudget) -> Result<bool> {
    let first = s.term(0, budget)?;
    for n in 1..=depth {
        if !s.term(n, budget)?.equals(&first, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}
