//! Sparse multivariate polynomials over `F_p`.
//!
//! Terms are stored in strictly descending order under the ring's monomial
//! order with no zero coefficients, so structural equality is equality of
//! polynomials.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::ring::PolyRing;

pub type Term = (Monomial, u32);

#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Self {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: i64) -> Self {
        let c = ring.field().from_i64(c);
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, 1)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(i, ring.nvars()), 1)
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: u32) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let terms = if c == 0 { Vec::new() } else { vec![(m, c)] };
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = Term>) -> Self {
        let field = *ring.field();
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        for (m, c) in terms {
            let e = acc.entry(m).or_insert(0);
            *e = field.add(*e, c % field.characteristic() as u32);
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    /// Terms already strictly descending with nonzero coefficients.
    pub(crate) fn from_sorted(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|(_, c)| *c != 0));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().compare(&w[0].0, &w[1].0) == Ordering::Greater));
        Self {
            ring: ring.clone(),
            terms,
        }
    }

    #[inline]
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    /// Single-term polynomial.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    #[inline]
    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    #[inline]
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.1)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn neg(&self) -> Self {
        let f = self.ring.field();
        Self {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(*c))).collect(),
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let f = self.ring.field();
        let c = c % f.characteristic() as u32;
        if c == 0 {
            return Self::zero(&self.ring);
        }
        Self {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(*a, c))).collect(),
        }
    }

    pub fn make_monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((_, 1)) => self.clone(),
            Some((_, c)) => self.scale(self.ring.field().inv(*c)),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Result<Self> {
        let f = self.ring.field();
        if c == 0 {
            return Ok(Self::zero(&self.ring));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (n, a) in &self.terms {
            terms.push((n.mul(m)?, f.mul(*a, c)));
        }
        Ok(Self::from_sorted(&self.ring, terms))
    }

    /// `self + c * m * other` in one merge pass.
    pub fn add_mul_term(&self, c: u32, m: &Monomial, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let f = *self.ring.field();
        let order = self.ring.order();
        if c == 0 || other.is_zero() {
            return Ok(self.clone());
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        let mut pending_b: Option<Term> = None;
        loop {
            if pending_b.is_none() {
                if let Some((n, k)) = b.next() {
                    pending_b = Some((n.mul(m)?, f.mul(*k, c)));
                }
            }
            match (a.peek(), pending_b.as_ref()) {
                (None, None) => break,
                (Some(_), None) => {
                    out.extend(a.by_ref().cloned());
                    break;
                }
                (None, Some(_)) => {
                    out.push(pending_b.take().unwrap());
                }
                (Some((am, ac)), Some((bm, bc))) => match order.compare(am, bm) {
                    Ordering::Greater => {
                        out.push((am.clone(), *ac));
                        a.next();
                    }
                    Ordering::Less => out.push(pending_b.take().unwrap()),
                    Ordering::Equal => {
                        let s = f.add(*ac, *bc);
                        if s != 0 {
                            out.push((am.clone(), s));
                        }
                        a.next();
                        pending_b = None;
                    }
                },
            }
        }
        Ok(Self::from_sorted(&self.ring, out))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_mul_term(1, &Monomial::one(self.ring.nvars()), other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let minus_one = self.ring.field().neg(1);
        self.add_mul_term(minus_one, &Monomial::one(self.ring.nvars()), other)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, *c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, *c);
        }
        let f = *self.ring.field();
        let mut acc: HashMap<Monomial, u32> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let e = acc.entry(a.mul(b)?).or_insert(0);
                *e = f.add(*e, f.mul(*ca, *cb));
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        let order = self.ring.order();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Ok(Self::from_sorted(&self.ring, terms))
    }

    /// `self^(p^e)`: every exponent scaled by `p^e`, coefficients fixed
    /// because Frobenius is the identity on `F_p`.
    pub fn frobenius(&self, e: u32) -> Result<Self> {
        if e == 0 {
            return Ok(self.clone());
        }
        let q = self
            .ring
            .characteristic()
            .checked_pow(e)
            .ok_or(Error::ExponentOverflow)?;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.scale(q)?, *c));
        }
        // scaling every exponent by q > 0 preserves all supported orders
        Ok(Self::from_sorted(&self.ring, terms))
    }

    /// The unique `r` with `r^p = self`, if every exponent is divisible by `p`.
    pub fn p_root(&self) -> Result<Self> {
        let p = self.ring.characteristic();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.exact_root(p).ok_or(Error::NotPPower)?, *c));
        }
        Ok(Self::from_sorted(&self.ring, terms))
    }

    /// `self^m`. The largest power of `p` dividing `m` is applied as a
    /// Frobenius power, the cofactor by binary exponentiation.
    pub fn power(&self, m: u64) -> Result<Self> {
        let p = self.ring.characteristic();
        let mut cofactor = m;
        let mut e = 0u32;
        while cofactor > 0 && cofactor.is_multiple_of(p) {
            cofactor /= p;
            e += 1;
        }
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        while cofactor > 0 {
            if cofactor & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            cofactor >>= 1;
            if cofactor > 0 {
                base = base.mul(&base)?;
            }
        }
        acc.frobenius(e)
    }

    /// Simultaneous substitution; variables without an assignment stay put.
    pub fn substitute(&self, assignments: &BTreeMap<usize, Polynomial>) -> Result<Self> {
        for g in assignments.values() {
            self.check_ring(g)?;
        }
        let mut cache: HashMap<(usize, u64), Polynomial> = HashMap::new();
        let mut out = Self::zero(&self.ring);
        let nv = self.ring.nvars();
        for (m, c) in &self.terms {
            let mut kept = Monomial::one(nv);
            let mut factor = Self::one(&self.ring);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match assignments.get(&i) {
                    Some(g) => {
                        let pw = match cache.get(&(i, e)) {
                            Some(pw) => pw.clone(),
                            None => {
                                let pw = g.power(e)?;
                                cache.insert((i, e), pw.clone());
                                pw
                            }
                        };
                        factor = factor.mul(&pw)?;
                    }
                    None => kept = kept.mul(&Monomial::var(i, nv).scale(e)?)?,
                }
            }
            out = out.add_mul_term(*c, &kept, &factor)?;
        }
        Ok(out)
    }

    /// Moves the polynomial into `target`, sending variable `i` to
    /// `var_map[i]`. Every variable with a nonzero exponent must be mapped.
    pub fn map_ring(&self, target: &Arc<PolyRing>, var_map: &[Option<usize>]) -> Result<Self> {
        let nv = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut exps = vec![0u64; nv];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match var_map.get(i).copied().flatten() {
                    Some(j) => exps[j] += e,
                    None => return Err(Error::RingMismatch),
                }
            }
            terms.push((Monomial::from_exponents(&exps)?, *c));
        }
        Ok(Self::from_terms(target, terms))
    }

    /// Same polynomial in a ring with identical variables but another order.
    pub fn reorder(&self, target: &Arc<PolyRing>) -> Self {
        debug_assert_eq!(target.vars(), self.ring.vars());
        let order = target.order();
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Self {
            ring: target.clone(),
            terms,
        }
    }

    /// Whether no variable in `vars` occurs.
    pub fn avoids(&self, vars: impl Fn(usize) -> bool) -> bool {
        self.terms
            .iter()
            .all(|(m, _)| m.support().all(|i| !vars(i)))
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        crate::parse::write_poly(f, self)
    }
}
