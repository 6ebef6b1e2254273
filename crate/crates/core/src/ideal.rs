//! Ideals of `F_p[X]/J`, stored as their preimages in `F_p[X]`.
//!
//! An [`Ideal`] keeps its generators as given and caches one reduced Gröbner
//! basis per monomial order. Equality of ideals is equality of reduced bases.
//! Monomial ideals in polynomial rings take combinatorial shortcuts
//! (divisibility, lcm, exponent subtraction); every shortcut has a
//! `*_buchberger` twin that always goes through the general machinery.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::groebner::{normal_form, reduced_groebner_basis, GroebnerBudget};
use crate::monomial::{Monomial, MonomialOrder};
use crate::parse::parse_polynomial;
use crate::poly::Polynomial;
use crate::ring::{PolyRing, Ring};

type GbCache = Arc<Mutex<HashMap<MonomialOrder, Arc<Vec<Polynomial>>>>>;

#[derive(Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    gb_cache: GbCache,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal({})", self)
    }
}

impl std::fmt::Display for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))?;
        if !self.ring.is_polynomial_ring() {
            f.write_str(" + J")?;
        }
        Ok(())
    }
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if !PolyRing::same(g.ring(), ring.base()) {
                return Err(Error::RingMismatch);
            }
            if !g.is_zero() && !kept.contains(&g) {
                kept.push(g);
            }
        }
        Ok(Self {
            ring: ring.clone(),
            gens: kept,
            gb_cache: GbCache::default(),
        })
    }

    pub fn parse(ring: &Arc<Ring>, gens: &[&str]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|s| parse_polynomial(ring.base(), s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Self::new(ring, Vec::new()).unwrap()
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        Self::new(ring, vec![Polynomial::one(ring.base())]).unwrap()
    }

    #[inline]
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    #[inline]
    pub fn base(&self) -> &Arc<PolyRing> {
        self.ring.base()
    }

    /// Generators as supplied (the quotient ideal is implicit).
    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Generators of the preimage in the covering ring.
    pub fn all_gens(&self) -> Vec<Polynomial> {
        let mut out = self.gens.clone();
        for j in self.ring.quotient_gens() {
            if !out.contains(j) {
                out.push(j.clone());
            }
        }
        out
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if Ring::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn check_poly(&self, g: &Polynomial) -> Result<()> {
        if PolyRing::same(g.ring(), self.ring.base()) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Monomial in the covering ring, quotient included.
    pub fn is_monomial(&self) -> bool {
        self.gens.iter().all(Polynomial::is_monomial)
            && self.ring.quotient_gens().iter().all(Polynomial::is_monomial)
    }

    /// Monomial ideal of a polynomial ring: the shortcut domain.
    fn monomial_fast(&self) -> bool {
        self.ring.is_polynomial_ring() && self.gens.iter().all(Polynomial::is_monomial)
    }

    /// Minimal monomial generators (only meaningful when monomial).
    pub fn monomial_gens(&self) -> Vec<Monomial> {
        minimalize(self.all_gens().iter().filter_map(|g| g.leading_monomial().cloned()).collect())
    }

    /// Reduced Gröbner basis under `order`, cached.
    pub fn reduced_gb(
        &self,
        order: MonomialOrder,
        budget: &GroebnerBudget,
    ) -> Result<Arc<Vec<Polynomial>>> {
        if let Some(b) = self.gb_cache.lock().unwrap().get(&order) {
            return Ok(b.clone());
        }
        let target = self.base().with_order(order);
        let gens: Vec<Polynomial> = self.all_gens().iter().map(|g| g.reorder(&target)).collect();
        let basis = Arc::new(reduced_groebner_basis(&target, &gens, budget)?);
        // concurrent fills compute the same unique basis
        self.gb_cache.lock().unwrap().insert(order, basis.clone());
        Ok(basis)
    }

    /// Reduced basis under the ring's own order.
    pub fn canonical(&self, budget: &GroebnerBudget) -> Result<Arc<Vec<Polynomial>>> {
        self.reduced_gb(self.base().order(), budget)
    }

    /// Same ideal, with the reduced Gröbner basis as generator list.
    pub fn canonicalized(&self, budget: &GroebnerBudget) -> Result<Ideal> {
        let gb = self.canonical(budget)?;
        let gens: Vec<Polynomial> = if self.ring.is_polynomial_ring() {
            gb.to_vec()
        } else {
            // drop basis elements that already lie in J
            let j = Ideal::new(&Ring::polynomial(self.base().clone()), self.ring.quotient_gens().to_vec())?;
            let mut kept = Vec::new();
            for g in gb.iter() {
                if !j.contains(g, budget)? {
                    kept.push(g.clone());
                }
            }
            kept
        };
        let out = Ideal::new(&self.ring, gens)?;
        out.gb_cache
            .lock()
            .unwrap()
            .insert(self.base().order(), gb);
        Ok(out)
    }

    pub fn equals(&self, other: &Ideal, budget: &GroebnerBudget) -> Result<bool> {
        self.check_ring(other)?;
        if self.monomial_fast() && other.monomial_fast() {
            return Ok(self.monomial_gens() == other.monomial_gens());
        }
        Ok(self.canonical(budget)? == other.canonical(budget)?)
    }

    pub fn is_unit(&self, budget: &GroebnerBudget) -> Result<bool> {
        if self.gens.iter().any(Polynomial::is_constant) {
            return Ok(true);
        }
        let gb = self.canonical(budget)?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.all_gens().is_empty()
    }

    /// Membership of `g` in the preimage.
    pub fn contains(&self, g: &Polynomial, budget: &GroebnerBudget) -> Result<bool> {
        self.check_poly(g)?;
        if g.is_zero() {
            return Ok(true);
        }
        if self.monomial_fast() {
            let gens = self.monomial_gens();
            return Ok(g
                .terms()
                .iter()
                .all(|(m, _)| gens.iter().any(|d| d.divides(m))));
        }
        self.contains_buchberger(g, budget)
    }

    pub fn contains_buchberger(&self, g: &Polynomial, budget: &GroebnerBudget) -> Result<bool> {
        self.check_poly(g)?;
        let gb = self.canonical(budget)?;
        Ok(normal_form(g, &gb, budget)?.is_zero())
    }

    /// Normal form modulo the canonical basis.
    pub fn reduce(&self, g: &Polynomial, budget: &GroebnerBudget) -> Result<Polynomial> {
        self.check_poly(g)?;
        let gb = self.canonical(budget)?;
        normal_form(g, &gb, budget)
    }

    /// First generator of `self` that is not in `other`, if any.
    pub fn first_gen_outside(&self, other: &Ideal, budget: &GroebnerBudget) -> Result<Option<Polynomial>> {
        self.check_ring(other)?;
        for g in &self.gens {
            if !other.contains(g, budget)? {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }

    pub fn is_subset(&self, other: &Ideal, budget: &GroebnerBudget) -> Result<bool> {
        Ok(self.first_gen_outside(other, budget)?.is_none())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        Ideal::new(&self.ring, gens)
    }

    /// `self^h` by generator products (duplicates removed).
    pub fn power(&self, h: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..h {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// Intersection. Monomial ideals use pairwise lcms.
    pub fn intersect(&self, other: &Ideal, budget: &GroebnerBudget) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.monomial_fast() && other.monomial_fast() {
            let a = self.monomial_gens();
            let b = other.monomial_gens();
            let lcms = a.iter().flat_map(|x| b.iter().map(move |y| x.lcm(y))).collect();
            return monomial_ideal(&self.ring, minimalize(lcms));
        }
        self.intersect_buchberger(other, budget)
    }

    /// Intersection through `t*I + (1-t)*K` and elimination of `t`.
    pub fn intersect_buchberger(&self, other: &Ideal, budget: &GroebnerBudget) -> Result<Ideal> {
        self.check_ring(other)?;
        let gens = intersect_gens(self.base(), &self.all_gens(), &other.all_gens(), budget)?;
        Ideal::new(&self.ring, gens)?.canonicalized(budget)
    }

    /// `(I : g)`.
    pub fn quotient(&self, g: &Polynomial, budget: &GroebnerBudget) -> Result<Ideal> {
        self.check_poly(g)?;
        if g.is_zero() {
            return Err(Error::Invalid("quotient by zero".into()));
        }
        if self.monomial_fast() && g.is_monomial() {
            let m = g.leading_monomial().unwrap();
            let gens = self
                .monomial_gens()
                .iter()
                .map(|a| a.div(&a.gcd(m)).unwrap())
                .collect();
            return monomial_ideal(&self.ring, minimalize(gens));
        }
        self.quotient_buchberger(g, budget)
    }

    /// `(I : g)` as `(I ∩ (g)) / g` in the covering ring.
    pub fn quotient_buchberger(&self, g: &Polynomial, budget: &GroebnerBudget) -> Result<Ideal> {
        self.check_poly(g)?;
        if g.is_zero() {
            return Err(Error::Invalid("quotient by zero".into()));
        }
        let inter = intersect_gens(self.base(), &self.all_gens(), std::slice::from_ref(g), budget)?;
        let gens = inter
            .iter()
            .map(|h| div_exact(h, g))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)?.canonicalized(budget)
    }

    /// `(I : g^∞)`; the ascending chain of quotients stabilizes.
    pub fn saturate(&self, g: &Polynomial, budget: &GroebnerBudget) -> Result<Ideal> {
        self.check_poly(g)?;
        if self.monomial_fast() && g.is_monomial() {
            let m = g.leading_monomial().unwrap();
            let gens = self
                .monomial_gens()
                .iter()
                .map(|a| a.drop_vars(|i| m.exponent(i) > 0))
                .collect();
            return monomial_ideal(&self.ring, minimalize(gens));
        }
        self.saturate_buchberger(g, budget)
    }

    pub fn saturate_buchberger(&self, g: &Polynomial, budget: &GroebnerBudget) -> Result<Ideal> {
        let mut cur = self.canonicalized(budget)?;
        loop {
            let next = cur.quotient_buchberger(g, budget)?;
            if next.equals(&cur, budget)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// `I ∩ F_p[X_{k+1}..X_d]` as an ideal of that smaller polynomial ring.
    pub fn eliminate(&self, first_k: usize, budget: &GroebnerBudget) -> Result<Ideal> {
        let nv = self.base().nvars();
        if first_k > nv {
            return Err(Error::Invalid(format!(
                "cannot eliminate {first_k} of {nv} variables"
            )));
        }
        let small = Ring::polynomial(self.base().restricted(first_k..nv, MonomialOrder::Grevlex)?);
        let gb = self.reduced_gb(MonomialOrder::BlockElimination(first_k), budget)?;
        let map: Vec<Option<usize>> = (0..nv).map(|i| i.checked_sub(first_k)).collect();
        let gens = gb
            .iter()
            .filter(|g| g.avoids(|i| i < first_k))
            .map(|g| g.map_ring(small.base(), &map))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&small, gens)?.canonicalized(budget)
    }

    /// Radical membership by the Rabinowitsch trick: `1 ∈ I + (1 - T g)`.
    pub fn in_radical(&self, g: &Polynomial, budget: &GroebnerBudget) -> Result<bool> {
        self.check_poly(g)?;
        if g.is_zero() {
            return Ok(true);
        }
        if self.monomial_fast() {
            let rad: Vec<Monomial> = self.monomial_gens().iter().map(Monomial::radical).collect();
            return Ok(g
                .terms()
                .iter()
                .all(|(m, _)| rad.iter().any(|d| d.divides(m))));
        }
        self.in_radical_buchberger(g, budget)
    }

    pub fn in_radical_buchberger(&self, g: &Polynomial, budget: &GroebnerBudget) -> Result<bool> {
        self.check_poly(g)?;
        let base = self.base();
        let t = base.fresh_name("T", &[]);
        let ext = base.extended(&[], &[t], MonomialOrder::Grevlex)?;
        let nv = base.nvars();
        let map: Vec<Option<usize>> = (0..nv).map(Some).collect();
        let mut gens = self
            .all_gens()
            .iter()
            .map(|f| f.map_ring(&ext, &map))
            .collect::<Result<Vec<_>>>()?;
        let tg = Polynomial::var(&ext, nv).mul(&g.map_ring(&ext, &map)?)?;
        gens.push(Polynomial::one(&ext).sub(&tg)?);
        let gb = reduced_groebner_basis(&ext, &gens, budget)?;
        Ok(gb.len() == 1 && gb[0].is_constant())
    }

    /// Substitutes into every generator (and the quotient, which must be
    /// preserved by the caller's map).
    pub fn substitute(&self, assignments: &BTreeMap<usize, Polynomial>) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.substitute(assignments))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&self.ring, gens)
    }
}

/// Removes duplicates and multiples; sorted for a canonical listing.
pub fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.exponents().cmp(a.exponents())));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|d| d.divides(&g)) {
            out.push(g);
        }
    }
    out
}

pub fn monomial_ideal(ring: &Arc<Ring>, gens: Vec<Monomial>) -> Result<Ideal> {
    let polys = gens
        .into_iter()
        .map(|m| Polynomial::monomial(ring.base(), m, 1))
        .collect();
    Ideal::new(ring, polys)
}

/// Generators of `(a) ∩ (b)` in the covering ring.
fn intersect_gens(
    base: &Arc<PolyRing>,
    a: &[Polynomial],
    b: &[Polynomial],
    budget: &GroebnerBudget,
) -> Result<Vec<Polynomial>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let t = base.fresh_name("t", &[]);
    let ext = base.extended(&[t], &[], MonomialOrder::BlockElimination(1))?;
    let nv = base.nvars();
    let up: Vec<Option<usize>> = (0..nv).map(|i| Some(i + 1)).collect();
    let tvar = Polynomial::var(&ext, 0);
    let one_minus_t = Polynomial::one(&ext).sub(&tvar)?;
    let mut gens = Vec::with_capacity(a.len() + b.len());
    for f in a {
        gens.push(tvar.mul(&f.map_ring(&ext, &up)?)?);
    }
    for g in b {
        gens.push(one_minus_t.mul(&g.map_ring(&ext, &up)?)?);
    }
    let gb = reduced_groebner_basis(&ext, &gens, budget)?;
    let down: Vec<Option<usize>> = (0..=nv).map(|i| i.checked_sub(1)).collect();
    gb.iter()
        .filter(|g| g.avoids(|i| i == 0))
        .map(|g| g.map_ring(base, &down))
        .collect()
}

/// `h / g` when `g` divides `h`.
pub fn div_exact(h: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let field = *g.ring().field();
    let (lm, lc) = g.leading_term().ok_or_else(|| Error::Invalid("division by zero".into()))?;
    let inv = field.inv(*lc);
    let mut rem = h.clone();
    let mut quot = Vec::new();
    while let Some((m, c)) = rem.leading_term().cloned() {
        let q = m
            .div(lm)
            .ok_or_else(|| Error::Invalid("inexact division".into()))?;
        let k = field.mul(c, inv);
        rem = rem.add_mul_term(field.neg(k), &q, g)?;
        quot.push((q, k));
    }
    Ok(Polynomial::from_sorted(g.ring(), quot))
}
