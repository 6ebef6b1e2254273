//! Primary decomposition of monomial and shifted-monomial ideals, associated
//! primes, localization-contraction, linear-growth certificates and the
//! constructions built on them.
//!
//! A shifted-monomial ideal becomes monomial after a translation
//! `X_i ↦ X_i + λ_i` of some variables; each component records the
//! translation that carries it to its monomial frame.

mod unbounded;
mod growth;

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

pub use unbounded::{build_unbounded_ass, UnboundedAssReport, UnboundedAssStep, OmissionWitness};
pub use growth::{
    certify_growth, decompose_perfection_ideal, find_linear_growth_h, growth_decompose,
    GrowthCertificate, GrowthStep, GrowthMode, PerfectionDecomposition,
};

use crate::error::{Error, Result};
use crate::groebner::GroebnerBudget;
use crate::ideal::{minimalize, monomial_ideal, Ideal};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::Ring;

/// The prime `(X_i - λ_i : i ∈ vars)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonomialPrime {
    vars: Vec<usize>,
    shift: BTreeMap<usize, u32>,
}

impl MonomialPrime {
    pub fn new(vars: impl IntoIterator<Item = usize>) -> Self {
        Self::shifted(vars, BTreeMap::new())
    }

    /// Zero shifts are dropped, so unshifted primes compare equal regardless
    /// of how they were built.
    pub fn shifted(vars: impl IntoIterator<Item = usize>, shift: BTreeMap<usize, u32>) -> Self {
        let vars: BTreeSet<usize> = vars.into_iter().collect();
        Self {
            vars: vars.into_iter().collect(),
            shift: shift.into_iter().filter(|&(_, l)| l != 0).collect(),
        }
    }

    pub fn vars(&self) -> &[usize] {
        &self.vars
    }

    pub fn shift(&self) -> &BTreeMap<usize, u32> {
        &self.shift
    }

    pub fn is_shifted(&self) -> bool {
        !self.shift.is_empty()
    }

    /// Generators `X_i - λ_i`.
    pub fn ideal(&self, ring: &Arc<Ring>) -> Result<Ideal> {
        let base = ring.base();
        let gens = self
            .vars
            .iter()
            .map(|&i| {
                let l = self.shift.get(&i).copied().unwrap_or(0);
                Polynomial::var(base, i).sub(&Polynomial::constant(base, l as i64))
            })
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    fn translation(&self, ring: &Arc<Ring>, sign: i64) -> BTreeMap<usize, Polynomial> {
        let base = ring.base();
        let field = base.field();
        self.shift
            .iter()
            .map(|(&i, &l)| {
                let c = field.from_i64(sign * l as i64);
                let img = Polynomial::var(base, i)
                    .add(&Polynomial::constant(base, c as i64))
                    .expect("same ring");
                (i, img)
            })
            .collect()
    }

    /// Applies `X_i ↦ X_i + λ_i`, carrying shifted objects to the monomial frame.
    pub fn to_frame(&self, i: &Ideal) -> Result<Ideal> {
        if self.shift.is_empty() {
            return Ok(i.clone());
        }
        i.substitute(&self.translation(i.ring(), 1))
    }

    pub fn from_frame(&self, i: &Ideal) -> Result<Ideal> {
        if self.shift.is_empty() {
            return Ok(i.clone());
        }
        i.substitute(&self.translation(i.ring(), -1))
    }

    pub fn poly_to_frame(&self, ring: &Arc<Ring>, g: &Polynomial) -> Result<Polynomial> {
        if self.shift.is_empty() {
            return Ok(g.clone());
        }
        g.substitute(&self.translation(ring, 1))
    }

    /// The prime on `vars` in this frame; shifts of other variables are
    /// irrelevant to it and dropped.
    fn with_vars(&self, vars: impl IntoIterator<Item = usize>) -> Self {
        let vars: BTreeSet<usize> = vars.into_iter().collect();
        let shift = self
            .shift
            .iter()
            .filter(|(v, _)| vars.contains(v))
            .map(|(&v, &l)| (v, l))
            .collect();
        Self::shifted(vars, shift)
    }

    /// Printable form such as `(X, Y - 1)`.
    pub fn display(&self, ring: &Arc<Ring>) -> String {
        match self.ideal(ring) {
            Ok(i) => {
                let parts: Vec<String> = i.gens().iter().map(|g| g.to_string()).collect();
                format!("({})", parts.join(", "))
            }
            Err(_) => "(?)".into(),
        }
    }
}

/// One primary component with its prime.
#[derive(Clone, Debug)]
pub struct PrimaryComponent {
    pub ideal: Ideal,
    pub radical: Ideal,
    pub prime: MonomialPrime,
    /// In the monomial frame, every variable occurring in a generator also
    /// occurs as a pure power.
    pub verified_primary: bool,
}

impl PrimaryComponent {
    pub fn shift(&self) -> &BTreeMap<usize, u32> {
        self.prime.shift()
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub components: Vec<PrimaryComponent>,
    pub minimal: bool,
}

impl Decomposition {
    pub fn primes(&self) -> Vec<MonomialPrime> {
        self.components.iter().map(|c| c.prime.clone()).collect()
    }

    /// Intersection of all components.
    pub fn intersection(&self, budget: &GroebnerBudget) -> Result<Ideal> {
        let mut it = self.components.iter();
        let first = it
            .next()
            .ok_or_else(|| Error::Invalid("empty decomposition".into()))?;
        let mut acc = first.ideal.clone();
        for c in it {
            acc = acc.intersect(&c.ideal, budget)?;
        }
        Ok(acc)
    }
}

fn frame_is_monomial(i: &Ideal) -> bool {
    i.ring().is_polynomial_ring() && i.is_monomial()
}

/// Monomial primary criterion: each variable in a generator's support has a
/// pure power among the generators.
fn monomial_primary(gens: &[Monomial]) -> bool {
    let pure: BTreeSet<usize> = gens.iter().filter_map(Monomial::pure_power_var).collect();
    gens.iter().all(|g| g.support().all(|v| pure.contains(&v)))
}

fn support_of(gens: &[Monomial]) -> Vec<usize> {
    let s: BTreeSet<usize> = gens.iter().flat_map(|g| g.support().collect::<Vec<_>>()).collect();
    s.into_iter().collect()
}

/// Irreducible component `(X_i^{a_i})`, stored as `(i, a_i)` pairs.
type Irreducible = Vec<(usize, u64)>;

/// Irredundant irreducible decomposition by splitting `u·v` with coprime
/// factors into `(I + u) ∩ (I + v)`.
fn irreducible_components(gens: Vec<Monomial>) -> Vec<Irreducible> {
    let mut found: BTreeSet<Irreducible> = BTreeSet::new();
    let mut work = vec![minimalize(gens)];
    while let Some(gs) = work.pop() {
        match gs.iter().find(|g| g.support().nth(1).is_some()) {
            None => {
                let mut irr: Irreducible = gs
                    .iter()
                    .map(|g| {
                        let v = g.pure_power_var().expect("pure power");
                        (v, g.exponent(v))
                    })
                    .collect();
                irr.sort_unstable();
                found.insert(irr);
            }
            Some(g) => {
                let v = g.support().next().unwrap();
                let nv = g.nvars();
                let u = Monomial::var(v, nv).scale(g.exponent(v)).expect("divides g");
                let w = g.div(&u).expect("divides g");
                for part in [u, w] {
                    let mut next = gs.clone();
                    next.push(part);
                    work.push(minimalize(next));
                }
            }
        }
    }
    // (X_v^{a_v}) ⊆ (X_w^{b_w}) iff each X_v^{a_v} is divisible by some X_v^{b_v}
    let subset = |a: &Irreducible, b: &Irreducible| {
        a.iter().all(|&(v, e)| b.iter().any(|&(w, f)| w == v && f <= e))
    };
    let all: Vec<Irreducible> = found.into_iter().collect();
    all.iter()
        .filter(|q| !all.iter().any(|o| o != *q && subset(o, q)))
        .cloned()
        .collect()
}

/// Minimal primary decomposition of a proper monomial ideal of a polynomial
/// ring. Soundness (intersection equals the input) and minimality (no
/// component contains the intersection of the others) are re-checked before
/// returning.
pub fn decompose_monomial(i: &Ideal, budget: &GroebnerBudget) -> Result<Decomposition> {
    decompose_in_frame(i, &MonomialPrime::new([]), budget)
}

/// Decomposition of an ideal that `frame` carries to a monomial ideal.
pub fn decompose_shifted(
    i: &Ideal,
    frame: &MonomialPrime,
    budget: &GroebnerBudget,
) -> Result<Decomposition> {
    decompose_in_frame(i, frame, budget)
}

fn decompose_in_frame(i: &Ideal, frame: &MonomialPrime, budget: &GroebnerBudget) -> Result<Decomposition> {
    let ring = i.ring();
    if !ring.is_polynomial_ring() {
        return Err(Error::QuotientUnsupported);
    }
    let framed = frame.to_frame(i)?;
    if !framed.is_monomial() {
        return Err(Error::NonMonomial(framed.gens().iter().find(|g| !g.is_monomial()).map(|g| g.to_string())));
    }
    let gens = framed.monomial_gens();
    if gens.iter().any(Monomial::is_one) {
        return Err(Error::Invalid("decomposition of the unit ideal".into()));
    }
    let mut groups: BTreeMap<Vec<usize>, Vec<Ideal>> = BTreeMap::new();
    for irr in irreducible_components(gens) {
        let nv = ring.base().nvars();
        let ms = irr
            .iter()
            .map(|&(v, a)| Monomial::var(v, nv).scale(a))
            .collect::<Result<Vec<_>>>()?;
        let vars: Vec<usize> = irr.iter().map(|&(v, _)| v).collect();
        groups.entry(vars).or_default().push(monomial_ideal(ring, ms)?);
    }
    let mut components = Vec::with_capacity(groups.len());
    for (vars, parts) in groups {
        let mut q = parts[0].clone();
        for part in &parts[1..] {
            q = q.intersect(part, budget)?;
        }
        let mg = q.monomial_gens();
        let verified_primary = monomial_primary(&mg) && support_of(&mg) == vars;
        let prime = frame.with_vars(vars);
        components.push(PrimaryComponent {
            ideal: frame.from_frame(&q)?.canonicalized(budget)?,
            radical: prime.ideal(ring)?,
            prime,
            verified_primary,
        });
    }
    components.sort_by(|a, b| a.prime.cmp(&b.prime));
    let mut d = Decomposition {
        components,
        minimal: false,
    };
    check_sound(&d, i, budget)?;
    d.minimal = is_minimal(&d, budget)?;
    Ok(d)
}

/// Both containments between the intersection of `d` and `target`.
pub fn check_sound(d: &Decomposition, target: &Ideal, budget: &GroebnerBudget) -> Result<()> {
    let inter = d.intersection(budget)?;
    if let Some(w) = inter.first_gen_outside(target, budget)? {
        return Err(Error::IdentityFailure {
            reason: "intersection of components not contained in the ideal".into(),
            witness: Some(w),
        });
    }
    if let Some(w) = target.first_gen_outside(&inter, budget)? {
        return Err(Error::IdentityFailure {
            reason: "ideal not contained in the intersection of components".into(),
            witness: Some(w),
        });
    }
    Ok(())
}

/// Distinct radicals and no component containing the intersection of the
/// others.
pub fn is_minimal(d: &Decomposition, budget: &GroebnerBudget) -> Result<bool> {
    let primes: BTreeSet<&MonomialPrime> = d.components.iter().map(|c| &c.prime).collect();
    if primes.len() != d.components.len() {
        return Ok(false);
    }
    if d.components.len() == 1 {
        return Ok(true);
    }
    for (k, c) in d.components.iter().enumerate() {
        let rest = Decomposition {
            components: d
                .components
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, c)| c.clone())
                .collect(),
            minimal: false,
        };
        if rest.intersection(budget)?.is_subset(&c.ideal, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Associated primes of a proper monomial ideal, sorted.
pub fn ass_monomial(i: &Ideal, budget: &GroebnerBudget) -> Result<Vec<MonomialPrime>> {
    Ok(decompose_monomial(i, budget)?.primes())
}

/// `I R_P ∩ R`.
///
/// When the prime's translation makes `I` monomial, variables outside the
/// prime are set to 1 in the frame. Otherwise `s_hint`, an element outside
/// `P` killing every component not inside `P`, gives `(I : s^∞)`; if that
/// result is frame-monomial its associated primes are checked to lie in `P`.
pub fn localize_contract(
    i: &Ideal,
    prime: &MonomialPrime,
    s_hint: Option<&Polynomial>,
    budget: &GroebnerBudget,
) -> Result<Ideal> {
    if !i.ring().is_polynomial_ring() {
        return Err(Error::QuotientUnsupported);
    }
    let framed = prime.to_frame(i)?;
    if frame_is_monomial(&framed) {
        let keep: BTreeSet<usize> = prime.vars().iter().copied().collect();
        let gens = framed
            .monomial_gens()
            .iter()
            .map(|m| m.drop_vars(|v| !keep.contains(&v)))
            .collect();
        let local = monomial_ideal(i.ring(), minimalize(gens))?;
        return prime.from_frame(&local)?.canonicalized(budget);
    }
    let s = s_hint.ok_or_else(|| {
        Error::NonMonomial(framed.gens().iter().find(|g| !g.is_monomial()).map(|g| g.to_string()))
    })?;
    if prime.ideal(i.ring())?.contains(s, budget)? {
        return Err(Error::Invalid(format!("localizing element {s} lies in the prime")));
    }
    let sat = i.saturate(s, budget)?;
    let sat_frame = prime.to_frame(&sat)?;
    if frame_is_monomial(&sat_frame) && !sat_frame.is_unit(budget)? {
        let keep: BTreeSet<usize> = prime.vars().iter().copied().collect();
        for q in ass_monomial(&sat_frame, budget)? {
            if !q.vars().iter().all(|v| keep.contains(v)) {
                return Err(Error::IdentityFailure {
                    reason: format!("saturation keeps a component outside the prime: {}", q.display(i.ring())),
                    witness: Some(s.clone()),
                });
            }
        }
    }
    Ok(sat)
}
