use super::{
    check_sound, decompose_monomial, decompose_shifted, is_minimal, localize_contract, Decomposition,
    MonomialPrime, PrimaryComponent,
};
use crate::error::{Error, Result};
use crate::frobenius::{f_closure, frob_power, DEFAULT_CONFIRM, DEFAULT_MAX_E};
use crate::groebner::GroebnerBudget;
use crate::ideal::Ideal;
use crate::perfection::{fseq_verify, FSequence, PerfectionIdeal, SeqKind, VerifyOutcome};

/// Upper limit on the exponent searched by [`find_linear_growth_h`].
const MAX_H: u32 = 1 << 12;

/// Smallest `h` with `rad(q_i)^h ⊆ q_i` for every component.
pub fn find_linear_growth_h(d: &Decomposition, budget: &GroebnerBudget) -> Result<u32> {
    let mut h = 1;
    for c in &d.components {
        while !c.radical.power(h)?.is_subset(&c.ideal, budget)? {
            h += 1;
            if h > MAX_H {
                return Err(Error::Invalid(format!(
                    "no power of {} up to {MAX_H} lies in the component",
                    c.prime.display(c.ideal.ring())
                )));
            }
        }
    }
    Ok(h)
}

#[derive(Clone, Debug)]
pub struct GrowthStep {
    pub n: usize,
    pub decomposition: Decomposition,
    /// `rad(q_{i,n})^{h[p^n]} ⊆ q_{i,n}`, one flag per component.
    pub checks: Vec<bool>,
}

/// Containments `(rad q_{i,n})^{[p^n]h} ⊆ q_{i,n}` for `n = 0..=depth`,
/// embedding the decompositions they were checked against.
#[derive(Clone, Debug)]
pub struct GrowthCertificate {
    pub h: u32,
    pub depth: usize,
    pub per_n: Vec<GrowthStep>,
}

impl GrowthCertificate {
    /// Re-runs every recorded containment.
    pub fn recheck(&self, budget: &GroebnerBudget) -> Result<bool> {
        for step in &self.per_n {
            for c in &step.decomposition.components {
                if growth_holds(c, self.h, step.n, budget)?.is_some() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// First generator of `frob_power(rad^h, n)` outside the component.
fn growth_holds(
    c: &PrimaryComponent,
    h: u32,
    n: usize,
    budget: &GroebnerBudget,
) -> Result<Option<crate::poly::Polynomial>> {
    let e = u32::try_from(n).map_err(|_| Error::ExponentOverflow)?;
    let lhs = frob_power(&c.radical.power(h)?, e)?;
    lhs.first_gen_outside(&c.ideal, budget)
}

/// Certifies h-linear growth of the decompositions supplied by `source`
/// for the terms of `s` up to `depth`. Each decomposition is first checked
/// to intersect to the corresponding term.
pub fn certify_growth(
    s: &FSequence,
    source: &dyn Fn(usize) -> Result<Decomposition>,
    h: u32,
    depth: usize,
    budget: &GroebnerBudget,
) -> Result<GrowthCertificate> {
    if h == 0 {
        return Err(Error::Invalid("h must be positive".into()));
    }
    let mut per_n = Vec::with_capacity(depth + 1);
    for n in 0..=depth {
        let d = source(n)?;
        check_sound(&d, &s.term(n, budget)?, budget)?;
        let mut checks = Vec::with_capacity(d.components.len());
        for (i, c) in d.components.iter().enumerate() {
            if let Some(w) = growth_holds(c, h, n, budget)? {
                return Err(Error::CertificateFailure {
                    n,
                    component: i,
                    witness: w,
                });
            }
            checks.push(true);
        }
        per_n.push(GrowthStep {
            n,
            decomposition: d,
            checks,
        });
    }
    Ok(GrowthCertificate { h, depth, per_n })
}

/// Which decomposition formula [`growth_decompose`] builds.
#[derive(Clone, Debug)]
pub enum GrowthMode {
    /// `((a + P_i^h)^[p^n])^{ec}`, target `a^[p^n]`.
    Plain,
    /// `(((a + P_i^h)^[p^n])^F)^{ec}`, target `(a^[p^n])^F`.
    FClosure,
    /// `((a_n + P_i^{h[p^n]})^F)^{ec}` for the terms of an f-sequence, target `a_n`.
    SeqTerm(FSequence),
}

fn closure(i: &Ideal, budget: &GroebnerBudget) -> Result<Ideal> {
    Ok(f_closure(i, DEFAULT_MAX_E, DEFAULT_CONFIRM, budget)?.closure)
}

/// Builds the decomposition of `a^[p^n]` (or of the sequence term) from the
/// primes of `a` and a growth exponent `h`, then verifies that each
/// component is primary to its prime and that the components intersect to
/// the target.
pub fn growth_decompose(
    a: &Ideal,
    primes: &[MonomialPrime],
    h: u32,
    n: usize,
    mode: &GrowthMode,
    budget: &GroebnerBudget,
) -> Result<Decomposition> {
    if primes.is_empty() {
        return Err(Error::Invalid("no primes given".into()));
    }
    let e = u32::try_from(n).map_err(|_| Error::ExponentOverflow)?;
    let ring = a.ring();
    let target = match mode {
        GrowthMode::Plain => frob_power(a, e)?,
        GrowthMode::FClosure => closure(&frob_power(a, e)?, budget)?,
        GrowthMode::SeqTerm(s) => s.term(n, budget)?,
    };
    let mut components = Vec::with_capacity(primes.len());
    for prime in primes {
        let p_ideal = prime.ideal(ring)?;
        let p_h = p_ideal.power(h)?;
        let inner = match mode {
            GrowthMode::Plain => frob_power(&a.sum(&p_h)?, e)?,
            GrowthMode::FClosure => closure(&frob_power(&a.sum(&p_h)?, e)?, budget)?,
            GrowthMode::SeqTerm(_) => closure(&target.sum(&frob_power(&p_h, e)?)?, budget)?,
        };
        let q = localize_contract(&inner, prime, None, budget)?;
        let d = decompose_shifted(&q, prime, budget)?;
        let ok = d.components.len() == 1 && d.components[0].prime == *prime;
        if !ok {
            return Err(Error::IdentityFailure {
                reason: format!("component at {} is not primary to it", prime.display(ring)),
                witness: q.gens().first().cloned(),
            });
        }
        components.push(PrimaryComponent {
            ideal: q,
            radical: p_ideal,
            prime: prime.clone(),
            verified_primary: d.components[0].verified_primary,
        });
    }
    let mut d = Decomposition {
        components,
        minimal: false,
    };
    check_sound(&d, &target, budget)?;
    d.minimal = is_minimal(&d, budget)?;
    Ok(d)
}

/// Primary f-sequences whose term-wise intersection is the f-sequence of a
/// finitely generated ideal of `R^∞`.
#[derive(Clone, Debug)]
pub struct PerfectionDecomposition {
    pub components: Vec<(MonomialPrime, FSequence)>,
    /// Depth to which the intersection identity and the f-sequence law of
    /// every component were checked.
    pub verified_depth: usize,
}

/// Decomposes `a_k` (which must be monomial) and pushes each component up
/// by Frobenius powers and down by Frobenius roots.
pub fn decompose_perfection_ideal(
    a: &PerfectionIdeal,
    depth: usize,
    budget: &GroebnerBudget,
) -> Result<PerfectionDecomposition> {
    let ring = a.ring();
    if !ring.is_polynomial_ring() {
        return Err(Error::QuotientUnsupported);
    }
    let (k, closure) = match a.backing().kind() {
        SeqKind::FgPerfection { k, closure, .. } => (*k, *closure),
        _ => return Err(Error::Invalid("not a finitely generated ideal of the perfection".into())),
    };
    let a_k = a.backing().term(k, budget)?;
    let d = decompose_monomial(&a_k, budget)?;
    let components: Vec<(MonomialPrime, FSequence)> = d
        .components
        .iter()
        .map(|c| (c.prime.clone(), FSequence::fg_perfection(k, &c.ideal, closure)))
        .collect();
    let seqs: Vec<FSequence> = components.iter().map(|(_, s)| s.clone()).collect();
    let inter = FSequence::intersection(seqs)?;
    for n in 0..=depth {
        let lhs = inter.term(n, budget)?;
        let rhs = a.backing().term(n, budget)?;
        if !lhs.equals(&rhs, budget)? {
            return Err(Error::IdentityFailure {
                reason: format!("component sequences do not intersect to the ideal at n = {n}"),
                witness: match lhs.first_gen_outside(&rhs, budget)? {
                    Some(w) => Some(w),
                    None => rhs.first_gen_outside(&lhs, budget)?,
                },
            });
        }
    }
    if depth > 0 {
        for (prime, s) in &components {
            if let VerifyOutcome::Failure { index, witness, .. } = fseq_verify(s, depth, budget)? {
                return Err(Error::IdentityFailure {
                    reason: format!(
                        "component sequence at {} fails the f-sequence law at n = {index}",
                        prime.display(ring)
                    ),
                    witness,
                });
            }
        }
    }
    Ok(PerfectionDecomposition {
        components,
        verified_depth: depth,
    })
}
