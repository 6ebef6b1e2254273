//! Frobenius powers `I^[p^e]`, Frobenius roots `f^{-1}(I) = {r : r^p ∈ I}`
//! and the F-closure `b^F = ⋃_n f^{-n}(b^[p^n])`.
//!
//! Roots are computed by p-power elimination: over `F_p` we have
//! `r(X)^q = r(X^q)`, so `r^q ∈ I` iff `r(Y)` lies in
//! `(I + (Y_i - X_i^q)) ∩ F_p[Y]`. One mechanism serves polynomial rings and
//! quotients alike. Monomial ideals of polynomial rings take the exponent
//! ceiling shortcut `X^α ↦ X^⌈α/q⌉`.

use crate::error::{Error, Result};
use crate::groebner::GroebnerBudget;
use crate::ideal::{minimalize, monomial_ideal, Ideal};
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::Ring;

/// Default number of consecutive equal chain steps that ends an F-closure.
pub const DEFAULT_CONFIRM: usize = 2;
/// Default cap on the F-closure chain length.
pub const DEFAULT_MAX_E: usize = 10;

/// `I^[p^e]`: generated by the `p^e`-th powers of the generators (the
/// quotient ideal stays implicit).
pub fn frob_power(ideal: &Ideal, e: u32) -> Result<Ideal> {
    if e == 0 {
        return Ok(ideal.clone());
    }
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.frobenius(e))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ideal.ring(), gens)
}

fn check_contains_quotient(ideal: &Ideal, budget: &GroebnerBudget) -> Result<()> {
    for j in ideal.ring().quotient_gens() {
        if !ideal.contains(j, budget)? {
            return Err(Error::NotContainingQuotient);
        }
    }
    Ok(())
}

/// `f^{-1}(I)`.
pub fn frob_root(ideal: &Ideal, budget: &GroebnerBudget) -> Result<Ideal> {
    frob_root_iter(ideal, 1, budget)
}

/// `f^{-n}(I)`, with the ceiling shortcut for monomial ideals of polynomial
/// rings.
pub fn frob_root_iter(ideal: &Ideal, n: u32, budget: &GroebnerBudget) -> Result<Ideal> {
    if n == 0 {
        return Ok(ideal.clone());
    }
    if ideal.ring().is_polynomial_ring() && ideal.is_monomial() {
        return frob_root_ceiling(ideal, n);
    }
    frob_root_elimination(ideal, n, budget)
}

/// Exponent-ceiling route; only valid for monomial ideals of polynomial rings.
pub fn frob_root_ceiling(ideal: &Ideal, n: u32) -> Result<Ideal> {
    if !ideal.ring().is_polynomial_ring() {
        return Err(Error::QuotientUnsupported);
    }
    if !ideal.is_monomial() {
        return Err(Error::NonMonomial(None));
    }
    let q = ideal
        .ring()
        .characteristic()
        .checked_pow(n)
        .ok_or(Error::ExponentOverflow)?;
    let gens = ideal.monomial_gens().iter().map(|m| m.ceil_root(q)).collect();
    monomial_ideal(ideal.ring(), minimalize(gens))
}

/// Elimination route for `f^{-n}(I)`: one elimination with `Y_i - X_i^(p^n)`.
pub fn frob_root_elimination(ideal: &Ideal, n: u32, budget: &GroebnerBudget) -> Result<Ideal> {
    check_contains_quotient(ideal, budget)?;
    let base = ideal.base();
    let d = base.nvars();
    let q = base
        .characteristic()
        .checked_pow(n)
        .ok_or(Error::ExponentOverflow)?;
    let mut fresh = Vec::with_capacity(d);
    for v in base.vars() {
        let name = base.fresh_name(&format!("{v}_root"), &fresh);
        fresh.push(name);
    }
    let ext = base.extended(&[], &fresh, MonomialOrder::BlockElimination(d))?;
    let into_x: Vec<Option<usize>> = (0..d).map(Some).collect();
    let mut gens = ideal
        .all_gens()
        .iter()
        .map(|g| g.map_ring(&ext, &into_x))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..d {
        let xq = Polynomial::var(&ext, i).power(q)?;
        gens.push(Polynomial::var(&ext, d + i).sub(&xq)?);
    }
    let lifted = Ideal::new(&Ring::polynomial(ext.clone()), gens)?;
    let gb = lifted.reduced_gb(MonomialOrder::BlockElimination(d), budget)?;
    let back: Vec<Option<usize>> = (0..2 * d).map(|i| i.checked_sub(d)).collect();
    let root_gens = gb
        .iter()
        .filter(|g| g.avoids(|i| i < d))
        .map(|g| g.map_ring(base, &back))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ideal.ring(), root_gens)?.canonicalized(budget)
}

/// An element `g` of the closure outside `b`, with the first `n` such that
/// `g^(p^n) ∈ b^[p^n]`.
#[derive(Clone, Debug)]
pub struct ClosureWitness {
    pub element: Polynomial,
    pub exponent: usize,
}

#[derive(Clone, Debug)]
pub struct FClosureResult {
    pub closure: Ideal,
    /// First `n` of the final run of equal chain steps.
    pub stabilized_at: usize,
    /// Always false: consecutive equality is a heuristic stop, not a proof.
    pub certified: bool,
    /// `I_0 ⊆ I_1 ⊆ ...` with `I_n = f^{-n}(b^[p^n])`; every containment
    /// was checked.
    pub steps: Vec<Ideal>,
    pub witnesses: Vec<ClosureWitness>,
}

/// Chain term `f^{-n}(b^[p^n])`.
pub fn closure_step(b: &Ideal, n: usize, budget: &GroebnerBudget) -> Result<Ideal> {
    let n32 = u32::try_from(n).map_err(|_| Error::ExponentOverflow)?;
    frob_root_iter(&frob_power(b, n32)?, n32, budget)?.canonicalized(budget)
}

/// Iterates the chain until `confirm` consecutive equal steps, at most
/// `max_e` steps beyond `I_0`.
pub fn f_closure(
    b: &Ideal,
    max_e: usize,
    confirm: usize,
    budget: &GroebnerBudget,
) -> Result<FClosureResult> {
    if max_e == 0 || confirm == 0 {
        return Err(Error::Invalid("max_e and confirm must be at least 1".into()));
    }
    let mut steps = vec![b.canonicalized(budget)?];
    let mut run = 0usize;
    let mut stabilized_at = 0usize;
    for n in 1..=max_e {
        let next = closure_step(b, n, budget)?;
        let prev = steps.last().unwrap();
        if let Some(w) = prev.first_gen_outside(&next, budget)? {
            return Err(Error::IdentityFailure {
                reason: format!("F-closure chain not ascending at step {n}"),
                witness: Some(w),
            });
        }
        if next.equals(prev, budget)? {
            run += 1;
        } else {
            run = 0;
            stabilized_at = n;
        }
        steps.push(next);
        if run >= confirm {
            let closure = steps.last().unwrap().clone();
            let witnesses = closure_witnesses(b, &closure, &steps, budget)?;
            return Ok(FClosureResult {
                closure,
                stabilized_at,
                certified: false,
                steps,
                witnesses,
            });
        }
    }
    Err(Error::DepthExceeded {
        max_e,
        chain: steps,
    })
}

fn closure_witnesses(
    b: &Ideal,
    closure: &Ideal,
    steps: &[Ideal],
    budget: &GroebnerBudget,
) -> Result<Vec<ClosureWitness>> {
    let mut out = Vec::new();
    for g in closure.gens() {
        if b.contains(g, budget)? {
            continue;
        }
        for (n, step) in steps.iter().enumerate() {
            if step.contains(g, budget)? {
                out.push(ClosureWitness {
                    element: g.clone(),
                    exponent: n,
                });
                break;
            }
        }
    }
    Ok(out)
}

/// Whether `f_closure(I) = I` under the same stopping rule.
pub fn is_f_closed(
    ideal: &Ideal,
    max_e: usize,
    confirm: usize,
    budget: &GroebnerBudget,
) -> Result<bool> {
    let res = f_closure(ideal, max_e, confirm, budget)?;
    res.closure.equals(ideal, budget)
}
