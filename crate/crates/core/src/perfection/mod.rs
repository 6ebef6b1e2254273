//! The perfect closure `R^∞` of a polynomial ring over `F_p`.
//!
//! Elements are `r^(1/p^n)`, kept at minimal depth. Ideals of `R^∞` are never
//! materialized as element sets: each is carried by its f-sequence, the data
//! of the order-preserving bijection `Γ` between ideals of `R^∞` and
//! f-sequences of ideals of `R`. An element `r^(1/p^n)` lies in the ideal iff
//! `r ∈ a_n`.

mod element;
mod fseq;

use std::sync::Arc;

pub use element::PerfectionElement;
pub use fseq::{
    fseq_radical, fseq_verify, is_constant_to, monomial_radical, ClosureParams, Extender,
    FSequence, SeqKind, VerifyFailure, VerifyOutcome,
};

use crate::error::{Error, Result};
use crate::groebner::GroebnerBudget;
use crate::ideal::Ideal;
use crate::ring::{PolyRing, Ring};

/// An ideal of `R^∞`, held as its f-sequence.
#[derive(Clone, Debug)]
pub struct PerfectionIdeal {
    backing: FSequence,
}

impl PerfectionIdeal {
    pub fn new(backing: FSequence) -> Self {
        Self { backing }
    }

    /// `(g_1^(1/p^k), ..., g_t^(1/p^k)) R^∞`.
    pub fn finitely_generated(k: usize, gens: &Ideal) -> Self {
        Self::new(FSequence::fg_perfection(k, gens, ClosureParams::default()))
    }

    /// The extension `a R^∞`.
    pub fn extension(a: &Ideal) -> Self {
        Self::finitely_generated(0, a)
    }

    pub fn backing(&self) -> &FSequence {
        &self.backing
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.backing.ring()
    }
}

/// `Γ(A)_n`.
pub fn gamma_term(a: &PerfectionIdeal, n: usize, budget: &GroebnerBudget) -> Result<Ideal> {
    a.backing.term(n, budget)
}

/// Membership of `e` in `A` via its depth: `r^(1/p^m) ∈ A` iff `r ∈ a_m`.
pub fn perfection_member(
    a: &PerfectionIdeal,
    e: &PerfectionElement,
    budget: &GroebnerBudget,
) -> Result<bool> {
    if !a.ring().is_polynomial_ring() {
        return Err(Error::QuotientUnsupported);
    }
    if !PolyRing::same(e.ring(), a.ring().base()) {
        return Err(Error::RingMismatch);
    }
    let e = e.normalize();
    gamma_term(a, e.depth() as usize, budget)?.contains(e.body(), budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_polynomial;

    #[test]
    fn member_examples() {
        let b = GroebnerBudget::default();
        let base = PolyRing::new(2, &["X", "Y"], MonomialOrder::Grevlex).unwrap();
        let r = Ring::polynomial(base.clone());
        let a = PerfectionIdeal::extension(&Ideal::parse(&r, &["X"]).unwrap());
        let el = |d, s| PerfectionElement::raw(d, parse_polynomial(&base, s).unwrap());
        // X^(1/2) is not in X R^∞ since a_1 = (X^2)
        assert!(!perfection_member(&a, &el(1, "X"), &b).unwrap());
        assert!(perfection_member(&a, &el(0, "X^2"), &b).unwrap());
        assert!(perfection_member(&a, &el(1, "X^2"), &b).unwrap());
        assert!(perfection_member(&a, &el(2, "X^4*Y + X^8"), &b).unwrap());
        assert!(!perfection_member(&a, &el(2, "X^3*Y"), &b).unwrap());
    }
}
