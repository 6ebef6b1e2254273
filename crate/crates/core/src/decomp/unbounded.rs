//! An f-sequence on `F_p[X, Y]` whose associated primes grow without bound:
//! `a_m = (X) ∩ q_{1,m} ∩ ... ∩ q_{m,m}` with
//! `q_{j,n} = (X^{l p^{n-j}}, (Y - λ_j)^{t_j p^n})` for `n >= j` and
//! `q_{j,n} = f^{-(j-n)}(q_{j,j})` below. Since `Ass(a_m)` has `m + 1`
//! elements, the corresponding ideal of `R^∞` has no primary decomposition.
//!
//! The shifts are `λ_j = j ∈ F_p`, so only depths below `p` can be built.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{check_sound, decompose_shifted, certify_growth, Decomposition, GrowthCertificate, MonomialPrime};
use crate::error::{Error, Result};
use crate::frobenius::frob_root_ceiling;
use crate::groebner::GroebnerBudget;
use crate::ideal::Ideal;
use crate::monomial::{Monomial, MonomialOrder};
use crate::perfection::{fseq_verify, Extender, FSequence, VerifyOutcome};
use crate::poly::Polynomial;
use crate::ring::{PolyRing, Ring};

const X: usize = 0;
const Y: usize = 1;

/// Evidence that component `component` of `a_m` cannot be dropped.
#[derive(Clone, Debug)]
pub struct OmissionWitness {
    pub component: usize,
    pub witness: Polynomial,
    /// The witness lies in every other component.
    pub in_others: bool,
    /// The witness lies outside this component.
    pub outside: bool,
}

impl OmissionWitness {
    pub fn holds(&self) -> bool {
        self.in_others && self.outside
    }
}

#[derive(Clone, Debug)]
pub struct UnboundedAssStep {
    pub m: usize,
    pub term: Ideal,
    pub decomposition: Decomposition,
    pub ass: Vec<MonomialPrime>,
    pub witnesses: Vec<OmissionWitness>,
}

#[derive(Clone, Debug)]
pub struct UnboundedAssReport {
    pub p: u64,
    pub l: u64,
    pub t: Vec<u64>,
    pub depth: usize,
    pub sequence: FSequence,
    pub verify: VerifyOutcome,
    pub steps: Vec<UnboundedAssStep>,
    pub certificate: GrowthCertificate,
    /// `Ass(a_m) ⊊ Ass(a_{m+1})` with `|Ass(a_m)| = m + 1` at every visited depth.
    pub ass_strictly_increasing: bool,
    /// The sequence verified, every decomposition is minimal and `Ass`
    /// grows strictly: the ideal of `R^∞` has no primary decomposition.
    pub no_primary_decomposition: bool,
    pub caveat: String,
}

struct Builder {
    ring: Arc<Ring>,
    p: u64,
    l: u64,
    t: Vec<u64>,
}

impl Builder {
    fn base(&self) -> &Arc<PolyRing> {
        self.ring.base()
    }

    fn lambda(&self, j: usize) -> Result<u32> {
        if j as u64 >= self.p {
            return Err(Error::DistinctLambdaExhausted { needed: j, p: self.p });
        }
        Ok(j as u32)
    }

    fn t_of(&self, j: usize) -> Result<u64> {
        self.t
            .get(j - 1)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("no exponent t_{j} given")))
    }

    /// Frame carrying `q_{j,*}` to a monomial ideal.
    fn frame(&self, j: usize) -> Result<MonomialPrime> {
        if j == 0 {
            return Ok(MonomialPrime::new([X]));
        }
        Ok(MonomialPrime::shifted([X, Y], BTreeMap::from([(Y, self.lambda(j)?)])))
    }

    fn y_shift(&self, j: usize) -> Result<Polynomial> {
        let base = self.base();
        Polynomial::var(base, Y).sub(&Polynomial::constant(base, self.lambda(j)? as i64))
    }

    fn pow_p(&self, e: usize) -> Result<u64> {
        let e = u32::try_from(e).map_err(|_| Error::ExponentOverflow)?;
        self.p.checked_pow(e).ok_or(Error::ExponentOverflow)
    }

    fn component(&self, j: usize, n: usize) -> Result<Ideal> {
        let base = self.base();
        if j == 0 {
            return Ideal::new(&self.ring, vec![Polynomial::var(base, X)]);
        }
        if n >= j {
            let xe = self.l.checked_mul(self.pow_p(n - j)?).ok_or(Error::ExponentOverflow)?;
            let ye = self.t_of(j)?.checked_mul(self.pow_p(n)?).ok_or(Error::ExponentOverflow)?;
            let xs = Polynomial::monomial(base, Monomial::var(X, 2).scale(xe)?, 1);
            return Ideal::new(&self.ring, vec![xs, self.y_shift(j)?.power(ye)?]);
        }
        // roots commute with the translation, so take them in the frame
        let frame = self.frame(j)?;
        let top = frame.to_frame(&self.component(j, j)?)?;
        let down = u32::try_from(j - n).map_err(|_| Error::ExponentOverflow)?;
        frame.from_frame(&frob_root_ceiling(&top, down)?)
    }

    fn term(&self, m: usize, budget: &GroebnerBudget) -> Result<Ideal> {
        let mut acc = self.component(0, m)?;
        for j in 1..=m {
            acc = acc.intersect(&self.component(j, m)?, budget)?;
        }
        Ok(acc)
    }

    /// Components of `a_m` decomposed in their own frames.
    fn decomposition(&self, m: usize, budget: &GroebnerBudget) -> Result<Decomposition> {
        let mut components = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let d = decompose_shifted(&self.component(j, m)?, &self.frame(j)?, budget)?;
            if d.components.len() != 1 {
                return Err(Error::IdentityFailure {
                    reason: format!("q_({j},{m}) is not primary"),
                    witness: None,
                });
            }
            components.extend(d.components);
        }
        Ok(Decomposition {
            components,
            minimal: false,
        })
    }

    /// `X^{[j≠0]} ∏_{k ≤ m, k ∉ {0, j}} (Y - λ_k)^{t_k p^m}`: in every component
    /// but the j-th.
    fn witness(&self, j: usize, m: usize) -> Result<Polynomial> {
        let base = self.base();
        let mut w = if j == 0 {
            Polynomial::one(base)
        } else {
            Polynomial::var(base, X)
        };
        let q = self.pow_p(m)?;
        for k in 1..=m {
            if k != j {
                let e = self.t_of(k)?.checked_mul(q).ok_or(Error::ExponentOverflow)?;
                w = w.mul(&self.y_shift(k)?.power(e)?)?;
            }
        }
        Ok(w)
    }
}

/// Builds `a_0, ..., a_depth` with the checks described on [`UnboundedAssReport`].
pub fn build_unbounded_ass(p: u64, l: u64, t: &[u64], depth: usize, budget: &GroebnerBudget) -> Result<UnboundedAssReport> {
    let base = PolyRing::new(p, &["X", "Y"], MonomialOrder::Grevlex)?;
    if depth as u64 >= p {
        return Err(Error::DistinctLambdaExhausted { needed: depth, p });
    }
    if !(2..=p).contains(&l) {
        return Err(Error::Invalid(format!("l = {l} must satisfy 2 <= l <= p")));
    }
    if t.len() < depth || t.contains(&0) {
        return Err(Error::Invalid(format!(
            "need {depth} positive exponents t_j, got {t:?}"
        )));
    }
    let builder = Arc::new(Builder {
        ring: Ring::polynomial(base),
        p,
        l,
        t: t.to_vec(),
    });
    let ring = builder.ring.clone();
    let extend = {
        let b = builder.clone();
        Extender::Custom(Arc::new(move |n, budget: &GroebnerBudget| b.term(n, budget)))
    };
    let sequence = FSequence::table(&ring, Vec::new(), extend)?;
    let verify = if depth == 0 {
        VerifyOutcome::Pass { depth: 0 }
    } else {
        fseq_verify(&sequence, depth, budget)?
    };

    let mut steps = Vec::with_capacity(depth + 1);
    for m in 0..=depth {
        let term = sequence.term(m, budget)?;
        let mut decomposition = builder.decomposition(m, budget)?;
        check_sound(&decomposition, &term, budget)?;
        let mut witnesses = Vec::with_capacity(m + 1);
        if m > 0 {
            for j in 0..=m {
                let w = builder.witness(j, m)?;
                let mut in_others = true;
                for (k, c) in decomposition.components.iter().enumerate() {
                    if k != j && !c.ideal.contains(&w, budget)? {
                        in_others = false;
                    }
                }
                let outside = !decomposition.components[j].ideal.contains(&w, budget)?;
                witnesses.push(OmissionWitness {
                    component: j,
                    witness: w,
                    in_others,
                    outside,
                });
            }
        }
        let primes = decomposition.primes();
        let distinct = primes.iter().collect::<std::collections::BTreeSet<_>>().len() == primes.len();
        decomposition.minimal = distinct && witnesses.iter().all(OmissionWitness::holds);
        steps.push(UnboundedAssStep {
            m,
            term,
            ass: primes,
            decomposition,
            witnesses,
        });
    }

    let ass_strictly_increasing = steps.iter().all(|s| s.ass.len() == s.m + 1)
        && steps
            .windows(2)
            .all(|w| w[0].ass.iter().all(|q| w[1].ass.contains(q)));

    let h = t[..depth].iter().copied().max().unwrap_or(1);
    let h = u32::try_from(h).map_err(|_| Error::ExponentOverflow)?;
    let source = {
        let b = builder.clone();
        move |n: usize| b.decomposition(n, budget)
    };
    let certificate = certify_growth(&sequence, &source, h, depth, budget)?;

    let no_primary_decomposition = verify.passed()
        && ass_strictly_increasing
        && steps.iter().all(|s| s.decomposition.minimal);
    Ok(UnboundedAssReport {
        p,
        l,
        t: t.to_vec(),
        depth,
        sequence,
        verify,
        steps,
        certificate,
        ass_strictly_increasing,
        no_primary_decomposition,
        caveat: format!(
            "shifts λ_j = j are distinct only for j < {p}; the construction is checked through depth {depth} only"
        ),
    })
}
