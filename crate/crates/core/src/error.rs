use crate::ideal::Ideal;
use crate::poly::Polynomial;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Which limit of a [`GroebnerBudget`](crate::GroebnerBudget) was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetLimit {
    Pairs,
    PolyTerms,
    Degree,
}

impl std::fmt::Display for BudgetLimit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BudgetLimit::Pairs => "max_pairs",
            BudgetLimit::PolyTerms => "max_poly_terms",
            BudgetLimit::Degree => "max_degree",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("polynomial is not a p-th power")]
    NotPPower,
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("operation requires a polynomial ring, not a quotient")]
    QuotientUnsupported,
    #[error("Groebner budget exceeded ({limit}, limit {value})")]
    GroebnerBudgetExceeded { limit: BudgetLimit, value: u64 },
    #[error("ideal does not contain the defining ideal of the quotient")]
    NotContainingQuotient,
    #[error("no stabilization within {max_e} steps")]
    DepthExceeded { max_e: usize, chain: Vec<Ideal> },
    #[error("ideal is not monomial{}", frame_note(.0))]
    NonMonomial(Option<String>),
    #[error("growth certificate failed at n = {n}, component {component}")]
    CertificateFailure {
        n: usize,
        component: usize,
        witness: Polynomial,
    },
    #[error("decomposition identity failed: {reason}")]
    IdentityFailure {
        reason: String,
        witness: Option<Polynomial>,
    },
    #[error("need {needed} distinct field elements but p = {p}")]
    DistinctLambdaExhausted { needed: usize, p: u64 },
    #[error("sequence term {0} is not available")]
    TermUnavailable(usize),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

fn frame_note(ctx: &Option<String>) -> String {
    match ctx {
        Some(c) => format!(" ({c})"),
        None => String::new(),
    }
}

impl Error {
    /// True for failures of a verification or certification step, as opposed
    /// to bad input or exhausted resources.
    pub fn is_verification_failure(&self) -> bool {
        matches!(
            self,
            Error::CertificateFailure { .. } | Error::IdentityFailure { .. }
        )
    }

    pub fn is_resource_exhausted(&self) -> bool {
        matches!(
            self,
            Error::GroebnerBudgetExceeded { .. }
                | Error::DepthExceeded { .. }
                | Error::ExponentOverflow
        )
    }
}
