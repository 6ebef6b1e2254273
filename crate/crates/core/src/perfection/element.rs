use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::PolyRing;

/// `body^(1/p^depth)` in the perfect closure of a polynomial ring.
///
/// The canonical form has minimal depth: either `depth == 0` or `body` is not
/// a p-th power. Equality compares canonical forms.
#[derive(Clone, Debug)]
pub struct PerfectionElement {
    depth: u32,
    body: Polynomial,
}

impl PerfectionElement {
    /// Builds and normalizes.
    pub fn new(depth: u32, body: Polynomial) -> Self {
        Self { depth, body }.normalize()
    }

    /// Keeps the given representation as is.
    pub fn raw(depth: u32, body: Polynomial) -> Self {
        Self { depth, body }
    }

    pub fn from_poly(body: Polynomial) -> Self {
        Self { depth: 0, body }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn body(&self) -> &Polynomial {
        &self.body
    }

    pub fn ring(&self) -> &std::sync::Arc<PolyRing> {
        self.body.ring()
    }

    /// Takes p-th roots of the body while possible, lowering the depth.
    pub fn normalize(&self) -> Self {
        if self.body.is_zero() {
            return Self {
                depth: 0,
                body: self.body.clone(),
            };
        }
        let mut depth = self.depth;
        let mut body = self.body.clone();
        while depth > 0 {
            match body.p_root() {
                Ok(r) => {
                    body = r;
                    depth -= 1;
                }
                Err(_) => break,
            }
        }
        Self { depth, body }
    }

    pub fn is_normalized(&self) -> bool {
        self.depth == 0 || self.body.p_root().is_err()
    }

    /// Representation at a larger depth.
    pub fn lift(&self, depth: u32) -> Result<Polynomial> {
        if depth < self.depth {
            return Err(Error::Invalid(format!(
                "cannot lower depth {} to {depth}",
                self.depth
            )));
        }
        self.body.frobenius(depth - self.depth)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let m = self.depth.max(other.depth);
        Ok(Self::new(m, self.lift(m)?.add(&other.lift(m)?)?))
    }

    pub fn neg(&self) -> Self {
        Self {
            depth: self.depth,
            body: self.body.neg(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let m = self.depth.max(other.depth);
        Ok(Self::new(m, self.lift(m)?.mul(&other.lift(m)?)?))
    }

    /// `self^p`.
    pub fn frobenius(&self) -> Result<Self> {
        Ok(Self::new(self.depth, self.body.frobenius(1)?))
    }
}

impl PartialEq for PerfectionElement {
    fn eq(&self, other: &Self) -> bool {
        let a = self.normalize();
        let b = other.normalize();
        a.depth == b.depth && a.body == b.body
    }
}

impl Eq for PerfectionElement {}

impl std::fmt::Display for PerfectionElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.depth == 0 {
            write!(f, "{}", self.body)
        } else {
            write!(
                f,
                "({})^(1/{}^{})",
                self.body,
                self.body.ring().characteristic(),
                self.depth
            )
        }
    }
}
