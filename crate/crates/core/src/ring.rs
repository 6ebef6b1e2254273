//! Polynomial rings `F_p[X_1..X_d]` and their quotients.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::MonomialOrder;
use crate::poly::Polynomial;

/// The covering polynomial ring: field, ordered variable names and the
/// active monomial order. Polynomials always live here.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(p: u64, vars: &[&str], order: MonomialOrder) -> Result<Arc<Self>> {
        Self::from_names(PrimeField::new(p)?, vars.iter().map(|s| s.to_string()).collect(), order)
    }

    pub fn from_names(
        field: PrimeField,
        vars: Vec<String>,
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        for (i, v) in vars.iter().enumerate() {
            if !valid_identifier(v) {
                return Err(Error::InvalidRing(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable {v}")));
            }
        }
        if let MonomialOrder::BlockElimination(k) = order {
            if k > vars.len() {
                return Err(Error::InvalidRing(format!(
                    "elimination block {k} exceeds {} variables",
                    vars.len()
                )));
            }
        }
        Ok(Arc::new(Self { field, vars, order }))
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    #[inline]
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same field and variables under another order.
    pub fn with_order(self: &Arc<Self>, order: MonomialOrder) -> Arc<Self> {
        if order == self.order {
            return self.clone();
        }
        Arc::new(Self {
            field: self.field,
            vars: self.vars.clone(),
            order,
        })
    }

    /// A name `base`, `base1`, `base2`, ... not used by this ring or `taken`.
    pub fn fresh_name(&self, base: &str, taken: &[String]) -> String {
        let mut k = 0usize;
        loop {
            let cand = if k == 0 {
                base.to_string()
            } else {
                format!("{base}{k}")
            };
            if !self.vars.contains(&cand) && !taken.contains(&cand) {
                return cand;
            }
            k += 1;
        }
    }

    /// Ring with `front` prepended and `back` appended to the variables.
    pub fn extended(
        &self,
        front: &[String],
        back: &[String],
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        let mut vars = front.to_vec();
        vars.extend(self.vars.iter().cloned());
        vars.extend(back.iter().cloned());
        Self::from_names(self.field, vars, order)
    }

    /// Ring on the variables in `range`.
    pub fn restricted(&self, range: std::ops::Range<usize>, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::from_names(self.field, self.vars[range].to_vec(), order)
    }

    pub(crate) fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

impl std::fmt::Display for PolyRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))
    }
}

pub(crate) fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// The ambient ring `F_p[X]/J`. An empty `J` is the polynomial ring itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ring {
    base: Arc<PolyRing>,
    quotient: Vec<Polynomial>,
    reduced_asserted: bool,
}

impl Ring {
    pub fn polynomial(base: Arc<PolyRing>) -> Arc<Self> {
        Arc::new(Self {
            base,
            quotient: Vec::new(),
            reduced_asserted: true,
        })
    }

    /// `base / (quotient)`. Reducedness cannot be checked in general and is
    /// recorded as asserted by the caller.
    pub fn quotient(
        base: Arc<PolyRing>,
        quotient: Vec<Polynomial>,
        reduced_asserted: bool,
    ) -> Result<Arc<Self>> {
        let mut gens = Vec::with_capacity(quotient.len());
        for g in quotient {
            if !PolyRing::same(g.ring(), &base) {
                return Err(Error::RingMismatch);
            }
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Arc::new(Self {
            base,
            quotient: gens,
            reduced_asserted,
        }))
    }

    #[inline]
    pub fn base(&self) -> &Arc<PolyRing> {
        &self.base
    }

    pub fn quotient_gens(&self) -> &[Polynomial] {
        &self.quotient
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.quotient.is_empty()
    }

    pub fn reduced_asserted(&self) -> bool {
        self.reduced_asserted
    }

    pub fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    pub(crate) fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

impl std::fmt::Display for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.base)?;
        if !self.quotient.is_empty() {
            let gens: Vec<String> = self.quotient.iter().map(|g| g.to_string()).collect();
            write!(f, "/({})", gens.join(", "))?;
        }
        Ok(())
    }
}
