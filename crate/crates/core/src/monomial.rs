//! Exponent vectors and monomial orders.

use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::error::{Error, Result};

pub(crate) type Exps = SmallVec<[u64; 6]>;

/// An exponent vector with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Exps,
    degree: u64,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u64]) -> Result<Self> {
        let mut degree = 0u64;
        for &e in exps {
            degree = degree.checked_add(e).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Self {
            exps: SmallVec::from_slice(exps),
            degree,
        })
    }

    #[inline]
    pub fn exponents(&self) -> &[u64] {
        &self.exps
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u64 {
        self.exps[i]
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = Exps::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(Error::ExponentOverflow)?);
        }
        let degree = self
            .degree
            .checked_add(other.degree)
            .ok_or(Error::ExponentOverflow)?;
        Ok(Self { exps, degree })
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a - b)
            .collect();
        Some(Self {
            exps,
            degree: self.degree - other.degree,
        })
    }

    /// Whether `self` divides `other`.
    #[inline]
    pub fn divides(&self, other: &Self) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let exps: Exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps.iter().sum();
        Self { exps, degree }
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let exps: Exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.min(b))
            .collect();
        let degree = exps.iter().sum();
        Self { exps, degree }
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Multiplies every exponent by `factor`.
    pub fn scale(&self, factor: u64) -> Result<Self> {
        let mut exps = Exps::with_capacity(self.exps.len());
        for &e in &self.exps {
            exps.push(e.checked_mul(factor).ok_or(Error::ExponentOverflow)?);
        }
        let degree = self
            .degree
            .checked_mul(factor)
            .ok_or(Error::ExponentOverflow)?;
        Ok(Self { exps, degree })
    }

    /// Divides every exponent by `p` if all are divisible.
    pub fn exact_root(&self, p: u64) -> Option<Self> {
        if self.exps.iter().any(|e| e % p != 0) {
            return None;
        }
        Some(Self {
            exps: self.exps.iter().map(|e| e / p).collect(),
            degree: self.degree / p,
        })
    }

    /// Componentwise `ceil(e / p)`.
    pub fn ceil_root(&self, p: u64) -> Self {
        let exps: Exps = self.exps.iter().map(|e| e.div_ceil(p)).collect();
        let degree = exps.iter().sum();
        Self { exps, degree }
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }

    /// The single variable this monomial is a power of, if any.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut it = self.support();
        let v = it.next()?;
        it.next().is_none().then_some(v)
    }

    /// Squarefree part.
    pub fn radical(&self) -> Self {
        let exps: Exps = self.exps.iter().map(|e| (*e > 0) as u64).collect();
        let degree = exps.iter().sum();
        Self { exps, degree }
    }

    /// Sets the exponents of the listed variables to zero.
    pub fn drop_vars(&self, vars: impl Fn(usize) -> bool) -> Self {
        let exps: Exps = self
            .exps
            .iter()
            .enumerate()
            .map(|(i, e)| if vars(i) { 0 } else { *e })
            .collect();
        let degree = exps.iter().sum();
        Self { exps, degree }
    }

    /// Embeds into a ring with `extra_front` new leading variables and
    /// `extra_back` trailing ones.
    pub fn extend(&self, extra_front: usize, extra_back: usize) -> Self {
        let mut exps = Exps::with_capacity(self.exps.len() + extra_front + extra_back);
        exps.extend(std::iter::repeat_n(0, extra_front));
        exps.extend_from_slice(&self.exps);
        exps.extend(std::iter::repeat_n(0, extra_back));
        Self {
            exps,
            degree: self.degree,
        }
    }

    /// Keeps variables `range`.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> Self {
        let exps: Exps = self.exps[range].iter().copied().collect();
        let degree = exps.iter().sum();
        Self { exps, degree }
    }
}

/// A monomial order. Every variant is a multiplicative total order with
/// `1` as its minimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the
    /// rest. Any monomial involving one of the first `k` variables beats
    /// every monomial free of them.
    BlockElimination(usize),
}

fn grevlex_slice(a: &[u64], b: &[u64]) -> Ordering {
    let da: u64 = a.iter().sum();
    let db: u64 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    #[inline]
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => a.degree.cmp(&b.degree).then_with(|| {
                for (x, y) in a.exps.iter().rev().zip(b.exps.iter().rev()) {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::BlockElimination(k) => {
                let k = k.min(a.exps.len());
                grevlex_slice(&a.exps[..k], &b.exps[..k])
                    .then_with(|| grevlex_slice(&a.exps[k..], &b.exps[k..]))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::BlockElimination(k) => format!("elim({k})"),
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "grevlex" => Some(Self::Grevlex),
            "lex" => Some(Self::Lex),
            other => {
                let inner = other.strip_prefix("elim(")?.strip_suffix(')')?;
                inner.trim().parse().ok().map(Self::BlockElimination)
            }
        }
    }
}

impl std::fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name())
    }
}
