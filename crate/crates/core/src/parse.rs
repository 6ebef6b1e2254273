//! Text form of polynomials.
//!
//! ```text
//! poly   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := INT | VAR ['^' INT]
//! ```
//!
//! Whitespace is ignored and integer coefficients are reduced mod `p`. The
//! printer writes terms in descending order with coefficients in the
//! symmetric range, so `parse(print(g)) == g`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn integer(&mut self) -> Result<u128> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        if digits.is_empty() {
            self.pos = start;
            return self.err("expected integer");
        }
        digits.parse::<u128>().or_else(|_| {
            self.pos = start;
            self.err("integer too large")
        })
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }
}

pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    let field = *ring.field();
    let nv = ring.nvars();
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let sign_neg = match lx.peek() {
            Some(b'+') => {
                lx.pos += 1;
                false
            }
            Some(b'-') => {
                lx.pos += 1;
                true
            }
            None if first => return lx.err("empty polynomial"),
            None => break,
            Some(_) if first => false,
            Some(c) => return lx.err(format!("unexpected {:?}", c as char)),
        };
        first = false;
        let mut coeff = 1u32;
        let mut exps = vec![0u64; nv];
        loop {
            match lx.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let v = lx.integer()?;
                    coeff = field.mul(coeff, field.from_u128(v));
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = lx.pos;
                    let name = lx.ident();
                    let Some(i) = ring.var_index(name) else {
                        lx.pos = start;
                        return lx.err(format!("unknown variable {name}"));
                    };
                    let mut e = 1u64;
                    if lx.peek() == Some(b'^') {
                        lx.pos += 1;
                        let v = lx.integer()?;
                        e = u64::try_from(v).or_else(|_| lx.err("exponent too large"))?;
                    }
                    exps[i] = exps[i].checked_add(e).ok_or(Error::ExponentOverflow)?;
                }
                Some(c) => return lx.err(format!("unexpected {:?}", c as char)),
                None => return lx.err("unexpected end of input"),
            }
            if lx.peek() == Some(b'*') {
                lx.pos += 1;
            } else {
                break;
            }
        }
        if sign_neg {
            coeff = field.neg(coeff);
        }
        terms.push((Monomial::from_exponents(&exps)?, coeff));
    }
    Ok(Polynomial::from_terms(ring, terms))
}

pub(crate) fn write_poly(f: &mut std::fmt::Formatter<'_>, g: &Polynomial) -> std::fmt::Result {
    if g.is_zero() {
        return f.write_str("0");
    }
    let ring = g.ring();
    let p = ring.characteristic() as u32;
    for (k, (m, c)) in g.terms().iter().enumerate() {
        let (neg, mag) = if *c > p / 2 && p > 2 { (true, p - c) } else { (false, *c) };
        match (k, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let mut factors: Vec<String> = Vec::new();
        if mag != 1 || m.is_one() {
            factors.push(mag.to_string());
        }
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(ring.vars()[i].clone()),
                _ => factors.push(format!("{}^{}", ring.vars()[i], e)),
            }
        }
        f.write_str(&factors.join("*"))?;
    }
    Ok(())
}
