//! Spec files: a TOML document describing one ring, named ideals and named
//! f-sequences.
//!
//! ```toml
//! [ring]
//! p = 2
//! vars = ["U", "V"]
//! order = "grevlex"          # grevlex | lex | elim(k); optional
//! quotient = ["V^2 + U^3"]   # optional
//! reduced = true             # assert the quotient ring is reduced
//!
//! [ideal.a]
//! gens = ["U"]
//!
//! [fseq.s]
//! kind = "frobenius-powers"  # see `FseqKind`
//! ideal = "a"
//! ```

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;
use std::path::Path;
use std::sync::Arc;

use charp::decomp::MonomialPrime;
use charp::perfection::{ClosureParams, Extender, FSequence, SeqKind};
use charp::{parse_polynomial, Ideal, MonomialOrder, PolyRing, Polynomial, Ring};
use serde::Deserialize;
use toml::Spanned;

use crate::error::CliError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    ring: Spanned<RawRing>,
    #[serde(default)]
    ideal: BTreeMap<String, Spanned<RawIdeal>>,
    #[serde(default)]
    fseq: BTreeMap<String, Spanned<RawFseq>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRing {
    p: Spanned<u64>,
    vars: Spanned<Vec<String>>,
    order: Option<Spanned<String>>,
    #[serde(default)]
    quotient: Vec<Spanned<String>>,
    #[serde(default)]
    reduced: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawIdeal {
    gens: Vec<Spanned<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFseq {
    kind: Spanned<String>,
    ideal: Option<Spanned<String>>,
    k: Option<usize>,
    terms: Option<Vec<Spanned<String>>>,
    extend: Option<Spanned<String>>,
    of: Option<Vec<Spanned<String>>>,
    inner: Option<Spanned<String>>,
    prime: Option<Vec<Spanned<String>>>,
    shift: Option<BTreeMap<String, u32>>,
    s_hint: Option<Spanned<String>>,
    max_e: Option<usize>,
    confirm: Option<usize>,
}

/// A fully resolved spec file.
pub struct Spec {
    pub ring: Arc<Ring>,
    pub ideals: BTreeMap<String, Ideal>,
    pub fseqs: BTreeMap<String, FSequence>,
}

impl Spec {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let raw: RawSpec = toml::from_str(text).map_err(|e| {
            CliError::at(text, e.span(), e.message().trim_end().to_string())
        })?;
        Resolver::new(text).resolve(raw)
    }

    /// The named ideal, or the only one when `name` is absent.
    pub fn ideal(&self, name: Option<&str>) -> Result<&Ideal, CliError> {
        pick(&self.ideals, name, "ideal")
    }

    pub fn fseq(&self, name: Option<&str>) -> Result<&FSequence, CliError> {
        pick(&self.fseqs, name, "fseq")
    }
}

fn pick<'a, T>(map: &'a BTreeMap<String, T>, name: Option<&str>, what: &str) -> Result<&'a T, CliError> {
    match name {
        Some(n) => map
            .get(n)
            .ok_or_else(|| CliError::input(format!("no {what} named `{n}` in the spec"))),
        None if map.len() == 1 => Ok(map.values().next().unwrap()),
        None if map.is_empty() => Err(CliError::input(format!("the spec defines no {what}"))),
        None => Err(CliError::input(format!(
            "the spec defines several {what}s; choose one with --{what}"
        ))),
    }
}

struct Resolver<'a> {
    text: &'a str,
}

impl<'a> Resolver<'a> {
    fn new(text: &'a str) -> Self {
        Self { text }
    }

    fn err(&self, span: Range<usize>, message: impl Into<String>) -> CliError {
        CliError::at(self.text, Some(span), message.into())
    }

    /// Parses a polynomial, placing parse errors inside the quoted string.
    fn poly(&self, base: &Arc<PolyRing>, s: &Spanned<String>) -> Result<Polynomial, CliError> {
        parse_polynomial(base, s.get_ref()).map_err(|e| match e {
            charp::Error::Parse { offset, message } => {
                let at = s.span().start + 1 + offset;
                self.err(at..at + 1, message)
            }
            other => self.err(s.span(), other.to_string()),
        })
    }

    fn resolve(&self, raw: RawSpec) -> Result<Spec, CliError> {
        let ring_span = raw.ring.span();
        let rr = raw.ring.into_inner();
        let order = match &rr.order {
            Some(o) => MonomialOrder::parse(o.get_ref())
                .ok_or_else(|| self.err(o.span(), format!("unknown monomial order `{}`", o.get_ref())))?,
            None => MonomialOrder::Grevlex,
        };
        let names: Vec<&str> = rr.vars.get_ref().iter().map(String::as_str).collect();
        let base = PolyRing::new(*rr.p.get_ref(), &names, order).map_err(|e| match e {
            charp::Error::NotPrime(_) => self.err(rr.p.span(), e.to_string()),
            _ => self.err(rr.vars.span(), e.to_string()),
        })?;
        let ring = if rr.quotient.is_empty() {
            Ring::polynomial(base)
        } else {
            let gens = rr
                .quotient
                .iter()
                .map(|g| self.poly(&base, g))
                .collect::<Result<Vec<_>, _>>()?;
            Ring::quotient(base, gens, rr.reduced).map_err(|e| self.err(ring_span.clone(), e.to_string()))?
        };

        let mut ideals = BTreeMap::new();
        for (name, raw_ideal) in &raw.ideal {
            let gens = raw_ideal
                .get_ref()
                .gens
                .iter()
                .map(|g| self.poly(ring.base(), g))
                .collect::<Result<Vec<_>, _>>()?;
            let ideal = Ideal::new(&ring, gens).map_err(|e| self.err(raw_ideal.span(), e.to_string()))?;
            ideals.insert(name.clone(), ideal);
        }

        let mut fseqs = BTreeMap::new();
        let mut visiting = BTreeSet::new();
        for name in raw.fseq.keys() {
            self.fseq(name, &raw.fseq, &ring, &ideals, &mut fseqs, &mut visiting, None)?;
        }
        Ok(Spec { ring, ideals, fseqs })
    }

    fn ideal_ref<'m>(
        &self,
        ideals: &'m BTreeMap<String, Ideal>,
        name: &Spanned<String>,
    ) -> Result<&'m Ideal, CliError> {
        ideals
            .get(name.get_ref())
            .ok_or_else(|| self.err(name.span(), format!("unknown ideal `{}`", name.get_ref())))
    }

    #[allow(clippy::too_many_arguments)]
    fn fseq(
        &self,
        name: &str,
        raw: &BTreeMap<String, Spanned<RawFseq>>,
        ring: &Arc<Ring>,
        ideals: &BTreeMap<String, Ideal>,
        done: &mut BTreeMap<String, FSequence>,
        visiting: &mut BTreeSet<String>,
        used_at: Option<Range<usize>>,
    ) -> Result<FSequence, CliError> {
        if let Some(s) = done.get(name) {
            return Ok(s.clone());
        }
        let entry = match raw.get(name) {
            Some(e) => e,
            None => {
                let span = used_at.unwrap_or(0..0);
                return Err(self.err(span, format!("unknown fseq `{name}`")));
            }
        };
        if !visiting.insert(name.to_string()) {
            return Err(self.err(entry.span(), format!("fseq `{name}` refers to itself")));
        }
        let f = entry.get_ref();
        let span = entry.span();
        let need = |field: &Option<Spanned<String>>, key: &str| {
            field
                .clone()
                .ok_or_else(|| self.err(span.clone(), format!("fseq `{name}` needs `{key}`")))
        };
        let closure = ClosureParams {
            max_e: f.max_e.unwrap_or(ClosureParams::default().max_e),
            confirm: f.confirm.unwrap_or(ClosureParams::default().confirm),
        };
        let core_err = |e: charp::Error| self.err(span.clone(), e.to_string());
        let seq = match f.kind.get_ref().as_str() {
            "frobenius-powers" => FSequence::frobenius_powers(self.ideal_ref(ideals, &need(&f.ideal, "ideal")?)?),
            "canonical" => FSequence::canonical(self.ideal_ref(ideals, &need(&f.ideal, "ideal")?)?, closure),
            "constant-prime" => FSequence::constant_prime(self.ideal_ref(ideals, &need(&f.ideal, "ideal")?)?),
            "fg-perfection" => FSequence::fg_perfection(
                f.k.unwrap_or(0),
                self.ideal_ref(ideals, &need(&f.ideal, "ideal")?)?,
                closure,
            ),
            "table" => {
                let terms = f
                    .terms
                    .as_ref()
                    .ok_or_else(|| self.err(span.clone(), format!("fseq `{name}` needs `terms`")))?
                    .iter()
                    .map(|t| self.ideal_ref(ideals, t).cloned())
                    .collect::<Result<Vec<_>, _>>()?;
                let extender = match f.extend.as_ref().map(|e| (e.get_ref().as_str(), e.span())) {
                    None | Some(("none", _)) => Extender::None,
                    Some(("frobenius", _)) => Extender::FrobeniusOfLast,
                    Some((other, at)) => {
                        return Err(self.err(at, format!("unknown extender `{other}` (none | frobenius)")))
                    }
                };
                FSequence::table(ring, terms, extender).map_err(core_err)?
            }
            "intersection" => {
                let of = f
                    .of
                    .as_ref()
                    .ok_or_else(|| self.err(span.clone(), format!("fseq `{name}` needs `of`")))?;
                let mut list = Vec::with_capacity(of.len());
                for other in of {
                    list.push(self.fseq(other.get_ref(), raw, ring, ideals, done, visiting, Some(other.span()))?);
                }
                FSequence::intersection(list).map_err(core_err)?
            }
            "localize-contract" => {
                let inner = need(&f.inner, "inner")?;
                let inner_seq = self.fseq(inner.get_ref(), raw, ring, ideals, done, visiting, Some(inner.span()))?;
                let prime = f
                    .prime
                    .as_ref()
                    .ok_or_else(|| self.err(span.clone(), format!("fseq `{name}` needs `prime`")))?;
                let base = ring.base();
                let mut vars = Vec::with_capacity(prime.len());
                for v in prime {
                    vars.push(
                        base.var_index(v.get_ref())
                            .ok_or_else(|| self.err(v.span(), format!("unknown variable `{}`", v.get_ref())))?,
                    );
                }
                let mut shift = BTreeMap::new();
                for (v, l) in f.shift.iter().flatten() {
                    let i = base
                        .var_index(v)
                        .ok_or_else(|| self.err(span.clone(), format!("unknown variable `{v}` in shift")))?;
                    shift.insert(i, base.field().from_i64(*l as i64));
                }
                let s_hint = match &f.s_hint {
                    Some(s) => Some(self.poly(base, s)?),
                    None => None,
                };
                FSequence::new(
                    ring,
                    SeqKind::LocalizeContract {
                        inner: inner_seq,
                        prime: MonomialPrime::shifted(vars, shift),
                        s_hint,
                    },
                )
                .map_err(core_err)?
            }
            other => {
                return Err(self.err(
                    f.kind.span(),
                    format!(
                        "unknown fseq kind `{other}` (frobenius-powers | canonical | constant-prime | \
                         fg-perfection | table | intersection | localize-contract)"
                    ),
                ))
            }
        };
        visiting.remove(name);
        done.insert(name.to_string(), seq.clone());
        Ok(seq)
    }
}

/// Parses `X=1,Y=2` into a translation of the ring's variables.
pub fn parse_shift(base: &Arc<PolyRing>, s: &str) -> Result<BTreeMap<usize, u32>, CliError> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (v, l) = part
            .split_once('=')
            .ok_or_else(|| CliError::input(format!("shift entry `{part}` is not VAR=VALUE")))?;
        let i = base
            .var_index(v.trim())
            .ok_or_else(|| CliError::input(format!("unknown variable `{}` in shift", v.trim())))?;
        let l: i64 = l
            .trim()
            .parse()
            .map_err(|_| CliError::input(format!("shift value `{}` is not an integer", l.trim())))?;
        out.insert(i, base.field().from_i64(l));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_spec() {
        let s = Spec::parse("[ring]\np = 2\nvars = [\"X\", \"Y\"]\n[ideal.a]\ngens = [\"X^2\", \"X*Y\"]\n").unwrap();
        assert_eq!(s.ideal(None).unwrap().gens().len(), 2);
        assert!(s.ring.is_polynomial_ring());
    }

    #[test]
    fn errors_carry_locations() {
        let text = "[ring]\np = 2\nvars = [\"X\", \"Y\"]\n[ideal.a]\ngens = [\"X^2\", \"X*Z\"]\n";
        match Spec::parse(text) {
            Err(CliError::Input { line, column, .. }) => {
                assert_eq!(line, Some(5));
                // the `Z` inside the second string
                assert_eq!(column, Some(19));
            }
            other => panic!("{:?}", other.err()),
        }
        match Spec::parse("[ring]\np = 4\nvars = [\"X\"]\n") {
            Err(CliError::Input { line, message, .. }) => {
                assert_eq!(line, Some(2));
                assert!(message.contains("not a prime"), "{message}");
            }
            other => panic!("{:?}", other.err()),
        }
        assert!(matches!(
            Spec::parse("[ring]\np = 2\nvars = [\"X\"]\nbogus = 1\n"),
            Err(CliError::Input { line: Some(4), .. })
        ));
    }

    #[test]
    fn fseq_references() {
        let text = r#"
[ring]
p = 2
vars = ["X", "Y"]
[ideal.a]
gens = ["X"]
[ideal.b]
gens = ["X^2", "Y"]
[fseq.s]
kind = "frobenius-powers"
ideal = "a"
[fseq.t]
kind = "intersection"
of = ["s", "u"]
[fseq.u]
kind = "fg-perfection"
ideal = "b"
k = 1
"#;
        let s = Spec::parse(text).unwrap();
        assert_eq!(s.fseqs.len(), 3);
        let cyc = "[ring]\np = 2\nvars = [\"X\"]\n[fseq.s]\nkind = \"intersection\"\nof = [\"s\"]\n";
        assert!(Spec::parse(cyc).is_err());
        let missing = "[ring]\np = 2\nvars = [\"X\"]\n[fseq.s]\nkind = \"frobenius-powers\"\nideal = \"nope\"\n";
        assert!(matches!(Spec::parse(missing), Err(CliError::Input { line: Some(6), .. })));
    }

    #[test]
    fn shifts() {
        let base = PolyRing::new(7, &["X", "Y"], MonomialOrder::Grevlex).unwrap();
        assert_eq!(parse_shift(&base, "Y=2").unwrap(), BTreeMap::from([(1, 2)]));
        assert_eq!(parse_shift(&base, "Y=-1").unwrap(), BTreeMap::from([(1, 6)]));
        assert!(parse_shift(&base, "Z=1").is_err());
    }
}
