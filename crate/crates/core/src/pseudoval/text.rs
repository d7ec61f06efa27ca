//! One-line spec syntax: `trivial`, `degree(d=[1,1/2])`,
//! `quotient(inner=degree(d=[1]), d=3, f=T1*T2 + T2^2)`,
//! `loc(inner=degree(d=[1]), f=T1, d=1)`.

use std::fmt;

use super::{ValError, ValuationSpec};
use crate::poly::{parse_poly, parse_poly_infer, CoeffRing, ParseError};
use crate::scalar::parse_rat;
use crate::Rat;

fn write_weights(f: &mut fmt::Formatter<'_>, w: &[Rat]) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in w.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

impl fmt::Display for ValuationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationSpec::Trivial => f.write_str("trivial"),
            ValuationSpec::WeightedDegree(w) => {
                f.write_str("degree(d=")?;
                write_weights(f, w)?;
                f.write_str(")")
            }
            ValuationSpec::MonicQuotient { inner, d, f: m } => write!(f, "quotient(inner={inner}, d={d}, f={m})"),
            ValuationSpec::Localization { inner, f: m, d } => write!(f, "loc(inner={inner}, f={m}, d={d})"),
        }
    }
}

/// Splits `s` at commas outside brackets; yields `(offset, piece)`.
fn split_top(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

fn trimmed(off: usize, s: &str) -> (usize, &str) {
    let lead = s.len() - s.trim_start().len();
    (off + lead, s.trim())
}

fn rat_at(off: usize, s: &str) -> Result<Rat, ParseError> {
    parse_rat(s).ok_or_else(|| ParseError::new(off, format!("expected a rational, found `{s}`")))
}

fn need<'a>(x: Option<(usize, &'a str)>, key: &str, off: usize) -> Result<(usize, &'a str), ParseError> {
    x.ok_or_else(|| ParseError::new(off, format!("missing `{key}=`")))
}

fn parse_at(s: &str, off: usize, ring: CoeffRing) -> Result<ValuationSpec, ValError> {
    let (off, s) = trimmed(off, s);
    if s == "trivial" {
        return Ok(ValuationSpec::Trivial);
    }
    let open = s.find('(').ok_or_else(|| ParseError::new(off, "expected `trivial` or `name(...)`"))?;
    let name = &s[..open];
    let body = s[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| ParseError::new(off + s.len(), "expected `)`"))?;
    let body_off = off + open + 1;
    let mut inner = None;
    let mut d = None;
    let mut f = None;
    for (pos, piece) in split_top(body) {
        let (poff, piece) = trimmed(body_off + pos, piece);
        let (key, value) = piece.split_once('=').ok_or_else(|| ParseError::new(poff, "expected `key=value`"))?;
        let voff = poff + key.len() + 1;
        let (voff, value) = trimmed(voff, value);
        match key.trim() {
            "inner" => inner = Some((voff, value)),
            "d" => d = Some((voff, value)),
            "f" => f = Some((voff, value)),
            other => return Err(ParseError::new(poff, format!("unknown key `{other}`")).into()),
        }
    }
    match name {
        "degree" => {
            let (voff, v) = need(d, "d", off)?;
            let list = v
                .strip_prefix('[')
                .and_then(|v| v.strip_suffix(']'))
                .ok_or_else(|| ParseError::new(voff, "expected `[w1,...]`"))?;
            let mut weights = Vec::new();
            if !list.trim().is_empty() {
                for (p, w) in split_top(list) {
                    let (woff, w) = trimmed(voff + 1 + p, w);
                    weights.push(rat_at(woff, w)?);
                }
            }
            ValuationSpec::weighted_degree(weights)
        }
        "quotient" | "loc" => {
            let (ioff, isrc) = need(inner, "inner", off)?;
            let inner = parse_at(isrc, ioff, ring)?;
            let (doff, dsrc) = need(d, "d", off)?;
            let d = rat_at(doff, dsrc)?;
            let (foff, fsrc) = need(f, "f", off)?;
            let arity = inner.arity().map(|k| if name == "quotient" { k + 1 } else { k });
            let poly = match arity {
                Some(k) => parse_poly(fsrc, ring, k),
                None => parse_poly_infer(fsrc, ring),
            }
            .map_err(|e| e.offset(foff))?;
            if name == "quotient" {
                ValuationSpec::monic_quotient(inner, d, poly)
            } else {
                ValuationSpec::localization(inner, poly, d)
            }
        }
        other => Err(ParseError::new(off, format!("unknown valuation `{other}`")).into()),
    }
}

/// Parses a spec; polynomials inside are read over `ring`.
pub fn parse_spec(s: &str, ring: CoeffRing) -> Result<ValuationSpec, ValError> {
    parse_at(s, 0, ring)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> CoeffRing {
        CoeffRing::modp(2).unwrap()
    }

    #[test]
    fn round_trips() {
        for s in [
            "trivial",
            "degree(d=[1,1])",
            "degree(d=[1/2,3])",
            "quotient(inner=degree(d=[1]), d=3, f=T1*T2 + T2^2)",
            "loc(inner=degree(d=[1]), f=T1, d=1)",
            "loc(inner=quotient(inner=degree(d=[1]), d=1, f=T2^2 + T1 + T2), f=T2, d=1/2)",
        ] {
            let spec = parse_spec(s, f2()).unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn accepts_loose_spacing_and_reports_positions() {
        let spec = parse_spec(" degree( d = [ 1 , 2 ] ) ", f2()).unwrap();
        assert_eq!(spec.to_string(), "degree(d=[1,2])");
        match parse_spec("degree(d=[1,x])", f2()) {
            Err(ValError::Parse(e)) => assert_eq!(e.pos, 12),
            other => panic!("unexpected {other:?}"),
        }
        match parse_spec("loc(inner=degree(d=[1]), f=T1 +, d=1)", f2()) {
            Err(ValError::Parse(e)) => assert_eq!(e.pos, 31),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_spec("degree(d=[0])", f2()).is_err());
        assert!(parse_spec("bogus(d=1)", f2()).is_err());
    }
}
