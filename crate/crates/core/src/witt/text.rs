//! Witt vector literals.
//!
//! Full form: `wv(p=2, vars=1)[T1; 0]`, with an optional `mod=<poly>` entry
//! for quotient bases. Short form `wv[T1;0]` takes its base from context.

use std::fmt;

use super::{BaseRing, WittError, WittVector};
use crate::poly::{parse_poly, CoeffRing, ParseError};

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.base();
        write!(f, "wv(p={}, vars={}", b.p(), b.nvars())?;
        if let Some(m) = b.modulus() {
            write!(f, ", mod={}", m)?;
        }
        f.write_str(")[")?;
        for (i, c) in self.comps().iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}", c)?;
        }
        f.write_str("]")
    }
}

impl WittVector {
    /// `wv[c0;c1;…]`, without the base header.
    pub fn to_short_string(&self) -> String {
        let parts: Vec<String> = self.comps().iter().map(|c| c.to_string()).collect();
        format!("wv[{}]", parts.join(";"))
    }
}

struct Header {
    p: u32,
    nvars: usize,
    modulus: Option<(usize, String)>,
}

fn parse_header(s: &str, offset: usize) -> Result<Header, ParseError> {
    let mut p = None;
    let mut nvars = None;
    let mut modulus = None;
    let mut at = offset;
    for entry in s.split(',') {
        let (key, value) = entry
            .split_once('=')
            .ok_or_else(|| ParseError::new(at, "expected `key=value`"))?;
        let voff = at + key.len() + 1 + (value.len() - value.trim_start().len());
        match key.trim() {
            "p" => p = Some(value.trim().parse().map_err(|_| ParseError::new(voff, "bad prime"))?),
            "vars" => nvars = Some(value.trim().parse().map_err(|_| ParseError::new(voff, "bad variable count"))?),
            "mod" => modulus = Some((voff, value.trim().to_string())),
            other => return Err(ParseError::new(at, format!("unknown key `{other}`"))),
        }
        at += entry.len() + 1;
    }
    Ok(Header {
        p: p.ok_or_else(|| ParseError::new(offset, "missing `p=`"))?,
        nvars: nvars.unwrap_or(0),
        modulus,
    })
}

fn header_base(h: &Header) -> Result<BaseRing, WittError> {
    match &h.modulus {
        None => BaseRing::poly(h.p, h.nvars),
        Some((off, src)) => {
            let ring = CoeffRing::modp(h.p)?;
            let f = parse_poly(src, ring, h.nvars).map_err(|e| e.offset(*off))?;
            BaseRing::quotient(&f)
        }
    }
}

/// Splits a literal into optional header and component sources with their
/// byte offsets.
#[allow(clippy::type_complexity)]
fn split(s: &str) -> Result<(Option<(usize, &str)>, Vec<(usize, &str)>), ParseError> {
    let lead = s.len() - s.trim_start().len();
    let t = s.trim();
    let rest = t.strip_prefix("wv").ok_or_else(|| ParseError::new(lead, "expected `wv`"))?;
    let mut pos = lead + 2;
    let mut header = None;
    let mut rest_trim = rest.trim_start();
    pos += rest.len() - rest_trim.len();
    if let Some(h) = rest_trim.strip_prefix('(') {
        let close = h.find(')').ok_or_else(|| ParseError::new(pos, "unclosed `(`"))?;
        header = Some((pos + 1, &h[..close]));
        pos += close + 2;
        let after = &h[close + 1..];
        rest_trim = after.trim_start();
        pos += after.len() - rest_trim.len();
    }
    let body = rest_trim
        .strip_prefix('[')
        .ok_or_else(|| ParseError::new(pos, "expected `[`"))?;
    let body = body.strip_suffix(']').ok_or_else(|| ParseError::new(lead + t.len(), "expected `]`"))?;
    pos += 1;
    let mut comps = Vec::new();
    for part in body.split(';') {
        comps.push((pos, part));
        pos += part.len() + 1;
    }
    Ok((header, comps))
}

fn build(base: &BaseRing, comps: &[(usize, &str)]) -> Result<WittVector, WittError> {
    let ring = base.coeff_ring();
    let polys = comps
        .iter()
        .map(|(off, src)| parse_poly(src, ring, base.nvars()).map_err(|e| e.offset(*off)))
        .collect::<Result<Vec<_>, _>>()?;
    WittVector::new(base, polys)
}

/// Parses the full form `wv(p=.., vars=..[, mod=..])[..]`.
pub fn parse_witt(s: &str) -> Result<WittVector, WittError> {
    let (header, comps) = split(s)?;
    let (off, h) = header.ok_or_else(|| ParseError::new(0, "missing `(p=.., vars=..)` header"))?;
    let base = header_base(&parse_header(h, off)?)?;
    build(&base, &comps)
}

/// Parses either form; the short form is read over `base`, a full form must
/// name the same base.
pub fn parse_witt_short(s: &str, base: &BaseRing) -> Result<WittVector, WittError> {
    let (header, comps) = split(s)?;
    if let Some((off, h)) = header {
        if header_base(&parse_header(h, off)?)? != *base {
            return Err(WittError::Mismatch);
        }
    }
    build(base, &comps)
}
