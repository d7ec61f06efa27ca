//! Textual form of polynomials: `2*T1^3*T2 + T3 + 1`.
//!
//! Terms are printed highest graded-lex term first, separated by ` + ` or
//! ` - `; unit coefficients are omitted except on the constant term. The
//! parser accepts the same language with arbitrary whitespace.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::{CoeffRing, Monomial, MultiPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        ParseError { pos, msg: msg.into() }
    }

    /// Shifts the position by `offset` (for errors inside a larger literal).
    pub fn offset(mut self, offset: usize) -> Self {
        self.pos += offset;
        self
    }
}

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ParseError::new(start, "expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }
}

type RawTerm = (Vec<(usize, u32)>, BigInt);

fn parse_raw(s: &str) -> Result<Vec<RawTerm>, ParseError> {
    let mut cur = Cursor { src: s.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut sign = BigInt::one();
        if cur.eat(b'-') {
            sign = -sign;
        } else if !cur.eat(b'+') && !first {
            match cur.peek() {
                None => break,
                Some(_) => return Err(ParseError::new(cur.pos, "expected `+` or `-`")),
            }
        }
        if first && cur.peek().is_none() {
            return Err(ParseError::new(cur.pos, "empty polynomial"));
        }
        first = false;
        let mut coeff = sign;
        let mut vars = Vec::new();
        loop {
            match cur.peek() {
                Some(b'T') => {
                    cur.pos += 1;
                    let at = cur.pos;
                    let idx: usize = cur.digits()?.parse().map_err(|_| ParseError::new(at, "bad variable index"))?;
                    if idx == 0 {
                        return Err(ParseError::new(at, "variables are numbered from T1"));
                    }
                    let mut e = 1u32;
                    if cur.eat(b'^') {
                        let at = cur.pos;
                        e = cur.digits()?.parse().map_err(|_| ParseError::new(at, "exponent too large"))?;
                    }
                    vars.push((idx - 1, e));
                }
                Some(c) if c.is_ascii_digit() => {
                    let n: BigInt = cur.digits()?.parse().unwrap();
                    coeff *= n;
                }
                Some(_) => return Err(ParseError::new(cur.pos, "expected a number or variable")),
                None => return Err(ParseError::new(cur.pos, "unexpected end of input")),
            }
            if !cur.eat(b'*') {
                break;
            }
        }
        terms.push((vars, coeff));
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(terms)
}

fn assemble(terms: Vec<RawTerm>, ring: CoeffRing, nvars: usize) -> Result<MultiPoly, ParseError> {
    let mut out = Vec::with_capacity(terms.len());
    for (vars, c) in terms {
        let mut e = vec![0u32; nvars];
        for (i, k) in vars {
            if i >= nvars {
                return Err(ParseError::new(0, format!("variable T{} exceeds {} variables", i + 1, nvars)));
            }
            e[i] += k;
        }
        out.push((Monomial::new(&e), c));
    }
    Ok(MultiPoly::from_terms(ring, nvars, out))
}

/// Parses a polynomial in at most `nvars` variables.
pub fn parse_poly(s: &str, ring: CoeffRing, nvars: usize) -> Result<MultiPoly, ParseError> {
    assemble(parse_raw(s)?, ring, nvars)
}

/// Parses a polynomial, taking the variable count from the largest index used.
pub fn parse_poly_infer(s: &str, ring: CoeffRing) -> Result<MultiPoly, ParseError> {
    let raw = parse_raw(s)?;
    let nvars = raw.iter().flat_map(|(v, _)| v.iter().map(|(i, _)| i + 1)).max().unwrap_or(0);
    assemble(raw, ring, nvars)
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exps().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            write!(f, "T{}", i + 1)?;
        } else {
            write!(f, "T{}^{}", i + 1, e)?;
        }
    }
    Ok(())
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.degree() == 0 {
                write!(f, "{}", a)?;
            } else {
                if !a.is_one() {
                    write!(f, "{}*", a)?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

impl MultiPoly {
    /// Parses with the ring and arity of `self` (convenience for tests).
    pub fn parse_like(&self, s: &str) -> Result<MultiPoly, ParseError> {
        parse_poly(s, self.ring(), self.nvars())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn prints_in_descending_grlex() {
        let z = CoeffRing::Integers;
        let p = parse_poly("1 + T3 + 2*T2*T1^3", z, 3).unwrap();
        assert_eq!(p.to_string(), "2*T1^3*T2 + T3 + 1");
        let q = parse_poly("2 - T1", z, 1).unwrap();
        assert_eq!(q.to_string(), "-T1 + 2");
    }

    #[test]
    fn reduces_over_fp() {
        let f3 = CoeffRing::modp(3).unwrap();
        let p = parse_poly("4*T1 - 1", f3, 1).unwrap();
        assert_eq!(p.to_string(), "T1 + 2");
    }

    #[test]
    fn reports_positions() {
        let z = CoeffRing::Integers;
        let e = parse_poly("T1 + * T2", z, 2).unwrap_err();
        assert_eq!(e.pos, 5);
        let e = parse_poly("T1 T2", z, 2).unwrap_err();
        assert_eq!(e.pos, 3);
        assert!(parse_poly("T3", z, 2).is_err());
        assert!(parse_poly("", z, 2).is_err());
        assert!(parse_poly("T0", z, 2).is_err());
    }

    #[test]
    fn infers_arity() {
        let p = parse_poly_infer("T2^2 + T1", CoeffRing::Integers).unwrap();
        assert_eq!(p.nvars(), 2);
        assert_eq!(parse_poly_infer("7", CoeffRing::Integers).unwrap().nvars(), 0);
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        proptest::collection::vec((0u32..4, 0u32..4, -20i64..20), 0..6).prop_map(|ts| {
            MultiPoly::from_terms(
                CoeffRing::Integers,
                2,
                ts.into_iter().map(|(a, b, c)| (Monomial::new(&[a, b]), BigInt::from(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn display_reparses(p in arb_poly()) {
            let s = p.to_string();
            prop_assert_eq!(parse_poly(&s, CoeffRing::Integers, 2).unwrap(), p);
        }
    }
}
