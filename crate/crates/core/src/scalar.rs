//! Exact ordered scalars and their extension by `±∞`.
//!
//! Every order function and norm in this crate takes values in `Ext<S>`,
//! where `S` is an exact ordered field (in practice [`crate::Rat`]). The
//! hull construction in [`crate::gauss`] is generic over the same trait so
//! it can be exercised with machine-sized ratios in tests.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{Num, One, Signed, Zero};

/// An exact ordered field element. Floats are deliberately excluded: `Ord`
/// is required.
pub trait Scalar: Clone + Ord + Num + Signed + fmt::Debug + fmt::Display {
    fn from_i64(v: i64) -> Self;
}

impl Scalar for Ratio<BigInt> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(BigInt::from(v))
    }
}

impl Scalar for Ratio<i64> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v)
    }
}

impl Scalar for Ratio<i128> {
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(v as i128)
    }
}

/// `S ∪ {−∞, +∞}` with the natural total order `−∞ < s < +∞`.
///
/// Sums follow the order-function conventions: `+∞` absorbs everything
/// (including `−∞`, so that `ν(0·b) = ∞ ≥ ν(0) + ν(b)` stays true), and
/// `−∞` absorbs finite values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ext<S> {
    NegInf,
    Finite(S),
    PosInf,
}

impl<S: Scalar> Ext<S> {
    pub fn zero() -> Self {
        Ext::Finite(S::zero())
    }

    pub fn from_int(v: i64) -> Self {
        Ext::Finite(S::from_i64(v))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ext::Finite(_))
    }

    pub fn finite(&self) -> Option<&S> {
        match self {
            Ext::Finite(s) => Some(s),
            _ => None,
        }
    }

    /// Multiplication by a strictly positive scalar.
    pub fn scale(&self, c: &S) -> Self {
        assert!(c.is_positive(), "Ext::scale needs a positive factor");
        match self {
            Ext::Finite(s) => Ext::Finite(s.clone() * c.clone()),
            other => other.clone(),
        }
    }

    /// Division by a strictly positive scalar.
    pub fn div_by(&self, c: &S) -> Self {
        assert!(c.is_positive(), "Ext::div_by needs a positive divisor");
        match self {
            Ext::Finite(s) => Ext::Finite(s.clone() / c.clone()),
            other => other.clone(),
        }
    }

    pub fn add_scalar(&self, c: &S) -> Self {
        match self {
            Ext::Finite(s) => Ext::Finite(s.clone() + c.clone()),
            other => other.clone(),
        }
    }
}

impl<S: Scalar> Add for Ext<S> {
    type Output = Ext<S>;

    fn add(self, rhs: Ext<S>) -> Ext<S> {
        match (self, rhs) {
            (Ext::PosInf, _) | (_, Ext::PosInf) => Ext::PosInf,
            (Ext::NegInf, _) | (_, Ext::NegInf) => Ext::NegInf,
            (Ext::Finite(a), Ext::Finite(b)) => Ext::Finite(a + b),
        }
    }
}

impl<S: Scalar> Add for &Ext<S> {
    type Output = Ext<S>;

    fn add(self, rhs: &Ext<S>) -> Ext<S> {
        self.clone() + rhs.clone()
    }
}

impl<S: Scalar> Neg for Ext<S> {
    type Output = Ext<S>;

    fn neg(self) -> Ext<S> {
        match self {
            Ext::PosInf => Ext::NegInf,
            Ext::NegInf => Ext::PosInf,
            Ext::Finite(s) => Ext::Finite(-s),
        }
    }
}

/// `a - b` for a finite subtrahend; an infinite `b` panics since the
/// difference of extended values is not needed anywhere.
impl<S: Scalar> Sub<S> for Ext<S> {
    type Output = Ext<S>;

    fn sub(self, rhs: S) -> Ext<S> {
        match self {
            Ext::Finite(a) => Ext::Finite(a - rhs),
            other => other,
        }
    }
}

impl<S: Scalar> From<S> for Ext<S> {
    fn from(s: S) -> Self {
        Ext::Finite(s)
    }
}

impl<S: Scalar> fmt::Display for Ext<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => f.write_str("-inf"),
            Ext::PosInf => f.write_str("inf"),
            Ext::Finite(s) => write!(f, "{}", s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as an extended rational")]
pub struct ParseExtError(pub String);

impl<S: Scalar + FromStr> FromStr for Ext<S> {
    type Err = ParseExtError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "+inf" => Ok(Ext::PosInf),
            "-inf" => Ok(Ext::NegInf),
            t => t
                .parse::<S>()
                .map(Ext::Finite)
                .map_err(|_| ParseExtError(s.to_string())),
        }
    }
}

/// Minimum of a non-empty iterator of extended values; `+∞` when empty.
pub fn ext_min<S: Scalar, I: IntoIterator<Item = Ext<S>>>(it: I) -> Ext<S> {
    it.into_iter().fold(Ext::PosInf, |acc, v| acc.min(v))
}

/// Parses a rational literal `a`, `-a`, or `a/b`.
pub fn parse_rat(s: &str) -> Option<Ratio<BigInt>> {
    let s = s.trim();
    let r = match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Ratio::new(n, d)
        }
        None => Ratio::from_integer(s.parse::<BigInt>().ok()?),
    };
    Some(r)
}

/// `p^e` as a rational, for possibly negative `e`.
pub fn rat_pow(p: u32, e: i64) -> Ratio<BigInt> {
    let base = BigInt::from(p);
    if e >= 0 {
        Ratio::from_integer(num_traits::pow(base, e as usize))
    } else {
        Ratio::new(BigInt::one(), num_traits::pow(base, (-e) as usize))
    }
}
