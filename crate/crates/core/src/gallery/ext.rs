//! Rationals extended with `±∞`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

/// Variant order matches the numeric order, so the derived `Ord` is the
/// order of the extended line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    NegInf,
    Fin(BigRational),
    PosInf,
}

impl Ext {
    pub fn int(n: i64) -> Self {
        Ext::Fin(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Ext::Fin(ratio(n, d))
    }

    pub fn zero() -> Self {
        Ext::Fin(BigRational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ext::Fin(_))
    }

    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Ext::Fin(r) => Some(r),
            _ => None,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Ext::NegInf => Ext::PosInf,
            Ext::PosInf => Ext::NegInf,
            Ext::Fin(r) => Ext::Fin(-r),
        }
    }

    /// Finite plus anything; `∞ + -∞` does not occur in this crate.
    pub fn add(&self, r: &BigRational) -> Self {
        match self {
            Ext::Fin(a) => Ext::Fin(a + r),
            other => other.clone(),
        }
    }
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl From<BigRational> for Ext {
    fn from(r: BigRational) -> Self {
        Ext::Fin(r)
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => f.write_str("-∞"),
            Ext::PosInf => f.write_str("∞"),
            Ext::Fin(r) => fmt_rational(r, f),
        }
    }
}

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        let sign = if r.is_negative() { "-" } else { "" };
        write!(f, "{sign}{}/{}", r.numer().abs(), r.denom())
    }
}

impl Serialize for Ext {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
