//! Extended rationals: the coordinate type for interval endpoints.
//!
//! All arithmetic is exact. Values serialize as strings `"p/q"` (or `"p"`
//! when the denominator is 1) with `"-inf"` / `"inf"` for the two infinities.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Exact rational number.
pub type Q = BigRational;

/// Parse a rational from the external string form `"p"` or `"p/q"`.
pub fn parse_q(s: &str) -> Result<Q, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator: {s:?}"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational denominator: {s:?}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in rational: {s:?}"));
    }
    Ok(Q::new(n, d))
}

/// Format a rational in the external string form.
pub fn q_str(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Convenience constructor from an integer pair.
pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Convenience constructor from an integer.
pub fn qi(n: i64) -> Q {
    Q::from(BigInt::from(n))
}

/// A rational extended by the two infinities; the value of an interval end.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Ext {
    NegInf,
    Fin(Q),
    PosInf,
}

impl Ext {
    pub fn is_finite(&self) -> bool {
        matches!(self, Ext::Fin(_))
    }

    pub fn finite(&self) -> Option<&Q> {
        match self {
            Ext::Fin(q) => Some(q),
            _ => None,
        }
    }

    /// Shift by a finite rational; infinities are absorbing.
    pub fn shift(&self, c: &Q) -> Ext {
        match self {
            Ext::Fin(q) => Ext::Fin(q + c),
            other => other.clone(),
        }
    }

    /// Negate (swaps the infinities).
    pub fn neg(&self) -> Ext {
        match self {
            Ext::NegInf => Ext::PosInf,
            Ext::PosInf => Ext::NegInf,
            Ext::Fin(q) => Ext::Fin(-q),
        }
    }

    pub fn parse(s: &str) -> Result<Ext, String> {
        match s.trim() {
            "-inf" => Ok(Ext::NegInf),
            "inf" | "+inf" => Ok(Ext::PosInf),
            other => Ok(Ext::Fin(parse_q(other)?)),
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => write!(f, "-inf"),
            Ext::PosInf => write!(f, "inf"),
            Ext::Fin(q) => write!(f, "{}", q_str(q)),
        }
    }
}

impl fmt::Debug for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl PartialOrd for Ext {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ext {
    fn cmp(&self, other: &Self) -> Ordering {
        use Ext::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Ordering::Equal,
            (NegInf, _) | (_, PosInf) => Ordering::Less,
            (PosInf, _) | (_, NegInf) => Ordering::Greater,
            (Fin(a), Fin(b)) => a.cmp(b),
        }
    }
}

/// Sign of a rational as -1, 0, or 1.
pub fn sign(q: &Q) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(q_str(&parse_q("3/6").unwrap()), "1/2");
        assert_eq!(q_str(&parse_q("-4").unwrap()), "-4");
        assert_eq!(Ext::parse("-inf").unwrap(), Ext::NegInf);
        assert_eq!(Ext::parse("7/2").unwrap(), Ext::Fin(q(7, 2)));
        assert!(parse_q("1/0").is_err());
    }

    #[test]
    fn extended_order() {
        assert!(Ext::NegInf < Ext::Fin(qi(-1000)));
        assert!(Ext::Fin(qi(3)) < Ext::PosInf);
        assert!(Ext::Fin(q(1, 3)) < Ext::Fin(q(1, 2)));
    }
}
