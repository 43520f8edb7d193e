//! Exact coefficient fields: prime fields F_p (p < 2^31) and the rationals.
//!
//! A field is a small runtime object carrying the modulus (or nothing, for
//! the rationals); elements are plain data. Everything downstream is generic
//! over [`FieldOps`] so the same linear algebra serves both fields.

use crate::num::{parse_q, q_str, Q};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Serializable description of a coefficient field.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    /// Prime field of characteristic `p`, encoded as `{"p": 2}`.
    Prime { p: u64 },
    /// The rationals, encoded as `{"q": "rational"}`.
    Rational { q: String },
}

impl FieldSpec {
    pub fn prime(p: u64) -> Self {
        FieldSpec::Prime { p }
    }

    pub fn rational() -> Self {
        FieldSpec::Rational {
            q: "rational".to_string(),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        match self {
            FieldSpec::Prime { p } => {
                if *p > (1u64 << 31) {
                    return Err(format!("prime field modulus too large: {p}"));
                }
                if !is_prime(*p) {
                    return Err(format!("field modulus {p} is not prime"));
                }
                Ok(())
            }
            FieldSpec::Rational { q } => {
                if q != "rational" {
                    return Err(format!("unknown field tag: {q:?}"));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime { p } => write!(f, "F{p}"),
            FieldSpec::Rational { .. } => write!(f, "Q"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |s| s <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Field operations over a runtime-chosen exact field.
pub trait FieldOps: Clone {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` on zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn parse(&self, s: &str) -> Result<Self::Elem, String>;
    fn render(&self, a: &Self::Elem) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }
}

/// The prime field F_p.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(is_prime(p));
        Fp { p }
    }

    fn norm(&self, n: i64) -> u64 {
        let p = self.p as i64;
        (((n % p) + p) % p) as u64
    }
}

impl FieldOps for Fp {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::prime(self.p)
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.p
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // Extended Euclid on (a, p).
        let (mut r0, mut r1) = (*a as i128, self.p as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        let p = self.p as i128;
        Some((((s0 % p) + p) % p) as u64)
    }

    fn from_i64(&self, n: i64) -> u64 {
        self.norm(n)
    }

    fn parse(&self, s: &str) -> Result<u64, String> {
        let q = parse_q(s)?;
        let num = q.numer();
        let den = q.denom();
        let p = num_bigint::BigInt::from(self.p);
        let reduce = |x: &num_bigint::BigInt| -> u64 {
            use num_traits::ToPrimitive;
            let m = ((x % &p) + &p) % &p;
            m.to_u64().unwrap()
        };
        let n = reduce(num);
        let d = reduce(den);
        let di = self
            .inv(&d)
            .ok_or_else(|| format!("denominator of {s:?} vanishes mod {}", self.p))?;
        Ok(self.mul(&n, &di))
    }

    fn render(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// The field of rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Rationals;

impl FieldOps for Rationals {
    type Elem = Q;

    fn spec(&self) -> FieldSpec {
        FieldSpec::rational()
    }

    fn zero(&self) -> Q {
        Q::zero()
    }

    fn one(&self) -> Q {
        Q::one()
    }

    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }

    fn neg(&self, a: &Q) -> Q {
        -a
    }

    fn mul(&self, a: &Q, b: &Q) -> Q {
        a * b
    }

    fn inv(&self, a: &Q) -> Option<Q> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn from_i64(&self, n: i64) -> Q {
        Q::from(num_bigint::BigInt::from(n))
    }

    fn parse(&self, s: &str) -> Result<Q, String> {
        parse_q(s)
    }

    fn render(&self, a: &Q) -> String {
        q_str(a)
    }
}

/// base^exp as u128, None on overflow.
pub fn pow_u128(base: u64, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

/// Is `q` a prime power? Returns the prime if so.
pub fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let mut n = q;
    let mut d = 2u64;
    while d.checked_mul(d).map_or(false, |s| s <= n) {
        if n % d == 0 {
            while n % d == 0 {
                n /= d;
            }
            return if n == 1 { Some(d) } else { None };
        }
        d += 1;
    }
    Some(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_inverses() {
        let f = Fp::new(7);
        for a in 1..7u64 {
            let i = f.inv(&a).unwrap();
            assert_eq!(f.mul(&a, &i), 1);
        }
        assert_eq!(f.inv(&0), None);
    }

    #[test]
    fn fp_parse_fraction() {
        let f = Fp::new(5);
        // 1/2 = 3 mod 5
        assert_eq!(f.parse("1/2").unwrap(), 3);
        assert!(f.parse("1/5").is_err());
    }

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(2147483647));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
        assert_eq!(prime_power_base(8), Some(2));
        assert_eq!(prime_power_base(12), None);
        assert_eq!(prime_power_base(49), Some(7));
    }
}
