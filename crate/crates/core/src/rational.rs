//! Exact rational scalars.
//!
//! Every constant of the Lie-algebra and Chern-Simons layers is a
//! [`Rational`] in lowest terms with a positive denominator; the
//! normalization is maintained by `num_rational::BigRational`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d`. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Serializes as `"p/q"`, always with an explicit denominator (`"8/1"`).
pub fn to_pq(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_pq(s: &str) -> Option<Rational> {
    let (p, q) = s.split_once('/')?;
    let p: BigInt = p.trim().parse().ok()?;
    let q: BigInt = q.trim().parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(Rational::new(p, q))
}

pub(crate) fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub(crate) fn half() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(2))
}

/// `serde(with = ...)` adapter for the `"p/q"` wire format.
pub mod pq_string {
    use super::{parse_pq, to_pq, Rational};
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_pq(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_pq(&s).ok_or_else(|| D::Error::custom(format!("not a p/q rational: {s:?}")))
    }
}
