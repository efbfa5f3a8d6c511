//! Rational scalars.
//!
//! `Rat` is a plain alias for `BigRational`, which already keeps numerator and
//! denominator coprime with a positive denominator. This module adds the few
//! helpers the rest of the crate needs: parsing/printing in the `"p/q"` text
//! form, exact square roots, and float conversion for height computations.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

/// Integer-valued rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n / d`; panics on `d == 0` (constants only).
pub fn frac(n: i64, d: i64) -> Rat {
    assert!(d != 0, "zero denominator in constant");
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_bigint(n: BigInt) -> Rat {
    Rat::from_integer(n)
}

/// Parses `"p"`, `"p/q"`, and tolerates surrounding whitespace.
pub fn parse_rat(text: &str) -> Result<Rat> {
    let s = text.trim();
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(n))
        }
    }
}

/// Canonical text form: `"p"` when integral, otherwise `"p/q"`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact integer square root, if `n` is a perfect square.
pub fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact non-negative square root of a rational, if it is a square in Q.
pub fn sqrt_exact(r: &Rat) -> Option<Rat> {
    let n = isqrt_exact(r.numer())?;
    let d = isqrt_exact(r.denom())?;
    Some(Rat::new(n, d))
}

pub fn is_square(r: &Rat) -> bool {
    sqrt_exact(r).is_some()
}

/// Natural logarithm of |n| for arbitrarily large integers (`-inf` for 0).
pub fn ln_abs(n: &BigInt) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().map(f64::ln).unwrap_or(f64::INFINITY);
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

/// Logarithmic naive height `log max(|p|, |q|)` of a reduced rational.
pub fn log_height(r: &Rat) -> f64 {
    let a = ln_abs(r.numer());
    let b = ln_abs(r.denom());
    a.max(b).max(0.0)
}

/// Least common multiple of the denominators of a list of rationals.
pub fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    it.into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Sign as -1, 0, 1.
pub fn signum(r: &Rat) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Square-free part of a non-zero integer with trial division up to `limit`;
/// returns `(square_root_of_removed_part, remaining)` with
/// `n = root^2 * remaining`. Factors above `limit` are left in `remaining`.
pub fn split_square_part(n: &BigInt, limit: u64) -> (BigInt, BigInt) {
    let mut rest = n.clone();
    let mut root = BigInt::one();
    if rest.is_zero() {
        return (root, rest);
    }
    let mut p = 2u64;
    while p <= limit {
        let pb = BigInt::from(p);
        let p2 = &pb * &pb;
        if p2 > rest.abs() {
            break;
        }
        while (&rest % &p2).is_zero() {
            rest /= &p2;
            root *= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if let Some(r) = isqrt_exact(&rest.abs()) {
        if !r.is_one() {
            root *= &r;
            rest /= &r * &r;
        }
    }
    (root, rest)
}

/// `#[serde(with = "rat_text")]` for fields holding a `Rat` in `"p/q"` form.
pub mod rat_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rat, rat_to_string, Rat};

    pub fn serialize<S: Serializer>(v: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Same encoding for a string-keyed map of rationals.
pub mod rat_map_text {
    use std::collections::BTreeMap;

    use serde::ser::SerializeMap;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{parse_rat, rat_to_string, Rat};

    pub fn serialize<S: Serializer>(v: &BTreeMap<String, Rat>, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(v.len()))?;
        for (k, r) in v {
            m.serialize_entry(k, &rat_to_string(r))?;
        }
        m.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<String, Rat>, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| parse_rat(&v).map(|r| (k, r)).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Same encoding for a list of rationals.
pub mod rat_vec_text {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::{parse_rat, rat_to_string, Rat};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(rat_to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|v| parse_rat(v).map_err(serde::de::Error::custom))
            .collect()
    }
}
