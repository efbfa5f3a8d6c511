//! Elliptic curves over Q and their rational points.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::rat::{int, parse_rat, rat_to_string};
use crate::exactmath::Rat;

/// `y^2 = x^3 + a2 x^2 + a4 x + a6` with non-zero discriminant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveQ {
    pub a2: Rat,
    pub a4: Rat,
    pub a6: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PointQ {
    Infinity,
    Affine { x: Rat, y: Rat },
}

impl PointQ {
    pub fn affine(x: Rat, y: Rat) -> PointQ {
        PointQ::Affine { x, y }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, PointQ::Infinity)
    }

    pub fn x(&self) -> Option<&Rat> {
        match self {
            PointQ::Infinity => None,
            PointQ::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&Rat> {
        match self {
            PointQ::Infinity => None,
            PointQ::Affine { y, .. } => Some(y),
        }
    }
}

impl fmt::Display for PointQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PointQ::Infinity => f.write_str("O"),
            PointQ::Affine { x, y } => write!(f, "({}, {})", rat_to_string(x), rat_to_string(y)),
        }
    }
}

impl Serialize for PointQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PointQ::Infinity => s.serialize_str("infinity"),
            PointQ::Affine { x, y } => [rat_to_string(x), rat_to_string(y)].serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for PointQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Tag(String),
            Pair([String; 2]),
        }
        match Repr::deserialize(d)? {
            Repr::Tag(t) if t == "infinity" => Ok(PointQ::Infinity),
            Repr::Tag(t) => Err(serde::de::Error::custom(format!("unknown point tag {t:?}"))),
            Repr::Pair([x, y]) => {
                let x = parse_rat(&x).map_err(serde::de::Error::custom)?;
                let y = parse_rat(&y).map_err(serde::de::Error::custom)?;
                Ok(PointQ::Affine { x, y })
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CurveRepr {
    a2: String,
    a4: String,
    a6: String,
}

impl Serialize for CurveQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CurveRepr {
            a2: rat_to_string(&self.a2),
            a4: rat_to_string(&self.a4),
            a6: rat_to_string(&self.a6),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CurveQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = CurveRepr::deserialize(d)?;
        let r = |s: &str| parse_rat(s).map_err(serde::de::Error::custom);
        CurveQ::new(r(&raw.a2)?, r(&raw.a4)?, r(&raw.a6)?).map_err(serde::de::Error::custom)
    }
}

impl CurveQ {
    pub fn new(a2: Rat, a4: Rat, a6: Rat) -> Result<CurveQ> {
        let c = CurveQ { a2, a4, a6 };
        if c.discriminant().is_zero() {
            return Err(Error::SingularCurve);
        }
        Ok(c)
    }

    pub fn from_ints(a2: i64, a4: i64, a6: i64) -> Result<CurveQ> {
        CurveQ::new(int(a2), int(a4), int(a6))
    }

    pub fn discriminant(&self) -> Rat {
        let (a2, a4, a6) = (&self.a2, &self.a4, &self.a6);
        let b2 = a2 * int(4);
        let b4 = a4 * int(2);
        let b6 = a6 * int(4);
        let b8 = a2 * a6 * int(4) - a4 * a4;
        -(&b2 * &b2 * &b8) - int(8) * &b4 * &b4 * &b4 - int(27) * &b6 * &b6
            + int(9) * &b2 * &b4 * &b6
    }

    pub fn rhs(&self, x: &Rat) -> Rat {
        ((x + &self.a2) * x + &self.a4) * x + &self.a6
    }

    pub fn contains(&self, p: &PointQ) -> bool {
        match p {
            PointQ::Infinity => true,
            PointQ::Affine { x, y } => y * y == self.rhs(x),
        }
    }

    fn check(&self, p: &PointQ) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::OffCurve)
        }
    }

    pub fn neg(&self, p: &PointQ) -> PointQ {
        match p {
            PointQ::Infinity => PointQ::Infinity,
            PointQ::Affine { x, y } => PointQ::affine(x.clone(), -y),
        }
    }

    /// Chord-and-tangent addition; both points must lie on the curve.
    pub fn add(&self, p: &PointQ, q: &PointQ) -> Result<PointQ> {
        self.check(p)?;
        self.check(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub fn double(&self, p: &PointQ) -> Result<PointQ> {
        self.check(p)?;
        Ok(self.add_unchecked(p, p))
    }

    pub(crate) fn add_unchecked(&self, p: &PointQ, q: &PointQ) -> PointQ {
        let (x1, y1, x2, y2) = match (p, q) {
            (PointQ::Infinity, _) => return q.clone(),
            (_, PointQ::Infinity) => return p.clone(),
            (PointQ::Affine { x: x1, y: y1 }, PointQ::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return PointQ::Infinity;
            }
            (int(3) * x1 * x1 + int(2) * &self.a2 * x1 + &self.a4) / (int(2) * y1)
        } else {
            (y2 - y1) / (x2 - x1)
        };
        let x3 = &lambda * &lambda - &self.a2 - x1 - x2;
        let y3 = &lambda * (x1 - &x3) - y1;
        PointQ::affine(x3, y3)
    }

    /// `n * p` by double-and-add; negative `n` negates.
    pub fn mul(&self, p: &PointQ, n: i64) -> Result<PointQ> {
        self.check(p)?;
        let base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = PointQ::Infinity;
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &pow);
            }
            k >>= 1;
            if k > 0 {
                pow = self.add_unchecked(&pow, &pow);
            }
        }
        Ok(acc)
    }

    /// Smallest `mu >= 1` such that
    /// `y^2 = x^3 + mu^2 a2 x^2 + mu^4 a4 x + mu^6 a6` has integer coefficients.
    pub fn integral_scale(&self) -> BigInt {
        weighted_integral_scale([(&self.a2, 1), (&self.a4, 2), (&self.a6, 3)])
    }

    /// Isomorphic model `x' = mu^2 x`, `y' = mu^3 y`.
    pub fn scaled(&self, mu: &BigInt) -> CurveQ {
        let m2 = Rat::from_integer(mu * mu);
        CurveQ {
            a2: &self.a2 * &m2,
            a4: &self.a4 * &m2 * &m2,
            a6: &self.a6 * &m2 * &m2 * &m2,
        }
    }

    pub fn scale_point(p: &PointQ, mu: &BigInt) -> PointQ {
        match p {
            PointQ::Infinity => PointQ::Infinity,
            PointQ::Affine { x, y } => {
                let m = Rat::from_integer(mu.clone());
                let m2 = &m * &m;
                PointQ::affine(x * &m2, y * &m2 * &m)
            }
        }
    }

    pub fn has_integral_coefficients(&self) -> bool {
        self.a2.is_integer() && self.a4.is_integer() && self.a6.is_integer()
    }
}

/// Smallest `mu >= 1` with `mu^(2w) * r` integral for every pair `(r, w)`.
/// The minimal scale divides the lcm of the denominators; past a search
/// limit the lcm itself is returned.
pub(crate) fn weighted_integral_scale<'a>(items: impl IntoIterator<Item = (&'a Rat, u32)>) -> BigInt {
    let items: Vec<(&Rat, u32)> = items.into_iter().collect();
    let works = |mu: &BigInt| {
        let m2 = Rat::from_integer(mu * mu);
        items.iter().all(|(r, w)| (*r * num_traits::pow(m2.clone(), *w as usize)).is_integer())
    };
    let l = crate::exactmath::rat::lcm_denominators(items.iter().map(|(r, _)| *r));
    let limit = BigInt::from(1_000_000);
    let mut cand = BigInt::one();
    while cand <= l && cand <= limit {
        if (&l % &cand).is_zero() && works(&cand) {
            return cand;
        }
        cand += 1;
    }
    l
}

fn push_term(out: &mut String, c: &Rat, mono: &str) {
    if c.is_zero() {
        return;
    }
    out.push_str(if c.is_negative() { " - " } else { " + " });
    let mag = c.abs();
    if !(mag.is_one() && !mono.is_empty()) {
        out.push_str(&rat_to_string(&mag));
    }
    out.push_str(mono);
}

impl fmt::Display for CurveQ {
    /// Table style, e.g. `y^2 = x^3 - 97/18x^2 + 583/81x + 1/36`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::from("y^2 = x^3");
        push_term(&mut out, &self.a2, "x^2");
        push_term(&mut out, &self.a4, "x");
        push_term(&mut out, &self.a6, "");
        f.write_str(&out)
    }
}
