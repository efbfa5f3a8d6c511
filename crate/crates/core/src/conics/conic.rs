//! Conics `X^2 = A T^2 + B` over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::rat::{parse_rat, rat_to_string, sqrt_exact};
use crate::exactmath::{Poly, Rat, RatFn};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConicQ {
    pub a: Rat,
    pub b: Rat,
}

#[derive(Serialize, Deserialize)]
struct RawConic {
    #[serde(rename = "A")]
    a: String,
    #[serde(rename = "B")]
    b: String,
}

impl Serialize for ConicQ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawConic {
            a: rat_to_string(&self.a),
            b: rat_to_string(&self.b),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConicQ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawConic::deserialize(d)?;
        let a = parse_rat(&raw.a).map_err(serde::de::Error::custom)?;
        let b = parse_rat(&raw.b).map_err(serde::de::Error::custom)?;
        ConicQ::new(a, b).map_err(serde::de::Error::custom)
    }
}

/// Outcome of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// `(X, T)` with `X >= 0`.
    Found(Rat, Rat),
    /// No real points at all, so no rational ones.
    Obstructed,
    NotFoundBelowBound,
}

impl SearchOutcome {
    pub fn point(&self) -> Option<(Rat, Rat)> {
        match self {
            SearchOutcome::Found(x, t) => Some((x.clone(), t.clone())),
            _ => None,
        }
    }
}

impl ConicQ {
    pub fn new(a: Rat, b: Rat) -> Result<ConicQ> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidParams("conic X^2 = 0 is degenerate".into()));
        }
        Ok(ConicQ { a, b })
    }

    pub fn contains(&self, x: &Rat, t: &Rat) -> bool {
        x * x == &self.a * t * t + &self.b
    }

    /// `A <= 0` and `B < 0` makes the right-hand side negative for every real `T`.
    pub fn has_real_obstruction(&self) -> bool {
        !self.a.is_positive() && self.b.is_negative()
    }

    /// Scans `T = p/q` in order of `max(|p|, q)`, then `q`, then `|p|`, with
    /// `+p` before `-p`.
    pub fn small_search(&self, bound: u64) -> SearchOutcome {
        if self.has_real_obstruction() {
            return SearchOutcome::Obstructed;
        }
        for n in 0..=bound.max(1) as i64 {
            for t in rationals_of_height(n) {
                if let Some(x) = sqrt_exact(&(&self.a * &t * &t + &self.b)) {
                    return SearchOutcome::Found(x, t);
                }
            }
        }
        SearchOutcome::NotFoundBelowBound
    }

    /// Lines of slope `m` through `base` in the `(T, X)` plane.
    pub fn parametrize(&self, base: (Rat, Rat)) -> Result<ConicParametrization> {
        if !self.contains(&base.0, &base.1) {
            return Err(Error::OffCurve);
        }
        Ok(ConicParametrization {
            conic: self.clone(),
            x0: base.0,
            t0: base.1,
        })
    }
}

/// `X(m) = (-X0 m^2 + 2 A T0 m - A X0) / (m^2 - A)`,
/// `T(m) = (T0 m^2 - 2 X0 m + A T0) / (m^2 - A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConicParametrization {
    pub conic: ConicQ,
    pub x0: Rat,
    pub t0: Rat,
}

impl ConicParametrization {
    fn denominator(&self) -> Poly {
        Poly::new(vec![-self.conic.a.clone(), Rat::zero(), Rat::one()])
    }

    /// `X` and `T` as rational functions of the slope (printed in `t`).
    pub fn as_ratfns(&self) -> (RatFn, RatFn) {
        let a = &self.conic.a;
        let two = Rat::from_integer(2.into());
        let xn = Poly::new(vec![-(a * &self.x0), &two * a * &self.t0, -self.x0.clone()]);
        let tn = Poly::new(vec![a * &self.t0, -(&two * &self.x0), self.t0.clone()]);
        let den = self.denominator();
        (
            RatFn::reduce(xn, den.clone()).expect("nonzero"),
            RatFn::reduce(tn, den).expect("nonzero"),
        )
    }

    /// The second intersection of the slope-`m` line; `None` when `m^2 = A`.
    pub fn point_at(&self, m: &Rat) -> Option<(Rat, Rat)> {
        let den = self.denominator().eval(m);
        if den.is_zero() {
            return None;
        }
        let a = &self.conic.a;
        let two = Rat::from_integer(2.into());
        let x = (-(&self.x0 * m * m) + &two * a * &self.t0 * m - a * &self.x0) / &den;
        let t = (&self.t0 * m * m - &two * &self.x0 * m + a * &self.t0) / &den;
        assert!(self.conic.contains(&x, &t), "parametrization left the conic");
        Some((x, t))
    }

    /// Slope of the tangent at the base point (`None` if vertical).
    pub fn tangent_slope(&self) -> Option<Rat> {
        if self.x0.is_zero() {
            None
        } else {
            Some(&self.conic.a * &self.t0 / &self.x0)
        }
    }
}

/// Rationals `p/q` in lowest terms with `max(|p|, q) = n`, ordered by `q`,
/// then `|p|`, with `+p` before `-p`.
fn rationals_of_height(n: i64) -> Vec<Rat> {
    if n == 0 {
        return vec![Rat::zero()];
    }
    let mut out = Vec::new();
    for q in 1..=n {
        for p in 1..=n {
            if p.max(q) == n && p.gcd(&q).is_one() {
                let r = Rat::new(BigInt::from(p), BigInt::from(q));
                out.push(r.clone());
                out.push(-r);
            }
        }
    }
    out
}

/// Slopes `0, 1, -1, 2, -2, 1/2, -1/2, ...` in order of height.
pub fn slopes() -> impl Iterator<Item = Rat> {
    (0i64..).flat_map(rationals_of_height)
}
