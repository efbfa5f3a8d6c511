//! Integer solutions of `x^2 - D t^2 = N`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::rat::isqrt_exact;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PellSolution {
    #[serde(with = "bigint_str")]
    pub x: BigInt,
    #[serde(with = "bigint_str")]
    pub t: BigInt,
}

mod bigint_str {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl PellSolution {
    pub fn new(x: impl Into<BigInt>, t: impl Into<BigInt>) -> PellSolution {
        PellSolution { x: x.into(), t: t.into() }
    }

    /// `x^2 - D t^2`.
    pub fn norm(&self, d: &BigInt) -> BigInt {
        &self.x * &self.x - d * &self.t * &self.t
    }
}

fn check_discriminant(d: &BigInt) -> Result<()> {
    if d < &BigInt::from(2) {
        return Err(Error::Domain(format!("Pell discriminant must be at least 2, got {d}")));
    }
    if isqrt_exact(d).is_some() {
        return Err(Error::SquareDiscriminant(d.clone()));
    }
    Ok(())
}

/// Least positive solution of `x^2 - D t^2 = 1` from the continued fraction
/// of `sqrt(D)`.
pub fn pell_fundamental(d: &BigInt) -> Result<PellSolution> {
    check_discriminant(d)?;
    let a0 = d.sqrt();
    let (mut m, mut q, mut a) = (BigInt::zero(), BigInt::one(), a0.clone());
    let (mut h_prev, mut h) = (BigInt::one(), a0.clone());
    let (mut k_prev, mut k) = (BigInt::zero(), BigInt::one());
    loop {
        if &h * &h - d * &k * &k == BigInt::one() {
            let sol = PellSolution { x: h, t: k };
            assert!(sol.norm(d).is_one());
            return Ok(sol);
        }
        m = &q * &a - &m;
        q = (d - &m * &m) / &q;
        a = (&a0 + &m) / &q;
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
}

/// `(x u + D t v, x v + t u)` for `unit = (u, v)`; preserves the norm of
/// `base`.
pub fn pell_next(d: &BigInt, base: &PellSolution, unit: &PellSolution) -> Result<PellSolution> {
    check_discriminant(d)?;
    if !unit.norm(d).is_one() {
        return Err(Error::InvalidParams(format!(
            "({}, {}) is not a unit: norm {}",
            unit.x,
            unit.t,
            unit.norm(d)
        )));
    }
    let (u, v) = (&unit.x, &unit.t);
    let next = PellSolution {
        x: &base.x * u + d * &base.t * v,
        t: &base.x * v + &base.t * u,
    };
    assert_eq!(next.norm(d), base.norm(d), "composition changed the norm");
    Ok(next)
}

/// Smallest `t >= 0` (up to `bound`) with `N + D t^2` a square; `x >= 0`.
pub fn pell_base_solution(d: &BigInt, n: &BigInt, bound: u64) -> Result<Option<PellSolution>> {
    check_discriminant(d)?;
    for t in 0..=bound {
        let t = BigInt::from(t);
        if let Some(x) = isqrt_exact(&(n + d * &t * &t)) {
            return Ok(Some(PellSolution { x, t }));
        }
    }
    Ok(None)
}

/// Solutions `base, base * unit, base * unit^2, ...` of a fixed norm.
/// Iteration stops once a coordinate exceeds `digit_budget` decimal digits.
#[derive(Clone, Debug)]
pub struct PellIter {
    d: BigInt,
    unit: PellSolution,
    next: Option<PellSolution>,
    digit_budget: usize,
}

impl PellIter {
    pub fn new(d: &BigInt, base: PellSolution, digit_budget: usize) -> Result<PellIter> {
        let unit = pell_fundamental(d)?;
        Ok(PellIter {
            d: d.clone(),
            unit,
            next: Some(base),
            digit_budget,
        })
    }

    pub fn unit(&self) -> &PellSolution {
        &self.unit
    }
}

impl Iterator for PellIter {
    type Item = PellSolution;

    fn next(&mut self) -> Option<PellSolution> {
        let cur = self.next.take()?;
        let digits = cur.x.abs().to_string().len().max(cur.t.abs().to_string().len());
        if digits > self.digit_budget {
            return None;
        }
        self.next = pell_next(&self.d, &cur, &self.unit).ok();
        Some(cur)
    }
}
