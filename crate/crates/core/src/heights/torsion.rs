//! Torsion detection on fibers over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::Rat;
use crate::weierstrass::{CurveQ, PointQ};

/// Number of good primes whose point counts enter the torsion bound.
pub const GOOD_PRIMES: usize = 8;

/// Mazur's bound on the order of a torsion point over Q.
const MAX_TORSION_ORDER: u64 = 12;

/// `y^2 = x^3 + a2 x^2 + a4 x + a6` with integer coefficients, isomorphic to a
/// curve over Q via `x' = mu^2 x`, `y' = mu^3 y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralModel {
    pub mu: BigInt,
    pub curve: CurveQ,
}

impl IntegralModel {
    pub fn of(c: &CurveQ) -> IntegralModel {
        let mu = c.integral_scale();
        let curve = c.scaled(&mu);
        debug_assert!(curve.has_integral_coefficients());
        IntegralModel { mu, curve }
    }

    pub fn to_model(&self, p: &PointQ) -> PointQ {
        CurveQ::scale_point(p, &self.mu)
    }

    pub fn from_model(&self, p: &PointQ) -> PointQ {
        match p {
            PointQ::Infinity => PointQ::Infinity,
            PointQ::Affine { x, y } => {
                let m = Rat::from_integer(self.mu.clone());
                let m2 = &m * &m;
                PointQ::affine(x / &m2, y / (&m2 * &m))
            }
        }
    }

    pub fn coeffs(&self) -> [BigInt; 3] {
        [
            self.curve.a2.to_integer(),
            self.curve.a4.to_integer(),
            self.curve.a6.to_integer(),
        ]
    }

    pub fn discriminant(&self) -> BigInt {
        self.curve.discriminant().to_integer()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// `#E(F_p)` for an odd prime of good reduction, by Legendre symbol sums.
pub fn count_points_mod_p(coeffs: &[BigInt; 3], p: u64) -> u64 {
    let pb = BigInt::from(p);
    let r = |c: &BigInt| c.mod_floor(&pb).to_u64().expect("reduced below p");
    let (a2, a4, a6) = (r(&coeffs[0]), r(&coeffs[1]), r(&coeffs[2]));
    let mut square = vec![false; p as usize];
    for y in 0..p {
        square[(y * y % p) as usize] = true;
    }
    let mut n = 1; // infinity
    for x in 0..p {
        let v = (((x + a2) % p * x % p + a4) % p * x % p + a6) % p;
        n += if v == 0 {
            1
        } else if square[v as usize] {
            2
        } else {
            0
        };
    }
    n
}

/// gcd of `#E(F_p)` over the first [`GOOD_PRIMES`] odd primes of good
/// reduction for the integral model. The torsion subgroup injects into each
/// `E(F_p)`, so its order divides the result.
pub fn torsion_bound(c: &CurveQ) -> u64 {
    let model = IntegralModel::of(c);
    let disc = model.discriminant();
    let coeffs = model.coeffs();
    let mut g = 0u64;
    let mut used = 0;
    let mut p = 3u64;
    while used < GOOD_PRIMES {
        if is_prime(p) && !(&disc % p).is_zero() {
            g = g.gcd(&count_points_mod_p(&coeffs, p));
            used += 1;
        }
        p += 2;
    }
    g
}

/// Exact torsion test: `n p = O` for some `n` dividing the torsion bound.
/// Multiples are formed on the integral model, where a non-integral
/// x-coordinate already proves infinite order.
pub fn is_torsion(c: &CurveQ, p: &PointQ) -> Result<bool> {
    if !c.contains(p) {
        return Err(Error::OffCurve);
    }
    if p.is_infinity() {
        return Ok(true);
    }
    let bound = torsion_bound(c);
    let model = IntegralModel::of(c);
    let q = model.to_model(p);
    let mut acc = q.clone();
    for _ in 1..=MAX_TORSION_ORDER.min(bound) {
        match &acc {
            PointQ::Infinity => return Ok(true),
            PointQ::Affine { x, y } if !x.is_integer() || !y.is_integer() => return Ok(false),
            PointQ::Affine { .. } => {}
        }
        acc = model.curve.add(&acc, &q)?;
    }
    Ok(false)
}

/// Order of a torsion point (`None` for infinite order).
pub fn torsion_order(c: &CurveQ, p: &PointQ) -> Result<Option<u64>> {
    if !is_torsion(c, p)? {
        return Ok(None);
    }
    let mut acc = p.clone();
    for n in 1..=MAX_TORSION_ORDER {
        if acc.is_infinity() {
            return Ok(Some(n));
        }
        acc = c.add(&acc, p)?;
    }
    unreachable!("torsion point of order above Mazur's bound")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::int;

    fn pt(x: i64, y: i64) -> PointQ {
        PointQ::affine(int(x), int(y))
    }

    #[test]
    fn full_two_torsion_bound() {
        let c = CurveQ::from_ints(10, 9, 0).unwrap();
        // brute-force counts at 7, 11, 13, 17, 19
        for p in [7u64, 11, 13, 17, 19] {
            let mut n = 1;
            for x in 0..p {
                for y in 0..p {
                    let lhs = (y * y) % p;
                    let rhs = (x * x % p * x + 10 * x * x + 9 * x) % p;
                    if lhs == rhs {
                        n += 1;
                    }
                }
            }
            let coeffs = [BigInt::from(10), BigInt::from(9), BigInt::from(0)];
            assert_eq!(count_points_mod_p(&coeffs, p), n);
        }
        assert_eq!(torsion_bound(&c) % 4, 0);
        for x in [0, -1, -9] {
            assert_eq!(torsion_order(&c, &pt(x, 0)).unwrap(), Some(2));
        }
    }

    #[test]
    fn walsh_fiber_two_torsion() {
        let c = CurveQ::from_ints(-3, 2, 0).unwrap();
        assert_eq!(torsion_bound(&c) % 4, 0);
        assert!(is_torsion(&c, &pt(1, 0)).unwrap());
        assert!(is_torsion(&c, &pt(2, 0)).unwrap());
    }

    #[test]
    fn non_torsion_and_infinity() {
        let c = CurveQ::from_ints(-6, 11, 58).unwrap();
        assert!(!is_torsion(&c, &pt(3, 8)).unwrap());
        assert!(is_torsion(&c, &PointQ::Infinity).unwrap());
        assert!(is_torsion(&c, &pt(3, 9)).is_err());
        assert!(torsion_bound(&c) >= 1);
    }

    #[test]
    fn higher_order_torsion() {
        // y^2 = x^3 + 1 has torsion Z/6 generated by (2, 3)
        let c = CurveQ::from_ints(0, 0, 1).unwrap();
        assert_eq!(torsion_order(&c, &pt(2, 3)).unwrap(), Some(6));
        assert_eq!(torsion_order(&c, &pt(0, 1)).unwrap(), Some(3));
    }
}
