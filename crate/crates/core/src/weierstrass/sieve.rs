//! Nagell–Lutz sieve for sections: integer fibers where a section can still
//! be torsion.
//!
//! Scale the surface to `mu^2 a2, mu^4 a4, mu^6 a6` with integer coefficients
//! and write the doubled x-coordinate on that model as `N(t) / D(t)` with
//! `N, D` in Z[t] coprime over Q. When `t | D`, every integer `t0` with
//! `t0` not dividing `N(0)` has a prime `p` with
//! `v_p(N(t0)) = v_p(N(0)) < v_p(t0) <= v_p(D(t0))`, so `x(2P(t0))` is not
//! integral and `P(t0)` has infinite order. The remaining `t0` form a finite
//! set: divisors of `N(0)`, zero, and roots of a few polynomials where the
//! specialization argument breaks down.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::curve::weighted_integral_scale;
use super::section::{double_section, section_on_surface, SectionQt};
use super::surface::SurfaceQt;
use crate::exactmath::{Poly, Rat, RatFn};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ExceptionalSet {
    /// Integer `t0` is exceptional iff `t0 = 0`, `t0 | constant`, or `t0` is
    /// a root of one of `extra`.
    Finite {
        #[serde(serialize_with = "ser_display")]
        constant: BigInt,
        #[serde(serialize_with = "ser_polys")]
        extra: Vec<Poly>,
        /// `N / D` of the doubled x-coordinate on the integral model.
        #[serde(skip)]
        doubled_x: (Poly, Poly),
    },
    /// The section is 2-torsion on the generic fiber.
    All,
    /// `t` does not divide the denominator; the sieve certifies nothing.
    NoCertificate,
}

fn ser_display<S: serde::Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_polys<S: serde::Serializer>(v: &[Poly], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for p in v {
        seq.serialize_element(&p.to_strings())?;
    }
    seq.end()
}

impl ExceptionalSet {
    /// Whether an integer `t0` may still be a torsion specialization.
    pub fn contains(&self, t0: &BigInt) -> bool {
        match self {
            ExceptionalSet::All | ExceptionalSet::NoCertificate => true,
            ExceptionalSet::Finite { constant, extra, .. } => {
                let r = Rat::from_integer(t0.clone());
                t0.is_zero()
                    || (constant % t0).is_zero()
                    || extra.iter().any(|p| p.eval(&r).is_zero())
            }
        }
    }

    /// Exceptional integers in `[lo, hi]`.
    pub fn members_in(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).filter(|&t| self.contains(&BigInt::from(t))).collect()
    }
}

/// Clears denominators of `num / den` into a pair in Z[t] with the same ratio.
fn integral_pair(f: &RatFn) -> (Poly, Poly) {
    let l = f.num().denominator_lcm().lcm(&f.den().denominator_lcm());
    let s = Rat::from_integer(l);
    (f.num().scale(&s), f.den().scale(&s))
}

pub fn nontorsion_sieve(s: &SurfaceQt, sec: &SectionQt) -> ExceptionalSet {
    if !section_on_surface(s, sec).holds {
        return ExceptionalSet::NoCertificate;
    }
    let doubled = match double_section(s, sec) {
        Ok(d) => d,
        Err(_) => return ExceptionalSet::All,
    };
    let coeffs = s
        .a2
        .coeffs()
        .iter()
        .map(|c| (c, 1))
        .chain(s.a4.coeffs().iter().map(|c| (c, 2)))
        .chain(s.a6.coeffs().iter().map(|c| (c, 3)));
    let mu = weighted_integral_scale(coeffs);
    let x2 = doubled.x.scale(&Rat::from_integer(&mu * &mu));
    let (n, d) = integral_pair(&x2);
    if !d.coeff(0).is_zero() {
        return ExceptionalSet::NoCertificate;
    }
    let constant = n.coeff(0).to_integer().abs();
    debug_assert!(!constant.is_zero() || n.is_zero());
    let mut extra = vec![s.discriminant(), d.clone()];
    for f in [&sec.x, &sec.y] {
        if !f.den().is_constant() {
            extra.push(f.den().clone());
        }
    }
    extra.push(sec.y.num().clone());
    ExceptionalSet::Finite {
        constant,
        extra,
        doubled_x: (n, d),
    }
}

impl ExceptionalSet {
    pub fn doubled_x(&self) -> Option<(&Poly, &Poly)> {
        match self {
            ExceptionalSet::Finite { doubled_x, .. } => Some((&doubled_x.0, &doubled_x.1)),
            _ => None,
        }
    }

    pub fn constant(&self) -> Option<&BigInt> {
        match self {
            ExceptionalSet::Finite { constant, .. } => Some(constant),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::int;
    use crate::weierstrass::curve::PointQ;

    fn d_surface(s: i64, w: i64, v: i64) -> SurfaceQt {
        // (x - vt)(x - vt - s)(x - vt - w) + t^6
        let shift = Poly::from_ints(&[0, v]);
        let sq = &shift * &shift;
        let a2 = -(shift.scale(&int(3)) + Poly::constant(int(s + w)));
        let a4 = sq.scale(&int(3)) + shift.scale(&int(2 * (s + w))) + Poly::constant(int(s * w));
        let a6 = Poly::monomial(int(1), 6) - &sq * &shift - sq.scale(&int(s + w)) - shift.scale(&int(s * w));
        SurfaceQt::new(a2, a4, a6).unwrap()
    }

    #[test]
    fn constant_of_doubled_s1() {
        for (s, w, v) in [(4, -1, 0), (4, -1, 1), (1, -1, 1), (3, 5, -2)] {
            let surf = d_surface(s, w, v);
            let s1 = SectionQt::from_polys(Poly::from_ints(&[s, v]), Poly::monomial(int(1), 3));
            assert!(section_on_surface(&surf, &s1).holds);
            let set = nontorsion_sieve(&surf, &s1);
            // x(2 S1) = (4v t^7 + 4(w - s) t^6 + s^2 (s - w)^2) / (4 t^6), cleared
            // to the smallest integral pair
            let k = s * s * (s - w) * (s - w);
            let expect = BigInt::from(k / num_integer::gcd(k, 4));
            assert_eq!(set.constant(), Some(&expect), "(s,w,v)=({s},{w},{v})");
        }
    }

    #[test]
    fn l11_t5_is_certified() {
        let surf = d_surface(1, -1, 1);
        let s1 = SectionQt::from_polys(Poly::from_ints(&[1, 1]), Poly::monomial(int(1), 3));
        let set = nontorsion_sieve(&surf, &s1);
        assert!(!set.contains(&BigInt::from(5)));
        assert!(set.contains(&BigInt::from(1)));
        assert!(set.contains(&BigInt::from(-1)));
        assert_eq!(set.members_in(-10, 10), vec![-1, 0, 1]);
        // the sieve's verdict agrees with the doubled point at t = 5
        let c = surf.specialize(&int(5)).unwrap();
        let p = s1.at(&int(5));
        match c.double(&p).unwrap() {
            PointQ::Affine { x, .. } => assert!(!x.is_integer()),
            PointQ::Infinity => panic!("2P = O"),
        }
    }

    #[test]
    fn two_torsion_section_is_all() {
        let surf = SurfaceQt::new(Poly::from_ints(&[-3, 0, -1]), Poly::from_ints(&[2, 0, 1]), Poly::zero()).unwrap();
        let z = SectionQt::from_polys(Poly::zero(), Poly::zero());
        assert_eq!(nontorsion_sieve(&surf, &z), ExceptionalSet::All);
    }
}
