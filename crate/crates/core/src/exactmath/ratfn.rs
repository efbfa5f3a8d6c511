//! Reduced rational functions in `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::rat::Rat;
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawRatFn")]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

#[derive(Deserialize)]
struct RawRatFn {
    num: Poly,
    den: Poly,
}

impl TryFrom<RawRatFn> for RatFn {
    type Error = Error;
    fn try_from(raw: RawRatFn) -> Result<Self> {
        RatFn::reduce(raw.num, raw.den)
    }
}

impl RatFn {
    /// Canonical reduced form of `num / den`.
    pub fn reduce(num: Poly, den: Poly) -> Result<RatFn> {
        if den.is_zero() {
            return Err(Error::Domain("rational function with zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RatFn::zero());
        }
        let g = num.gcd(&den)?;
        let num = num.div_exact(&g)?;
        let den = den.div_exact(&g)?;
        let lead = den.leading().recip();
        Ok(RatFn {
            num: num.scale(&lead),
            den: den.scale(&lead),
        })
    }

    pub fn zero() -> RatFn {
        RatFn {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> RatFn {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: Rat) -> RatFn {
        RatFn::from_poly(Poly::constant(c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Value at `t0`; `None` at a pole.
    pub fn eval(&self, t0: &Rat) -> Option<Rat> {
        let d = self.den.eval(t0);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(t0) / d)
        }
    }

    /// Substitutes `t -> phi(t)` in numerator and denominator.
    pub fn compose(&self, phi: &Poly) -> RatFn {
        RatFn::reduce(self.num.compose(phi), self.den.compose(phi)).expect("nonzero denominator")
    }

    pub fn recip(&self) -> Result<RatFn> {
        RatFn::reduce(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFn) -> Result<RatFn> {
        if rhs.is_zero() {
            return Err(Error::Domain("division by the zero rational function".into()));
        }
        RatFn::reduce(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Cross-multiplication equality test.
    pub fn equals_by_cross(&self, other: &RatFn) -> bool {
        (&(&self.num * &other.den) - &(&other.num * &self.den)).is_zero()
    }

    pub fn scale(&self, c: &Rat) -> RatFn {
        if c.is_zero() {
            return RatFn::zero();
        }
        RatFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> RatFn {
        let mut acc = RatFn::constant(num_traits::One::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl From<Poly> for RatFn {
    fn from(p: Poly) -> Self {
        RatFn::from_poly(p)
    }
}

impl RatFn {
    pub fn display_in(&self, var: &str) -> String {
        if self.is_polynomial() {
            // den is the constant 1 here
            self.num.display_in(var)
        } else {
            format!("({}) / ({})", self.num.display_in(var), self.den.display_in(var))
        }
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn({self})")
    }
}

impl<'a> Add<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn add(self, rhs: &'a RatFn) -> RatFn {
        if self.den == rhs.den {
            return RatFn::reduce(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        RatFn::reduce(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero")
    }
}

impl<'a> Sub<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &'a RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFn> for &'a RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &'a RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero();
        }
        RatFn::reduce(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<RatFn> for RatFn {
            type Output = RatFn;
            fn $m(self, rhs: RatFn) -> RatFn { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a RatFn> for RatFn {
            type Output = RatFn;
            fn $m(self, rhs: &'a RatFn) -> RatFn { (&self).$m(rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Zero for RatFn {
    fn zero() -> Self {
        RatFn::zero()
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::int;

    #[test]
    fn reduces_common_factor() {
        let r = RatFn::reduce(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(r, RatFn::from_poly(Poly::from_ints(&[1, 1])));
        let z = RatFn::reduce(Poly::zero(), Poly::monomial(int(1), 3)).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.den(), &Poly::one());
        assert!(RatFn::reduce(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn monic_denominator() {
        let r = RatFn::reduce(Poly::from_ints(&[3]), Poly::from_ints(&[0, 6])).unwrap();
        assert_eq!(r.den(), &Poly::t());
        assert_eq!(r.num(), &Poly::constant(crate::exactmath::rat::frac(1, 2)));
    }

    #[test]
    fn arithmetic_and_poles() {
        let a = RatFn::reduce(Poly::one(), Poly::t()).unwrap();
        let b = RatFn::reduce(Poly::one(), Poly::from_ints(&[1, 1])).unwrap();
        let s = &a + &b;
        assert!(s.equals_by_cross(&RatFn::reduce(Poly::from_ints(&[1, 2]), Poly::from_ints(&[0, 1, 1])).unwrap()));
        assert_eq!(a.eval(&int(0)), None);
        assert_eq!((&a * &b).eval(&int(1)), Some(crate::exactmath::rat::frac(1, 2)));
        assert!((&s - &s).is_zero());
    }
}
