use serde::{Deserialize, Serialize};

use super::curve::CurveQ;
use crate::error::{Error, Result};
use crate::exactmath::{Poly, Rat, RatFn};

/// `y^2 = x^3 + a2(t) x^2 + a4(t) x + a6(t)` over Q[t].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSurface")]
pub struct SurfaceQt {
    pub a2: Poly,
    pub a4: Poly,
    pub a6: Poly,
}

#[derive(Deserialize)]
struct RawSurface {
    a2: Poly,
    a4: Poly,
    a6: Poly,
}

impl TryFrom<RawSurface> for SurfaceQt {
    type Error = Error;
    fn try_from(raw: RawSurface) -> Result<Self> {
        SurfaceQt::new(raw.a2, raw.a4, raw.a6)
    }
}

/// Standard invariants of a model with `a1 = a3 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: Poly,
    pub b4: Poly,
    pub b6: Poly,
    pub b8: Poly,
    pub c4: Poly,
    pub c6: Poly,
    pub delta: Poly,
}

fn c(n: i64) -> Poly {
    Poly::constant(crate::exactmath::rat::int(n))
}

/// Invariants from raw coefficients without the degeneracy check.
pub fn invariants_of(a2: &Poly, a4: &Poly, a6: &Poly) -> Invariants {
    let b2 = a2 * &c(4);
    let b4 = a4 * &c(2);
    let b6 = a6 * &c(4);
    let b8 = &(&(a2 * a6) * &c(4)) - &(a4 * a4);
    let c4 = &(&b2 * &b2) - &(&b4 * &c(24));
    let c6 = &(&(&(&b2 * &b4) * &c(36)) - &(&(&b2 * &b2) * &b2)) - &(&b6 * &c(216));
    let delta = &(&(&(&b2 * &b4) * &(&b6 * &c(9))) - &(&(&b2 * &b2) * &b8))
        - &(&(&(&b4 * &b4) * &b4) * &c(8) + &(&b6 * &b6) * &c(27));
    assert_eq!(
        &(&c4 * &c4) * &c4 - &c6 * &c6,
        &delta * &c(1728),
        "c4^3 - c6^2 = 1728 Delta"
    );
    Invariants {
        b2,
        b4,
        b6,
        b8,
        c4,
        c6,
        delta,
    }
}

impl SurfaceQt {
    /// Rejects models whose discriminant vanishes identically.
    pub fn new(a2: Poly, a4: Poly, a6: Poly) -> Result<SurfaceQt> {
        let s = SurfaceQt { a2, a4, a6 };
        if s.discriminant().is_zero() {
            return Err(Error::DegenerateSurface);
        }
        Ok(s)
    }

    pub fn invariants(&self) -> Invariants {
        invariants_of(&self.a2, &self.a4, &self.a6)
    }

    pub fn discriminant(&self) -> Poly {
        self.invariants().delta
    }

    /// `x^3 + a2 x^2 + a4 x + a6` for `x` in Q(t).
    pub fn rhs(&self, x: &RatFn) -> RatFn {
        let a2 = RatFn::from_poly(self.a2.clone());
        let a4 = RatFn::from_poly(self.a4.clone());
        let a6 = RatFn::from_poly(self.a6.clone());
        let inner = &(&(x + &a2) * x) + &a4;
        &(&inner * x) + &a6
    }

    /// The fiber over `t0`; errors when `Delta(t0) = 0`.
    pub fn specialize(&self, t0: &Rat) -> Result<CurveQ> {
        CurveQ::new(self.a2.eval(t0), self.a4.eval(t0), self.a6.eval(t0))
            .map_err(|_| Error::SingularFiber(t0.clone()))
    }

    /// Pullback along `t -> phi(t)`.
    pub fn base_change(&self, phi: &Poly) -> Result<SurfaceQt> {
        if phi.is_constant() {
            return Err(Error::Domain("base change needs a non-constant polynomial".into()));
        }
        SurfaceQt::new(self.a2.compose(phi), self.a4.compose(phi), self.a6.compose(phi))
    }

    /// `deg a_i <= i`: the coefficient bounds of a rational elliptic surface.
    pub fn is_rational_surface_shape(&self) -> bool {
        self.a2.degree().unwrap_or(0) <= 2
            && self.a4.degree().unwrap_or(0) <= 4
            && self.a6.degree().unwrap_or(0) <= 6
    }
}
