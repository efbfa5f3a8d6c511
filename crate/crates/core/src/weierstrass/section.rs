//! Sections and bisections of a surface over Q(t).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::curve::{CurveQ, PointQ};
use super::surface::SurfaceQt;
use crate::error::{Error, Result};
use crate::exactmath::rat::{int, split_square_part, sqrt_exact};
use crate::exactmath::{Poly, Rat, RatFn};

/// A point of the generic fiber, `(x(t), y(t))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionQt {
    pub x: RatFn,
    pub y: RatFn,
}

impl SectionQt {
    pub fn new(x: RatFn, y: RatFn) -> SectionQt {
        SectionQt { x, y }
    }

    pub fn from_polys(x: Poly, y: Poly) -> SectionQt {
        SectionQt::new(x.into(), y.into())
    }

    pub fn neg(&self) -> SectionQt {
        SectionQt::new(self.x.clone(), -&self.y)
    }

    /// Value at `t0`. A pole of the coordinates specializes to the point at
    /// infinity.
    pub fn at(&self, t0: &Rat) -> PointQ {
        match (self.x.eval(t0), self.y.eval(t0)) {
            (Some(x), Some(y)) => PointQ::affine(x, y),
            _ => PointQ::Infinity,
        }
    }

    pub fn base_change(&self, phi: &Poly) -> SectionQt {
        SectionQt::new(self.x.compose(phi), self.y.compose(phi))
    }
}

/// `(x(t), c(t) * sqrt(d(t)))` with `d` a square-free integer-content
/// polynomial that is not a square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bisection {
    x: RatFn,
    c: RatFn,
    d: Poly,
}

#[derive(Deserialize)]
struct RawBisection {
    x: RatFn,
    c: RatFn,
    d: Poly,
}

impl<'de> Deserialize<'de> for Bisection {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = RawBisection::deserialize(de)?;
        Bisection::new(raw.x, raw.c, raw.d).map_err(serde::de::Error::custom)
    }
}

/// Outcome of transporting a bisection along a base change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseChanged {
    Bisection(Bisection),
    /// `d` became a square: the bisection is the union of a section and its
    /// negative.
    Split(SectionQt),
}

impl Bisection {
    /// Moves square factors of `d` into `c`. Rejects `d = 0` and square `d`.
    pub fn new(x: RatFn, c: RatFn, d: Poly) -> Result<Bisection> {
        let (c, d) = normalize_radicand(c, &d)?;
        if d.is_constant() && d.coeff(0).is_one() {
            return Err(Error::SplitBisection);
        }
        Ok(Bisection { x, c, d })
    }

    pub fn x(&self) -> &RatFn {
        &self.x
    }

    pub fn c(&self) -> &RatFn {
        &self.c
    }

    pub fn d(&self) -> &Poly {
        &self.d
    }

    /// The fiber points over `t0`: none when `d(t0)` is not a rational square
    /// or the coordinates have a pole, one when `y = 0`, otherwise `(x, +y)`
    /// and `(x, -y)`.
    pub fn points_at(&self, t0: &Rat) -> Vec<PointQ> {
        let (Some(x), Some(c)) = (self.x.eval(t0), self.c.eval(t0)) else {
            return Vec::new();
        };
        let Some(r) = sqrt_exact(&self.d.eval(t0)) else {
            return Vec::new();
        };
        let y = &c * &r;
        if y.is_zero() {
            vec![PointQ::affine(x, y)]
        } else {
            vec![PointQ::affine(x.clone(), y.clone()), PointQ::affine(x, -y)]
        }
    }

    pub fn base_change(&self, phi: &Poly) -> Result<BaseChanged> {
        let x = self.x.compose(phi);
        let c = self.c.compose(phi);
        let d = self.d.compose(phi);
        match Bisection::new(x.clone(), c.clone(), d.clone()) {
            Ok(b) => Ok(BaseChanged::Bisection(b)),
            Err(Error::SplitBisection) => {
                let root = d.sqrt_exact().expect("split radicand is a square");
                Ok(BaseChanged::Split(SectionQt::new(x, &c * &RatFn::from_poly(root))))
            }
            Err(e) => Err(e),
        }
    }
}

fn normalize_radicand(c: RatFn, d: &Poly) -> Result<(RatFn, Poly)> {
    if d.is_zero() {
        return Err(Error::Domain("bisection radicand is zero".into()));
    }
    let (lead, factors) = d.squarefree_factors();
    let mut root = Poly::one();
    let mut rest = Poly::constant(lead);
    for (i, f) in factors.iter().enumerate() {
        let mult = i + 1;
        root = &root * &f.pow((mult / 2) as u32);
        if mult % 2 == 1 {
            rest = &rest * f;
        }
    }
    // rest = (k / l) * prim with prim primitive in Z[t]; k * l = r^2 * free
    let l = rest.denominator_lcm();
    let scaled = rest.scale(&Rat::from_integer(l.clone()));
    let k = scaled
        .coeffs()
        .iter()
        .fold(BigInt::zero(), |g, x| num_integer::Integer::gcd(&g, x.numer()));
    let prim = scaled.scale(&Rat::new(BigInt::one(), k.clone()));
    let (r, free) = split_square_part(&(&k * &l), 10_000);
    let d = prim.scale(&Rat::from_integer(free));
    let c = &c * &RatFn::from_poly(root.scale(&Rat::new(r, l)));
    Ok((c, d))
}

/// Result of an on-surface check; `residual` is `y^2 - RHS(x)` (or
/// `c^2 d - RHS(x)`) and vanishes exactly when the check holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationVerdict {
    pub holds: bool,
    pub residual: RatFn,
}

impl VerificationVerdict {
    fn from_residual(residual: RatFn) -> Self {
        VerificationVerdict {
            holds: residual.is_zero(),
            residual,
        }
    }
}

pub fn section_on_surface(s: &SurfaceQt, sec: &SectionQt) -> VerificationVerdict {
    VerificationVerdict::from_residual(&(&sec.y * &sec.y) - &s.rhs(&sec.x))
}

pub fn bisection_on_surface(s: &SurfaceQt, b: &Bisection) -> VerificationVerdict {
    let lhs = &(&b.c * &b.c) * &RatFn::from_poly(b.d.clone());
    VerificationVerdict::from_residual(&lhs - &s.rhs(&b.x))
}

fn tangent_slope(s: &SurfaceQt, sec: &SectionQt) -> Result<RatFn> {
    if sec.y.is_zero() {
        return Err(Error::TwoTorsionSection);
    }
    let a2 = RatFn::from_poly(s.a2.clone());
    let a4 = RatFn::from_poly(s.a4.clone());
    let x = &sec.x;
    let num = &(&(x * x).scale(&int(3)) + &(&a2 * x).scale(&int(2))) + &a4;
    num.checked_div(&sec.y.scale(&int(2)))
}

fn third_point(s: &SurfaceQt, lambda: &RatFn, p: &SectionQt, qx: &RatFn) -> SectionQt {
    let a2 = RatFn::from_poly(s.a2.clone());
    let x3 = &(&(&(lambda * lambda) - &a2) - &p.x) - qx;
    let y3 = &(lambda * &(&p.x - &x3)) - &p.y;
    SectionQt::new(x3, y3)
}

/// `2 * sec` over Q(t). The input must lie on the surface.
pub fn double_section(s: &SurfaceQt, sec: &SectionQt) -> Result<SectionQt> {
    if !section_on_surface(s, sec).holds {
        return Err(Error::OffCurve);
    }
    let lambda = tangent_slope(s, sec)?;
    Ok(third_point(s, &lambda, sec, &sec.x))
}

/// `p + q` over Q(t); `None` is the zero section.
pub fn add_sections(s: &SurfaceQt, p: &SectionQt, q: &SectionQt) -> Result<Option<SectionQt>> {
    if !section_on_surface(s, p).holds || !section_on_surface(s, q).holds {
        return Err(Error::OffCurve);
    }
    if p.x == q.x {
        if (&p.y + &q.y).is_zero() {
            return Ok(None);
        }
        return double_section(s, p).map(Some);
    }
    let lambda = (&q.y - &p.y).checked_div(&(&q.x - &p.x))?;
    Ok(Some(third_point(s, &lambda, p, &q.x)))
}

/// Specializes a section at `t0` onto the fiber curve, checking the fiber is
/// smooth.
pub fn specialize_section(s: &SurfaceQt, sec: &SectionQt, t0: &Rat) -> Result<(CurveQ, PointQ)> {
    let c = s.specialize(t0)?;
    let p = sec.at(t0);
    if !c.contains(&p) {
        return Err(Error::OffCurve);
    }
    Ok((c, p))
}
