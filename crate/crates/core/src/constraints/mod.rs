//! The vanishing conditions for a quadratic section / quadratic bisection
//! ansatz on a surface with `deg e <= 2`, `deg f <= 4`, `deg g <= 6`.
//!
//! Residuals are the coefficients of `RHS(x(t)) - y(t)^2`, computed for
//! arbitrary constant terms `e0, f0, g0`. With the fiber at `t = 0` equal to
//! `x (x - s)(x - w)` (so `e0 = -s - w`, `f0 = s w`, `g0 = 0`) they reduce to
//! the printed conditions.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::linalg::{solve, LinearSolution};
use crate::exactmath::rat::{int, rat_text, sqrt_exact};
use crate::exactmath::{Poly, Rat, RatFn};
use crate::weierstrass::{Bisection, SectionQt, SurfaceQt};

macro_rules! rat_struct {
    ($(#[$m:meta])* $name:ident { $($f:ident),* $(,)? }) => {
        $(#[$m])*
        #[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
        pub struct $name {
            $(#[serde(with = "rat_text", default = "Rat::zero")] pub $f: Rat,)*
        }
    };
}

rat_struct!(
    /// Coefficients of `y^2 = x^3 + e(t) x^2 + f(t) x + g(t)`.
    GenericSurfaceParams { e2, e1, e0, f4, f3, f2, f1, f0, g6, g5, g4, g3, g2, g1, g0 }
);

rat_struct!(
    /// `x = q t^2 + r t + s`, `y = y3 t^3 + y0`.
    SectionAnsatz { q, r, s, y3, y0 }
);

rat_struct!(
    /// `x = a t^2 + b t + c`, `y = t sqrt((-s - w) t^2 - s w)`.
    BisectionAnsatz { a, b, c, s, w }
);

impl GenericSurfaceParams {
    pub fn from_surface(s: &SurfaceQt) -> Result<GenericSurfaceParams> {
        if !s.is_rational_surface_shape() {
            return Err(Error::InvalidParams("surface exceeds degrees (2, 4, 6)".into()));
        }
        let (e, f, g) = (&s.a2, &s.a4, &s.a6);
        Ok(GenericSurfaceParams {
            e2: e.coeff(2),
            e1: e.coeff(1),
            e0: e.coeff(0),
            f4: f.coeff(4),
            f3: f.coeff(3),
            f2: f.coeff(2),
            f1: f.coeff(1),
            f0: f.coeff(0),
            g6: g.coeff(6),
            g5: g.coeff(5),
            g4: g.coeff(4),
            g3: g.coeff(3),
            g2: g.coeff(2),
            g1: g.coeff(1),
            g0: g.coeff(0),
        })
    }

    pub fn polys(&self) -> (Poly, Poly, Poly) {
        (
            Poly::new(vec![self.e0.clone(), self.e1.clone(), self.e2.clone()]),
            Poly::new(vec![
                self.f0.clone(),
                self.f1.clone(),
                self.f2.clone(),
                self.f3.clone(),
                self.f4.clone(),
            ]),
            Poly::new(vec![
                self.g0.clone(),
                self.g1.clone(),
                self.g2.clone(),
                self.g3.clone(),
                self.g4.clone(),
                self.g5.clone(),
                self.g6.clone(),
            ]),
        )
    }

    pub fn to_surface(&self) -> Result<SurfaceQt> {
        let (e, f, g) = self.polys();
        SurfaceQt::new(e, f, g)
    }

    fn rhs(&self, x: &Poly) -> Poly {
        let (e, f, g) = self.polys();
        &(&(&(&(x + &e) * x) + &f) * x) + &g
    }

    /// Mutable access by name, in the order of the struct fields.
    pub fn field_mut(&mut self, name: &str) -> Option<&mut Rat> {
        Some(match name {
            "e2" => &mut self.e2,
            "e1" => &mut self.e1,
            "e0" => &mut self.e0,
            "f4" => &mut self.f4,
            "f3" => &mut self.f3,
            "f2" => &mut self.f2,
            "f1" => &mut self.f1,
            "f0" => &mut self.f0,
            "g6" => &mut self.g6,
            "g5" => &mut self.g5,
            "g4" => &mut self.g4,
            "g3" => &mut self.g3,
            "g2" => &mut self.g2,
            "g1" => &mut self.g1,
            "g0" => &mut self.g0,
            _ => return None,
        })
    }
}

pub const FIELD_NAMES: [&str; 15] = [
    "e2", "e1", "e0", "f4", "f3", "f2", "f1", "f0", "g6", "g5", "g4", "g3", "g2", "g1", "g0",
];

impl SectionAnsatz {
    /// Reads `x = q t^2 + r t + s`, `y = y3 t^3 + y0` off a section, if it has
    /// that shape.
    pub fn from_section(sec: &SectionQt) -> Option<SectionAnsatz> {
        let (x, y) = (polynomial(&sec.x, 2)?, polynomial(&sec.y, 3)?);
        if !(y.coeff(1).is_zero() && y.coeff(2).is_zero()) {
            return None;
        }
        Some(SectionAnsatz {
            q: x.coeff(2),
            r: x.coeff(1),
            s: x.coeff(0),
            y3: y.coeff(3),
            y0: y.coeff(0),
        })
    }

    pub fn x(&self) -> Poly {
        Poly::new(vec![self.s.clone(), self.r.clone(), self.q.clone()])
    }

    pub fn y(&self) -> Poly {
        Poly::new(vec![self.y0.clone(), Rat::zero(), Rat::zero(), self.y3.clone()])
    }
}

impl BisectionAnsatz {
    /// Reads `x = a t^2 + b t + c`, `y = t sqrt((-s - w) t^2 - s w)` off a
    /// bisection; `s, w` are the roots of `z^2 + d2 z - d0`, so they must be
    /// rational. The smaller root is `s`.
    pub fn from_bisection(b: &Bisection) -> Option<BisectionAnsatz> {
        let x = polynomial(b.x(), 2)?;
        if b.c() != &RatFn::from_poly(Poly::t()) {
            return None;
        }
        let d = b.d();
        if d.degree()? > 2 || !d.coeff(1).is_zero() {
            return None;
        }
        let (sum, prod) = (-d.coeff(2), -d.coeff(0));
        let root = sqrt_exact(&(&sum * &sum - &prod * int(4)))?;
        let two = int(2);
        Some(BisectionAnsatz {
            a: x.coeff(2),
            b: x.coeff(1),
            c: x.coeff(0),
            s: (&sum - &root) / &two,
            w: (&sum + &root) / &two,
        })
    }

    pub fn x(&self) -> Poly {
        Poly::new(vec![self.c.clone(), self.b.clone(), self.a.clone()])
    }

    /// `(-s - w) t^2 - s w`.
    pub fn radicand(&self) -> Poly {
        Poly::new(vec![-(&self.s * &self.w), Rat::zero(), -(&self.s + &self.w)])
    }
}

fn polynomial(f: &RatFn, max_degree: usize) -> Option<Poly> {
    let p = f.is_polynomial().then(|| f.num().clone())?;
    (p.degree().unwrap_or(0) <= max_degree).then_some(p)
}

/// Coefficients of `t^6, t^5, ..., t^1` in `RHS(x) - y^2`.
pub fn section_residuals(g: &GenericSurfaceParams, a: &SectionAnsatz) -> [Rat; 6] {
    let y = a.y();
    let r = &g.rhs(&a.x()) - &(&y * &y);
    std::array::from_fn(|i| r.coeff(6 - i))
}

/// The `t^0` coefficient, `g0 + f0 s + e0 s^2 + s^3 - y0^2`.
pub fn section_constant_residual(g: &GenericSurfaceParams, a: &SectionAnsatz) -> Rat {
    let y = a.y();
    (&g.rhs(&a.x()) - &(&y * &y)).coeff(0)
}

/// Coefficients of `t^6, ..., t^0` in `RHS(x) - t^2 ((-s - w) t^2 - s w)`.
pub fn bisection_residuals(g: &GenericSurfaceParams, a: &BisectionAnsatz) -> [Rat; 7] {
    let t2 = Poly::monomial(int(1), 2);
    let r = &g.rhs(&a.x()) - &(&t2 * &a.radicand());
    std::array::from_fn(|i| r.coeff(6 - i))
}

/// Output of the closed-form parameter formulas.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolvedParameters {
    #[serde(with = "rat_text")]
    pub a: Rat,
    #[serde(with = "rat_text")]
    pub y3: Rat,
    #[serde(with = "rat_text")]
    pub g6: Rat,
    #[serde(with = "rat_text")]
    pub f4: Rat,
    #[serde(with = "rat_text")]
    pub e2: Rat,
}

fn checked_div(num: Rat, den: Rat, formula: &'static str) -> Result<Rat> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator { formula });
    }
    Ok(num / den)
}

/// The closed forms for `a`, `y3`, `g6`, `f4`, `e2` in terms of
/// `(s, w, b, v, u, l, q)`. `a` is solved first since `f4` and `e2` use it.
pub fn solve_parameters(s: &Rat, w: &Rat, b: &Rat, v: &Rat, u: &Rat, l: &Rat, q: &Rat) -> Result<SolvedParameters> {
    let n = |k: i64| int(k);
    let a_num = -(b * b * b * s - n(3) * b * b * s * v - n(2) * b * u * s * w + b * s * w + n(3) * b * s * v * v
        + b * w * w
        + n(2) * u * s * w * v
        - s * w * v
        - s * v * v * v
        - w * w * v);
    let a = checked_div(a_num, n(2) * s * w * (b - v), "a")?;
    let y3 = checked_div(s * w + s * b * b + w * w, n(2) * w * w * l, "y3")?;
    let (s2, s3, w2, w3) = (s * s, s * s * s, w * w, w * w * w);
    let (b2, b4, u2, u3) = (b * b, b * b * b * b, u * u, u * u * u);
    let g6_num = &b4 * u * &s3 - &b4 * u * &s2 * w - n(2) * &b2 * &u2 * &s3 * w
        + n(4) * &b2 * &u2 * &s2 * &w2
        + n(2) * &b2 * u * &s2 * &w2
        - n(2) * &b2 * u * s * &w3
        - n(4) * &u3 * &s2 * &w3
        - n(2) * &u2 * &s3 * &w2
        - n(2) * &u2 * &s2 * &w3
        - u * &s3 * &w2
        + u * &s2 * &w3
        + n(4) * &s2 * &w3 * &y3 * &y3
        + n(4) * &u2 * s * &w3 * w
        + u * s * &w3 * w
        - u * &w3 * &w2;
    let g6 = checked_div(g6_num, n(4) * &s2 * &w3, "g6")?;
    let f4_num = -(-(&a * q * &w2) - &a * u * &w2 - &a * s * w - &a * &w2 - &b2 * s + n(2) * b * s * v
        - q * u * &w2
        + u * s * w
        - u * &w2
        - s * w
        - s * v * v
        - &w2);
    let f4 = checked_div(f4_num, w2.clone(), "f4")?;
    let e2_num = -(&a * &s2 - &a * s * w + q * &s2 - q * s * w + u * &s2 - u * s * w + &s2 - s * w);
    let e2 = checked_div(e2_num, s * (s - w), "e2")?;
    Ok(SolvedParameters { a, y3, g6, f4, e2 })
}

/// A quadratic ansatz whose residual coefficients enter a linear system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ansatz {
    Section(SectionAnsatz),
    Bisection(BisectionAnsatz),
}

impl Ansatz {
    /// `RHS(x) - y^2` as a polynomial in `t`.
    pub fn residual_poly(&self, g: &GenericSurfaceParams) -> Poly {
        match self {
            Ansatz::Section(a) => {
                let y = a.y();
                &g.rhs(&a.x()) - &(&y * &y)
            }
            Ansatz::Bisection(a) => {
                let t2 = Poly::monomial(int(1), 2);
                &g.rhs(&a.x()) - &(&t2 * &a.radicand())
            }
        }
    }
}

/// Affine equations `[t^k] residual(params) = 0` over a chosen set of
/// unknown coefficients; everything else is held at the values in `known`.
pub struct ResidualSystem<'a> {
    pub known: GenericSurfaceParams,
    pub unknowns: &'a [&'a str],
    /// Each ansatz with the powers of `t` whose coefficients enter the system.
    pub equations: Vec<(Ansatz, Vec<usize>)>,
}

impl ResidualSystem<'_> {
    fn residuals(&self, p: &GenericSurfaceParams) -> Vec<Rat> {
        let mut out = Vec::new();
        for (a, degrees) in &self.equations {
            let r = a.residual_poly(p);
            out.extend(degrees.iter().map(|&k| r.coeff(k)));
        }
        out
    }

    fn with(&self, values: &[Rat]) -> GenericSurfaceParams {
        let mut p = self.known.clone();
        for (name, v) in self.unknowns.iter().zip(values) {
            *p.field_mut(name).expect("known field name") = v.clone();
        }
        p
    }

    /// Solves for the unknowns; residuals are linear in the surface
    /// coefficients, so the columns come from unit perturbations.
    pub fn solve(&self) -> Result<GenericSurfaceParams> {
        let n = self.unknowns.len();
        let zero = vec![Rat::zero(); n];
        let base = self.residuals(&self.with(&zero));
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let mut e = zero.clone();
            e[j] = int(1);
            let r = self.residuals(&self.with(&e));
            cols.push(r.iter().zip(&base).map(|(x, b)| x - b).collect::<Vec<_>>());
        }
        let rows: Vec<Vec<Rat>> = (0..base.len()).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
        let rhs: Vec<Rat> = base.iter().map(|b| -b).collect();
        match solve(&rows, &rhs, n) {
            LinearSolution::Unique(x) => Ok(self.with(&x)),
            LinearSolution::Underdetermined { free, .. } => Err(Error::InvalidParams(format!(
                "coefficients {:?} are not determined by the residuals",
                free.iter().map(|&j| self.unknowns[j]).collect::<Vec<_>>()
            ))),
            LinearSolution::Inconsistent(bad) => Err(Error::InvalidParams(format!(
                "residual system is inconsistent ({} conflicting equations)",
                bad.len()
            ))),
        }
    }
}

/// Shorthand for a residual polynomial's display, used in reports.
pub fn residual_poly(residuals: &[Rat]) -> RatFn {
    let n = residuals.len();
    RatFn::from_poly(Poly::new((0..n).map(|k| residuals[n - 1 - k].clone()).collect()))
}
