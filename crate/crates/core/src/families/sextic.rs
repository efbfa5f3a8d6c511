//! Families with a quadratic section pair and a quadratic bisection on the
//! general `deg (e, f, g) = (2, 4, 6)` shape: the parametric family `D_ext`
//! in `(s, w, b, v, u, l, q)`, the one-parameter-in-`u` family whose `c4`
//! and discriminant do not depend on `u`, and fixed members of both.

use num_traits::Zero;
use serde::Serialize;

use super::formula::{env, eval_poly, eval_rat};
use super::{get, param, Claim, Family, FamilySpec, FnFamily, ParamSpec, Params};
use crate::constraints::{
    solve_parameters, Ansatz, BisectionAnsatz, GenericSurfaceParams, ResidualSystem, SectionAnsatz, SolvedParameters,
};
use crate::error::{Error, Result};
use crate::exactmath::rat::{frac, int, rat_text};
use crate::exactmath::{Poly, Rat};
use crate::weierstrass::{SectionQt, SurfaceQt};

const DEXT: &[ParamSpec] = &[
    param("s", "-4", "x-coordinate of the second section at t = 0; must equal l^2 w"),
    param("w", "-1", "x-coordinate of the first section at t = 0"),
    param("b", "1", "t-coefficient of the bisection"),
    param("v", "0", "t-coefficient of the first section"),
    param("u", "-5/12", "t^2-coefficient of the first section"),
    param("l", "2", "square root of s / w"),
    ParamSpec {
        name: "q",
        default: None,
        doc: "t^2-coefficient of the second section; derived from the other parameters when absent",
    },
];

const UFAM: &[ParamSpec] = &[param("b", "1", "t-coefficient of the bisection"), param("u", "0", "free parameter")];

const UFAM_PRINTED: &[ParamSpec] = &[
    param("b", "1", "t-coefficient of the bisection"),
    param("u", "0", "free parameter"),
    param("v", "1", "t-coefficient of the first section as printed"),
];

const NONE: &[ParamSpec] = &[];

pub(super) fn register(out: &mut Vec<Box<dyn Family>>) {
    out.push(Box::new(FnFamily {
        name: "D_ext",
        summary: "three points on a (2, 4, 6) surface; e2, f4, g6, a, y3 from closed forms, the rest solved",
        params: DEXT,
        build: |p| d_ext(p, false),
    }));
    out.push(Box::new(FnFamily {
        name: "D_ext.printed",
        summary: "D_ext assembled from the originally displayed coefficient polynomials",
        params: DEXT,
        build: |p| d_ext(p, true),
    }));
    out.push(Box::new(FnFamily {
        name: "ufam",
        summary: "family in (b, u) whose c4 and discriminant do not depend on u",
        params: UFAM,
        build: |p| ufam(p, false),
    }));
    out.push(Box::new(FnFamily {
        name: "ufam.printed",
        summary: "ufam with its sections and bisection as originally printed",
        params: UFAM_PRINTED,
        build: |p| ufam(p, true),
    }));
    out.push(Box::new(FnFamily {
        name: "ext_sample",
        summary: "the D_ext member at (s, w, b, v, u, l) = (-4, -1, 1, 0, -5/12, 2), as a literal",
        params: NONE,
        build: ext_sample,
    }));
    out.push(Box::new(FnFamily {
        name: "quad_d",
        summary: "even-in-t surface with bisection over X^2 = 5T^2 - 4, the n = t^2 cover of quad_f",
        params: NONE,
        build: quad_d,
    }));
    out.push(Box::new(FnFamily {
        name: "quad_f",
        summary: "surface in n with three bisections that split under n = t^2",
        params: NONE,
        build: quad_f,
    }));
}

/// Everything `D_ext` derives from its parameters before assembling the
/// surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DExtCoefficients {
    pub solved: SolvedParameters,
    #[serde(with = "rat_text")]
    pub q: Rat,
    #[serde(with = "rat_text")]
    pub r: Rat,
}

const Q_PRINTED: &str =
    "(b^2*s^2 - b^2*s*w - 2*b*s^2*v + 2*b*s*w*v + s^2*w + s^2*v^2 - s*w*v^2 - w^3)/(2*s*w^2)";
const SIDE_QUADRATIC: &str = "v^2 - 2*v*b + 2*b^2 + (2*l^2*w + 2*w)/l^2";

/// Validates the parameters and evaluates the closed forms.
pub fn d_ext_coefficients(p: &Params) -> Result<DExtCoefficients> {
    let (s, w, b, v, u, l) = (get(p, "s"), get(p, "w"), get(p, "b"), get(p, "v"), get(p, "u"), get(p, "l"));
    if s.is_zero() || w.is_zero() || s == w {
        return Err(Error::InvalidParams("s and w must be nonzero and distinct".into()));
    }
    if l.is_zero() || s != &l * &l * &w {
        return Err(Error::InvalidParams("s must equal l^2 w with l nonzero".into()));
    }
    let e = env(&[("s", &s), ("w", &w), ("b", &b), ("v", &v), ("u", &u), ("l", &l)]);
    let side = eval_rat(SIDE_QUADRATIC, &e, "side condition")?;
    if !(v.is_zero() || v == &b * int(2) || side.is_zero()) {
        return Err(Error::SideCondition(format!(
            "need v = 0, or v = 2b, or {SIDE_QUADRATIC} = 0 (it is {side})"
        )));
    }
    let q = match p.get("q") {
        Some(q) => q.clone(),
        None => eval_rat(Q_PRINTED, &e, "q")? + &u,
    };
    let r = eval_rat("(b*(s + w) - s*v)/w", &e, "r")?;
    let solved = solve_parameters(&s, &w, &b, &v, &u, &l, &q)?;
    Ok(DExtCoefficients { solved, q, r })
}

fn d_ext(p: &Params, printed: bool) -> Result<FamilySpec> {
    let k = d_ext_coefficients(p)?;
    let (s, w, b, v, u) = (get(p, "s"), get(p, "w"), get(p, "b"), get(p, "v"), get(p, "u"));
    let sp = &k.solved;
    let mut e = env(&[("s", &s), ("w", &w), ("b", &b), ("v", &v), ("u", &u), ("q", &k.q), ("r", &k.r)]);
    for (name, val) in [("a", &sp.a), ("y3", &sp.y3), ("g6", &sp.g6), ("f4", &sp.f4), ("e2", &sp.e2)] {
        e.insert(name.into(), val.clone());
    }
    let y = Poly::monomial(sp.y3.clone(), 3);
    let d = eval_poly("-(s + w)*t^2 - s*w", &e, "d")?;
    let mut params = p.clone();
    params.insert("q".into(), k.q.clone());
    if printed {
        let surface = SurfaceQt::new(
            eval_poly("e2*t^2 + (-b*(s + 2*w) + v*(s - w))/w*t - s - w", &e, "alpha2")?,
            eval_poly(
                "f4*t^4 + (2*a*b*s*w + 2*a*b*w^2 + 2*a*w^2*v + b^3*s - b^2*s*v + 2*b*s*w - b*s*v^2 + 2*b*w^2 \
                 + s*v^3 + 2*w^2*v)/w^2*t^3 + (-e2*w^2 + a*s*w + b^2*s + b^2*w + 2*b*w*v + s*w - s*v^2)/w*t^2 \
                 + (2*b*s + 2*b*w)*t + s*w",
                &e,
                "alpha1",
            )?,
            eval_poly(
                "g6*t^6 + (-a^2*s*w*v - a^2*w^2*v - a*b^2*s*v + 2*a*b*s*v^2 - 2*a*s*w*v - a*s*v^3 - 2*a*w^2*v \
                 - b^2*s*v + 2*b*s*v^2 - s*w*v - s*v^3 - w^2*v)/w^2*t^5 + ((-s*w^2 - w^3)*(a + 1)^2 \
                 + s*v*(b - v)^2*b + b*(2*v*(a + 1)*w^2) + b*(s*w*b*(a + 1)))/w^2*t^4 \
                 + (e2*b*w^2 - a*b*s*w - b^2*s*v - b^2*w*v - b*s*w + b*s*v^2)/w*t^3 \
                 + (-(a + 1)*s*w - b^2*(s + w))*t^2 - b*s*w*t",
                &e,
                "a6",
            )?,
        )?;
        let s2 = format!("{Q_PRINTED}*t^2 + (b*(s + w) - s*v)/w*t + s");
        return FamilySpec::new("D_ext.printed", &params, surface)
            .section("S1", eval_poly("v*t + w", &e, "S1")?, y.clone())
            .section("S2", eval_poly(&s2, &e, "S2")?, y)
            .bisection("B1", eval_poly("a*t^2 + b*t", &e, "B1")?, Poly::t(), d)?
            .conic(-(&s + &w), -(&s * &w))
            .map(|f| f.note("coefficients and sections exactly as displayed; residuals show where they fail"));
    }

    let s1 = SectionAnsatz { q: u.clone(), r: v.clone(), s: w.clone(), y3: sp.y3.clone(), y0: Rat::zero() };
    let s2 = SectionAnsatz { q: k.q.clone(), r: k.r.clone(), s: s.clone(), y3: sp.y3.clone(), y0: Rat::zero() };
    let bis = BisectionAnsatz { a: sp.a.clone(), b: b.clone(), c: Rat::zero(), s: s.clone(), w: w.clone() };
    let known = GenericSurfaceParams {
        e2: sp.e2.clone(),
        e0: -(&s + &w),
        f4: sp.f4.clone(),
        f0: &s * &w,
        g6: sp.g6.clone(),
        ..Default::default()
    };
    let sys = ResidualSystem {
        known,
        unknowns: &["e1", "f3", "f2", "f1", "g5", "g4", "g3", "g2", "g1"],
        equations: vec![
            (Ansatz::Section(s1.clone()), vec![5, 4, 3, 2, 1]),
            (Ansatz::Section(s2.clone()), vec![5, 4, 3, 2, 1]),
            (Ansatz::Bisection(bis), vec![5, 4, 3, 2, 1]),
        ],
    };
    let g = sys.solve()?;
    let surface = g.to_surface()?;
    let neg = SectionQt::from_polys(s2.x(), -&s2.y());
    FamilySpec::new("D_ext", &params, surface)
        .section("S1", s1.x(), s1.y())
        .section("S2", s2.x(), s2.y())
        .bisection("B1", eval_poly("a*t^2 + b*t", &e, "B1")?, Poly::t(), d)?
        .conic(-(&s + &w), -(&s * &w))
        .map(|f| f.claim(Claim::SectionOnSurface { label: "S2 with y negated".into(), section: neg }))
}

const UFAM_A2: &str = "(b^2 - 3*u - 9/4)*t^2 - 6*b*t + 5";
const UFAM_A4: &str = "(-3/4*b^4 - 2*b^2*u + 3/8*b^2 + 3*u^2 + 9/2*u + 45/64)*t^4 + (b^3 + 12*b*u + 15/4*b)*t^3 \
                       + (4*b^2 - 10*u - 15/4)*t^2 - 10*b*t + 4";
const UFAM_A6: &str = "(3/4*b^4*u + b^4 + b^2*u^2 - 3/8*b^2*u - 5/2*b^2 - u^3 - 9/4*u^2 - 45/64*u + 25/16)*t^6 \
                       + (-b^3*u - 6*b*u^2 - 15/4*b*u)*t^5 \
                       + (-3/4*b^4 - 4*b^2*u + 3/8*b^2 + 5*u^2 + 15/4*u + 45/64)*t^4 \
                       + (b^3 + 10*b*u + 15/4*b)*t^3 + (3*b^2 - 4*u - 3/2)*t^2 - 4*b*t";

/// The `c4` and discriminant stated for the `u`-family.
pub(crate) const UFAM_C4: &str = "189/4*t^4 - 180*t^2 + 208";
pub(crate) const UFAM_DELTA: &str =
    "-624375/1024*t^12 - 206145/64*t^10 + 99279/16*t^8 - 2690*t^6 + 252*t^4 - 2880*t^2 + 2304";

fn stated_invariants() -> Result<[Claim; 2]> {
    let e = Params::new();
    Ok([
        Claim::C4Equals { poly: eval_poly(UFAM_C4, &e, "c4")? },
        Claim::DiscriminantEquals { poly: eval_poly(UFAM_DELTA, &e, "delta")? },
    ])
}

fn ufam(p: &Params, printed: bool) -> Result<FamilySpec> {
    let (b, u) = (get(p, "b"), get(p, "u"));
    let mut e = env(&[("b", &b), ("u", &u)]);
    let surface = SurfaceQt::new(eval_poly(UFAM_A2, &e, "a2")?, eval_poly(UFAM_A4, &e, "a4")?, eval_poly(UFAM_A6, &e, "a6")?)?;
    let y = eval_poly("(5/4 - b^2)*t^3", &e, "y")?;
    let d = Poly::from_fracs(&[(-4, 1), (0, 1), (5, 1)]);
    let mut spec = if printed {
        e.insert("v".into(), get(p, "v"));
        FamilySpec::new("ufam.printed", p, surface)
            .section("S1", eval_poly("v*t - 1", &e, "S1")?, y.clone())
            .section("S2", eval_poly("(-3/2*b^2 + 3*b*v - 3/2*v^2 + 15/8)*t^2 + (5*b - 4*v)*t - 4", &e, "S2")?, y)
            .bisection("B", eval_poly("(1/2*b^2 - b*v + 1/2*v^2 - 5/8)*t^2 + b*t", &e, "B")?, Poly::t(), d)?
            .note("sections as printed; the bisection's y-coordinate is taken as t sqrt(5t^2 - 4)")
    } else {
        FamilySpec::new("ufam", p, surface)
            .section("S1", eval_poly("u*t^2 - 1", &e, "S1")?, y.clone())
            .section("S2", eval_poly("(15/8 - 3/2*b^2 + u)*t^2 + 5*b*t - 4", &e, "S2")?, y)
            .bisection("B", eval_poly("(b^2/2 + u - 5/8)*t^2 + b*t", &e, "B")?, Poly::t(), d)?
    };
    spec = spec.conic(int(5), int(-4))?;
    spec = spec.claim(Claim::ParameterIndependence { symbol: "u".into(), samples: 14 });
    for c in stated_invariants()? {
        spec = spec.claim(c);
    }
    Ok(spec)
}

fn literal(name: &str, a2: &str, a4: &str, a6: &str) -> Result<FamilySpec> {
    let e = Params::new();
    let surface = SurfaceQt::new(eval_poly(a2, &e, "a2")?, eval_poly(a4, &e, "a4")?, eval_poly(a6, &e, "a6")?)?;
    Ok(FamilySpec::new(name, &e, surface))
}

fn named(items: &[(&str, Rat)]) -> Params {
    items.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn p(src: &str) -> Poly {
    eval_poly(src, &Params::new(), "literal").expect("literal polynomial")
}

fn ext_sample(_: &Params) -> Result<FamilySpec> {
    Ok(literal(
        "ext_sample",
        "-6*t + 5",
        "-37/192*t^4 - 1/4*t^3 + 53/12*t^2 - 10*t + 4",
        "377/6912*t^6 + 15/16*t^5 + 749/576*t^4 + 7/12*t^3 + 19/6*t^2 - 4*t",
    )?
    .section("S1", p("-1/24*t^2 + 5*t - 4"), p("1/4*t^3"))
    .section("S2", p("-5/12*t^2 - 1"), p("1/4*t^3"))
    .bisection("B", p("-13/24*t^2 + t"), Poly::t(), p("5*t^2 - 4"))?
    .conic(int(5), int(-4))?
    .claim(Claim::SurfaceEquals {
        family: "D_ext".into(),
        params: named(&[
            ("s", int(-4)),
            ("w", int(-1)),
            ("b", int(1)),
            ("v", int(0)),
            ("u", frac(-5, 12)),
            ("l", int(2)),
        ]),
    })
    .claim(Claim::SurfaceEquals { family: "ufam".into(), params: named(&[("b", int(1)), ("u", frac(-5, 12))]) }))
}

fn quad_d(_: &Params) -> Result<FamilySpec> {
    let mut spec = literal(
        "quad_d",
        "-9/4*t^2 + 5",
        "45/64*t^4 - 15/4*t^2 + 4",
        "25/16*t^6 + 45/64*t^4 - 3/2*t^2",
    )?
    .section("S1", p("15/8*t^2 - 4"), p("5/4*t^3"))
    .section("S2", Poly::constant(int(-1)), p("5/4*t^3"))
    .bisection("B", p("-5/8*t^2"), Poly::t(), p("5*t^2 - 4"))?
    .conic(int(5), int(-4))?
    .claim(Claim::SurfaceEquals { family: "ufam".into(), params: named(&[("b", int(0)), ("u", int(0))]) })
    .claim(Claim::BaseChangeOf { family: "quad_f".into(), params: Params::new(), phi: Poly::monomial(int(1), 2) });
    for c in stated_invariants()? {
        spec = spec.claim(c);
    }
    Ok(spec)
}

fn quad_f(_: &Params) -> Result<FamilySpec> {
    literal("quad_f", "-9/4*t + 5", "45/64*t^2 - 15/4*t + 4", "25/16*t^3 + 45/64*t^2 - 3/2*t")?
        .bisection("B1", p("15/8*t - 4"), p("5/4*t"), Poly::t())?
        .bisection("B2", Poly::constant(int(-1)), p("5/4*t"), Poly::t())?
        .bisection("B3", p("-5/8*t"), Poly::one(), p("5*t^2 - 4*t"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, check_family};
    use crate::weierstrass::BaseChanged;

    fn example_params() -> Params {
        named(&[("s", int(-4)), ("w", int(-1)), ("b", int(1)), ("v", int(0)), ("u", frac(-5, 12)), ("l", int(2))])
    }

    #[test]
    fn d_ext_reproduces_the_sample_member() {
        let spec = build("D_ext", &example_params()).unwrap();
        let sample = build("ext_sample", &Params::new()).unwrap();
        assert_eq!(spec.surface, sample.surface);
        assert_eq!(spec.params["q"], frac(-1, 24));
        let k = d_ext_coefficients(&spec.params).unwrap();
        assert_eq!(k.solved.a, frac(-13, 24));
        let xs: Vec<_> = spec.claimed_sections.iter().map(|s| s.item.x.clone()).collect();
        let ys: Vec<_> = sample.claimed_sections.iter().map(|s| s.item.x.clone()).collect();
        assert_eq!(xs[0], ys[1]);
        assert_eq!(xs[1], ys[0]);
        assert!(check_family(&spec).all_passed);
        assert!(check_family(&sample).all_passed);
    }

    #[test]
    fn d_ext_rejections() {
        let mut p = example_params();
        p.insert("s".into(), int(4));
        assert!(matches!(build("D_ext", &p), Err(Error::InvalidParams(_))));
        let mut p = example_params();
        p.insert("v".into(), int(1));
        assert!(matches!(build("D_ext", &p), Err(Error::SideCondition(_))));
        let mut p = example_params();
        p.insert("b".into(), int(0));
        assert!(matches!(build("D_ext", &p), Err(Error::ZeroDenominator { formula: "a" })));
    }

    #[test]
    fn d_ext_at_v_equal_2b() {
        let p = named(&[("s", int(-9)), ("w", int(-1)), ("b", int(2)), ("v", int(4)), ("u", frac(1, 3)), ("l", int(3))]);
        let spec = build("D_ext", &p).unwrap();
        let report = check_family(&spec);
        assert!(report.all_passed, "{report:#?}");
    }

    #[test]
    fn printed_d_ext_is_reported_not_hidden() {
        let spec = build("D_ext.printed", &example_params()).unwrap();
        let report = check_family(&spec);
        assert!(!report.all_passed);
        assert!(report.checks.iter().any(|c| c.residual.is_some()));
    }

    #[test]
    fn ufam_sections_and_u_independence() {
        for (b, u) in [(int(1), frac(-5, 12)), (int(0), int(0)), (frac(1, 2), int(3))] {
            let spec = build("ufam", &named(&[("b", b.clone()), ("u", u)])).unwrap();
            let report = check_family(&spec);
            for c in &report.checks {
                if c.name.starts_with("section") || c.name.starts_with("bisection") || c.name.starts_with("independent") {
                    assert_eq!(c.status, crate::families::CheckStatus::Pass, "{c:?}");
                }
            }
        }
        let at0 = build("ufam", &named(&[("b", int(0)), ("u", int(7))])).unwrap();
        assert!(check_family(&at0).all_passed);
    }

    #[test]
    fn quad_d_is_double_cover_of_quad_f() {
        let d = build("quad_d", &Params::new()).unwrap();
        let f = build("quad_f", &Params::new()).unwrap();
        let sq = Poly::monomial(int(1), 2);
        assert_eq!(f.surface.base_change(&sq).unwrap(), d.surface);
        let split: Vec<bool> = f
            .claimed_bisections
            .iter()
            .map(|b| matches!(b.item.base_change(&sq).unwrap(), BaseChanged::Split(_)))
            .collect();
        assert_eq!(split, vec![true, true, false]);
        assert!(check_family(&d).all_passed);
        assert!(check_family(&f).all_passed);
    }
}
