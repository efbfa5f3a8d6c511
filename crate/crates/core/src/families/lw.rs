//! The family in `(l, w, b, u)` whose bisection runs over the conic
//! `X^2 = (-l^2 w - w) T^2 - l^2 w^2`, its fixed member `H`, and the
//! two-bisection surface `jump2`.

use num_traits::Zero;

use super::formula::{env, eval_poly};
use super::{get, param, Claim, Family, FamilySpec, FnFamily, ParamSpec, Params};
use crate::constraints::{Ansatz, GenericSurfaceParams, ResidualSystem, SectionAnsatz};
use crate::error::{Error, Result};
use crate::exactmath::rat::{frac, int};
use crate::exactmath::{Poly, Rat};
use crate::weierstrass::SurfaceQt;

const LW: &[ParamSpec] = &[
    param("l", "3", "square root of the ratio of the roots at t = 0"),
    param("w", "-1", "x-coordinate of the second section at t = 0"),
    param("b", "1", "t-coefficient of the bisection"),
    param("u", "1", "t^2-coefficient of the second section"),
];

const NONE: &[ParamSpec] = &[];

pub(super) fn register(out: &mut Vec<Box<dyn Family>>) {
    out.push(Box::new(FnFamily {
        name: "lw",
        summary: "two sections and a bisection over X^2 = (-l^2 w - w)T^2 - l^2 w^2",
        params: LW,
        build: |p| lw(p, false),
    }));
    out.push(Box::new(FnFamily {
        name: "lw.printed",
        summary: "lw with the t^4 coefficients of f and g as originally displayed",
        params: LW,
        build: |p| lw(p, true),
    }));
    out.push(Box::new(FnFamily {
        name: "H",
        summary: "the member of lw at (l, w, b, u) = (3, -1, 1, 1), as a literal",
        params: NONE,
        build: h_family,
    }));
    out.push(Box::new(FnFamily {
        name: "jump2",
        summary: "two bisections sharing the radicand 2t^2 + 1",
        params: NONE,
        build: |_| jump2(false),
    }));
    out.push(Box::new(FnFamily {
        name: "jump2.printed",
        summary: "jump2 with the radicand printed as 2t + 1",
        params: NONE,
        build: |_| jump2(true),
    }));
}

const E: &str = "(-(1/2)*b^2*l^4 + b^2*l^2 - 3*u*l^2*w - (1/2)*l^4*w - (1/2)*l^2*w + w)/(l^2*w)*t^2 \
                 - b*(l^2 + 2)*t - w*(l^2 + 1)";
const F: &str = "((1/4)*(-l^2 + 1)*b^4*l^4 + (u*l^4 - (2*u - (1/2))*l^2 + (1/2))*b^2*l^2*w \
                 + ((3*u^2 + u - (1/4))*l^4 + (u + (1/4))*l^6 - (2*u - (1/4))*l^2 + (1/4))*w^2)/(l^4*w^2)*t^4 \
                 + (-b^3*l^2 + 2*b*u*l^4*w + 4*b*u*l^2*w + b*l^4*w - b*w)/(l^2*w)*t^3 \
                 + (b^2*l^4 + 2*u*l^4*w + 2*u*l^2*w + l^4*w - w)/l^2*t^2 + 2*b*w*(l^2 + 1)*t + l^2*w^2";
const G: &str = "(1/4)/w^2*(l^2*(b^4*(u + 1) - 2*b^2*u^2*w + 2*b^2*w - 2*u^2*w^2 + w^2 - u*w^2) \
                 + (4*b^2*u^2*w - b^4*u + 2*b^2*u*w + 2*b^2*w - 4*u^3*w^2 - 2*u^2*w^2 + u*w^2 + 2*w^2) \
                 + (4*u^2*w^2 + u*w^2 - 2*b^2*u*w + w^2)/l^2 - u*w^2/l^4)*t^6 \
                 + (b^3*u*l^2 - b*u^2*l^4*w - 2*b*u^2*l^2*w - b*u*l^4*w + b*u*w)/(l^2*w)*t^5 \
                 + ((1/4)*b^4*l^4*(l^2 - 1) - (u*l^4 + (1/2)*l^2 - (1/2))*b^2*l^2*w \
                 + w^2*(-u^2*l^4*(l^2 - 1) - u*l^2*(l^4 + 1) - (1/4)*(l^6 + l^4 + l^2 - 1)))/(l^4*w)*t^4 \
                 + (b^3*l^2 - 2*b*u*l^4*w - 2*b*u*l^2*w - b*l^4*w + b*w)/l^2*t^3 \
                 + (1/2)*(-b^2*l^2*w - 2*b^2*w - 2*u*l^2*w^2 - l^2*w^2 + w^2)*t^2 - b*l^2*w^2*t";
const Y: &str = "(b^2*l^2 + l^2*w + w)/(2*l*w)*t^3";
const S1: &str = "(b^2*l^4 - b^2*l^2 + 2*u*l^2*w + l^4*w - w)/(2*l^2*w)*t^2 + (b*l^2 + b)*t + l^2*w";
const S2: &str = "u*t^2 + w";
const ALPHA: &str = "(-b^2*l^2 + 2*l^2*u*w - l^2*w - w)/(2*l^2*w)";

fn lw(p: &Params, printed: bool) -> Result<FamilySpec> {
    let (l, w, b, u) = (get(p, "l"), get(p, "w"), get(p, "b"), get(p, "u"));
    if l.is_zero() || w.is_zero() {
        return Err(Error::InvalidParams("l and w must be nonzero".into()));
    }
    let e = env(&[("l", &l), ("w", &w), ("b", &b), ("u", &u)]);
    let (s1, s2, y) = (eval_poly(S1, &e, "S1")?, eval_poly(S2, &e, "S2")?, eval_poly(Y, &e, "y")?);
    let mut surface = SurfaceQt::new(eval_poly(E, &e, "e")?, eval_poly(F, &e, "f")?, eval_poly(G, &e, "g")?)?;
    let name = if printed { "lw.printed" } else { "lw" };
    if !printed {
        let ansatz = |x: &Poly| {
            Ansatz::Section(SectionAnsatz {
                q: x.coeff(2),
                r: x.coeff(1),
                s: x.coeff(0),
                y3: y.coeff(3),
                y0: Rat::zero(),
            })
        };
        let all = vec![6, 5, 4, 3, 2, 1];
        let sys = ResidualSystem {
            known: GenericSurfaceParams::from_surface(&surface)?,
            unknowns: &["f4", "g4"],
            equations: vec![(ansatz(&s1), all.clone()), (ansatz(&s2), all)],
        };
        surface = sys.solve()?.to_surface()?;
    }
    let a = eval_poly(ALPHA, &e, "alpha")?.coeff(0);
    let bis_x = Poly::new(vec![Rat::zero(), b.clone(), a]);
    let ca = eval_poly("-l^2*w - w", &e, "A")?.coeff(0);
    let cb = eval_poly("-l^2*w^2", &e, "B")?.coeff(0);
    let d = Poly::new(vec![cb.clone(), Rat::zero(), ca.clone()]);
    let spec = FamilySpec::new(name, p, surface)
        .section("S1", s1, y.clone())
        .section("S2", s2, y)
        .bisection("B", bis_x, Poly::t(), d)?
        .conic(ca, cb)?;
    Ok(if printed {
        spec.note("t^4 coefficients of f and g as displayed; the sections do not lie on this surface")
    } else {
        spec.note("t^4 coefficients of f and g solved from the two sections")
    })
}

/// `(a2, a4, a6)` of `H` at `t = -4..4`.
pub(crate) const H_ROWS: [[(i64, i64); 3]; 9] = [
    [(-146, 9), (-55367, 81), (287332, 27)],
    [(7, 2), (-469, 1), (12145, 4)],
    [(130, 9), (-15107, 81), (10916, 27)],
    [(299, 18), (-1343, 81), (1, 36)],
    [(10, 1), (9, 1), (0, 1)],
    [(-97, 18), (583, 81), (1, 36)],
    [(-266, 9), (19741, 81), (-13240, 27)],
    [(-125, 2), (1133, 1), (-22223, 4)],
    [(-938, 9), (262297, 81), (-766388, 27)],
];

fn h_family(_: &Params) -> Result<FamilySpec> {
    let e = Params::new();
    let p = |src: &str| eval_poly(src, &e, "H");
    let surface = SurfaceQt::new(
        p("-79/18*t^2 - 11*t + 10")?,
        p("502/81*t^4 + 287/9*t^3 - 179/9*t^2 - 20*t + 9")?,
        p("-901/324*t^6 - 188/9*t^5 + 835/81*t^4 + 269/9*t^3 - 15/2*t^2 - 9*t")?,
    )?;
    let s1 = p("13/9*t^2 + 10*t - 9")?;
    let s2 = p("t^2 - 1")?;
    // (b, u) of the lw member: the t-coefficient of S1 is b (l^2 + 1), the
    // t^2-coefficient of S2 is u
    let (l, w) = (int(3), int(-1));
    let b = s1.coeff(1) / (&l * &l + int(1));
    let u = s2.coeff(2);
    let recovered: Params = [("l", l), ("w", w), ("b", b.clone()), ("u", u.clone())]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    let mut spec = FamilySpec::new("H", &e, surface)
        .section("S1", s1, p("1/6*t^3")?)
        .section("S2", s2, p("1/6*t^3")?)
        .bisection("B", p("17/18*t^2 + t")?, Poly::t(), p("10*t^2 - 9")?)?
        .conic(int(10), int(-9))?
        .claim(Claim::SurfaceEquals { family: "lw".into(), params: recovered })
        .claim(Claim::DiscriminantDegree { degree: 12 })
        .claim(Claim::SquarefreeDiscriminant)
        .reference_ranks(-4, &[4, 3, 2, 4, 0, 3, 3, 3, 3]);
    spec.notes.push(format!("recovered lw parameters (b, u) = ({b}, {u})"));
    for (i, row) in H_ROWS.iter().enumerate() {
        spec = spec.claim(Claim::FiberEquals {
            t: int(i as i64 - 4),
            coeffs: row.map(|(n, d)| frac(n, d)),
        });
    }
    Ok(spec)
}

fn jump2(printed: bool) -> Result<FamilySpec> {
    let e = Params::new();
    let p = |src: &str| eval_poly(src, &e, "jump2");
    let surface = SurfaceQt::new(
        Poly::constant(int(2)),
        p("-t^4 + 2*t^3 + t^2 - 2*t - 1")?,
        p("4*t^3 + 3*t^2 - 4*t - 2")?,
    )?;
    let (name, d) = if printed { ("jump2.printed", p("2*t + 1")?) } else { ("jump2", p("2*t^2 + 1")?) };
    let spec = FamilySpec::new(name, &e, surface)
        .bisection("B1", p("-t^2 + t + 1")?, Poly::t(), d.clone())?
        .bisection("B2", p("t^2 - t - 1")?, Poly::t(), d)?;
    if printed {
        Ok(spec.note("radicand 2t + 1 as printed"))
    } else {
        spec.conic(int(2), int(1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, check_family};
    use crate::weierstrass::bisection_on_surface;

    fn named(items: &[(&str, Rat)]) -> Params {
        items.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn lw_member_is_h() {
        let h = build("H", &Params::new()).unwrap();
        let lw = build("lw", &named(&[("l", int(3)), ("w", int(-1)), ("b", int(1)), ("u", int(1))])).unwrap();
        assert_eq!(h.surface, lw.surface);
        assert_eq!(h.conic, lw.conic);
        for (a, b) in h.claimed_sections.iter().zip(&lw.claimed_sections) {
            assert_eq!(a.item, b.item);
        }
        assert_eq!(h.claimed_bisections[0].item, lw.claimed_bisections[0].item);
        let report = check_family(&h);
        assert!(report.all_passed, "{report:#?}");
    }

    #[test]
    fn printed_lw_differs_only_in_degree_four() {
        let p = named(&[("l", int(3)), ("w", int(-1)), ("b", int(1)), ("u", int(1))]);
        let a = build("lw", &p).unwrap().surface;
        let b = build("lw.printed", &p).unwrap().surface;
        assert_eq!(a.a2, b.a2);
        for k in [0, 1, 2, 3, 5, 6] {
            assert_eq!(a.a4.coeff(k), b.a4.coeff(k));
            assert_eq!(a.a6.coeff(k), b.a6.coeff(k));
        }
        assert_eq!(b.a4.coeff(4), frac(851, 162));
        assert_eq!(a.a4.coeff(4), frac(502, 81));
    }

    #[test]
    fn lw_general_members_verify() {
        for (l, w, b, u) in [(2, 1, 0, 0), (3, 2, -1, 5), (-2, 3, 2, -1)] {
            let spec = build("lw", &named(&[("l", int(l)), ("w", int(w)), ("b", int(b)), ("u", int(u))])).unwrap();
            let report = check_family(&spec);
            assert!(report.all_passed, "{:?}: {report:#?}", (l, w, b, u));
        }
    }

    #[test]
    fn h_conic() {
        let h = build("H", &Params::new()).unwrap();
        let c = h.conic.unwrap();
        assert_eq!((c.a.clone(), c.b.clone()), (int(10), int(-9)));
    }

    #[test]
    fn jump2_bisections_share_radicand() {
        let spec = build("jump2", &Params::new()).unwrap();
        let [b1, b2] = [&spec.claimed_bisections[0].item, &spec.claimed_bisections[1].item];
        assert_eq!(b1.d(), b2.d());
        assert!(bisection_on_surface(&spec.surface, b1).holds);
        assert!(bisection_on_surface(&spec.surface, b2).holds);
        let c = spec.surface.specialize(&int(2)).unwrap();
        for b in [b1, b2] {
            let pts = b.points_at(&int(2));
            assert_eq!(pts.len(), 2);
            assert!(pts.iter().all(|p| c.contains(p)));
        }
        let printed = build("jump2.printed", &Params::new()).unwrap();
        let r = bisection_on_surface(&printed.surface, &printed.claimed_bisections[0].item);
        assert!(!r.holds);
    }
}
