//! The cubic-plus-sextic families: Walsh's `x(x - a)(x - b) + t^k`, the
//! three-point family `D` in `(s, w, v)`, its `s = -w` specialization `L`,
//! and the variant of `L` with `v` as the base variable.

use num_traits::Zero;

use super::formula::{env, eval_poly};
use super::{get, param, Claim, Family, FamilySpec, FnFamily, ParamSpec, Params};
use crate::error::{Error, Result};
use crate::exactmath::rat::int;
use crate::exactmath::{Poly, Rat};
use crate::weierstrass::SurfaceQt;

const WALSH: &[ParamSpec] = &[
    param("a", "1", "root of the cubic at t = 0"),
    param("b", "2", "root of the cubic at t = 0"),
    param("exponent", "2", "power of t added to the cubic, 2 or 6"),
];

const SWV: &[ParamSpec] = &[
    param("s", "4", "x-coordinate of the first section at t = 0"),
    param("w", "-1", "x-coordinate of the second section at t = 0"),
    param("v", "1", "slope of both sections"),
];

const VW: &[ParamSpec] = &[param("v", "1", "slope of both sections"), param("w", "-1", "half the gap between the sections")];

const LV: &[ParamSpec] = &[param("t", "2", "fixed value of t; the base variable is v")];

pub(super) fn register(out: &mut Vec<Box<dyn Family>>) {
    out.push(Box::new(FnFamily {
        name: "walsh",
        summary: "y^2 = x(x - a)(x - b) + t^k with k = 2 or 6",
        params: WALSH,
        build: walsh,
    }));
    out.push(Box::new(FnFamily {
        name: "D",
        summary: "y^2 = (x - vt)(x - vt - s)(x - vt - w) + t^6 with two sections and a bisection",
        params: SWV,
        build: |p| d_family(p, false),
    }));
    out.push(Box::new(FnFamily {
        name: "D.printed",
        summary: "D with the coefficients as originally displayed (sections fail for v != 0)",
        params: SWV,
        build: |p| d_family(p, true),
    }));
    out.push(Box::new(FnFamily {
        name: "L",
        summary: "D restricted to s = -w",
        params: VW,
        build: l_family,
    }));
    out.push(Box::new(FnFamily {
        name: "L_v",
        summary: "L with s = 1, w = t^2 - 1, t fixed and v as the base variable",
        params: LV,
        build: l_v_family,
    }));
}

fn nonzero_distinct(a: &Rat, b: &Rat, what: &str) -> Result<()> {
    if a.is_zero() || b.is_zero() || a == b {
        return Err(Error::InvalidParams(format!("{what} must be nonzero and distinct")));
    }
    Ok(())
}

fn walsh(p: &Params) -> Result<FamilySpec> {
    let (a, b, k) = (get(p, "a"), get(p, "b"), get(p, "exponent"));
    nonzero_distinct(&a, &b, "a and b")?;
    let half: u32 = if k == int(2) {
        1
    } else if k == int(6) {
        3
    } else {
        return Err(Error::InvalidParams("exponent must be 2 or 6".into()));
    };
    let e = env(&[("a", &a), ("b", &b)]);
    let a2 = eval_poly("-(a + b)", &e, "a2")?;
    let a4 = eval_poly("a*b", &e, "a4")?;
    let a6 = Poly::monomial(int(1), 2 * half as usize);
    let y = Poly::monomial(int(1), half as usize);
    let surface = SurfaceQt::new(a2, a4, a6)?;
    let mut spec = FamilySpec::new("walsh", p, surface)
        .section("S1", Poly::constant(a.clone()), y.clone())
        .section("S2", Poly::constant(b.clone()), y)
        .conic(-(&a + &b), -(&a * &b))?;
    if half == 3 {
        spec = spec.bisection(
            "B",
            Poly::monomial(int(-1), 2),
            Poly::t(),
            eval_poly("-(a + b)*t^2 - a*b", &e, "d")?,
        )?;
        let mut base = p.clone();
        base.insert("exponent".into(), int(2));
        spec = spec
            .claim(Claim::BaseChangeOf { family: "walsh".into(), params: base, phi: Poly::monomial(int(1), 3) })
            .claim(Claim::SurfaceEquals {
                family: "D".into(),
                params: [("s", a), ("w", b), ("v", Rat::zero())].into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            });
    }
    Ok(spec)
}

/// `c4` and `c6` of every member of `D`, which do not depend on `v`.
fn d_invariant_claims(s: &Rat, w: &Rat) -> Result<[Claim; 2]> {
    let e = env(&[("s", s), ("w", w)]);
    Ok([
        Claim::C4Equals { poly: eval_poly("16*(s^2 - s*w + w^2)", &e, "c4")? },
        Claim::C6Equals { poly: eval_poly("32*(-27*t^6 + 2*s^3 - 3*s^2*w - 3*s*w^2 + 2*w^3)", &e, "c6")? },
    ])
}

fn d_family(p: &Params, printed: bool) -> Result<FamilySpec> {
    let (s, w, v) = (get(p, "s"), get(p, "w"), get(p, "v"));
    nonzero_distinct(&s, &w, "s and w")?;
    let e = env(&[("s", &s), ("w", &w), ("v", &v)]);
    let a2 = eval_poly("-(3*v*t + s + w)", &e, "a2")?;
    let (a4, a6) = if printed {
        (
            eval_poly("3*v^2*t^2 - 2*v*(s + w)*t + s*w", &e, "a4")?,
            eval_poly("t^6 - v^3*t^3 - v^2*(s + w)*t^2 + s*w*v*t", &e, "a6")?,
        )
    } else {
        (
            eval_poly("3*v^2*t^2 + 2*v*(s + w)*t + s*w", &e, "a4")?,
            eval_poly("t^6 - v^3*t^3 - v^2*(s + w)*t^2 - s*w*v*t", &e, "a6")?,
        )
    };
    let name = if printed { "D.printed" } else { "D" };
    let t3 = Poly::monomial(int(1), 3);
    let mut spec = FamilySpec::new(name, p, SurfaceQt::new(a2, a4, a6)?)
        .section("S1", eval_poly("v*t + s", &e, "S1")?, t3.clone())
        .section("S2", eval_poly("v*t + w", &e, "S2")?, t3)
        .bisection("B", eval_poly("-t^2 + v*t", &e, "B")?, Poly::t(), eval_poly("-(s + w)*t^2 - s*w", &e, "d")?)?
        .conic(-(&s + &w), -(&s * &w))?;
    if printed {
        if !v.is_zero() {
            spec = spec.note("the a4 and a6 printed for this family carry the sections only at v = 0");
        }
        return Ok(spec);
    }
    for c in d_invariant_claims(&s, &w)? {
        spec = spec.claim(c);
    }
    Ok(spec
        .claim(Claim::DiscriminantDegree { degree: 12 })
        .claim(Claim::SquarefreeDiscriminant)
        .claim(Claim::DoubledXConstant {
            section: 0,
            expected: &s * &s * (&s - &w) * (&s - &w) / int(4),
        }))
}

/// Fibers of `L` at `(v, w) = (1, +-1)` for `t = 1..10`.
pub(crate) const L11_ROWS: [[i64; 3]; 10] = [
    [-3, 2, 1],
    [-6, 11, 58],
    [-9, 26, 705],
    [-12, 47, 4036],
    [-15, 74, 15505],
    [-18, 107, 46446],
    [-21, 146, 117313],
    [-24, 191, 261640],
    [-27, 242, 530721],
    [-30, 299, 999010],
];

/// Ranks reported for the fibers above.
pub(crate) const L11_RANKS: [u32; 10] = [1, 3, 4, 3, 4, 3, 4, 5, 5, 4];

fn l_family(p: &Params) -> Result<FamilySpec> {
    let (v, w) = (get(p, "v"), get(p, "w"));
    if w.is_zero() {
        return Err(Error::InvalidParams("w must be nonzero".into()));
    }
    let e = env(&[("v", &v), ("w", &w)]);
    let surface = SurfaceQt::new(
        eval_poly("-3*v*t", &e, "a2")?,
        eval_poly("3*v^2*t^2 - w^2", &e, "a4")?,
        eval_poly("t^6 - v^3*t^3 + w^2*v*t", &e, "a6")?,
    )?;
    let t3 = Poly::monomial(int(1), 3);
    let s = -w.clone();
    let mut spec = FamilySpec::new("L", p, surface)
        .section("S1", eval_poly("v*t - w", &e, "S1")?, t3.clone())
        .section("S2", eval_poly("v*t + w", &e, "S2")?, t3)
        .bisection("B", eval_poly("-t^2 + v*t", &e, "B")?, Poly::t(), eval_poly("w^2", &e, "d")?)?
        .claim(Claim::DiscriminantDegree { degree: 12 });
    for c in d_invariant_claims(&s, &w)? {
        spec = spec.claim(c);
    }
    if v == int(1) && &w * &w == int(1) {
        spec = spec.reference_ranks(1, &L11_RANKS);
        for (i, row) in L11_ROWS.iter().enumerate() {
            spec = spec.claim(Claim::FiberEquals {
                t: int(i as i64 + 1),
                coeffs: row.map(int),
            });
        }
    }
    Ok(spec)
}

fn l_v_family(p: &Params) -> Result<FamilySpec> {
    let t0 = get(p, "t");
    let w = &t0 * &t0 - int(1);
    if w.is_zero() {
        return Err(Error::InvalidParams("t must not be +-1".into()));
    }
    // the polynomial variable plays the role of v
    let e = env(&[("T", &t0), ("w", &w)]);
    let surface = SurfaceQt::new(
        eval_poly("-3*T*t", &e, "a2")?,
        eval_poly("3*T^2*t^2 - w^2", &e, "a4")?,
        eval_poly("T^6 - T^3*t^3 + w^2*T*t", &e, "a6")?,
    )?;
    let y = Poly::constant(&t0 * &t0 * &t0);
    Ok(FamilySpec::new("L_v", p, surface)
        .section("S1", eval_poly("T*t - w", &e, "S1")?, y.clone())
        .section("S2", eval_poly("T*t + w", &e, "S2")?, y)
        .section("B", eval_poly("T*t - T^2", &e, "B")?, Poly::constant(&w * &t0))
        .claim(Claim::Unverifiable {
            statement: "the fiber at v = infinity is reducible".into(),
        })
        .claim(Claim::DiscriminantDegree { degree: 0 })
        .note("the base variable of this surface is v; t is a fixed parameter"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat::frac;
    use crate::families::{build, check_family};
    use crate::weierstrass::section_on_surface;

    fn params(items: &[(&str, Rat)]) -> Params {
        items.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn walsh_sections_and_rejections() {
        let spec = build("walsh", &params(&[("a", int(1)), ("b", int(2))])).unwrap();
        for s in &spec.claimed_sections {
            assert!(section_on_surface(&spec.surface, &s.item).holds);
        }
        assert!(build("walsh", &params(&[("a", int(3)), ("b", int(3))])).is_err());
        assert!(build("walsh", &params(&[("exponent", int(4))])).is_err());
    }

    #[test]
    fn walsh_sextic_is_cubic_base_change() {
        let k2 = build("walsh", &params(&[("a", int(1)), ("b", int(2))])).unwrap();
        let k6 = build("walsh", &params(&[("a", int(1)), ("b", int(2)), ("exponent", int(6))])).unwrap();
        assert_eq!(k2.surface.base_change(&Poly::monomial(int(1), 3)).unwrap(), k6.surface);
        let report = check_family(&k6);
        assert!(report.all_passed, "{report:#?}");
    }

    #[test]
    fn d_sections_at_sample_parameters() {
        let spec = build("D", &params(&[("s", int(4)), ("w", int(-1)), ("v", int(1))])).unwrap();
        let report = check_family(&spec);
        assert!(report.all_passed, "{report:#?}");
        let printed = build("D.printed", &params(&[("s", int(4)), ("w", int(-1)), ("v", int(1))])).unwrap();
        assert!(!check_family(&printed).all_passed);
        let printed0 = build("D.printed", &params(&[("v", int(0))])).unwrap();
        let d0 = build("D", &params(&[("v", int(0))])).unwrap();
        assert_eq!(printed0.surface, d0.surface);
    }

    #[test]
    fn d_at_v0_has_constant_c4() {
        let spec = build("D", &params(&[("s", int(4)), ("w", int(-1)), ("v", int(0))])).unwrap();
        assert_eq!(spec.surface.invariants().c4, Poly::constant(int(336)));
        let delta = spec.surface.discriminant();
        assert_eq!(delta.gcd(&delta.derivative()).unwrap(), Poly::one());
    }

    #[test]
    fn l11_fibers_and_sections() {
        let spec = build("L", &Params::new()).unwrap();
        for (i, row) in L11_ROWS.iter().enumerate() {
            let c = spec.surface.specialize(&int(i as i64 + 1)).unwrap();
            assert_eq!([c.a2, c.a4, c.a6], row.map(int));
        }
        let d = build("D", &params(&[("s", int(1)), ("w", int(-1)), ("v", int(1))])).unwrap();
        assert_eq!(d.surface, spec.surface);
        let report = check_family(&spec);
        assert!(report.all_passed, "{report:#?}");
    }

    #[test]
    fn l11_doubling_at_t1() {
        let spec = build("L", &Params::new()).unwrap();
        let c = spec.surface.specialize(&int(1)).unwrap();
        let s1 = spec.claimed_sections[0].item.at(&int(1));
        let s2 = spec.claimed_sections[1].item.at(&int(1));
        assert_eq!(c.double(&s1).unwrap(), s2);
        assert_ne!(c.neg(&s1), s2);
    }

    #[test]
    fn l_v_sections() {
        let spec = build("L_v", &params(&[("t", frac(3, 2))])).unwrap();
        for s in &spec.claimed_sections {
            assert!(section_on_surface(&spec.surface, &s.item).holds, "{}", s.label);
        }
        assert!(build("L_v", &params(&[("t", int(-1))])).is_err());
    }
}
