//! Checks against independently known values: published curve data,
//! hand-derived fibers and Pell solutions.

use num_bigint::BigInt;
use ranksurf::conics::{pell_fundamental, PellIter, PellSolution};
use ranksurf::exactmath::rat::int;
use ranksurf::families::{build, parse_params, Params};
use ranksurf::heights::{canonical_height, independence_certificate, is_torsion, point_search, Verdict};
use ranksurf::weierstrass::{CurveQ, PointQ};

fn pt(x: i64, y: i64) -> PointQ {
    PointQ::affine(int(x), int(y))
}

// 37a1, y^2 + y = x^3 - x, moved to y^2 = x^3 - 16x + 16 by (4x, 4(2y + 1)).
// LMFDB lists regulator 0.0511114082399688 in the doubled normalization.
#[test]
fn height_of_the_37a_generator() {
    let c = CurveQ::from_ints(0, -16, 16).unwrap();
    let h = canonical_height(&c, &pt(0, 4), 1e-6).unwrap();
    assert!(!h.truncated);
    assert!(h.interval().contains(0.0511114082399688 / 2.0), "{h:?}");
}

// 389a1, y^2 + y = x^3 + x^2 - 2x, regulator 0.152460177943144 (LMFDB);
// a rank-two Gram determinant scales by 1/4 under the halved normalization.
#[test]
fn regulator_of_389a() {
    let c = CurveQ::from_ints(4, -32, 16).unwrap();
    let cert = independence_certificate(&c, &[pt(0, 4), pt(4, 4)], 1e-6).unwrap();
    assert_eq!(cert.rank_lower_bound, 2);
    assert_eq!(cert.verdict, Verdict::Certified);
    assert!(cert.determinant.interval().contains(0.152460177943144 / 4.0), "{:?}", cert.determinant);
}

#[test]
fn mordell_curve_point() {
    let c = CurveQ::from_ints(0, 0, -2).unwrap();
    let found = point_search(&c, 30);
    assert!(found.contains(&pt(3, 5)) || found.contains(&pt(3, -5)));
    assert!(!is_torsion(&c, &pt(3, 5)).unwrap());
}

#[test]
fn two_torsion_on_the_zero_fiber() {
    let h = build("H", &Params::new()).unwrap();
    let e0 = h.surface.specialize(&int(0)).unwrap();
    assert_eq!(e0.to_string(), "y^2 = x^3 + 10x^2 + 9x");
    for x in [0, -1, -9] {
        assert!(is_torsion(&e0, &pt(x, 0)).unwrap());
    }
}

// X^2 - 10 T^2 = -9 starting at (1, 1): the T-coordinates 1, 25, 949 are
// fibers of H, and the second is tabulated with its full equation.
#[test]
fn pell_fibers_of_h() {
    let d = BigInt::from(10);
    assert_eq!(pell_fundamental(&d).unwrap(), PellSolution::new(19, 6));
    let ts: Vec<BigInt> = PellIter::new(&d, PellSolution::new(1, 1), 50)
        .unwrap()
        .take(3)
        .map(|s| s.t)
        .collect();
    assert_eq!(ts, [1, 25, 949].map(BigInt::from));
    let h = build("H", &Params::new()).unwrap();
    let e = h.surface.specialize(&int(25)).unwrap();
    assert_eq!(e.to_string(), "y^2 = x^3 - 54145/18x^2 + 235406479/81x - 94870014925/108");
    for b in &h.claimed_bisections {
        assert!(!b.item.points_at(&int(25)).is_empty(), "{} does not split at t = 25", b.label);
    }
}

#[test]
fn l_fibers_have_the_tabulated_equations() {
    let l = build("L", &parse_params("v=1,w=1").unwrap()).unwrap();
    let first = l.surface.specialize(&int(1)).unwrap();
    assert_eq!(first, CurveQ::from_ints(-3, 2, 1).unwrap());
    let last = l.surface.specialize(&int(10)).unwrap();
    assert_eq!(last, CurveQ::from_ints(-30, 299, 999010).unwrap());
}
