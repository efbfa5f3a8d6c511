//! Naive rational point search on an integral model.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use super::certificate::canonical_cmp;
use super::torsion::IntegralModel;
use crate::exactmath::rat::isqrt_exact;
use crate::exactmath::Rat;
use crate::weierstrass::{CurveQ, PointQ};

/// Points with `x = m / e^2` on the integral model, `|m| <= height_limit`,
/// `1 <= e <= sqrt(height_limit)`, mapped back to `c`. One point per
/// `{P, -P}` pair (the one with `y >= 0`), in canonical order.
pub fn point_search(c: &CurveQ, height_limit: u64) -> Vec<PointQ> {
    let model = IntegralModel::of(c);
    let [a2, a4, a6] = model.coeffs();
    let h = height_limit.max(1) as i64;
    let emax = (h as f64).sqrt().floor() as i64;
    let mut out = Vec::new();
    for e in 1..=emax.max(1) {
        let e = BigInt::from(e);
        let e2 = &e * &e;
        let e4 = &e2 * &e2;
        let e6 = &e4 * &e2;
        for m in -h..=h {
            let m = BigInt::from(m);
            if !m.gcd(&e).is_one() {
                continue;
            }
            let v = &m * &m * &m + &a2 * &m * &m * &e2 + &a4 * &m * &e4 + &a6 * &e6;
            if v.is_negative() {
                continue;
            }
            if let Some(k) = isqrt_exact(&v) {
                let x = Rat::new(m.clone(), e2.clone());
                let y = Rat::new(k, &e2 * &e);
                out.push(model.from_model(&PointQ::affine(x, y)));
            }
        }
    }
    out.sort_by(canonical_cmp);
    out.dedup();
    debug_assert!(out.iter().all(|p| c.contains(p)));
    out
}
