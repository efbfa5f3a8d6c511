//! Canonical heights by exact doubling on an integral model.
//!
//! Normalization: `h_hat(P) = 1/2 * lim h_x(2^n P) / 4^n`, where `h_x` is the
//! logarithmic height of the x-coordinate on the integral model.
//!
//! Error bound. Write `x = A/Z` in lowest terms and `M = max(|A|, |Z|)`. The
//! doubled x-coordinate is `F/G` with
//!
//! ```text
//! F = A^4 - b4 A^2 Z^2 - 2 b6 A Z^3 - b8 Z^4
//! G = Z (4 A^3 + b2 A^2 Z + 2 b4 A Z^2 + b6 Z^3)
//! ```
//!
//! Upper side: `|F|, |G| <= C_up' M^4` with
//! `C_up' = max(1 + |b4| + 2|b6| + |b8|, 4 + |b2| + 2|b4| + |b6|)`.
//! Lower side: there are integer forms `U1, V1, U2, V2` of degree 3 and an
//! integer `R` with `U1 F + V1 G = R Z^7` and `U2 F + V2 G = R A^7` (solved
//! below as an exact linear system). Hence `g = gcd(F, G)` divides `R`, and
//! `|R| M^7 <= K M^3 max(|F|, |G|)` with `K` the largest coefficient
//! abs-sum of `(U_i, V_i)`. Together,
//! `|h_x(2P) - 4 h_x(P)| <= C = max(log C_up', log K)`, and telescoping gives
//! `|h_hat(P) - h_x(2^n P) / (2 * 4^n)| <= C / (6 * 4^n)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::interval::Interval;
use super::torsion::IntegralModel;
use crate::error::{Error, Result};
use crate::exactmath::linalg::{solve, LinearSolution};
use crate::exactmath::rat::ln_abs;
use crate::exactmath::Rat;
use crate::weierstrass::{CurveQ, PointQ};

/// Default cap on the size of doubled coordinates, in decimal digits.
pub const DEFAULT_DIGIT_BUDGET: u64 = 100_000;

/// `value +- error_bound` encloses the true canonical height; `truncated` is
/// set when the digit budget stopped doubling before the requested error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeightValue {
    pub value: f64,
    #[serde(rename = "error")]
    pub error_bound: f64,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub truncated: bool,
}

impl HeightValue {
    pub fn exact_zero() -> HeightValue {
        HeightValue {
            value: 0.0,
            error_bound: 0.0,
            truncated: false,
        }
    }

    pub fn from_interval(i: Interval, truncated: bool) -> HeightValue {
        HeightValue {
            value: i.mid(),
            error_bound: i.radius(),
            truncated,
        }
    }

    pub fn interval(&self) -> Interval {
        Interval::around(self.value, self.error_bound)
    }
}

/// Per-curve data shared by every height computed on it.
#[derive(Clone, Debug)]
pub struct HeightContext {
    curve: CurveQ,
    model: IntegralModel,
    b: [BigInt; 4],
    resultant: BigInt,
    constant: f64,
    digit_budget: u64,
}

impl HeightContext {
    pub fn new(c: &CurveQ) -> HeightContext {
        let model = IntegralModel::of(c);
        let [a2, a4, a6] = model.coeffs();
        let b2: BigInt = &a2 * 4u32;
        let b4: BigInt = &a4 * 2u32;
        let b6: BigInt = &a6 * 4u32;
        let b8: BigInt = &a2 * &a6 * 4u32 - &a4 * &a4;
        let up_f: BigInt = BigInt::one() + b4.abs() + b6.abs() * 2u32 + b8.abs();
        let up_g: BigInt = BigInt::from(4) + b2.abs() + b4.abs() * 2u32 + b6.abs();
        let c_up = ln_abs(&up_f.max(up_g));
        let (resultant, k) = resultant_identities(&b2, &b4, &b6, &b8);
        let constant = c_up.max(ln_abs(&k)).max(0.0);
        HeightContext {
            curve: c.clone(),
            model,
            b: [b2, b4, b6, b8],
            resultant,
            constant,
            digit_budget: DEFAULT_DIGIT_BUDGET,
        }
    }

    pub fn with_digit_budget(mut self, digits: u64) -> HeightContext {
        self.digit_budget = digits.max(1);
        self
    }

    pub fn curve(&self) -> &CurveQ {
        &self.curve
    }

    /// The constant `C` bounding `|h_x(2P) - 4 h_x(P)|` on the integral model.
    pub fn difference_bound(&self) -> f64 {
        self.constant
    }

    /// Doublings needed for `C / (6 * 4^n) <= target`.
    pub fn steps_for(&self, target_error: f64) -> u32 {
        let mut n = 0;
        while self.constant / (6.0 * 4f64.powi(n as i32)) > target_error && n < 64 {
            n += 1;
        }
        n
    }

    pub fn height(&self, p: &PointQ, target_error: f64) -> Result<HeightValue> {
        if !(target_error > 0.0) {
            return Err(Error::Domain(format!("target error must be positive, got {target_error}")));
        }
        if !self.curve.contains(p) {
            return Err(Error::OffCurve);
        }
        let PointQ::Affine { x, .. } = self.model.to_model(p) else {
            return Ok(HeightValue::exact_zero());
        };
        let steps = self.steps_for(target_error);
        let (mut a, mut z) = (x.numer().clone(), x.denom().clone());
        let budget_bits = (self.digit_budget as f64 * std::f64::consts::LOG2_10) as u64;
        let mut done = 0;
        let mut truncated = false;
        while done < steps {
            match self.double_x(&a, &z) {
                None => return Ok(HeightValue::exact_zero()),
                Some((f, g)) => {
                    if f.bits().max(g.bits()) > budget_bits {
                        truncated = true;
                        break;
                    }
                    a = f;
                    z = g;
                    done += 1;
                }
            }
        }
        let h = ln_abs(&a).max(ln_abs(&z)).max(0.0);
        let scale = 2.0 * 4f64.powi(done as i32);
        let value = h / scale;
        let err = self.constant / (3.0 * scale) + value * 1e-12;
        Ok(HeightValue::from_interval(Interval::around(value, err), truncated))
    }

    /// `x(2P)` as a reduced fraction; `None` when `2P = O`.
    fn double_x(&self, a: &BigInt, z: &BigInt) -> Option<(BigInt, BigInt)> {
        let [b2, b4, b6, b8] = &self.b;
        let a2 = a * a;
        let z2 = z * z;
        let az = a * z;
        let f: BigInt = &a2 * &a2 - b4 * &a2 * &z2 - b6 * &az * &z2 * 2u32 - b8 * &z2 * &z2;
        let g: BigInt = z * (&a2 * a * 4u32 + b2 * &a2 * z + b4 * &az * z * 2u32 + b6 * &z2 * z);
        if g.is_zero() {
            return None;
        }
        // gcd(F, G) divides R
        let r = &self.resultant;
        let common = f.mod_floor(r).gcd(&g.mod_floor(r)).gcd(r);
        let (mut f, mut g) = (f / &common, g / &common);
        if g.is_negative() {
            f = -f;
            g = -g;
        }
        Some((f, g))
    }
}

/// Solves `U1 F + V1 G = R Z^7`, `U2 F + V2 G = R A^7` for integer forms and
/// returns `(R, K)`.
fn resultant_identities(b2: &BigInt, b4: &BigInt, b6: &BigInt, b8: &BigInt) -> (BigInt, BigInt) {
    let r = |b: &BigInt| Rat::from_integer(b.clone());
    // coefficients by power of A (the rest is a power of Z)
    let f = [-r(b8), -r(b6) * Rat::from_integer(2.into()), -r(b4), Rat::zero(), Rat::one()];
    let g = [r(b6), r(b4) * Rat::from_integer(2.into()), r(b2), Rat::from_integer(4.into()), Rat::zero()];
    let mut rows = vec![vec![Rat::zero(); 8]; 8];
    for i in 0..4 {
        for j in 0..5 {
            rows[i + j][i] += &f[j];
            rows[i + j][4 + i] += &g[j];
        }
    }
    let mut sols = Vec::new();
    for target in [0usize, 7] {
        let mut rhs = vec![Rat::zero(); 8];
        rhs[target] = Rat::one();
        match solve(&rows, &rhs, 8) {
            LinearSolution::Unique(x) => sols.push(x),
            other => panic!("resultant system is singular on a smooth curve: {other:?}"),
        }
    }
    let big_r = crate::exactmath::rat::lcm_denominators(sols.iter().flatten());
    let k = sols
        .iter()
        .map(|s| {
            s.iter()
                .map(|c| (c * Rat::from_integer(big_r.clone())).to_integer().abs())
                .fold(BigInt::zero(), |acc, x| acc + x)
        })
        .max()
        .expect("two identities");
    (big_r, k)
}

/// One-shot canonical height.
pub fn canonical_height(c: &CurveQ, p: &PointQ, target_error: f64) -> Result<HeightValue> {
    HeightContext::new(c).height(p, target_error)
}

/// `<p, q> = (h(p + q) - h(p) - h(q)) / 2` with propagated error.
pub fn height_pairing(c: &CurveQ, p: &PointQ, q: &PointQ, target_error: f64) -> Result<HeightValue> {
    pairing_in(&HeightContext::new(c), p, q, target_error)
}

/// The arguments are put in canonical order first, so the float result is
/// symmetric bit for bit.
pub fn pairing_in(ctx: &HeightContext, p: &PointQ, q: &PointQ, target_error: f64) -> Result<HeightValue> {
    let (p, q) = match super::certificate::canonical_cmp(p, q) {
        std::cmp::Ordering::Greater => (q, p),
        _ => (p, q),
    };
    let hp = ctx.height(p, target_error)?;
    let hq = ctx.height(q, target_error)?;
    let sum = ctx.curve().add(p, q)?;
    let hs = ctx.height(&sum, target_error)?;
    Ok(combine_pairing(&hs, &hp, &hq))
}

pub(crate) fn combine_pairing(hs: &HeightValue, hp: &HeightValue, hq: &HeightValue) -> HeightValue {
    let i = (hs.interval() - hp.interval() - hq.interval()).scale(0.5);
    HeightValue::from_interval(i, hs.truncated || hp.truncated || hq.truncated)
}
