//! Closed float intervals with outward rounding slack.
//!
//! Every operation widens its result by a relative `2^-40` plus the smallest
//! positive normal float, which dominates the rounding error of a handful of
//! IEEE operations on the magnitudes seen here.

use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

pub const SLACK: f64 = 1.0 / (1u64 << 40) as f64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Interval {
        assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        Interval { lo, hi }.widen()
    }

    pub fn point(x: f64) -> Interval {
        Interval::new(x, x)
    }

    /// `[center - radius, center + radius]`.
    pub fn around(center: f64, radius: f64) -> Interval {
        Interval::new(center - radius.abs(), center + radius.abs())
    }

    fn widen(self) -> Interval {
        Interval {
            lo: self.lo - self.lo.abs() * SLACK - f64::MIN_POSITIVE,
            hi: self.hi + self.hi.abs() * SLACK + f64::MIN_POSITIVE,
        }
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn radius(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0.0
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn scale(&self, k: f64) -> Interval {
        let (a, b) = (self.lo * k, self.hi * k);
        Interval::new(a.min(b), a.max(b))
    }

    /// Quotient; `None` when the divisor contains zero.
    pub fn checked_div(&self, d: &Interval) -> Option<Interval> {
        if d.contains_zero() {
            return None;
        }
        let inv = Interval::new(1.0 / d.hi, 1.0 / d.lo);
        Some(*self * inv)
    }
}

impl Add for Interval {
    type Output = Interval;
    fn add(self, o: Interval) -> Interval {
        Interval::new(self.lo + o.lo, self.hi + o.hi)
    }
}

impl Sub for Interval {
    type Output = Interval;
    fn sub(self, o: Interval) -> Interval {
        Interval::new(self.lo - o.hi, self.hi - o.lo)
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval {
            lo: -self.hi,
            hi: -self.lo,
        }
    }
}

impl Mul for Interval {
    type Output = Interval;
    fn mul(self, o: Interval) -> Interval {
        let c = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval::new(lo, hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_encloses_exact_results() {
        let a = Interval::point(0.1);
        let b = Interval::point(0.2);
        assert!((a + b).contains(0.30000000000000004));
        assert!((a + b).contains(0.3));
        let p = Interval::new(-1.0, 2.0) * Interval::new(-3.0, 0.5);
        assert!(p.lo <= -6.0 && p.hi >= 3.0);
        assert!(Interval::around(1.0, 0.5).is_positive());
        assert!(Interval::around(1.0, 1.5).contains_zero());
        assert!(Interval::point(1.0).checked_div(&Interval::new(-1.0, 1.0)).is_none());
        assert!(Interval::point(1.0).checked_div(&Interval::point(3.0)).unwrap().contains(1.0 / 3.0));
    }
}
