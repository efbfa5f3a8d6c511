//! Dense univariate polynomials over Q in the base variable `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rat::{parse_rat, rat_to_string, sqrt_exact, Rat};
use crate::error::{Error, Result};

/// Ascending-degree coefficient vector; no trailing zeros, empty = 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rat::one())
    }

    /// The base variable `t`.
    pub fn t() -> Self {
        Poly::monomial(Rat::one(), 1)
    }

    pub fn constant(c: Rat) -> Self {
        Poly::new(vec![c])
    }

    pub fn monomial(c: Rat, degree: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); degree + 1];
        coeffs[degree] = c;
        Poly::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Integer coefficients, ascending degree.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(coeffs.iter().map(|&c| super::rat::int(c)).collect())
    }

    /// `(numerator, denominator)` pairs, ascending degree.
    pub fn from_fracs(coeffs: &[(i64, i64)]) -> Self {
        Poly::new(coeffs.iter().map(|&(n, d)| super::rat::frac(n, d)).collect())
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rat> {
        self.coeffs
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Monic associate; zero stays zero.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Horner evaluation.
    pub fn eval(&self, t0: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * t0 + c)
    }

    /// `self(phi(t))`.
    pub fn compose(&self, phi: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * phi) + &Poly::constant(c.clone()))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division: `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Domain("polynomial division by zero".into()))?;
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rat::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    /// Exact quotient; errors when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Domain("inexact polynomial division".into()))
        }
    }

    /// Monic gcd. Rejects the (0, 0) pair.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::Domain("gcd(0, 0) is undefined".into()));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// Square-free check over Q (gcd with the derivative is constant).
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self
                .gcd(&self.derivative())
                .map(|g| g.is_constant())
                .unwrap_or(false),
        }
    }

    /// Yun's square-free factorisation of a non-constant polynomial:
    /// returns `(c, [f1, f2, ...])` with `self = c * f1 * f2^2 * f3^3 ...`,
    /// each `fi` monic and square-free.
    pub fn squarefree_factors(&self) -> (Rat, Vec<Poly>) {
        let c = self.leading();
        if self.is_constant() {
            return (c, Vec::new());
        }
        let f = self.monic();
        let df = f.derivative();
        let mut a = f.gcd(&df).expect("nonzero");
        let mut b = f.div_exact(&a).expect("divides");
        let mut cpoly = df.div_exact(&a).expect("divides");
        let mut d = &cpoly - &b.derivative();
        let mut out = Vec::new();
        while !b.is_constant() {
            a = b.gcd(&d).expect("nonzero");
            out.push(a.clone());
            b = b.div_exact(&a).expect("divides");
            cpoly = d.div_exact(&a).expect("divides");
            d = &cpoly - &b.derivative();
        }
        while out.last().is_some_and(Poly::is_constant) {
            out.pop();
        }
        (c, out)
    }

    /// Exact square root in Q[t], if `self` is a perfect square.
    pub fn sqrt_exact(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (c, factors) = self.squarefree_factors();
        let rc = sqrt_exact(&c)?;
        let mut root = Poly::constant(rc);
        for (i, f) in factors.iter().enumerate() {
            let mult = i + 1;
            if mult % 2 == 1 && !f.is_constant() {
                return None;
            }
            root = &root * &f.pow((mult / 2) as u32);
        }
        Some(root)
    }

    /// Content-style normalisation helper: lcm of coefficient denominators.
    pub fn denominator_lcm(&self) -> num_bigint::BigInt {
        super::rat::lcm_denominators(self.coeffs.iter())
    }

    /// Parses the JSON-array text form, e.g. `["0","-1/2","0","1"]`.
    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Poly> {
        items
            .iter()
            .map(|s| parse_rat(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(Poly::new)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rat_to_string).collect()
    }

    /// Human-readable form in a chosen variable name, highest degree first.
    pub fn display_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match k {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{k}"),
            };
            if k == 0 {
                out.push_str(&rat_to_string(&mag));
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{}*{}", rat_to_string(&mag), mono));
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("t"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl From<Rat> for Poly {
    fn from(c: Rat) -> Self {
        Poly::constant(c)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &'a Poly) -> Poly { (&self).$m(rhs) }
        }
        impl<'a> $tr<Poly> for &'a Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let items = Vec::<String>::deserialize(d)?;
        Poly::from_strings(&items).map_err(serde::de::Error::custom)
    }
}
