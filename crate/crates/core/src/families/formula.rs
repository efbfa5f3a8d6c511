//! A tiny exact evaluator for the closed-form displays the constructors are
//! written in: `+ - * / ^`, parentheses, integer literals, parameter names,
//! and the surface variable `t`. Values are rational functions of `t`.

use super::Params;
use crate::error::{Error, Result};
use crate::exactmath::{Poly, Rat, RatFn};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    env: &'a Params,
    name: &'static str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at byte {} of formula {:?}", self.pos, self.name))
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFn> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFn> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            acc = if c == b'*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs).map_err(|_| Error::ZeroDenominator { formula: self.name })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFn> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-&self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFn> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.integer()?;
            let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<u64> {
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("expected an integer"))
    }

    fn atom(&mut self) -> Result<RatFn> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let n: num_bigint::BigInt = text.parse().map_err(|_| self.err("bad number"))?;
                Ok(RatFn::constant(Rat::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                    self.pos += 1;
                }
                let ident = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if ident == "t" {
                    return Ok(RatFn::from_poly(Poly::t()));
                }
                self.env
                    .get(ident)
                    .map(|v| RatFn::constant(v.clone()))
                    .ok_or_else(|| self.err(&format!("unknown symbol {ident}")))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

/// Evaluates `src` with parameters from `env`; `name` labels errors.
pub(crate) fn eval(src: &str, env: &Params, name: &'static str) -> Result<RatFn> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, env, name };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// As [`eval`], requiring a polynomial result.
pub(crate) fn eval_poly(src: &str, env: &Params, name: &'static str) -> Result<Poly> {
    let v = eval(src, env, name)?;
    if !v.is_polynomial() {
        return Err(Error::InvalidParams(format!("formula {name} is not a polynomial in t")));
    }
    Ok(v.num().clone())
}

/// As [`eval`], requiring a constant result.
pub(crate) fn eval_rat(src: &str, env: &Params, name: &'static str) -> Result<Rat> {
    let v = eval_poly(src, env, name)?;
    if v.degree().unwrap_or(0) > 0 {
        return Err(Error::InvalidParams(format!("formula {name} depends on t")));
    }
    Ok(v.coeff(0))
}

/// Parameter map from `(name, value)` pairs.
pub(crate) fn env(items: &[(&str, &Rat)]) -> Params {
    items.iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect()
}
