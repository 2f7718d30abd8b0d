//! Rational expressions in several named variables, evaluated at exact points.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("parse error in {0:?} at byte {1}")]
    Parse(String, usize),
    #[error("unknown variable {0:?}")]
    Unknown(String),
    #[error("division by zero")]
    Pole,
}

pub type Env = BTreeMap<String, BigRational>;

struct Parser<'a> {
    s: &'a [u8],
    src: &'a str,
    i: usize,
    env: Option<&'a Env>,
}

// Without an environment the parser only checks syntax and variable names.
impl<'a> Parser<'a> {
    fn err(&self) -> EvalError {
        EvalError::Parse(self.src.to_string(), self.i)
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.s.get(self.i) == Some(&c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<BigRational, EvalError> {
        let neg = self.eat(b'-');
        if !neg {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        if neg {
            acc = -acc;
        }
        loop {
            if self.eat(b'+') {
                acc += self.term()?;
            } else if self.eat(b'-') {
                acc -= self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<BigRational, EvalError> {
        let mut acc = self.power()?;
        loop {
            if self.eat(b'*') {
                acc *= self.power()?;
            } else if self.eat(b'/') {
                let d = self.power()?;
                if d.is_zero() {
                    if self.env.is_none() {
                        continue;
                    }
                    return Err(EvalError::Pole);
                }
                acc /= d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn power(&mut self) -> Result<BigRational, EvalError> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = if self.eat(b'(') {
            let neg = self.eat(b'-');
            let e = self.integer()?;
            if !self.eat(b')') {
                return Err(self.err());
            }
            if neg {
                -e
            } else {
                e
            }
        } else {
            let neg = self.eat(b'-');
            let e = self.integer()?;
            if neg {
                -e
            } else {
                e
            }
        };
        if self.env.is_none() {
            return Ok(BigRational::one());
        }
        if e < 0 && base.is_zero() {
            return Err(EvalError::Pole);
        }
        let b = if e < 0 { base.recip() } else { base };
        let mut r = BigRational::one();
        for _ in 0..e.unsigned_abs() {
            r *= &b;
        }
        Ok(r)
    }

    fn integer(&mut self) -> Result<i64, EvalError> {
        self.ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        self.src[start..self.i].parse().map_err(|_| self.err())
    }

    fn atom(&mut self) -> Result<BigRational, EvalError> {
        self.ws();
        if self.eat(b'(') {
            let v = self.expr()?;
            if !self.eat(b')') {
                return Err(self.err());
            }
            return Ok(v);
        }
        let start = self.i;
        match self.s.get(self.i) {
            Some(c) if c.is_ascii_digit() => {
                while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                    self.i += 1;
                }
                let n: BigInt = self.src[start..self.i].parse().map_err(|_| self.err())?;
                Ok(BigRational::from_integer(n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                while self.i < self.s.len() && (self.s[self.i].is_ascii_alphanumeric() || self.s[self.i] == b'_') {
                    self.i += 1;
                }
                let name = &self.src[start..self.i];
                match self.env {
                    Some(env) => env.get(name).cloned().ok_or_else(|| EvalError::Unknown(name.into())),
                    None => Ok(BigRational::one()),
                }
            }
            _ => Err(self.err()),
        }
    }
}

/// Evaluates `src` with the variables bound in `env`.
pub fn eval(src: &str, env: &Env) -> Result<BigRational, EvalError> {
    let mut p = Parser { s: src.as_bytes(), src, i: 0, env: Some(env) };
    let v = p.expr()?;
    p.ws();
    if p.i != p.s.len() {
        return Err(p.err());
    }
    Ok(v)
}

/// Checks syntax and that every variable is one of `vars`.
pub fn check(src: &str, vars: &[&str]) -> Result<(), EvalError> {
    let mut p = Parser { s: src.as_bytes(), src, i: 0, env: None };
    p.expr()?;
    p.ws();
    if p.i != p.s.len() {
        return Err(p.err());
    }
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let name = &src[start..i];
            if !vars.contains(&name) {
                return Err(EvalError::Unknown(name.into()));
            }
        } else {
            i += 1;
        }
    }
    Ok(())
}

pub fn env(pairs: &[(&str, &BigRational)]) -> Env {
    pairs.iter().map(|(k, v)| (k.to_string(), (*v).clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use k3fib_exact::{rat, rat_frac};

    #[test]
    fn evaluation() {
        let e = env(&[("x", &rat(2)), ("y", &rat_frac(1, 3)), ("t", &rat(-1))]);
        assert_eq!(eval("-x*(x - 1)/y", &e), Ok(rat(-6)));
        assert_eq!(eval("x^2 + t^(-3) - 1/2", &e), Ok(rat_frac(5, 2)));
        assert_eq!(eval("y/(x - 2)", &e), Err(EvalError::Pole));
        assert_eq!(eval("z", &e), Err(EvalError::Unknown("z".into())));
        assert!(matches!(eval("x +", &e), Err(EvalError::Parse(..))));
        assert_eq!(check("t - y*t/(y + x^2 - x)", &["x", "y", "t"]), Ok(()));
        assert_eq!(check("X + 1/X", &["x"]), Err(EvalError::Unknown("X".into())));
    }
}
