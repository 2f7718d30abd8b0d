//! Expressions in one variable: integers, the variable, `+ - * / ^` and
//! parentheses, evaluated exactly in ℚ(t).

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::EllipticError;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    var: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> EllipticError {
        EllipticError::Parse(format!("{what} at offset {} in {:?}", self.pos, String::from_utf8_lossy(self.s)))
    }

    fn skip(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<RatFunc, EllipticError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc, EllipticError> {
        let mut acc = self.unary()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            self.pos += 1;
            let rhs = self.unary()?;
            if c == b'/' && rhs.is_zero() {
                return Err(self.err("division by zero"));
            }
            acc = if c == b'*' { &acc * &rhs } else { &acc / &rhs };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc, EllipticError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RatFunc, EllipticError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let e = self.integer()?;
        if paren {
            if self.peek() != Some(b')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
        }
        let e: i32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
        if neg && base.is_zero() {
            return Err(self.err("negative power of zero"));
        }
        Ok(base.pow(if neg { -e } else { e }))
    }

    fn integer(&mut self) -> Result<BigInt, EllipticError> {
        self.skip();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap())
    }

    fn atom(&mut self) -> Result<RatFunc, EllipticError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => Ok(RatFunc::constant(BigRational::from_integer(self.integer()?))),
            Some(_) if self.s[self.pos..].starts_with(self.var.as_bytes()) => {
                self.pos += self.var.len();
                Ok(RatFunc::from(Poly::t()))
            }
            _ => Err(self.err("unexpected input")),
        }
    }
}

/// Parses an expression in the variable `var`.
pub fn parse_ratfunc(s: &str, var: &str) -> Result<RatFunc, EllipticError> {
    let mut p = Parser { s: s.as_bytes(), pos: 0, var };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

impl std::str::FromStr for RatFunc {
    type Err = EllipticError;
    fn from_str(s: &str) -> Result<Self, EllipticError> {
        parse_ratfunc(s, "t")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        let f: RatFunc = "t + 1/t - 2".parse().unwrap();
        assert_eq!(f, RatFunc::new(Poly::from_i64(&[1, -2, 1]), Poly::t()));
        let g: RatFunc = "-(t^2 - 2*t + 2)".parse().unwrap();
        assert_eq!(g, RatFunc::from(Poly::from_i64(&[-2, 2, -1])));
        assert_eq!(parse_ratfunc("s^-2*s^3", "s").unwrap(), RatFunc::t());
        assert_eq!("(t + 1)^(-2)".parse::<RatFunc>().unwrap(), RatFunc::from(Poly::from_i64(&[1, 2, 1])).inv());
        assert!("t +".parse::<RatFunc>().is_err());
        assert!("1/(t-t)".parse::<RatFunc>().is_err());
    }
}
