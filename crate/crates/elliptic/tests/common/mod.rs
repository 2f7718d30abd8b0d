#![allow(dead_code)]

use k3fib_elliptic::*;

pub fn r(s: &str) -> RatFunc {
    s.parse().unwrap()
}

/// Normalized model with the scaling that cleared denominators.
pub struct Normalized {
    pub model: WeierstrassModel,
    pub u: RatFunc,
}

impl Normalized {
    pub fn point(&self, x: &str, y: &str) -> SectionPoint {
        SectionPoint::new(&r(x) * &self.u.pow(2), &r(y) * &self.u.pow(3))
    }

    pub fn surface(&self) -> Surface {
        Surface::new(self.model.clone()).unwrap()
    }
}

/// `y² + a1 xy + a3 y = x³ + a2 x² + a4 x + a6`, coefficients as expressions in t.
pub fn model(a: [&str; 5]) -> Normalized {
    let (model, u) = RationalModel { a: a.map(r) }.normalize();
    Normalized { model, u: u.into() }
}

pub fn s() -> Normalized {
    model(["t + 1/t - 2", "-2", "0", "1", "0"])
}

pub fn k() -> Normalized {
    model(["-(t^2 - 2*t + 2)", "-(t^2 + 1)", "0", "t^2", "0"])
}

pub fn v() -> Normalized {
    model(["(t + 1)^2", "-t*(t + 1)^2", "-t^2*(2*t + 1)", "t^3*(t^2 + 2*t + 2)", "-t^5*(t + 1)"])
}

pub fn a() -> Normalized {
    model(["-1/(t*(t + 1))", "-2/(t + 1)", "1/(t*(t + 1))", "(t + 1)^(-2)", "0"])
}

pub fn t() -> Normalized {
    model(["0", "t*(t^2 + 1 + 4*t)", "0", "t^4", "0"])
}

pub fn l() -> Normalized {
    model(["-1", "t*(t + 1)*(2*t - 1)", "-2*t^3", "t^3*(t^3 + 2*t^2 - t - 1)", "t^6*(t - 1)*(t + 1)"])
}

pub fn n() -> Normalized {
    model(["t^2 - 1", "-2", "-1", "0", "0"])
}

pub fn p() -> Normalized {
    model(["0", "-t - t*(t + 1)^2", "0", "t^2*(t + 1)^2", "0"])
}

pub fn f() -> Normalized {
    model(["-2*t", "0", "-2*t^2*(t - 1)", "0", "t^4*(t - 1)^3"])
}

pub fn h() -> Normalized {
    model(["0", "0", "0", "-25/3", "-t - 1/t - 196/27"])
}

pub fn c() -> Normalized {
    model(["t^2 + 5", "0", "1", "0", "0"])
}

pub fn j() -> Normalized {
    model(["-(t^2 + 4*t)", "0", "t^2", "0", "0"])
}

pub fn beta() -> Normalized {
    model(["0", "2*t^2*(t - 1)", "0", "t^3*(t - 1)^2", "0"])
}

pub fn poly(c: &[i64]) -> Poly {
    Poly::from_i64(c)
}

pub fn place(c: &[i64]) -> Place {
    Place::Finite(poly(c))
}
