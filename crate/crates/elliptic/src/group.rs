use std::fmt;

use crate::model::WeierstrassModel;
use crate::ratfunc::RatFunc;

/// A point of E(ℚ(t)).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SectionPoint {
    Zero,
    Affine { x: RatFunc, y: RatFunc },
}

impl SectionPoint {
    pub fn new(x: RatFunc, y: RatFunc) -> Self {
        SectionPoint::Affine { x, y }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SectionPoint::Zero)
    }

    pub fn coords(&self) -> Option<(&RatFunc, &RatFunc)> {
        match self {
            SectionPoint::Zero => None,
            SectionPoint::Affine { x, y } => Some((x, y)),
        }
    }
}

impl fmt::Display for SectionPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SectionPoint::Zero => write!(f, "O"),
            SectionPoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}

fn lift(m: &WeierstrassModel) -> [RatFunc; 5] {
    m.coeffs().map(|p| RatFunc::from(p.clone()))
}

pub fn on_curve(m: &WeierstrassModel, p: &SectionPoint) -> bool {
    match p {
        SectionPoint::Zero => true,
        SectionPoint::Affine { x, y } => m.is_on_curve(x, y),
    }
}

pub fn negate(m: &WeierstrassModel, p: &SectionPoint) -> SectionPoint {
    match p {
        SectionPoint::Zero => SectionPoint::Zero,
        SectionPoint::Affine { x, y } => {
            let [a1, _, a3, _, _] = lift(m);
            SectionPoint::new(x.clone(), &(&(-y) - &(&a1 * x)) - &a3)
        }
    }
}

pub fn add(m: &WeierstrassModel, p: &SectionPoint, q: &SectionPoint) -> SectionPoint {
    let (x1, y1) = match p.coords() {
        None => return q.clone(),
        Some(c) => c,
    };
    let (x2, y2) = match q.coords() {
        None => return p.clone(),
        Some(c) => c,
    };
    let [a1, a2, a3, a4, a6] = lift(m);
    let k = RatFunc::from_i64;
    let (lambda, nu) = if x1 == x2 {
        if (&(&(y1 + y2) + &(&a1 * x2)) + &a3).is_zero() {
            return SectionPoint::Zero;
        }
        let den = &(&(&k(2) * y1) + &(&a1 * x1)) + &a3;
        let num = &(&(&(&k(3) * &(x1 * x1)) + &(&(&k(2) * &a2) * x1)) + &a4) - &(&a1 * y1);
        let nnum = &(&(&(-&(&(x1 * x1) * x1)) + &(&a4 * x1)) + &(&k(2) * &a6)) - &(&a3 * y1);
        (&num / &den, &nnum / &den)
    } else {
        let dx = x2 - x1;
        (&(y2 - y1) / &dx, &(&(y1 * x2) - &(y2 * x1)) / &dx)
    };
    let x3 = &(&(&(&(&lambda * &lambda) + &(&a1 * &lambda)) - &a2) - x1) - x2;
    let y3 = &(&(-&(&(&lambda + &a1) * &x3)) - &nu) - &a3;
    SectionPoint::new(x3, y3)
}

pub fn sub(m: &WeierstrassModel, p: &SectionPoint, q: &SectionPoint) -> SectionPoint {
    add(m, p, &negate(m, q))
}

pub fn multiply(m: &WeierstrassModel, n: i64, p: &SectionPoint) -> SectionPoint {
    let base = if n < 0 { negate(m, p) } else { p.clone() };
    let mut acc = SectionPoint::Zero;
    let mut b = base;
    let mut e = n.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc = add(m, &acc, &b);
        }
        b = add(m, &b, &b);
        e >>= 1;
    }
    acc
}

/// Least k ≤ bound with kP = O. Torsion sections are disjoint from the zero
/// section, so on a model over ℚ[t] every nonzero multiple of a torsion point
/// has polynomial x of degree at most twice the weight at ∞; the search stops
/// at the first multiple that is not of that shape.
pub fn torsion_order(m: &WeierstrassModel, p: &SectionPoint, bound: u32) -> Option<u32> {
    let (_, weight) = m.at_infinity();
    let mut q = p.clone();
    for k in 1..=bound {
        match q.coords() {
            None => return Some(k),
            Some((x, _)) if !x.is_poly() || x.num().deg() > 2 * weight as isize => return None,
            _ => {}
        }
        q = add(m, &q, p);
    }
    None
}
