use std::fmt;

use crate::factor::factor;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::EllipticError;

/// `y² + a1 xy + a3 y = x³ + a2 x² + a4 x + a6` with a_i ∈ ℚ[t].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeierstrassModel {
    pub a1: Poly,
    pub a2: Poly,
    pub a3: Poly,
    pub a4: Poly,
    pub a6: Poly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub b2: Poly,
    pub b4: Poly,
    pub b6: Poly,
    pub b8: Poly,
    pub c4: Poly,
    pub c6: Poly,
    pub disc: Poly,
    /// None when Δ = 0.
    pub j: Option<RatFunc>,
}

fn c(n: i64) -> Poly {
    Poly::from_i64(&[n])
}

pub fn invariants_of(m: &WeierstrassModel) -> Invariants {
    let (a1, a2, a3, a4, a6) = (&m.a1, &m.a2, &m.a3, &m.a4, &m.a6);
    let b2 = a1 * a1 + c(4) * a2;
    let b4 = a1 * a3 + c(2) * a4;
    let b6 = a3 * a3 + c(4) * a6;
    let b8 = a1 * a1 * a6 + c(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    let c4 = &b2 * &b2 - c(24) * &b4;
    let c6 = -(&b2 * &b2 * &b2) + c(36) * &b2 * &b4 - c(216) * &b6;
    let disc = -(&b2 * &b2 * &b8) - c(8) * &b4 * &b4 * &b4 - c(27) * &b6 * &b6 + c(9) * &b2 * &b4 * &b6;
    assert_eq!(&(&c4 * &c4 * &c4) - &(&c6 * &c6), c(1728) * &disc, "Δ disagrees with (c4³ − c6²)/1728");
    assert_eq!(c(4) * &b8, &b2 * &b6 - &b4 * &b4, "4 b8 ≠ b2 b6 − b4²");
    let j = (!disc.is_zero()).then(|| RatFunc::new(&c4 * &c4 * &c4, disc.clone()));
    Invariants { b2, b4, b6, b8, c4, c6, disc, j }
}

/// `x = u² x' + r`, `y = u³ y' + s u² x' + t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Change {
    pub u: RatFunc,
    pub r: RatFunc,
    pub s: RatFunc,
    pub t: RatFunc,
}

impl Change {
    pub fn identity() -> Self {
        Change { u: RatFunc::one(), r: RatFunc::zero(), s: RatFunc::zero(), t: RatFunc::zero() }
    }

    pub fn scale(u: RatFunc) -> Self {
        Change { u, ..Change::identity() }
    }

    pub fn shift(r: Poly, s: Poly, t: Poly) -> Self {
        Change { u: RatFunc::one(), r: r.into(), s: s.into(), t: t.into() }
    }

    pub fn apply_to_point(&self, x: &RatFunc, y: &RatFunc) -> (RatFunc, RatFunc) {
        let u2 = self.u.pow(2);
        let xr = x - &self.r;
        let xn = &xr / &u2;
        let yn = &(&(y - &(&self.s * &xr)) - &self.t) / &self.u.pow(3);
        (xn, yn)
    }
}

/// Model coefficients as rational functions, before clearing denominators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalModel {
    pub a: [RatFunc; 5],
}

impl RationalModel {
    pub fn from_model(m: &WeierstrassModel) -> Self {
        RationalModel { a: m.coeffs().map(|p| RatFunc::from(p.clone())) }
    }

    pub fn change(&self, ch: &Change) -> RationalModel {
        let [a1, a2, a3, a4, a6] = &self.a;
        let (u, r, s, t) = (&ch.u, &ch.r, &ch.s, &ch.t);
        let k = |n: i64| RatFunc::from_i64(n);
        let n1 = a1 + &(&k(2) * s);
        let n2 = &(&(a2 - &(s * a1)) + &(&k(3) * r)) - &(s * s);
        let n3 = &(a3 + &(r * a1)) + &(&k(2) * t);
        let n4 = &(&(&(&(a4 - &(s * a3)) + &(&k(2) * &(r * a2))) - &(&(t + &(r * s)) * a1)) + &(&k(3) * &(r * r))) - &(&k(2) * &(s * t));
        let n6 = &(&(&(&(&(a6 + &(r * a4)) + &(&(r * r) * a2)) + &(&(r * r) * r)) - &(t * a3)) - &(t * t)) - &(&(r * t) * a1);
        RationalModel { a: [&n1 / &u.pow(1), &n2 / &u.pow(2), &n3 / &u.pow(3), &n4 / &u.pow(4), &n6 / &u.pow(6)] }
    }

    pub fn to_model(&self) -> Option<WeierstrassModel> {
        let p: Vec<Poly> = self.a.iter().map(|x| x.as_poly().cloned()).collect::<Option<_>>()?;
        Some(WeierstrassModel::new(p[0].clone(), p[1].clone(), p[2].clone(), p[3].clone(), p[4].clone()))
    }

    /// Clears denominators by the smallest scaling: returns the polynomial
    /// model and `u` with `a_i(new) = u^i a_i(old)`, so `(x, y) ↦ (u² x, u³ y)`.
    pub fn normalize(&self) -> (WeierstrassModel, Poly) {
        let weights = [1u32, 2, 3, 4, 6];
        let mut u = Poly::one();
        let mut dens = Poly::one();
        for a in &self.a {
            dens = &dens * a.den();
        }
        if !dens.is_constant() {
            for (q, _) in factor(&dens).factors {
                let need = self
                    .a
                    .iter()
                    .zip(weights)
                    .map(|(a, w)| {
                        let e = a.den().valuation(&q).unwrap();
                        e.div_ceil(w)
                    })
                    .max()
                    .unwrap();
                u = &u * &q.pow(need);
            }
        }
        let scaled = self.change(&Change::scale(RatFunc::from(u.clone()).inv()));
        (scaled.to_model().expect("denominators cleared"), u)
    }
}

impl WeierstrassModel {
    pub fn new(a1: Poly, a2: Poly, a3: Poly, a4: Poly, a6: Poly) -> Self {
        WeierstrassModel { a1, a2, a3, a4, a6 }
    }

    pub fn coeffs(&self) -> [&Poly; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn from_coeffs(a: [Poly; 5]) -> Self {
        let [a1, a2, a3, a4, a6] = a;
        WeierstrassModel { a1, a2, a3, a4, a6 }
    }

    pub fn invariants(&self) -> Invariants {
        invariants_of(self)
    }

    pub fn discriminant(&self) -> Poly {
        self.invariants().disc
    }

    pub fn check_nonsingular(&self) -> Result<(), EllipticError> {
        if self.discriminant().is_zero() {
            return Err(EllipticError::Singular);
        }
        Ok(())
    }

    /// Applies a change whose result must have polynomial coefficients.
    pub fn change(&self, ch: &Change) -> WeierstrassModel {
        RationalModel::from_model(self).change(ch).to_model().expect("coordinate change left ℚ[t]")
    }

    /// `a_i ↦ a_i / d^i`; `d^i` must divide `a_i`.
    pub fn divide_by(&self, d: &Poly) -> WeierstrassModel {
        let w = [1u32, 2, 3, 4, 6];
        let a = self.coeffs();
        WeierstrassModel::from_coeffs(std::array::from_fn(|i| a[i].div_exact(&d.pow(w[i]))))
    }

    /// The model in the chart `u = 1/t`: `a_i ↦ u^{ik} a_i(1/u)`, with the
    /// least k that keeps every coefficient polynomial.
    pub fn at_infinity(&self) -> (WeierstrassModel, usize) {
        let w = [1usize, 2, 3, 4, 6];
        let a = self.coeffs();
        let k = (0..5).map(|i| (a[i].deg().max(0) as usize).div_ceil(w[i])).max().unwrap();
        let m = WeierstrassModel::from_coeffs(std::array::from_fn(|i| a[i].reverse(k * w[i])));
        (m, k)
    }

    pub fn is_on_curve(&self, x: &RatFunc, y: &RatFunc) -> bool {
        let f = |p: &Poly| RatFunc::from(p.clone());
        let lhs = &(&(y * y) + &(&(&f(&self.a1) * x) * y)) + &(&f(&self.a3) * y);
        let rhs = &(&(&(&(x * x) * x) + &(&f(&self.a2) * &(x * x))) + &(&f(&self.a4) * x)) + &f(&self.a6);
        lhs == rhs
    }

    pub fn coeff_strings(&self) -> [Vec<String>; 5] {
        self.coeffs().map(|p| p.to_strings())
    }
}

impl fmt::Display for WeierstrassModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["a1", "a2", "a3", "a4", "a6"];
        let parts: Vec<String> = self.coeffs().iter().zip(names).map(|(p, n)| format!("{n} = {p}")).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn invariants_of_short_form() {
        // y² = x³ + x: Δ = −64, j = 1728
        let m = WeierstrassModel::new(Poly::zero(), Poly::zero(), Poly::zero(), Poly::from_i64(&[1]), Poly::zero());
        let inv = m.invariants();
        assert_eq!(inv.disc, Poly::from_i64(&[-64]));
        assert_eq!(inv.j.unwrap(), RatFunc::from_i64(1728));
    }

    #[test]
    fn change_preserves_j_and_scales_discriminant() {
        let m = WeierstrassModel::new(
            Poly::from_i64(&[1, 1]),
            Poly::from_i64(&[0, 2]),
            Poly::t(),
            Poly::from_i64(&[3]),
            Poly::from_i64(&[1, 0, 1]),
        );
        let ch = Change { u: RatFunc::from_i64(2), r: Poly::t().into(), s: RatFunc::from_i64(1), t: Poly::from_i64(&[0, 0, 1]).into() };
        let n = RationalModel::from_model(&m).change(&ch);
        let norm = n.to_model().unwrap();
        let (i0, i1) = (m.invariants(), norm.invariants());
        assert_eq!(i0.j, i1.j);
        assert_eq!(i1.disc.scale(&BigRational::from_integer(4096.into())), i0.disc);
        // a point of the old model maps to a point of the new one
        let (x, y) = (RatFunc::zero(), RatFunc::zero());
        let m0 = WeierstrassModel { a6: Poly::zero(), ..m.clone() };
        let n0 = m0.change(&ch);
        let (xn, yn) = ch.apply_to_point(&x, &y);
        assert!(m0.is_on_curve(&x, &y) && n0.is_on_curve(&xn, &yn));
    }

    #[test]
    fn normalization_clears_denominators() {
        // a1 = t + 1/t − 2, a2 = −2, a4 = 1
        let t = RatFunc::t();
        let a1 = &(&t + &t.inv()) - &RatFunc::from_i64(2);
        let raw = RationalModel { a: [a1, RatFunc::from_i64(-2), RatFunc::zero(), RatFunc::from_i64(1), RatFunc::zero()] };
        let (m, u) = raw.normalize();
        assert_eq!(u, Poly::t());
        assert_eq!(m.a1, Poly::from_i64(&[1, -2, 1]));
        assert_eq!(m.a4, Poly::from_i64(&[0, 0, 0, 0, 1]));
    }
}
