//! The height pairing `⟨P, Q⟩ = χ + (P·O) + (Q·O) − (P·Q) − Σ contr_v(P, Q)`,
//! computed through `h(P) = 2χ + 2(P·O) − Σ contr_v(P)` and polarization.
//! Local terms are read off a model minimal at each place: the pole order of
//! x gives the intersection with the zero section, and the valuations of
//! ψ₂ and ψ₃ at a point through the singular point of the reduction give the
//! component it meets.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::factor::irreducible_factors;
use crate::group::{add, SectionPoint};
use crate::model::WeierstrassModel;
use crate::place::Place;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::tate::{candidate_places, euler_sum, local_model, KodairaFiber, KodairaType, LocalModel};
use crate::EllipticError;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Correction term for a section meeting component `index`.
/// For I_n the index is j ∈ [0, n/2] (components j and n−j are not told
/// apart); for additive fibers 1 is a near component and 2 a far one of I_n*.
pub fn contr_from_index(k: KodairaType, index: u32) -> Option<BigRational> {
    if index == 0 {
        return Some(BigRational::zero());
    }
    Some(match (k, index) {
        (KodairaType::I(n), j) if 2 * j <= n => q((j * (n - j)) as i64, n as i64),
        (KodairaType::III, 1) => q(1, 2),
        (KodairaType::IV, 1) => q(2, 3),
        (KodairaType::IStar(_), 1) => q(1, 1),
        (KodairaType::IStar(n), 2) if n > 0 => q(4 + n as i64, 4),
        (KodairaType::IVStar, 1) => q(4, 3),
        (KodairaType::IIIStar, 1) => q(3, 2),
        _ => return None,
    })
}

/// Local data of one section at one place, per geometric fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalTerm {
    pub place: Place,
    pub kodaira_type: KodairaType,
    pub degree: usize,
    #[serde(serialize_with = "ser_rat")]
    pub intersection: BigRational,
    pub component: u32,
    #[serde(serialize_with = "ser_rat")]
    pub contr: BigRational,
}

fn ser_rat<S: serde::Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&k3fib_exact::fmt_rat(x))
}

fn val(f: &RatFunc, pi: &Poly) -> Option<i64> {
    f.valuation(&Place::Finite(pi.clone()))
}

fn local_term(lm: &LocalModel, x: &RatFunc, y: &RatFunc) -> Result<LocalTerm, EllipticError> {
    let (x, y) = lm.transform_point(x, y);
    let pi = &lm.pi;
    let m = &lm.model;
    let mut term = LocalTerm {
        place: lm.place.clone(),
        kodaira_type: lm.kodaira_type,
        degree: lm.place.degree(),
        intersection: BigRational::zero(),
        component: 0,
        contr: BigRational::zero(),
    };
    let vx = val(&x, pi).unwrap_or(i64::MAX);
    if vx < 0 {
        if vx % 2 != 0 {
            return Err(EllipticError::Tate(format!("odd pole order of x at {}", lm.place)));
        }
        term.intersection = q(-vx / 2, 1);
        return Ok(term);
    }
    if !lm.kodaira_type.is_reducible() {
        return Ok(term);
    }
    let a = m.coeffs().map(|p| RatFunc::from(p.clone()));
    let k = RatFunc::from_i64;
    let psi2 = &(&(&k(2) * &y) + &(&a[0] * &x)) + &a[2];
    let fx = &(&(&(&a[0] * &y) - &(&k(3) * &(&x * &x))) - &(&(&k(2) * &a[1]) * &x)) - &a[3];
    let v2 = val(&psi2, pi).map_or(u64::MAX, |v| v as u64);
    let vf = val(&fx, pi).map_or(u64::MAX, |v| v as u64);
    if v2 == 0 || vf == 0 {
        return Ok(term);
    }
    let (index, contr) = match lm.kodaira_type {
        KodairaType::I(n) => {
            let j = v2.min(n as u64 / 2) as u32;
            (j, contr_from_index(lm.kodaira_type, j).unwrap())
        }
        kt => {
            let inv = m.invariants();
            let b = [&inv.b2, &inv.b4, &inv.b6, &inv.b8].map(|p| RatFunc::from(p.clone()));
            let x2 = &x * &x;
            let psi3 =
                &(&(&(&(&k(3) * &(&x2 * &x2)) + &(&b[0] * &(&x2 * &x))) + &(&(&k(3) * &b[1]) * &x2)) + &(&(&k(3) * &b[2]) * &x)) + &b[3];
            let v3 = val(&psi3, pi).map_or(u64::MAX, |v| v as u64);
            let contr = if v3 >= v2.saturating_mul(3) { q(2 * v2 as i64, 3) } else { q(v3 as i64, 4) };
            let index = (1..=2)
                .find(|&i| contr_from_index(kt, i).as_ref() == Some(&contr))
                .ok_or_else(|| EllipticError::Tate(format!("correction {contr} does not fit a component of {kt} at {}", lm.place)))?;
            (index, contr)
        }
    };
    term.component = index;
    term.contr = contr;
    Ok(term)
}

/// A surface with its local minimal models at every place of bad or
/// non-minimal reduction and at ∞.
#[derive(Clone, Debug)]
pub struct Surface {
    pub model: WeierstrassModel,
    pub locals: Vec<LocalModel>,
}

impl Surface {
    pub fn new(model: WeierstrassModel) -> Result<Self, EllipticError> {
        let locals = candidate_places(&model)?.iter().map(|p| local_model(&model, p)).collect::<Result<Vec<_>, _>>()?;
        Ok(Surface { model, locals })
    }

    pub fn fibers(&self) -> Vec<KodairaFiber> {
        self.locals.iter().filter(|l| l.kodaira_type != KodairaType::I(0)).map(|l| l.fiber()).collect()
    }

    /// χ(O_S) = e(S) / 12.
    pub fn chi(&self) -> BigRational {
        q(euler_sum(&self.fibers()) as i64, 12)
    }

    fn local(&self, place: &Place) -> Result<LocalModel, EllipticError> {
        match self.locals.iter().find(|l| &l.place == place) {
            Some(l) => Ok(l.clone()),
            None => local_model(&self.model, place),
        }
    }

    /// Local terms at every place where x has a pole or the fiber is singular.
    pub fn local_terms(&self, p: &SectionPoint) -> Result<Vec<LocalTerm>, EllipticError> {
        let Some((x, y)) = p.coords() else { return Ok(Vec::new()) };
        if !self.model.is_on_curve(x, y) {
            return Err(EllipticError::NotOnCurve(p.to_string()));
        }
        let mut places: Vec<Place> = self.locals.iter().map(|l| l.place.clone()).collect();
        if !x.den().is_constant() {
            for f in irreducible_factors(x.den()) {
                let pl = Place::Finite(f);
                if !places.contains(&pl) {
                    places.push(pl);
                }
            }
        }
        places.iter().map(|pl| local_term(&self.local(pl)?, x, y)).collect()
    }

    pub fn intersection_with_zero(&self, p: &SectionPoint) -> Result<BigRational, EllipticError> {
        Ok(self
            .local_terms(p)?
            .iter()
            .fold(BigRational::zero(), |acc, t| acc + &t.intersection * BigRational::from_integer(t.degree.into())))
    }

    pub fn height(&self, p: &SectionPoint) -> Result<BigRational, EllipticError> {
        if p.is_zero() {
            return Ok(BigRational::zero());
        }
        let mut h = self.chi() * q(2, 1);
        for t in self.local_terms(p)? {
            let d = BigRational::from_integer(t.degree.into());
            h += &t.intersection * &d * q(2, 1) - &t.contr * &d;
        }
        Ok(h)
    }

    pub fn pairing(&self, p: &SectionPoint, r: &SectionPoint) -> Result<BigRational, EllipticError> {
        let s = add(&self.model, p, r);
        Ok((self.height(&s)? - self.height(p)? - self.height(r)?) / q(2, 1))
    }

    pub fn height_matrix(&self, pts: &[SectionPoint]) -> Result<Vec<Vec<BigRational>>, EllipticError> {
        let hs: Vec<BigRational> = pts.iter().map(|p| self.height(p)).collect::<Result<_, _>>()?;
        let n = pts.len();
        let mut out = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            out[i][i] = hs[i].clone();
            for j in i + 1..n {
                let s = add(&self.model, &pts[i], &pts[j]);
                let v = (self.height(&s)? - &hs[i] - &hs[j]) / q(2, 1);
                out[i][j] = v.clone();
                out[j][i] = v;
            }
        }
        Ok(out)
    }

    /// Component met by P at a place, checked against the local term used by
    /// the height.
    pub fn component_index(&self, place: &Place, p: &SectionPoint) -> Result<u32, EllipticError> {
        let Some((x, y)) = p.coords() else { return Ok(0) };
        let lm = self.local(place)?;
        let t = local_term(&lm, x, y)?;
        let expected = contr_from_index(lm.kodaira_type, t.component)
            .ok_or_else(|| EllipticError::Tate(format!("component {} of {} at {place}", t.component, lm.kodaira_type)))?;
        if expected != t.contr {
            return Err(EllipticError::Tate(format!(
                "component {} of {} gives {expected}, height uses {}",
                t.component, lm.kodaira_type, t.contr
            )));
        }
        Ok(t.component)
    }
}

pub fn height(m: &WeierstrassModel, p: &SectionPoint) -> Result<BigRational, EllipticError> {
    Surface::new(m.clone())?.height(p)
}

pub fn height_matrix(m: &WeierstrassModel, pts: &[SectionPoint]) -> Result<Vec<Vec<BigRational>>, EllipticError> {
    Surface::new(m.clone())?.height_matrix(pts)
}

pub fn component_index(m: &WeierstrassModel, place: &Place, p: &SectionPoint) -> Result<u32, EllipticError> {
    Surface::new(m.clone())?.component_index(place, p)
}

/// Determinant of a small rational matrix.
pub fn determinant(a: &[Vec<BigRational>]) -> BigRational {
    if a.is_empty() {
        return BigRational::from_integer(1.into());
    }
    k3fib_exact::RatMatrix::from_rows(a.to_vec()).det()
}
