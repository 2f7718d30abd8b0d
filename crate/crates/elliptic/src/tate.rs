//! Tate's algorithm over ℚ[t] localized at a place. The residue field
//! ℚ[t]/(π) has characteristic zero, so every multiple root that the
//! algorithm translates to the origin is rational over it and is found by
//! closed formulas; no square roots are needed for the geometric type.

use std::fmt;

use num_rational::BigRational;
use serde::Serialize;

use crate::factor::irreducible_factors;
use crate::model::{Change, WeierstrassModel};
use crate::place::Place;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::EllipticError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KodairaType {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

impl KodairaType {
    pub fn euler_number(self) -> u32 {
        match self {
            KodairaType::I(n) => n,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IStar(n) => n + 6,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    pub fn component_count(self) -> u32 {
        match self {
            KodairaType::I(0) => 1,
            KodairaType::I(n) => n,
            KodairaType::II => 1,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::IStar(n) => n + 5,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
        }
    }

    /// Dynkin label of the non-identity components, None if irreducible.
    pub fn root_type(self) -> Option<String> {
        match self {
            KodairaType::I(n) if n >= 2 => Some(format!("A{}", n - 1)),
            KodairaType::III => Some("A1".into()),
            KodairaType::IV => Some("A2".into()),
            KodairaType::IStar(n) => Some(format!("D{}", n + 4)),
            KodairaType::IVStar => Some("E6".into()),
            KodairaType::IIIStar => Some("E7".into()),
            KodairaType::IIStar => Some("E8".into()),
            _ => None,
        }
    }

    pub fn is_reducible(self) -> bool {
        self.root_type().is_some()
    }

    pub fn is_multiplicative(self) -> bool {
        matches!(self, KodairaType::I(n) if n > 0)
    }

    /// Geometric type from the valuations of c4, c6 and Δ on a minimal model.
    pub fn from_valuations(vc4: Option<u32>, vc6: Option<u32>, vd: u32) -> Option<KodairaType> {
        let inf = u32::MAX;
        let (c4, c6) = (vc4.unwrap_or(inf), vc6.unwrap_or(inf));
        Some(match vd {
            0 => KodairaType::I(0),
            n if c4 == 0 => KodairaType::I(n),
            2 if c6 == 1 => KodairaType::II,
            3 if c4 == 1 => KodairaType::III,
            4 if c6 == 2 => KodairaType::IV,
            6 if c4 >= 2 && c6 >= 3 => KodairaType::IStar(0),
            n if n > 6 && c4 == 2 && c6 == 3 => KodairaType::IStar(n - 6),
            8 if c6 == 4 => KodairaType::IVStar,
            9 if c4 == 3 => KodairaType::IIIStar,
            10 if c6 == 5 => KodairaType::IIStar,
            _ => return None,
        })
    }
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IStar(n) => write!(f, "I{n}*"),
            KodairaType::IVStar => write!(f, "IV*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IIStar => write!(f, "II*"),
        }
    }
}

impl std::str::FromStr for KodairaType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        Ok(match s {
            "II" => KodairaType::II,
            "III" => KodairaType::III,
            "IV" => KodairaType::IV,
            "IV*" => KodairaType::IVStar,
            "III*" => KodairaType::IIIStar,
            "II*" => KodairaType::IIStar,
            _ => {
                let rest = s.strip_prefix('I').ok_or_else(|| format!("bad Kodaira symbol {s}"))?;
                match rest.strip_suffix('*') {
                    Some(n) => KodairaType::IStar(n.parse().map_err(|_| format!("bad Kodaira symbol {s}"))?),
                    None => KodairaType::I(rest.parse().map_err(|_| format!("bad Kodaira symbol {s}"))?),
                }
            }
        })
    }
}

impl Serialize for KodairaType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KodairaFiber {
    pub place: Place,
    pub kodaira_type: KodairaType,
    pub root_type: Option<String>,
    pub euler_number: u32,
    pub component_count: u32,
    /// Degree of the place: the fiber occurs this many times over ℚ̄.
    pub multiplicity: usize,
    /// The input model was not minimal here and had to be rescaled.
    pub reminimalized: bool,
}

/// A model minimal at one place, with the changes that produced it.
#[derive(Clone, Debug)]
pub struct LocalModel {
    pub place: Place,
    pub pi: Poly,
    /// Weight of the chart switch at ∞ (`x ↦ u^{2k} x(1/u)`), zero at finite places.
    pub chart: usize,
    pub changes: Vec<Change>,
    pub model: WeierstrassModel,
    pub kodaira_type: KodairaType,
    pub disc_valuation: u32,
}

impl LocalModel {
    /// Coordinates of a point of the global model on the local minimal model.
    pub fn transform_point(&self, x: &RatFunc, y: &RatFunc) -> (RatFunc, RatFunc) {
        let (mut x, mut y) = (x.clone(), y.clone());
        if matches!(self.place, Place::Infinity) {
            let u = RatFunc::t();
            x = &x.invert_variable() * &u.pow(2 * self.chart as i32);
            y = &y.invert_variable() * &u.pow(3 * self.chart as i32);
        }
        for ch in &self.changes {
            (x, y) = ch.apply_to_point(&x, &y);
        }
        (x, y)
    }

    pub fn fiber(&self) -> KodairaFiber {
        let k = self.kodaira_type;
        KodairaFiber {
            place: self.place.clone(),
            kodaira_type: k,
            root_type: k.root_type(),
            euler_number: k.euler_number(),
            component_count: k.component_count(),
            multiplicity: self.place.degree(),
            reminimalized: self.changes.iter().any(|c| !c.u.is_one()),
        }
    }
}

/// Arithmetic in ℚ[t]/(π).
struct Residue<'a> {
    pi: &'a Poly,
}

impl Residue<'_> {
    fn red(&self, a: &Poly) -> Poly {
        a.rem(self.pi)
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.red(&(a * b))
    }

    fn inv(&self, a: &Poly) -> Poly {
        let (g, s, _) = Poly::ext_gcd(a, self.pi);
        assert!(g.is_one(), "inverting zero in the residue field");
        self.red(&s)
    }

    fn div(&self, a: &Poly, b: &Poly) -> Poly {
        self.mul(a, &self.inv(b))
    }

    fn k(n: i64) -> Poly {
        Poly::from_i64(&[n])
    }

    /// Multiple root of a singular monic cubic `x³ + a x² + b x + c`.
    fn multiple_root(&self, a: &Poly, b: &Poly, c: &Poly) -> Poly {
        let d = self.red(&(a * a - Self::k(3) * b));
        if d.is_zero() {
            return self.red(&a.scale(&-BigRational::new(1.into(), 3.into())));
        }
        self.div(&(Self::k(9) * c - a * b), &(Self::k(2) * &d))
    }

    /// Discriminant of the monic cubic, reduced.
    fn cubic_disc(&self, a: &Poly, b: &Poly, c: &Poly) -> Poly {
        let k = Self::k;
        self.red(&(a * a * b * b - k(4) * b * b * b - k(4) * a * a * a * c - k(27) * c * c + k(18) * a * b * c))
    }
}

fn v(a: &Poly, pi: &Poly) -> u32 {
    a.valuation(pi).unwrap_or(u32::MAX)
}

/// `(a / π^j) mod π`.
fn part(a: &Poly, pi: &Poly, j: u32) -> Poly {
    a.div_exact(&pi.pow(j)).rem(pi)
}

fn lift(a: Poly, pi: &Poly, e: u32) -> Poly {
    &a * &pi.pow(e)
}

struct Run {
    model: WeierstrassModel,
    changes: Vec<Change>,
}

impl Run {
    fn apply(&mut self, ch: Change) {
        self.model = self.model.change(&ch);
        self.changes.push(ch);
    }

    fn shift(&mut self, r: Poly, s: Poly, t: Poly) {
        if !(r.is_zero() && s.is_zero() && t.is_zero()) {
            self.apply(Change::shift(r, s, t));
        }
    }
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

fn run_tate(model: &WeierstrassModel, pi: &Poly) -> Result<(KodairaType, Run), EllipticError> {
    let mut run = Run { model: model.clone(), changes: Vec::new() };
    let kf = Residue { pi };
    loop {
        let inv = run.model.invariants();
        if inv.disc.is_zero() {
            return Err(EllipticError::Singular);
        }
        let vd = v(&inv.disc, pi);
        if vd == 0 {
            return Ok((KodairaType::I(0), run));
        }
        // move the singular point of the reduction to (0, 0)
        let a2 = kf.red(&inv.b2.scale(&BigRational::new(1.into(), 4.into())));
        let a4 = kf.red(&inv.b4.scale(&half()));
        let a6 = kf.red(&inv.b6.scale(&BigRational::new(1.into(), 4.into())));
        let x0 = kf.multiple_root(&a2, &a4, &a6);
        let y0 = kf.red(&(&kf.mul(&run.model.a1, &x0) + &run.model.a3).scale(&-half()));
        run.shift(x0, Poly::zero(), y0);
        let m = &run.model;
        debug_assert!(v(&m.a3, pi) >= 1 && v(&m.a4, pi) >= 1 && v(&m.a6, pi) >= 1);
        let inv = m.invariants();
        if v(&inv.b2, pi) == 0 {
            return Ok((KodairaType::I(vd), run));
        }
        if v(&m.a6, pi) < 2 {
            return Ok((KodairaType::II, run));
        }
        if v(&inv.b8, pi) < 3 {
            return Ok((KodairaType::III, run));
        }
        if v(&inv.b6, pi) < 3 {
            return Ok((KodairaType::IV, run));
        }
        // complete the square: a1 = a3 = 0
        let s = run.model.a1.scale(&-half());
        run.shift(Poly::zero(), s, Poly::zero());
        let t = run.model.a3.scale(&-half());
        run.shift(Poly::zero(), Poly::zero(), t);
        let m = &run.model;
        debug_assert!(v(&m.a2, pi) >= 1 && v(&m.a4, pi) >= 2 && v(&m.a6, pi) >= 3);
        let (p2, p4, p6) = (part(&m.a2, pi, 1), part(&m.a4, pi, 2), part(&m.a6, pi, 3));
        if !kf.cubic_disc(&p2, &p4, &p6).is_zero() {
            return Ok((KodairaType::IStar(0), run));
        }
        let triple = kf.red(&(&p2 * &p2 - Poly::from_i64(&[3]) * &p4)).is_zero();
        let root = kf.multiple_root(&p2, &p4, &p6);
        run.shift(lift(root, pi, 1), Poly::zero(), Poly::zero());
        if !triple {
            let mut n = 1u32;
            loop {
                let m = &run.model;
                if n % 2 == 1 {
                    let k = (n + 3) / 2;
                    let b = part(&m.a3, pi, k);
                    let c = part(&m.a6, pi, n + 3);
                    if !kf.red(&(&b * &b + Poly::from_i64(&[4]) * &c)).is_zero() {
                        return Ok((KodairaType::IStar(n), run));
                    }
                    let y0 = b.scale(&-half());
                    run.shift(Poly::zero(), Poly::zero(), lift(y0, pi, k));
                } else {
                    let j = (n + 4) / 2;
                    let a = part(&m.a2, pi, 1);
                    let b = part(&m.a4, pi, j);
                    let c = part(&m.a6, pi, n + 3);
                    if !kf.red(&(&b * &b - Poly::from_i64(&[4]) * &kf.mul(&a, &c))).is_zero() {
                        return Ok((KodairaType::IStar(n), run));
                    }
                    let x0 = kf.div(&b.scale(&-half()), &a);
                    run.shift(lift(x0, pi, j - 1), Poly::zero(), Poly::zero());
                }
                n += 1;
                if n > vd {
                    return Err(EllipticError::Tate(format!("I_n* loop did not stop at {}", Place::Finite(pi.clone()))));
                }
            }
        }
        let m = &run.model;
        let b = part(&m.a3, pi, 2);
        let c = part(&m.a6, pi, 4);
        if !kf.red(&(&b * &b + Poly::from_i64(&[4]) * &c)).is_zero() {
            return Ok((KodairaType::IVStar, run));
        }
        let y0 = b.scale(&-half());
        run.shift(Poly::zero(), Poly::zero(), lift(y0, pi, 2));
        let m = &run.model;
        if v(&m.a4, pi) < 4 {
            return Ok((KodairaType::IIIStar, run));
        }
        if v(&m.a6, pi) < 6 {
            return Ok((KodairaType::IIStar, run));
        }
        let pi_f = RatFunc::from(pi.clone());
        run.apply(Change::scale(pi_f));
    }
}

fn local_frame(model: &WeierstrassModel, place: &Place) -> (WeierstrassModel, Poly, usize) {
    match place {
        Place::Finite(p) => (model.clone(), p.clone(), 0),
        Place::Infinity => {
            let (m, k) = model.at_infinity();
            (m, Poly::t(), k)
        }
    }
}

/// Runs Tate's algorithm at one place and cross-checks the type against the
/// valuations of c4, c6 and Δ on the resulting minimal model.
pub fn local_model(model: &WeierstrassModel, place: &Place) -> Result<LocalModel, EllipticError> {
    let (m, pi, chart) = local_frame(model, place);
    let (kodaira_type, run) = run_tate(&m, &pi)?;
    let inv = run.model.invariants();
    let vd = v(&inv.disc, &pi);
    let by_table = KodairaType::from_valuations(inv.c4.valuation(&pi), inv.c6.valuation(&pi), vd);
    if by_table != Some(kodaira_type) {
        return Err(EllipticError::Tate(format!(
            "at {place}: algorithm gives {kodaira_type}, valuation table gives {}",
            by_table.map_or("nothing".into(), |k| k.to_string())
        )));
    }
    Ok(LocalModel { place: place.clone(), pi, chart, changes: run.changes, model: run.model, kodaira_type, disc_valuation: vd })
}

/// A model minimal at `place`. At a finite place a model that only needs
/// dividing by `π^i` is divided directly; otherwise the changes found by
/// Tate's algorithm are used. At ∞ the result lives in the chart `u = 1/t`.
pub fn minimalize_at(model: &WeierstrassModel, place: &Place) -> Result<WeierstrassModel, EllipticError> {
    let (mut m, pi, _) = local_frame(model, place);
    let w = [1u32, 2, 3, 4, 6];
    loop {
        let a = m.coeffs();
        let divisible = (0..5).all(|i| a[i].is_zero() || v(a[i], &pi) >= w[i]);
        let inv = m.invariants();
        if divisible && v(&inv.disc, &pi) >= 12 {
            m = m.divide_by(&pi);
        } else {
            break;
        }
    }
    Ok(run_tate(&m, &pi)?.1.model)
}

pub fn tate_classify(model: &WeierstrassModel, place: &Place) -> Result<KodairaFiber, EllipticError> {
    Ok(local_model(model, place)?.fiber())
}

/// Places where Δ vanishes, together with ∞.
pub fn candidate_places(model: &WeierstrassModel) -> Result<Vec<Place>, EllipticError> {
    let disc = model.discriminant();
    if disc.is_zero() {
        return Err(EllipticError::Singular);
    }
    let mut places: Vec<Place> =
        if disc.is_constant() { Vec::new() } else { irreducible_factors(&disc).into_iter().map(Place::Finite).collect() };
    places.push(Place::Infinity);
    Ok(places)
}

/// Local minimal models at every place with a singular fiber.
pub fn bad_local_models(model: &WeierstrassModel) -> Result<Vec<LocalModel>, EllipticError> {
    let mut out = Vec::new();
    for p in candidate_places(model)? {
        let lm = local_model(model, &p)?;
        if lm.kodaira_type != KodairaType::I(0) {
            out.push(lm);
        }
    }
    Ok(out)
}

/// All singular fibers, finite places first in factor order, then ∞.
pub fn all_fibers(model: &WeierstrassModel) -> Result<Vec<KodairaFiber>, EllipticError> {
    Ok(bad_local_models(model)?.iter().map(|l| l.fiber()).collect())
}

/// Σ deg(v) · e(F_v).
pub fn euler_sum(fibers: &[KodairaFiber]) -> u32 {
    fibers.iter().map(|f| f.euler_number * f.multiplicity as u32).sum()
}

/// Dynkin labels of the reducible fibers over ℚ̄, sorted.
pub fn reducible_root_types(fibers: &[KodairaFiber]) -> Vec<String> {
    let mut out = Vec::new();
    for f in fibers {
        if let Some(r) = &f.root_type {
            out.extend(std::iter::repeat_n(r.clone(), f.multiplicity));
        }
    }
    out.sort();
    out
}

/// Fiber symbols with multiplicity, e.g. "2I8".
pub fn fiber_symbols(fibers: &[KodairaFiber]) -> Vec<String> {
    let mut counts: std::collections::BTreeMap<KodairaType, usize> = Default::default();
    for f in fibers {
        *counts.entry(f.kodaira_type).or_default() += f.multiplicity;
    }
    counts.iter().map(|(k, n)| if *n == 1 { k.to_string() } else { format!("{n}{k}") }).collect()
}
