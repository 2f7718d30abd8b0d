mod common;

use common::*;
use k3fib_elliptic::*;
use k3fib_exact::rat_frac;

fn types(fs: &[KodairaFiber]) -> Vec<(String, String)> {
    fs.iter().map(|f| (f.place.label(), f.kodaira_type.to_string())).collect()
}

fn fiber_at(fs: &[KodairaFiber], place: &Place) -> KodairaType {
    fs.iter().find(|f| &f.place == place).map(|f| f.kodaira_type).unwrap_or(KodairaType::I(0))
}

fn monic_factors(fs: &[KodairaFiber], kind: KodairaType) -> Vec<Poly> {
    let mut out: Vec<Poly> = fs
        .iter()
        .filter(|f| f.kodaira_type == kind)
        .filter_map(|f| match &f.place {
            Place::Finite(p) => Some(p.clone()),
            Place::Infinity => None,
        })
        .collect();
    out.sort();
    out
}

fn product(ps: &[Poly]) -> Poly {
    ps.iter().fold(Poly::one(), |a, b| &a * b)
}

#[test]
fn discriminant_places_of_s() {
    let s = s();
    let places = candidate_places(&s.model).unwrap();
    let expected = vec![place(&[0, 1]), place(&[-1, 1]), place(&[1, 1]), place(&[1, -6, 1]), Place::Infinity];
    let mut got = places.clone();
    got.sort();
    let mut want = expected;
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn fibers_of_s() {
    let fs = all_fibers(&s().model).unwrap();
    assert_eq!(fiber_at(&fs, &place(&[0, 1])), KodairaType::I(8));
    assert_eq!(fiber_at(&fs, &Place::Infinity), KodairaType::I(8));
    assert_eq!(fiber_at(&fs, &place(&[-1, 1])), KodairaType::I(4));
    assert_eq!(fiber_at(&fs, &place(&[1, 1])), KodairaType::I(2));
    assert_eq!(fiber_at(&fs, &place(&[1, -6, 1])), KodairaType::I(1));
    assert_eq!(euler_sum(&fs), 24);
    assert_eq!(fiber_symbols(&fs), ["2I1", "I2", "I4", "2I8"]);
    assert_eq!(fs.len(), 5);
}

#[test]
fn constant_model_is_rejected_downstream() {
    let m = WeierstrassModel::new(Poly::zero(), Poly::zero(), Poly::zero(), poly(&[1]), Poly::zero());
    assert_eq!(m.discriminant(), poly(&[-64]));
    let fs = all_fibers(&m).unwrap();
    assert!(fs.is_empty());
    assert_ne!(euler_sum(&fs), 24);
    let zero = WeierstrassModel::new(Poly::zero(), Poly::zero(), Poly::zero(), Poly::zero(), Poly::zero());
    assert_eq!(all_fibers(&zero), Err(EllipticError::Singular));
}

fn finite_places(m: &WeierstrassModel) -> Vec<Poly> {
    let mut out: Vec<Poly> = candidate_places(m)
        .unwrap()
        .into_iter()
        .filter_map(|p| match p {
            Place::Finite(q) => Some(q),
            Place::Infinity => None,
        })
        .collect();
    out.sort();
    out
}

#[test]
fn discriminant_of_h() {
    // as printed, y² = x³ − 25/3 x − h − 1/h − 196/27 puts I2 at h = 1
    let h = h();
    let quad = poly(&[27, 446, 27]).monic();
    let mut want = vec![poly(&[0, 1]), poly(&[-1, 1]), quad.clone()];
    want.sort();
    assert_eq!(finite_places(&h.model), want);
    let fs = all_fibers(&h.model).unwrap();
    assert_eq!(fiber_at(&fs, &Place::Infinity), KodairaType::IIStar);
    assert_eq!(fiber_at(&fs, &place(&[0, 1])), KodairaType::IIStar);
    assert_eq!(fiber_at(&fs, &place(&[-1, 1])), KodairaType::I(2));
    assert_eq!(fiber_at(&fs, &Place::Finite(quad)), KodairaType::I(1));
    assert_eq!(fiber_symbols(&fs), ["2I1", "I2", "2II*"]);

    // h → −h gives y² = x³ − 675x + 27(27t − 196 + 27/t) up to x ↦ 9x: I2 at −1
    let e = model(["0", "0", "0", "-25/3", "t + 1/t - 196/27"]);
    let quad = poly(&[27, -446, 27]).monic();
    let mut want = vec![poly(&[0, 1]), poly(&[1, 1]), quad.clone()];
    want.sort();
    assert_eq!(finite_places(&e.model), want);
    let fs = all_fibers(&e.model).unwrap();
    assert_eq!(fiber_at(&fs, &place(&[1, 1])), KodairaType::I(2));
    assert_eq!(fiber_at(&fs, &Place::Finite(quad)), KodairaType::I(1));
    assert_eq!(fiber_at(&fs, &Place::Infinity), KodairaType::IIStar);
}

#[test]
fn minimalization() {
    // already minimal at t = 0
    let t = t();
    assert_eq!(minimalize_at(&t.model, &place(&[0, 1])).unwrap(), t.model);
    // scaled by (π², π³) at π = t − 1, then recovered
    let pi = poly(&[-1, 1]);
    let w = [1u32, 2, 3, 4, 6];
    let a = t.model.coeffs();
    let scaled = WeierstrassModel::from_coeffs(std::array::from_fn(|i| a[i] * &pi.pow(w[i])));
    let dv = |m: &WeierstrassModel| m.discriminant().valuation(&pi).unwrap();
    assert_eq!(dv(&scaled), dv(&t.model) + 12);
    let back = minimalize_at(&scaled, &Place::Finite(pi.clone())).unwrap();
    assert_eq!(back, t.model);
    let f = tate_classify(&scaled, &Place::Finite(pi)).unwrap();
    assert!(f.reminimalized);
    assert!(!tate_classify(&t.model, &place(&[0, 1])).unwrap().reminimalized);
    // at ∞ the chart flip alone leaves h non-minimal; the minimal model carries II*
    let h = h();
    let m = minimalize_at(&h.model, &Place::Infinity).unwrap();
    let d = m.discriminant();
    assert!(d.valuation(&Poly::t()).unwrap() < 12);
    assert_eq!(tate_classify(&h.model, &Place::Infinity).unwrap().kodaira_type, KodairaType::IIStar);
}

#[test]
fn tate_examples() {
    let s = s();
    let f0 = tate_classify(&s.model, &place(&[0, 1])).unwrap();
    assert_eq!(f0.kodaira_type, KodairaType::I(8));
    assert_eq!((f0.component_count, f0.euler_number, f0.root_type.as_deref()), (8, 8, Some("A7")));
    let p = tate_classify(&p().model, &Place::Infinity).unwrap();
    assert_eq!(p.kodaira_type, KodairaType::IStar(4));
    assert_eq!((p.component_count, p.euler_number, p.root_type.as_deref()), (9, 10, Some("D8")));
    let f = tate_classify(&f().model, &Place::Infinity).unwrap();
    assert_eq!(f.kodaira_type, KodairaType::IIStar);
    assert_eq!((f.component_count, f.euler_number, f.root_type.as_deref()), (9, 10, Some("E8")));
}

#[test]
fn fiber_tables() {
    // c: I18 at ∞ and six I1
    let fs = all_fibers(&c().model).unwrap();
    assert_eq!(fiber_at(&fs, &Place::Infinity), KodairaType::I(18));
    let ones = monic_factors(&fs, KodairaType::I(1));
    assert_eq!(product(&ones), &(&poly(&[2, 0, 1]) * &poly(&[7, 1, 1])) * &poly(&[7, -1, 1]));
    assert_eq!(euler_sum(&fs), 24);

    // β: III* at 0, I2* at ∞, I1* at 1 and nothing else
    let fs = all_fibers(&beta().model).unwrap();
    let mut got = types(&fs);
    got.sort();
    assert_eq!(got, vec![("inf".into(), "I2*".into()), ("t=0".into(), "III*".into()), ("t=1".into(), "I1*".into())]);

    // v: I8, I10 and six I1 at the roots of one sextic
    let fs = all_fibers(&v().model).unwrap();
    let mut big: Vec<KodairaType> = fs.iter().map(|f| f.kodaira_type).filter(|k| *k != KodairaType::I(1)).collect();
    big.sort();
    assert_eq!(big, vec![KodairaType::I(8), KodairaType::I(10)]);
    assert_eq!(product(&monic_factors(&fs, KodairaType::I(1))), poly(&[2, 0, 39, 0, -5, 0, 1]));
}

#[test]
fn group_law_on_s() {
    let s = s();
    let m = &s.model;
    let a = s.point("t", "t - 1");
    assert!(on_curve(m, &a));
    assert_eq!(add(m, &a, &SectionPoint::Zero), a);
    assert_eq!(add(m, &a, &negate(m, &a)), SectionPoint::Zero);
    // 2A is the 4-torsion point U = 1, V = 0
    assert_eq!(multiply(m, 2, &a), s.point("1", "0"));
    assert_eq!(torsion_order(m, &s.point("1", "0"), 12), Some(4));
    assert_eq!(torsion_order(m, &a, 12), Some(8));
    // the other multiples through X = −U(U−1)/V, Y = V/(U−1)
    let xy = |p: &SectionPoint| {
        let (x, y) = p.coords().unwrap();
        let (uu, vv) = (x / &s.u.pow(2), y / &s.u.pow(3));
        let one = RatFunc::one();
        (-&(&(&uu * &(&uu - &one)) / &vv), &vv / &(&uu - &one))
    };
    let want = [(1, "-t", "1"), (3, "1", "-1/t"), (4, "0", "0"), (5, "-1/t", "1"), (7, "1", "-t")];
    for (i, x, y) in want {
        let p = multiply(m, i, &a);
        if i == 4 {
            let (x4, y4) = p.coords().unwrap();
            assert!(x4.is_zero() && y4.is_zero());
            continue;
        }
        assert_eq!(xy(&p), (r(x), r(y)), "{i}A");
    }
}

#[test]
fn torsion_examples() {
    let k = k();
    assert_eq!(torsion_order(&k.model, &k.point("0", "0"), 12), Some(2));
    assert_eq!(torsion_order(&k.model, &k.point("t", "t"), 12), Some(4));
    assert_eq!(torsion_order(&k.model, &k.point("1", "0"), 12), None);
    let j = j();
    assert_eq!(torsion_order(&j.model, &j.point("0", "0"), 12), Some(3));
}

#[test]
fn component_indices_on_s() {
    let s = s();
    let sf = s.surface();
    let a = s.point("t", "t - 1");
    assert_eq!(sf.component_index(&place(&[0, 1]), &SectionPoint::Zero).unwrap(), 0);
    assert_eq!(sf.component_index(&place(&[0, 1]), &a).unwrap(), 3);
    for pl in [Place::Infinity, place(&[-1, 1]), place(&[1, 1])] {
        assert_eq!(sf.component_index(&pl, &a).unwrap(), 1, "{pl}");
    }
    // iA meets component 3i mod 8 at s = 0 and i mod n elsewhere, up to orientation
    let fold = |j: i64, n: i64| {
        let j = j.rem_euclid(n);
        j.min(n - j) as u32
    };
    for i in 1..8 {
        let p = multiply(&s.model, i, &a);
        assert_eq!(sf.component_index(&place(&[0, 1]), &p).unwrap(), fold(3 * i, 8), "{i}A at 0");
        assert_eq!(sf.component_index(&Place::Infinity, &p).unwrap(), fold(i, 8), "{i}A at ∞");
        assert_eq!(sf.component_index(&place(&[-1, 1]), &p).unwrap(), fold(i, 4), "{i}A at 1");
        assert_eq!(sf.component_index(&place(&[1, 1]), &p).unwrap(), fold(i, 2), "{i}A at −1");
    }
}

#[test]
fn height_examples() {
    let k = k();
    assert_eq!(k.surface().height(&k.point("1", "0")).unwrap(), rat_frac(4, 3));
    let t = t();
    assert_eq!(t.surface().height(&t.point("-t^3", "2*t^4")).unwrap(), rat_frac(1, 1));
    let a = a();
    assert_eq!(a.surface().height(&a.point("1/(1 + t)", "0")).unwrap(), rat_frac(1, 24));
    // torsion has height zero
    let s = s();
    let sf = s.surface();
    for i in 0..8 {
        assert_eq!(sf.height(&multiply(&s.model, i, &s.point("t", "t - 1"))).unwrap(), rat_frac(0, 1));
    }
    assert_eq!(k.surface().height(&k.point("t", "t")).unwrap(), rat_frac(0, 1));
}

#[test]
fn height_matrices() {
    let v = v();
    let hv = v.surface().height_matrix(&[v.point("0", "t^3"), v.point("t", "0")]).unwrap();
    assert_eq!(determinant(&hv), rat_frac(1, 10));
    let l = l();
    let hl = l.surface().height_matrix(&[l.point("-t^3", "0"), l.point("-t^2", "0")]).unwrap();
    assert_eq!(determinant(&hl), rat_frac(1, 5));
    // two independent sections on n: (1 ± t, 1); fibers A1 A15 force a regulator of 1/4
    let n = n();
    let pts = [n.point("1 + t", "1"), n.point("1 - t", "1")];
    assert!(pts.iter().all(|p| on_curve(&n.model, p)));
    assert!(!on_curve(&n.model, &n.point("1 + t", "0")));
    let hn = n.surface().height_matrix(&pts).unwrap();
    assert_eq!(determinant(&hn), rat_frac(1, 4));
    let fs = all_fibers(&n.model).unwrap();
    assert_eq!(reducible_root_types(&fs), ["A1", "A15"]);
}

#[test]
fn local_terms_are_self_consistent() {
    for m in [k(), a(), v(), l(), t(), h(), c()] {
        let sf = m.surface();
        for lm in &sf.locals {
            if !lm.kodaira_type.is_reducible() {
                continue;
            }
            let f = lm.fiber();
            assert_eq!(contr_from_index(f.kodaira_type, 0), Some(rat_frac(0, 1)));
        }
    }
    let k = k();
    let sf = k.surface();
    let p = k.point("1", "0");
    for term in sf.local_terms(&p).unwrap() {
        assert_eq!(contr_from_index(term.kodaira_type, term.component), Some(term.contr.clone()));
        assert_eq!(sf.component_index(&term.place, &p).unwrap(), term.component);
    }
}
