use std::collections::HashSet;

use k3fib_exact::{rat, rat_frac, rational_kernel, ratvec, IntMatrix, RatMatrix, RatVector};
use k3fib_lattice::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

fn all_types() -> Vec<DynkinType> {
    let mut v = Vec::new();
    for n in 1..=24 {
        v.push(DynkinType::new(Family::A, n));
    }
    for n in 4..=24 {
        v.push(DynkinType::new(Family::D, n));
    }
    for n in 6..=8 {
        v.push(DynkinType::new(Family::E, n));
    }
    v
}

fn rl(t: DynkinType) -> RootLattice {
    make_root_lattice(t.family, t.n).unwrap()
}

fn scale(v: &RatVector, k: i64) -> RatVector {
    v.iter().map(|x| x * rat(k)).collect()
}

fn is_integral(v: &RatVector) -> bool {
    v.iter().all(|x| x.is_integer())
}

#[test]
fn gram_is_negated_cartan() {
    for t in all_types() {
        let r = rl(t);
        let mut neg = t.cartan();
        for i in 0..t.n {
            for j in 0..t.n {
                neg[(i, j)] = -neg[(i, j)].clone();
            }
        }
        assert_eq!(r.lattice.gram(), &neg, "{t}");
        assert!(r.lattice.is_even() && r.lattice.is_negative_definite(), "{t}");
    }
}

#[test]
fn glue_vector_values() {
    for t in all_types() {
        let r = rl(t);
        let l = &r.lattice;
        let l_i = t.n as i64;
        for (name, g) in &r.glue {
            // in the dual
            let gg = RatMatrix::from_int(l.gram()).mul(&RatMatrix::from_rows(vec![g.clone()]).transpose());
            assert!((0..t.n).all(|i| gg[(i, 0)].is_integer()), "{t} {name} not in dual");
            let q = l.norm(g);
            let expected = match (t.family, *name) {
                (Family::A, "alpha") => rat_frac(-l_i, l_i + 1),
                (Family::D, "delta") | (Family::D, "delta_tilde") => rat_frac(-l_i, 4),
                (Family::D, "delta_bar") => rat(-1),
                (Family::E, "eta") if t.n == 6 => rat_frac(-4, 3),
                (Family::E, "eta") if t.n == 7 => rat_frac(-3, 2),
                _ => panic!("unexpected glue {name} on {t}"),
            };
            assert_eq!(q, expected, "q({name}) on {t}");
        }
        if t.family == Family::D {
            let d = r.glue_vector("delta").unwrap();
            let db = r.glue_vector("delta_bar").unwrap();
            let dt = r.glue_vector("delta_tilde").unwrap();
            assert_eq!(l.pairing(d, db), rat_frac(-1, 2), "b(δ, δ̄) on {t}");
            assert_eq!(l.pairing(db, dt), rat_frac(-1, 2), "b(δ̄, δ̃) on {t}");
            assert_eq!(l.pairing(d, dt), rat_frac(-(l_i - 2), 4), "b(δ, δ̃) on {t}");
            let diff = |a: &RatVector, b: &RatVector| a.iter().zip(b).map(|(x, y)| x - y).collect::<RatVector>();
            // δ̄ ≡ 2δ, and δ̃ ≡ 3δ for odd l; all order 2 for even l
            assert!(is_integral(&diff(&scale(d, 2), db)) || (l_i % 2 == 0 && is_integral(&scale(d, 2))), "{t}");
            if l_i % 2 == 1 {
                assert!(is_integral(&diff(&scale(d, 3), dt)), "δ̃ ≡ 3δ on {t}");
                assert!(is_integral(&diff(&scale(d, 2), db)), "δ̄ ≡ 2δ on {t}");
                assert!(!is_integral(&scale(d, 2)) && is_integral(&scale(d, 4)));
            } else {
                for g in [d, db, dt] {
                    assert!(is_integral(&scale(g, 2)));
                }
                let s: RatVector = d.iter().zip(db).map(|(x, y)| x + y).collect();
                assert!(is_integral(&diff(&s, dt)), "δ + δ̄ ≡ δ̃ on {t}");
            }
        }
    }
}

#[test]
fn discriminant_groups() {
    let dg = |t: &str| discriminant_group(&rl(t.parse().unwrap()).lattice).unwrap();
    assert!(dg("E8").is_trivial());
    let e7 = dg("E7");
    assert_eq!(e7.invariant_factors, vec![BigInt::from(2)]);
    assert_eq!(e7.q_values, vec![mod2(&rat_frac(-3, 2))]);
    let e6 = dg("E6");
    assert_eq!(e6.invariant_factors, vec![BigInt::from(3)]);
    // the generator may be ±η₆; both have q ≡ −4/3
    assert_eq!(e6.q_values, vec![mod2(&rat_frac(-4, 3))]);
    for l in 1..=12 {
        let d = dg(&format!("A{l}"));
        assert_eq!(d.order(), BigInt::from(l + 1));
    }
    for l in 4..=12 {
        let d = dg(&format!("D{l}"));
        if l % 2 == 0 {
            assert_eq!(d.invariant_factors, vec![BigInt::from(2), BigInt::from(2)]);
        } else {
            assert_eq!(d.invariant_factors, vec![BigInt::from(4)]);
        }
    }
    // q(n a) = n² q(a) and b(a, a') = ½(q(a + a') − q(a) − q(a')) mod 1
    for t in ["A5", "D6", "D7", "E6"] {
        let r = rl(t.parse().unwrap());
        let d = discriminant_group(&r.lattice).unwrap();
        for (i, a) in d.generators.iter().enumerate() {
            for k in 1..6i64 {
                assert_eq!(mod2(&r.lattice.norm(&scale(a, k))), mod2(&(rat(k * k) * &d.q_values[i])));
            }
            for (j, b) in d.generators.iter().enumerate() {
                let s: RatVector = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let half = (r.lattice.norm(&s) - r.lattice.norm(a) - r.lattice.norm(b)) / rat(2);
                assert_eq!(mod1(&half), d.b_table[i][j]);
            }
        }
    }
}

// Independent oracle: integer vectors of height ≤ 2 in the sum-zero plane with norm 2.
#[test]
fn a2_roots_by_brute_force() {
    let mut count = 0;
    for a in -2i64..=2 {
        for b in -2i64..=2 {
            let c = -a - b;
            if c.abs() <= 2 && a * a + b * b + c * c == 2 {
                count += 1;
            }
        }
    }
    assert_eq!(count, 6);
    let a2 = rl("A2".parse().unwrap());
    assert_eq!(roots(&a2.lattice).unwrap().len(), count);
    assert_eq!(a2.roots().len(), count);
}

// Independent oracle: E8 as the even coordinate system, vectors in ℤ⁸ ∪ (ℤ+½)⁸ with even sum.
#[test]
fn e8_roots_by_brute_force() {
    let mut count = 0;
    let mut idx = [0usize; 8];
    let int_vals = [-1i64, 0, 1];
    loop {
        let v: Vec<i64> = idx.iter().map(|&i| int_vals[i]).collect();
        if v.iter().map(|x| x * x).sum::<i64>() == 2 && v.iter().sum::<i64>() % 2 == 0 {
            count += 1;
        }
        let mut k = 0;
        while k < 8 {
            idx[k] += 1;
            if idx[k] < 3 {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == 8 {
            break;
        }
    }
    // half-integral: all coordinates ±1/2 (norm 2), doubled sum ≡ 0 mod 4
    for mask in 0u32..256 {
        let s: i64 = (0..8).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).sum();
        if s % 4 == 0 {
            count += 1;
        }
    }
    assert_eq!(count, 240);
    let e8 = rl("E8".parse().unwrap());
    assert_eq!(roots(&e8.lattice).unwrap().len(), 240);
}

#[test]
fn enumeration_matches_closed_form_and_weyl_counts() {
    let expected = |t: DynkinType| match t.family {
        Family::A => t.n * (t.n + 1),
        Family::D => 2 * t.n * (t.n - 1),
        Family::E => [72, 126, 240][t.n - 6],
    };
    for t in all_types().into_iter().filter(|t| t.n <= 10) {
        let r = rl(t);
        let by_fp = roots(&r.lattice).unwrap();
        let closed = r.roots();
        assert_eq!(by_fp.len(), expected(t), "{t}");
        assert_eq!(by_fp, closed, "{t}");
    }
}

#[test]
fn classify_inverts_construction() {
    for t in all_types().into_iter().filter(|t| t.n <= 12) {
        let r = rl(t);
        let d = classify_roots(&r.lattice).unwrap();
        assert_eq!(d.types(), vec![t]);
        let basis = d.components[0].simple_roots.clone();
        let g = IntMatrix::from_rows(basis.iter().map(|a| basis.iter().map(|b| r.lattice.gram().form_int(a, b)).collect()).collect());
        assert_eq!(&g, r.lattice.gram(), "simple roots of {t} come back in Bourbaki order");
    }
}

fn unit(n: usize, i: usize) -> RatVector {
    let mut v = vec![BigRational::zero(); n];
    v[i] = rat(1);
    v
}

#[test]
fn kernel_of_single_pairing_in_e8() {
    let e8 = rl("E8".parse().unwrap());
    let row: Vec<BigRational> = (0..8).map(|j| BigRational::from_integer(e8.lattice.gram()[(0, j)].clone())).collect();
    let k = rational_kernel(&RatMatrix::from_rows(vec![row]));
    assert_eq!(k.len(), 7);
}

#[test]
fn complements_of_small_sublattices() {
    let e8 = rl("E8".parse().unwrap());
    let a1 = orthogonal_complement(&e8.lattice, &[unit(8, 0)], "A1perp");
    assert_eq!(classify_roots(&a1).unwrap().label(), "E7");
    let d5: Vec<RatVector> = [1, 4, 3, 2, 0].iter().map(|&i| unit(8, i)).collect();
    let c = orthogonal_complement(&e8.lattice, &d5, "D5perp");
    assert_eq!(classify_roots(&c).unwrap().label(), "A3");

    let a7 = rl("A7".parse().unwrap());
    let c = orthogonal_complement(&a7.lattice, &[unit(7, 6)], "A1perp");
    assert_eq!(classify_roots(&c).unwrap().label(), "A5");
    assert_eq!(c.det(), BigInt::from(16));

    for l in 5..=10usize {
        let d = rl(DynkinType::new(Family::D, l));
        let c = orthogonal_complement(&d.lattice, &[unit(l, l - 1)], "A1perp");
        let expected = if l == 5 { "A1 A3".to_string() } else { format!("A1 D{}", l - 2) };
        assert_eq!(classify_roots(&c).unwrap().label(), expected, "D{l}");
    }

    let e7 = rl("E7".parse().unwrap());
    let m: Vec<RatVector> = [1, 4, 3, 2, 0, 6].iter().map(|&i| unit(7, i)).collect();
    let c = orthogonal_complement(&e7.lattice, &m, "Mperp");
    assert_eq!(c.gram(), &IntMatrix::from_i64(&[vec![-4]]));

    // full lattice → zero lattice
    let all: Vec<RatVector> = (0..7).map(|i| unit(7, i)).collect();
    assert_eq!(orthogonal_complement(&e7.lattice, &all, "0").rank(), 0);
}

#[test]
fn primitivity() {
    assert!(!is_primitive(1, &[ratvec(&[2])]));
    assert!(is_primitive(1, &[ratvec(&[1])]));
    assert!(is_primitive(7, &[unit(7, 6)]));
    let l = 9;
    let m: Vec<RatVector> = [l - 2, l - 1, l - 3, l - 4, l - 5, l - 7].iter().map(|&i| unit(l, i)).collect();
    assert!(is_primitive(l, &m));
}

#[test]
fn overlattices() {
    let d16 = rl("D16".parse().unwrap());
    let g = vec![("delta".to_string(), d16.glue_vector("delta").unwrap().clone())];
    let over = overlattice_from_glue(&d16.lattice, &g, "D16+").unwrap();
    assert_eq!(over.det(), BigInt::from(1));
    assert!(over.is_even());
    assert_eq!(overlattice_from_glue(&d16.lattice, &[], "D16").unwrap().det(), d16.lattice.det());

    // E7 ⊕ A1 glued by η₇ + α₁ recovers a unimodular lattice
    let e7 = rl("E7".parse().unwrap());
    let a1 = rl("A1".parse().unwrap());
    let sum = Lattice::direct_sum("E7A1", &[e7.lattice.clone(), a1.lattice.clone()]);
    let mut v = e7.glue_vector("eta").unwrap().clone();
    v.extend(a1.glue_vector("alpha").unwrap().iter().cloned());
    let over = overlattice_from_glue(&sum, &[("eta+alpha".into(), v)], "E8").unwrap();
    assert_eq!(sum.det(), BigInt::from(4));
    assert_eq!(over.det(), BigInt::from(1));
    assert_eq!(classify_roots(&over).unwrap().label(), "E8");

    // a non-isotropic vector is rejected with its name
    let d10 = rl("D10".parse().unwrap());
    let bad = overlattice_from_glue(&d10.lattice, &[("delta_bar".into(), d10.glue_vector("delta_bar").unwrap().clone())], "x");
    assert!(matches!(bad, Err(LatticeError::GlueNotEven { ref name, .. }) if name == "delta_bar"));
}

#[test]
fn canonical_root_orbit_is_everything() {
    for t in ["A2", "A4", "A6", "D4", "D5", "D6"] {
        let r = rl(t.parse().unwrap());
        let n = r.ty.n;
        let g = r.lattice.gram();
        let simple: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect()).collect();
        let start = simple[n - 1].clone();
        let mut seen: HashSet<Vec<BigInt>> = HashSet::from([start.clone()]);
        let mut frontier = vec![start];
        while let Some(x) = frontier.pop() {
            for e in &simple {
                let y = reflect(g, &x, e);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let all: HashSet<Vec<BigInt>> = r.roots().into_iter().collect();
        assert_eq!(seen, all, "{t}");
    }
}
