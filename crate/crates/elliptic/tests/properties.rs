mod common;

use common::*;
use k3fib_elliptic::*;
use k3fib_exact::rat_frac;
use num_traits::Zero;
use proptest::prelude::*;

fn small_poly(max_deg: usize) -> impl Strategy<Value = Poly> {
    proptest::collection::vec(-6i64..=6, 1..=max_deg + 1).prop_map(|c| Poly::from_i64(&c)).prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn factorization_reconstructs(ps in proptest::collection::vec(small_poly(3), 1..4), c in 1i64..5) {
        let f = ps.iter().fold(Poly::from_i64(&[c]), |a, b| &a * b);
        let fz = factor(&f);
        prop_assert_eq!(fz.expand(), f.clone());
        for (i, (g, e)) in fz.factors.iter().enumerate() {
            prop_assert!(g.deg() >= 1 && *e >= 1);
            prop_assert!(g.divides(&f));
            prop_assert!(g.pow(*e).divides(&f));
            prop_assert!(!g.pow(e + 1).divides(&f));
            for (h, _) in &fz.factors[i + 1..] {
                prop_assert!(Poly::gcd(g, h).is_one());
            }
        }
        // every input factor splits into the computed irreducibles
        for p in ps.iter().filter(|p| p.deg() >= 1) {
            let pieces: Vec<&Poly> = fz.factors.iter().map(|(g, _)| g).filter(|g| g.divides(p)).collect();
            prop_assert!(!pieces.is_empty());
        }
    }

    #[test]
    fn square_free_parts_are_square_free(ps in proptest::collection::vec(small_poly(2), 1..4)) {
        let f = ps.iter().fold(Poly::one(), |a, b| &a * b);
        for (g, _) in square_free_decomposition(&f) {
            prop_assert!(Poly::gcd(&g, &g.derivative()).is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn group_law_is_associative(a in -2i64..=2, b in -2i64..=2, c in -2i64..=2) {
        let v = v();
        let m = &v.model;
        let (p, q) = (v.point("0", "t^3"), v.point("t", "0"));
        let x = multiply(m, a, &p);
        let y = multiply(m, b, &q);
        let z = add(m, &multiply(m, c, &p), &q);
        prop_assert!(on_curve(m, &x) && on_curve(m, &y) && on_curve(m, &z));
        prop_assert_eq!(add(m, &add(m, &x, &y), &z), add(m, &x, &add(m, &y, &z)));
        prop_assert_eq!(add(m, &x, &y), add(m, &y, &x));
        prop_assert_eq!(sub(m, &add(m, &x, &y), &y), x);
    }

    #[test]
    fn height_is_quadratic(a in -2i64..=2, b in -2i64..=2) {
        let v = v();
        let m = &v.model;
        let sf = v.surface();
        let (p, q) = (v.point("0", "t^3"), v.point("t", "0"));
        let r = add(m, &multiply(m, a, &p), &multiply(m, b, &q));
        let (hp, hq, pq) = (sf.height(&p).unwrap(), sf.height(&q).unwrap(), sf.pairing(&p, &q).unwrap());
        let k = |n: i64| rat_frac(n, 1);
        let want = &(&(&k(a * a) * &hp) + &(&k(2 * a * b) * &pq)) + &(&k(b * b) * &hq);
        let h = sf.height(&r).unwrap();
        prop_assert_eq!(&h, &want);
        prop_assert!(h >= rat_frac(0, 1));
        prop_assert_eq!(h.is_zero(), a == 0 && b == 0);
    }

    #[test]
    fn torsion_has_height_zero(i in 0i64..8, j in 0i64..4) {
        let s = s();
        let sf = s.surface();
        let a = multiply(&s.model, i, &s.point("t", "t - 1"));
        prop_assert!(sf.height(&a).unwrap().is_zero());
        let k = k();
        let b = multiply(&k.model, j, &k.point("t", "t"));
        prop_assert!(k.surface().height(&b).unwrap().is_zero());
        let h1 = k.surface().height(&add(&k.model, &b, &k.point("1", "0"))).unwrap();
        prop_assert_eq!(h1, rat_frac(4, 3));
    }
}
