use k3fib_exact::*;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn matrix(max_r: usize, max_c: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_r, 1..=max_c).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-bound..=bound, c), r).prop_map(|rows| IntMatrix::from_i64(&rows))
    })
}

fn matrix_with_cols(max_r: usize, c: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_r).prop_flat_map(move |r| {
        proptest::collection::vec(proptest::collection::vec(-bound..=bound, c), r).prop_map(|rows| IntMatrix::from_i64(&rows))
    })
}

fn to_rat(v: &[BigInt]) -> RatVector {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

// d_1 ⋯ d_k = gcd of all k×k minors.
fn determinantal_divisors(m: &IntMatrix) -> Vec<BigInt> {
    let mut out = Vec::new();
    for k in 1..=m.rows().min(m.cols()) {
        let mut g = BigInt::zero();
        for rs in combinations(m.rows(), k) {
            for cs in combinations(m.cols(), k) {
                let sub = IntMatrix::from_rows(rs.iter().map(|&i| cs.iter().map(|&j| m[(i, j)].clone()).collect()).collect());
                g = g.gcd(&sub.det());
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(g);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn snf_round_trip_and_chain(m in matrix(5, 5, 9)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
        prop_assert!(s.u.det().abs().is_one());
        prop_assert!(s.v.det().abs().is_one());
        prop_assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols()));
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        let d = s.diagonal();
        for w in d.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        prop_assert!(d.iter().all(|x| x.is_positive()));
        prop_assert_eq!(d.len(), m.rank());
    }

    #[test]
    fn snf_matches_determinantal_divisors(m in matrix(4, 4, 6)) {
        let d = smith_normal_form(&m).diagonal();
        let dd = determinantal_divisors(&m);
        prop_assert_eq!(d.len(), dd.len());
        let mut prod = BigInt::one();
        for (x, g) in d.iter().zip(&dd) {
            prod *= x;
            prop_assert_eq!(&prod, g);
        }
    }

    #[test]
    fn snf_of_square_gram_has_product_det(m in matrix(4, 4, 5)) {
        // symmetric Gram
        let g = m.transpose().mul(&m);
        let det = g.det().abs();
        let s = smith_normal_form(&g);
        if !det.is_zero() {
            let p: BigInt = s.diagonal().iter().product();
            prop_assert_eq!(p, det);
        }
    }

    #[test]
    fn saturation_span_idempotence_primitivity(m in matrix(4, 5, 6)) {
        let n = m.cols();
        let sub: Vec<RatVector> = m.to_rows().iter().map(|r| to_rat(r)).collect();
        let sat = saturate(&sub, n);
        prop_assert_eq!(sat.len(), m.rank());
        let sat_rat: Vec<RatVector> = sat.iter().map(|r| to_rat(r)).collect();
        // same ℚ-span, and the input is an integer combination of the output
        for v in &sub {
            let c = solve_in_basis(&sat_rat, v);
            prop_assert!(c.is_some());
            prop_assert!(c.unwrap().iter().all(|x| x.is_integer()));
        }
        for v in &sat_rat {
            prop_assert!(solve_in_basis(&sub, v).is_some() || sub.iter().all(|r| r.iter().all(Zero::is_zero)));
        }
        // primitive: all invariant factors of the basis are 1
        if !sat.is_empty() {
            let s = smith_normal_form(&IntMatrix::from_rows(sat.clone()));
            prop_assert!(s.diagonal().iter().all(|x| x.is_one()));
        }
        // idempotent
        prop_assert_eq!(saturate(&sat_rat, n), sat.clone());
    }

    #[test]
    fn saturation_matches_box_enumeration(m in matrix_with_cols(2, 3, 4)) {
        let sub: Vec<RatVector> = m.to_rows().iter().map(|r| to_rat(r)).collect();
        let sat = saturate(&sub, 3);
        if sat.is_empty() {
            return Ok(());
        }
        let sat_rat: Vec<RatVector> = sat.iter().map(|r| to_rat(r)).collect();
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for c in -3i64..=3 {
                    let p = ratvec(&[a, b, c]);
                    let in_span = solve_in_basis(&sub, &p).is_some();
                    if in_span {
                        let coeffs = solve_in_basis(&sat_rat, &p).unwrap();
                        prop_assert!(coeffs.iter().all(|x| x.is_integer()), "{:?} not reached", p);
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix(4, 5, 5)) {
        let r = RatMatrix::from_int(&m);
        let k = rational_kernel(&r);
        prop_assert_eq!(k.len(), m.cols() - m.rank());
        for v in &k {
            for i in 0..m.rows() {
                let s: BigRational = (0..m.cols()).map(|j| &r[(i, j)] * &v[j]).sum();
                prop_assert!(s.is_zero());
            }
        }
        let ik = integer_kernel(&m);
        prop_assert_eq!(ik.len(), k.len());
        prop_assert_eq!(saturate(&k, m.cols()), ik);
    }

    #[test]
    fn hnf_preserves_lattice(m in matrix(5, 4, 7)) {
        let h = hermite_normal_form(&m);
        let hr: Vec<RatVector> = h.to_rows().iter().map(|r| to_rat(r)).collect();
        for row in m.to_rows() {
            let c = solve_in_basis(&hr, &to_rat(&row));
            prop_assert!(c.is_some() && c.unwrap().iter().all(|x| x.is_integer()));
        }
        // covolume: det(H Hᵀ) = (Π d_i)² det(S Sᵀ) with S a basis of the saturation
        let mr: Vec<RatVector> = m.to_rows().iter().map(|r| to_rat(r)).collect();
        let sat = IntMatrix::from_rows_with_cols(saturate(&mr, m.cols()), m.cols());
        prop_assert_eq!(h.rows(), sat.rows());
        let idx: BigInt = smith_normal_form(&m).diagonal().iter().product();
        prop_assert_eq!(h.mul(&h.transpose()).det(), &idx * &idx * sat.mul(&sat.transpose()).det());
        // the pivots are positive and above-pivot entries reduced
        let mut last = None;
        for i in 0..h.rows() {
            let p = (0..h.cols()).find(|&j| !h[(i, j)].is_zero()).unwrap();
            prop_assert!(h[(i, p)].is_positive());
            prop_assert!(last.is_none_or(|l| p > l));
            for k in 0..i {
                prop_assert!(!h[(k, p)].is_negative() && h[(k, p)] < h[(i, p)]);
            }
            last = Some(p);
        }
    }
}
