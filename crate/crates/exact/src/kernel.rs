use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::hnf::row_lattice_basis;
use crate::matrix::{IntMatrix, RatMatrix};
use crate::rat::{lcm_of_denominators, RatVector};
use crate::snf::smith_normal_form;

/// A ℚ-basis of `{v : m v = 0}`.
pub fn rational_kernel(m: &RatMatrix) -> Vec<RatVector> {
    let mut a = m.clone();
    let pivots = a.rref();
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -a[(r, f)].clone();
            }
            v
        })
        .collect()
}

/// ℤ-basis (in Hermite form) of `span_ℚ(sub) ∩ ℤ^n`.
pub fn saturate(sub: &[RatVector], ambient_rank: usize) -> Vec<Vec<BigInt>> {
    let rows: Vec<Vec<BigInt>> = sub
        .iter()
        .map(|v| {
            assert_eq!(v.len(), ambient_rank, "vector length does not match ambient rank");
            let l = BigRational::from_integer(lcm_of_denominators(v));
            v.iter().map(|x| (x * &l).to_integer()).collect()
        })
        .collect();
    if rows.is_empty() {
        return Vec::new();
    }
    let b = IntMatrix::from_rows_with_cols(rows, ambient_rank);
    let s = smith_normal_form(&b);
    // u b v = d, so span(b) = span of the first r rows of v⁻¹.
    let basis: Vec<Vec<BigInt>> = (0..s.rank()).map(|i| s.v_inv.row(i).to_vec()).collect();
    row_lattice_basis(&basis, ambient_rank)
}

/// ℤ-basis (in Hermite form) of `{x ∈ ℤ^n : m x = 0}`.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let n = m.cols();
    if m.rows() == 0 {
        return (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect()).collect();
    }
    let s = smith_normal_form(m);
    let r = s.rank();
    let basis: Vec<Vec<BigInt>> = (r..n).map(|j| (0..n).map(|i| s.v[(i, j)].clone()).collect()).collect();
    row_lattice_basis(&basis, n)
}

/// Coefficients `c` with `c · basis = x`, if `x` lies in the ℚ-span of the rows.
pub fn solve_in_basis(basis: &[RatVector], x: &[BigRational]) -> Option<RatVector> {
    let k = basis.len();
    let n = x.len();
    // Augmented system basisᵀ c = x.
    let mut aug = RatMatrix::zeros(n, k + 1);
    for (i, b) in basis.iter().enumerate() {
        for j in 0..n {
            aug[(j, i)] = b[j].clone();
        }
    }
    for j in 0..n {
        aug[(j, k)] = x[j].clone();
    }
    let pivots = aug.rref();
    if pivots.contains(&k) {
        return None;
    }
    let mut c = vec![BigRational::zero(); k];
    for (r, &p) in pivots.iter().enumerate() {
        c[p] = aug[(r, k)].clone();
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::ratvec;
    use num_traits::Signed;

    #[test]
    fn kernel_of_zero_and_full_rank() {
        assert_eq!(rational_kernel(&RatMatrix::zeros(2, 2)).len(), 2);
        let m = RatMatrix::from_int(&IntMatrix::from_i64(&[vec![1, 2], vec![3, 4]]));
        assert!(rational_kernel(&m).is_empty());
    }

    #[test]
    fn saturation_scaling_and_index_two() {
        assert_eq!(saturate(&[ratvec(&[2, 0])], 2), vec![vec![BigInt::from(1), BigInt::from(0)]]);
        let s = saturate(&[ratvec(&[1, 1]), ratvec(&[1, -1])], 2);
        assert_eq!(IntMatrix::from_rows(s).det().abs(), BigInt::from(1));
    }

    #[test]
    fn integer_kernel_is_primitive() {
        let m = IntMatrix::from_i64(&[vec![2, 4, 6]]);
        let k = integer_kernel(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.row(0).iter().zip(v).map(|(a, b)| a * b).sum::<BigInt>().is_zero());
        }
        let target = ratvec(&[1, -2, 1]);
        let basis: Vec<RatVector> = k.iter().map(|v| v.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
        let c = solve_in_basis(&basis, &target).unwrap();
        assert!(c.iter().all(|x| x.is_integer()));
        assert_eq!(solve_in_basis(&basis, &ratvec(&[1, 0, 0])), None);
    }
}
