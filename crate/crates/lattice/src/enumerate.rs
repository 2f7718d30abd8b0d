use k3fib_exact::{IntMatrix, RatVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::LatticeError;
use crate::lattice::Lattice;

// Q(x) = Σ_i q[i][i] (x_i + Σ_{j>i} q[i][j] x_j)²
fn quadratic_decomposition(a: &IntMatrix) -> Vec<Vec<BigRational>> {
    let n = a.rows();
    let mut q: Vec<Vec<BigRational>> = (0..n).map(|i| (0..n).map(|j| BigRational::from_integer(a[(i, j)].clone())).collect()).collect();
    for i in 0..n {
        for k in 0..i {
            let qk = q[k][k].clone();
            let qki = q[k][i].clone();
            q[i][i] -= &qk * &qki * &qki;
        }
        assert!(q[i][i].is_positive(), "form is not positive definite");
        for j in i + 1..n {
            let mut s = q[i][j].clone();
            for k in 0..i {
                s -= &q[k][k] * &q[k][i] * &q[k][j];
            }
            q[i][j] = s / &q[i][i];
        }
    }
    q
}

struct Search<'a> {
    q: &'a [Vec<BigRational>],
    shift: &'a [BigRational],
    bound: &'a BigRational,
    y: Vec<BigRational>,
    out: Vec<RatVector>,
}

impl Search<'_> {
    fn level(&mut self, i: usize, remaining: BigRational) {
        let n = self.y.len();
        let mut center = BigRational::zero();
        for j in i + 1..n {
            if !self.q[i][j].is_zero() {
                center -= &self.q[i][j] * &self.y[j];
            }
        }
        let r = &remaining / &self.q[i][i];
        let m = &center - &self.shift[i];
        let fits = |x: &BigInt| {
            let d = BigRational::from_integer(x.clone()) - &m;
            &d * &d <= r
        };
        let start = m.floor().to_integer();
        let mut xs = Vec::new();
        let mut x = start.clone();
        while fits(&x) {
            xs.push(x.clone());
            x -= 1;
        }
        let mut x = start + 1;
        while fits(&x) {
            xs.push(x.clone());
            x += 1;
        }
        for x in xs {
            let yi = BigRational::from_integer(x) + &self.shift[i];
            let d = &yi - &center;
            let rem = &remaining - &self.q[i][i] * &d * &d;
            self.y[i] = yi;
            if i == 0 {
                self.out.push(self.y.clone());
            } else {
                self.level(i - 1, rem);
            }
        }
        self.y[i] = BigRational::zero();
    }
}

fn enumerate(form: &IntMatrix, shift: &[BigRational], bound: &BigRational) -> Vec<RatVector> {
    let n = form.rows();
    if n == 0 {
        return vec![vec![]];
    }
    let q = quadratic_decomposition(form);
    let mut s = Search { q: &q, shift, bound, y: vec![BigRational::zero(); n], out: Vec::new() };
    let b = s.bound.clone();
    s.level(n - 1, b);
    s.out
}

/// All nonzero `x ∈ ℤⁿ` with `xᵀ A x ≤ bound`, for a positive definite `A`.
pub fn short_vectors(form: &IntMatrix, bound: &BigRational) -> Vec<Vec<BigInt>> {
    let zero = vec![BigRational::zero(); form.rows()];
    let mut out: Vec<Vec<BigInt>> = enumerate(form, &zero, bound)
        .into_iter()
        .map(|v| v.into_iter().map(|x| x.to_integer()).collect::<Vec<_>>())
        .filter(|v: &Vec<BigInt>| v.iter().any(|x| !x.is_zero()))
        .collect();
    out.sort();
    out
}

/// All `y ∈ shift + ℤⁿ` with `yᵀ A y ≤ bound`, for a positive definite `A`.
pub fn short_vectors_in_coset(form: &IntMatrix, shift: &[BigRational], bound: &BigRational) -> Vec<RatVector> {
    let mut out = enumerate(form, shift, bound);
    out.sort();
    out
}

/// Pairwise size reduction of a positive definite form: returns the reduced
/// form and the integer transform `T` (new basis = T · old basis).
pub fn size_reduce(form: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let n = form.rows();
    let mut a = form.clone();
    let mut t = IntMatrix::identity(n);
    loop {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if i == j || a[(j, j)].is_zero() {
                    continue;
                }
                let num = &a[(i, j)];
                let den = &a[(j, j)];
                // nearest integer to num/den
                let mu = (BigInt::from(2) * num + den).div_floor(&(BigInt::from(2) * den));
                if mu.is_zero() {
                    continue;
                }
                // b_i <- b_i - mu b_j: strictly shorter when |2 num| > den
                if (BigInt::from(2) * num).abs() <= *den {
                    continue;
                }
                let neg = -&mu;
                t.add_row_multiple(i, j, &neg);
                a.add_row_multiple(i, j, &neg);
                a.add_col_multiple(i, j, &neg);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (a, t)
}

/// Roots (vectors of norm −2) of a negative definite lattice, in lattice coordinates.
pub fn roots(l: &Lattice) -> Result<Vec<Vec<BigInt>>, LatticeError> {
    if !l.is_negative_definite() {
        return Err(LatticeError::NotNegativeDefinite);
    }
    let n = l.rank();
    let mut pos = l.gram().clone();
    for i in 0..n {
        for j in 0..n {
            pos[(i, j)] = -pos[(i, j)].clone();
        }
    }
    let (reduced, t) = size_reduce(&pos);
    let two = BigRational::from_integer(BigInt::from(2));
    let mut out: Vec<Vec<BigInt>> = short_vectors(&reduced, &two)
        .into_iter()
        .filter(|x| reduced.form_int(x, x) == BigInt::from(2))
        .map(|x| IntMatrix::from_rows(vec![x]).mul(&t).row(0).to_vec())
        .collect();
    out.sort();
    debug_assert!(out.iter().all(|x| l.gram().form_int(x, x) == -BigInt::from(2)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use k3fib_exact::rat_frac;

    #[test]
    fn a2_has_six_roots() {
        let a2 = Lattice::new("A2", IntMatrix::from_i64(&[vec![-2, 1], vec![1, -2]])).unwrap();
        assert_eq!(roots(&a2).unwrap().len(), 6);
    }

    #[test]
    fn minus_four_has_none() {
        let l = Lattice::new("<-4>", IntMatrix::from_i64(&[vec![-4]])).unwrap();
        assert!(roots(&l).unwrap().is_empty());
    }

    #[test]
    fn coset_minimum_of_a1_dual() {
        // 1/2 + ℤ in ⟨2⟩: norms 2·(1/4) = 1/2 at ±1/2
        let f = IntMatrix::from_i64(&[vec![2]]);
        let v = short_vectors_in_coset(&f, &[rat_frac(1, 2)], &rat_frac(1, 2));
        assert_eq!(v.len(), 2);
    }

    #[test]
    fn size_reduction_keeps_lattice() {
        let f = IntMatrix::from_i64(&[vec![2, 7], vec![7, 26]]);
        let (r, t) = size_reduce(&f);
        assert_eq!(t.mul(&f).mul(&t.transpose()), r);
        assert_eq!(t.det().abs(), BigInt::from(1));
        assert!(r[(1, 1)] < BigInt::from(26));
    }
}
