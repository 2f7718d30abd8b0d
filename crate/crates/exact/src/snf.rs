use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;

/// Smith normal form `u * m * v = d`, with `v_inv` the inverse of `v`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl Snf {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }

    /// Diagonal entries greater than one.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_one()).collect()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivot is always the entry of least absolute value in the active block; rows
/// and columns are cleared by Euclidean reduction against it. Invariant
/// factors come out positive.
pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let (r, c) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut v = IntMatrix::identity(c);
    let mut vi = IntMatrix::identity(c);

    let mut t = 0;
    while t < r.min(c) {
        let Some((pi, pj)) = smallest_in_block(&a, t, t) else {
            break;
        };
        move_pivot(&mut a, &mut u, &mut v, &mut vi, t, pi, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &-&q);
                u.add_row_multiple(i, t, &-&q);
                if !a[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                col_op(&mut a, &mut v, &mut vi, j, t, &-&q);
                if !a[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let (pi, pj) = smallest_in_cross(&a, t);
                move_pivot(&mut a, &mut u, &mut v, &mut vi, t, pi, pj);
                continue;
            }
            // Row and column are clear; enforce divisibility of the remaining block.
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[(i, j)].is_multiple_of(&a[(t, t)])));
            match bad {
                Some(i) => {
                    a.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Snf { d: a, u, v, v_inv: vi }
}

// col[dst] += q col[src] on a and v; the inverse row operation on v_inv.
fn col_op(a: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    a.add_col_multiple(dst, src, q);
    v.add_col_multiple(dst, src, q);
    vi.add_row_multiple(src, dst, &-q);
}

fn move_pivot(a: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, vi: &mut IntMatrix, t: usize, pi: usize, pj: usize) {
    a.swap_rows(t, pi);
    u.swap_rows(t, pi);
    a.swap_cols(t, pj);
    v.swap_cols(t, pj);
    vi.swap_rows(t, pj);
}

fn smallest_in_block(a: &IntMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in r0..a.rows() {
        for j in c0..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|b| ax < b.2) {
                let one = ax.is_one();
                best = Some((i, j, ax));
                if one {
                    return best.map(|b| (b.0, b.1));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

// Smallest nonzero entry in row t / column t (at or beyond the diagonal).
fn smallest_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t, a[(t, t)].abs());
    let mut consider = |i: usize, j: usize| {
        let x = a[(i, j)].abs();
        if !x.is_zero() && (best.2.is_zero() || x < best.2) {
            best = (i, j, x);
        }
    };
    for i in t..a.rows() {
        consider(i, t);
    }
    for j in t..a.cols() {
        consider(t, j);
    }
    (best.0, best.1)
}
