use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::matrix::IntMatrix;
use crate::rat::lcm_of_denominators;

/// Row-style Hermite normal form of the lattice spanned by the rows of `m`.
///
/// Returns only the nonzero rows: pivots positive, entries above each pivot
/// reduced into `[0, pivot)`.
pub fn hermite_normal_form(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !a[(i, c)].is_zero() && best.is_none_or(|b| a[(i, c)].abs() < a[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(p) = best else { break };
            a.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = a[(i, c)].div_floor(&a[(r, c)]);
                a.add_row_multiple(i, r, &-q);
                if !a[(i, c)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            a.negate_row(r);
        }
        for i in 0..r {
            let q = a[(i, c)].div_floor(&a[(r, c)]);
            a.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    IntMatrix::from_rows_with_cols(a.to_rows().into_iter().take(r).collect(), cols)
}

/// HNF basis of the ℤ-span of integer generators.
pub fn row_lattice_basis(gens: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    hermite_normal_form(&IntMatrix::from_rows_with_cols(gens.to_vec(), cols)).to_rows()
}

/// HNF basis of the ℤ-span of rational generators.
pub fn row_lattice_basis_rat(gens: &[Vec<BigRational>], cols: usize) -> Vec<Vec<BigRational>> {
    let l = lcm_of_denominators(gens.iter().flatten());
    let scaled: Vec<Vec<BigInt>> =
        gens.iter().map(|g| g.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()).collect();
    row_lattice_basis(&scaled, cols).into_iter().map(|r| r.into_iter().map(|x| BigRational::new(x, l.clone())).collect()).collect()
}
