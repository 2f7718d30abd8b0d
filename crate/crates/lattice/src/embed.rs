use k3fib_exact::{integer_kernel, row_lattice_basis_rat, smith_normal_form, IntMatrix, RatVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::discriminant::in_dual;
use crate::error::LatticeError;
use crate::lattice::Lattice;

fn to_integer_row(v: &[BigRational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let lq = BigRational::from_integer(l);
    v.iter().map(|x| (x * &lq).to_integer()).collect()
}

/// `{x ∈ L : b(x, s) = 0 for all s}`, for `s` given in L-coordinates. The basis is
/// the saturated integer kernel of the pairing rows, so the result is primitive in L.
pub fn orthogonal_complement(l: &Lattice, s: &[RatVector], label: impl Into<String>) -> Lattice {
    let n = l.rank();
    let g = l.gram();
    let rows: Vec<Vec<BigInt>> = s
        .iter()
        .map(|v| {
            let p: Vec<BigRational> = (0..n).map(|j| (0..n).map(|i| &v[i] * BigRational::from_integer(g[(i, j)].clone())).sum()).collect();
            to_integer_row(&p)
        })
        .collect();
    let kernel = integer_kernel(&IntMatrix::from_rows_with_cols(rows, n));
    let basis: Vec<RatVector> = kernel.into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect();
    Lattice::sublattice(label, l, basis).expect("sublattice of an integral lattice is integral")
}

/// Whether the sublattice spanned by `s` (integral L-coordinates) has torsion-free quotient.
pub fn is_primitive(rank: usize, s: &[RatVector]) -> bool {
    if s.iter().flatten().any(|x| !x.is_integer()) {
        return false;
    }
    if s.is_empty() {
        return true;
    }
    let m = IntMatrix::from_rows_with_cols(s.iter().map(|v| v.iter().map(|x| x.to_integer()).collect()).collect(), rank);
    let snf = smith_normal_form(&m);
    snf.rank() == s.len() && snf.diagonal().iter().all(One::is_one)
}

/// The overlattice of `l` generated by named glue vectors (L-coordinates).
pub fn overlattice_from_glue(l: &Lattice, glue: &[(String, RatVector)], label: impl Into<String>) -> Result<Lattice, LatticeError> {
    for (name, g) in glue {
        if g.len() != l.rank() {
            return Err(LatticeError::Dimension(format!("glue vector {name} has length {}", g.len())));
        }
        if !in_dual(l, g) {
            return Err(LatticeError::GlueNotInDual { name: name.clone() });
        }
        let q = l.norm(g);
        if !(q.is_integer() && q.to_integer().is_even()) {
            return Err(LatticeError::GlueNotEven { name: name.clone(), norm: k3fib_exact::fmt_rat(&q) });
        }
    }
    for (i, (a, x)) in glue.iter().enumerate() {
        for (b, y) in &glue[i + 1..] {
            let v = l.pairing(x, y);
            if !v.is_integer() {
                return Err(LatticeError::GluePairing { a: a.clone(), b: b.clone(), value: k3fib_exact::fmt_rat(&v) });
            }
        }
    }
    let n = l.rank();
    let mut gens: Vec<RatVector> =
        (0..n).map(|i| (0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect()).collect();
    gens.extend(glue.iter().map(|(_, g)| g.clone()));
    let basis = row_lattice_basis_rat(&gens, n);
    let over = Lattice::sublattice(label, l, basis)?;
    debug_assert!(over.is_even());
    Ok(over)
}

/// Reflection in a root `e` of norm −2: `x ↦ x + b(x, e) e`.
pub fn reflect(gram: &IntMatrix, x: &[BigInt], e: &[BigInt]) -> Vec<BigInt> {
    let b = gram.form_int(x, e);
    x.iter().zip(e).map(|(xi, ei)| xi + &b * ei).collect()
}
