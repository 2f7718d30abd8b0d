use k3fib_exact::{smith_normal_form, RatVector};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::LatticeError;
use crate::lattice::Lattice;

/// Representative of `q` in `[0, 1)`.
pub fn mod1(q: &BigRational) -> BigRational {
    q - BigRational::from_integer(q.floor().to_integer())
}

/// Representative of `q` in `[0, 2)`.
pub fn mod2(q: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let k = (q / &two).floor();
    q - k * two
}

/// `L*/L` with its discriminant bilinear and quadratic forms.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    pub invariant_factors: Vec<BigInt>,
    /// Elements of L* in L-basis coordinates, one per invariant factor.
    pub generators: Vec<RatVector>,
    /// q(g_i) mod 2.
    pub q_values: Vec<BigRational>,
    /// b(g_i, g_j) mod 1.
    pub b_table: Vec<Vec<BigRational>>,
}

impl DiscriminantGroup {
    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }
}

/// Discriminant group from the Smith form `U G V = D`: the generators are the
/// columns of `V` divided by the matching diagonal entries.
pub fn discriminant_group(l: &Lattice) -> Result<DiscriminantGroup, LatticeError> {
    let g = l.gram();
    if g.det().is_zero() {
        return Err(LatticeError::Degenerate);
    }
    let s = smith_normal_form(g);
    let n = l.rank();
    let mut invariant_factors = Vec::new();
    let mut generators = Vec::new();
    for i in 0..n {
        let d = &s.d[(i, i)];
        if d.is_one() {
            continue;
        }
        invariant_factors.push(d.clone());
        generators.push((0..n).map(|r| BigRational::new(s.v[(r, i)].clone(), d.clone())).collect::<RatVector>());
    }
    let q_values = generators.iter().map(|x| mod2(&l.norm(x))).collect();
    let b_table = generators.iter().map(|x| generators.iter().map(|y| mod1(&l.pairing(x, y))).collect()).collect();
    Ok(DiscriminantGroup { invariant_factors, generators, q_values, b_table })
}

/// Whether `x` (L-coordinates) lies in the dual lattice.
pub(crate) fn in_dual(l: &Lattice, x: &[BigRational]) -> bool {
    let g = l.gram();
    (0..l.rank()).all(|i| {
        let mut s = BigRational::zero();
        for j in 0..l.rank() {
            if !g[(i, j)].is_zero() {
                s += &x[j] * BigRational::from_integer(g[(i, j)].clone());
            }
        }
        s.is_integer()
    })
}

#[allow(dead_code)]
pub(crate) fn is_even_integer(q: &BigRational) -> bool {
    q.is_integer() && q.to_integer().is_even()
}

#[cfg(test)]
mod tests {
    use super::*;
    use k3fib_exact::{rat, rat_frac, IntMatrix};

    #[test]
    fn reductions() {
        assert_eq!(mod2(&rat_frac(-3, 2)), rat_frac(1, 2));
        assert_eq!(mod2(&rat(-4)), rat(0));
        assert_eq!(mod1(&rat_frac(-1, 3)), rat_frac(2, 3));
    }

    #[test]
    fn a1_and_transcendental() {
        let a1 = Lattice::new("A1", IntMatrix::from_i64(&[vec![-2]])).unwrap();
        let d = discriminant_group(&a1).unwrap();
        assert_eq!(d.invariant_factors, vec![BigInt::from(2)]);
        assert_eq!(d.q_values, vec![rat_frac(3, 2)]);
        let t = Lattice::new("T", IntMatrix::from_i64(&[vec![2, 0], vec![0, 4]])).unwrap();
        let d = discriminant_group(&t).unwrap();
        assert_eq!(d.order(), BigInt::from(8));
        let degenerate = Lattice::new("z", IntMatrix::from_i64(&[vec![0]])).unwrap();
        assert!(discriminant_group(&degenerate).is_err());
    }
}
