use std::fmt;
use std::str::FromStr;

use k3fib_exact::{rat, rat_frac, IntMatrix, RatMatrix, RatVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::LatticeError;
use crate::lattice::Lattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DynkinType {
    pub family: Family,
    pub n: usize,
}

impl DynkinType {
    pub const fn new(family: Family, n: usize) -> Self {
        DynkinType { family, n }
    }

    pub fn is_valid(&self) -> bool {
        match self.family {
            Family::A => self.n >= 1,
            Family::D => self.n >= 4,
            Family::E => (6..=8).contains(&self.n),
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Number of roots.
    pub fn root_count(&self) -> usize {
        let n = self.n;
        match (self.family, n) {
            (Family::A, _) => n * (n + 1),
            (Family::D, _) => 2 * n * (n - 1),
            (Family::E, 6) => 72,
            (Family::E, 7) => 126,
            (Family::E, 8) => 240,
            _ => unreachable!("invalid type"),
        }
    }

    /// |det| of the root lattice.
    pub fn det(&self) -> u64 {
        match self.family {
            Family::A => self.n as u64 + 1,
            Family::D => 4,
            Family::E => 9 - self.n as u64,
        }
    }

    /// Edges of the Dynkin diagram on simple roots indexed from 0 (Bourbaki order).
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        match self.family {
            Family::A => (1..n).map(|i| (i - 1, i)).collect(),
            Family::D => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                let mut e = vec![(0, 2), (2, 3), (3, 4), (1, 3)];
                e.extend((5..n).map(|i| (i - 1, i)));
                e
            }
        }
    }

    pub fn cartan(&self) -> IntMatrix {
        let mut c = IntMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            c[(i, i)] = BigInt::from(2);
        }
        for (i, j) in self.edges() {
            c[(i, j)] = BigInt::from(-1);
            c[(j, i)] = BigInt::from(-1);
        }
        c
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        };
        write!(f, "{c}{}", self.n)
    }
}

impl FromStr for DynkinType {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let c = chars.next().ok_or_else(|| LatticeError::Parse("empty Dynkin label".into()))?;
        let n: usize = chars.as_str().parse().map_err(|_| LatticeError::Parse(format!("bad Dynkin label {s:?}")))?;
        let family = match c {
            'A' => Family::A,
            'D' => Family::D,
            'E' => Family::E,
            _ => return Err(LatticeError::Parse(format!("bad Dynkin label {s:?}"))),
        };
        let t = DynkinType::new(family, n);
        if !t.is_valid() {
            return Err(LatticeError::InvalidRootType(c, n));
        }
        Ok(t)
    }
}

/// A root lattice in simple-root coordinates, with its Euclidean realization and named glue vectors.
#[derive(Clone, Debug)]
pub struct RootLattice {
    pub ty: DynkinType,
    pub lattice: Lattice,
    /// Simple roots as vectors of the positive-definite coordinate space.
    pub realization: Vec<RatVector>,
    /// (name, simple-root coordinates) for each named dual-lattice vector.
    pub glue: Vec<(&'static str, RatVector)>,
}

impl RootLattice {
    pub fn glue_vector(&self, name: &str) -> Option<&RatVector> {
        self.glue.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }

    /// All roots, in simple-root coordinates, from the closed-form description of the realization.
    pub fn roots(&self) -> Vec<Vec<BigInt>> {
        let dim = self.realization[0].len();
        let candidates = euclidean_roots(self.ty, dim);
        let b = RatMatrix::from_rows(self.realization.clone());
        let gram = b.mul(&b.transpose());
        let proj = b.transpose().mul(&gram.inverse().expect("simple roots are independent"));
        let mut out = Vec::new();
        for x in candidates {
            let xm = RatMatrix::from_rows(vec![x.clone()]);
            let c = xm.mul(&proj);
            // keep x only if it lies in the span
            if c.mul(&b).row(0) != x.as_slice() {
                continue;
            }
            let coords: Option<Vec<BigInt>> = c.row(0).iter().map(|q| q.is_integer().then(|| q.to_integer())).collect();
            out.push(coords.expect("root in span has integral simple-root coordinates"));
        }
        out.sort();
        out
    }
}

fn unit(dim: usize, i: usize) -> RatVector {
    let mut v = vec![BigRational::zero(); dim];
    v[i] = rat(1);
    v
}

fn sub(a: &RatVector, b: &RatVector) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &RatVector, b: &RatVector) -> RatVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn euclidean_roots(ty: DynkinType, dim: usize) -> Vec<RatVector> {
    let mut out = Vec::new();
    match ty.family {
        Family::A => {
            for i in 0..dim {
                for j in 0..dim {
                    if i != j {
                        out.push(sub(&unit(dim, i), &unit(dim, j)));
                    }
                }
            }
        }
        Family::D | Family::E => {
            for i in 0..dim {
                for j in i + 1..dim {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let mut v = vec![BigRational::zero(); dim];
                        v[i] = rat(si);
                        v[j] = rat(sj);
                        out.push(v);
                    }
                }
            }
            if ty.family == Family::E {
                for mask in 0u32..256 {
                    if mask.count_ones() % 2 == 0 {
                        out.push((0..8).map(|k| if mask >> k & 1 == 1 { rat_frac(-1, 2) } else { rat_frac(1, 2) }).collect());
                    }
                }
            }
        }
    }
    out
}

fn realization(ty: DynkinType) -> Vec<RatVector> {
    let n = ty.n;
    match ty.family {
        Family::A => (0..n).map(|i| sub(&unit(n + 1, i), &unit(n + 1, i + 1))).collect(),
        Family::D => {
            let mut v: Vec<RatVector> = (0..n - 1).map(|i| sub(&unit(n, i), &unit(n, i + 1))).collect();
            v.push(add(&unit(n, n - 2), &unit(n, n - 1)));
            v
        }
        Family::E => {
            let h = rat_frac(1, 2);
            let mut e1 = vec![-h.clone(); 8];
            e1[0] = h.clone();
            e1[7] = h;
            let mut v = vec![e1, add(&unit(8, 0), &unit(8, 1))];
            for i in 3..=n {
                v.push(sub(&unit(8, i - 2), &unit(8, i - 3)));
            }
            v
        }
    }
}

fn glue_vectors(ty: DynkinType) -> Vec<(&'static str, RatVector)> {
    let l = ty.n as i64;
    match ty.family {
        Family::A => vec![("alpha", (1..=l).map(|j| rat_frac(l - j + 1, l + 1)).collect())],
        Family::D => {
            let head: RatVector = (1..=l - 2).map(|i| rat_frac(i, 2)).collect();
            let mut delta = head.clone();
            delta.extend([rat_frac(l - 2, 4), rat_frac(l, 4)]);
            let mut tilde = head;
            tilde.extend([rat_frac(l, 4), rat_frac(l - 2, 4)]);
            let mut bar: RatVector = vec![rat(1); ty.n - 2];
            bar.extend([rat_frac(1, 2), rat_frac(1, 2)]);
            vec![("delta", delta), ("delta_bar", bar), ("delta_tilde", tilde)]
        }
        Family::E => match ty.n {
            6 => vec![("eta", [2, 3, 4, 6, 5, 4].iter().map(|&c| rat_frac(-c, 3)).collect())],
            7 => vec![("eta", [2, 3, 4, 6, 5, 4, 3].iter().map(|&c| rat_frac(-c, 2)).collect())],
            _ => vec![],
        },
    }
}

pub fn make_root_lattice(family: Family, n: usize) -> Result<RootLattice, LatticeError> {
    let ty = DynkinType::new(family, n);
    if !ty.is_valid() {
        let c = match family {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        };
        return Err(LatticeError::InvalidRootType(c, n));
    }
    let real = realization(ty);
    let b = RatMatrix::from_rows(real.clone());
    let dot = b.mul(&b.transpose()).to_int().expect("integral realization");
    assert_eq!(dot, ty.cartan(), "realization of {ty} does not match its Cartan matrix");
    let mut gram = ty.cartan();
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = -gram[(i, j)].clone();
        }
    }
    let lattice = Lattice::new(ty.to_string(), gram)?;
    Ok(RootLattice { ty, lattice, realization: real, glue: glue_vectors(ty) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let t: DynkinType = "D10".parse().unwrap();
        assert_eq!(t, DynkinType::new(Family::D, 10));
        assert_eq!(t.to_string(), "D10");
        assert!("E9".parse::<DynkinType>().is_err());
        assert!("D3".parse::<DynkinType>().is_err());
    }

    #[test]
    fn invalid_types_rejected() {
        assert!(make_root_lattice(Family::E, 5).is_err());
        assert!(make_root_lattice(Family::A, 0).is_err());
        assert!(make_root_lattice(Family::D, 2).is_err());
    }

    #[test]
    fn e8_is_unimodular() {
        let e8 = make_root_lattice(Family::E, 8).unwrap();
        assert_eq!(e8.lattice.det(), BigInt::from(1));
        assert_eq!(e8.roots().len(), 240);
    }
}
