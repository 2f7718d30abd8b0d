use k3fib_exact::{fmt_rat, parse_rat, IntMatrix, RatMatrix, RatVector};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::LatticeError;

/// A finite-rank lattice given by its Gram matrix.
///
/// `ambient`, when present, expresses each basis vector in the coordinates
/// of some host space (for sublattices of a root-lattice sum these are
/// simple-root coordinates of the host).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    label: String,
    gram: IntMatrix,
    ambient: Option<Vec<RatVector>>,
}

impl Lattice {
    pub fn new(label: impl Into<String>, gram: IntMatrix) -> Result<Self, LatticeError> {
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        Ok(Lattice { label: label.into(), gram, ambient: None })
    }

    /// Sublattice of `host` spanned by `basis` (host coordinates). The Gram matrix is induced.
    pub fn sublattice(label: impl Into<String>, host: &Lattice, basis: Vec<RatVector>) -> Result<Self, LatticeError> {
        let n = host.rank();
        if basis.iter().any(|b| b.len() != n) {
            return Err(LatticeError::Dimension(format!("basis vectors must have length {n}")));
        }
        let k = basis.len();
        let mut g = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in i..k {
                let v = host.gram.form(&basis[i], &basis[j]);
                if !v.is_integer() {
                    return Err(LatticeError::NonIntegral);
                }
                g[(i, j)] = v.to_integer();
                g[(j, i)] = g[(i, j)].clone();
            }
        }
        let ambient = match &host.ambient {
            // compose with the host's own embedding
            Some(h) => {
                let hb = RatMatrix::from_rows_with_cols(h.clone(), h.first().map_or(0, |r| r.len()));
                let b = RatMatrix::from_rows_with_cols(basis, n);
                b.mul(&hb).to_rows()
            }
            None => basis,
        };
        Ok(Lattice { label: label.into(), gram: g, ambient: Some(ambient) })
    }

    pub fn with_ambient(mut self, ambient: Vec<RatVector>) -> Self {
        self.ambient = Some(ambient);
        self
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn ambient(&self) -> Option<&[RatVector]> {
        self.ambient.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> BigInt {
        self.gram.det()
    }

    pub fn is_even(&self) -> bool {
        use num_integer::Integer;
        (0..self.rank()).all(|i| self.gram[(i, i)].is_even())
    }

    /// Sylvester's criterion applied to −G.
    pub fn is_negative_definite(&self) -> bool {
        let n = self.rank();
        let neg = RatMatrix::from_int(&self.gram);
        for k in 1..=n {
            let mut sub = RatMatrix::zeros(k, k);
            for i in 0..k {
                for j in 0..k {
                    sub[(i, j)] = -neg[(i, j)].clone();
                }
            }
            if !sub.det().is_positive() {
                return false;
            }
        }
        true
    }

    pub fn norm(&self, x: &[BigRational]) -> BigRational {
        self.gram.form(x, x)
    }

    pub fn pairing(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        self.gram.form(x, y)
    }

    /// Orthogonal direct sum; ambient coordinates are concatenated block-wise when all parts carry them.
    pub fn direct_sum(label: impl Into<String>, parts: &[Lattice]) -> Lattice {
        let gram = IntMatrix::direct_sum(&parts.iter().map(|p| p.gram.clone()).collect::<Vec<_>>());
        let ambient = if parts.iter().all(|p| p.ambient.is_some()) {
            let widths: Vec<usize> = parts.iter().map(|p| p.ambient.as_ref().unwrap().first().map_or(0, |r| r.len())).collect();
            let total: usize = widths.iter().sum();
            let mut rows = Vec::new();
            let mut off = 0;
            for (p, w) in parts.iter().zip(&widths) {
                for r in p.ambient.as_ref().unwrap() {
                    let mut v = vec![BigRational::zero(); total];
                    v[off..off + w].clone_from_slice(r);
                    rows.push(v);
                }
                off += w;
            }
            Some(rows)
        } else {
            None
        };
        Lattice { label: label.into(), gram, ambient }
    }

    pub fn to_doc(&self) -> LatticeDoc {
        LatticeDoc {
            label: self.label.clone(),
            gram: self.gram.to_rows().iter().map(|r| r.iter().map(|x| x.to_i64().expect("Gram entry fits i64")).collect()).collect(),
            ambient: self.ambient.as_ref().map(|a| a.iter().map(|r| r.iter().map(fmt_rat).collect()).collect()),
        }
    }

    pub fn from_doc(doc: &LatticeDoc) -> Result<Self, LatticeError> {
        let n = doc.gram.len();
        if doc.gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::Parse("gram must be square".into()));
        }
        let l = Lattice::new(doc.label.clone(), IntMatrix::from_i64(&doc.gram))?;
        match &doc.ambient {
            None => Ok(l),
            Some(rows) => {
                if rows.len() != n {
                    return Err(LatticeError::Parse("ambient must have one row per basis vector".into()));
                }
                let parsed: Result<Vec<RatVector>, _> = rows
                    .iter()
                    .map(|r| r.iter().map(|s| parse_rat(s).ok_or_else(|| LatticeError::Parse(format!("bad rational {s:?}")))).collect())
                    .collect();
                Ok(l.with_ambient(parsed?))
            }
        }
    }
}

/// JSON shape `{label, gram, ambient}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct LatticeDoc {
    pub label: String,
    pub gram: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<Vec<Vec<String>>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn definiteness_and_parity() {
        let a2 = Lattice::new("A2", IntMatrix::from_i64(&[vec![-2, 1], vec![1, -2]])).unwrap();
        assert!(a2.is_negative_definite());
        assert!(a2.is_even());
        assert_eq!(a2.det(), BigInt::from(3));
        let h = Lattice::new("U", IntMatrix::from_i64(&[vec![0, 1], vec![1, 0]])).unwrap();
        assert!(!h.is_negative_definite());
        assert!(Lattice::new("bad", IntMatrix::from_i64(&[vec![0, 1], vec![2, 0]])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let l = Lattice::new("x", IntMatrix::from_i64(&[vec![-4]])).unwrap().with_ambient(vec![vec![BigRational::new(1.into(), 2.into())]]);
        let s = serde_json::to_string(&l.to_doc()).unwrap();
        assert_eq!(s, r#"{"label":"x","gram":[[-4]],"ambient":[["1/2"]]}"#);
        let back = Lattice::from_doc(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, l);
    }
}
