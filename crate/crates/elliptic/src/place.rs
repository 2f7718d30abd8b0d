use std::fmt;

use serde::Serialize;

use crate::poly::Poly;

/// A closed point of ℙ¹ over ℚ: a monic irreducible polynomial, or ∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(Poly),
    Infinity,
}

impl Place {
    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap(),
            Place::Infinity => 1,
        }
    }

    /// `t − a`.
    pub fn at(a: i64) -> Place {
        Place::Finite(Poly::from_i64(&[-a, 1]))
    }

    pub fn label(&self) -> String {
        match self {
            Place::Infinity => "inf".into(),
            Place::Finite(p) if p.degree() == Some(1) => {
                let root = -p.coeff(0);
                format!("t={}", k3fib_exact::fmt_rat(&root))
            }
            Place::Finite(p) => format!("{p}=0"),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.label())
    }
}
