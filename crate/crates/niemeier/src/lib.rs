//! The 24 Niemeier lattices.
//!
//! Each record lists its root components and the structure of `L/L_root`.
//! Thirteen of them also carry explicit glue words, written in terms of the
//! named dual vectors of the root components (`alpha`, `delta`, `delta_bar`,
//! `delta_tilde`, `eta`), and can be realized as overlattices of their root
//! lattice.

mod data;
mod realize;

use std::fmt;

use k3fib_lattice::{DynkinType, Family, LatticeError};
use serde::Serialize;
use thiserror::Error;

pub use data::{all_niemeier, find, HOST_ORDER};
pub use realize::{glue_classes, realize, validate, RealizedNiemeier, ValidationReport};

#[derive(Debug, Error)]
pub enum NiemeierError {
    #[error("glue data unavailable for {0}")]
    NoGlueData(String),
    #[error("unknown Niemeier lattice {0:?}")]
    Unknown(String),
    #[error("bad glue word {word:?}: {reason}")]
    BadGlueWord { word: String, reason: String },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// One root component with its copy label, e.g. `E7(1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub ty: DynkinType,
    /// 1-based copy index among components of the same type; 0 if the type occurs once.
    pub copy: usize,
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.copy == 0 {
            write!(f, "{}", self.ty)
        } else {
            write!(f, "{}({})", self.ty, self.copy)
        }
    }
}

/// `coeff * name` on component `component`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlueTerm {
    pub component: usize,
    pub name: String,
    pub coeff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GlueWord {
    pub text: String,
    pub terms: Vec<GlueTerm>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NiemeierLattice {
    pub id: String,
    pub components: Vec<Component>,
    pub glue: Option<Vec<GlueWord>>,
    /// Invariant factors of `L/L_root`.
    pub glue_group: Vec<u64>,
}

impl NiemeierLattice {
    pub fn root_rank(&self) -> usize {
        self.components.iter().map(|c| c.ty.n).sum()
    }

    pub fn glue_order(&self) -> u64 {
        self.glue_group.iter().product()
    }

    /// `|det L_root|`.
    pub fn root_det(&self) -> u128 {
        self.components.iter().map(|c| c.ty.det() as u128).product()
    }

    pub fn root_label(&self) -> String {
        let mut t: Vec<DynkinType> = self.components.iter().map(|c| c.ty).collect();
        t.sort();
        t.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
    }

    pub fn has_glue_data(&self) -> bool {
        self.glue.is_some()
    }

    /// Offset of component `i` in the concatenated simple-root coordinates.
    pub fn offset(&self, i: usize) -> usize {
        self.components[..i].iter().map(|c| c.ty.n).sum()
    }

    /// "Z/2 x Z/10" style rendering of the glue group.
    pub fn glue_group_label(&self) -> String {
        group_label(&self.glue_group)
    }
}

pub fn group_label(factors: &[u64]) -> String {
    if factors.is_empty() {
        return "(0)".into();
    }
    factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" x ")
}

fn family_of(name: &str) -> Option<Family> {
    match name {
        "alpha" => Some(Family::A),
        "delta" | "delta_bar" | "delta_tilde" => Some(Family::D),
        "eta" => Some(Family::E),
        _ => None,
    }
}

/// Parses words like `eta(1)+delta_tilde` or `2delta(2)+alpha(1)`.
/// A superscript selects the k-th component of the family the name belongs to;
/// without one, the family must occur exactly once.
pub fn parse_glue_word(word: &str, components: &[Component]) -> Result<GlueWord, NiemeierError> {
    let bad = |reason: String| NiemeierError::BadGlueWord { word: word.to_string(), reason };
    let mut terms = Vec::new();
    for raw in word.split('+') {
        let t = raw.trim();
        let digits: String = t.chars().take_while(|c| c.is_ascii_digit()).collect();
        let coeff: i64 = if digits.is_empty() { 1 } else { digits.parse().map_err(|_| bad(format!("coefficient in {t:?}")))? };
        let rest = &t[digits.len()..];
        let (name, sup) = match rest.find('(') {
            Some(p) => {
                let k: usize =
                    rest[p + 1..].strip_suffix(')').and_then(|s| s.parse().ok()).ok_or_else(|| bad(format!("superscript in {t:?}")))?;
                (&rest[..p], Some(k))
            }
            None => (rest, None),
        };
        let fam = family_of(name).ok_or_else(|| bad(format!("unknown glue vector {name:?}")))?;
        let of_family: Vec<usize> = components.iter().enumerate().filter(|(_, c)| c.ty.family == fam).map(|(i, _)| i).collect();
        let component = match sup {
            Some(k) if k >= 1 && k <= of_family.len() => of_family[k - 1],
            Some(k) => return Err(bad(format!("no component {k} for {name}"))),
            None if of_family.len() == 1 => of_family[0],
            None => return Err(bad(format!("{name} is ambiguous without a superscript"))),
        };
        terms.push(GlueTerm { component, name: name.to_string(), coeff });
    }
    Ok(GlueWord { text: word.to_string(), terms })
}
