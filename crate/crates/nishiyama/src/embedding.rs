use std::collections::BTreeSet;

use k3fib_exact::{IntMatrix, RatVector};
use k3fib_lattice::{DynkinType, Family};
use k3fib_niemeier::{NiemeierLattice, RealizedNiemeier};
use num_rational::BigRational;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Placement {
    /// D5 ⊕ A1 inside one component.
    Joint { component: usize },
    /// D5 and A1 in two different components.
    Split { d5: usize, a1: usize },
}

/// A primitive embedding of M = D5 ⊕ A1 given by canonical simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingSpec {
    pub host: String,
    pub placement: Placement,
    /// Six (component, simple-root index) pairs: the D5 part, then A1.
    pub roots: Vec<(usize, usize)>,
    /// e.g. "A1⊂E7, D5⊂D10".
    pub description: String,
}

impl EmbeddingSpec {
    /// The embedded basis of M in the host's concatenated simple-root coordinates.
    pub fn vectors(&self, host: &RealizedNiemeier) -> Vec<RatVector> {
        self.roots
            .iter()
            .map(|&(c, i)| {
                let mut v = vec![BigRational::from_integer(0.into()); host.rank()];
                v[host.offsets[c] + i] = BigRational::from_integer(1.into());
                v
            })
            .collect()
    }
}

// Canonical D5 inside D_l or E_n, listed as: fork, fork, branch, then the chain.
fn d5_roots(ty: DynkinType) -> Option<[usize; 5]> {
    match ty.family {
        Family::D if ty.n >= 5 => {
            let l = ty.n;
            Some([l - 2, l - 1, l - 3, l - 4, l - 5])
        }
        Family::E => Some([1, 4, 3, 2, 0]),
        _ => None,
    }
}

fn a1_root(ty: DynkinType) -> usize {
    match ty.family {
        Family::A | Family::D => ty.n - 1,
        Family::E => 0,
    }
}

// The A1 orthogonal to the canonical D5 in a joint placement.
fn joint_a1_root(ty: DynkinType) -> Option<usize> {
    match ty.family {
        Family::D if ty.n >= 7 => Some(ty.n - 7),
        Family::E if ty.n >= 7 => Some(6),
        _ => None,
    }
}

/// Gram matrix of M in the canonical order: D5 as fork, fork, branch, chain, then A1.
pub fn m_gram() -> IntMatrix {
    IntMatrix::from_i64(&[
        vec![-2, 0, 1, 0, 0, 0],
        vec![0, -2, 1, 0, 0, 0],
        vec![1, 1, -2, 1, 0, 0],
        vec![0, 0, 1, -2, 1, 0],
        vec![0, 0, 0, 1, -2, 0],
        vec![0, 0, 0, 0, 0, -2],
    ])
}

fn describe(host: &NiemeierLattice, p: Placement) -> String {
    let ty = |c: usize| host.components[c].ty;
    match p {
        Placement::Joint { component } => format!("A1⊕D5⊂{}", ty(component)),
        Placement::Split { d5, a1 } => format!("A1⊂{}, D5⊂{}", ty(a1), ty(d5)),
    }
}

fn spec_for(host: &NiemeierLattice, placement: Placement) -> EmbeddingSpec {
    let roots = match placement {
        Placement::Joint { component } => {
            let ty = host.components[component].ty;
            let mut r: Vec<(usize, usize)> = d5_roots(ty).unwrap().iter().map(|&i| (component, i)).collect();
            r.push((component, joint_a1_root(ty).unwrap()));
            r
        }
        Placement::Split { d5, a1 } => {
            let mut r: Vec<(usize, usize)> = d5_roots(host.components[d5].ty).unwrap().iter().map(|&i| (d5, i)).collect();
            r.push((a1, a1_root(host.components[a1].ty)));
            r
        }
    };
    EmbeddingSpec { host: host.id.clone(), placement, roots, description: describe(host, placement) }
}

/// Every placement, before identifying copies of isomorphic components.
pub fn all_placements(host: &NiemeierLattice) -> Vec<EmbeddingSpec> {
    let k = host.components.len();
    let mut out = Vec::new();
    for c in 0..k {
        let ty = host.components[c].ty;
        if d5_roots(ty).is_some() {
            for a in 0..k {
                if a != c {
                    out.push(spec_for(host, Placement::Split { d5: c, a1: a }));
                }
            }
        }
        if joint_a1_root(ty).is_some() {
            out.push(spec_for(host, Placement::Joint { component: c }));
        }
    }
    out
}

// (type, role) per component, sorted; role 0 = empty, 1 = A1, 2 = D5, 3 = joint.
fn class_key(host: &NiemeierLattice, p: Placement) -> Vec<(DynkinType, u8)> {
    let mut roles = vec![0u8; host.components.len()];
    match p {
        Placement::Joint { component } => roles[component] = 3,
        Placement::Split { d5, a1 } => {
            roles[d5] = 2;
            roles[a1] = 1;
        }
    }
    let mut key: Vec<(DynkinType, u8)> = host.components.iter().zip(roles).map(|(c, r)| (c.ty, r)).collect();
    key.sort();
    key
}

/// Canonical placements of M in `host`, one per class of isomorphic placements.
pub fn candidate_embeddings(host: &NiemeierLattice) -> Vec<EmbeddingSpec> {
    let mut seen = BTreeSet::new();
    all_placements(host).into_iter().filter(|s| seen.insert(class_key(host, s.placement))).collect()
}

/// Placements grouped by class, with the representative first.
pub fn placement_classes(host: &NiemeierLattice) -> Vec<Vec<EmbeddingSpec>> {
    let mut keys: Vec<Vec<(DynkinType, u8)>> = Vec::new();
    let mut groups: Vec<Vec<EmbeddingSpec>> = Vec::new();
    for s in all_placements(host) {
        let k = class_key(host, s.placement);
        match keys.iter().position(|x| *x == k) {
            Some(i) => groups[i].push(s),
            None => {
                keys.push(k);
                groups.push(vec![s]);
            }
        }
    }
    groups
}
