use std::collections::{BTreeSet, HashMap};

use k3fib_exact::{fmt_rat, rat, smith_normal_form, RatMatrix, RatVector};
use k3fib_lattice::{classify_root_set, make_root_lattice, overlattice_from_glue, short_vectors_in_coset, Lattice, RootLattice};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::{Component, NiemeierError, NiemeierLattice};

/// A Niemeier lattice built as an overlattice of its root lattice.
#[derive(Clone, Debug)]
pub struct RealizedNiemeier {
    pub id: String,
    pub components: Vec<Component>,
    pub parts: Vec<RootLattice>,
    pub offsets: Vec<usize>,
    /// Orthogonal sum of the components, in simple-root coordinates.
    pub root_lattice: Lattice,
    /// Glue words as vectors in simple-root coordinates.
    pub glue: Vec<(String, RatVector)>,
    /// The overlattice; its ambient rows are simple-root coordinates.
    pub lattice: Lattice,
}

impl RealizedNiemeier {
    pub fn rank(&self) -> usize {
        self.root_lattice.rank()
    }

    /// Basis of L in simple-root coordinates.
    pub fn basis(&self) -> &[RatVector] {
        self.lattice.ambient().expect("overlattice keeps root coordinates")
    }

    /// Embeds a vector of component `i` into the full coordinate space.
    pub fn embed(&self, i: usize, v: &[BigRational]) -> RatVector {
        let mut out = vec![BigRational::zero(); self.rank()];
        for (k, x) in v.iter().enumerate() {
            out[self.offsets[i] + k] = x.clone();
        }
        out
    }
}

pub fn realize(n: &NiemeierLattice) -> Result<RealizedNiemeier, NiemeierError> {
    let words = n.glue.as_ref().ok_or_else(|| NiemeierError::NoGlueData(n.id.clone()))?;
    let parts: Vec<RootLattice> = n.components.iter().map(|c| make_root_lattice(c.ty.family, c.ty.n)).collect::<Result<_, _>>()?;
    let offsets: Vec<usize> = (0..parts.len()).map(|i| n.offset(i)).collect();
    let root_lattice = Lattice::direct_sum(format!("{} root", n.id), &parts.iter().map(|p| p.lattice.clone()).collect::<Vec<_>>());
    let rank = root_lattice.rank();
    let mut glue = Vec::new();
    for w in words {
        let mut v = vec![BigRational::zero(); rank];
        for t in &w.terms {
            let g = parts[t.component].glue_vector(&t.name).ok_or_else(|| NiemeierError::BadGlueWord {
                word: w.text.clone(),
                reason: format!("{} has no glue vector {}", n.components[t.component], t.name),
            })?;
            for (k, x) in g.iter().enumerate() {
                v[offsets[t.component] + k] += x * rat(t.coeff);
            }
        }
        glue.push((w.text.clone(), v));
    }
    let lattice = overlattice_from_glue(&root_lattice, &glue, n.id.clone())?;
    Ok(RealizedNiemeier { id: n.id.clone(), components: n.components.clone(), parts, offsets, root_lattice, glue, lattice })
}

fn frac(v: &[BigRational]) -> RatVector {
    v.iter().map(|x| x - BigRational::from_integer(x.floor().to_integer())).collect()
}

/// Elements of `L/L_root`, as vectors with coordinates in `[0, 1)`; the zero class comes first.
pub fn glue_classes(r: &RealizedNiemeier) -> Vec<RatVector> {
    let zero = vec![BigRational::zero(); r.rank()];
    let mut seen: BTreeSet<RatVector> = BTreeSet::from([zero.clone()]);
    let mut frontier = vec![zero];
    while let Some(x) = frontier.pop() {
        for (_, g) in &r.glue {
            let y = frac(&x.iter().zip(g).map(|(a, b)| a + b).collect::<Vec<_>>());
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let mut out: Vec<RatVector> = seen.into_iter().collect();
    out.sort_by_key(|v| v.iter().any(|x| !x.is_zero()));
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub id: String,
    pub rank: usize,
    pub det: String,
    pub even: bool,
    pub declared_roots: String,
    pub computed_roots: String,
    pub root_count: usize,
    pub declared_glue_group: Vec<u64>,
    pub computed_glue_group: Vec<String>,
    pub glue_order: usize,
    /// Smallest |norm| over nonzero glue classes, when it is at most 2.
    pub short_glue_norm: Option<String>,
    pub ok: bool,
}

// Least |norm| in the coset shift + component, if it is ≤ 2.
fn coset_min(part: &RootLattice, shift: &[BigRational]) -> Option<BigRational> {
    let n = part.ty.n;
    let mut pos = part.lattice.gram().clone();
    for i in 0..n {
        for j in 0..n {
            pos[(i, j)] = -pos[(i, j)].clone();
        }
    }
    short_vectors_in_coset(&pos, shift, &rat(2)).iter().map(|y| pos.form(y, y)).min()
}

/// Checks that the realized lattice is even unimodular of rank 24 and that its
/// roots are exactly those of the declared components. Vectors of norm −2
/// outside L_root would have to lie in a nonzero glue class whose coset
/// minimum is at most 2, so each class is searched component by component.
pub fn validate(n: &NiemeierLattice) -> Result<ValidationReport, NiemeierError> {
    let r = realize(n)?;
    let det = r.lattice.det();
    let classes = glue_classes(&r);
    let mut cache: HashMap<(usize, RatVector), Option<BigRational>> = HashMap::new();
    let mut short: Option<BigRational> = None;
    for c in classes.iter().skip(1) {
        let mut total = Some(BigRational::zero());
        for (i, part) in r.parts.iter().enumerate() {
            let s = c[r.offsets[i]..r.offsets[i] + part.ty.n].to_vec();
            let m = cache.entry((i, s.clone())).or_insert_with(|| coset_min(part, &s)).clone();
            total = match (total, m) {
                (Some(t), Some(m)) => Some(t + m),
                _ => None,
            };
        }
        if let Some(t) = total.filter(|t| *t <= rat(2)) {
            short = Some(short.map_or(t.clone(), |s: BigRational| s.min(t)));
        }
    }

    let mut all_roots: Vec<Vec<BigInt>> = Vec::new();
    for (i, part) in r.parts.iter().enumerate() {
        for root in part.roots() {
            let mut v = vec![BigInt::zero(); r.rank()];
            for (k, x) in root.into_iter().enumerate() {
                v[r.offsets[i] + k] = x;
            }
            all_roots.push(v);
        }
    }
    let decomposition = classify_root_set(r.root_lattice.gram(), &all_roots);

    let b = RatMatrix::from_rows(r.basis().to_vec());
    let inv = b.inverse().expect("overlattice basis is invertible").to_int().expect("L_root ⊂ L");
    let computed: Vec<BigInt> = smith_normal_form(&inv).invariant_factors();

    let declared = n.root_label();
    let computed_roots = if short.is_some() { format!("{} + glue roots", decomposition.label()) } else { decomposition.label() };
    let ok = r.rank() == 24
        && det.magnitude() == &1u32.into()
        && r.lattice.is_even()
        && short.is_none()
        && computed_roots == declared
        && computed.iter().map(|d| d.to_u64()).collect::<Option<Vec<_>>>() == Some(n.glue_group.clone())
        && classes.len() as u64 == n.glue_order()
        && (classes.len() as u128).pow(2) == n.root_det();
    Ok(ValidationReport {
        id: n.id.clone(),
        rank: r.rank(),
        det: det.to_string(),
        even: r.lattice.is_even(),
        declared_roots: declared,
        computed_roots,
        root_count: all_roots.len(),
        declared_glue_group: n.glue_group.clone(),
        computed_glue_group: computed.iter().map(|d| d.to_string()).collect(),
        glue_order: classes.len(),
        short_glue_norm: short.map(|s| fmt_rat(&s)),
        ok,
    })
}
