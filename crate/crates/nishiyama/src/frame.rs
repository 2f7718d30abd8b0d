use std::collections::BTreeSet;

use k3fib_exact::{row_lattice_basis, saturate, smith_normal_form, solve_in_basis, IntMatrix, RatMatrix, RatVector};
use k3fib_lattice::{classify_root_set, is_primitive, orthogonal_complement, Lattice, RootSystemDecomposition};
use k3fib_niemeier::{glue_classes, RealizedNiemeier};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::embedding::{m_gram, EmbeddingSpec};
use crate::NishiyamaError;

/// The frame W = M⊥ of one embedding, with the pieces needed for rank and torsion.
#[derive(Clone, Debug)]
pub struct Frame {
    pub host: String,
    pub description: String,
    /// M⊥ in L_root.
    pub n: Lattice,
    /// M⊥ in L.
    pub w: Lattice,
    pub w_root: RootSystemDecomposition,
    /// Simple roots of W_root spanning a sublattice of L (ambient: root coordinates).
    pub w_root_lattice: Lattice,
    /// Primitive closure of W_root in L.
    pub w_bar_root: Lattice,
    /// Glue classes with a representative orthogonal to M, zero class first.
    pub wn_quotient: Vec<RatVector>,
    pub glue_order: usize,
}

fn to_l_coords(binv: &RatMatrix, v: &[BigRational]) -> RatVector {
    RatMatrix::from_rows(vec![v.to_vec()]).mul(binv).row(0).to_vec()
}

fn frac(v: &[BigRational]) -> RatVector {
    v.iter().map(|x| x - BigRational::from_integer(x.floor().to_integer())).collect()
}

/// Whether the glue class `g` has a representative orthogonal to `m`: the
/// functional `m ↦ −b(g, m)` must lie in the image of `L_root → M*`.
fn class_meets_complement(root: &Lattice, image: &[RatVector], g: &[BigRational], m: &[RatVector]) -> bool {
    let f: RatVector = m.iter().map(|mi| -root.pairing(g, mi)).collect();
    if f.iter().any(|x| !x.is_integer()) {
        return false;
    }
    if f.iter().all(Zero::is_zero) {
        return true;
    }
    match solve_in_basis(image, &f) {
        Some(c) => c.iter().all(|x| x.is_integer()),
        None => false,
    }
}

pub fn frame(host: &RealizedNiemeier, spec: &EmbeddingSpec) -> Result<Frame, NishiyamaError> {
    let fail = |what: String| NishiyamaError::Invariant { host: host.id.clone(), embedding: spec.description.clone(), what };
    let m = spec.vectors(host);
    let root = &host.root_lattice;
    let basis = RatMatrix::from_rows(host.basis().to_vec());
    let binv = basis.inverse().expect("basis of L is invertible");

    let mg = IntMatrix::from_rows(m.iter().map(|x| m.iter().map(|y| root.pairing(x, y).to_integer()).collect()).collect());
    if mg != m_gram() {
        return Err(fail("embedded vectors do not have the Gram matrix of D5+A1".into()));
    }
    let m_l: Vec<RatVector> = m.iter().map(|v| to_l_coords(&binv, v)).collect();
    if !is_primitive(host.rank(), &m_l) {
        return Err(fail("embedding is not primitive in L".into()));
    }

    let w = orthogonal_complement(&host.lattice, &m_l, "W");
    let n = orthogonal_complement(root, &m, "N");

    // every root of L lies in L_root, so W_root is cut out of the component roots
    let mut roots: Vec<Vec<BigInt>> = Vec::new();
    for (i, part) in host.parts.iter().enumerate() {
        for r in part.roots() {
            let v: RatVector = host.embed(i, &r.iter().map(|x| BigRational::from_integer(x.clone())).collect::<Vec<_>>());
            if m.iter().all(|mi| root.pairing(&v, mi).is_zero()) {
                roots.push(v.iter().map(|x| x.to_integer()).collect());
            }
        }
    }
    let w_root = classify_root_set(root.gram(), &roots);
    let simple: Vec<RatVector> = w_root.basis().iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
    let simple_l: Vec<RatVector> = simple.iter().map(|v| to_l_coords(&binv, v)).collect();
    let w_root_lattice = Lattice::sublattice("W_root", &host.lattice, simple_l.clone())?;
    let bar: Vec<RatVector> =
        saturate(&simple_l, host.rank()).into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect();
    let w_bar_root = Lattice::sublattice("W_bar_root", &host.lattice, bar)?;

    let classes = glue_classes(host);
    let p_rows: Vec<Vec<BigInt>> = (0..host.rank())
        .map(|j| {
            let mut e = vec![BigRational::zero(); host.rank()];
            e[j] = BigRational::from_integer(1.into());
            m.iter().map(|mi| root.pairing(&e, mi).to_integer()).collect()
        })
        .collect();
    let image: Vec<RatVector> =
        row_lattice_basis(&p_rows, m.len()).into_iter().map(|r| r.into_iter().map(BigRational::from_integer).collect()).collect();
    let wn_quotient: Vec<RatVector> = classes.iter().filter(|g| class_meets_complement(root, &image, g, &m)).cloned().collect();

    // cross-check against the classes hit by W itself
    let mut hit: BTreeSet<RatVector> = BTreeSet::from([vec![BigRational::zero(); host.rank()]]);
    let gens: Vec<RatVector> = w.ambient().unwrap().iter().map(|v| frac(v)).collect();
    let mut frontier: Vec<RatVector> = hit.iter().cloned().collect();
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = frac(&x.iter().zip(g).map(|(a, b)| a + b).collect::<Vec<_>>());
            if hit.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let by_test: BTreeSet<RatVector> = wn_quotient.iter().cloned().collect();
    if hit != by_test {
        return Err(fail(format!("W/N from W has {} classes, membership test gives {}", hit.len(), by_test.len())));
    }

    let f = Frame {
        host: host.id.clone(),
        description: spec.description.clone(),
        n,
        w,
        w_root,
        w_root_lattice,
        w_bar_root,
        wn_quotient,
        glue_order: classes.len(),
    };
    check(&f).map_err(fail)?;
    Ok(f)
}

fn check(f: &Frame) -> Result<(), String> {
    if f.w.rank() != 18 {
        return Err(format!("rank W = {}", f.w.rank()));
    }
    let det_w = f.w.det().abs();
    if det_w != BigInt::from(8) {
        return Err(format!("|det W| = {det_w}"));
    }
    let idx = BigInt::from(f.wn_quotient.len());
    if f.n.det().abs() != &det_w * &idx * &idx {
        return Err(format!("|det N| = {} but |det W|·[W:N]² = {}", f.n.det().abs(), &det_w * &idx * &idx));
    }
    if f.n.det().abs() == BigInt::from(8) && !torsion_by_saturation(f).is_empty() {
        return Err("det N = det M but W̄_root/W_root is nontrivial".into());
    }
    let t: u64 = mw_torsion(f).iter().product();
    if !(f.glue_order as u64).is_multiple_of(t) {
        return Err(format!("torsion order {t} does not divide the glue order {}", f.glue_order));
    }
    Ok(())
}

pub fn mw_rank(f: &Frame) -> usize {
    18 - f.w_root.rank()
}

/// Invariant factors of W̄_root / W_root.
pub fn mw_torsion(f: &Frame) -> Vec<u64> {
    if f.n.det().abs() == BigInt::from(8) {
        // det N = det M: the glue cannot meet W, so there is no torsion
        return Vec::new();
    }
    torsion_by_saturation(f)
}

fn torsion_by_saturation(f: &Frame) -> Vec<u64> {
    let k = f.w_root_lattice.rank();
    if k == 0 {
        return Vec::new();
    }
    let bar = f.w_bar_root.ambient().unwrap();
    let rows: Vec<Vec<BigInt>> = f
        .w_root_lattice
        .ambient()
        .unwrap()
        .iter()
        .map(|v| solve_in_basis(bar, v).expect("W_root lies in its closure").into_iter().map(|x| x.to_integer()).collect())
        .collect();
    smith_normal_form(&IntMatrix::from_rows_with_cols(rows, k))
        .invariant_factors()
        .iter()
        .map(|d| d.to_u64().expect("small torsion"))
        .collect()
}
