use std::collections::{HashMap, HashSet};

use k3fib_exact::IntMatrix;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::enumerate::roots;
use crate::error::LatticeError;
use crate::lattice::Lattice;
use crate::root::{DynkinType, Family};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootComponent {
    pub ty: DynkinType,
    /// Simple roots, in the coordinates of the roots passed in.
    pub simple_roots: Vec<Vec<BigInt>>,
    pub root_count: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RootSystemDecomposition {
    pub components: Vec<RootComponent>,
}

impl RootSystemDecomposition {
    /// Sorted multiset of component types.
    pub fn types(&self) -> Vec<DynkinType> {
        let mut t: Vec<_> = self.components.iter().map(|c| c.ty).collect();
        t.sort();
        t
    }

    pub fn rank(&self) -> usize {
        self.components.iter().map(|c| c.ty.n).sum()
    }

    pub fn root_count(&self) -> usize {
        self.components.iter().map(|c| c.root_count).sum()
    }

    /// Every simple root, component by component.
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        self.components.iter().flat_map(|c| c.simple_roots.iter().cloned()).collect()
    }

    /// e.g. "A1 D16".
    pub fn label(&self) -> String {
        self.types().iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
    }
}

pub fn classify_roots(l: &Lattice) -> Result<RootSystemDecomposition, LatticeError> {
    let r = roots(l)?;
    Ok(classify_root_set(l.gram(), &r))
}

/// Decomposes a closed root set (norm −2 vectors under `gram`) into irreducible components.
pub fn classify_root_set(gram: &IntMatrix, roots: &[Vec<BigInt>]) -> RootSystemDecomposition {
    if roots.is_empty() {
        return RootSystemDecomposition::default();
    }
    // A functional with distinct powers of a large base is nonzero on every nonzero root.
    let base = BigInt::from(2) * roots.iter().flatten().map(|x| x.abs()).max().unwrap() + 1;
    let weight = |v: &[BigInt]| {
        let mut w = BigInt::zero();
        let mut p = BigInt::from(1);
        for x in v {
            w += x * &p;
            p *= &base;
        }
        w
    };
    let positive: Vec<&Vec<BigInt>> = roots.iter().filter(|r| weight(r).is_positive()).collect();
    let set: HashSet<&Vec<BigInt>> = positive.iter().copied().collect();
    let simple: Vec<Vec<BigInt>> = positive
        .iter()
        .filter(|r| {
            !positive.iter().any(|s| {
                let d: Vec<BigInt> = r.iter().zip(s.iter()).map(|(a, b)| a - b).collect();
                set.contains(&d)
            })
        })
        .map(|r| (*r).clone())
        .collect();

    // components of the Dynkin graph
    let k = simple.len();
    let adj: Vec<Vec<usize>> =
        (0..k).map(|i| (0..k).filter(|&j| j != i && !gram.form_int(&simple[i], &simple[j]).is_zero()).collect()).collect();
    let mut comp = vec![usize::MAX; k];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = groups.len();
        let mut stack = vec![s];
        let mut members = Vec::new();
        comp[s] = id;
        while let Some(v) = stack.pop() {
            members.push(v);
            for &w in &adj[v] {
                if comp[w] == usize::MAX {
                    comp[w] = id;
                    stack.push(w);
                }
            }
        }
        members.sort();
        groups.push(members);
    }

    let mut counts = vec![0usize; groups.len()];
    for r in roots {
        let c = (0..k).find(|&i| !gram.form_int(r, &simple[i]).is_zero()).map(|i| comp[i]).expect("root orthogonal to every simple root");
        counts[c] += 1;
    }

    let mut components: Vec<RootComponent> = groups
        .iter()
        .zip(counts)
        .map(|(members, count)| {
            let (ty, order) = identify(members, &adj);
            let simple_roots: Vec<Vec<BigInt>> = order.iter().map(|&i| simple[i].clone()).collect();
            assert_eq!(count, ty.root_count(), "root count of {ty} component");
            let sub =
                IntMatrix::from_rows(simple_roots.iter().map(|a| simple_roots.iter().map(|b| gram.form_int(a, b)).collect()).collect());
            assert_eq!(sub.det().abs(), BigInt::from(ty.det()), "determinant of {ty} component");
            RootComponent { ty, simple_roots, root_count: count }
        })
        .collect();
    components.sort_by(|a, b| a.ty.cmp(&b.ty).then_with(|| a.simple_roots.cmp(&b.simple_roots)));
    RootSystemDecomposition { components }
}

// Identifies a connected simply-laced Dynkin graph and returns the simple roots in Bourbaki order.
fn identify(members: &[usize], adj: &[Vec<usize>]) -> (DynkinType, Vec<usize>) {
    let n = members.len();
    let deg: HashMap<usize, usize> = members.iter().map(|&v| (v, adj[v].len())).collect();
    let branch: Vec<usize> = members.iter().copied().filter(|v| deg[v] >= 3).collect();
    assert!(members.iter().all(|v| deg[v] <= 3) && branch.len() <= 1, "not a simply-laced Dynkin diagram");
    if branch.is_empty() {
        let start = members.iter().copied().find(|v| deg[v] <= 1).expect("cycle in root graph");
        return (DynkinType::new(Family::A, n), walk(start, usize::MAX, adj));
    }
    let b = branch[0];
    let mut arms: Vec<Vec<usize>> = adj[b].iter().map(|&w| walk(w, b, adj)).collect();
    arms.sort_by_key(|a| a.len());
    let lens: Vec<usize> = arms.iter().map(|a| a.len()).collect();
    match lens.as_slice() {
        [1, 1, m] => {
            // D_n: long arm reversed, branch, then the two short arms
            let mut order: Vec<usize> = arms[2].iter().rev().copied().collect();
            order.push(b);
            order.push(arms[0][0]);
            order.push(arms[1][0]);
            assert_eq!(*m + 3, n);
            (DynkinType::new(Family::D, n), order)
        }
        [1, 2, m] if (2..=4).contains(m) => {
            // E_n in Bourbaki labels: e1 end of the length-2 arm, e2 the short arm, e3 next to e1, e4 branch
            let e1 = arms[1][1];
            let e3 = arms[1][0];
            let e2 = arms[0][0];
            let mut order = vec![e1, e2, e3, b];
            order.extend(arms[2].iter().copied());
            (DynkinType::new(Family::E, n), order)
        }
        _ => panic!("not a simply-laced Dynkin diagram: arms {lens:?}"),
    }
}

fn walk(start: usize, from: usize, adj: &[Vec<usize>]) -> Vec<usize> {
    let mut path = vec![start];
    let (mut prev, mut cur) = (from, start);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&w| w != prev).collect();
        if next.len() != 1 {
            break;
        }
        prev = cur;
        cur = next[0];
        path.push(cur);
    }
    path
}
