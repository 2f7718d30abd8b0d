use k3fib_lattice::{discriminant_group, mod1, mod2, DiscriminantGroup, Lattice, LatticeError};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

struct Form {
    orders: Vec<u64>,
    q: Vec<BigRational>,
    b: Vec<Vec<BigRational>>,
}

impl Form {
    fn from_group(d: &DiscriminantGroup, sign: i64) -> Self {
        let s = BigRational::from_integer(BigInt::from(sign));
        Form {
            orders: d.invariant_factors.iter().map(|x| x.to_u64().expect("small discriminant group")).collect(),
            q: d.q_values.iter().map(|x| mod2(&(x * &s))).collect(),
            b: d.b_table.iter().map(|r| r.iter().map(|x| mod1(&(x * &s))).collect()).collect(),
        }
    }

    fn size(&self) -> u64 {
        self.orders.iter().product()
    }

    fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &d in &self.orders {
            out = out.into_iter().flat_map(|p| (0..d).map(move |k| [p.clone(), vec![k]].concat())).collect();
        }
        out
    }

    fn q_of(&self, x: &[u64]) -> BigRational {
        let mut s = BigRational::from_integer(0.into());
        for i in 0..x.len() {
            let xi = BigRational::from_integer(x[i].into());
            s += &xi * &xi * &self.q[i];
            for j in i + 1..x.len() {
                s += BigRational::from_integer((2 * x[i] * x[j]).into()) * &self.b[i][j];
            }
        }
        mod2(&s)
    }

    fn b_of(&self, x: &[u64], y: &[u64]) -> BigRational {
        let mut s = BigRational::from_integer(0.into());
        for i in 0..x.len() {
            for j in 0..y.len() {
                s += BigRational::from_integer((x[i] * y[j]).into()) * &self.b[i][j];
            }
        }
        mod1(&s)
    }

    fn reduce(&self, x: Vec<u64>) -> Vec<u64> {
        x.iter().zip(&self.orders).map(|(a, d)| a % d).collect()
    }
}

fn isomorphic(g: &Form, h: &Form) -> bool {
    if g.size() != h.size() {
        return false;
    }
    let elems = h.elements();
    let k = g.orders.len();
    // images of the generators of g, chosen one at a time
    fn search(g: &Form, h: &Form, elems: &[Vec<u64>], chosen: &mut Vec<Vec<u64>>, k: usize) -> bool {
        let i = chosen.len();
        if i == k {
            let mut seen = std::collections::HashSet::new();
            for x in g.elements() {
                let mut img = vec![0u64; h.orders.len()];
                for (c, e) in x.iter().zip(chosen.iter()) {
                    for t in 0..img.len() {
                        img[t] += c * e[t];
                    }
                }
                if !seen.insert(h.reduce(img)) {
                    return false;
                }
            }
            return true;
        }
        for e in elems {
            let killed = h.reduce(e.iter().map(|x| x * g.orders[i]).collect());
            if killed.iter().any(|&x| x != 0) || h.q_of(e) != g.q[i] {
                continue;
            }
            if (0..i).any(|j| h.b_of(e, &chosen[j]) != g.b[i][j]) {
                continue;
            }
            chosen.push(e.clone());
            if search(g, h, elems, chosen, k) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    search(g, h, &elems, &mut Vec::new(), k)
}

/// Whether `q_a ≅ sign · q_b` as finite quadratic forms.
pub fn discriminant_forms_isomorphic(a: &Lattice, b: &Lattice, sign: i64) -> Result<bool, LatticeError> {
    let ga = Form::from_group(&discriminant_group(a)?, 1);
    let gb = Form::from_group(&discriminant_group(b)?, sign);
    Ok(isomorphic(&ga, &gb))
}

/// The partner lattice M of a transcendental lattice T must have `q_M = −q_NS`,
/// and `q_NS = −q_T`, so `q_M ≅ q_T`.
pub fn partner_matches(m: &Lattice, t: &Lattice) -> Result<bool, LatticeError> {
    discriminant_forms_isomorphic(m, t, 1)
}
