//! Factorization in ℚ[t]: square-free decomposition (Yun), then Zassenhaus
//! on each square-free part: Berlekamp modulo a small prime, Hensel lifting,
//! and recombination of the lifted factors by trial division.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Poly;

/// `unit · Π factor^mult`, factors monic irreducible and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: BigRational,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        let mut p = Poly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            p = &p * &f.pow(*m);
        }
        p
    }
}

/// Yun's algorithm: monic square-free `(a_i, i)` with `f = lc · Π a_i^i`.
pub fn square_free_decomposition(f: &Poly) -> Vec<(Poly, u32)> {
    assert!(!f.is_zero());
    let f = f.monic();
    let df = f.derivative();
    let b = Poly::gcd(&f, &df);
    let mut c = f.div_exact(&b);
    let mut d = &df.div_exact(&b) - &c.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while !c.is_constant() {
        let a = Poly::gcd(&c, &d);
        c = c.div_exact(&a);
        d = &d.div_exact(&a) - &c.derivative();
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

pub fn factor(f: &Poly) -> Factorization {
    assert!(!f.is_zero(), "factoring the zero polynomial");
    let mut factors = Vec::new();
    for (a, m) in square_free_decomposition(f) {
        let (_, prim) = a.primitive_part();
        for g in zassenhaus(&prim) {
            factors.push((Poly::from_ints(&g).monic(), m));
        }
    }
    factors.sort_by(|a, b| (a.0.deg(), &a.0).cmp(&(b.0.deg(), &b.0)));
    Factorization { unit: f.lead(), factors }
}

/// Monic irreducible factors of `f`, without multiplicity.
pub fn irreducible_factors(f: &Poly) -> Vec<Poly> {
    factor(f).factors.into_iter().map(|(p, _)| p).collect()
}

// ---------- arithmetic in F_p[x], coefficients low to high ----------

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (a as i64, p as i64);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(p as i64) as u64
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p).collect())
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    trim(c)
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a.clone());
    }
    let inv = inv_mod(b[db], p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let f = r[k + db] * inv % p;
        if f != 0 {
            for (j, y) in b.iter().enumerate() {
                r[k + j] = (r[k + j] + p - f * y % p) % p;
            }
        }
        q[k] = f;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    let inv = inv_mod(*a.last().unwrap(), p);
    a.iter().map(|x| x * inv % p).collect()
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    if a.is_empty() {
        a
    } else {
        fp_monic(&a, p)
    }
}

/// `(s, t)` with `s a + t b = 1` for coprime a, b.
fn fp_bezout(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    assert_eq!(r0.len(), 1, "Bezout on non-coprime polynomials");
    let inv = inv_mod(r0[0], p);
    let sc = |v: Fp| trim(v.iter().map(|x| x * inv % p).collect());
    (sc(s0), sc(t0))
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    trim(a.iter().enumerate().skip(1).map(|(i, x)| (i as u64 % p) * x % p).collect())
}

fn fp_powmod(base: &Fp, mut e: u64, m: &Fp, p: u64) -> Fp {
    let mut r = vec![1u64];
    let mut b = fp_divrem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            r = fp_divrem(&fp_mul(&r, &b, p), m, p).1;
        }
        b = fp_divrem(&fp_mul(&b, &b, p), m, p).1;
        e >>= 1;
    }
    r
}

fn reduce_mod_p(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

/// Kernel of an n×n matrix over F_p.
fn nullspace(mut a: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = a.len();
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(piv) = (row..n).find(|&r| a[r][col] != 0) else { continue };
        a.swap(row, piv);
        let inv = inv_mod(a[row][col], p);
        for x in a[row].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..n {
            if r != row && a[r][col] != 0 {
                let f = a[r][col];
                for c in 0..cols {
                    a[r][c] = (a[r][c] + p - f * a[row][c] % p) % p;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - a[r][free]) % p;
        }
        basis.push(v);
    }
    basis
}

/// Monic irreducible factors of a monic square-free polynomial over F_p.
fn berlekamp(f: &Fp, p: u64) -> Vec<Fp> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let xp = fp_powmod(&vec![0, 1], p, f, p);
    let mut q = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        let mut row = cur.clone();
        row.resize(n, 0);
        q.push(row);
        cur = fp_divrem(&fp_mul(&cur, &xp, p), f, p).1;
    }
    // v (Q − I) = 0, i.e. (Q − I)ᵀ vᵀ = 0
    let m: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| (q[i][j] + if i == j { p - 1 } else { 0 }) % p).collect()).collect();
    let basis = nullspace(m, p);
    let r = basis.len();
    let mut factors = vec![f.clone()];
    for v in &basis {
        if factors.len() == r {
            break;
        }
        let v = trim(v.clone());
        if v.len() <= 1 {
            continue;
        }
        let mut next = Vec::new();
        for g in factors {
            if g.len() == 2 {
                next.push(g);
                continue;
            }
            let mut rest = g;
            for s in 0..p {
                if rest.len() <= 1 {
                    break;
                }
                let h = fp_gcd(&rest, &fp_sub(&v, &vec![s], p), p);
                if h.len() > 1 {
                    rest = fp_divrem(&rest, &h, p).0;
                    next.push(h);
                }
            }
        }
        factors = next;
    }
    factors.sort();
    factors
}

// ---------- Hensel lifting in (ℤ/p^k)[x] ----------

fn zmod(a: Vec<BigInt>, m: &BigInt) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = a.into_iter().map(|c| c.mod_floor(m)).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn from_fp(a: &Fp) -> Vec<BigInt> {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

/// Lifts `F ≡ g h (mod p)` with g, h monic to `F ≡ G H (mod p^k)`; F is monic.
fn hensel_pair(big_f: &[BigInt], g: &Fp, h: &Fp, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (s, _) = fp_bezout(g, h, p);
    let pb = BigInt::from(p);
    let (mut gg, mut hh) = (from_fp(g), from_fp(h));
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let prod = zmul(&gg, &hh);
        let n = big_f.len().max(prod.len());
        let diff: Vec<BigInt> =
            (0..n).map(|i| big_f.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default()).collect();
        let diff = zmod(diff, &next);
        let e: Fp = trim(diff.iter().map(|c| (c / &pj).mod_floor(&pb).to_u64().unwrap()).collect());
        let gp = reduce_mod_p(&gg, p);
        let hp = reduce_mod_p(&hh, p);
        let dh = fp_divrem(&fp_mul(&e, &s, p), &hp, p).1;
        let (dg, rem) = fp_divrem(&fp_sub(&e, &fp_mul(&gp, &dh, p), p), &hp, p);
        debug_assert!(rem.is_empty());
        let bump = |base: &mut Vec<BigInt>, d: &Fp| {
            for (i, c) in d.iter().enumerate() {
                base[i] += BigInt::from(*c) * &pj;
            }
        };
        bump(&mut gg, &dg);
        bump(&mut hh, &dh);
        pj = next;
    }
    (zmod(gg, &pj), zmod(hh, &pj))
}

fn hensel_all(big_f: &[BigInt], factors: &[Fp], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let m = BigInt::from(p).pow(k);
    if factors.len() == 1 {
        return vec![zmod(big_f.to_vec(), &m)];
    }
    let g = &factors[0];
    let h = factors[1..].iter().fold(vec![1u64], |acc, x| fp_mul(&acc, x, p));
    let (gl, hl) = hensel_pair(big_f, g, &h, p, k);
    let mut out = vec![gl];
    out.extend(hensel_all(&hl, &factors[1..], p, k));
    out
}

const PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131, 137,
    139, 149, 151, 157, 163, 167, 173, 179,
];

/// Irreducible factors over ℤ of a primitive square-free integer polynomial.
pub fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    // among a few admissible primes, the one with fewest modular factors
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for &p in &PRIMES {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce_mod_p(f, p);
        if fp_gcd(&fp, &fp_derivative(&fp, p), p).len() != 1 {
            continue;
        }
        let fs = berlekamp(&fp_monic(&fp, p), p);
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (p, modular) = best.expect("no admissible prime");
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    // Mignotte: every factor g has ‖g‖∞ ≤ 2^deg ‖f‖₂ ≤ 2^n ‖f‖₁
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm1;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    let lc_inv = lc.extended_gcd(&m).x.mod_floor(&m);
    let monic_f = zmod(f.iter().map(|c| c * &lc_inv).collect(), &m);
    let lifted = hensel_all(&monic_f, &modular, p, k);

    let half = &m >> 1;
    let symmetric = |v: Vec<BigInt>| -> Vec<BigInt> { v.into_iter().map(|c| if c > half { c - &m } else { c }).collect() };
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut fcur = Poly::from_ints(f);
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= remaining.len() {
        let mut found = None;
        for subset in subsets(&remaining, s) {
            let lcur = fcur.lead().to_integer();
            let mut g = vec![lcur];
            for &i in &subset {
                g = zmod(zmul(&g, &lifted[i]), &m);
            }
            let (_, prim) = Poly::from_ints(&symmetric(g)).primitive_part();
            let cand = Poly::from_ints(&prim);
            if cand.deg() >= 1 && cand.divides(&fcur) {
                found = Some((subset, prim, cand));
                break;
            }
        }
        match found {
            Some((subset, prim, cand)) => {
                fcur = fcur.div_exact(&cand);
                remaining.retain(|i| !subset.contains(i));
                out.push(prim);
            }
            None => s += 1,
        }
    }
    let (_, rest) = fcur.primitive_part();
    if rest.len() > 1 {
        out.push(rest);
    }
    out
}

fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        if items.len() - i < k {
            break;
        }
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, items[i]);
            out.push(rest);
        }
    }
    out
}
