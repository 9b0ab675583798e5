//! Polynomial arithmetic over small prime fields, Berlekamp factorization,
//! and quadratic Hensel lifting to big-integer moduli.
//!
//! Polynomials over F_p are coefficient vectors, lowest degree first, with
//! entries reduced mod p and no trailing zeros. The prime always rides along
//! as a parameter; primes stay small enough that the Berlekamp splitting
//! scan over field elements is cheap.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn pm_deg(a: &[u64]) -> Option<usize> {
    a.len().checked_sub(1)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        r0 -= q * r1;
        std::mem::swap(&mut r0, &mut r1);
        t0 -= q * t1;
        std::mem::swap(&mut t0, &mut t1);
    }
    assert_eq!(r0, 1, "not invertible");
    t0.rem_euclid(p as i128) as u64
}

pub fn pm_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y % p) % p;
    }
    trim(out)
}

pub fn pm_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % p as u128;
        }
    }
    trim(out.into_iter().map(|v| v as u64).collect())
}

pub fn pm_scale(a: &[u64], s: u64, p: u64) -> Vec<u64> {
    trim(a.iter().map(|&x| mul_mod(x, s, p)).collect())
}

pub fn pm_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = pm_deg(b).expect("division by zero polynomial");
    let inv_lead = inv_mod(b[db], p);
    let mut rem: Vec<u64> = a.to_vec();
    let mut quo = vec![0u64; a.len().saturating_sub(db)];
    while rem.len() > db {
        let k = rem.len() - 1 - db;
        let q = mul_mod(rem[rem.len() - 1], inv_lead, p);
        if q != 0 {
            for (i, &bc) in b.iter().enumerate() {
                let t = mul_mod(q, bc, p);
                rem[k + i] = (rem[k + i] + p - t) % p;
            }
            quo[k] = q;
        }
        debug_assert_eq!(*rem.last().expect("nonempty"), 0);
        rem.pop();
        while rem.last() == Some(&0) {
            rem.pop();
        }
    }
    (trim(quo), trim(rem))
}

pub fn pm_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    pm_divrem(a, b, p).1
}

pub fn pm_monic(a: &[u64], p: u64) -> Vec<u64> {
    match pm_deg(a) {
        None => Vec::new(),
        Some(d) => pm_scale(a, inv_mod(a[d], p), p),
    }
}

pub fn pm_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = pm_rem(&x, &y, p);
        x = y;
        y = r;
    }
    pm_monic(&x, p)
}

/// Bezout pair for coprime `a`, `b`: `s a + t b = 1` mod p.
pub fn pm_bezout(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = pm_divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = pm_sub(&s0, &pm_mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = pm_sub(&t0, &pm_mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let d = pm_deg(&r0).expect("zero gcd");
    assert_eq!(d, 0, "inputs are not coprime");
    let inv = inv_mod(r0[0], p);
    (pm_scale(&s0, inv, p), pm_scale(&t0, inv, p))
}

pub fn pm_derivative(a: &[u64], p: u64) -> Vec<u64> {
    if a.len() <= 1 {
        return Vec::new();
    }
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| mul_mod(c, (k as u64) % p, p))
            .collect(),
    )
}

/// `base^e mod f` over F_p.
pub fn pm_powmod(base: &[u64], e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = pm_rem(base, f, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = pm_rem(&pm_mul(&acc, &b, p), f, p);
        }
        e >>= 1;
        if e > 0 {
            b = pm_rem(&pm_mul(&b, &b, p), f, p);
        }
    }
    acc
}

/// Number of monic irreducible factors of squarefree `f` mod p, via the
/// dimension of the Berlekamp kernel.
pub fn berlekamp_factor_count(f: &[u64], p: u64) -> usize {
    let (matrix, n) = berlekamp_matrix(f, p);
    n - rank_mod(matrix, n, p)
}

/// Q - I, where row i of Q holds `x^{i p} mod f`.
fn berlekamp_matrix(f: &[u64], p: u64) -> (Vec<Vec<u64>>, usize) {
    let n = pm_deg(f).expect("nonzero modulus");
    let xp = pm_powmod(&[0, 1], p, f, p);
    let mut rows = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for i in 0..n {
        let mut row = vec![0u64; n];
        for (j, &c) in cur.iter().enumerate() {
            row[j] = c;
        }
        row[i] = (row[i] + p - 1) % p;
        rows.push(row);
        if i + 1 < n {
            cur = pm_rem(&pm_mul(&cur, &xp, p), f, p);
        }
    }
    (rows, n)
}

fn rank_mod(mut m: Vec<Vec<u64>>, n: usize, p: u64) -> usize {
    let rows = m.len();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inv_mod(m[rank][col], p);
        for j in 0..n {
            m[rank][j] = mul_mod(m[rank][j], inv, p);
        }
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for j in 0..n {
                    let t = mul_mod(factor, m[rank][j], p);
                    m[r][j] = (m[r][j] + p - t) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Nullspace basis of the left action `v (Q - I) = 0`, i.e. the classical
/// Berlekamp subalgebra, as coefficient vectors of length deg f.
fn berlekamp_kernel(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let (m, n) = berlekamp_matrix(f, p);
    // Transpose: solve (Q - I)^T v = 0 by elimination.
    let mut t = vec![vec![0u64; n]; n];
    for (i, row) in m.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            t[j][i] = v;
        }
    }
    // Reduced row echelon form of t.
    let mut pivots: Vec<Option<usize>> = vec![None; n];
    let mut rank = 0usize;
    for col in 0..n {
        let Some(pr) = (rank..n).find(|&r| t[r][col] != 0) else {
            continue;
        };
        t.swap(rank, pr);
        let inv = inv_mod(t[rank][col], p);
        for j in 0..n {
            t[rank][j] = mul_mod(t[rank][j], inv, p);
        }
        for r in 0..n {
            if r != rank && t[r][col] != 0 {
                let factor = t[r][col];
                for j in 0..n {
                    let sub = mul_mod(factor, t[rank][j], p);
                    t[r][j] = (t[r][j] + p - sub) % p;
                }
            }
        }
        pivots[col] = Some(rank);
        rank += 1;
    }
    let mut basis = Vec::new();
    for col in 0..n {
        if pivots[col].is_some() {
            continue;
        }
        let mut v = vec![0u64; n];
        v[col] = 1;
        for c in 0..n {
            if let Some(r) = pivots[c] {
                let coeff = t[r][col];
                v[c] = (p - coeff) % p;
            }
        }
        basis.push(v);
    }
    basis
}

/// Full Berlekamp factorization of a monic squarefree polynomial mod p.
/// Returns monic irreducible factors, sorted.
pub fn berlekamp_factor(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = pm_deg(f).expect("nonzero polynomial");
    if n <= 1 {
        return vec![pm_monic(f, p)];
    }
    let kernel = berlekamp_kernel(f, p);
    let k = kernel.len();
    let mut factors = vec![pm_monic(f, p)];
    if k == 1 {
        return factors;
    }
    'outer: for v in &kernel {
        if pm_deg(v) == Some(0) || v.is_empty() {
            continue;
        }
        let mut next = Vec::new();
        for u in factors.drain(..) {
            if pm_deg(&u) == Some(1) {
                next.push(u);
                continue;
            }
            let mut pieces = vec![u];
            for c in 0..p {
                if pieces.iter().all(|q| pm_deg(q) == Some(1)) {
                    break;
                }
                let vc = pm_sub(v, &[c], p);
                let mut split_out = Vec::new();
                for q in pieces.drain(..) {
                    let g = pm_gcd(&q, &vc, p);
                    let dg = pm_deg(&g);
                    if dg.is_none() || dg == Some(0) || dg == pm_deg(&q) {
                        split_out.push(q);
                    } else {
                        let rest = pm_monic(&pm_divrem(&q, &g, p).0, p);
                        split_out.push(g);
                        split_out.push(rest);
                    }
                }
                pieces = split_out;
            }
            next.extend(pieces);
        }
        factors = next;
        if factors.len() == k {
            break 'outer;
        }
    }
    factors.sort();
    factors
}

/// Integer polynomial with coefficients reduced into `[0, m)`.
pub type PolyMod = Vec<BigInt>;

fn trim_big(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

pub fn pb_reduce(a: &[BigInt], m: &BigInt) -> PolyMod {
    trim_big(a.iter().map(|c| c.mod_floor(m)).collect())
}

pub fn pb_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> PolyMod {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    pb_reduce(&out, m)
}

pub fn pb_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> PolyMod {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::ZERO; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_else(|| BigInt::ZERO);
        let y = b.get(i).cloned().unwrap_or_else(|| BigInt::ZERO);
        *o = (x + y).mod_floor(m);
    }
    trim_big(out)
}

pub fn pb_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> PolyMod {
    let n = a.len().max(b.len());
    let mut out = vec![BigInt::ZERO; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_else(|| BigInt::ZERO);
        let y = b.get(i).cloned().unwrap_or_else(|| BigInt::ZERO);
        *o = (x - y).mod_floor(m);
    }
    trim_big(out)
}

/// Division by a monic divisor, coefficients mod m.
pub fn pb_divrem_monic(a: &[BigInt], d: &[BigInt], m: &BigInt) -> (PolyMod, PolyMod) {
    let dd = d.len().checked_sub(1).expect("nonzero divisor");
    assert!(d[dd].is_one(), "divisor must be monic");
    let mut rem: Vec<BigInt> = a.to_vec();
    let mut quo = vec![BigInt::ZERO; a.len().saturating_sub(dd)];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let q = rem.last().expect("nonempty").mod_floor(m);
        if !q.is_zero() {
            for (i, dc) in d.iter().enumerate() {
                let t = (&q * dc).mod_floor(m);
                rem[k + i] = (&rem[k + i] - t).mod_floor(m);
            }
            quo[k] = q;
        }
        debug_assert!(rem.last().expect("nonempty").is_zero());
        rem.pop();
        while rem.last().is_some_and(Zero::is_zero) {
            rem.pop();
        }
    }
    (trim_big(quo), trim_big(rem))
}

fn lift_u64(a: &[u64]) -> PolyMod {
    trim_big(a.iter().map(|&c| BigInt::from(c)).collect())
}

/// One quadratic Hensel step: from `f = g h (mod m)` with `s g + t h = 1
/// (mod m)` and `h` monic, produce the corresponding data mod `m^2`.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (PolyMod, PolyMod, PolyMod, PolyMod) {
    let m2 = m * m;
    let e = pb_sub(f, &pb_mul(g, h, &m2), &m2);
    let (_, r) = pb_divrem_monic(&pb_mul(s, &e, &m2), h, &m2);
    let h2 = pb_add(h, &r, &m2);
    // The cofactor mod m^2 is recovered by exact division, which also
    // revalidates the step.
    let (g2, rem) = pb_divrem_monic(f, &h2, &m2);
    debug_assert!(rem.is_empty(), "Hensel step lost divisibility");
    let b = pb_sub(&pb_add(&pb_mul(s, &g2, &m2), &pb_mul(t, &h2, &m2), &m2), &[BigInt::one()], &m2);
    let (c, d) = pb_divrem_monic(&pb_mul(s, &b, &m2), &h2, &m2);
    let s2 = pb_sub(s, &d, &m2);
    let t2 = pb_sub(&pb_sub(t, &pb_mul(t, &b, &m2), &m2), &pb_mul(&c, &g2, &m2), &m2);
    (g2, h2, s2, t2)
}

/// Lifts `f = prod(facs) (mod p)` to the same shape mod `p^K`; `f` must be
/// monic, squarefree mod p, and the mod-p factors monic and coprime.
pub fn hensel_multifactor(f: &[BigInt], facs: &[Vec<u64>], p: u64, target: &BigInt) -> Vec<PolyMod> {
    let f = pb_reduce(f, target);
    if facs.len() == 1 {
        return vec![f];
    }
    let (left, right) = facs.split_at(facs.len() / 2);
    let mut g0 = vec![1u64];
    for q in left {
        g0 = pm_mul(&g0, q, p);
    }
    let mut h0 = vec![1u64];
    for q in right {
        h0 = pm_mul(&h0, q, p);
    }
    let (s0, t0) = pm_bezout(&g0, &h0, p);
    let mut m = BigInt::from(p);
    let mut g = lift_u64(&g0);
    let mut h = lift_u64(&h0);
    let mut s = lift_u64(&s0);
    let mut t = lift_u64(&t0);
    while &m < target {
        let fm = pb_reduce(&f, &(&m * &m));
        let (g2, h2, s2, t2) = hensel_step(&fm, &g, &h, &s, &t, &m);
        g = g2;
        h = h2;
        s = s2;
        t = t2;
        m = &m * &m;
    }
    let g = pb_reduce(&g, target);
    let h = pb_reduce(&h, target);
    let mut out = hensel_multifactor(&g, left, p, target);
    out.extend(hensel_multifactor(&h, right, p, target));
    out
}

/// Reduces an integer polynomial mod p into F_p coefficients.
pub fn reduce_to_u64(a: &[BigInt], p: u64) -> Vec<u64> {
    trim(
        a.iter()
            .map(|c| c.mod_floor(&BigInt::from(p)).to_u64().expect("reduced"))
            .collect(),
    )
}

/// Centers a mod-m coefficient into `(-m/2, m/2]`.
pub fn center(c: &BigInt, m: &BigInt) -> BigInt {
    let half = m / 2;
    let r = c.mod_floor(m);
    if r > half {
        r - m
    } else {
        r
    }
}

/// True when `f mod p` is squarefree with degree preserved.
pub fn squarefree_mod(f: &[BigInt], p: u64) -> bool {
    let fp = reduce_to_u64(f, p);
    if pm_deg(&fp) != f.len().checked_sub(1) {
        return false;
    }
    let d = pm_derivative(&fp, p);
    if d.is_empty() {
        return false;
    }
    pm_deg(&pm_gcd(&fp, &d, p)) == Some(0)
}
