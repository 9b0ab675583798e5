//! Factorization over Q: Yun squarefree split, Berlekamp factorization mod a
//! small prime, quadratic Hensel lifting, and subset recombination with a
//! Landau-Mignotte coefficient bound.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::modp;
use super::{Rational, UniPoly};
use crate::{Error, Result};

const PRIME_SCAN_LIMIT: u64 = 50_000;
const PRIME_CANDIDATES: usize = 5;

/// Monic irreducible factors of `f` over Q with multiplicities, sorted by
/// degree and then coefficients. The rational content and leading
/// coefficient are dropped.
pub fn factor_rational(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    if f.is_zero() {
        return Err(Error::Internal("factoring the zero polynomial".into()));
    }
    let mut out: Vec<(UniPoly, usize)> = Vec::new();
    for (sqf, mult) in f.yun_squarefree() {
        let (prim, _) = sqf.primitive_integer_parts();
        for g in factor_primitive_squarefree(&prim)? {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| {
        (a.0.degree(), a.0.coeffs(), a.1).cmp(&(b.0.degree(), b.0.coeffs(), b.1))
    });
    Ok(out)
}

/// Factors a primitive squarefree integer polynomial; returns monic
/// rational irreducibles.
fn factor_primitive_squarefree(prim: &[BigInt]) -> Result<Vec<UniPoly>> {
    let n = prim.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let to_monic_rational = |coeffs: &[BigInt]| {
        UniPoly::new(
            coeffs
                .iter()
                .map(|c| Rational::from(c.clone()))
                .collect::<Vec<_>>(),
        )
        .monic()
    };
    if n == 1 {
        return Ok(vec![to_monic_rational(prim)]);
    }
    let a = prim[n].clone();
    // Monicize: F(x) = a^(n-1) f(x/a) is monic with integer coefficients;
    // factors of f are primitive parts of G(a x) for monic factors G of F.
    let monic: Vec<BigInt> = prim
        .iter()
        .enumerate()
        .map(|(k, c)| {
            if k == n {
                BigInt::one()
            } else {
                c * a.pow((n - 1 - k) as u32)
            }
        })
        .collect();
    debug_assert!(monic[n].is_one());
    let factors = factor_monic_squarefree(&monic)?;
    let mut out = Vec::new();
    for g in factors {
        let scaled: Vec<BigInt> = g
            .iter()
            .enumerate()
            .map(|(k, c)| c * a.pow(k as u32))
            .collect();
        out.push(to_monic_rational(&scaled));
    }
    out.sort_by(|x, y| (x.degree(), x.coeffs()).cmp(&(y.degree(), y.coeffs())));
    Ok(out)
}

fn factor_monic_squarefree(f: &[BigInt]) -> Result<Vec<Vec<BigInt>>> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.to_vec()]);
    }
    let (p, factor_count) = choose_prime(f)?;
    if factor_count == 1 {
        return Ok(vec![f.to_vec()]);
    }
    let fp = modp::reduce_to_u64(f, p);
    let modular = modp::berlekamp_factor(&fp, p);
    debug_assert_eq!(modular.len(), factor_count);
    // Landau-Mignotte: any monic factor has coefficients bounded by
    // 2^n * ||f||_2; lift until the modulus exceeds twice that.
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (norm_sq.sqrt() + 1) * (BigInt::one() << n);
    let target = bound * 2 + 1;
    let mut pk = BigInt::from(p);
    while pk < target {
        pk = &pk * &pk;
    }
    let lifted = modp::hensel_multifactor(f, &modular, p, &pk);
    Ok(recombine(f.to_vec(), lifted, &pk))
}

/// Deterministic prime selection: the first few odd primes where `f` stays
/// squarefree, keeping the one with the fewest modular factors.
fn choose_prime(f: &[BigInt]) -> Result<(u64, usize)> {
    let mut best: Option<(u64, usize)> = None;
    let mut seen = 0usize;
    let mut p = 3u64;
    while p < PRIME_SCAN_LIMIT {
        if modp::squarefree_mod(f, p) {
            let fp = modp::reduce_to_u64(f, p);
            let count = modp::berlekamp_factor_count(&fp, p);
            if count == 1 {
                return Ok((p, 1));
            }
            if best.as_ref().is_none_or(|&(_, c)| count < c) {
                best = Some((p, count));
            }
            seen += 1;
            if seen >= PRIME_CANDIDATES {
                break;
            }
        }
        p = next_odd_prime(p);
    }
    best.ok_or_else(|| {
        Error::Internal("no usable prime found for modular factorization".into())
    })
}

fn next_odd_prime(p: u64) -> u64 {
    let mut q = p + 2;
    'outer: loop {
        let mut d = 3u64;
        while d * d <= q {
            if q % d == 0 {
                q += 2;
                continue 'outer;
            }
            d += 2;
        }
        return q;
    }
}

fn recombine(mut f: Vec<BigInt>, lifted: Vec<modp::PolyMod>, pk: &BigInt) -> Vec<Vec<BigInt>> {
    let mut remaining = lifted;
    let mut out = Vec::new();
    let mut size = 1usize;
    while 2 * size <= remaining.len() {
        match find_subset(size, &remaining, &f, pk) {
            Some((subset, factor, quotient)) => {
                out.push(factor);
                f = quotient;
                for &i in subset.iter().rev() {
                    remaining.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if f.len() > 1 {
        out.push(f);
    }
    out.sort();
    out
}

#[allow(clippy::type_complexity)]
fn find_subset(
    size: usize,
    remaining: &[modp::PolyMod],
    f: &[BigInt],
    pk: &BigInt,
) -> Option<(Vec<usize>, Vec<BigInt>, Vec<BigInt>)> {
    let n = remaining.len();
    let mut idx: Vec<usize> = (0..size).collect();
    loop {
        let mut prod: modp::PolyMod = vec![BigInt::one()];
        for &i in &idx {
            prod = modp::pb_mul(&prod, &remaining[i], pk);
        }
        let centered: Vec<BigInt> = prod.iter().map(|c| modp::center(c, pk)).collect();
        if let Some(quotient) = divide_exact_int(f, &centered) {
            return Some((idx, centered, quotient));
        }
        // Advance to the next index combination.
        let mut pos = size;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            if idx[pos] + 1 <= n - (size - pos) {
                idx[pos] += 1;
                for j in pos + 1..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Exact division of integer polynomials with a monic divisor.
fn divide_exact_int(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let dd = d.len().checked_sub(1)?;
    if dd == 0 || a.len() <= dd {
        return None;
    }
    if !d[dd].is_one() {
        return None;
    }
    // Cheap screens before the full division.
    if !a[0].is_zero() && !d[0].is_zero() && !(&a[0] % &d[0]).is_zero() {
        return None;
    }
    let mut rem: Vec<BigInt> = a.to_vec();
    let mut quo = vec![BigInt::ZERO; a.len() - dd];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let q = rem.last().expect("nonempty").clone();
        if !q.is_zero() {
            for (i, dc) in d.iter().enumerate() {
                let t = &q * dc;
                rem[k + i] = &rem[k + i] - t;
            }
            quo[k] = q;
        }
        debug_assert!(rem.last().expect("nonempty").is_zero());
        rem.pop();
    }
    if rem.iter().all(Zero::is_zero) {
        Some(quo)
    } else {
        None
    }
}
