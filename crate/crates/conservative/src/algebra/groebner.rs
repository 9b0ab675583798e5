//! Groebner bases of zero-dimensional systems under graded reverse
//! lexicographic order, plus minimal polynomials of quotient-ring elements.
//!
//! Everything read off the basis (quotient dimension, triviality, positive
//! dimension, minimal polynomials of residue classes) is independent of the
//! monomial order, so the order is chosen purely for speed: grevlex keeps
//! Buchberger's intermediate degrees and coefficients small where lex
//! routinely blows up. Systems here are tiny (at most three variables), so
//! plain Buchberger with the coprimality criterion and the normal selection
//! strategy is enough.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{rat_int, MultiPoly, Rational, UniPoly};
use crate::{Error, Result};

const REDUCTION_CAP: usize = 20_000;

/// Reduced Groebner basis under grevlex.
pub struct GroebnerBasis {
    arity: usize,
    polys: Vec<MultiPoly>,
}

/// Graded reverse lexicographic order: higher total degree wins; on equal
/// degree the smaller exponent in the rightmost differing position wins.
fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

fn leading(p: &MultiPoly) -> (Vec<u32>, Rational) {
    let (e, c) = p
        .terms()
        .max_by(|(a, _), (b, _)| grevlex_cmp(a, b))
        .expect("nonzero polynomial");
    (e.clone(), c.clone())
}

fn divides(e: &[u32], by: &[u32]) -> bool {
    e.iter().zip(by).all(|(a, b)| a >= b)
}

/// Scale to integer coefficients of content one and positive leading
/// coefficient. Keeps basis coefficients small across reductions.
fn primitive(p: &MultiPoly) -> MultiPoly {
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
    }
    let mut num = BigInt::zero();
    for (_, c) in p.terms() {
        num = num.gcd(&(c.numer() * (&den / c.denom())));
    }
    let scaled = p.scale(&Rational::new(den, num));
    if leading(&scaled).1.is_negative() {
        scaled.scale(&rat_int(-1))
    } else {
        scaled
    }
}

/// Full normal form of `f` with respect to `basis`.
fn normal_form(f: &MultiPoly, basis: &[MultiPoly]) -> MultiPoly {
    let arity = f.arity();
    let leads: Vec<(Vec<u32>, Rational)> = basis.iter().map(leading).collect();
    let mut p = f.clone();
    let mut rem = MultiPoly::zero(arity);
    while !p.is_zero() {
        let (e, c) = leading(&p);
        let hit = leads.iter().position(|(le, _)| divides(&e, le));
        match hit {
            Some(i) => {
                let (le, lc) = &leads[i];
                let q: Vec<u32> = e.iter().zip(le).map(|(a, b)| a - b).collect();
                let t = MultiPoly::monomial(arity, q, &c / lc);
                p = p.sub(&t.mul(&basis[i]));
            }
            None => {
                let t = MultiPoly::monomial(arity, e, c);
                rem = rem.add(&t);
                p = p.sub(&t);
            }
        }
    }
    rem
}

/// Buchberger's algorithm under grevlex. Generators must share an arity.
pub fn groebner_basis(gens: &[MultiPoly]) -> Result<GroebnerBasis> {
    let arity = gens.first().map_or(0, MultiPoly::arity);
    let mut basis: Vec<MultiPoly> = Vec::new();
    for g in gens {
        assert_eq!(g.arity(), arity, "arity mismatch");
        if !g.is_zero() {
            basis.push(primitive(g));
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.push((i, j));
        }
    }
    let mut work = 0usize;
    while !pairs.is_empty() {
        // Normal selection: smallest lcm by total degree, then lex.
        let mut pick = 0usize;
        let mut pick_key: Option<(u32, Vec<u32>)> = None;
        for (idx, &(i, j)) in pairs.iter().enumerate() {
            let (ei, _) = leading(&basis[i]);
            let (ej, _) = leading(&basis[j]);
            let lcm: Vec<u32> = ei.iter().zip(&ej).map(|(a, b)| *a.max(b)).collect();
            let key = (lcm.iter().sum::<u32>(), lcm);
            if pick_key.as_ref().is_none_or(|k| key < *k) {
                pick_key = Some(key);
                pick = idx;
            }
        }
        let (i, j) = pairs.swap_remove(pick);
        let (ei, _) = leading(&basis[i]);
        let (ej, _) = leading(&basis[j]);
        if ei.iter().zip(&ej).all(|(a, b)| *a.min(b) == 0) {
            continue;
        }
        let lcm: Vec<u32> = ei.iter().zip(&ej).map(|(a, b)| *a.max(b)).collect();
        let mi: Vec<u32> = lcm.iter().zip(&ei).map(|(l, e)| l - e).collect();
        let mj: Vec<u32> = lcm.iter().zip(&ej).map(|(l, e)| l - e).collect();
        let ci = leading(&basis[i]).1;
        let cj = leading(&basis[j]).1;
        let s = MultiPoly::monomial(arity, mi, cj)
            .mul(&basis[i])
            .sub(&MultiPoly::monomial(arity, mj, ci).mul(&basis[j]));
        let r = normal_form(&s, &basis);
        work += 1;
        if work > REDUCTION_CAP {
            return Err(Error::Resource {
                what: "Groebner reduction steps".into(),
                cap: REDUCTION_CAP,
            });
        }
        if !r.is_zero() {
            let r = primitive(&r);
            for k in 0..basis.len() {
                pairs.push((k, basis.len()));
            }
            basis.push(r);
        }
    }
    // Minimize: drop polynomials whose lead is divisible by another lead.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        let (ei, _) = leading(&basis[i]);
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (ej, _) = leading(&basis[j]);
            if divides(&ei, &ej) && (ei != ej || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<MultiPoly> = basis
        .into_iter()
        .zip(&keep)
        .filter_map(|(p, &k)| k.then_some(p))
        .collect();
    // Reduce: normal form of each member against the others, made monic.
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MultiPoly> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, p)| (j != i).then(|| p.clone()))
            .collect();
        let r = normal_form(&minimal[i], &others);
        if !r.is_zero() {
            let lc = leading(&r).1;
            reduced.push(r.scale(&lc.recip()));
        }
    }
    reduced.sort_by(|a, b| grevlex_cmp(&leading(a).0, &leading(b).0));
    Ok(GroebnerBasis {
        arity,
        polys: reduced,
    })
}

impl GroebnerBasis {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn polys(&self) -> &[MultiPoly] {
        &self.polys
    }

    pub fn normal_form(&self, f: &MultiPoly) -> MultiPoly {
        normal_form(f, &self.polys)
    }

    /// True when the ideal is the whole ring (empty variety).
    pub fn is_trivial(&self) -> bool {
        self.polys.iter().any(|p| p.is_constant() && !p.is_zero())
    }

    /// Monomials below the staircase, i.e. a basis of the quotient ring.
    /// Errors with `PositiveDimension` when some variable has no pure power
    /// among the leading terms.
    pub fn staircase(&self) -> Result<Vec<Vec<u32>>> {
        if self.is_trivial() {
            return Ok(Vec::new());
        }
        let leads: Vec<Vec<u32>> = self.polys.iter().map(|p| leading(p).0).collect();
        let mut bounds = Vec::with_capacity(self.arity);
        for i in 0..self.arity {
            let bound = leads
                .iter()
                .filter(|e| e.iter().enumerate().all(|(j, &x)| j == i || x == 0))
                .map(|e| e[i])
                .min();
            match bound {
                Some(b) => bounds.push(b),
                None => {
                    return Err(Error::PositiveDimension(format!(
                        "no pure power of x{i} among the leading terms"
                    )))
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.arity];
        enumerate_box(&bounds, 0, &mut cur, &leads, &mut out);
        out.sort();
        Ok(out)
    }

    /// Dimension of the quotient ring (number of solutions counted with
    /// multiplicity).
    pub fn quotient_dim(&self) -> Result<usize> {
        Ok(self.staircase()?.len())
    }

    /// Matrix of multiplication by `phi` on the quotient ring, together with
    /// the staircase basis it acts on.
    pub fn multiplication_map(&self, phi: &MultiPoly) -> Result<QuotientMap> {
        assert_eq!(phi.arity(), self.arity, "arity mismatch");
        let stair = self.staircase()?;
        let mut cols = Vec::with_capacity(stair.len());
        for m in &stair {
            let prod = phi.mul(&MultiPoly::monomial(self.arity, m.clone(), Rational::one()));
            cols.push(class_vector(&self.normal_form(&prod), &stair));
        }
        Ok(QuotientMap { stair, cols })
    }

    /// Staircase coordinates of the residue class of `f`.
    pub fn class_of(&self, map: &QuotientMap, f: &MultiPoly) -> Vec<Rational> {
        class_vector(&self.normal_form(f), &map.stair)
    }

    /// Minimal polynomial of the residue class of `phi` in the quotient
    /// ring. Its roots are exactly the values of `phi` on the variety.
    pub fn minimal_polynomial_of(&self, phi: &MultiPoly) -> Result<UniPoly> {
        self.multiplication_map(phi)?.minimal_polynomial()
    }
}

fn class_vector(nf: &MultiPoly, stair: &[Vec<u32>]) -> Vec<Rational> {
    let mut col = vec![Rational::zero(); stair.len()];
    for (e, c) in nf.terms() {
        let i = stair.binary_search(e).expect("staircase monomial");
        col[i] = c.clone();
    }
    col
}

/// Multiplication by a fixed ring element on the staircase basis of the
/// quotient ring.
pub struct QuotientMap {
    stair: Vec<Vec<u32>>,
    /// Column `j` holds the class of `phi * stair[j]` in staircase
    /// coordinates.
    cols: Vec<Vec<Rational>>,
}

impl QuotientMap {
    pub fn dim(&self) -> usize {
        self.stair.len()
    }

    /// Column-major matrix entries: `matrix()[j][i]` is the coefficient of
    /// `stair[i]` in the image of `stair[j]`.
    pub fn matrix(&self) -> &[Vec<Rational>] {
        &self.cols
    }

    /// Position of the class of `1` in the staircase. The quotient must be
    /// nonzero.
    pub fn one_index(&self) -> usize {
        let arity = self.stair.first().expect("nonzero quotient").len();
        self.stair
            .binary_search(&vec![0u32; arity])
            .expect("constant class")
    }

    /// Minimal polynomial of the map, from the Krylov sequence of the class
    /// of `1`.
    pub fn minimal_polynomial(&self) -> Result<UniPoly> {
        let n = self.stair.len();
        if n == 0 {
            return Ok(UniPoly::one());
        }
        let cols = &self.cols;
        let mut v = vec![Rational::zero(); n];
        v[self.one_index()] = Rational::one();
        // Echelon rows: (pivot, row, combination over Krylov powers).
        let mut echelon: Vec<(usize, Vec<Rational>, Vec<Rational>)> = Vec::new();
        let mut power = 0usize;
        loop {
            let mut row = v.clone();
            let mut combo = vec![Rational::zero(); power + 1];
            combo[power] = Rational::one();
            for (piv, erow, ecombo) in &echelon {
                if row[*piv].is_zero() {
                    continue;
                }
                let factor = row[*piv].clone();
                for (r, e) in row.iter_mut().zip(erow) {
                    *r = &*r - &(&factor * e);
                }
                for (k, c) in ecombo.iter().enumerate() {
                    if k < combo.len() {
                        combo[k] = &combo[k] - &(&factor * c);
                    } else {
                        combo.push(-(&factor * c));
                    }
                }
            }
            match row.iter().position(|x| !x.is_zero()) {
                None => {
                    // First dependence: combo gives the minimal polynomial.
                    let mp = UniPoly::new(combo);
                    return Ok(mp.monic());
                }
                Some(piv) => {
                    let inv = row[piv].clone().recip();
                    let row: Vec<Rational> = row.iter().map(|x| x * &inv).collect();
                    let combo: Vec<Rational> = combo.iter().map(|x| x * &inv).collect();
                    echelon.push((piv, row, combo));
                }
            }
            if power > n {
                return Err(Error::Internal(
                    "Krylov sequence failed to terminate".into(),
                ));
            }
            power += 1;
            // v = M v.
            let mut next = vec![Rational::zero(); n];
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                for (i, item) in next.iter_mut().enumerate() {
                    let t = &cols[j][i] * vj;
                    *item = &*item + &t;
                }
            }
            v = next;
        }
    }
}

fn enumerate_box(
    bounds: &[u32],
    var: usize,
    cur: &mut Vec<u32>,
    leads: &[Vec<u32>],
    out: &mut Vec<Vec<u32>>,
) {
    if var == bounds.len() {
        if !leads.iter().any(|e| divides(cur, e)) {
            out.push(cur.clone());
        }
        return;
    }
    for k in 0..bounds[var] {
        cur[var] = k;
        enumerate_box(bounds, var + 1, cur, leads, out);
    }
    cur[var] = 0;
}
