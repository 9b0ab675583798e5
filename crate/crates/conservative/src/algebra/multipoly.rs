//! Sparse multivariate polynomials and subresultant resultants.
//!
//! A [`MultiPoly`] has a fixed arity; terms map exponent vectors to nonzero
//! rational coefficients. The map's key order (lex on the exponent vector)
//! doubles as the monomial order for exact division.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::{Rational, UniPoly};
use crate::{Error, Result};

/// Polynomial in `arity` variables over Q.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    arity: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero(arity: usize) -> Self {
        MultiPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, r: Rational) -> Self {
        let mut p = MultiPoly::zero(arity);
        if !r.is_zero() {
            p.terms.insert(vec![0; arity], r);
        }
        p
    }

    pub fn one(arity: usize) -> Self {
        MultiPoly::constant(arity, Rational::one())
    }

    /// The variable `x_i`.
    pub fn var(arity: usize, i: usize) -> Self {
        assert!(i < arity, "variable index out of range");
        let mut e = vec![0; arity];
        e[i] = 1;
        MultiPoly::monomial(arity, e, Rational::one())
    }

    pub fn monomial(arity: usize, exps: Vec<u32>, coeff: Rational) -> Self {
        assert_eq!(exps.len(), arity, "exponent arity mismatch");
        let mut p = MultiPoly::zero(arity);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    pub fn from_unipoly(p: &UniPoly, arity: usize, var: usize) -> Self {
        assert!(var < arity, "variable index out of range");
        let mut out = MultiPoly::zero(arity);
        for (k, a) in p.coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut e = vec![0; arity];
            e[var] = k as u32;
            out.terms.insert(e, a.clone());
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// The constant value, if the polynomial is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if !self.is_constant() {
            return None;
        }
        self.terms.values().next().cloned()
    }

    pub fn terms(&self) -> std::collections::btree_map::Iter<'_, Vec<u32>, Rational> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Indices of variables that actually occur.
    pub fn vars_present(&self) -> Vec<usize> {
        (0..self.arity)
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    fn insert_add(&mut self, exps: Vec<u32>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &MultiPoly) -> MultiPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> MultiPoly {
        if r.is_zero() {
            return MultiPoly::zero(self.arity);
        }
        MultiPoly {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * r)).collect(),
        }
    }

    pub fn mul(&self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, rhs.arity, "arity mismatch");
        let mut out = MultiPoly::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_add(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.arity);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Leading term under the storage (lex) order.
    fn leading_term(&self) -> Option<(&Vec<u32>, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor`, or `None` when not divisible.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        assert_eq!(self.arity, divisor.arity, "arity mismatch");
        let (eg, cg) = divisor.leading_term()?;
        let (eg, cg) = (eg.clone(), cg.clone());
        let mut f = self.clone();
        let mut q = MultiPoly::zero(self.arity);
        while let Some((ef, cf)) = f.leading_term() {
            if !ef.iter().zip(&eg).all(|(x, y)| x >= y) {
                return None;
            }
            let e: Vec<u32> = ef.iter().zip(&eg).map(|(x, y)| x - y).collect();
            let t = MultiPoly::monomial(self.arity, e, cf / &cg);
            f = f.sub(&t.mul(divisor));
            q = q.add(&t);
        }
        Some(q)
    }

    /// Coefficients with respect to `x_i`, lowest first; variable `i` is
    /// zeroed out of every coefficient. Empty iff the polynomial is zero.
    pub fn as_univariate_in(&self, i: usize) -> Vec<MultiPoly> {
        assert!(i < self.arity, "variable index out of range");
        let Some(d) = self.degree_in(i) else {
            return Vec::new();
        };
        let mut out = vec![MultiPoly::zero(self.arity); d as usize + 1];
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            let mut e2 = e.clone();
            e2[i] = 0;
            out[k].insert_add(e2, c.clone());
        }
        out
    }

    pub fn from_univariate_in(arity: usize, i: usize, coeffs: &[MultiPoly]) -> MultiPoly {
        assert!(i < arity, "variable index out of range");
        let mut out = MultiPoly::zero(arity);
        for (k, c) in coeffs.iter().enumerate() {
            assert_eq!(c.arity, arity, "arity mismatch");
            for (e, v) in &c.terms {
                debug_assert_eq!(e[i], 0);
                let mut e2 = e.clone();
                e2[i] += k as u32;
                out.insert_add(e2, v.clone());
            }
        }
        out
    }

    /// Substitutes the polynomial `g` for `x_i` (Horner in `x_i`).
    pub fn substitute(&self, i: usize, g: &MultiPoly) -> MultiPoly {
        assert_eq!(self.arity, g.arity, "arity mismatch");
        let coeffs = self.as_univariate_in(i);
        let mut acc = MultiPoly::zero(self.arity);
        for c in coeffs.iter().rev() {
            acc = acc.mul(g).add(c);
        }
        acc
    }

    /// Substitutes a rational value for `x_i`.
    pub fn substitute_rational(&self, i: usize, r: &Rational) -> MultiPoly {
        self.substitute(i, &MultiPoly::constant(self.arity, r.clone()))
    }

    pub fn derivative_in(&self, i: usize) -> MultiPoly {
        assert!(i < self.arity, "variable index out of range");
        let mut out = MultiPoly::zero(self.arity);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.insert_add(e2, c * &Rational::from_integer(e[i].into()));
        }
        out
    }

    /// Evaluates at a full rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.arity, "point arity mismatch");
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = &t * &point[i];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// View as a univariate polynomial in `x_i`; errors if any other
    /// variable occurs.
    pub fn to_unipoly_in(&self, i: usize) -> Result<UniPoly> {
        let extra: Vec<usize> = self.vars_present().into_iter().filter(|&v| v != i).collect();
        if !extra.is_empty() {
            return Err(Error::Internal(format!(
                "polynomial is not univariate in x{i}: also involves {extra:?}"
            )));
        }
        let mut c = vec![Rational::zero(); self.degree_in(i).map_or(0, |d| d as usize + 1)];
        for (e, v) in &self.terms {
            c[e[i] as usize] = v.clone();
        }
        Ok(UniPoly::new(c))
    }

    /// Quotient and remainder with respect to `x_i`; the divisor's leading
    /// coefficient in `x_i` must be a nonzero constant.
    pub fn divrem_in(&self, i: usize, divisor: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
        assert_eq!(self.arity, divisor.arity, "arity mismatch");
        let dcoeffs = divisor.as_univariate_in(i);
        let Some(lead) = dcoeffs.last() else {
            return Err(Error::Internal("division by the zero polynomial".into()));
        };
        let Some(lead) = lead.as_rational() else {
            return Err(Error::Internal(
                "divisor leading coefficient is not invertible".into(),
            ));
        };
        let dd = dcoeffs.len() - 1;
        let mut rem = self.as_univariate_in(i);
        let mut quo = vec![MultiPoly::zero(self.arity); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = rem[rem.len() - 1].scale(&lead.recip());
            if !q.is_zero() {
                for (j, dc) in dcoeffs.iter().enumerate() {
                    let t = q.mul(dc);
                    rem[k + j] = rem[k + j].sub(&t);
                }
                quo[k] = q;
            }
            debug_assert!(rem.last().is_some_and(MultiPoly::is_zero));
            rem.pop();
        }
        Ok((
            MultiPoly::from_univariate_in(self.arity, i, &quo),
            MultiPoly::from_univariate_in(self.arity, i, &rem),
        ))
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{i}")?,
                    _ => write!(f, "*x{i}^{k}")?,
                }
            }
        }
        Ok(())
    }
}

/// Integral domain with exact division, as needed by the subresultant
/// algorithm and fraction-free elimination.
pub trait Domain: Clone {
    fn vanishes(&self) -> bool;
    fn one_like(&self) -> Self;
    fn neg(&self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Exact division; `None` when `other` does not divide `self`.
    fn exact_div(&self, other: &Self) -> Option<Self>;

    fn zero_like(&self) -> Self {
        self.sub(self)
    }

    fn pow_u(&self, e: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

impl Domain for Rational {
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn neg(&self) -> Self {
        -self
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        if Zero::is_zero(other) {
            None
        } else {
            Some(self / other)
        }
    }
}

impl Domain for MultiPoly {
    fn vanishes(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.arity)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
    fn sub(&self, other: &Self) -> Self {
        MultiPoly::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        MultiPoly::mul(self, other)
    }
    fn exact_div(&self, other: &Self) -> Option<Self> {
        MultiPoly::exact_div(self, other)
    }
}

/// Dense polynomial over a coefficient domain, for the resultant routines.
/// Lowest degree first, no trailing zeros.
struct DPoly<D: Domain>(Vec<D>);

impl<D: Domain> DPoly<D> {
    fn new(mut c: Vec<D>) -> Self {
        while c.last().is_some_and(Domain::vanishes) {
            c.pop();
        }
        DPoly(c)
    }

    fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lc(&self) -> &D {
        self.0.last().expect("nonzero polynomial")
    }

    fn scale(&self, r: &D) -> Self {
        DPoly::new(self.0.iter().map(|a| a.mul(r)).collect())
    }

    fn exact_div_scalar(&self, r: &D) -> Option<Self> {
        let mut out = Vec::with_capacity(self.0.len());
        for a in &self.0 {
            out.push(a.exact_div(r)?);
        }
        Some(DPoly::new(out))
    }

    /// Pseudo-remainder: `lc(d)^(deg s - deg d + 1) * s = q*d + r`.
    fn pseudo_rem(&self, d: &DPoly<D>) -> DPoly<D> {
        let dd = d.degree().expect("nonzero divisor");
        let Some(sd) = self.degree() else {
            return DPoly(Vec::new());
        };
        debug_assert!(sd >= dd, "pseudo_rem expects deg(self) >= deg(divisor)");
        let lead = d.lc().clone();
        let mut rem = self.0.clone();
        let mut steps = sd - dd + 1;
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let top = rem.last().expect("nonempty").clone();
            for a in rem.iter_mut() {
                *a = a.mul(&lead);
            }
            for (i, dc) in d.0.iter().enumerate() {
                rem[k + i] = rem[k + i].sub(&top.mul(dc));
            }
            debug_assert!(rem.last().is_some_and(Domain::vanishes));
            rem.pop();
            while rem.last().is_some_and(Domain::vanishes) {
                rem.pop();
            }
            steps -= 1;
        }
        // Top up so the total premultiplier is exactly lc^(sd-dd+1).
        let mut out = DPoly::new(rem);
        for _ in 0..steps {
            out = out.scale(&lead);
        }
        out
    }
}

/// Resultant of `f` and `g` in the main variable, by the subresultant
/// polynomial remainder sequence.
fn subresultant_resultant<D: Domain>(f: DPoly<D>, g: DPoly<D>) -> D {
    let (Some(df), Some(dg)) = (f.degree(), g.degree()) else {
        // res(f, 0) = 0 unless the other argument is a nonzero constant,
        // in which case the Sylvester matrix is empty or a power of zero.
        let live = if f.degree().is_some() { f } else { g };
        return match live.degree() {
            Some(0) => live.lc().one_like(),
            Some(_) => live.lc().zero_like(),
            None => panic!("resultant of two zero polynomials"),
        };
    };
    let mut s_negative = false;
    let (mut a, mut b) = if df >= dg {
        (f, g)
    } else {
        if df % 2 == 1 && dg % 2 == 1 {
            s_negative = !s_negative;
        }
        (g, f)
    };
    if b.degree() == Some(0) {
        let res = b.lc().pow_u(a.degree().expect("nonzero") as u32);
        return if s_negative { res.neg() } else { res };
    }
    let mut g_coef = a.lc().one_like();
    let mut h_coef = a.lc().one_like();
    loop {
        let da = a.degree().expect("nonzero");
        let db = b.degree().expect("nonzero");
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            s_negative = !s_negative;
        }
        let r = a.pseudo_rem(&b);
        a = b;
        let divisor = g_coef.mul(&h_coef.pow_u(delta));
        b = match r.degree() {
            None => DPoly(Vec::new()),
            Some(_) => r
                .exact_div_scalar(&divisor)
                .expect("subresultant division is exact"),
        };
        g_coef = a.lc().clone();
        h_coef = match delta {
            0 => h_coef,
            1 => g_coef.clone(),
            _ => g_coef
                .pow_u(delta)
                .exact_div(&h_coef.pow_u(delta - 1))
                .expect("subresultant h update is exact"),
        };
        match b.degree() {
            None => return a.lc().zero_like(),
            Some(0) => {
                let da = a.degree().expect("nonzero") as u32;
                let res = match da {
                    0 => b.lc().one_like(),
                    1 => b.lc().clone(),
                    _ => b
                        .lc()
                        .pow_u(da)
                        .exact_div(&h_coef.pow_u(da - 1))
                        .expect("final subresultant division is exact"),
                };
                return if s_negative { res.neg() } else { res };
            }
            Some(_) => {}
        }
    }
}

/// Resultant of `f` and `g` with respect to `x_var`; the result does not
/// involve `x_var`.
pub fn resultant_in(f: &MultiPoly, g: &MultiPoly, var: usize) -> MultiPoly {
    assert_eq!(f.arity(), g.arity(), "arity mismatch");
    let fp = DPoly::new(f.as_univariate_in(var));
    let gp = DPoly::new(g.as_univariate_in(var));
    if fp.degree().is_none() && gp.degree().is_none() {
        return MultiPoly::zero(f.arity());
    }
    if fp.degree().is_none() || gp.degree().is_none() {
        let live = if fp.degree().is_some() { fp } else { gp };
        return match live.degree() {
            Some(0) => MultiPoly::one(f.arity()),
            _ => MultiPoly::zero(f.arity()),
        };
    }
    subresultant_resultant(fp, gp)
}

/// Resultant via Bareiss fraction-free elimination of the Sylvester matrix.
/// Independent of [`resultant_in`]; intended for cross-checking.
pub fn sylvester_resultant_in(f: &MultiPoly, g: &MultiPoly, var: usize) -> MultiPoly {
    assert_eq!(f.arity(), g.arity(), "arity mismatch");
    let arity = f.arity();
    let fc = f.as_univariate_in(var);
    let gc = g.as_univariate_in(var);
    if fc.is_empty() && gc.is_empty() {
        return MultiPoly::zero(arity);
    }
    if fc.is_empty() || gc.is_empty() {
        let live = if fc.is_empty() { &gc } else { &fc };
        return match live.len() {
            1 => MultiPoly::one(arity),
            _ => MultiPoly::zero(arity),
        };
    }
    let (m, n) = (fc.len() - 1, gc.len() - 1);
    let size = m + n;
    if size == 0 {
        return MultiPoly::one(arity);
    }
    let mut mat = vec![vec![MultiPoly::zero(arity); size]; size];
    for (row, chunk) in mat.iter_mut().take(n).enumerate() {
        for (k, c) in fc.iter().enumerate() {
            chunk[row + m - k] = c.clone();
        }
    }
    for (idx, chunk) in mat.iter_mut().skip(n).enumerate() {
        for (k, c) in gc.iter().enumerate() {
            chunk[idx + n - k] = c.clone();
        }
    }
    bareiss_determinant(mat)
}

/// Determinant by Bareiss fraction-free elimination.
fn bareiss_determinant<D: Domain>(mut m: Vec<Vec<D>>) -> D {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n), "square matrix");
    let mut sign_negative = false;
    let mut prev: Option<D> = None;
    for k in 0..n - 1 {
        if m[k][k].vanishes() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].vanishes()) else {
                return m[k][k].zero_like();
            };
            m.swap(k, p);
            sign_negative = !sign_negative;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let mut t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                if let Some(p) = &prev {
                    t = t.exact_div(p).expect("Bareiss division is exact");
                }
                m[i][j] = t;
            }
            m[i][k] = m[i][k].zero_like();
        }
        prev = Some(m[k][k].clone());
    }
    let det = m[n - 1][n - 1].clone();
    if sign_negative {
        det.neg()
    } else {
        det
    }
}
