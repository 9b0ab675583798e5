//! Arithmetic in a number field Q[t]/(F) with F monic irreducible, plus
//! dense univariate polynomials over the field. Elements are reduced
//! representatives: rational polynomials in t of degree < deg F.

use num_traits::{One, Zero};

use super::{eval_unipoly, Ball, Rational, UniPoly};
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct NumberField {
    modulus: UniPoly,
}

impl NumberField {
    /// `modulus` must be monic (or at least nonconstant; it is normalised
    /// here) and irreducible; irreducibility is the caller's obligation and
    /// surfaces as an inversion failure if violated.
    pub fn new(modulus: &UniPoly) -> Result<NumberField> {
        match modulus.degree() {
            Some(n) if n >= 1 => Ok(NumberField {
                modulus: modulus.monic(),
            }),
            _ => Err(Error::Internal(
                "number field modulus must be nonconstant".into(),
            )),
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("nonconstant modulus")
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    pub fn reduce(&self, p: &UniPoly) -> UniPoly {
        p.divrem(&self.modulus).expect("nonzero modulus").1
    }

    /// The residue class of t.
    pub fn generator(&self) -> UniPoly {
        self.reduce(&UniPoly::var())
    }

    pub fn constant(&self, r: Rational) -> UniPoly {
        UniPoly::constant(r)
    }

    pub fn add(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a + b
    }

    pub fn sub(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a - b
    }

    pub fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        self.reduce(&(a * b))
    }

    pub fn inv(&self, a: &UniPoly) -> Result<UniPoly> {
        if a.is_zero() {
            return Err(Error::Internal("inversion of zero field element".into()));
        }
        let (g, s, _) = a.extended_gcd(&self.modulus);
        if g.degree() != Some(0) {
            return Err(Error::Internal(
                "element not invertible: modulus is reducible".into(),
            ));
        }
        // g is monic, hence 1, and s*a = 1 mod modulus.
        Ok(self.reduce(&s))
    }

    pub fn div(&self, a: &UniPoly, b: &UniPoly) -> Result<UniPoly> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &UniPoly, e: usize) -> UniPoly {
        let mut acc = UniPoly::one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Numeric embedding of an element at a certified root of the modulus.
    pub fn embed(&self, a: &UniPoly, root: &Ball, prec: u32) -> Ball {
        eval_unipoly(a, root, prec)
    }

    /// Minimal polynomial over Q of the element `a`, computed from the first
    /// linear dependence among its powers; monic, irreducible whenever the
    /// modulus is.
    pub fn minimal_polynomial(&self, a: &UniPoly) -> UniPoly {
        let n = self.degree();
        let to_vec = |p: &UniPoly| -> Vec<Rational> {
            (0..n).map(|i| p.coeff(i)).collect()
        };
        // Echelon rows: (pivot column, reduced vector, combination over powers).
        let mut rows: Vec<(usize, Vec<Rational>, Vec<Rational>)> = Vec::new();
        let mut power = UniPoly::one();
        for k in 0..=n {
            let mut vec = to_vec(&power);
            let mut combo = vec![Rational::zero(); n + 1];
            combo[k] = Rational::one();
            for (pivot, row, rcombo) in &rows {
                if !vec[*pivot].is_zero() {
                    let factor = vec[*pivot].clone();
                    for i in 0..n {
                        vec[i] = &vec[i] - &(&factor * &row[i]);
                    }
                    for i in 0..=n {
                        combo[i] = &combo[i] - &(&factor * &rcombo[i]);
                    }
                }
            }
            match vec.iter().position(|c| !c.is_zero()) {
                Some(pivot) => {
                    let lead = vec[pivot].clone();
                    for v in vec.iter_mut() {
                        *v = &*v / &lead;
                    }
                    for c in combo.iter_mut() {
                        *c = &*c / &lead;
                    }
                    rows.push((pivot, vec, combo));
                }
                None => return UniPoly::new(combo).monic(),
            }
            power = self.mul(&power, a);
        }
        unreachable!("powers 1..=degree are always dependent");
    }

    // ---- dense polynomials over the field, lowest degree first ----

    pub fn kp_normalize(&self, mut c: Vec<UniPoly>) -> Vec<UniPoly> {
        while c.last().is_some_and(|l| l.is_zero()) {
            c.pop();
        }
        c
    }

    pub fn kp_degree(c: &[UniPoly]) -> Option<usize> {
        if c.is_empty() {
            None
        } else {
            Some(c.len() - 1)
        }
    }

    pub fn kp_lc(c: &[UniPoly]) -> UniPoly {
        c.last().cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn kp_from_unipoly(&self, p: &UniPoly) -> Vec<UniPoly> {
        self.kp_normalize(p.coeffs().iter().map(|r| UniPoly::constant(r.clone())).collect())
    }

    pub fn kp_add(&self, a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
        let mut out = vec![UniPoly::zero(); a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] = &out[i] + c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] = &out[i] + c;
        }
        self.kp_normalize(out)
    }

    pub fn kp_sub(&self, a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
        let mut out = vec![UniPoly::zero(); a.len().max(b.len())];
        for (i, c) in a.iter().enumerate() {
            out[i] = &out[i] + c;
        }
        for (i, c) in b.iter().enumerate() {
            out[i] = &out[i] - c;
        }
        self.kp_normalize(out)
    }

    pub fn kp_scale(&self, a: &[UniPoly], s: &UniPoly) -> Vec<UniPoly> {
        self.kp_normalize(a.iter().map(|c| self.mul(c, s)).collect())
    }

    pub fn kp_mul(&self, a: &[UniPoly], b: &[UniPoly]) -> Vec<UniPoly> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![UniPoly::zero(); a.len() + b.len() - 1];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                out[i + j] = &out[i + j] + &(ca * cb);
            }
        }
        let out = out.into_iter().map(|c| self.reduce(&c)).collect();
        self.kp_normalize(out)
    }

    pub fn kp_monic(&self, a: &[UniPoly]) -> Result<Vec<UniPoly>> {
        if a.is_empty() {
            return Ok(Vec::new());
        }
        let inv = self.inv(&Self::kp_lc(a))?;
        Ok(self.kp_scale(a, &inv))
    }

    pub fn kp_divrem(&self, f: &[UniPoly], g: &[UniPoly]) -> Result<(Vec<UniPoly>, Vec<UniPoly>)> {
        let dg = Self::kp_degree(g)
            .ok_or_else(|| Error::Internal("division by the zero polynomial".into()))?;
        let lc_inv = self.inv(&Self::kp_lc(g))?;
        let mut rem: Vec<UniPoly> = f.to_vec();
        let mut quo: Vec<UniPoly> = Vec::new();
        while let Some(dr) = Self::kp_degree(&rem) {
            if dr < dg {
                break;
            }
            let c = self.mul(&rem[dr], &lc_inv);
            let shift = dr - dg;
            if quo.len() < shift + 1 {
                quo.resize(shift + 1, UniPoly::zero());
            }
            quo[shift] = &quo[shift] + &c;
            for (i, gc) in g.iter().enumerate() {
                let sub = self.mul(gc, &c);
                rem[i + shift] = &rem[i + shift] - &sub;
            }
            rem = self.kp_normalize(rem);
        }
        Ok((self.kp_normalize(quo), rem))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn kp_gcd(&self, f: &[UniPoly], g: &[UniPoly]) -> Result<Vec<UniPoly>> {
        let mut a = f.to_vec();
        let mut b = g.to_vec();
        while !b.is_empty() {
            let (_, r) = self.kp_divrem(&a, &b)?;
            a = b;
            b = r;
        }
        self.kp_monic(&a)
    }

    pub fn kp_derivative(&self, f: &[UniPoly]) -> Vec<UniPoly> {
        if f.len() <= 1 {
            return Vec::new();
        }
        let out = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&Rational::from_integer(i.into())))
            .collect();
        self.kp_normalize(out)
    }

    pub fn kp_squarefree_part(&self, f: &[UniPoly]) -> Result<Vec<UniPoly>> {
        if Self::kp_degree(f).unwrap_or(0) == 0 {
            return self.kp_monic(f);
        }
        let g = self.kp_gcd(f, &self.kp_derivative(f))?;
        let (q, r) = self.kp_divrem(f, &g)?;
        debug_assert!(r.is_empty());
        self.kp_monic(&q)
    }

    /// Yun's squarefree decomposition: pairwise-coprime monic parts with
    /// their multiplicities, ascending.
    pub fn kp_yun(&self, f: &[UniPoly]) -> Result<Vec<(Vec<UniPoly>, usize)>> {
        let mut out = Vec::new();
        if Self::kp_degree(f).unwrap_or(0) == 0 {
            return Ok(out);
        }
        let df = self.kp_derivative(f);
        let mut g = self.kp_gcd(f, &df)?;
        let mut w = self.kp_divrem(f, &g)?.0;
        let mut mult = 0usize;
        while Self::kp_degree(&w).unwrap_or(0) >= 1 {
            mult += 1;
            let next = self.kp_gcd(&w, &g)?;
            let part = self.kp_divrem(&w, &next)?.0;
            if Self::kp_degree(&part).unwrap_or(0) >= 1 {
                out.push((self.kp_monic(&part)?, mult));
            }
            g = self.kp_divrem(&g, &next)?.0;
            w = next;
        }
        Ok(out)
    }

    pub fn kp_eval(&self, f: &[UniPoly], x: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in f.iter().rev() {
            acc = &self.mul(&acc, x) + c;
        }
        acc
    }

    /// Coefficients embedded at a certified root of the modulus.
    pub fn kp_embed(&self, f: &[UniPoly], root: &Ball, prec: u32) -> Vec<Ball> {
        f.iter().map(|c| self.embed(c, root, prec)).collect()
    }

    /// Order of vanishing at zero: the number of leading zero coefficients.
    pub fn kp_order_at_zero(f: &[UniPoly]) -> usize {
        f.iter().take_while(|c| c.is_zero()).count()
    }
}
