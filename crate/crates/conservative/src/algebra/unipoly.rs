//! Dense univariate polynomials over the rationals.
//!
//! Coefficients are stored lowest degree first with no trailing zeros.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::{Error, Result};

/// Polynomial in one variable over Q.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    /// Coefficients, lowest first; empty iff zero; last entry nonzero.
    c: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { c: coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> Self {
        UniPoly::new(vec![r])
    }

    /// The identity polynomial `z`.
    pub fn var() -> Self {
        UniPoly::monomial(1, Rational::one())
    }

    pub fn monomial(degree: usize, coeff: Rational) -> Self {
        if coeff.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![Rational::zero(); degree + 1];
        c[degree] = coeff;
        UniPoly { c }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&n| super::rat_int(n)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Coefficient of `z^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.c.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn leading_coeff(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.c.last().is_some_and(One::is_one)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            c: self.c.iter().map(|a| a * r).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return UniPoly::zero();
        }
        self.scale(&self.leading_coeff().recip())
    }

    pub fn derivative(&self) -> Self {
        if self.c.len() <= 1 {
            return UniPoly::zero();
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| a * Rational::from(BigInt::from(k)))
            .collect();
        UniPoly::new(c)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for a in self.c.iter().rev() {
            acc = &acc * x + a;
        }
        acc
    }

    /// Horner composition `self(g)`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * g) + &UniPoly::constant(a.clone());
        }
        acc
    }

    /// `self(s z + u)` without building the composition generically.
    pub fn compose_linear(&self, s: &Rational, u: &Rational) -> UniPoly {
        self.compose(&UniPoly::new(vec![u.clone(), s.clone()]))
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divrem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let Some(dd) = d.degree() else {
            return Err(Error::Internal("division by the zero polynomial".into()));
        };
        let lead = d.leading_coeff();
        let mut rem = self.c.clone();
        let mut quo = vec![Rational::zero(); self.c.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let q = &rem[rem.len() - 1] / &lead;
            if !q.is_zero() {
                for (i, dc) in d.c.iter().enumerate() {
                    let t = &q * dc;
                    rem[k + i] = &rem[k + i] - &t;
                }
                quo[k] = q;
            }
            debug_assert!(rem.last().is_some_and(Zero::is_zero));
            rem.pop();
        }
        Ok((UniPoly::new(quo), UniPoly::new(rem)))
    }

    /// Exact quotient; errors if the division leaves a remainder.
    pub fn exact_div(&self, d: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.divrem(d)?;
        if !r.is_zero() {
            return Err(Error::Internal("inexact polynomial division".into()));
        }
        Ok(q)
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `gcd` together with Bezout cofactors: `g = s*self + t*other`.
    pub fn extended_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading_coeff().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Largest squarefree divisor `self / gcd(self, self')`, made monic.
    pub fn squarefree_part(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return if self.is_zero() { UniPoly::zero() } else { UniPoly::one() };
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).expect("gcd divides").monic()
    }

    /// Yun squarefree decomposition: pairs `(factor, multiplicity)` with the
    /// factors monic, squarefree, pairwise coprime, and
    /// `self = lc * prod factor^multiplicity`.
    pub fn yun_squarefree(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.exact_div(&a).expect("gcd divides");
        let mut c = df.exact_div(&a).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut mult = 1usize;
        loop {
            let p = b.gcd(&d);
            if p.degree().unwrap_or(0) > 0 {
                out.push((p.clone(), mult));
            }
            b = b.exact_div(&p).expect("gcd divides");
            if b.degree() == Some(0) {
                break;
            }
            c = d.exact_div(&p).expect("gcd divides");
            d = &c - &b.derivative();
            mult += 1;
        }
        out
    }

    /// Writes `self = content * primitive` with `primitive` an integer
    /// polynomial of positive leading coefficient and coefficient gcd 1.
    /// The zero polynomial yields content 0 and an empty coefficient list.
    pub fn primitive_integer_parts(&self) -> (Vec<BigInt>, Rational) {
        if self.is_zero() {
            return (Vec::new(), Rational::zero());
        }
        let mut den = BigInt::one();
        for a in &self.c {
            den = den.lcm(a.denom());
        }
        let scaled: Vec<BigInt> = self
            .c
            .iter()
            .map(|a| a.numer() * (&den / a.denom()))
            .collect();
        let mut g = BigInt::zero();
        for v in &scaled {
            g = g.gcd(v);
        }
        if scaled.last().expect("nonzero").is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = scaled.iter().map(|v| v / &g).collect();
        (prim, Rational::new(g, den))
    }

    /// Max absolute value of the coefficients (height).
    pub fn height(&self) -> Rational {
        let mut h = Rational::zero();
        for a in &self.c {
            let v = a.abs();
            if v > h {
                h = v;
            }
        }
        h
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_mag = mag.is_one();
            if k == 0 || !unit_mag {
                if mag.is_integer() {
                    write!(f, "{}", mag.numer())?;
                } else {
                    write!(f, "{}/{}", mag.numer(), mag.denom())?;
                }
                if k > 0 {
                    write!(f, "*")?;
                }
            }
            match k {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let (long, short) = if self.c.len() >= rhs.c.len() {
            (&self.c, &rhs.c)
        } else {
            (&rhs.c, &self.c)
        };
        let mut out = long.clone();
        for (o, s) in out.iter_mut().zip(short.iter()) {
            *o = &*o + s;
        }
        UniPoly::new(out)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let mut out = self.c.clone();
        if out.len() < rhs.c.len() {
            out.resize(rhs.c.len(), Rational::zero());
        }
        for (o, s) in out.iter_mut().zip(rhs.c.iter()) {
            *o = &*o - s;
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            c: self.c.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UniPoly::new(out)
    }
}
