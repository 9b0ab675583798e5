//! Rigorous disk arithmetic over the dyadic complex numbers.
//!
//! A [`Ball`] is a closed disk `{z : |z - center| <= radius}`. Every
//! operation returns a disk that contains the exact image set: centers are
//! rounded to the working precision and all rounding slop is folded into the
//! radius with upward rounding.

use num_traits::Zero;

use super::bigfloat::{BigFloat, Complex, Round};
use super::{Rational, UniPoly};
use crate::{Error, Result};

/// Radius arithmetic always rounds upward at this many bits.
const RADIUS_PREC: u32 = 64;

fn rad_add(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.add(b).round_to(RADIUS_PREC, Round::Away).0
}

fn rad_mul(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.mul(b).round_to(RADIUS_PREC, Round::Away).0
}

/// Closed complex disk.
#[derive(Clone, Debug)]
pub struct Ball {
    c: Complex,
    r: BigFloat,
}

impl Ball {
    /// Exact point as a zero-radius disk.
    pub fn exact(c: Complex) -> Ball {
        Ball {
            c,
            r: BigFloat::zero(),
        }
    }

    pub fn new(c: Complex, r: BigFloat) -> Ball {
        debug_assert!(!r.is_negative());
        Ball { c, r }
    }

    pub fn zero() -> Ball {
        Ball::exact(Complex::zero())
    }

    pub fn from_rational(re: &Rational, im: &Rational, prec: u32) -> Ball {
        let (nre, ere) = BigFloat::from_rational_err(re, prec + 8);
        let (nim, eim) = BigFloat::from_rational_err(im, prec + 8);
        Ball {
            c: Complex::new(nre, nim),
            r: rad_add(&ere, &eim),
        }
    }

    pub fn mid(&self) -> &Complex {
        &self.c
    }

    pub fn rad(&self) -> &BigFloat {
        &self.r
    }

    pub fn widen(&self, extra: &BigFloat) -> Ball {
        Ball {
            c: self.c.clone(),
            r: rad_add(&self.r, extra),
        }
    }

    pub fn neg(&self) -> Ball {
        Ball {
            c: self.c.neg(),
            r: self.r.clone(),
        }
    }

    pub fn conj(&self) -> Ball {
        Ball {
            c: self.c.conj(),
            r: self.r.clone(),
        }
    }

    pub fn add(&self, rhs: &Ball, prec: u32) -> Ball {
        let (c, slop) = self.c.add(&rhs.c).round_to(prec);
        let r = rad_add(&rad_add(&self.r, &rhs.r), &component_to_disk(&slop));
        Ball { c, r }
    }

    pub fn sub(&self, rhs: &Ball, prec: u32) -> Ball {
        self.add(&rhs.neg(), prec)
    }

    pub fn mul(&self, rhs: &Ball, prec: u32) -> Ball {
        let (c, slop) = self.c.mul(&rhs.c).round_to(prec);
        let a = self.c.abs_dir(RADIUS_PREC, Round::Away);
        let b = rhs.c.abs_dir(RADIUS_PREC, Round::Away);
        let mut r = rad_mul(&a, &rhs.r);
        r = rad_add(&r, &rad_mul(&b, &self.r));
        r = rad_add(&r, &rad_mul(&self.r, &rhs.r));
        r = rad_add(&r, &component_to_disk(&slop));
        Ball { c, r }
    }

    pub fn scale_rational(&self, s: &Rational, prec: u32) -> Ball {
        self.mul(&Ball::from_rational(s, &Rational::zero(), prec), prec)
    }

    /// Multiplicative inverse; errors when the disk may contain zero.
    pub fn inv(&self, prec: u32) -> Result<Ball> {
        let lower = self.abs_lb();
        if !lower.is_positive() {
            return Err(Error::PrecisionExhausted(
                "inverting a disk that may contain zero".into(),
            ));
        }
        let den = self.c.norm_sqr();
        let (re, e1) = self.c.re.div_prec(&den, prec, Round::Nearest);
        let (im, e2) = self.c.im.neg().div_prec(&den, prec, Round::Nearest);
        // |1/z - 1/c| = |z - c| / (|z| |c|) <= r / (lower * |c|).
        let abs_c = self.c.abs_dir(RADIUS_PREC, Round::Trunc);
        let denom = abs_c.mul(&lower);
        let prop = self.r.div_prec(&denom, RADIUS_PREC, Round::Away).0;
        let r = rad_add(&prop, &component_to_disk(&BigFloat::max_value(&e1, &e2)));
        Ok(Ball {
            c: Complex::new(re, im),
            r,
        })
    }

    pub fn div(&self, rhs: &Ball, prec: u32) -> Result<Ball> {
        Ok(self.mul(&rhs.inv(prec)?, prec))
    }

    pub fn pow_u(&self, e: u32, prec: u32) -> Ball {
        let mut acc = Ball::exact(Complex::real(BigFloat::from_i64(1)));
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, prec);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, prec);
            }
        }
        acc
    }

    /// Upper bound on `|z|` over the disk.
    pub fn abs_ub(&self) -> BigFloat {
        rad_add(&self.c.abs_dir(RADIUS_PREC, Round::Away), &self.r)
    }

    /// Lower bound on `|z|` over the disk (clamped at zero).
    pub fn abs_lb(&self) -> BigFloat {
        let v = self.c.abs_dir(RADIUS_PREC, Round::Trunc).sub(&self.r);
        if v.is_negative() {
            BigFloat::zero()
        } else {
            v
        }
    }

    pub fn contains_zero(&self) -> bool {
        !self.abs_lb().is_positive()
    }

    pub fn is_certainly_nonzero(&self) -> bool {
        self.abs_lb().is_positive()
    }

    /// True when the disks are certainly disjoint.
    pub fn disjoint_from(&self, other: &Ball) -> bool {
        let gap = self.c.sub(&other.c).abs_dir(RADIUS_PREC, Round::Trunc);
        let sum = rad_add(&self.r, &other.r);
        gap.cmp_value(&sum) == std::cmp::Ordering::Greater
    }

    /// True when this disk lies entirely inside `other`.
    pub fn inside(&self, other: &Ball) -> bool {
        let d = self.c.sub(&other.c).abs_dir(RADIUS_PREC, Round::Away);
        rad_add(&d, &self.r).cmp_value(&other.r) != std::cmp::Ordering::Greater
    }

    /// True when `other` overlaps this disk (not certainly disjoint).
    pub fn overlaps(&self, other: &Ball) -> bool {
        !self.disjoint_from(other)
    }
}

/// A componentwise error bound `e` on re and im yields a disk radius of at
/// most `2e` (the l1 bound dominates the l2 distance).
fn component_to_disk(e: &BigFloat) -> BigFloat {
    e.shl(1)
}

/// Evaluates a polynomial with disk coefficients, lowest degree first, over
/// a disk by Horner.
pub fn eval_ball_poly(coeffs: &[Ball], z: &Ball, prec: u32) -> Ball {
    let mut acc = Ball::zero();
    for a in coeffs.iter().rev() {
        acc = acc.mul(z, prec).add(a, prec);
    }
    acc
}

/// Evaluates a rational-coefficient polynomial over a disk by Horner.
pub fn eval_unipoly(poly: &UniPoly, z: &Ball, prec: u32) -> Ball {
    let mut acc = Ball::zero();
    for a in poly.coeffs().iter().rev() {
        acc = acc.mul(z, prec);
        if !a.is_zero() {
            acc = acc.add(&Ball::from_rational(a, &Rational::zero(), prec), prec);
        }
    }
    acc
}
