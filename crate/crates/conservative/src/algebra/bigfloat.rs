//! Arbitrary-precision dyadic floats and complex points.
//!
//! A [`BigFloat`] is `mant * 2^exp` held exactly; addition, subtraction and
//! multiplication are exact, while rounding is an explicit step that reports
//! an error bound. This keeps the ball layer's radius bookkeeping honest.

use std::cmp::Ordering;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

use super::Rational;

/// Rounding directions. `Away` moves away from zero, so on nonnegative
/// values it yields an upper bound; `Trunc` yields a lower bound there.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Round {
    Nearest,
    Away,
    Trunc,
}

/// Exact dyadic number `mant * 2^exp` with `mant` odd or zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
}

impl BigFloat {
    pub fn zero() -> Self {
        BigFloat {
            mant: BigInt::ZERO,
            exp: 0,
        }
    }

    pub fn from_bigint(m: BigInt) -> Self {
        BigFloat { mant: m, exp: 0 }.normalized()
    }

    pub fn from_i64(m: i64) -> Self {
        BigFloat::from_bigint(BigInt::from(m))
    }

    /// `2^e`.
    pub fn two_pow(e: i64) -> Self {
        BigFloat {
            mant: BigInt::from(1),
            exp: e,
        }
    }

    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite float");
        if x == 0.0 {
            return BigFloat::zero();
        }
        let bits = x.to_bits();
        let neg = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        let mut mant = BigInt::from(m);
        if neg {
            mant = -mant;
        }
        BigFloat { mant, exp: e }.normalized()
    }

    fn normalized(mut self) -> Self {
        if self.mant.is_zero() {
            self.exp = 0;
            return self;
        }
        if let Some(tz) = self.mant.trailing_zeros() {
            if tz > 0 {
                self.mant >>= tz;
                self.exp += tz as i64;
            }
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    /// Bit length of the mantissa.
    pub fn precision_bits(&self) -> u64 {
        self.mant.bits()
    }

    /// `floor(log2 |x|)`, or `None` for zero.
    pub fn log2_floor(&self) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(self.mant.bits() as i64 - 1 + self.exp)
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Exact sum.
    pub fn add(&self, rhs: &BigFloat) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mant << (self.exp - e) as usize;
        let b = &rhs.mant << (rhs.exp - e) as usize;
        BigFloat { mant: a + b, exp: e }.normalized()
    }

    /// Exact difference.
    pub fn sub(&self, rhs: &BigFloat) -> Self {
        self.add(&rhs.neg())
    }

    /// Exact product.
    pub fn mul(&self, rhs: &BigFloat) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return BigFloat::zero();
        }
        BigFloat {
            mant: &self.mant * &rhs.mant,
            exp: self.exp + rhs.exp,
        }
        .normalized()
    }

    /// Exact multiplication by `2^k`.
    pub fn shl(&self, k: i64) -> Self {
        if self.is_zero() {
            return BigFloat::zero();
        }
        BigFloat {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    /// Rounds to `prec` mantissa bits. Returns the rounded value and a bound
    /// on the absolute rounding error (zero when exact).
    pub fn round_to(&self, prec: u32, dir: Round) -> (BigFloat, BigFloat) {
        let bits = self.mant.bits();
        if bits <= prec as u64 {
            return (self.clone(), BigFloat::zero());
        }
        let k = (bits - prec as u64) as usize;
        let negative = self.mant.is_negative();
        let mag = self.mant.magnitude();
        let one = num_bigint::BigUint::from(1u8);
        let rounded_mag = match dir {
            Round::Trunc => mag >> k,
            Round::Away => (mag + ((&one << k) - &one)) >> k,
            Round::Nearest => (mag + (&one << (k - 1))) >> k,
        };
        let err_exp = self.exp
            + match dir {
                Round::Nearest => k as i64 - 1,
                _ => k as i64,
            };
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        let value = BigFloat {
            mant: BigInt::from_biguint(sign, rounded_mag),
            exp: self.exp + k as i64,
        }
        .normalized();
        (value, BigFloat::two_pow(err_exp))
    }

    /// Quotient rounded toward `dir` at `prec` bits, with an error bound.
    /// For `Away`/`Trunc` the result is a one-sided bound on the magnitude.
    pub fn div_prec(&self, rhs: &BigFloat, prec: u32, dir: Round) -> (BigFloat, BigFloat) {
        assert!(!rhs.is_zero(), "division by zero");
        if self.is_zero() {
            return (BigFloat::zero(), BigFloat::zero());
        }
        let na = self.mant.bits() as i64;
        let nb = rhs.mant.bits() as i64;
        let shift = (prec as i64 + 2 - (na - nb)).max(0) as usize;
        let num = self.mant.magnitude() << shift;
        let den = rhs.mant.magnitude();
        let (q, r) = num_integer::Integer::div_rem(&num, den);
        let negative = self.mant.is_negative() != rhs.mant.is_negative();
        let q = match dir {
            Round::Trunc | Round::Nearest => q,
            Round::Away => {
                if r.is_zero() {
                    q
                } else {
                    q + 1u8
                }
            }
        };
        let exp = self.exp - rhs.exp - shift as i64;
        let sign = if negative { Sign::Minus } else { Sign::Plus };
        let approx = BigFloat {
            mant: BigInt::from_biguint(sign, q),
            exp,
        }
        .normalized();
        // Truncation error is below one ulp at `exp`.
        let trunc_err = BigFloat::two_pow(exp);
        let (rounded, round_err) = approx.round_to(prec, dir);
        (rounded, trunc_err.add(&round_err))
    }

    /// Square root of a nonnegative value at `prec` bits; `Away` gives an
    /// upper bound, `Trunc` a lower bound.
    pub fn sqrt_prec(&self, prec: u32, dir: Round) -> BigFloat {
        assert!(!self.is_negative(), "square root of a negative value");
        if self.is_zero() {
            return BigFloat::zero();
        }
        let target = 2 * prec as u64 + 4;
        let bits = self.mant.bits();
        let mut extra = target.saturating_sub(bits) as i64;
        if (self.exp - extra) % 2 != 0 {
            extra += 1;
        }
        let m = self.mant.magnitude() << extra as usize;
        let root = m.sqrt();
        let root = match dir {
            Round::Trunc | Round::Nearest => root,
            Round::Away => {
                if &root * &root < m {
                    root + 1u8
                } else {
                    root
                }
            }
        };
        let value = BigFloat {
            mant: BigInt::from_biguint(Sign::Plus, root),
            exp: (self.exp - extra) / 2,
        }
        .normalized();
        value.round_to(prec, dir).0
    }

    pub fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from(&self.mant << self.exp as usize)
        } else {
            Rational::new(self.mant.clone(), BigInt::from(1) << (-self.exp) as usize)
        }
    }

    pub fn from_rational(r: &Rational, prec: u32, dir: Round) -> BigFloat {
        let num = BigFloat::from_bigint(r.numer().clone());
        let den = BigFloat::from_bigint(r.denom().clone());
        num.div_prec(&den, prec, dir).0
    }

    /// Rational conversion with a bound on the absolute error.
    pub fn from_rational_err(r: &Rational, prec: u32) -> (BigFloat, BigFloat) {
        let num = BigFloat::from_bigint(r.numer().clone());
        let den = BigFloat::from_bigint(r.denom().clone());
        num.div_prec(&den, prec, Round::Nearest)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let shift = bits - 53;
        let top = if shift > 0 {
            (&self.mant >> shift as usize).to_i64().expect("53-bit value")
        } else {
            self.mant.to_i64().expect("small value")
        };
        let e = self.exp + shift.max(0);
        if e > 1000 {
            return if self.is_negative() {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            };
        }
        if e < -1200 {
            return 0.0;
        }
        (top as f64) * 2f64.powi(e as i32)
    }

    pub fn cmp_value(&self, rhs: &BigFloat) -> Ordering {
        match (self.mant.sign(), rhs.mant.sign()) {
            (Sign::Minus, Sign::NoSign | Sign::Plus) => return Ordering::Less,
            (Sign::NoSign, Sign::Plus) => return Ordering::Less,
            (Sign::Plus, Sign::NoSign | Sign::Minus) => return Ordering::Greater,
            (Sign::NoSign, Sign::Minus) => return Ordering::Greater,
            (Sign::NoSign, Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        let d = self.sub(rhs);
        match d.mant.sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    pub fn min_value(a: &BigFloat, b: &BigFloat) -> BigFloat {
        if a.cmp_value(b) == Ordering::Greater {
            b.clone()
        } else {
            a.clone()
        }
    }

    pub fn max_value(a: &BigFloat, b: &BigFloat) -> BigFloat {
        if a.cmp_value(b) == Ordering::Less {
            b.clone()
        } else {
            a.clone()
        }
    }
}

/// Complex number with exact dyadic parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl Complex {
    pub fn zero() -> Self {
        Complex {
            re: BigFloat::zero(),
            im: BigFloat::zero(),
        }
    }

    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        Complex { re, im }
    }

    pub fn real(re: BigFloat) -> Self {
        Complex {
            re,
            im: BigFloat::zero(),
        }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Complex {
            re: BigFloat::from_f64(re),
            im: BigFloat::from_f64(im),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, rhs: &Complex) -> Complex {
        Complex {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }

    pub fn sub(&self, rhs: &Complex) -> Complex {
        Complex {
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }

    pub fn neg(&self) -> Complex {
        Complex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn conj(&self) -> Complex {
        Complex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    /// Exact product.
    pub fn mul(&self, rhs: &Complex) -> Complex {
        let re = self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im));
        let im = self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re));
        Complex { re, im }
    }

    pub fn scale(&self, r: &BigFloat) -> Complex {
        Complex {
            re: self.re.mul(r),
            im: self.im.mul(r),
        }
    }

    /// Exact `|z|^2`.
    pub fn norm_sqr(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    /// `|z|` rounded in the requested direction.
    pub fn abs_dir(&self, prec: u32, dir: Round) -> BigFloat {
        self.norm_sqr().sqrt_prec(prec, dir)
    }

    /// Rounds both components to `prec` bits (nearest); returns the rounded
    /// point and a bound valid for both component errors.
    pub fn round_to(&self, prec: u32) -> (Complex, BigFloat) {
        let (re, e1) = self.re.round_to(prec, Round::Nearest);
        let (im, e2) = self.im.round_to(prec, Round::Nearest);
        (Complex { re, im }, BigFloat::max_value(&e1, &e2))
    }

    /// Floating quotient at `prec` bits with a componentwise error bound.
    pub fn div_prec(&self, rhs: &Complex, prec: u32) -> (Complex, BigFloat) {
        let num = self.mul(&rhs.conj());
        let den = rhs.norm_sqr();
        let (re, e1) = num.re.div_prec(&den, prec, Round::Nearest);
        let (im, e2) = num.im.div_prec(&den, prec, Round::Nearest);
        (Complex { re, im }, BigFloat::max_value(&e1, &e2))
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// Deterministic sine and cosine built from IEEE basic operations only, so
/// results are identical across platforms. Accurate to roughly 1e-14 on
/// moderate arguments; used for starting guesses and pixel geometry, never
/// for certified values.
pub fn det_sin_cos(theta: f64) -> (f64, f64) {
    const TAU: f64 = std::f64::consts::TAU;
    let mut t = theta - TAU * (theta / TAU).floor();
    if t > std::f64::consts::PI {
        t -= TAU;
    }
    let t2 = t * t;
    let mut sin = t;
    let mut term = t;
    for k in 1..=21u32 {
        term = -term * t2 / ((2 * k) as f64 * (2 * k + 1) as f64);
        sin += term;
    }
    let mut cos = 1.0;
    let mut cterm = 1.0;
    for k in 1..=21u32 {
        cterm = -cterm * t2 / ((2 * k - 1) as f64 * (2 * k) as f64);
        cos += cterm;
    }
    (sin, cos)
}

/// Deterministic `atan2` from IEEE basic operations and square root.
pub fn det_atan2(y: f64, x: f64) -> f64 {
    use std::f64::consts::{FRAC_PI_2, PI};
    if y == 0.0 && x == 0.0 {
        return 0.0;
    }
    if y.abs() <= x.abs() {
        let base = det_atan(y / x);
        if x > 0.0 {
            base
        } else if y >= 0.0 {
            base + PI
        } else {
            base - PI
        }
    } else {
        let base = det_atan(x / y);
        if y > 0.0 {
            FRAC_PI_2 - base
        } else {
            -FRAC_PI_2 - base
        }
    }
}

fn det_atan(u: f64) -> f64 {
    // Three angle halvings, then a fast Taylor series.
    let mut v = u;
    for _ in 0..3 {
        v = v / (1.0 + (1.0 + v * v).sqrt());
    }
    let v2 = v * v;
    let mut acc = 0.0;
    for k in (1..=14).rev() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        acc = (acc + sign / (2 * k + 1) as f64) * v2;
    }
    8.0 * v * (1.0 + acc)
}
