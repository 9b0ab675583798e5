//! Exact arithmetic substrate.
//!
//! Scalars are arbitrary-precision rationals ([`Rational`], backed by
//! `num-rational`). On top of those: dense univariate polynomials
//! ([`UniPoly`]), sparse multivariate polynomials ([`MultiPoly`]),
//! subresultant resultants, squarefree decomposition, factorization over Q,
//! certified complex root isolation in dyadic ball arithmetic, and a small
//! Groebner engine for zero-dimensional systems.

mod ball;
mod bigfloat;
mod factor;
mod groebner;
mod modp;
mod multipoly;
mod numberfield;
mod roots;
mod unipoly;

pub use ball::{eval_ball_poly, eval_unipoly, Ball};
pub use bigfloat::{det_atan2, det_sin_cos, BigFloat, Complex, Round};
pub use factor::factor_rational;
pub use groebner::{groebner_basis, GroebnerBasis, QuotientMap};
pub use multipoly::MultiPoly;
pub use numberfield::NumberField;
pub use roots::{ball_roots, complex_roots, refine_root};
pub use unipoly::UniPoly;

pub use multipoly::resultant_in;
pub use multipoly::sylvester_resultant_in;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::{Error, Result};

/// Exact rational scalar.
pub type Rational = BigRational;

/// Shorthand rational constructor.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn rat_int(n: i64) -> Rational {
    BigRational::from(BigInt::from(n))
}

/// Canonical `p/q` rendering (denominator always present and positive).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parsed = match s.split_once('/') {
        Some((num, den)) => {
            let n: BigInt = num.trim().parse().map_err(|_| bad_rat(s))?;
            let d: BigInt = den.trim().parse().map_err(|_| bad_rat(s))?;
            if d == BigInt::ZERO {
                return Err(bad_rat(s));
            }
            BigRational::new(n, d)
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| bad_rat(s))?;
            BigRational::from(n)
        }
    };
    Ok(parsed)
}

fn bad_rat(s: &str) -> Error {
    Error::Validation(format!("malformed rational {s:?}"))
}
