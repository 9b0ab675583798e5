//! Isolation and classification of the fixed points of a conservative
//! polynomial: the critical points are superattracting, every other fixed
//! point is repelling.

use num_traits::One;

use crate::algebra::{ball_roots, eval_ball_poly, Ball, Rational};
use crate::error::Error;
use crate::Result;

use super::poly::{ball_derivative, ConservativePolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FixedPointClass {
    Superattracting,
    Repelling,
}

/// One fixed point with its certified multiplier.
#[derive(Clone, Debug)]
pub struct FixedPoint {
    pub location: Ball,
    /// Enclosure of the derivative at the point.
    pub multiplier: Ball,
    pub class: FixedPointClass,
    /// Index into the polynomial's critical points for superattracting ones.
    pub critical_index: Option<usize>,
}

/// All `d` fixed points: superattracting first, in critical-point order,
/// then repelling in center order.
#[derive(Clone, Debug)]
pub struct FixedPointSet {
    pub points: Vec<FixedPoint>,
}

impl FixedPointSet {
    pub fn superattracting(&self) -> Vec<usize> {
        self.ids_of(FixedPointClass::Superattracting)
    }

    pub fn repelling(&self) -> Vec<usize> {
        self.ids_of(FixedPointClass::Repelling)
    }

    fn ids_of(&self, class: FixedPointClass) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| self.points[i].class == class)
            .collect()
    }
}

/// Isolates the roots of `C(z) - z` and classifies each as superattracting
/// (a critical point) or repelling, escalating precision until every
/// classification is certified.
pub fn fixed_points(poly: &ConservativePolynomial, prec: u32) -> Result<FixedPointSet> {
    let cap = poly.max_precision();
    let mut p = prec.min(cap).max(32);
    for _ in 0..=4 {
        match attempt(poly, p) {
            Ok(Some(set)) => return Ok(set),
            Ok(None) => {}
            Err(Error::PrecisionExhausted(_)) => {}
            Err(e) => return Err(e),
        }
        if p >= cap {
            break;
        }
        p = (p * 2).min(cap);
    }
    Err(Error::PrecisionExhausted(format!(
        "fixed-point classification did not stabilize by {p} bits"
    )))
}

/// One classification pass at fixed precision; `None` asks for escalation.
fn attempt(poly: &ConservativePolynomial, p: u32) -> Result<Option<FixedPointSet>> {
    let wp = 2 * p + 64;
    let coeffs = poly.coeff_balls(wp);
    let mut fz = coeffs.clone();
    let one = Ball::from_rational(&Rational::one(), &num_traits::Zero::zero(), wp);
    fz[1] = fz[1].sub(&one, wp);
    let roots = ball_roots(&fz, p)?;
    if roots.len() != poly.degree() {
        return Err(Error::Internal(format!(
            "{} fixed points isolated for degree {}",
            roots.len(),
            poly.degree()
        )));
    }
    let deriv = ball_derivative(&coeffs, wp);
    let crit: Vec<Ball> = (0..poly.critical_points().len())
        .map(|i| poly.refined_critical(i, p))
        .collect::<Result<_>>()?;

    let one_bf = crate::algebra::BigFloat::from_i64(1);
    let mut supers: Vec<Option<FixedPoint>> = vec![None; crit.len()];
    let mut repelling = Vec::new();
    for root in &roots {
        let mu = eval_ball_poly(&deriv, root, wp);
        let hits: Vec<usize> = (0..crit.len()).filter(|&i| root.overlaps(&crit[i])).collect();
        match hits.as_slice() {
            [] => {
                if mu.abs_lb().cmp_value(&one_bf).is_gt() {
                    repelling.push(FixedPoint {
                        location: root.clone(),
                        multiplier: mu,
                        class: FixedPointClass::Repelling,
                        critical_index: None,
                    });
                } else {
                    return Ok(None);
                }
            }
            [i] => {
                if supers[*i].is_some() || !mu.abs_ub().cmp_value(&one_bf).is_lt() {
                    return Ok(None);
                }
                let tighter = if crit[*i].rad().cmp_value(root.rad()).is_lt() {
                    crit[*i].clone()
                } else {
                    root.clone()
                };
                supers[*i] = Some(FixedPoint {
                    location: tighter,
                    multiplier: mu,
                    class: FixedPointClass::Superattracting,
                    critical_index: Some(*i),
                });
            }
            _ => return Ok(None),
        }
    }
    let mut points = Vec::with_capacity(roots.len());
    for s in supers {
        match s {
            Some(fp) => points.push(fp),
            None => return Ok(None),
        }
    }
    points.extend(repelling);
    Ok(Some(FixedPointSet { points }))
}
