//! Invariant internal-ray tracing. Rays grow outward from a superattracting
//! fixed point by pulling already-traced sources back through the map with
//! Newton's method, subdividing sources whenever a step gets too coarse, and
//! stop once they certifiably approach a repelling fixed point.

use std::collections::VecDeque;

use crate::algebra::{det_atan2, det_sin_cos, BigFloat, Complex, Round};
use crate::error::Error;
use crate::Result;

use super::fixed::{fixed_points, FixedPointClass, FixedPointSet};
use super::poly::ConservativePolynomial;

/// Continuation steps allowed per ray, subdivisions included.
const STEP_BUDGET: usize = 100_000;
/// Newton iterations allowed per continuation step.
const NEWTON_CAP: usize = 60;

/// A traced invariant ray from a superattracting fixed point to the
/// repelling fixed point it lands at.
#[derive(Clone, Debug)]
pub struct InternalRay {
    /// Index of the critical point the ray emanates from.
    pub white: usize,
    /// Which of that point's rays this is; counterclockwise with the index.
    pub index: usize,
    /// Samples ordered from just outside the start toward the landing point.
    pub polyline: Vec<Complex>,
    /// Fixed-point id of the landing point.
    pub landing: usize,
    /// Direction of the first sample seen from the start, radians.
    pub start_angle: f64,
}

/// Traces one ray, isolating the fixed points first.
pub fn trace_ray(
    poly: &ConservativePolynomial,
    white: usize,
    index: usize,
    prec: u32,
) -> Result<InternalRay> {
    let fixed = fixed_points(poly, prec)?;
    trace_ray_from(poly, &fixed, white, index, prec)
}

/// Traces one ray against an already-computed fixed-point set.
pub fn trace_ray_from(
    poly: &ConservativePolynomial,
    fixed: &FixedPointSet,
    white: usize,
    index: usize,
    prec: u32,
) -> Result<InternalRay> {
    let cp = poly
        .critical_points()
        .get(white)
        .ok_or_else(|| Error::Validation(format!("no critical point with index {white}")))?;
    let alpha = cp.multiplicity;
    if index >= alpha {
        return Err(Error::Validation(format!(
            "ray index {index} out of range for multiplicity {alpha}"
        )));
    }
    let start = &fixed.points[white];
    if start.critical_index != Some(white) || start.class != FixedPointClass::Superattracting {
        return Err(Error::Internal(
            "fixed-point set does not list the critical points first".into(),
        ));
    }

    let wp = prec + 96;
    let coeffs = mid_coeffs(poly, wp);
    let dcoeffs = cx_derivative(&coeffs);
    let zeta = start.location.mid().round_to(wp).0;

    let dmin = nearest_distance(fixed, white, &zeta);
    if !(dmin.is_finite() && dmin > 0.0) {
        return Err(Error::Internal("degenerate fixed-point geometry".into()));
    }
    let min_sep = pairwise_separation(fixed);
    let landing_tol = BigFloat::two_pow(-(prec as i64) / 4);
    if landing_tol.to_f64() * 8.0 >= min_sep {
        return Err(Error::Tracing(format!(
            "landing tolerance 2^-{} exceeds the fixed-point separation",
            prec / 4
        )));
    }

    let (theta, amp) = local_direction(&coeffs, &zeta, alpha, index, wp)?;
    let r0 = 1e-3 * dmin;
    let (sin_t, cos_t) = det_sin_cos(theta);
    let dir = Complex::from_f64(cos_t, sin_t);
    let x0 = zeta.add(&dir.scale(&BigFloat::from_f64(r0))).round_to(wp).0;

    let landing_set = landing_candidates(fixed, &landing_tol, wp);
    let newton_tol = BigFloat::two_pow(-(prec as i64) / 2);
    let cap2 = BigFloat::from_f64((dmin / 8.0) * (dmin / 8.0));
    let min_chord2 = BigFloat::from_f64((dmin * 1e-13) * (dmin * 1e-13));
    let half = BigFloat::from_f64(0.5);
    let shrink = BigFloat::from_f64(0.64);

    let mut ray: Vec<Complex> = vec![x0.clone()];
    let mut targets: VecDeque<Complex> = VecDeque::new();
    targets.push_back(x0);
    let mut last_source = zeta.clone();

    for _ in 0..STEP_BUDGET {
        let t = targets.front().expect("sources never run dry").clone();
        let tip = ray.last().expect("ray holds its seed").clone();

        let guess = if ray.len() >= 2 {
            extrapolated_guess(&ray, &t, &last_source, &dcoeffs, wp)
        } else {
            local_guess(&zeta, &t, amp, alpha, theta)
        };
        let found = guess.and_then(|g| newton_preimage(&coeffs, &dcoeffs, &t, g, wp, &newton_tol));

        let accepted = found.and_then(|y| {
            let gap2 = y.sub(&tip).norm_sqr();
            if gap2.cmp_value(&cap2).is_gt() {
                return None;
            }
            let out2 = y.sub(&zeta).norm_sqr();
            let floor = tip.sub(&zeta).norm_sqr().mul(&shrink);
            if out2.cmp_value(&floor).is_lt() {
                return None;
            }
            Some(y)
        });

        match accepted {
            Some(y) => {
                ray.push(y.clone());
                targets.pop_front();
                targets.push_back(y.clone());
                last_source = t.clone();
                if let Some(id) = landed(&y, &t, &landing_set) {
                    return Ok(InternalRay {
                        white,
                        index,
                        polyline: ray,
                        landing: id,
                        start_angle: theta,
                    });
                }
            }
            None => {
                let chord2 = t.sub(&last_source).norm_sqr();
                if chord2.cmp_value(&min_chord2).is_lt() {
                    return Err(Error::Tracing(format!(
                        "branch ambiguity: source subdivision bottomed out on ray {index} of \
                         critical point {white}"
                    )));
                }
                let mid = last_source.add(&t).scale(&half).round_to(wp).0;
                targets.push_front(mid);
            }
        }
    }
    Err(Error::Tracing(format!(
        "ray {index} of critical point {white} exhausted its step budget"
    )))
}

impl InternalRay {
    /// Largest distance from the forward image of a sample to the part of
    /// the polyline inward of it (the start prepended). Small values witness
    /// forward invariance of the traced ray.
    pub fn invariance_defect(&self, poly: &ConservativePolynomial) -> f64 {
        let wp = poly.base_precision().min(192) + 64;
        let coeffs = mid_coeffs(poly, wp);
        let zeta = poly.critical_points()[self.white].location.mid().to_f64();
        let mut nodes = vec![zeta];
        nodes.extend(self.polyline.iter().map(|p| p.to_f64()));
        let mut worst = 0.0f64;
        for (i, sample) in self.polyline.iter().enumerate() {
            let image = horner(&coeffs, sample, wp).to_f64();
            let mut best = f64::INFINITY;
            for j in 0..=i {
                best = best.min(segment_distance(image, nodes[j], nodes[j + 1]));
            }
            worst = worst.max(best);
        }
        worst
    }
}

/// The angle of the `index`-th invariant direction and the local leading
/// coefficient magnitude at the start.
fn local_direction(
    coeffs: &[Complex],
    zeta: &Complex,
    alpha: usize,
    index: usize,
    wp: u32,
) -> Result<(f64, f64)> {
    let mut der = coeffs.to_vec();
    for _ in 0..alpha + 1 {
        der = cx_derivative(&der);
    }
    let lead = horner(&der, zeta, wp);
    let mut fact = 1.0f64;
    for i in 2..=alpha as u64 + 1 {
        fact *= i as f64;
    }
    let (re, im) = lead.to_f64();
    let amp = (re * re + im * im).sqrt() / fact;
    if !(amp.is_finite() && amp > 0.0) {
        return Err(Error::Internal(
            "vanishing leading local coefficient at a critical point".into(),
        ));
    }
    let arg = det_atan2(im, re);
    let theta =
        (-arg + 2.0 * std::f64::consts::PI * index as f64) / alpha as f64;
    Ok((theta, amp))
}

/// Preimage guess from the local normal form `w -> c w^(alpha+1)`.
fn local_guess(zeta: &Complex, t: &Complex, amp: f64, alpha: usize, theta: f64) -> Option<Complex> {
    let delta = t.sub(zeta);
    let (dx, dy) = delta.to_f64();
    let r = (dx * dx + dy * dy).sqrt();
    if !(r.is_finite() && r > 0.0) {
        return None;
    }
    let rad = (r / amp).powf(1.0 / (alpha as f64 + 1.0));
    let (s, c) = det_sin_cos(theta);
    Some(zeta.add(&Complex::from_f64(c, s).scale(&BigFloat::from_f64(rad))))
}

/// Preimage guess continuing the tip segment, scaled by the source gap over
/// the derivative at the tip. All lengths stay in big floats, so the guess
/// survives scales far below f64 range.
fn extrapolated_guess(
    ray: &[Complex],
    t: &Complex,
    last_source: &Complex,
    dcoeffs: &[Complex],
    wp: u32,
) -> Option<Complex> {
    let tip = &ray[ray.len() - 1];
    let prev = &ray[ray.len() - 2];
    let seg = tip.sub(prev);
    let seg_len = seg.abs_dir(64, Round::Nearest);
    if seg_len.is_zero() {
        return None;
    }
    let src_len = t.sub(last_source).abs_dir(64, Round::Nearest);
    let slope = horner(dcoeffs, tip, wp).abs_dir(64, Round::Nearest);
    if slope.is_zero() {
        return None;
    }
    let (per_len, _) = src_len.div_prec(&seg_len, 64, Round::Nearest);
    let (factor, _) = per_len.div_prec(&slope, 64, Round::Nearest);
    Some(tip.add(&seg.scale(&factor)))
}

/// Solves `C(y) = target` by Newton iteration from `guess`.
fn newton_preimage(
    coeffs: &[Complex],
    dcoeffs: &[Complex],
    target: &Complex,
    guess: Complex,
    wp: u32,
    tol: &BigFloat,
) -> Option<Complex> {
    let one = BigFloat::from_i64(1);
    let scale = BigFloat::max_value(&one, &target.abs_dir(64, Round::Away));
    let bound = tol.mul(&scale);
    let bound2 = bound.mul(&bound);
    let mut y = guess;
    for _ in 0..NEWTON_CAP {
        let fy = horner(coeffs, &y, wp).sub(target);
        if !fy.norm_sqr().cmp_value(&bound2).is_gt() {
            return Some(y);
        }
        let dy = horner(dcoeffs, &y, wp);
        if dy.norm_sqr().is_zero() {
            return None;
        }
        let (step, _) = fy.div_prec(&dy, wp);
        y = y.sub(&step).round_to(wp).0;
    }
    None
}

struct LandingCandidate {
    id: usize,
    location: Complex,
    tol2: BigFloat,
    log2_mu: f64,
}

fn landing_candidates(fixed: &FixedPointSet, tol: &BigFloat, wp: u32) -> Vec<LandingCandidate> {
    let one = BigFloat::from_i64(1);
    fixed
        .points
        .iter()
        .enumerate()
        .filter(|(_, fp)| fp.class == FixedPointClass::Repelling)
        .map(|(id, fp)| {
            let location = fp.location.mid().round_to(wp).0;
            let scale = BigFloat::max_value(&one, &location.abs_dir(64, Round::Away));
            let scaled = tol.mul(&scale);
            let (re, im) = fp.multiplier.mid().to_f64();
            LandingCandidate {
                id,
                location,
                tol2: scaled.mul(&scaled),
                log2_mu: (re * re + im * im).sqrt().log2(),
            }
        })
        .collect()
}

/// Landing test: inside the tolerance disk of a repelling point, with the
/// pullback from `source` to `y` contracting consistently with that point's
/// multiplier. `source` is the forward image of `y`, so the measured ratio
/// is one map application regardless of how targets were subdivided.
fn landed(y: &Complex, source: &Complex, candidates: &[LandingCandidate]) -> Option<usize> {
    for cand in candidates {
        let d2 = y.sub(&cand.location).norm_sqr();
        if d2.cmp_value(&cand.tol2).is_gt() {
            continue;
        }
        if d2.is_zero() {
            return Some(cand.id);
        }
        let src2 = source.sub(&cand.location).norm_sqr();
        let contraction = (bf_log2(&src2) - bf_log2(&d2)) / 2.0;
        if contraction > 0.2 * cand.log2_mu && contraction < 4.0 * cand.log2_mu + 1.0 {
            return Some(cand.id);
        }
    }
    None
}

fn nearest_distance(fixed: &FixedPointSet, skip: usize, zeta: &Complex) -> f64 {
    let mut best = f64::INFINITY;
    for (id, fp) in fixed.points.iter().enumerate() {
        if id == skip {
            continue;
        }
        let (dx, dy) = fp.location.mid().sub(zeta).to_f64();
        best = best.min((dx * dx + dy * dy).sqrt());
    }
    best
}

fn pairwise_separation(fixed: &FixedPointSet) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..fixed.points.len() {
        for j in i + 1..fixed.points.len() {
            let (dx, dy) = fixed.points[i]
                .location
                .mid()
                .sub(fixed.points[j].location.mid())
                .to_f64();
            best = best.min((dx * dx + dy * dy).sqrt());
        }
    }
    best
}

/// Rounded coefficient midpoints, lowest degree first.
pub(super) fn mid_coeffs(poly: &ConservativePolynomial, wp: u32) -> Vec<Complex> {
    poly.coeff_balls(wp)
        .iter()
        .map(|b| b.mid().round_to(wp).0)
        .collect()
}

pub(super) fn cx_derivative(coeffs: &[Complex]) -> Vec<Complex> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&BigFloat::from_i64(k as i64)))
        .collect()
}

/// Horner evaluation rounded back to working precision.
pub(super) fn horner(coeffs: &[Complex], z: &Complex, wp: u32) -> Complex {
    let mut acc = Complex::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(c);
    }
    acc.round_to(wp).0
}

/// Binary logarithm of a positive big float, via its exponent.
pub(super) fn bf_log2(x: &BigFloat) -> f64 {
    match x.log2_floor() {
        None => f64::NEG_INFINITY,
        Some(e) => {
            let mant = x.shl(-e).to_f64().abs();
            e as f64 + mant.log2()
        }
    }
}

/// Direction and log-magnitude of a complex difference, safe for
/// magnitudes far outside f64 range.
pub(super) fn dir_and_log(delta: &Complex) -> Option<(f64, f64)> {
    let (ere, eim) = (delta.re.log2_floor(), delta.im.log2_floor());
    let e = match (ere, eim) {
        (None, None) => return None,
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (Some(a), Some(b)) => a.max(b),
    };
    let sx = delta.re.shl(-e).to_f64();
    let sy = delta.im.shl(-e).to_f64();
    let arg = det_atan2(sy, sx);
    let r = (sx * sx + sy * sy).sqrt();
    Some((arg, r.ln() + e as f64 * std::f64::consts::LN_2))
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (vx, vy) = (b.0 - a.0, b.1 - a.1);
    let (wx, wy) = (p.0 - a.0, p.1 - a.1);
    let len2 = vx * vx + vy * vy;
    let t = if len2 > 0.0 {
        ((wx * vx + wy * vy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let (cx, cy) = (a.0 + t * vx - p.0, a.1 + t * vy - p.1);
    (cx * cx + cy * cy).sqrt()
}
