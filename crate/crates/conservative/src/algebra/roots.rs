//! Certified complex root isolation.
//!
//! Approximation by the Aberth-Ehrlich iteration, then a posteriori
//! certification through Weierstrass disks: for a monic degree-n polynomial
//! and distinct points z_i, every root lies in the union of the disks
//! D(z_i, n |p(z_i)| / prod_{j != i} |z_i - z_j|), and a connected component
//! of m disks holds exactly m roots. Pairwise disjoint disks therefore
//! isolate one root each. All bounds are evaluated in ball arithmetic, so
//! the returned enclosures are rigorous.

use std::cmp::Ordering;

use num_traits::Zero;

use super::ball::{eval_unipoly, Ball};
use super::bigfloat::{det_sin_cos, BigFloat, Complex, Round};
use super::{Rational, UniPoly};
use crate::{Error, Result};

const MAX_ESCALATIONS: u32 = 5;
const MAX_PASSES: usize = 400;

/// Isolates the distinct complex roots of `f` (multiplicities discarded).
/// Each returned disk contains exactly one root of the squarefree part of
/// `f`, has radius at most `2^-prec`, and the disks are pairwise disjoint.
/// Sorted by center, real part first.
pub fn complex_roots(f: &UniPoly, prec: u32) -> Result<Vec<Ball>> {
    if f.is_zero() {
        return Err(Error::Internal("root isolation of the zero polynomial".into()));
    }
    let g = f.squarefree_part();
    let n = g.degree().expect("nonzero");
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        let root = -(g.coeff(0) / g.coeff(1));
        return Ok(vec![Ball::from_rational(&root, &Rational::zero(), prec.max(64))]);
    }
    let mut points = initial_points(&g, n);
    let mut wp = prec + 64 + 4 * (n as u32);
    for _ in 0..=MAX_ESCALATIONS {
        aberth_passes(&g, &mut points, wp, prec);
        if let Some(mut disks) = certify(&g, &points, wp, prec) {
            disks.sort_by(compare_centers);
            return Ok(disks);
        }
        wp *= 2;
    }
    Err(Error::PrecisionExhausted(format!(
        "root certification for degree {n} did not stabilize"
    )))
}

/// Isolates the roots of a polynomial given by coefficient enclosures,
/// lowest degree first. The true coefficients must describe a squarefree
/// polynomial and the leading enclosure must exclude zero. Each returned
/// disk contains exactly one root, the disks are pairwise disjoint, and
/// radii are at most `2^-prec`; the bound includes the coefficient
/// uncertainty, so `prec` must stay well below the coefficient precision.
pub fn ball_roots(coeffs: &[Ball], prec: u32) -> Result<Vec<Ball>> {
    let mut c: Vec<Ball> = coeffs.to_vec();
    while c.last().is_some_and(|l| l.mid().is_zero() && l.rad().is_zero()) {
        c.pop();
    }
    let n = match c.len() {
        0 => return Err(Error::Internal("root isolation of the zero polynomial".into())),
        k => k - 1,
    };
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead_lb = c[n].abs_lb();
    if !lead_lb.is_positive() {
        return Err(Error::PrecisionExhausted(
            "leading coefficient enclosure contains zero".into(),
        ));
    }
    if n == 1 {
        let wp = prec + 64;
        let root = c[0].neg().div(&c[1], wp).map_err(|_| {
            Error::PrecisionExhausted("leading coefficient enclosure contains zero".into())
        })?;
        if root.rad().cmp_value(&BigFloat::two_pow(-i64::from(prec))) == Ordering::Greater {
            return Err(Error::PrecisionExhausted(
                "linear root enclosure exceeds the requested radius".into(),
            ));
        }
        return Ok(vec![root]);
    }
    let mids: Vec<Complex> = c.iter().map(|b| b.mid().clone()).collect();
    let mut points = initial_points_from(&mids, n);
    let mut wp = prec + 64 + 4 * (n as u32);
    for _ in 0..=MAX_ESCALATIONS {
        aberth_passes_complex(&mids, &mut points, wp, prec);
        if let Some(mut disks) = certify_balls(&c, &lead_lb, &points, wp, prec) {
            disks.sort_by(compare_centers);
            return Ok(disks);
        }
        wp *= 2;
    }
    Err(Error::PrecisionExhausted(format!(
        "root certification for degree {n} did not stabilize"
    )))
}

/// Shrinks an isolating disk of a simple root of `f` until its radius is at
/// most `2^-target`, by the interval Newton operator.
pub fn refine_root(f: &UniPoly, enclosure: &Ball, target: u32) -> Result<Ball> {
    let df = f.derivative();
    let goal = BigFloat::two_pow(-i64::from(target));
    let mut b = enclosure.clone();
    let mut wp = target + 64;
    let mut stalls = 0u32;
    for _ in 0..(target as usize + 256) {
        if b.rad().cmp_value(&goal) != Ordering::Greater {
            return Ok(b);
        }
        let mid = Ball::exact(b.mid().clone());
        let fm = eval_unipoly(f, &mid, wp);
        let dfb = eval_unipoly(&df, &b, wp);
        let step = match fm.div(&dfb, wp) {
            Ok(s) => s,
            Err(_) => {
                wp *= 2;
                stalls += 1;
                if stalls > MAX_ESCALATIONS {
                    return Err(Error::PrecisionExhausted(
                        "interval Newton derivative enclosure kept zero".into(),
                    ));
                }
                continue;
            }
        };
        let next = mid.sub(&step, wp);
        if next.inside(&b) {
            b = next;
            continue;
        }
        // No contraction: intersect crudely by keeping the old disk but
        // raising precision; repeated failure means the enclosure is bad.
        wp *= 2;
        stalls += 1;
        if stalls > MAX_ESCALATIONS {
            return Err(Error::PrecisionExhausted(
                "interval Newton refinement stalled".into(),
            ));
        }
    }
    Err(Error::PrecisionExhausted("interval Newton did not reach target".into()))
}

fn compare_centers(a: &Ball, b: &Ball) -> Ordering {
    let re = a.mid().re.cmp_value(&b.mid().re);
    if re != Ordering::Equal {
        return re;
    }
    a.mid().im.cmp_value(&b.mid().im)
}

fn initial_points(g: &UniPoly, n: usize) -> Vec<Complex> {
    initial_points_from(&to_complex_coeffs(g, 64), n)
}

fn initial_points_from(coeffs: &[Complex], n: usize) -> Vec<Complex> {
    // Cauchy bound: all roots lie strictly inside |z| < 1 + max |a_k / a_n|.
    let lead = coeffs[n].abs_dir(64, Round::Trunc).to_f64().abs().max(1e-300);
    let mut m: f64 = 0.0;
    for c in coeffs.iter().take(n) {
        let v = c.abs_dir(64, Round::Away).to_f64().abs() / lead;
        if v > m {
            m = v;
        }
    }
    let radius = (1.0 + m).min(1e6).max(0.25) * 0.85;
    let mut pts = Vec::with_capacity(n);
    for j in 0..n {
        // Fixed angular offset keeps the start points off the axes and off
        // any small symmetric root configuration.
        let theta = std::f64::consts::TAU * (j as f64) / (n as f64) + 0.437;
        let (s, c) = det_sin_cos(theta);
        pts.push(Complex::from_f64(radius * c, radius * s));
    }
    pts
}

fn aberth_passes(g: &UniPoly, z: &mut [Complex], wp: u32, prec: u32) {
    let coeffs = to_complex_coeffs(g, wp);
    aberth_passes_complex(&coeffs, z, wp, prec);
}

fn aberth_passes_complex(coeffs: &[Complex], z: &mut [Complex], wp: u32, prec: u32) {
    let n = z.len();
    let dcoeffs: Vec<Complex> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.mul(&Complex::real(BigFloat::from_i64(k as i64))).round_to(wp).0)
        .collect();
    let tol_exp = -2 * (i64::from(prec) + 16);
    for _ in 0..MAX_PASSES {
        let mut converged = true;
        for i in 0..n {
            let p = horner(&coeffs, &z[i], wp);
            if p.is_zero() {
                continue;
            }
            let dp = horner(&dcoeffs, &z[i], wp);
            if dp.is_zero() {
                z[i] = z[i].add(&Complex::from_f64(2e-9, 3e-9));
                converged = false;
                continue;
            }
            let (ratio, _) = p.div_prec(&dp, wp);
            let mut sum = Complex::zero();
            let mut collided = false;
            for j in 0..n {
                if j == i {
                    continue;
                }
                let diff = z[i].sub(&z[j]);
                if diff.is_zero() {
                    collided = true;
                    break;
                }
                let (inv, _) = Complex::real(BigFloat::from_i64(1)).div_prec(&diff, wp);
                sum = sum.add(&inv).round_to(wp).0;
            }
            if collided {
                z[i] = z[i].add(&Complex::from_f64(1e-7, -2e-7));
                converged = false;
                continue;
            }
            let denom = Complex::real(BigFloat::from_i64(1)).sub(&ratio.mul(&sum));
            let w = if denom.is_zero() {
                ratio.clone()
            } else {
                ratio.div_prec(&denom, wp).0
            };
            z[i] = z[i].sub(&w).round_to(wp).0;
            let scale = BigFloat::max_value(&BigFloat::from_i64(1), &z[i].norm_sqr());
            if w.norm_sqr().cmp_value(&scale.shl(tol_exp)) == Ordering::Greater {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
}

fn to_complex_coeffs(g: &UniPoly, wp: u32) -> Vec<Complex> {
    g.coeffs()
        .iter()
        .map(|a| Complex::real(BigFloat::from_rational(a, wp, Round::Nearest)))
        .collect()
}

fn horner(coeffs: &[Complex], z: &Complex, wp: u32) -> Complex {
    let mut acc = Complex::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z).add(c).round_to(wp).0;
    }
    acc
}

/// Certifies the approximations as isolating disks, or returns `None` when
/// the Weierstrass disks are too large or not pairwise disjoint.
fn certify(g: &UniPoly, z: &[Complex], wp: u32, prec: u32) -> Option<Vec<Ball>> {
    let n = z.len();
    debug_assert!(g.is_monic());
    let goal = BigFloat::two_pow(-i64::from(prec));
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let num = eval_unipoly(g, &Ball::exact(z[i].clone()), wp).abs_ub();
        let mut den = BigFloat::from_i64(1);
        for j in 0..n {
            if j == i {
                continue;
            }
            let d = z[i].sub(&z[j]).abs_dir(64, Round::Trunc);
            if !d.is_positive() {
                return None;
            }
            den = den.mul(&d).round_to(64, Round::Trunc).0;
        }
        let (q, qerr) = num.mul(&BigFloat::from_i64(n as i64)).div_prec(&den, 64, Round::Away);
        let r = q.add(&qerr);
        if r.cmp_value(&goal) == Ordering::Greater {
            return None;
        }
        radii.push(r);
    }
    for i in 0..n {
        for j in i + 1..n {
            let gap = z[i].sub(&z[j]).abs_dir(64, Round::Trunc);
            let sum = radii[i].add(&radii[j]).round_to(64, Round::Away).0;
            if gap.cmp_value(&sum) != Ordering::Greater {
                return None;
            }
        }
    }
    Some(
        z.iter()
            .zip(radii)
            .map(|(c, r)| Ball::new(c.clone(), r))
            .collect(),
    )
}

/// Weierstrass certification against coefficient enclosures: radii are
/// n |p(z_i)| / (|lc| prod |z_i - z_j|) with the numerator maximised and the
/// denominator minimised over the enclosures, so the disks are valid for
/// every member of the coefficient family, the true polynomial included.
fn certify_balls(
    coeffs: &[Ball],
    lead_lb: &BigFloat,
    z: &[Complex],
    wp: u32,
    prec: u32,
) -> Option<Vec<Ball>> {
    let n = z.len();
    let goal = BigFloat::two_pow(-i64::from(prec));
    let mut radii = Vec::with_capacity(n);
    for i in 0..n {
        let num = super::ball::eval_ball_poly(coeffs, &Ball::exact(z[i].clone()), wp).abs_ub();
        let mut den = lead_lb.clone();
        for j in 0..n {
            if j == i {
                continue;
            }
            let d = z[i].sub(&z[j]).abs_dir(64, Round::Trunc);
            if !d.is_positive() {
                return None;
            }
            den = den.mul(&d).round_to(64, Round::Trunc).0;
        }
        let (q, qerr) = num.mul(&BigFloat::from_i64(n as i64)).div_prec(&den, 64, Round::Away);
        let r = q.add(&qerr);
        if r.cmp_value(&goal) == Ordering::Greater {
            return None;
        }
        radii.push(r);
    }
    for i in 0..n {
        for j in i + 1..n {
            let gap = z[i].sub(&z[j]).abs_dir(64, Round::Trunc);
            let sum = radii[i].add(&radii[j]).round_to(64, Round::Away).0;
            if gap.cmp_value(&sum) != Ordering::Greater {
                return None;
            }
        }
    }
    Some(
        z.iter()
            .zip(radii)
            .map(|(c, r)| Ball::new(c.clone(), r))
            .collect(),
    )
}
