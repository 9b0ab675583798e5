//! Reconstruction of the embedded tree of a conservative polynomial from
//! its traced internal rays: whites are the critical points, blacks the
//! repelling fixed points, edges the rays, cyclic orders from start angles
//! and landing angles.

use crate::error::Error;
use crate::Result;
use crate::trees::{Color, PlaneTree};

use super::fixed::{fixed_points, FixedPointClass, FixedPointSet};
use super::poly::ConservativePolynomial;
use super::ray::{dir_and_log, trace_ray_from, InternalRay};

/// Default certification precision for ray tracing and reconstruction.
pub const DEFAULT_DYNAMIC_PRECISION: u32 = 128;

/// Minimum angular separation, radians, of two rays at their common
/// landing point before the cyclic order there is trusted.
const ANGLE_RESOLUTION: f64 = 1e-3;

/// A reconstructed tree together with the dynamical data behind it.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub tree: PlaneTree,
    pub fixed: FixedPointSet,
    pub rays: Vec<InternalRay>,
    /// Fixed-point id of each black vertex; black vertex ids follow the
    /// white block, whose ids equal the critical-point indices.
    pub black_ids: Vec<usize>,
    /// Precision at which the reconstruction succeeded.
    pub precision: u32,
}

/// Traces every ray of every critical point and assembles the tree,
/// doubling precision when rays land or order ambiguously.
pub fn reconstruct(poly: &ConservativePolynomial, prec: u32) -> Result<Reconstruction> {
    let cap = poly.max_precision();
    let mut p = prec.min(cap).max(32);
    let mut last = None;
    for _ in 0..=3 {
        match attempt(poly, p) {
            Ok(rec) => return Ok(rec),
            Err(Error::Tracing(msg)) => last = Some(msg),
            Err(e) => return Err(e),
        }
        if p >= cap {
            break;
        }
        p = (p * 2).min(cap);
    }
    Err(Error::PrecisionExhausted(format!(
        "ray tracing still ambiguous at {p} bits: {}",
        last.unwrap_or_default()
    )))
}

/// Convenience wrapper returning only the tree.
pub fn reconstruct_tree(poly: &ConservativePolynomial, prec: u32) -> Result<PlaneTree> {
    reconstruct(poly, prec).map(|r| r.tree)
}

fn attempt(poly: &ConservativePolynomial, prec: u32) -> Result<Reconstruction> {
    let fixed = fixed_points(poly, prec)?;
    let whites = poly.critical_points().len();

    let mut rays = Vec::new();
    for white in 0..whites {
        for index in 0..poly.critical_points()[white].multiplicity {
            rays.push(trace_ray_from(poly, &fixed, white, index, prec)?);
        }
    }

    let black_ids: Vec<usize> = fixed
        .points
        .iter()
        .enumerate()
        .filter(|(_, fp)| fp.class == FixedPointClass::Repelling)
        .map(|(id, _)| id)
        .collect();
    let black_vertex: std::collections::BTreeMap<usize, usize> = black_ids
        .iter()
        .enumerate()
        .map(|(v, &id)| (id, whites + v))
        .collect();

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); whites + black_ids.len()];
    for ray in &rays {
        adj[ray.white].push(black_vertex[&ray.landing]);
    }

    let mut incoming: Vec<Vec<(f64, usize)>> = vec![Vec::new(); black_ids.len()];
    for ray in &rays {
        let v = black_vertex[&ray.landing] - whites;
        let angle = landing_angle(ray, &fixed)?;
        incoming[v].push((angle, ray.white));
    }
    for (v, arrivals) in incoming.iter_mut().enumerate() {
        if arrivals.is_empty() {
            return Err(Error::Reconstruction(format!(
                "repelling fixed point {} received no ray",
                black_ids[v]
            )));
        }
        arrivals.sort_by(|a, b| a.0.total_cmp(&b.0));
        for w in 0..arrivals.len() {
            let next = (w + 1) % arrivals.len();
            let mut gap = arrivals[next].0 - arrivals[w].0;
            if next == 0 {
                gap += 2.0 * std::f64::consts::PI;
            }
            if arrivals.len() > 1 && gap.abs() < ANGLE_RESOLUTION {
                return Err(Error::Tracing(format!(
                    "two rays land indistinguishably close at fixed point {}",
                    black_ids[v]
                )));
            }
        }
        adj[whites + v] = arrivals.iter().map(|&(_, w)| w).collect();
    }

    let mut colors = vec![Color::White; whites];
    colors.extend(std::iter::repeat(Color::Black).take(black_ids.len()));
    let tree = PlaneTree::new(colors, adj).map_err(|e| {
        Error::Reconstruction(format!("ray incidence is not a plane tree: {e}"))
    })?;

    Ok(Reconstruction {
        tree,
        fixed,
        rays,
        black_ids,
        precision: prec,
    })
}

/// Spiral-corrected angle of a ray's approach to its landing point. Two
/// rays landing at the same point keep their counterclockwise order under
/// this angle at every small radius.
fn landing_angle(ray: &InternalRay, fixed: &FixedPointSet) -> Result<f64> {
    let fp = &fixed.points[ray.landing];
    let b = fp.location.mid();
    let last = ray.polyline.last().expect("rays are never empty");
    let delta = last.sub(b);
    let (arg, log_r) = dir_and_log(&delta).ok_or_else(|| {
        Error::Internal("ray sample coincides exactly with its landing point".into())
    })?;
    let (mre, mim) = fp.multiplier.mid().to_f64();
    let m_arg = crate::algebra::det_atan2(mim, mre);
    let m_log = (mre * mre + mim * mim).sqrt().ln();
    let tau = arg - m_arg / m_log * log_r;
    let tau = tau.rem_euclid(2.0 * std::f64::consts::PI);
    Ok(tau)
}
