//! Numeric representation of a conservative polynomial: certified
//! coefficient enclosures together with its critical points.

use num_traits::{One, Zero};

use crate::algebra::{
    complex_roots, rat, refine_root, Ball, BigFloat, Complex, Rational, UniPoly,
};
use crate::error::Error;
use crate::Result;
use crate::system::SolutionSet;
use crate::trees::TreeType;

/// Where a polynomial came from; recorded for reports, never consulted by
/// the dynamics itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolySource {
    /// Produced by the exact solver for the given type.
    Solved(TreeType),
    /// Member of a named closed-form family.
    Family(String),
    /// Supplied directly as a coefficient list.
    User,
}

/// A critical point together with the order of vanishing of the derivative.
#[derive(Clone, Debug)]
pub struct CriticalPoint {
    /// Certified enclosure of the location; exact for the origin.
    pub location: Ball,
    /// Multiplicity of the point as a zero of the derivative.
    pub multiplicity: usize,
    /// Squarefree rational polynomial vanishing at the point, kept when the
    /// coefficients are exact so the enclosure can be refined on demand.
    refiner: Option<UniPoly>,
}

/// A polynomial all of whose critical points are fixed, with enough numeric
/// data to run its dynamics.
#[derive(Clone, Debug)]
pub struct ConservativePolynomial {
    degree: usize,
    /// Exact coefficients, lowest first, when the input was rational.
    exact: Option<Vec<Rational>>,
    /// Coefficient enclosures, lowest first, length `degree + 1`.
    coeffs: Vec<Ball>,
    critical: Vec<CriticalPoint>,
    source: PolySource,
    base_precision: u32,
}

impl ConservativePolynomial {
    /// Builds from exact rational coefficients, lowest degree first.
    ///
    /// Verifies conservativity exactly: the squarefree part of the
    /// derivative must divide `C(z) - z`.
    pub fn from_rational(coefficients: &[Rational], prec: u32) -> Result<Self> {
        let f = UniPoly::new(coefficients.to_vec());
        let degree = match f.degree() {
            Some(d) if d >= 2 => d,
            _ => {
                return Err(Error::Validation(
                    "a conservative polynomial has degree at least 2".into(),
                ))
            }
        };
        let deriv = f.derivative();
        let mut shifted = f.coeffs().to_vec();
        shifted[1] = &shifted[1] - &Rational::one();
        let fixed_eq = UniPoly::new(shifted);
        let sqf = deriv.squarefree_part();
        let (_, rem) = fixed_eq.divrem(&sqf)?;
        if !rem.is_zero() {
            return Err(Error::Validation(
                "not conservative: some critical point is not fixed".into(),
            ));
        }

        let wp = prec + 32;
        let mut located: Vec<(Ball, usize, UniPoly)> = Vec::new();
        for (part, mult) in deriv.yun_squarefree() {
            if part.degree() == Some(0) {
                continue;
            }
            for root in complex_roots(&part, wp)? {
                located.push((root, mult, part.clone()));
            }
        }
        located.sort_by(|a, b| {
            let (ca, cb) = (a.0.mid(), b.0.mid());
            ca.re.cmp_value(&cb.re).then(ca.im.cmp_value(&cb.im))
        });
        let critical = located
            .into_iter()
            .map(|(location, multiplicity, part)| CriticalPoint {
                location,
                multiplicity,
                refiner: Some(part),
            })
            .collect();

        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| Ball::from_rational(c, &Rational::zero(), wp))
            .collect();
        Ok(ConservativePolynomial {
            degree,
            exact: Some(f.coeffs().to_vec()),
            coeffs,
            critical,
            source: PolySource::User,
            base_precision: prec,
        })
    }

    /// Builds from one solution of a type's fixed-point system.
    ///
    /// Critical points certifiably sharing a location are merged, so the
    /// multiplicities realize the solution's merged type.
    pub fn from_solution(set: &SolutionSet, index: usize) -> Result<Self> {
        let point = set
            .points
            .get(index)
            .ok_or_else(|| Error::Validation(format!("no solution with index {index}")))?;
        let alpha = &set.system.alpha;
        let degree = set.system.degree;
        let wp = set.precision + 64;

        let mut deriv = vec![Ball::exact(Complex::real(BigFloat::from_i64(degree as i64)))];
        for _ in 0..alpha.0[0] {
            deriv.insert(0, Ball::zero());
        }
        for (pos, a) in point.coords.iter().enumerate() {
            for _ in 0..alpha.0[pos + 1] {
                deriv = mul_linear(&deriv, a, wp);
            }
        }
        let mut coeffs = vec![Ball::zero()];
        for (k, c) in deriv.iter().enumerate() {
            coeffs.push(c.scale_rational(&rat(1, k as i64 + 1), wp));
        }

        let critical = merged_critical_points(set, index)?;
        Ok(ConservativePolynomial {
            degree,
            exact: None,
            coeffs,
            critical,
            source: PolySource::Solved(alpha.clone()),
            base_precision: set.precision,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficient enclosures, lowest degree first.
    pub fn coefficients(&self) -> &[Ball] {
        &self.coeffs
    }

    pub fn critical_points(&self) -> &[CriticalPoint] {
        &self.critical
    }

    pub fn source(&self) -> &PolySource {
        &self.source
    }

    pub fn base_precision(&self) -> u32 {
        self.base_precision
    }

    /// Largest precision the stored data can certify; unbounded for exact
    /// coefficients.
    pub(crate) fn max_precision(&self) -> u32 {
        if self.exact.is_some() {
            u32::MAX / 4
        } else {
            self.base_precision
        }
    }

    /// Coefficient enclosures tight enough for work at `wp` bits.
    pub(crate) fn coeff_balls(&self, wp: u32) -> Vec<Ball> {
        match &self.exact {
            Some(exact) => exact
                .iter()
                .map(|c| Ball::from_rational(c, &Rational::zero(), wp))
                .collect(),
            None => self.coeffs.clone(),
        }
    }

    /// Enclosure of critical point `i`, refined to `wp` when possible.
    pub(crate) fn refined_critical(&self, i: usize, wp: u32) -> Result<Ball> {
        let cp = &self.critical[i];
        match &cp.refiner {
            Some(part) => refine_root(part, &cp.location, wp),
            None => Ok(cp.location.clone()),
        }
    }
}

impl CriticalPoint {
    pub(crate) fn exact_at(location: Ball, multiplicity: usize) -> CriticalPoint {
        CriticalPoint {
            location,
            multiplicity,
            refiner: None,
        }
    }
}

/// Multiplies a coefficient list by `z - a`.
fn mul_linear(poly: &[Ball], a: &Ball, wp: u32) -> Vec<Ball> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    out.push(poly[0].mul(&a.neg(), wp));
    for k in 1..poly.len() {
        out.push(poly[k - 1].sub(&poly[k].mul(a, wp), wp));
    }
    out.push(poly[poly.len() - 1].clone());
    out
}

/// Derivative of a coefficient-enclosure list.
pub(crate) fn ball_derivative(coeffs: &[Ball], wp: u32) -> Vec<Ball> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale_rational(&rat(k as i64, 1), wp))
        .collect()
}

/// Critical points of a solved system, with certifiably coincident
/// coordinates merged into one point of summed multiplicity.
fn merged_critical_points(set: &SolutionSet, index: usize) -> Result<Vec<CriticalPoint>> {
    let point = &set.points[index];
    let alpha = &set.system.alpha;
    let positions = point.coords.len();

    let mut parent: Vec<usize> = (0..=positions).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let origin = positions;
    if let Some(info) = &point.degenerate {
        for class in &info.classes {
            for w in class.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a] = b;
            }
        }
        for &pos in &info.at_origin {
            let (a, b) = (find(&mut parent, pos), find(&mut parent, origin));
            parent[a] = b;
        }
    }

    let origin_root = find(&mut parent, origin);
    let mut members: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for pos in 0..positions {
        let root = find(&mut parent, pos);
        members.entry(root).or_default().push(pos);
    }

    let mut origin_mult = alpha.0[0];
    let mut rest: Vec<(usize, CriticalPoint)> = Vec::new();
    for (root, posns) in members {
        let mult: usize = posns.iter().map(|&p| alpha.0[p + 1]).sum();
        if root == origin_root {
            origin_mult += mult;
        } else {
            let first = posns[0];
            rest.push((
                first,
                CriticalPoint::exact_at(point.coords[first].clone(), mult),
            ));
        }
    }
    rest.sort_by_key(|(first, _)| *first);

    let mut critical = vec![CriticalPoint::exact_at(
        Ball::exact(Complex::zero()),
        origin_mult,
    )];
    critical.extend(rest.into_iter().map(|(_, cp)| cp));

    let mut mults: Vec<usize> = critical.iter().map(|c| c.multiplicity).collect();
    mults.sort_unstable_by(|a, b| b.cmp(a));
    let realized = TreeType::new(mults)?;
    let expected = match &point.degenerate {
        Some(info) => &info.merged_type,
        None => alpha,
    };
    if realized != *expected {
        return Err(Error::Internal(format!(
            "merged critical multiplicities {realized} disagree with recorded type {expected}"
        )));
    }
    Ok(critical)
}
