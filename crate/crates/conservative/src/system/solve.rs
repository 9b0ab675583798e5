//! Solving the fixed-point systems.
//!
//! Elimination first: a primitive element `t = e_1 + γ e_2 + γ² e_3` of the
//! symmetrized coordinates is isolated into a squarefree eliminant, by a
//! direct resultant for up to two unknowns and by a Groebner basis with a
//! Krylov minimal polynomial for three. Each irreducible factor
//! `F` is then lifted to the number field `K = Q[t]/(F)`: back-substitution
//! turns the equations into univariate gcd computations over `K` whose roots
//! must come out linear, pinning every coordinate as an element of `K`.
//! A factor whose gcd chain degenerates to a constant carries no solutions
//! (a resultant artifact from vanishing leading coefficients) and is
//! dropped; a nonlinear gcd means the primitive element failed to separate
//! conjugate points and triggers a retry with the next γ.
//!
//! Everything downstream of recovery is certified: the equations are
//! re-verified exactly in `K`, conservativity is checked as exact
//! divisibility of `C - z` by the squarefree part of each group polynomial,
//! degeneracy is read off the squarefree decomposition of `C'` over `K`, and
//! numeric coordinates are disk enclosures whose separation is matched
//! against the exactly known number of distinct critical points.

use std::cmp::Ordering;

use num_traits::Zero;

use super::build::{
    build_symmetric, build_system, drop_var, ConservativeSystem, SymmetricSystem,
};
use crate::algebra::{
    ball_roots, complex_roots, det_sin_cos, eval_unipoly, factor_rational, groebner_basis,
    rat_int, refine_root, resultant_in, Ball, BigFloat, MultiPoly, NumberField, QuotientMap,
    Rational, UniPoly,
};
use crate::trees::TreeType;
use crate::{Error, Result};

/// Default working precision in bits for solution enclosures.
pub const DEFAULT_PRECISION: u32 = 212;

/// Primitive-element retry schedule.
const GAMMAS: [i64; 8] = [1, 2, 3, 5, 7, 11, 13, 17];

/// Largest supported number of unknown critical points.
const MAX_UNKNOWNS: usize = 3;

const EMBED_ESCALATIONS: u32 = 4;
const MATCH_ESCALATIONS: u32 = 5;

/// Exact data recovered for one irreducible eliminant factor. All conjugate
/// solutions sharing the factor have the same degeneracy structure, so the
/// merged type lives here rather than on the points.
#[derive(Clone, Debug)]
pub struct FactorRecovery {
    /// Irreducible monic factor of the eliminant.
    pub factor: UniPoly,
    /// Each symmetrized coordinate as an element of `Q[t]/(factor)`.
    pub e_reps: Vec<UniPoly>,
    /// Valency type after merging coincident critical points; equals the
    /// requested type exactly when the factor is nondegenerate.
    pub merged_type: TreeType,
    pub degenerate: bool,
    pub(crate) field: NumberField,
    /// Per group: squarefree decomposition of the group polynomial over the
    /// field, parts with their multiplicities, ascending.
    pub(crate) group_parts: Vec<Vec<(Vec<UniPoly>, usize)>>,
    /// Number of distinct critical points (the origin included).
    pub(crate) distinct_total: usize,
}

/// Coordinate coincidences of a degenerate solution, in terms of positions
/// into [`SolutionPoint::coords`].
#[derive(Clone, Debug)]
pub struct DegeneracyInfo {
    pub merged_type: TreeType,
    /// Groups of two or more coordinate positions sharing one value.
    pub classes: Vec<Vec<usize>>,
    /// Positions whose value is exactly zero.
    pub at_origin: Vec<usize>,
}

/// One solution of the fixed-point system: a single normalized polynomial.
#[derive(Clone, Debug)]
pub struct SolutionPoint {
    /// Index into [`SolutionSet::factors`].
    pub component: usize,
    /// Index of this point's primitive-element value among the factor's
    /// roots, in center order.
    pub root_index: usize,
    /// Certified enclosure of the primitive-element value.
    pub t_value: Ball,
    /// Enclosures of the symmetrized coordinates.
    pub sym_coords: Vec<Ball>,
    /// Enclosures of the critical points `a_2, ..., a_p`, group-major.
    pub coords: Vec<Ball>,
    /// Present exactly when coordinates certifiably collide.
    pub degenerate: Option<DegeneracyInfo>,
}

/// Complete solution of a type's fixed-point system.
#[derive(Clone, Debug)]
pub struct SolutionSet {
    pub system: ConservativeSystem,
    /// Squarefree product of the genuine irreducible factors.
    pub eliminant: UniPoly,
    pub factors: Vec<FactorRecovery>,
    pub points: Vec<SolutionPoint>,
    /// Partition of point indices into orbits of `z -> εz`, `ε^(d-1) = 1`.
    pub scaling_classes: Vec<Vec<usize>>,
    /// Weights of the symmetrized coordinates in the primitive element.
    pub primitive_weights: Vec<i64>,
    pub precision: u32,
    /// `d^(p-1)`, the Bezout bound on the eliminant degree.
    pub bezout_bound: usize,
    pub(crate) sym: SymmetricSystem,
}

impl SolutionSet {
    /// Indices of points free of certified coordinate collisions.
    pub fn nondegenerate(&self) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| self.points[i].degenerate.is_none())
            .collect()
    }

    pub fn degenerate_points(&self) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| self.points[i].degenerate.is_some())
            .collect()
    }

    /// Coefficient enclosures (constant term first) of the normalized
    /// polynomial at a solution point, at the requested precision.
    pub fn point_polynomial(&self, index: usize, prec: u32) -> Result<Vec<Ball>> {
        let pt = self
            .points
            .get(index)
            .ok_or_else(|| Error::Validation(format!("no solution point {index}")))?;
        let rec = &self.factors[pt.component];
        let wp = prec.saturating_mul(2) + 64;
        let tau = if rec.e_reps.is_empty() {
            pt.t_value.clone()
        } else {
            refine_root(&rec.factor, &pt.t_value, wp)?
        };
        let syms: Vec<Ball> = rec.e_reps.iter().map(|r| eval_unipoly(r, &tau, wp)).collect();
        let z = self.sym.arity;
        let coeffs = self.sym.c_sym.as_univariate_in(z);
        Ok(coeffs
            .iter()
            .map(|c| eval_multipoly_ball(&drop_var(c, z), &syms, wp))
            .collect())
    }
}

/// Solves the fixed-point system of the type. Every returned point is a
/// distinct normalized polynomial, certified exactly at the factor level and
/// numerically enclosed at `precision` bits.
pub fn solve_type(alpha: &TreeType, precision: u32) -> Result<SolutionSet> {
    let system = build_system(alpha);
    let sym = build_symmetric(alpha);
    let n = sym.arity;
    if n > MAX_UNKNOWNS {
        return Err(Error::Unsupported(format!(
            "{n} unknown critical points; at most {MAX_UNKNOWNS} are supported"
        )));
    }
    let d = sym.degree;
    let bezout = d.pow(n as u32);

    if n == 0 {
        return trivial_set(system, sym, precision, bezout);
    }

    let gb3 = if n == 3 {
        Some(groebner_basis(&sym.equations)?)
    } else {
        None
    };

    let mut saw_eliminant = false;
    for &gamma in &GAMMAS {
        let weights: Vec<i64> = (0..n).map(|i| gamma.pow(i as u32)).collect();
        let eigen = match &gb3 {
            Some(gb) => Some(EigenData::build(gb, gamma)?),
            None => None,
        };
        let elim = match eliminate(&sym, eigen.as_ref(), gamma)? {
            Some(e) => e,
            None => continue,
        };
        saw_eliminant = true;
        debug_assert!(elim.degree().unwrap_or(0) <= bezout);
        let mut recoveries = Vec::new();
        let mut shape_failed = false;
        for (f, _) in factor_rational(&elim)? {
            match recover_factor(&sym, gamma, &f, eigen.as_ref())? {
                Recovery::Genuine(rec) => recoveries.push(*rec),
                Recovery::Spurious => {}
                Recovery::Shape => {
                    shape_failed = true;
                    break;
                }
            }
        }
        if shape_failed {
            continue;
        }
        return assemble(system, sym, recoveries, weights, precision, bezout);
    }

    if saw_eliminant {
        Err(Error::RetryExhausted(format!(
            "no primitive element in {GAMMAS:?} separated the solutions of {alpha}"
        )))
    } else {
        Err(Error::PositiveDimension(format!(
            "the eliminant of {alpha} vanishes identically"
        )))
    }
}

/// Returns a set whose points are reordered nondegenerate-first; degenerate
/// points keep their merged-type annotations at the tail.
pub fn filter_degenerate(set: &SolutionSet) -> SolutionSet {
    let mut order: Vec<usize> = (0..set.points.len()).collect();
    order.sort_by_key(|&i| (set.points[i].degenerate.is_some(), i));
    let mut newidx = vec![0usize; order.len()];
    for (new, &old) in order.iter().enumerate() {
        newidx[old] = new;
    }
    let points = order.iter().map(|&i| set.points[i].clone()).collect();
    let mut classes: Vec<Vec<usize>> = set
        .scaling_classes
        .iter()
        .map(|c| {
            let mut m: Vec<usize> = c.iter().map(|&i| newidx[i]).collect();
            m.sort_unstable();
            m
        })
        .collect();
    classes.sort_by_key(|c| c.first().copied());
    SolutionSet {
        points,
        scaling_classes: classes,
        ..set.clone()
    }
}

fn trivial_set(
    system: ConservativeSystem,
    sym: SymmetricSystem,
    precision: u32,
    bezout: usize,
) -> Result<SolutionSet> {
    // No unknowns: the unique solution is z^d, and the primitive element is
    // the empty sum, so the eliminant is t itself.
    let factor = UniPoly::var();
    let rec = FactorRecovery {
        factor: factor.clone(),
        e_reps: Vec::new(),
        merged_type: sym.alpha.clone(),
        degenerate: false,
        field: NumberField::new(&factor)?,
        group_parts: Vec::new(),
        distinct_total: 1,
    };
    let point = SolutionPoint {
        component: 0,
        root_index: 0,
        t_value: Ball::zero(),
        sym_coords: Vec::new(),
        coords: Vec::new(),
        degenerate: None,
    };
    Ok(SolutionSet {
        system,
        eliminant: factor,
        factors: vec![rec],
        points: vec![point],
        scaling_classes: vec![vec![0]],
        primitive_weights: Vec::new(),
        precision,
        bezout_bound: bezout,
        sym,
    })
}

/// Squarefree monic eliminant of the primitive element, or `None` when the
/// resultant route collapses identically for this γ.
fn eliminate(
    sym: &SymmetricSystem,
    eigen: Option<&EigenData>,
    gamma: i64,
) -> Result<Option<UniPoly>> {
    let n = sym.arity;
    match n {
        1 => {
            let eq = &sym.equations[0];
            if eq.is_zero() {
                return Err(Error::PositiveDimension(
                    "single trace equation vanishes identically".into(),
                ));
            }
            let u = eq.to_unipoly_in(0)?;
            Ok(Some(normalize_eliminant(&u)))
        }
        2 => {
            // Reinterpret variable 0 as t via e_1 = t - γ e_2.
            let sub = MultiPoly::var(2, 0).sub(&MultiPoly::var(2, 1).scale(&rat_int(gamma)));
            let t1 = sym.equations[0].substitute(0, &sub);
            let t2 = sym.equations[1].substitute(0, &sub);
            let r = resultant_in(&t1, &t2, 1);
            if r.is_zero() {
                return Ok(None);
            }
            Ok(Some(normalize_eliminant(&r.to_unipoly_in(0)?)))
        }
        3 => {
            let eigen = eigen.expect("eigen data prepared for three unknowns");
            let mp = eigen.map.minimal_polynomial()?;
            Ok(Some(normalize_eliminant(&mp)))
        }
        _ => unreachable!("unknown count is capped"),
    }
}

/// Per-γ recovery data for three unknowns: the multiplication map of the
/// primitive element on the quotient ring and the classes of the
/// coordinates.
struct EigenData {
    map: QuotientMap,
    coords: [Vec<Rational>; 3],
}

impl EigenData {
    fn build(gb: &crate::algebra::GroebnerBasis, gamma: i64) -> Result<EigenData> {
        let t_poly = MultiPoly::var(3, 0)
            .add(&MultiPoly::var(3, 1).scale(&rat_int(gamma)))
            .add(&MultiPoly::var(3, 2).scale(&rat_int(gamma * gamma)));
        let map = gb.multiplication_map(&t_poly)?;
        let coords = [
            gb.class_of(&map, &MultiPoly::var(3, 0)),
            gb.class_of(&map, &MultiPoly::var(3, 1)),
            gb.class_of(&map, &MultiPoly::var(3, 2)),
        ];
        Ok(EigenData { map, coords })
    }
}

fn normalize_eliminant(u: &UniPoly) -> UniPoly {
    match u.degree() {
        None | Some(0) => UniPoly::one(),
        _ => u.squarefree_part(),
    }
}

enum Recovery {
    Genuine(Box<FactorRecovery>),
    /// The factor is a resultant artifact carrying no solutions.
    Spurious,
    /// The primitive element failed to separate conjugates for this γ.
    Shape,
}

/// Lifts one irreducible eliminant factor to exact coordinates in
/// `Q[t]/(factor)` and certifies it.
fn recover_factor(
    sym: &SymmetricSystem,
    gamma: i64,
    factor: &UniPoly,
    eigen: Option<&EigenData>,
) -> Result<Recovery> {
    let n = sym.arity;
    let field = NumberField::new(factor)?;

    let e_reps: Vec<UniPoly> = match n {
        1 => vec![field.generator()],
        2 => {
            let t1 = kx_substituted(&field, &sym.equations[0], gamma);
            let t2 = kx_substituted(&field, &sym.equations[1], gamma);
            if t1.is_empty() && t2.is_empty() {
                return Err(Error::PositiveDimension(
                    "a full line of solutions lies over an eliminant factor".into(),
                ));
            }
            let g = field.kp_gcd(&t1, &t2)?;
            match linear_root(&field, &g)? {
                RootShape::Value(e2) => {
                    let e1 = field.sub(
                        &field.generator(),
                        &field.mul(&field.constant(rat_int(gamma)), &e2),
                    );
                    vec![e1, e2]
                }
                RootShape::NoRoot => return Ok(Recovery::Spurious),
                RootShape::NotLinear => return Ok(Recovery::Shape),
            }
        }
        3 => {
            let eigen = eigen.expect("eigen data prepared for three unknowns");
            match eigen_coordinates(&field, eigen)? {
                Some(e) => e,
                None => return Ok(Recovery::Shape),
            }
        }
        _ => unreachable!("unknown count is capped"),
    };

    // Exact certification: all trace equations vanish in K.
    for eq in &sym.equations {
        let v = eval_multi_in_field(&field, eq, &e_reps);
        if !v.is_zero() {
            return Err(Error::Internal(
                "recovered point fails a trace equation exactly".into(),
            ));
        }
    }

    // Conservativity certificate: the squarefree part of every group
    // polynomial divides C - z exactly.
    let groups_k = group_polys_k(&field, sym, &e_reps);
    let h = h_poly_k(&field, sym, &e_reps);
    for pg in &groups_k {
        let sqf = field.kp_squarefree_part(pg)?;
        let (_, rem) = field.kp_divrem(&h, &sqf)?;
        if !rem.is_empty() {
            return Err(Error::Internal(
                "recovered critical point is not fixed".into(),
            ));
        }
    }

    // Degeneracy structure from the squarefree decomposition of C'/d.
    let mut cprime = vec![UniPoly::zero(); sym.alpha.0[0]];
    cprime.push(UniPoly::one());
    for (g, pg) in sym.groups.iter().zip(&groups_k) {
        for _ in 0..g.valency {
            cprime = field.kp_mul(&cprime, pg);
        }
    }
    let decomposition = field.kp_yun(&cprime)?;
    let mut merged = Vec::new();
    let mut distinct_total = 0usize;
    for (part, mult) in &decomposition {
        let deg = NumberField::kp_degree(part).expect("nonconstant part");
        distinct_total += deg;
        for _ in 0..deg {
            merged.push(*mult);
        }
    }
    debug_assert_eq!(
        merged.iter().sum::<usize>(),
        sym.degree - 1,
        "critical multiplicities must sum to d - 1"
    );
    let merged_type = TreeType::new(merged)?;
    let degenerate = merged_type != sym.alpha;

    let group_parts = groups_k
        .iter()
        .map(|pg| field.kp_yun(pg))
        .collect::<Result<Vec<_>>>()?;

    Ok(Recovery::Genuine(Box::new(FactorRecovery {
        factor: factor.monic(),
        e_reps,
        merged_type,
        degenerate,
        field,
        group_parts,
        distinct_total,
    })))
}

enum RootShape {
    Value(UniPoly),
    NoRoot,
    NotLinear,
}

/// Classifies the squarefree part of a gcd: a linear part yields the unique
/// coordinate value, a constant means no common root.
fn linear_root(field: &NumberField, g: &[UniPoly]) -> Result<RootShape> {
    let sqf = field.kp_squarefree_part(g)?;
    match NumberField::kp_degree(&sqf) {
        None | Some(0) => Ok(RootShape::NoRoot),
        Some(1) => Ok(RootShape::Value(field.div(&sqf[0].clone().scale(&rat_int(-1)), &sqf[1])?)),
        Some(_) => Ok(RootShape::NotLinear),
    }
}

/// `S(e_1, e_2)` with `e_1 = t - γ e_2`, as a polynomial in `e_2` over the
/// field.
fn kx_substituted(field: &NumberField, poly: &MultiPoly, gamma: i64) -> Vec<UniPoly> {
    let base = vec![field.generator(), UniPoly::constant(rat_int(-gamma))];
    let max_r = poly.degree_in(0).unwrap_or(0) as usize;
    let mut base_pows: Vec<Vec<UniPoly>> = vec![vec![UniPoly::one()]];
    for _ in 0..max_r {
        let last = base_pows.last().expect("nonempty");
        base_pows.push(field.kp_mul(last, &base));
    }
    let mut acc: Vec<UniPoly> = Vec::new();
    for (exps, coeff) in poly.terms() {
        let (r, s) = (exps[0] as usize, exps[1] as usize);
        let mut term = field.kp_scale(&base_pows[r], &UniPoly::constant(coeff.clone()));
        let mut shifted = vec![UniPoly::zero(); s];
        shifted.extend(term.drain(..));
        acc = field.kp_add(&acc, &shifted);
    }
    acc
}

/// Left-eigenvector recovery for three unknowns. Over `K = Q[t]/(factor)`
/// the kernel of `Mᵀ - t·I`, with `M` the multiplication matrix of the
/// primitive element, is spanned by the evaluation functionals of the
/// solutions whose primitive-element value is the generator. A
/// one-dimensional kernel pins a unique solution and yields its coordinates
/// as ratios of functional values; a larger kernel means the value is
/// shared between solutions, so the γ must be retried.
fn eigen_coordinates(field: &NumberField, eigen: &EigenData) -> Result<Option<Vec<UniPoly>>> {
    let n = eigen.map.dim();
    let cols = eigen.map.matrix();
    // A = Mᵀ - t·I over K, row-major.
    let mut a: Vec<Vec<UniPoly>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let v = UniPoly::constant(cols[i][j].clone());
                    if i == j {
                        field.sub(&v, &field.generator())
                    } else {
                        field.reduce(&v)
                    }
                })
                .collect()
        })
        .collect();
    // Gauss-Jordan over K; `pivots[i]` is the pivot column of row i.
    let mut pivots: Vec<usize> = Vec::new();
    for col in 0..n {
        let row = pivots.len();
        let Some(r) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, r);
        let inv = field.inv(&a[row][col])?;
        for j in col..n {
            a[row][j] = field.mul(&a[row][j], &inv);
        }
        for r2 in 0..n {
            if r2 == row || a[r2][col].is_zero() {
                continue;
            }
            let f = std::mem::replace(&mut a[r2][col], UniPoly::zero());
            for j in col + 1..n {
                let t = field.mul(&f, &a[row][j]);
                a[r2][j] = field.sub(&a[r2][j], &t);
            }
        }
        pivots.push(col);
        if pivots.len() == n {
            break;
        }
    }
    match n - pivots.len() {
        0 => Err(Error::Internal(
            "eliminant root is not a primitive-element value".into(),
        )),
        1 => {
            let free = (0..n)
                .find(|c| pivots.binary_search(c).is_err())
                .expect("free column");
            let mut v = vec![UniPoly::zero(); n];
            v[free] = UniPoly::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = a[i][free].scale(&rat_int(-1));
            }
            let ell_one = &v[eigen.map.one_index()];
            if ell_one.is_zero() {
                return Err(Error::Internal(
                    "evaluation functional lost the constant class".into(),
                ));
            }
            let inv_one = field.inv(ell_one)?;
            let mut e = Vec::with_capacity(3);
            for coord in &eigen.coords {
                let mut acc = UniPoly::zero();
                for (j, c) in coord.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let t = field.mul(&UniPoly::constant(c.clone()), &v[j]);
                    acc = field.add(&acc, &t);
                }
                e.push(field.mul(&acc, &inv_one));
            }
            Ok(Some(e))
        }
        _ => Ok(None),
    }
}

/// Evaluates a rational multivariate polynomial at field elements.
fn eval_multi_in_field(field: &NumberField, poly: &MultiPoly, vals: &[UniPoly]) -> UniPoly {
    let mut acc = UniPoly::zero();
    for (exps, coeff) in poly.terms() {
        let mut term = UniPoly::constant(coeff.clone());
        for (v, &e) in exps.iter().enumerate() {
            if e > 0 {
                term = field.mul(&term, &field.pow(&vals[v], e as usize));
            }
        }
        acc = field.add(&acc, &term);
    }
    acc
}

/// The monic group polynomials over the field, reconstructed from the
/// symmetrized coordinates.
fn group_polys_k(
    field: &NumberField,
    sym: &SymmetricSystem,
    e_reps: &[UniPoly],
) -> Vec<Vec<UniPoly>> {
    sym.groups
        .iter()
        .map(|g| {
            let mut c = vec![UniPoly::zero(); g.size + 1];
            c[g.size] = UniPoly::one();
            for i in 1..=g.size {
                let mut v = e_reps[g.offset + i - 1].clone();
                if i % 2 == 1 {
                    v = v.scale(&rat_int(-1));
                }
                c[g.size - i] = v;
            }
            field.kp_normalize(c)
        })
        .collect()
}

/// `C - z` over the field, as a polynomial in `z`.
fn h_poly_k(field: &NumberField, sym: &SymmetricSystem, e_reps: &[UniPoly]) -> Vec<UniPoly> {
    let z = sym.arity;
    let mut coeffs: Vec<UniPoly> = sym
        .c_sym
        .as_univariate_in(z)
        .iter()
        .map(|c| eval_multi_in_field(field, &drop_var(c, z), e_reps))
        .collect();
    if coeffs.len() > 1 {
        coeffs[1] = field.sub(&coeffs[1], &UniPoly::one());
    }
    field.kp_normalize(coeffs)
}

fn eval_multipoly_ball(poly: &MultiPoly, vals: &[Ball], prec: u32) -> Ball {
    let mut acc = Ball::zero();
    for (exps, coeff) in poly.terms() {
        let mut term = Ball::from_rational(coeff, &Rational::zero(), prec);
        for (i, &e) in exps.iter().enumerate() {
            if e > 0 {
                term = term.mul(&vals[i].pow_u(e, prec), prec);
            }
        }
        acc = acc.add(&term, prec);
    }
    acc
}

struct Atom {
    ball: Ball,
    positions: Vec<usize>,
}

/// Groups the coordinate atoms into coincidence classes, certified by
/// matching the component count against the exactly known number of
/// distinct critical points (with the origin as an extra node). `None`
/// when the enclosures are still too coarse to decide.
fn certified_pattern(atoms: &[Atom], expected: usize) -> Option<(Vec<Vec<usize>>, Vec<usize>)> {
    let origin = atoms.len();
    let mut parent: Vec<usize> = (0..=origin).collect();
    fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..atoms.len() {
        for j in i + 1..atoms.len() {
            if atoms[i].ball.overlaps(&atoms[j].ball) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
        if atoms[i].ball.contains_zero() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, origin));
            parent[a] = b;
        }
    }
    let mut components: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..=origin {
        let root = find(&mut parent, i);
        components.entry(root).or_default().push(i);
    }
    if components.len() != expected {
        return None;
    }
    let origin_root = find(&mut parent, origin);
    let mut classes = Vec::new();
    let mut at_origin = Vec::new();
    for (root, members) in components {
        let mut positions: Vec<usize> = members
            .iter()
            .filter(|&&m| m != origin)
            .flat_map(|&m| atoms[m].positions.iter().copied())
            .collect();
        positions.sort_unstable();
        if root == origin_root {
            at_origin = positions.clone();
        }
        if positions.len() >= 2 {
            classes.push(positions);
        }
    }
    classes.sort_by_key(|c| c.first().copied());
    Some((classes, at_origin))
}

/// Numeric embedding of one factor's points, with escalation on any
/// undecided separation or residual check.
fn embed_factor_points(
    system: &ConservativeSystem,
    rec: &FactorRecovery,
    comp: usize,
    precision: u32,
) -> Result<Vec<SolutionPoint>> {
    let mut wp = precision.saturating_mul(2) + 64;
    let target = precision + 32;
    let mut last = None;
    for attempt in 0..=EMBED_ESCALATIONS {
        match try_embed(system, rec, comp, wp, target, precision) {
            Ok(points) => return Ok(points),
            Err(Error::PrecisionExhausted(m)) if attempt < EMBED_ESCALATIONS => {
                last = Some(m);
                wp = wp.saturating_mul(2);
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::PrecisionExhausted(last.unwrap_or_else(|| {
        "factor embedding did not stabilize".into()
    })))
}

fn try_embed(
    system: &ConservativeSystem,
    rec: &FactorRecovery,
    comp: usize,
    wp: u32,
    target: u32,
    precision: u32,
) -> Result<Vec<SolutionPoint>> {
    let taus = complex_roots(&rec.factor, wp)?;
    let tol = BigFloat::two_pow(-(i64::from(precision) / 2));
    let mut out = Vec::new();
    for (ri, tau) in taus.iter().enumerate() {
        let sym_coords: Vec<Ball> = rec.e_reps.iter().map(|r| eval_unipoly(r, tau, wp)).collect();
        let mut coords = Vec::new();
        let mut atoms = Vec::new();
        for parts in &rec.group_parts {
            for (q, mult) in parts {
                let cballs = rec.field.kp_embed(q, tau, wp);
                for root in ball_roots(&cballs, target)? {
                    let mut positions = Vec::with_capacity(*mult);
                    for _ in 0..*mult {
                        positions.push(coords.len());
                        coords.push(root.clone());
                    }
                    atoms.push(Atom {
                        ball: root,
                        positions,
                    });
                }
            }
        }
        let (classes, at_origin) = certified_pattern(&atoms, rec.distinct_total)
            .ok_or_else(|| Error::PrecisionExhausted("coordinate separation undecided".into()))?;
        let degenerate = if rec.degenerate {
            Some(DegeneracyInfo {
                merged_type: rec.merged_type.clone(),
                classes,
                at_origin,
            })
        } else {
            debug_assert!(classes.is_empty() && at_origin.is_empty());
            None
        };
        for eq in &system.equations {
            let v = eval_multipoly_ball(eq, &coords, wp);
            if v.abs_ub().cmp_value(&tol) == Ordering::Greater {
                return Err(Error::PrecisionExhausted(
                    "residual enclosure exceeds tolerance".into(),
                ));
            }
        }
        out.push(SolutionPoint {
            component: comp,
            root_index: ri,
            t_value: tau.clone(),
            sym_coords,
            coords,
            degenerate,
        });
    }
    Ok(out)
}

/// Partition of the points into orbits of the scaling action: the image of
/// a point under `e_i -> ε^w_i e_i` is again a point, and refining until
/// each scaled vector overlaps exactly one point vector identifies it.
fn scaling_partition(
    factors: &[FactorRecovery],
    points: &[SolutionPoint],
    sym: &SymmetricSystem,
    precision: u32,
) -> Result<Vec<Vec<usize>>> {
    let np = points.len();
    if np == 0 {
        return Ok(Vec::new());
    }
    let r = sym.degree - 1;
    if r == 1 {
        return Ok((0..np).map(|i| vec![i]).collect());
    }
    let mut cyc_coeffs = vec![Rational::from_integer((-1).into())];
    cyc_coeffs.extend(std::iter::repeat_with(Rational::zero).take(r - 1));
    cyc_coeffs.push(Rational::from_integer(1.into()));
    let cyc = UniPoly::new(cyc_coeffs);
    let max_w = sym.weights.iter().copied().max().unwrap_or(0);

    let mut wp = precision + 64;
    'attempt: for _ in 0..=MATCH_ESCALATIONS {
        let roots = complex_roots(&cyc, wp)?;
        let eps = primitive_root(&roots, r);
        let mut eps_pows: Vec<Ball> = vec![Ball::exact(crate::algebra::Complex::real(
            BigFloat::from_i64(1),
        ))];
        for _ in 0..max_w {
            let last = eps_pows.last().expect("nonempty");
            eps_pows.push(last.mul(&eps, wp));
        }
        let mut embs: Vec<Vec<Ball>> = Vec::with_capacity(np);
        for pt in points {
            let rec = &factors[pt.component];
            let tau = refine_root(&rec.factor, &pt.t_value, wp)?;
            embs.push(rec.e_reps.iter().map(|rep| eval_unipoly(rep, &tau, wp)).collect());
        }
        let mut pi = vec![usize::MAX; np];
        for i in 0..np {
            let scaled: Vec<Ball> = sym
                .weights
                .iter()
                .zip(&embs[i])
                .map(|(&w, b)| b.mul(&eps_pows[w], wp))
                .collect();
            let candidates: Vec<usize> = (0..np)
                .filter(|&j| {
                    scaled
                        .iter()
                        .zip(&embs[j])
                        .all(|(s, e)| s.overlaps(e))
                })
                .collect();
            match candidates.as_slice() {
                [only] => pi[i] = *only,
                _ => {
                    wp = wp.saturating_mul(2);
                    continue 'attempt;
                }
            }
        }
        let mut seen = vec![false; np];
        for &j in &pi {
            if seen[j] {
                wp = wp.saturating_mul(2);
                continue 'attempt;
            }
            seen[j] = true;
        }
        let mut visited = vec![false; np];
        let mut classes = Vec::new();
        for start in 0..np {
            if visited[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut cur = start;
            while !visited[cur] {
                visited[cur] = true;
                orbit.push(cur);
                cur = pi[cur];
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        return Ok(classes);
    }
    Err(Error::PrecisionExhausted(
        "scaling orbits could not be separated".into(),
    ))
}

/// The root closest to angle 2π/r; spacing between roots of unity is far
/// larger than the enclosure radii, so the nearest center is the primitive
/// root.
fn primitive_root(roots: &[Ball], r: usize) -> Ball {
    let (s, c) = det_sin_cos(std::f64::consts::TAU / r as f64);
    let mut best = 0usize;
    let mut best_d = f64::INFINITY;
    for (i, b) in roots.iter().enumerate() {
        let re = b.mid().re.to_f64() - c;
        let im = b.mid().im.to_f64() - s;
        let d = re * re + im * im;
        if d < best_d {
            best_d = d;
            best = i;
        }
    }
    roots[best].clone()
}

fn assemble(
    system: ConservativeSystem,
    sym: SymmetricSystem,
    recoveries: Vec<FactorRecovery>,
    weights: Vec<i64>,
    precision: u32,
    bezout: usize,
) -> Result<SolutionSet> {
    let mut eliminant = UniPoly::one();
    for rec in &recoveries {
        eliminant = &eliminant * &rec.factor;
    }
    let mut points = Vec::new();
    for (comp, rec) in recoveries.iter().enumerate() {
        points.extend(embed_factor_points(&system, rec, comp, precision)?);
    }
    let scaling_classes = scaling_partition(&recoveries, &points, &sym, precision)?;
    Ok(SolutionSet {
        system,
        eliminant,
        factors: recoveries,
        points,
        scaling_classes,
        primitive_weights: weights,
        precision,
        bezout_bound: bezout,
        sym,
    })
}

