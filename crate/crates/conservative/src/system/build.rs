//! Construction of the fixed-point systems.
//!
//! A normalized polynomial of valency type `<α1, ..., αp>` and degree
//! `d = 1 + Σ αi` is determined by the free critical points: it is the
//! antiderivative of `d z^α1 (z - a_2)^α2 ... (z - a_p)^αp` vanishing at the
//! origin. Conservativity is the vanishing of `E_j = C(a_j) - a_j` for
//! `j = 2..p`.
//!
//! The solver works in symmetrized coordinates: critical points of equal
//! valency are interchangeable, so each valency group of size `k` is replaced
//! by its elementary symmetric functions `e_1, ..., e_k`, and the equations
//! by the group traces `S_m = Σ_j a_j^m E_j` for `m = 0..k-1`, rewritten
//! through Newton power sums. The traces vanish simultaneously exactly when
//! every `E_j` vanishes (a generalized Vandermonde matrix in the distinct
//! coordinate values has full column rank), so the symmetrized variety is
//! precisely the set of coefficient vectors of conservative polynomials, one
//! point per polynomial.

use crate::algebra::{rat_int, MultiPoly, Rational};
use crate::trees::TreeType;

/// Fixed-point system in the raw critical-point coordinates.
#[derive(Clone, Debug)]
pub struct ConservativeSystem {
    pub alpha: TreeType,
    /// Degree `d` of the polynomials.
    pub degree: usize,
    /// Number of unknown critical points, `p - 1`.
    pub unknowns: usize,
    /// The normalized polynomial, arity `p`: variables `0..p-1` are
    /// `a_2, ..., a_p`, the last variable is `z`.
    pub c_symbolic: MultiPoly,
    /// `E_j = C(a_j) - a_j`, arity `p - 1`, one equation per unknown.
    pub equations: Vec<MultiPoly>,
}

/// One valency group of the symmetrized coordinates.
#[derive(Clone, Copy, Debug)]
pub(crate) struct GroupSpec {
    pub valency: usize,
    pub size: usize,
    /// First e-variable index of this group.
    pub offset: usize,
}

/// Fixed-point system in elementary symmetric coordinates, grouped by
/// valency.
#[derive(Clone, Debug)]
pub(crate) struct SymmetricSystem {
    pub alpha: TreeType,
    pub degree: usize,
    pub groups: Vec<GroupSpec>,
    /// Total number of e-variables (equals the number of unknowns).
    pub arity: usize,
    /// The normalized polynomial, arity `arity + 1`, `z` last.
    pub c_sym: MultiPoly,
    /// Trace equations, arity `arity`, group-major.
    pub equations: Vec<MultiPoly>,
    /// Scaling weight of each e-variable: `e_i` of a group has weight `i`,
    /// so `z -> εz` acts by `e_i -> ε^i e_i`.
    pub weights: Vec<usize>,
}

/// Antiderivative in the given variable, vanishing when that variable does.
fn integrate_in(p: &MultiPoly, var: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(p.arity());
    for (exps, coeff) in p.terms() {
        let mut e = exps.clone();
        e[var] += 1;
        let k = Rational::from_integer(e[var].into());
        out = out.add(&MultiPoly::monomial(p.arity(), e, coeff / &k));
    }
    out
}

/// Projects away a variable that no polynomial degree depends on.
pub(crate) fn drop_var(p: &MultiPoly, var: usize) -> MultiPoly {
    debug_assert_eq!(p.degree_in(var).unwrap_or(0), 0);
    let arity = p.arity() - 1;
    let mut out = MultiPoly::zero(arity);
    for (exps, coeff) in p.terms() {
        let mut e = exps.clone();
        e.remove(var);
        out = out.add(&MultiPoly::monomial(arity, e, coeff.clone()));
    }
    out
}

/// The normalized polynomial of the type: monic of degree `d`, vanishing at
/// the origin, with critical points `0, a_2, ..., a_p` of the prescribed
/// multiplicities. Arity `p` with `z` as the last variable.
pub fn build_primitive(alpha: &TreeType) -> MultiPoly {
    let p = alpha.whites();
    let d = alpha.degree();
    let arity = p;
    let z = p - 1;
    let mut deriv = MultiPoly::var(arity, z).pow(alpha.0[0] as u32).scale(&rat_int(d as i64));
    for (j, &val) in alpha.0.iter().enumerate().skip(1) {
        let factor = MultiPoly::var(arity, z).sub(&MultiPoly::var(arity, j - 1));
        deriv = deriv.mul(&factor.pow(val as u32));
    }
    integrate_in(&deriv, z)
}

/// The fixed-point system `E_j = C(a_j) - a_j` in raw coordinates.
pub fn build_system(alpha: &TreeType) -> ConservativeSystem {
    let p = alpha.whites();
    let c = build_primitive(alpha);
    let z = p - 1;
    let mut equations = Vec::with_capacity(p - 1);
    for j in 0..p - 1 {
        let at_aj = c.substitute(z, &MultiPoly::var(p, j));
        let e = at_aj.sub(&MultiPoly::var(p, j));
        equations.push(drop_var(&e, z));
    }
    ConservativeSystem {
        alpha: alpha.clone(),
        degree: alpha.degree(),
        unknowns: p - 1,
        c_symbolic: c,
        equations,
    }
}

/// Power sums `p_0, ..., p_top` of `k` quantities, expressed in their
/// elementary symmetric functions `e_1, ..., e_k` placed at variables
/// `offset..offset+k` of an arity-`arity` polynomial ring, via the Newton
/// recurrences.
fn power_sums(arity: usize, offset: usize, k: usize, top: usize) -> Vec<MultiPoly> {
    let e = |i: usize| MultiPoly::var(arity, offset + i - 1);
    let mut p = Vec::with_capacity(top + 1);
    p.push(MultiPoly::constant(arity, rat_int(k as i64)));
    for j in 1..=top {
        let mut sum = MultiPoly::zero(arity);
        for i in 1..=(j - 1).min(k) {
            let term = e(i).mul(&p[j - i]);
            sum = if i % 2 == 1 { sum.add(&term) } else { sum.sub(&term) };
        }
        if j <= k {
            let extra = e(j).scale(&rat_int(j as i64));
            sum = if j % 2 == 1 { sum.add(&extra) } else { sum.sub(&extra) };
        }
        p.push(sum);
    }
    p
}

/// Valency groups of the unknowns: maximal runs of equal valency in
/// `alpha[1..]`.
pub(crate) fn valency_groups(alpha: &TreeType) -> Vec<GroupSpec> {
    let mut groups: Vec<GroupSpec> = Vec::new();
    let mut offset = 0usize;
    for &v in alpha.0.iter().skip(1) {
        match groups.last_mut() {
            Some(g) if g.valency == v => g.size += 1,
            _ => {
                groups.push(GroupSpec {
                    valency: v,
                    size: 1,
                    offset,
                });
            }
        }
        offset += 1;
    }
    groups
}

/// The symmetrized system: `C` with elementary symmetric coefficients and
/// the group trace equations.
pub(crate) fn build_symmetric(alpha: &TreeType) -> SymmetricSystem {
    let d = alpha.degree();
    let groups = valency_groups(alpha);
    let n: usize = groups.iter().map(|g| g.size).sum();
    let arity = n + 1;
    let z = n;

    // C' = d z^α1 Π_g P_g(z)^v_g with P_g the monic polynomial whose roots
    // are the group's critical points: z^k - e_1 z^(k-1) + ... +- e_k.
    let mut deriv = MultiPoly::var(arity, z).pow(alpha.0[0] as u32).scale(&rat_int(d as i64));
    for g in &groups {
        let mut pg = MultiPoly::var(arity, z).pow(g.size as u32);
        for i in 1..=g.size {
            let mut term = MultiPoly::var(arity, g.offset + i - 1)
                .mul(&MultiPoly::var(arity, z).pow((g.size - i) as u32));
            if i % 2 == 1 {
                term = term.neg();
            }
            pg = pg.add(&term);
        }
        deriv = deriv.mul(&pg.pow(g.valency as u32));
    }
    let c_sym = integrate_in(&deriv, z);

    // H = C - z; S_{g,m} = Σ_j coeff_j(z^m H) p_j over the group's power
    // sums, for m = 0..k-1.
    let h = c_sym.sub(&MultiPoly::var(arity, z));
    let h_coeffs: Vec<MultiPoly> = h
        .as_univariate_in(z)
        .iter()
        .map(|c| drop_var(c, z))
        .collect();
    let mut equations = Vec::with_capacity(n);
    for g in &groups {
        let top = h_coeffs.len().saturating_sub(1) + g.size - 1;
        let sums = power_sums(n, g.offset, g.size, top);
        for m in 0..g.size {
            let mut s = MultiPoly::zero(n);
            for (j, hc) in h_coeffs.iter().enumerate() {
                if hc.is_zero() {
                    continue;
                }
                s = s.add(&hc.mul(&sums[j + m]));
            }
            equations.push(s);
        }
    }

    let mut weights = Vec::with_capacity(n);
    for g in &groups {
        for i in 1..=g.size {
            weights.push(i);
        }
    }

    SymmetricSystem {
        alpha: alpha.clone(),
        degree: d,
        groups,
        arity: n,
        c_sym,
        equations,
        weights,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    /// Elementary symmetric values `e_0, ..., e_n` of `vals`.
    fn elementary(vals: &[Rational]) -> Vec<Rational> {
        let mut e = vec![rat_int(1)];
        for v in vals {
            e.push(rat_int(0));
            for i in (1..e.len()).rev() {
                let bumped = &e[i] + &(&e[i - 1] * v);
                e[i] = bumped;
            }
        }
        e
    }

    #[test]
    fn traces_match_weighted_defect_sums() {
        let samples: &[(&[usize], &[(i64, i64)])] = &[
            (&[2, 1, 1], &[(3, 1), (1, 2)]),
            (&[2, 1, 1], &[(5, 7), (-1, 3)]),
            (&[1, 1, 1, 1], &[(2, 1), (-1, 2), (1, 3)]),
            (&[2, 1, 1, 1], &[(2, 1), (1, 2), (-1, 3)]),
            (&[3, 2, 2], &[(1, 1), (-3, 2)]),
            (&[2, 2, 1], &[(7, 2), (-1, 1)]),
        ];
        for (parts, coords) in samples {
            let alpha = TreeType(parts.to_vec());
            let a: Vec<Rational> = coords.iter().map(|&(n, d)| rat(n, d)).collect();
            let sys = build_system(&alpha);
            let sym = build_symmetric(&alpha);
            let defects: Vec<Rational> = sys.equations.iter().map(|q| q.eval(&a)).collect();
            let mut x = vec![rat_int(0); sym.arity];
            for g in &sym.groups {
                let e = elementary(&a[g.offset..g.offset + g.size]);
                for i in 1..=g.size {
                    x[g.offset + i - 1] = e[i].clone();
                }
            }
            for g in &sym.groups {
                for m in 0..g.size {
                    let got = sym.equations[g.offset + m].eval(&x);
                    let mut want = rat_int(0);
                    for j in g.offset..g.offset + g.size {
                        let mut term = defects[j].clone();
                        for _ in 0..m {
                            term = &term * &a[j];
                        }
                        want = want + term;
                    }
                    assert_eq!(
                        got, want,
                        "type {:?}, group at offset {}, trace {}",
                        alpha, g.offset, m
                    );
                }
            }
        }
    }
}
