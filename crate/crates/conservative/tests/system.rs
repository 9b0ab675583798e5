//! Fixed-point systems: primitive construction, symmetrization, exact
//! solving, degeneracy classification, and scaling orbits.

use conservative::algebra::{rat, rat_int, MultiPoly, NumberField, Rational, UniPoly};
use conservative::system::{build_primitive, build_system, solve_type, SolutionSet};
use conservative::trees::{enumerate_trees, TreeType, DEFAULT_EDGE_CAP};
use conservative::Error;
use num_traits::{One, Zero};

fn mp(arity: usize, terms: &[(&[u32], Rational)]) -> MultiPoly {
    let mut acc = MultiPoly::zero(arity);
    for (exps, coeff) in terms {
        acc = acc.add(&MultiPoly::monomial(arity, exps.to_vec(), coeff.clone()));
    }
    acc
}

fn tt(parts: &[usize]) -> TreeType {
    TreeType::new(parts.to_vec()).unwrap()
}

// ---------------------------------------------------------------------------
// Division identity for the valency family <2,1,1>.
//
// With a double critical point at the origin and two simple ones at the roots
// of z^2 + 2z + b, the candidate map is C(z) = a (z^5/5 + z^4/2 + b z^3/3).
// Dividing C(z) - z by z^2 + 2z + b has a hand-checked linear remainder whose
// coefficients are the defining equations of the family. Frozen as an oracle:
// the remainder pins b = 12/11, a = 605/36 on the genuine branch and a = -5/4
// on the degenerate branch b = 0.
// ---------------------------------------------------------------------------

const A: usize = 0;
const B: usize = 1;
const Z: usize = 2;

#[test]
fn family_211_division_remainder() {
    let f = mp(
        3,
        &[
            (&[1, 0, 5], rat(1, 5)),
            (&[1, 0, 4], rat(1, 2)),
            (&[1, 1, 3], rat(1, 3)),
            (&[0, 0, 1], rat_int(-1)),
        ],
    );
    let d = mp(
        3,
        &[(&[0, 0, 2], rat_int(1)), (&[0, 0, 1], rat_int(2)), (&[0, 1, 0], rat_int(1))],
    );
    let (q, r) = f.divrem_in(Z, &d).unwrap();
    assert_eq!(q.mul(&d).add(&r), f);
    assert_eq!(r.degree_in(Z), Some(1));

    let expected_r = mp(
        3,
        &[
            (&[1, 1, 1], rat(14, 15)),
            (&[1, 0, 1], rat(-4, 5)),
            (&[0, 0, 1], rat_int(-1)),
            (&[1, 2, 1], rat(-2, 15)),
            (&[1, 2, 0], rat(11, 30)),
            (&[1, 1, 0], rat(-2, 5)),
        ],
    );
    assert_eq!(r, expected_r);

    // The constant coefficient factors as ab (11b - 12) / 30, so a genuine
    // solution (a, b nonzero) forces b = 12/11; the linear coefficient then
    // pins a = 605/36.
    let by_z = r.as_univariate_in(Z);
    let at_b = by_z[0].substitute_rational(B, &rat(12, 11));
    assert!(at_b.is_zero());
    let linear = by_z[1].substitute_rational(B, &rat(12, 11));
    assert!(linear.substitute_rational(A, &rat(605, 36)).is_zero());

    // Degenerate branch b = 0: the constant term vanishes identically and the
    // linear coefficient pins a = -5/4, a quartic with a triple origin.
    assert!(by_z[0].substitute_rational(B, &rat_int(0)).is_zero());
    let lb0 = by_z[1].substitute_rational(B, &rat_int(0));
    assert!(lb0.substitute_rational(A, &rat(-5, 4)).is_zero());
}

// ---------------------------------------------------------------------------
// Primitive construction.
// ---------------------------------------------------------------------------

#[test]
fn primitive_matches_hand_integration() {
    // <2,1>: C'(z) = 4 z^2 (z - a2), so C = z^4 - (4/3) a2 z^3.
    let c = build_primitive(&tt(&[2, 1]));
    assert_eq!(
        c,
        mp(2, &[(&[0, 4], rat_int(1)), (&[1, 3], rat(-4, 3))])
    );

    // <1,1>: C'(z) = 3 z (z - a2), so C = z^3 - (3/2) a2 z^2.
    let c = build_primitive(&tt(&[1, 1]));
    assert_eq!(
        c,
        mp(2, &[(&[0, 3], rat_int(1)), (&[1, 2], rat(-3, 2))])
    );

    // <3,1,1>: C'(z) = 6 z^3 (z - a2)(z - a3).
    let c = build_primitive(&tt(&[3, 1, 1]));
    let expected = mp(
        3,
        &[
            (&[0, 0, 6], rat_int(1)),
            (&[1, 0, 5], rat(-6, 5)),
            (&[0, 1, 5], rat(-6, 5)),
            (&[1, 1, 4], rat(3, 2)),
        ],
    );
    assert_eq!(c, expected);

    // A single valency part integrates to the pure power map.
    for m in 1..=5 {
        let c = build_primitive(&tt(&[m]));
        assert_eq!(c, mp(1, &[(&[(m + 1) as u32], rat_int(1))]));
    }
}

#[test]
fn system_equations_evaluate_as_fixed_point_defects() {
    // E_j(a) must equal C(a_j) - a_j at any parameter choice.
    for alpha in [tt(&[2, 1]), tt(&[2, 1, 1]), tt(&[3, 2, 1])] {
        let sys = build_system(&alpha);
        let c = build_primitive(&alpha);
        let p = alpha.whites();
        let samples: Vec<Vec<Rational>> = vec![
            (0..p - 1).map(|i| rat(i as i64 + 2, 3)).collect(),
            (0..p - 1).map(|i| rat(-(i as i64) - 1, 2)).collect(),
        ];
        for a in samples {
            for (j, eq) in sys.equations.iter().enumerate() {
                let mut point = a.clone();
                point.push(a[j].clone());
                let direct = c.eval(&point) - &a[j];
                assert_eq!(eq.eval(&a), direct);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Solved sets for the smallest types, frozen factor by factor.
// ---------------------------------------------------------------------------

#[test]
fn star_types_solve_to_the_power_map() {
    for m in 1..=4 {
        let set = solve_type(&tt(&[m]), 96).unwrap();
        assert_eq!(set.points.len(), 1);
        assert_eq!(set.nondegenerate().len(), 1);
        assert_eq!(set.scaling_classes, vec![vec![0]]);
        assert_eq!(set.eliminant, UniPoly::var());
        let coeffs = set.point_polynomial(0, 64).unwrap();
        assert_eq!(coeffs.len(), m + 2);
        for (k, c) in coeffs.iter().enumerate() {
            if k == m + 1 {
                assert!(!c.contains_zero());
            } else {
                assert!(c.contains_zero());
            }
        }
    }
}

#[test]
fn valency_21_solution_set() {
    let set = solve_type(&tt(&[2, 1]), 128).unwrap();
    // One simple critical point a2 with a2^4 = -3 a2: the origin branch is
    // the pure power map, the cubic branch carries three genuine maps.
    assert_eq!(set.eliminant, UniPoly::from_integers(&[0, 3, 0, 0, 1]));
    assert_eq!(set.bezout_bound, 4);
    assert_eq!(set.points.len(), 4);
    assert_eq!(set.nondegenerate().len(), 3);
    assert_eq!(set.factors.len(), 2);

    let linear = set
        .factors
        .iter()
        .find(|f| f.factor == UniPoly::var())
        .expect("origin factor");
    assert!(linear.degenerate);
    assert_eq!(linear.merged_type, tt(&[3]));

    let cubic = set
        .factors
        .iter()
        .find(|f| f.factor == UniPoly::from_integers(&[3, 0, 0, 1]))
        .expect("cubic factor");
    assert!(!cubic.degenerate);
    assert_eq!(cubic.merged_type, tt(&[2, 1]));

    for &i in &set.degenerate_points() {
        let info = set.points[i].degenerate.as_ref().unwrap();
        assert_eq!(info.merged_type, tt(&[3]));
        assert_eq!(info.at_origin, vec![0]);
        assert!(info.classes.is_empty());
    }

    let mut sizes: Vec<usize> = set.scaling_classes.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 3]);

    // The map at a genuine point is z^4 - (4/3) a2 z^3.
    let idx = set.nondegenerate()[0];
    let coeffs = set.point_polynomial(idx, 128).unwrap();
    let a2 = &set.points[idx].coords[0];
    let expected = a2.scale_rational(&rat(-4, 3), 160);
    assert!(coeffs[3].overlaps(&expected));
    assert!(coeffs[0].contains_zero() && coeffs[1].contains_zero() && coeffs[2].contains_zero());
}

#[test]
fn valency_11_solution_set() {
    let set = solve_type(&tt(&[1, 1]), 128).unwrap();
    // a2^3 = -2 a2: the genuine pair sits at +- i sqrt(2).
    assert_eq!(set.eliminant, UniPoly::from_integers(&[0, 2, 0, 1]));
    assert_eq!(set.points.len(), 3);
    assert_eq!(set.nondegenerate().len(), 2);
    for &i in &set.nondegenerate() {
        let a2 = &set.points[i].coords[0];
        let square = a2.mul(a2, 160);
        assert!(square.add(&conservative::algebra::Ball::from_rational(&rat_int(2), &rat_int(0), 160), 160).contains_zero());
    }
    let mut sizes: Vec<usize> = set.scaling_classes.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 2]);
}

// ---------------------------------------------------------------------------
// The two five- and six-edge families with quadratic parameter fields.
// ---------------------------------------------------------------------------

fn scale_invariant_parameter(rec: &conservative::system::FactorRecovery, c2: i64) -> UniPoly {
    // b = c2^2 e2 / e1^2, the scale-free coordinate of the simple pair.
    let field = NumberField::new(&rec.factor).unwrap();
    let e1 = &rec.e_reps[0];
    let e2 = &rec.e_reps[1];
    let inv = field.inv(&field.mul(e1, e1)).unwrap();
    let b = field.mul(&field.mul(e2, &inv), &field.constant(rat_int(c2 * c2)));
    field.minimal_polynomial(&b)
}

#[test]
fn valency_311_solution_set() {
    let set = solve_type(&tt(&[3, 1, 1]), 160).unwrap();
    assert_eq!(set.bezout_bound, 36);
    assert_eq!(set.eliminant.degree(), Some(21));
    assert_eq!(set.points.len(), 21);
    assert_eq!(set.nondegenerate().len(), 10);
    assert_eq!(set.factors.len(), 4);

    // Degenerate branches: the power map, five maps with one critical point
    // absorbed by the origin, five with the simple pair collided.
    let mut merged: Vec<Vec<usize>> = set
        .degenerate_points()
        .iter()
        .map(|&i| set.points[i].degenerate.as_ref().unwrap().merged_type.0.clone())
        .collect();
    merged.sort();
    let mut expected = vec![vec![5usize]];
    expected.extend(std::iter::repeat_n(vec![4, 1], 5));
    expected.extend(std::iter::repeat_n(vec![3, 2], 5));
    expected.sort();
    assert_eq!(merged, expected);

    // The absorbed branch satisfies a2^5 = -5 exactly.
    assert!(set
        .factors
        .iter()
        .any(|f| f.factor == UniPoly::from_integers(&[5, 0, 0, 0, 0, 1])));

    // Genuine branches: the scale-free parameter satisfies 5b^2 - 9b + 2,
    // the quadratic of discriminant 41, on every genuine factor.
    let quadratic = UniPoly::new(vec![rat(2, 5), rat(-9, 5), rat_int(1)]);
    let genuine: Vec<_> = set.factors.iter().filter(|f| !f.degenerate).collect();
    assert!(!genuine.is_empty());
    let mut total = 0;
    for rec in &genuine {
        total += rec.factor.degree().unwrap();
        assert_eq!(scale_invariant_parameter(rec, 1), quadratic);
    }
    assert_eq!(total, 10);

    // Scaling orbits: four degenerate families plus two genuine classes of
    // five maps each.
    let mut sizes: Vec<usize> = set.scaling_classes.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 5, 5, 5, 5]);
    let nondeg: std::collections::BTreeSet<usize> = set.nondegenerate().into_iter().collect();
    let genuine_classes: Vec<_> = set
        .scaling_classes
        .iter()
        .filter(|c| c.iter().all(|i| nondeg.contains(i)))
        .collect();
    assert_eq!(genuine_classes.len(), 2);
    assert!(genuine_classes.iter().all(|c| c.len() == 5));
    for class in &set.scaling_classes {
        let all_in = class.iter().all(|i| nondeg.contains(i));
        let none_in = class.iter().all(|i| !nondeg.contains(i));
        assert!(all_in || none_in);
    }
}

#[test]
fn valency_211_solution_set() {
    let set = solve_type(&tt(&[2, 1, 1]), 160).unwrap();
    assert_eq!(set.bezout_bound, 25);
    assert_eq!(set.eliminant.degree(), Some(15));
    assert_eq!(set.points.len(), 15);
    assert_eq!(set.nondegenerate().len(), 6);
    assert_eq!(set.factors.len(), 7);

    let mut merged: Vec<Vec<usize>> = set
        .degenerate_points()
        .iter()
        .map(|&i| set.points[i].degenerate.as_ref().unwrap().merged_type.0.clone())
        .collect();
    merged.sort();
    let mut expected = vec![vec![4usize]];
    expected.extend(std::iter::repeat_n(vec![3, 1], 4));
    expected.extend(std::iter::repeat_n(vec![2, 2], 4));
    expected.sort();
    assert_eq!(merged, expected);

    // Genuine branches: one symmetric family (vanishing e1, stabilized by
    // the half turn) and one asymmetric family with rational scale-free
    // parameter 12/11, split over two conjugate quadratic fields.
    let genuine: Vec<_> = set.factors.iter().filter(|f| !f.degenerate).collect();
    assert_eq!(genuine.len(), 3);
    let (symmetric, asymmetric): (Vec<&&conservative::system::FactorRecovery>, Vec<_>) =
        genuine.iter().partition(|f| f.e_reps[0].is_zero());
    assert_eq!(symmetric.len(), 1);
    assert_eq!(
        symmetric[0].factor,
        UniPoly::new(vec![rat(3, 2), rat_int(0), rat_int(1)])
    );
    assert_eq!(asymmetric.len(), 2);
    let pinned = UniPoly::new(vec![rat(-12, 11), rat_int(1)]);
    for rec in &asymmetric {
        assert_eq!(rec.factor.degree(), Some(2));
        assert_eq!(scale_invariant_parameter(rec, 2), pinned);
    }

    // Scaling orbits: the symmetric pair forms a class of two, the
    // asymmetric quadruple a class of four crossing both conjugate factors.
    let mut sizes: Vec<usize> = set.scaling_classes.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![1, 2, 4, 4, 4]);
    let nondeg: std::collections::BTreeSet<usize> = set.nondegenerate().into_iter().collect();
    let genuine_classes: Vec<_> = set
        .scaling_classes
        .iter()
        .filter(|c| c.iter().all(|i| nondeg.contains(i)))
        .collect();
    let mut gsizes: Vec<usize> = genuine_classes.iter().map(|c| c.len()).collect();
    gsizes.sort_unstable();
    assert_eq!(gsizes, vec![2, 4]);
}

// ---------------------------------------------------------------------------
// Census: the number of genuine maps of each type equals the count predicted
// by the tree correspondence, summed over plane trees of that type.
// ---------------------------------------------------------------------------

fn census(alpha: &TreeType) -> usize {
    // Each tree of the type contributes m1 (d-1) / |Aut|, where m1 counts the
    // white vertices of maximal valency (any of them can sit at the origin)
    // and d-1 counts the scalings of a representative.
    let m = alpha.edges();
    let m1 = alpha.0.iter().filter(|&&v| v == alpha.0[0]).count();
    let trees = enumerate_trees(m, DEFAULT_EDGE_CAP).unwrap();
    let mut total = Rational::zero();
    for t in trees.iter().filter(|t| &t.tree_type == alpha) {
        total = total + rat(m1 as i64 * m as i64, t.aut as i64);
    }
    assert!(total.denom().is_one(), "census of {alpha} is not integral");
    let n: i64 = total.numer().try_into().unwrap();
    n as usize
}

#[test]
fn genuine_counts_match_the_tree_census_small() {
    for parts in [
        vec![1],
        vec![2],
        vec![1, 1],
        vec![3],
        vec![2, 1],
        vec![1, 1, 1],
        vec![4],
        vec![3, 1],
        vec![2, 2],
        vec![2, 1, 1],
    ] {
        let alpha = tt(&parts);
        let set = solve_type(&alpha, 96).unwrap();
        assert_eq!(
            set.nondegenerate().len(),
            census(&alpha),
            "genuine count of {alpha}"
        );
        for &i in &set.nondegenerate() {
            assert!(set.points[i].degenerate.is_none());
        }
    }
}

#[test]
fn genuine_counts_match_the_tree_census_five_edges() {
    for parts in [vec![4, 1], vec![3, 2], vec![2, 2, 1]] {
        let alpha = tt(&parts);
        let set = solve_type(&alpha, 96).unwrap();
        assert_eq!(
            set.nondegenerate().len(),
            census(&alpha),
            "genuine count of {alpha}"
        );
    }
}

#[test]
fn genuine_counts_match_the_tree_census_three_unknowns() {
    let alpha = tt(&[1, 1, 1, 1]);
    let set = solve_type(&alpha, 96).unwrap();
    assert_eq!(set.nondegenerate().len(), census(&alpha));
}

// ---------------------------------------------------------------------------
// Reordering and error surfaces.
// ---------------------------------------------------------------------------

#[test]
fn filtering_moves_genuine_points_first() {
    let set = solve_type(&tt(&[2, 1]), 96).unwrap();
    let filtered = conservative::system::filter_degenerate(&set);
    assert_eq!(filtered.points.len(), set.points.len());
    assert_eq!(filtered.nondegenerate(), vec![0, 1, 2]);
    assert_eq!(filtered.degenerate_points(), vec![3]);
    // Scaling classes survive the reindexing as a partition.
    let mut all: Vec<usize> = filtered.scaling_classes.concat();
    all.sort_unstable();
    assert_eq!(all, vec![0, 1, 2, 3]);
    // The reordered points still expose their polynomials.
    let coeffs = filtered.point_polynomial(3, 96).unwrap();
    assert!(coeffs[3].contains_zero());
}

#[test]
fn too_many_unknowns_are_rejected() {
    let err = solve_type(&tt(&[1, 1, 1, 1, 1]), 96).unwrap_err();
    assert!(matches!(err, Error::Unsupported(_)));
}

#[test]
fn solving_is_deterministic() {
    let a = solve_type(&tt(&[2, 1, 1]), 128).unwrap();
    let b = solve_type(&tt(&[2, 1, 1]), 128).unwrap();
    assert_eq!(a.eliminant, b.eliminant);
    let fa: Vec<&UniPoly> = a.factors.iter().map(|f| &f.factor).collect();
    let fb: Vec<&UniPoly> = b.factors.iter().map(|f| &f.factor).collect();
    assert_eq!(fa, fb);
    assert_eq!(a.scaling_classes, b.scaling_classes);
    for (x, y) in a.points.iter().zip(&b.points) {
        assert_eq!(x.component, y.component);
        assert_eq!(x.root_index, y.root_index);
    }
}

// Solution coordinates ought to reproduce the symmetrized data: the listed
// coordinate enclosures, summed and multiplied per group, must overlap the
// stored elementary values.
#[test]
fn coordinates_are_consistent_with_symmetric_values(){
    let set: SolutionSet = solve_type(&tt(&[3, 1, 1]), 128).unwrap();
    for pt in &set.points {
        let a2 = &pt.coords[0];
        let a3 = &pt.coords[1];
        let sum = a2.add(a3, 160);
        let prod = a2.mul(a3, 160);
        assert!(sum.overlaps(&pt.sym_coords[0]));
        assert!(prod.overlaps(&pt.sym_coords[1]));
    }
}
