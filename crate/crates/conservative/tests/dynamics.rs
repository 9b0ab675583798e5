//! Dynamics tests: fixed-point classification, ray tracing, tree
//! reconstruction, and basin rendering, checked against hand-computed
//! fixed-point data and closed-form trees.

use conservative::algebra::{rat, rat_int, Ball, Rational};
use conservative::dynamics::{
    basin_map, fixed_points, reconstruct, reconstruct_tree, render_basins, trace_ray,
    ConservativePolynomial, Viewport, DEFAULT_DYNAMIC_PRECISION,
};
use conservative::system::solve_type;
use conservative::trees::{enumerate_trees, Color, PlaneTree, TreeType};

const PREC: u32 = DEFAULT_DYNAMIC_PRECISION;

fn poly(coeffs: &[Rational]) -> ConservativePolynomial {
    ConservativePolynomial::from_rational(coeffs, PREC).expect("conservative input")
}

/// `-3z^5/2 + 5z^3/2`: fixed points 0, ±1, ±sqrt(2/3); derivative
/// `-15z^4/2 + 15z^2/2` vanishes at 0, ±1.
fn odd_quintic() -> ConservativePolynomial {
    poly(&[
        rat_int(0),
        rat_int(0),
        rat_int(0),
        rat(5, 2),
        rat_int(0),
        rat(-3, 2),
    ])
}

/// `z^6 + 6z/5`: derivative `6z^5 + 6/5`, critical at the fifth roots of
/// `-1/5`, each of which is fixed.
fn reversed_star_six() -> ConservativePolynomial {
    let mut c = vec![rat_int(0); 7];
    c[1] = rat(6, 5);
    c[6] = rat_int(1);
    poly(&c)
}

/// `121z^5/36 + 605z^4/72 + 55z^3/9`, derivative
/// `(55/36) z^2 (55z^2 + 22z + 12)`.
fn asymmetric_quintic() -> ConservativePolynomial {
    poly(&[
        rat_int(0),
        rat_int(0),
        rat_int(0),
        rat(55, 9),
        rat(605, 72),
        rat(121, 36),
    ])
}

fn assert_near(ball: &Ball, re: f64, im: f64, tol: f64) {
    let (br, bi) = ball.mid().to_f64();
    let d = ((br - re).powi(2) + (bi - im).powi(2)).sqrt();
    assert!(
        d <= tol,
        "expected within {tol} of ({re}, {im}), got ({br}, {bi})"
    );
}

#[test]
fn square_map_fixed_points() {
    let c = poly(&[rat_int(0), rat_int(0), rat_int(1)]);
    let fixed = fixed_points(&c, PREC).unwrap();
    assert_eq!(fixed.points.len(), 2);
    assert_eq!(fixed.superattracting(), vec![0]);
    assert_eq!(fixed.repelling(), vec![1]);
    assert_near(&fixed.points[0].location, 0.0, 0.0, 1e-20);
    assert_near(&fixed.points[1].location, 1.0, 0.0, 1e-20);
    assert_near(&fixed.points[1].multiplier, 2.0, 0.0, 1e-20);
}

#[test]
fn odd_quintic_fixed_points() {
    let c = odd_quintic();
    let fixed = fixed_points(&c, PREC).unwrap();
    assert_eq!(fixed.points.len(), 5);
    assert_eq!(fixed.superattracting().len(), 3);
    let rep = fixed.repelling();
    assert_eq!(rep.len(), 2);
    let root = (2.0f64 / 3.0).sqrt();
    let mut centers: Vec<f64> = rep
        .iter()
        .map(|&i| fixed.points[i].location.mid().to_f64().0)
        .collect();
    centers.sort_by(f64::total_cmp);
    assert!((centers[0] + root).abs() < 1e-12);
    assert!((centers[1] - root).abs() < 1e-12);
    for &i in &rep {
        let mu = &fixed.points[i].multiplier;
        let five_thirds = Ball::from_rational(&rat(5, 3), &rat_int(0), 256);
        assert!(
            mu.overlaps(&five_thirds),
            "multiplier should be exactly 5/3"
        );
    }
    let supers: Vec<f64> = fixed
        .superattracting()
        .iter()
        .map(|&i| fixed.points[i].location.mid().to_f64().0)
        .collect();
    for expect in [-1.0, 0.0, 1.0] {
        assert!(supers.iter().any(|s| (s - expect).abs() < 1e-12));
    }
}

#[test]
fn reversed_star_fixed_points() {
    let c = reversed_star_six();
    let fixed = fixed_points(&c, PREC).unwrap();
    assert_eq!(fixed.points.len(), 6);
    assert_eq!(fixed.superattracting().len(), 5);
    let rep = fixed.repelling();
    assert_eq!(rep.len(), 1);
    assert_near(&fixed.points[rep[0]].location, 0.0, 0.0, 1e-20);
    assert_near(&fixed.points[rep[0]].multiplier, 1.2, 0.0, 1e-20);
    let radius = (0.2f64).powf(0.2);
    for &i in &fixed.superattracting() {
        let (re, im) = fixed.points[i].location.mid().to_f64();
        assert!(((re * re + im * im).sqrt() - radius).abs() < 1e-12);
    }
}

#[test]
fn star_rays_are_radial() {
    let c = poly(&[
        rat_int(0),
        rat_int(0),
        rat_int(0),
        rat_int(0),
        rat_int(0),
        rat_int(1),
    ]);
    let fixed = fixed_points(&c, PREC).unwrap();
    for k in 0..4 {
        let ray = trace_ray(&c, 0, k, PREC).unwrap();
        let angle = std::f64::consts::FRAC_PI_2 * k as f64;
        let (ex, ey) = (angle.cos(), angle.sin());
        assert_near(&fixed.points[ray.landing].location, ex, ey, 1e-12);
        for sample in &ray.polyline {
            let (x, y) = sample.to_f64();
            let cross = (x * ey - y * ex).abs();
            assert!(cross < 1e-9, "sample off the radial segment: ({x}, {y})");
        }
    }
}

#[test]
fn odd_quintic_rays_land_symmetrically() {
    let c = odd_quintic();
    let fixed = fixed_points(&c, PREC).unwrap();
    let origin = fixed
        .superattracting()
        .into_iter()
        .find(|&i| {
            let (re, im) = fixed.points[i].location.mid().to_f64();
            re.abs() < 1e-9 && im.abs() < 1e-9
        })
        .expect("origin is critical");
    let root = (2.0f64 / 3.0).sqrt();
    let mut landings = Vec::new();
    for k in 0..2 {
        let ray = trace_ray(&c, origin, k, PREC).unwrap();
        for sample in &ray.polyline {
            let (x, y) = sample.to_f64();
            assert!(y.abs() < 1e-9, "odd map keeps its rays on the real axis");
            assert!(x.abs() < root + 1e-6);
        }
        landings.push(fixed.points[ray.landing].location.mid().to_f64().0);
    }
    landings.sort_by(f64::total_cmp);
    assert!((landings[0] + root).abs() < 1e-9);
    assert!((landings[1] - root).abs() < 1e-9);
}

#[test]
fn cubic_single_ray() {
    // 3z^2 - 2z^3: fixed points 0, 1/2, 1; the single ray from the origin
    // lands at the unique repelling point 1/2.
    let c = poly(&[rat_int(0), rat_int(0), rat_int(3), rat_int(-2)]);
    let fixed = fixed_points(&c, PREC).unwrap();
    assert_eq!(fixed.repelling().len(), 1);
    let origin = 0;
    assert_near(&fixed.points[origin].location, 0.0, 0.0, 1e-20);
    let ray = trace_ray(&c, origin, 0, PREC).unwrap();
    assert_near(&fixed.points[ray.landing].location, 0.5, 0.0, 1e-12);
    assert_near(
        &fixed.points[ray.landing].multiplier,
        1.5,
        0.0,
        1e-12,
    );
}

#[test]
fn ray_polylines_are_forward_invariant() {
    for c in [odd_quintic(), asymmetric_quintic()] {
        for white in 0..c.critical_points().len() {
            for k in 0..c.critical_points()[white].multiplicity {
                let ray = trace_ray(&c, white, k, PREC).unwrap();
                let defect = ray.invariance_defect(&c);
                assert!(
                    defect < 1e-6,
                    "forward image strays {defect} from the ray"
                );
            }
        }
    }
}

#[test]
fn stars_reconstruct_to_white_stars() {
    for d in [2usize, 5] {
        let mut coeffs = vec![rat_int(0); d + 1];
        coeffs[d] = rat_int(1);
        let c = poly(&coeffs);
        let tree = reconstruct_tree(&c, PREC).unwrap();
        assert_eq!(tree.tree_type(), TreeType::new(vec![d - 1]).unwrap());
        let star = PlaneTree::star(d - 1, Color::White).unwrap();
        assert_eq!(tree.canonical_code(), star.canonical_code());
    }
}

#[test]
fn reversed_star_reconstructs_to_black_star() {
    let c = reversed_star_six();
    let tree = reconstruct_tree(&c, PREC).unwrap();
    assert_eq!(tree.tree_type(), TreeType::new(vec![1; 5]).unwrap());
    let star = PlaneTree::star(5, Color::Black).unwrap();
    assert_eq!(tree.canonical_code(), star.canonical_code());
}

#[test]
fn example_quintics_reconstruct_with_expected_symmetry() {
    let rec = reconstruct(&odd_quintic(), PREC).unwrap();
    assert_eq!(rec.tree.tree_type(), TreeType::new(vec![2, 1, 1]).unwrap());
    assert_eq!(rec.tree.aut_order(), 2);

    let rec = reconstruct(&asymmetric_quintic(), PREC).unwrap();
    assert_eq!(rec.tree.tree_type(), TreeType::new(vec![2, 1, 1]).unwrap());
    assert_eq!(rec.tree.aut_order(), 1);
}

#[test]
fn reconstruction_matches_fixed_point_census() {
    for c in [odd_quintic(), asymmetric_quintic(), reversed_star_six()] {
        let rec = reconstruct(&c, PREC).unwrap();
        let whites = c.critical_points().len();
        let blacks = rec.black_ids.len();
        assert_eq!(rec.fixed.superattracting().len(), whites);
        assert_eq!(rec.fixed.repelling().len(), blacks);
        assert_eq!(rec.tree.vertex_count(), whites + blacks);
        assert_eq!(rec.tree.edge_count(), c.degree() - 1);
        // each black vertex's valency equals the number of rays landing there
        for (v, &id) in rec.black_ids.iter().enumerate() {
            let landed = rec.rays.iter().filter(|r| r.landing == id).count();
            assert_eq!(rec.tree.valency(whites + v), landed);
        }
    }
}

#[test]
fn solved_type_roundtrip() {
    let alpha = TreeType::new(vec![2, 1]).unwrap();
    let set = solve_type(&alpha, conservative::system::DEFAULT_PRECISION).unwrap();
    let nondeg = set.nondegenerate();
    assert_eq!(nondeg.len(), 3);
    assert_eq!(set.scaling_classes.iter().filter(|c| c.len() > 1).count(), 1);

    let mut codes = Vec::new();
    for &i in &nondeg {
        let c = ConservativePolynomial::from_solution(&set, i).unwrap();
        let tree = reconstruct_tree(&c, PREC).unwrap();
        assert_eq!(tree.tree_type(), alpha);
        codes.push(tree.canonical_code());
    }
    // scaling-related solutions reconstruct to the same plane tree
    codes.sort();
    codes.dedup();
    assert_eq!(codes.len(), 1);

    let enumerated: Vec<_> = enumerate_trees(3, 10_000)
        .unwrap()
        .into_iter()
        .filter(|t| t.tree_type == alpha)
        .collect();
    assert_eq!(enumerated.len(), 1);
    assert_eq!(codes[0], enumerated[0].code);
}

#[test]
fn square_map_basins() {
    let c = poly(&[rat_int(0), rat_int(0), rat_int(1)]);
    let vp = Viewport::centered(2.0);
    let a = render_basins(&c, &vp, 64, 64, 200).unwrap();
    let b = render_basins(&c, &vp, 64, 64, 200).unwrap();
    assert_eq!(a, b, "rendering must be deterministic");
    assert_eq!(a.pixels.len(), 64 * 64 * 3);

    let map = basin_map(&c, &vp, 64, 64, 200).unwrap();
    let center = map.cells[32 * 64 + 32];
    assert_eq!(center, 0, "the disk interior converges to the origin");
    let corner = map.cells[0];
    assert_eq!(corner, -1, "far pixels escape");
    let header = a.ppm_bytes();
    assert!(header.starts_with(b"P6\n64 64\n255\n"));
}

#[test]
fn reversed_star_basins_rotate() {
    let c = reversed_star_six();
    let vp = Viewport::centered(1.3);
    let n = 160usize;
    let map = basin_map(&c, &vp, n, n, 400).unwrap();

    // rotation by 2pi/5 permutes the five attractors
    let rot = 2.0 * std::f64::consts::PI / 5.0;
    let (rc, rs) = (rot.cos(), rot.sin());
    let perm: Vec<i32> = map
        .attractors
        .iter()
        .map(|w| {
            let (wx, wy) = (w.0 * rc - w.1 * rs, w.0 * rs + w.1 * rc);
            let mut best = (f64::INFINITY, -1i32);
            for (j, q) in map.attractors.iter().enumerate() {
                let d2 = (q.0 - wx).powi(2) + (q.1 - wy).powi(2);
                if d2 < best.0 {
                    best = (d2, j as i32);
                }
            }
            best.1
        })
        .collect();

    // compare against rotated pixels whose 3x3 neighborhood is unanimous;
    // boundary pixels alias under the nearest-pixel rounding
    let unanimous = |row: isize, col: isize| -> Option<i32> {
        let v = map.cells[row as usize * n + col as usize];
        for dr in -1..=1isize {
            for dc in -1..=1isize {
                let (r, c) = (row + dr, col + dc);
                if r < 0 || c < 0 || r >= n as isize || c >= n as isize {
                    return None;
                }
                if map.cells[r as usize * n + c as usize] != v {
                    return None;
                }
            }
        }
        Some(v)
    };
    let step = 2.0 * 1.3 / n as f64;
    let mut total = 0usize;
    let mut matched = 0usize;
    for row in 0..n {
        let y = 1.3 - (row as f64 + 0.5) * step;
        for col in 0..n {
            let x = -1.3 + (col as f64 + 0.5) * step;
            let (rx, ry) = (x * rc - y * rs, x * rs + y * rc);
            let rcol = ((rx + 1.3) / step - 0.5).round() as isize;
            let rrow = ((1.3 - ry) / step - 0.5).round() as isize;
            if rcol < 0 || rrow < 0 || rcol >= n as isize || rrow >= n as isize {
                continue;
            }
            let Some(there) = unanimous(rrow, rcol) else {
                continue;
            };
            total += 1;
            let here = map.cells[row * n + col];
            let expect = if here < 0 { -1 } else { perm[here as usize] };
            if there == expect {
                matched += 1;
            }
        }
    }
    assert!(total > n * n / 2, "too few interior pixels to compare");
    let share = matched as f64 / total as f64;
    assert!(share > 0.995, "rotation match share only {share}");
}
