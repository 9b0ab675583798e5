//! Plane tree combinatorics: enumeration counts, codes, automorphisms,
//! transplants.

use conservative::trees::{
    branch_transplant, central_binomial, enumerate_trees, normalized_count, unique_type_trees,
    Color, PlaneTree, TreeType, DEFAULT_EDGE_CAP,
};
use num_bigint::BigUint;

fn classes(m: usize) -> Vec<conservative::trees::TreeClass> {
    enumerate_trees(m, DEFAULT_EDGE_CAP).unwrap()
}

#[test]
fn single_edge_tree_is_unique() {
    let all = classes(1);
    assert_eq!(all.len(), 1);
    assert_eq!(all[0].code.0, "()");
    assert_eq!(all[0].aut, 1);
    assert_eq!(all[0].tree_type, TreeType(vec![1]));
}

#[test]
fn two_edges_give_both_stars() {
    let all = classes(2);
    assert_eq!(all.len(), 2);
    let codes: Vec<&str> = all.iter().map(|c| c.code.0.as_str()).collect();
    assert!(codes.contains(&"()()"));
    assert!(codes.contains(&"(())"));
    // White-center star has type <2>, the other <1,1>; both have a rotation
    // of order 2.
    for class in &all {
        assert_eq!(class.aut, 2);
    }
}

#[test]
fn three_edges_give_three_classes_with_counts_12_4_4() {
    let all = classes(3);
    assert_eq!(all.len(), 3);
    let mut per_tree: Vec<usize> = all.iter().map(|c| 4 * 3 / c.aut).collect();
    per_tree.sort_unstable_by(|a, b| b.cmp(a));
    assert_eq!(per_tree, vec![12, 4, 4]);
    assert_eq!(normalized_count(3, DEFAULT_EDGE_CAP).unwrap(), BigUint::from(20u32));
}

#[test]
fn four_edges_give_six_classes() {
    // Hand enumeration: white star <4>, black star <1,1,1,1>, the unique
    // <3,1> and <2,2> trees, and two trees of type <2,1,1>.
    let all = classes(4);
    assert_eq!(all.len(), 6);
    let mut types: Vec<Vec<usize>> = all.iter().map(|c| c.tree_type.0.clone()).collect();
    types.sort();
    assert_eq!(
        types,
        vec![
            vec![1, 1, 1, 1],
            vec![2, 1, 1],
            vec![2, 1, 1],
            vec![2, 2],
            vec![3, 1],
            vec![4],
        ]
    );
    // The two <2,1,1> trees: one symmetric (aut 2), one not.
    let mut auts: Vec<usize> = all
        .iter()
        .filter(|c| c.tree_type.0 == [2, 1, 1])
        .map(|c| c.aut)
        .collect();
    auts.sort_unstable();
    assert_eq!(auts, vec![1, 2]);
}

#[test]
fn normalized_count_matches_central_binomial_up_to_six() {
    for m in 1..=6 {
        assert_eq!(
            normalized_count(m, DEFAULT_EDGE_CAP).unwrap(),
            central_binomial(m),
            "mismatch at {m} edges"
        );
    }
}

#[test]
fn edge_cap_is_enforced() {
    let err = enumerate_trees(11, DEFAULT_EDGE_CAP).unwrap_err();
    assert_eq!(err.exit_code(), 3);
    assert!(err.to_string().contains("cap"));
}

#[test]
fn star_aut_orders() {
    for m in 2..=6 {
        let white = PlaneTree::star(m, Color::White).unwrap();
        assert_eq!(white.aut_order(), m);
        assert_eq!(white.tree_type(), TreeType(vec![m]));
        let black = PlaneTree::star(m, Color::Black).unwrap();
        assert_eq!(black.aut_order(), m);
        assert_eq!(black.tree_type(), TreeType(vec![1; m]));
    }
}

#[test]
fn two_whites_aut_depends_on_symmetry() {
    assert_eq!(PlaneTree::two_whites(3, 1).unwrap().aut_order(), 1);
    assert_eq!(PlaneTree::two_whites(2, 2).unwrap().aut_order(), 2);
    // <1,1> degenerates to the black-center star on two edges.
    let t = PlaneTree::two_whites(1, 1).unwrap();
    assert_eq!(t.canonical_code(), PlaneTree::star(2, Color::Black).unwrap().canonical_code());
}

#[test]
fn unique_types_at_five_edges() {
    // Types with one class at m = 5: <5> (white star), <1,1,1,1,1> (black
    // star), <4,1> and <3,2> (two-white trees). <2,2,1>, <2,1,1,1> and
    // <3,1,1> all admit several classes.
    let unique = unique_type_trees(5, DEFAULT_EDGE_CAP).unwrap();
    let mut types: Vec<Vec<usize>> = unique.iter().map(|c| c.tree_type.0.clone()).collect();
    types.sort();
    assert_eq!(types, vec![vec![1, 1, 1, 1, 1], vec![3, 2], vec![4, 1], vec![5]]);
    for class in &unique {
        let expected = match class.tree_type.0.as_slice() {
            [5] => PlaneTree::star(5, Color::White).unwrap(),
            [1, 1, 1, 1, 1] => PlaneTree::star(5, Color::Black).unwrap(),
            [r, s] => PlaneTree::two_whites(*r, *s).unwrap(),
            other => panic!("unexpected unique type {other:?}"),
        };
        assert_eq!(class.code, expected.canonical_code());
    }
}

#[test]
fn type_with_multiple_classes_is_not_unique() {
    let unique = unique_type_trees(5, DEFAULT_EDGE_CAP).unwrap();
    assert!(unique.iter().all(|c| c.tree_type.0 != [3, 1, 1]));
    let n_311 = classes(5).iter().filter(|c| c.tree_type.0 == [3, 1, 1]).count();
    assert_eq!(n_311, 2);
}

/// The path w-b-w-b-w: the symmetric tree of type <2,1,1>.
fn path_five() -> PlaneTree {
    let colors = vec![Color::White, Color::Black, Color::White, Color::Black, Color::White];
    let adj = vec![vec![1], vec![0, 2], vec![1, 3], vec![2, 4], vec![3]];
    PlaneTree::new(colors, adj).unwrap()
}

#[test]
fn transplant_moves_a_leaf_and_raises_black_valency() {
    let t = path_five();
    assert_eq!(t.aut_order(), 2);
    assert_eq!(t.black_valencies(), vec![2, 2]);
    // Move the leaf 4 from black 3 to black 1.
    let moved = branch_transplant(&t, 3, 4, 1, 2).unwrap();
    assert_eq!(moved.tree_type(), t.tree_type());
    assert_eq!(moved.black_valencies(), vec![3, 1]);
    assert_ne!(moved.canonical_code(), t.canonical_code());
    assert_eq!(moved.aut_order(), 1);
}

#[test]
fn transplant_back_restores_the_class() {
    let t = path_five();
    let moved = branch_transplant(&t, 3, 4, 1, 2).unwrap();
    let back = branch_transplant(&moved, 1, 4, 3, 1).unwrap();
    assert_eq!(back.canonical_code(), t.canonical_code());
}

#[test]
fn transplant_rejects_invalid_moves() {
    let t = path_five();
    // Donor not black.
    assert!(branch_transplant(&t, 2, 1, 3, 0).is_err());
    // Donor == receiver.
    assert!(branch_transplant(&t, 3, 4, 3, 0).is_err());
    // Branch contains the receiver (cutting 2 off black 3 keeps 1 inside).
    assert!(branch_transplant(&t, 3, 2, 1, 0).is_err());
    // Valency-1 donor.
    let star = PlaneTree::star(3, Color::White).unwrap();
    assert!(branch_transplant(&star, 1, 0, 2, 0).is_err());
}

#[test]
fn codes_are_invariant_under_relabeling_and_rotation() {
    // Cyclic rotations of adjacency lists and arbitrary relabelings preserve
    // the plane structure, hence the code.
    let mut seed = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed
    };
    for m in 2..=7 {
        for class in classes(m) {
            let t = &class.tree;
            let n = t.vertex_count();
            // Random permutation of ids.
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = (next() % (i as u64 + 1)) as usize;
                perm.swap(i, j);
            }
            let mut colors = vec![Color::White; n];
            let mut adj = vec![Vec::new(); n];
            for v in 0..n {
                colors[perm[v]] = t.color(v);
                let mut nbrs: Vec<usize> = t.neighbors(v).iter().map(|&u| perm[u]).collect();
                let deg = nbrs.len();
                let rot = (next() % deg as u64) as usize;
                nbrs.rotate_left(rot);
                adj[perm[v]] = nbrs;
            }
            let relabeled = PlaneTree::new(colors, adj).unwrap();
            assert_eq!(relabeled.canonical_code(), class.code);
            assert_eq!(relabeled.aut_order(), class.aut);
        }
    }
}

#[test]
fn mirror_image_of_chiral_tree_has_a_different_code() {
    // Reversing every cyclic order gives the mirror image; for a chiral tree
    // that is a different plane tree class. The smallest chiral tree has a
    // valency-3 vertex with three pairwise distinct branches, so 6 edges.
    let mut found_chiral = false;
    for class in classes(6) {
        let t = &class.tree;
        let n = t.vertex_count();
        let colors = t.colors().to_vec();
        let adj: Vec<Vec<usize>> = (0..n)
            .map(|v| t.neighbors(v).iter().rev().copied().collect())
            .collect();
        let mirrored = PlaneTree::new(colors, adj).unwrap();
        if mirrored.canonical_code() != class.code {
            found_chiral = true;
        }
    }
    assert!(found_chiral, "some 6-edge tree must be chiral");
}
