//! Enumeration of bicolored plane trees by edge count.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use super::{Color, PlaneTree, TreeCode, TreeType};
use crate::{Error, Result};

/// Default cap on the edge count accepted by the enumeration entry points.
pub const DEFAULT_EDGE_CAP: usize = 10;

/// Hard cap; configurations above this are rejected regardless of overrides.
pub const HARD_EDGE_CAP: usize = 12;

/// One equivalence class of plane trees.
#[derive(Debug, Clone)]
pub struct TreeClass {
    pub tree: PlaneTree,
    pub code: TreeCode,
    pub tree_type: TreeType,
    pub aut: usize,
}

/// Rooted ordered tree, used only as an enumeration scaffold.
#[derive(Clone)]
struct Ordered(Vec<Ordered>);

/// All rooted ordered trees with the given edge count.
fn ordered_trees(edges: usize, memo: &mut Vec<Option<Vec<Ordered>>>) -> Vec<Ordered> {
    if let Some(cached) = &memo[edges] {
        return cached.clone();
    }
    let mut out = Vec::new();
    if edges == 0 {
        out.push(Ordered(Vec::new()));
    } else {
        // First subtree takes `first` edges counting its root edge.
        for first in 1..=edges {
            let heads = ordered_trees(first - 1, memo);
            let tails = ordered_trees_forest_rest(edges - first, memo);
            for head in &heads {
                for tail in &tails {
                    let mut children = Vec::with_capacity(1 + tail.len());
                    children.push(head.clone());
                    children.extend(tail.iter().cloned());
                    out.push(Ordered(children));
                }
            }
        }
    }
    memo[edges] = Some(out.clone());
    out
}

/// Forests (children lists) spending exactly `edges` edges.
fn ordered_trees_forest_rest(edges: usize, memo: &mut Vec<Option<Vec<Ordered>>>) -> Vec<Vec<Ordered>> {
    if edges == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=edges {
        let heads = ordered_trees(first - 1, memo);
        let tails = ordered_trees_forest_rest(edges - first, memo);
        for head in &heads {
            for tail in &tails {
                let mut forest = Vec::with_capacity(1 + tail.len());
                forest.push(head.clone());
                forest.extend(tail.iter().cloned());
                out.push(forest);
            }
        }
    }
    out
}

/// Embeds a rooted ordered tree as a plane tree with the given root color.
fn to_plane_tree(t: &Ordered, root_color: Color) -> PlaneTree {
    fn count(t: &Ordered) -> usize {
        1 + t.0.iter().map(count).sum::<usize>()
    }
    let n = count(t);
    let mut colors = vec![Color::White; n];
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    // Preorder ids; at a non-root vertex the parent precedes the children in
    // the cyclic order, which matches an embedding with the root drawn below.
    let mut next = 0usize;
    fn build(
        t: &Ordered,
        color: Color,
        parent: Option<usize>,
        next: &mut usize,
        colors: &mut [Color],
        adj: &mut [Vec<usize>],
    ) -> usize {
        let id = *next;
        *next += 1;
        colors[id] = color;
        if let Some(p) = parent {
            adj[id].push(p);
        }
        for child in &t.0 {
            let cid = build(child, color.other(), Some(id), next, colors, adj);
            adj[id].push(cid);
        }
        id
    }
    build(t, root_color, None, &mut next, &mut colors, &mut adj);
    PlaneTree::new(colors, adj).expect("embedding of an ordered tree is a valid plane tree")
}

fn check_cap(m: usize, cap: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::Validation("edge count must be at least 1".into()));
    }
    let cap = cap.min(HARD_EDGE_CAP);
    if m > cap {
        return Err(Error::Resource { what: format!("edge count {m}"), cap });
    }
    Ok(())
}

/// Enumerates all plane tree classes with `m` edges, sorted by canonical code.
///
/// `cap` bounds the accepted edge count (pass [`DEFAULT_EDGE_CAP`] for the
/// default); it is itself clamped to [`HARD_EDGE_CAP`].
pub fn enumerate_trees(m: usize, cap: usize) -> Result<Vec<TreeClass>> {
    check_cap(m, cap)?;
    let mut memo = vec![None; m + 1];
    let mut classes: BTreeMap<TreeCode, PlaneTree> = BTreeMap::new();
    for ordered in ordered_trees(m, &mut memo) {
        for color in [Color::White, Color::Black] {
            let tree = to_plane_tree(&ordered, color);
            let code = tree.canonical_code();
            classes.entry(code).or_insert(tree);
        }
    }
    Ok(classes
        .into_iter()
        .map(|(code, tree)| {
            let tree_type = tree.tree_type();
            let aut = tree.aut_order();
            TreeClass { tree, code, tree_type, aut }
        })
        .collect())
}

/// Valency types realized by exactly one class among trees with `m` edges,
/// together with that class.
pub fn unique_type_trees(m: usize, cap: usize) -> Result<Vec<TreeClass>> {
    let classes = enumerate_trees(m, cap)?;
    let mut by_type: BTreeMap<TreeType, Vec<TreeClass>> = BTreeMap::new();
    for class in classes {
        by_type.entry(class.tree_type.clone()).or_default().push(class);
    }
    Ok(by_type
        .into_iter()
        .filter_map(|(_, mut group)| if group.len() == 1 { Some(group.pop().unwrap()) } else { None })
        .collect())
}

/// Sum of `d(d-1)/|Aut|` over all classes with `m` edges, `d = m + 1`.
///
/// Each class contributes the number of its normalized realizations, so the
/// total equals the central binomial coefficient `C(2m, m)`.
pub fn normalized_count(m: usize, cap: usize) -> Result<BigUint> {
    let classes = enumerate_trees(m, cap)?;
    let d = m + 1;
    let mut total = BigUint::ZERO;
    for class in &classes {
        let per = d * (d - 1) / class.aut;
        if per * class.aut != d * (d - 1) {
            return Err(Error::Internal(format!(
                "automorphism order {} does not divide {}",
                class.aut,
                d * (d - 1)
            )));
        }
        total += BigUint::from(per);
    }
    Ok(total)
}

/// Central binomial coefficient `C(2m, m)`, the expected normalized count.
pub fn central_binomial(m: usize) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 1..=m {
        num *= BigUint::from(m + i);
        den *= BigUint::from(i);
    }
    num / den
}
