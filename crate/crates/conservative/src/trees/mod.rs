//! Bicolored plane trees.
//!
//! A plane tree is a tree together with a counterclockwise cyclic order of the
//! neighbors at every vertex. Vertices are properly 2-colored (white/black).
//! Two plane trees are considered the same when an orientation-preserving,
//! color-preserving homeomorphism of the plane carries one to the other; the
//! canonical code below is a complete invariant for that relation.

mod enumerate;
mod transplant;

pub use enumerate::{central_binomial, enumerate_trees, normalized_count, unique_type_trees, TreeClass, DEFAULT_EDGE_CAP, HARD_EDGE_CAP};
pub use transplant::branch_transplant;

use crate::{Error, Result};

/// Vertex color. White vertices carry the critical points, black vertices the
/// repelling fixed points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn other(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

/// Canonical code of a plane tree: the lexicographically least parenthesis
/// word over all rootings at a directed white-to-black edge.
///
/// Equal codes characterize equivalent plane trees, so the code doubles as a
/// total order on equivalence classes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeCode(pub String);

impl std::fmt::Display for TreeCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Valency type: the multiset of white-vertex valencies, sorted descending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeType(pub Vec<usize>);

impl TreeType {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.iter().any(|&p| p == 0) {
            return Err(Error::Validation("type parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(TreeType(parts))
    }

    /// Number of edges of a tree with this type.
    pub fn edges(&self) -> usize {
        self.0.iter().sum()
    }

    /// Degree of the polynomials realizing this type.
    pub fn degree(&self) -> usize {
        self.edges() + 1
    }

    /// Number of white vertices.
    pub fn whites(&self) -> usize {
        self.0.len()
    }
}

impl std::fmt::Display for TreeType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "<{}>", parts.join(","))
    }
}

/// A bicolored plane tree with at least one edge.
///
/// `adj[v]` lists the neighbors of `v` in counterclockwise order; the list is
/// read cyclically, so rotating it does not change the tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneTree {
    colors: Vec<Color>,
    adj: Vec<Vec<usize>>,
}

impl PlaneTree {
    /// Validates and builds a plane tree.
    ///
    /// Checks: at least one edge, ids in range, no self-loops or repeated
    /// neighbor entries, symmetric adjacency, proper bicoloring, connectivity,
    /// and the tree edge count.
    pub fn new(colors: Vec<Color>, adj: Vec<Vec<usize>>) -> Result<Self> {
        let n = colors.len();
        if n != adj.len() {
            return Err(Error::Validation(format!(
                "{} colors for {} adjacency lists",
                n,
                adj.len()
            )));
        }
        if n < 2 {
            return Err(Error::Validation("a plane tree needs at least one edge".into()));
        }
        let mut directed = 0usize;
        for (v, nbrs) in adj.iter().enumerate() {
            let mut seen = std::collections::BTreeSet::new();
            for &u in nbrs {
                if u >= n {
                    return Err(Error::Validation(format!("neighbor {u} out of range")));
                }
                if u == v {
                    return Err(Error::Validation(format!("self-loop at {v}")));
                }
                if !seen.insert(u) {
                    return Err(Error::Validation(format!("repeated edge {v}-{u}")));
                }
                if colors[u] == colors[v] {
                    return Err(Error::Validation(format!(
                        "edge {v}-{u} joins two {:?} vertices",
                        colors[v]
                    )));
                }
                if !adj[u].contains(&v) {
                    return Err(Error::Validation(format!("edge {v}-{u} is not symmetric")));
                }
                directed += 1;
            }
        }
        if directed != 2 * (n - 1) {
            return Err(Error::Validation(format!(
                "{n} vertices with {} directed edges is not a tree",
                directed
            )));
        }
        // Connectivity; acyclicity then follows from the edge count.
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut reached = 1usize;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    stack.push(u);
                }
            }
        }
        if reached != n {
            return Err(Error::Validation("tree is not connected".into()));
        }
        Ok(PlaneTree { colors, adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn edge_count(&self) -> usize {
        self.colors.len() - 1
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn valency(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// White valencies, sorted descending.
    pub fn tree_type(&self) -> TreeType {
        let mut parts: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| self.colors[v] == Color::White)
            .map(|v| self.valency(v))
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        TreeType(parts)
    }

    /// Black valencies, sorted descending.
    pub fn black_valencies(&self) -> Vec<usize> {
        let mut parts: Vec<usize> = (0..self.vertex_count())
            .filter(|&v| self.colors[v] == Color::Black)
            .map(|v| self.valency(v))
            .collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    /// All directed white-to-black edges, the admissible rootings for the
    /// canonical code.
    fn white_rootings(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            if self.colors[v] == Color::White {
                for &u in &self.adj[v] {
                    out.push((v, u));
                }
            }
        }
        out
    }

    /// Parenthesis word of the rooted ordered tree obtained by rooting at
    /// `root` with `first` as the first child.
    fn rooted_word(&self, root: usize, first: usize) -> Vec<u8> {
        let mut out = Vec::with_capacity(2 * self.edge_count());
        let pos = self.adj[root].iter().position(|&u| u == first).expect("first must neighbor root");
        let deg = self.adj[root].len();
        for i in 0..deg {
            let child = self.adj[root][(pos + i) % deg];
            out.push(b'(');
            self.word_below(child, root, &mut out);
            out.push(b')');
        }
        out
    }

    fn word_below(&self, v: usize, parent: usize, out: &mut Vec<u8>) {
        let pos = self.adj[v].iter().position(|&u| u == parent).expect("parent must neighbor v");
        let deg = self.adj[v].len();
        for i in 1..deg {
            let child = self.adj[v][(pos + i) % deg];
            out.push(b'(');
            self.word_below(child, v, out);
            out.push(b')');
        }
    }

    /// Canonical code: least parenthesis word over all white-to-black
    /// rootings.
    pub fn canonical_code(&self) -> TreeCode {
        let mut best: Option<Vec<u8>> = None;
        for (w, b) in self.white_rootings() {
            let word = self.rooted_word(w, b);
            if best.as_ref().map_or(true, |cur| word < *cur) {
                best = Some(word);
            }
        }
        let bytes = best.expect("every tree has a white-to-black edge");
        TreeCode(String::from_utf8(bytes).expect("parenthesis word is ASCII"))
    }

    /// Order of the (cyclic) automorphism group: the number of rootings whose
    /// word equals the canonical code. Automorphisms act freely on rootings,
    /// so this count is the group order and divides the edge count.
    pub fn aut_order(&self) -> usize {
        let code = self.canonical_code().0.into_bytes();
        let hits = self
            .white_rootings()
            .into_iter()
            .filter(|&(w, b)| self.rooted_word(w, b) == code)
            .count();
        debug_assert!(self.edge_count() % hits == 0, "aut order must divide edge count");
        hits
    }

    /// Rotation order about one vertex: the number of rootings at `v` whose
    /// word agrees, i.e. the order of the automorphism subgroup fixing `v`.
    pub fn rotation_order_at(&self, v: usize) -> usize {
        let words: Vec<Vec<u8>> = self.adj[v].iter().map(|&u| self.rooted_word(v, u)).collect();
        let best = words.iter().min().expect("vertex has a neighbor").clone();
        words.iter().filter(|w| **w == best).count()
    }

    /// Star with a single central vertex of the given color and `m` leaves.
    pub fn star(m: usize, center: Color) -> Result<PlaneTree> {
        if m == 0 {
            return Err(Error::Validation("a star needs at least one edge".into()));
        }
        let mut colors = vec![center.other(); m + 1];
        colors[0] = center;
        let mut adj = vec![Vec::new(); m + 1];
        adj[0] = (1..=m).collect();
        for v in 1..=m {
            adj[v] = vec![0];
        }
        PlaneTree::new(colors, adj)
    }

    /// Tree with two white vertices of valencies `r` and `s` sharing one
    /// black vertex of valency 2; all other blacks are leaves.
    pub fn two_whites(r: usize, s: usize) -> Result<PlaneTree> {
        if r == 0 || s == 0 {
            return Err(Error::Validation("valencies must be positive".into()));
        }
        // Ids: 0, 1 white; 2 the shared black; then r-1 leaves of 0, s-1 of 1.
        let n = r + s + 1;
        let mut colors = vec![Color::Black; n];
        colors[0] = Color::White;
        colors[1] = Color::White;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        let leaves0: Vec<usize> = (3..3 + (r - 1)).collect();
        let leaves1: Vec<usize> = (3 + (r - 1)..n).collect();
        adj[0] = std::iter::once(2).chain(leaves0.iter().copied()).collect();
        adj[1] = std::iter::once(2).chain(leaves1.iter().copied()).collect();
        adj[2] = vec![0, 1];
        for &v in leaves0.iter() {
            adj[v] = vec![0];
        }
        for &v in leaves1.iter() {
            adj[v] = vec![1];
        }
        PlaneTree::new(colors, adj)
    }
}
