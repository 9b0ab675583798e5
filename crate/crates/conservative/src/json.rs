//! Stable serialization records for the external surface.
//!
//! Field order is fixed by struct order and all collections are emitted in a
//! deterministic order, so identical inputs serialize to identical bytes.

use serde::{Deserialize, Serialize};

use crate::trees::{Color, PlaneTree, TreeClass};

/// One plane tree class.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeRecord {
    pub code: String,
    #[serde(rename = "type")]
    pub tree_type: Vec<usize>,
    pub aut: usize,
    pub vertices: Vec<VertexRecord>,
    pub adjacency: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: usize,
    pub color: String,
}

impl TreeRecord {
    pub fn from_class(class: &TreeClass) -> Self {
        let tree = &class.tree;
        TreeRecord {
            code: class.code.0.clone(),
            tree_type: class.tree_type.0.clone(),
            aut: class.aut,
            vertices: (0..tree.vertex_count())
                .map(|id| VertexRecord {
                    id,
                    color: match tree.color(id) {
                        Color::White => "w".into(),
                        Color::Black => "b".into(),
                    },
                })
                .collect(),
            adjacency: (0..tree.vertex_count()).map(|v| tree.neighbors(v).to_vec()).collect(),
        }
    }

    pub fn from_tree(tree: &PlaneTree) -> Self {
        let class = TreeClass {
            code: tree.canonical_code(),
            tree_type: tree.tree_type(),
            aut: tree.aut_order(),
            tree: tree.clone(),
        };
        Self::from_class(&class)
    }
}
