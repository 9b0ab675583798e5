//! Conservative polynomials and their plane trees.
//!
//! A polynomial is conservative when every critical point is fixed. Each such
//! polynomial carries a bicolored plane tree (white vertices at the critical
//! points, black vertices at the repelling fixed points, edges along invariant
//! rays), and conversely every bicolored plane tree is realized by an
//! essentially unique conservative polynomial. This crate provides both
//! directions of that correspondence together with the exact algebra needed to
//! make the algebraic side rigorous:
//!
//! * [`trees`] — plane tree combinatorics: enumeration, canonical codes,
//!   automorphisms, branch transplants.
//! * [`algebra`] — exact arithmetic: rationals, uni/multivariate polynomials,
//!   resultants, factorization over Q, certified complex root isolation,
//!   lexicographic Groebner bases.
//! * [`system`] — the fixed-point systems attached to a valency type, their
//!   exact solution sets, and degeneracy classification.
//! * [`dynamics`] — fixed points, invariant-ray tracing, tree reconstruction,
//!   basin rendering.
//! * [`galois`] — orbit decomposition of solutions and fields of moduli.
//! * [`families`] — closed-form families (stars, two-vertex trees), rotation
//!   forms, decomposability, affine equivalence.

pub mod algebra;
pub mod dynamics;
pub mod error;
pub mod families;
pub mod galois;
pub mod json;
pub mod system;
pub mod trees;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
