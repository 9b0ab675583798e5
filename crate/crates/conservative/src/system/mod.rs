//! Fixed-point systems of conservative polynomials: construction of the
//! primitive and its critical-point equations, exact solving over number
//! fields, and certified enclosures of the solutions.

mod build;
mod solve;

pub use build::{build_primitive, build_system, ConservativeSystem};
pub use solve::{
    filter_degenerate, solve_type, DegeneracyInfo, FactorRecovery, SolutionPoint, SolutionSet,
    DEFAULT_PRECISION,
};
