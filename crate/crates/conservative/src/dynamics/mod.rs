//! Dynamics of a concrete conservative polynomial: fixed-point
//! classification, invariant internal-ray tracing, reconstruction of the
//! embedded tree, and basin rendering.

mod fixed;
mod poly;
mod ray;
mod reconstruct;
mod render;

pub use fixed::{fixed_points, FixedPoint, FixedPointClass, FixedPointSet};
pub use poly::{ConservativePolynomial, CriticalPoint, PolySource};
pub use ray::{trace_ray, trace_ray_from, InternalRay};
pub use reconstruct::{reconstruct, reconstruct_tree, Reconstruction, DEFAULT_DYNAMIC_PRECISION};
pub use render::{basin_map, render_basins, BasinMap, RasterImage, Viewport, PALETTE};
