//! Exact fixed point localization for circle and S³ actions.
//!
//! The crate models the local geometry at isolated fixed points of a circle action, evaluates
//! equivariant twisted signatures and characteristic numbers by localization, and enumerates
//! the finite sets of admissible local geometries for the bordism finiteness statements:
//! semi-negative manifolds with bounded Euler characteristic, homotopy complex projective
//! spaces and complete intersections.

pub mod algebra;
pub mod catalog;
pub mod ci;
pub mod finiteness;
pub mod hcp;
pub mod localization;
pub mod model;
pub mod search;
pub mod sign;
pub mod su2;

pub use algebra::{LaurentPoly, Partition, Rat, RatFn};
pub use model::{FixedPoint, FixedPointModel};
pub use sign::Sign;
