//! Exact-arithmetic toolkit for Diophantine (integer-distance) planar point
//! sets and polygons.

pub mod bounds;
pub mod circle;
pub mod kernel;
pub mod search;
pub mod trigon;
