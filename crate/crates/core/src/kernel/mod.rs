//! Exact scalar and point arithmetic.
//!
//! Every value here is immutable once built and every operation is a pure
//! function, so kernel values can be shared freely across threads.

mod arith;
mod predicates;
mod quad;
mod set;

use thiserror::Error;

pub use arith::{
    int_sqrt_exact, is_perfect_square, rational, rational_from_str, rational_int, rational_sqrt,
    rational_to_string, squarefree_decompose, squarefree_decompose_with_limit,
    squarefree_part_u128, u128_sqrt_exact, Rational, DEFAULT_TRIAL_LIMIT,
};
pub use predicates::{
    collinear, convex_position, cross, distance_squared, find_collinear_triple, integer_distance,
    interior_vertex, orientation, point_in_triangle, segments_cross,
};
pub use quad::{sign_rat_plus_sqrt, QuadPoint, QuadScalar};
pub use set::{serde_biguint, DiophantineSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("square root of negative value {0}")]
    NegativeRadicand(String),
    #[error("square-free decomposition of zero")]
    ZeroSquarefree,
    #[error("radicand {0} is not square-free")]
    NotSquarefree(u64),
    #[error("values live in different fields Q(√{0}) and Q(√{1})")]
    RadicandMismatch(u64, u64),
    #[error("triangle is degenerate")]
    DegenerateTriangle,
    #[error("{0} points given, at least {1} required")]
    TooFewPoints(usize, usize),
    #[error("points {0}, {1}, {2} are collinear")]
    CollinearTriple(usize, usize, usize),
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("distance between points {0} and {1} is not a natural number")]
    NonIntegerDistance(usize, usize),
    #[error("recorded distance between points {0} and {1} does not match coordinates")]
    DistanceMismatch(usize, usize),
    #[error("malformed rational {0:?}")]
    Parse(String),
}
