//! Exact distance and orientation predicates over [`QuadPoint`]s.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::Signed;

use super::quad::{QuadPoint, QuadScalar};
use super::KernelError;

/// Exact `(Δx)² + (Δy)²`.
pub fn distance_squared(p: &QuadPoint, q: &QuadPoint) -> Result<QuadScalar, KernelError> {
    let (dx, dy) = p.try_sub(q)?;
    dx.try_mul(&dx)?.try_add(&dy.try_mul(&dy)?)
}

/// The distance between `p` and `q` if it is a natural number.
pub fn integer_distance(p: &QuadPoint, q: &QuadPoint) -> Result<Option<BigUint>, KernelError> {
    let d2 = distance_squared(p, q)?;
    Ok(d2.rational_sqrt().and_then(|r| {
        if r.is_integer() && r.is_positive() {
            r.to_integer().to_biguint()
        } else {
            None
        }
    }))
}

/// Exact cross product `(b − a) × (c − a)`.
pub fn cross(a: &QuadPoint, b: &QuadPoint, c: &QuadPoint) -> Result<QuadScalar, KernelError> {
    let (ux, uy) = b.try_sub(a)?;
    let (vx, vy) = c.try_sub(a)?;
    ux.try_mul(&vy)?.try_sub(&uy.try_mul(&vx)?)
}

/// `Greater` for a counter-clockwise turn `a → b → c`, `Less` for clockwise.
pub fn orientation(a: &QuadPoint, b: &QuadPoint, c: &QuadPoint) -> Result<Ordering, KernelError> {
    Ok(cross(a, b, c)?.signum())
}

pub fn collinear(a: &QuadPoint, b: &QuadPoint, c: &QuadPoint) -> Result<bool, KernelError> {
    Ok(cross(a, b, c)?.is_zero())
}

/// First collinear triple in index order, if any.
pub fn find_collinear_triple(
    points: &[QuadPoint],
) -> Result<Option<(usize, usize, usize)>, KernelError> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if collinear(&points[i], &points[j], &points[k])? {
                    return Ok(Some((i, j, k)));
                }
            }
        }
    }
    Ok(None)
}

/// True iff `p` lies strictly inside triangle `t1 t2 t3`.
pub fn point_in_triangle(
    p: &QuadPoint,
    t1: &QuadPoint,
    t2: &QuadPoint,
    t3: &QuadPoint,
) -> Result<bool, KernelError> {
    let o = orientation(t1, t2, t3)?;
    if o == Ordering::Equal {
        return Err(KernelError::DegenerateTriangle);
    }
    Ok(
        orientation(t1, t2, p)? == o
            && orientation(t2, t3, p)? == o
            && orientation(t3, t1, p)? == o,
    )
}

/// True iff every point is a vertex of the convex hull.
///
/// With no three points collinear, a point fails to be a hull vertex exactly
/// when it lies strictly inside a triangle of three others.
pub fn convex_position(points: &[QuadPoint]) -> Result<bool, KernelError> {
    if points.len() < 3 {
        return Err(KernelError::TooFewPoints(points.len(), 3));
    }
    if let Some(t) = find_collinear_triple(points)? {
        return Err(KernelError::CollinearTriple(t.0, t.1, t.2));
    }
    Ok(interior_vertex(points)?.is_none())
}

/// Point index and the triangle `(i, j, k)` containing it.
pub type InteriorVertex = (usize, (usize, usize, usize));

/// Some `(p, (i, j, k))` with point `p` strictly inside triangle `i j k`.
pub fn interior_vertex(points: &[QuadPoint]) -> Result<Option<InteriorVertex>, KernelError> {
    let n = points.len();
    for p in 0..n {
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if [i, j, k].contains(&p) {
                        continue;
                    }
                    if point_in_triangle(&points[p], &points[i], &points[j], &points[k])? {
                        return Ok(Some((p, (i, j, k))));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// True iff the open segments `a1 a2` and `b1 b2` meet in one interior point.
pub fn segments_cross(
    a1: &QuadPoint,
    a2: &QuadPoint,
    b1: &QuadPoint,
    b2: &QuadPoint,
) -> Result<bool, KernelError> {
    let o1 = orientation(a1, a2, b1)?;
    let o2 = orientation(a1, a2, b2)?;
    let o3 = orientation(b1, b2, a1)?;
    let o4 = orientation(b1, b2, a2)?;
    let strict = |x: Ordering, y: Ordering| x != Ordering::Equal && y != Ordering::Equal && x != y;
    Ok(strict(o1, o2) && strict(o3, o4))
}
