use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::kernel::{find_collinear_triple, orientation, segments_cross, KernelError, QuadPoint};

use super::SearchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolygonShape {
    Convex,
    Concave,
}

/// Orders every point into a simple polygon through `P` and `Q`.
///
/// Rays from `P` split each half-plane of line `PQ` into empty wedges. The
/// walk starts at `P`, sweeps clockwise through the left half-plane to `Q`,
/// then continues clockwise through the right half-plane back to `P`. The
/// result is returned as indices into `points`.
pub fn assemble_polygon(
    points: &[QuadPoint],
    p: usize,
    q: usize,
) -> Result<Vec<usize>, SearchError> {
    if p == q || points[p] == points[q] {
        return Err(SearchError::DegenerateBaseline);
    }
    if let Some((i, j, k)) = find_collinear_triple(points)? {
        return Err(KernelError::CollinearTriple(i, j, k).into());
    }
    let (pp, qq) = (&points[p], &points[q]);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for i in (0..points.len()).filter(|&i| i != p && i != q) {
        match orientation(pp, qq, &points[i])? {
            Ordering::Greater => left.push(i),
            _ => right.push(i),
        }
    }
    // within one half-plane the angular order about P is a cross-product order
    let clockwise =
        |u: &usize, v: &usize| orientation(pp, &points[*u], &points[*v]).expect("shared field");
    left.sort_by(clockwise);
    right.sort_by(clockwise);
    let mut order = Vec::with_capacity(points.len());
    order.push(p);
    order.extend(left);
    order.push(q);
    order.extend(right);

    let ordered: Vec<QuadPoint> = order.iter().map(|&i| points[i].clone()).collect();
    if !is_simple_polygon(&ordered)? {
        return Err(SearchError::NotSimple);
    }
    Ok(order)
}

/// No two non-adjacent edges cross. Touching is excluded separately by the
/// no-three-collinear requirement.
pub fn is_simple_polygon(ordered: &[QuadPoint]) -> Result<bool, KernelError> {
    let n = ordered.len();
    if n < 3 {
        return Ok(false);
    }
    for i in 0..n {
        for j in i + 1..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (a1, a2) = (&ordered[i], &ordered[(i + 1) % n]);
            let (b1, b2) = (&ordered[j], &ordered[(j + 1) % n]);
            if segments_cross(a1, a2, b1, b2)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Convex iff all consecutive turns share one sign.
pub fn classify_polygon(ordered: &[QuadPoint]) -> Result<PolygonShape, SearchError> {
    let n = ordered.len();
    if n < 3 {
        return Err(KernelError::TooFewPoints(n, 3).into());
    }
    let mut turns = Vec::with_capacity(n);
    for i in 0..n {
        let o = orientation(&ordered[i], &ordered[(i + 1) % n], &ordered[(i + 2) % n])?;
        if o == Ordering::Equal {
            return Err(KernelError::CollinearTriple(i, (i + 1) % n, (i + 2) % n).into());
        }
        turns.push(o);
    }
    if !is_simple_polygon(ordered)? {
        return Err(SearchError::NotSimple);
    }
    Ok(if turns.iter().all(|&t| t == turns[0]) {
        PolygonShape::Convex
    } else {
        PolygonShape::Concave
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::convex_position;
    use proptest::prelude::*;

    fn pts(v: &[(i64, i64)]) -> Vec<QuadPoint> {
        v.iter().map(|&(x, y)| QuadPoint::from_ints(x, y)).collect()
    }

    #[test]
    fn rectangle_sweep() {
        let p = pts(&[(0, 0), (3, 0), (3, 4), (0, 4)]);
        let order = assemble_polygon(&p, 0, 1).unwrap();
        let got: Vec<_> = order.iter().map(|&i| p[i].clone()).collect();
        assert_eq!(got, pts(&[(0, 0), (0, 4), (3, 4), (3, 0)]));
        assert_eq!(classify_polygon(&got).unwrap(), PolygonShape::Convex);
    }

    #[test]
    fn triangle_and_inner_point() {
        let p = pts(&[(0, 0), (4, 0), (1, 3)]);
        let order = assemble_polygon(&p, 0, 1).unwrap();
        assert_eq!(order, vec![0, 2, 1]);
        let p = pts(&[(0, 0), (6, 0), (3, 6), (3, 2)]);
        let order = assemble_polygon(&p, 0, 1).unwrap();
        let got: Vec<_> = order.iter().map(|&i| p[i].clone()).collect();
        assert!(is_simple_polygon(&got).unwrap());
        assert_eq!(classify_polygon(&got).unwrap(), PolygonShape::Concave);
    }

    #[test]
    fn both_half_planes() {
        let p = pts(&[(0, 0), (4, 0), (1, 3), (3, -2), (5, 3), (-1, -2)]);
        let order = assemble_polygon(&p, 0, 1).unwrap();
        assert_eq!(order[0], 0);
        let q_pos = order.iter().position(|&i| i == 1).unwrap();
        assert!(order[1..q_pos].iter().all(|&i| [2, 4].contains(&i)));
    }

    #[test]
    fn errors() {
        let p = pts(&[(0, 0), (1, 1), (2, 2)]);
        assert!(assemble_polygon(&p, 0, 1).is_err());
        let p = pts(&[(0, 0), (1, 0), (0, 1)]);
        assert!(matches!(
            assemble_polygon(&p, 1, 1),
            Err(SearchError::DegenerateBaseline)
        ));
        // bow-tie
        let bow = pts(&[(0, 0), (2, 2), (2, 0), (0, 2)]);
        assert!(matches!(
            classify_polygon(&bow),
            Err(SearchError::NotSimple)
        ));
    }

    #[test]
    fn dart_is_concave() {
        let dart = pts(&[(0, 0), (2, 1), (4, 0), (2, 4)]);
        assert_eq!(classify_polygon(&dart).unwrap(), PolygonShape::Concave);
        let tri = pts(&[(0, 0), (2, 1), (4, 0)]);
        assert_eq!(classify_polygon(&tri).unwrap(), PolygonShape::Convex);
    }

    proptest! {
        #[test]
        fn sweep_is_simple_and_complete(raw in prop::collection::btree_set((-8i64..8, -8i64..8), 3..9)) {
            let p = pts(&raw.into_iter().collect::<Vec<_>>());
            if find_collinear_triple(&p).unwrap().is_some() {
                return Ok(());
            }
            let order = assemble_polygon(&p, 0, 1).unwrap();
            let mut seen = order.clone();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..p.len()).collect::<Vec<_>>());
            let ordered: Vec<_> = order.iter().map(|&i| p[i].clone()).collect();
            prop_assert!(is_simple_polygon(&ordered).unwrap());
            // two independent routes to convexity agree
            let shape = classify_polygon(&ordered).unwrap();
            prop_assert_eq!(shape == PolygonShape::Convex, convex_position(&p).unwrap());
        }
    }
}
