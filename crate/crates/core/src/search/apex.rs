use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::kernel::{squarefree_decompose, u128_sqrt_exact, QuadPoint, QuadScalar, Rational};

use super::SearchError;

/// Side of the baseline `PQ` an apex lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HalfPlane {
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "+")]
    Plus,
}

impl HalfPlane {
    pub fn signum(self) -> i128 {
        match self {
            HalfPlane::Minus => -1,
            HalfPlane::Plus => 1,
        }
    }
}

impl fmt::Display for HalfPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HalfPlane::Minus => "-",
            HalfPlane::Plus => "+",
        })
    }
}

/// `(a, b, sign)`: distances to `P` and `Q` plus the half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ApexLabel {
    pub a: u64,
    pub b: u64,
    pub sign: HalfPlane,
}

/// A potential vertex at distance `a` from `P = (0, 0)` and `b` from
/// `Q = (k, 0)`.
///
/// Coordinates are `x = X / 2k` and `y = g·√D / 2k` with integers `X`, `g`;
/// the scaled pair is what the search compares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApexCandidate {
    pub k: u64,
    pub a: u64,
    pub b: u64,
    pub sign: HalfPlane,
    /// `(a² − b² + k²) / 2k`
    pub x: Rational,
    /// `y² = a² − x²`
    pub s: Rational,
    /// Square-free part of `s`.
    pub radicand: u64,
    scaled_x: i128,
    scaled_y: i128,
}

impl ApexCandidate {
    pub fn new(k: u64, a: u64, b: u64, sign: HalfPlane) -> Result<Self, SearchError> {
        if !(a.abs_diff(b) < k && k < a + b) {
            return Err(SearchError::InvalidApex { k, a, b });
        }
        let (k_, a_, b_) = (k as i128, a as i128, b as i128);
        let big_x = a_ * a_ - b_ * b_ + k_ * k_;
        // 4k²·y² = 4k²a² − X²
        let t = 4 * k_ * k_ * a_ * a_ - big_x * big_x;
        debug_assert!(t > 0);
        let (d, f) = squarefree_decompose(&(t as u128).into()).expect("t > 0");
        let d: u64 = d.try_into().map_err(|_| SearchError::Overflow)?;
        let f: i128 = f.try_into().map_err(|_| SearchError::Overflow)?;
        let two_k = BigInt::from(2 * k);
        Ok(ApexCandidate {
            k,
            a,
            b,
            sign,
            x: Rational::new(big_x.into(), two_k.clone()),
            s: Rational::new(t.into(), &two_k * &two_k),
            radicand: d,
            scaled_x: big_x,
            scaled_y: sign.signum() * f,
        })
    }

    pub fn label(&self) -> ApexLabel {
        ApexLabel {
            a: self.a,
            b: self.b,
            sign: self.sign,
        }
    }

    /// Exact coordinates in Q(√D).
    pub fn point(&self) -> QuadPoint {
        let two_k = BigInt::from(2 * self.k);
        let y_coeff = Rational::new(self.scaled_y.into(), two_k);
        let y = QuadScalar::surd(y_coeff, self.radicand).expect("radicand is square-free");
        QuadPoint::new(QuadScalar::rational(self.x.clone()), y).expect("y alone carries a surd")
    }

    pub(crate) fn scaled(&self) -> (i128, i128) {
        (self.scaled_x, self.scaled_y)
    }
}

/// Scaled coordinates `(X, g)` of the baseline endpoints for baseline `k`.
pub(crate) fn baseline_scaled(k: u64) -> [(i128, i128); 2] {
    [(0, 0), (2 * (k as i128) * (k as i128), 0)]
}

/// Scaled cross product; all points share the factor `√D / 4k²`.
pub(crate) fn scaled_cross(o: (i128, i128), u: (i128, i128), v: (i128, i128)) -> i128 {
    (u.0 - o.0) * (v.1 - o.1) - (v.0 - o.0) * (u.1 - o.1)
}

/// Integer distance between two realized apexes on the same baseline.
///
/// Differing radicands leave an irrational cross term `√(sᵤsᵥ)` in the
/// squared distance, so only equal radicands can be compatible.
pub fn compatible(
    u: &ApexCandidate,
    v: &ApexCandidate,
    k: u64,
) -> Result<Option<u64>, SearchError> {
    if u.k != k || v.k != k {
        return Err(SearchError::BaselineMismatch { k, u: u.k, v: v.k });
    }
    if u.label() == v.label() {
        return Err(SearchError::SameApex(u.label()));
    }
    Ok(scaled_distance(u, v))
}

pub(crate) fn scaled_distance(u: &ApexCandidate, v: &ApexCandidate) -> Option<u64> {
    if u.radicand != v.radicand {
        return None;
    }
    let dx = u.scaled_x - v.scaled_x;
    let dy = u.scaled_y - v.scaled_y;
    let n = (dx * dx) as u128 + (u.radicand as u128) * ((dy * dy) as u128);
    let two_k = 2 * u.k as u128;
    let q = two_k * two_k;
    if !n.is_multiple_of(q) {
        return None;
    }
    u128_sqrt_exact(n / q).and_then(|d| u64::try_from(d).ok())
}
