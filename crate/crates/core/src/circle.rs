//! Concyclic integer-distance sets of any cardinality.
//!
//! Points sit on the unit circle at angles `2θ` with `cos θ`, `sin θ`
//! rational (one angle per primitive Pythagorean triple), so every chord
//! `2|sin(θᵢ − θⱼ)|` is rational. Scaling by the lcm of the chord
//! denominators makes every distance a natural number.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kernel::{
    distance_squared, rational_from_str, rational_to_string, DiophantineSet, KernelError,
    QuadPoint, QuadScalar, Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircleError {
    #[error("angles {0} and {1} coincide")]
    DuplicateAngle(usize, usize),
    #[error("{0} points given, at least 2 required")]
    TooFewPoints(usize),
    #[error("distance between points {0} and {1} is not a positive rational")]
    BadDistance(usize, usize),
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Primitive triple `p² + q² = r²` with `p < q`, read as the angle with
/// `cos θ = p/r`, `sin θ = q/r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PythagoreanAngle {
    pub p: u64,
    pub q: u64,
    pub r: u64,
}

impl PythagoreanAngle {
    /// `(p² − q²)/r², 2pq/r²`, the point at angle `2θ`.
    pub fn unit_point(&self) -> QuadPoint {
        let (p, q, r) = (
            BigInt::from(self.p),
            BigInt::from(self.q),
            BigInt::from(self.r),
        );
        let r2 = &r * &r;
        QuadPoint::rational(
            Rational::new(&p * &p - &q * &q, r2.clone()),
            Rational::new(BigInt::from(2) * &p * &q, r2),
        )
    }

    /// `qᵢpⱼ − pᵢqⱼ`; zero iff the doubled angles coincide.
    fn sine_numerator(&self, other: &Self) -> BigInt {
        BigInt::from(self.q) * other.p - BigInt::from(self.p) * other.q
    }

    /// Chord `2|qᵢpⱼ − pᵢqⱼ| / (rᵢrⱼ)` between the two unit-circle points.
    pub fn chord(&self, other: &Self) -> Rational {
        Rational::new(
            BigInt::from(2) * self.sine_numerator(other).abs(),
            BigInt::from(self.r) * other.r,
        )
    }
}

/// The first `count` primitive triples by ascending hypotenuse, then smaller leg.
pub fn gen_pythagorean_angles(count: usize) -> Vec<PythagoreanAngle> {
    if count == 0 {
        return Vec::new();
    }
    let mut bound: u64 = 32;
    loop {
        let mut triples = Vec::new();
        let mut m = 2u64;
        while m * m < bound {
            for n in 1..m {
                let r = m * m + n * n;
                if r > bound {
                    break;
                }
                if (m - n) % 2 == 1 && m.gcd(&n) == 1 {
                    let (x, y) = (m * m - n * n, 2 * m * n);
                    triples.push(PythagoreanAngle {
                        p: x.min(y),
                        q: x.max(y),
                        r,
                    });
                }
            }
            m += 1;
        }
        if triples.len() >= count {
            triples.sort_by_key(|t| (t.r, t.p));
            triples.truncate(count);
            return triples;
        }
        bound *= 2;
    }
}

/// Points with rational coordinates and rational pairwise distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiDiophantineSet {
    points: Vec<QuadPoint>,
    distances: Vec<Vec<Rational>>,
}

impl QuasiDiophantineSet {
    /// Builds the distance matrix from coordinates; every distance must be a
    /// positive rational.
    pub fn from_points(points: Vec<QuadPoint>) -> Result<Self, CircleError> {
        let n = points.len();
        let mut distances = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = distance_squared(&points[i], &points[j])?
                    .rational_sqrt()
                    .filter(|d| d.is_positive())
                    .ok_or(CircleError::BadDistance(i, j))?;
                distances[i][j] = d.clone();
                distances[j][i] = d;
            }
        }
        Ok(QuasiDiophantineSet { points, distances })
    }

    pub fn points(&self) -> &[QuadPoint] {
        &self.points
    }

    pub fn distances(&self) -> &[Vec<Rational>] {
        &self.distances
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn on_unit_circle(&self) -> bool {
        self.points.iter().all(|p| {
            let r2 = p
                .x()
                .try_mul(p.x())
                .and_then(|x2| x2.try_add(&p.y().try_mul(p.y())?));
            r2.map(|v| v == QuadScalar::from_int(1)).unwrap_or(false)
        })
    }

    /// Recomputes every distance from coordinates and compares exactly.
    pub fn distances_match_coordinates(&self) -> bool {
        let n = self.points.len();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let d = &self.distances[i][j];
                distance_squared(&self.points[i], &self.points[j])
                    .map(|sq| sq == QuadScalar::rational(d * d))
                    .unwrap_or(false)
            })
        })
    }
}

impl From<&DiophantineSet> for QuasiDiophantineSet {
    fn from(set: &DiophantineSet) -> Self {
        let distances = set
            .distances()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|d| Rational::from_integer(BigInt::from(d.clone())))
                    .collect()
            })
            .collect();
        QuasiDiophantineSet {
            points: set.points().to_vec(),
            distances,
        }
    }
}

/// Places one point per angle on the unit circle, filling distances from the
/// closed-form chord.
pub fn place_on_circle(angles: &[PythagoreanAngle]) -> Result<QuasiDiophantineSet, CircleError> {
    let n = angles.len();
    let mut distances = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if angles[i].sine_numerator(&angles[j]).is_zero() {
                return Err(CircleError::DuplicateAngle(i, j));
            }
            let c = angles[i].chord(&angles[j]);
            distances[i][j] = c.clone();
            distances[j][i] = c;
        }
    }
    Ok(QuasiDiophantineSet {
        points: angles.iter().map(PythagoreanAngle::unit_point).collect(),
        distances,
    })
}

/// Least positive integer that turns every given rational into an integer.
pub fn scale_factor<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigUint {
    values.into_iter().fold(BigUint::one(), |acc, d| {
        let den = d.denom().magnitude();
        acc.lcm(den)
    })
}

/// Scales the set about the origin by the lcm of its distance denominators.
pub fn homothety_scale(qset: &QuasiDiophantineSet) -> Result<DiophantineSet, CircleError> {
    if qset.len() < 2 {
        return Err(CircleError::TooFewPoints(qset.len()));
    }
    let s = scale_factor(qset.distances.iter().flatten());
    let factor = Rational::from_integer(BigInt::from(s.clone()));
    let points = qset.points.iter().map(|p| p.scale(&factor)).collect();
    Ok(DiophantineSet::certify(points, Some(s))?)
}

/// Rational concyclic set of cardinality `n` before scaling.
pub fn construct_quasi(n: usize) -> QuasiDiophantineSet {
    place_on_circle(&gen_pythagorean_angles(n)).expect("generated angles are distinct")
}

/// Concyclic set of `n` points with natural pairwise distances.
pub fn construct_diophantine(n: usize) -> Result<DiophantineSet, CircleError> {
    let qset = construct_quasi(n);
    if n < 2 {
        return Ok(DiophantineSet::certify(qset.points, Some(BigUint::one()))?);
    }
    homothety_scale(&qset)
}

#[derive(Serialize, Deserialize)]
struct QuasiRepr {
    points: Vec<QuadPoint>,
    distances: Vec<Vec<String>>,
}

impl Serialize for QuasiDiophantineSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        QuasiRepr {
            points: self.points.clone(),
            distances: self
                .distances
                .iter()
                .map(|row| row.iter().map(rational_to_string).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QuasiDiophantineSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = QuasiRepr::deserialize(d)?;
        let set = QuasiDiophantineSet::from_points(repr.points).map_err(D::Error::custom)?;
        for (i, row) in repr.distances.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let v = rational_from_str(v).map_err(D::Error::custom)?;
                if set.distances.get(i).and_then(|r| r.get(j)) != Some(&v) {
                    return Err(D::Error::custom(format!(
                        "distance ({i}, {j}) does not match coordinates"
                    )));
                }
            }
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{find_collinear_triple, rational};

    fn triple(p: u64, q: u64, r: u64) -> PythagoreanAngle {
        PythagoreanAngle { p, q, r }
    }

    #[test]
    fn first_triples() {
        assert_eq!(
            gen_pythagorean_angles(3),
            vec![triple(3, 4, 5), triple(5, 12, 13), triple(8, 15, 17)]
        );
        assert_eq!(gen_pythagorean_angles(1), vec![triple(3, 4, 5)]);
        assert!(gen_pythagorean_angles(0).is_empty());
    }

    #[test]
    fn triples_are_primitive_and_ordered() {
        let ts = gen_pythagorean_angles(200);
        assert_eq!(ts.len(), 200);
        for t in &ts {
            assert_eq!(t.p * t.p + t.q * t.q, t.r * t.r);
            assert_eq!(t.p.gcd(&t.q), 1);
            assert!(t.p >= 1 && t.p < t.q);
        }
        assert!(ts.windows(2).all(|w| (w[0].r, w[0].p) < (w[1].r, w[1].p)));
        for i in 0..ts.len() {
            for j in i + 1..ts.len() {
                assert!(!ts[i].sine_numerator(&ts[j]).is_zero());
            }
        }
        // 65 is the first hypotenuse with two primitive triples
        assert!(ts.contains(&triple(16, 63, 65)) && ts.contains(&triple(33, 56, 65)));
    }

    #[test]
    fn placement() {
        let s = place_on_circle(&[triple(3, 4, 5)]).unwrap();
        assert_eq!(
            s.points()[0],
            QuadPoint::rational(rational(-7, 25), rational(24, 25))
        );
        let s = place_on_circle(&[triple(3, 4, 5), triple(5, 12, 13)]).unwrap();
        assert_eq!(s.distances()[0][1], rational(32, 65));
        assert!(s.distances_match_coordinates());
        assert!(s.on_unit_circle());
        assert!(place_on_circle(&[]).unwrap().is_empty());
        assert!(matches!(
            place_on_circle(&[triple(3, 4, 5), triple(3, 4, 5)]),
            Err(CircleError::DuplicateAngle(0, 1))
        ));
    }

    #[test]
    fn scaling() {
        let s = place_on_circle(&[triple(3, 4, 5), triple(5, 12, 13)]).unwrap();
        let d = homothety_scale(&s).unwrap();
        assert_eq!(d.scale(), Some(&BigUint::from(65u32)));
        assert_eq!(d.distance(0, 1), &BigUint::from(32u32));
        assert_eq!(
            scale_factor(&[rational(3, 4), rational(5, 6)]),
            BigUint::from(12u32)
        );
        assert!(matches!(
            homothety_scale(&place_on_circle(&[triple(3, 4, 5)]).unwrap()),
            Err(CircleError::TooFewPoints(1))
        ));
    }

    #[test]
    fn scaling_is_idempotent() {
        let d = construct_diophantine(6).unwrap();
        let again = homothety_scale(&QuasiDiophantineSet::from(&d)).unwrap();
        assert_eq!(again.scale(), Some(&BigUint::one()));
        assert_eq!(again.points(), d.points());
    }

    #[test]
    fn constructed_sets() {
        let one = construct_diophantine(1).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one.distances()[0].iter().all(Zero::is_zero));
        for n in 2..=12 {
            let d = construct_diophantine(n).unwrap();
            assert_eq!(d.len(), n);
            d.verify().unwrap();
            assert!(find_collinear_triple(d.points()).unwrap().is_none());
            let s = Rational::from_integer(BigInt::from(d.scale().unwrap().clone()));
            for p in d.points() {
                let r2 = p
                    .x()
                    .try_mul(p.x())
                    .unwrap()
                    .try_add(&p.y().try_mul(p.y()).unwrap())
                    .unwrap();
                assert_eq!(r2, QuadScalar::rational(&s * &s));
            }
        }
    }

    #[test]
    fn quasi_json_roundtrip() {
        let s = construct_quasi(4);
        let json = serde_json::to_string(&s).unwrap();
        let back: QuasiDiophantineSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
