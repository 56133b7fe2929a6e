use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::predicates::{distance_squared, find_collinear_triple, integer_distance};
use super::quad::QuadPoint;
use super::KernelError;

/// A planar point set certified to have natural pairwise distances and no
/// three collinear points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiophantineSet {
    points: Vec<QuadPoint>,
    #[serde(with = "serde_biguint::matrix")]
    distances: Vec<Vec<BigUint>>,
    #[serde(with = "serde_biguint::option")]
    scale: Option<BigUint>,
}

impl DiophantineSet {
    /// Computes the distance matrix from coordinates and checks every
    /// condition of the certificate.
    pub fn certify(points: Vec<QuadPoint>, scale: Option<BigUint>) -> Result<Self, KernelError> {
        let distances = distance_matrix(&points)?;
        if let Some((i, j, k)) = find_collinear_triple(&points)? {
            return Err(KernelError::CollinearTriple(i, j, k));
        }
        Ok(DiophantineSet {
            points,
            distances,
            scale,
        })
    }

    /// Re-derives the certificate for a set that was built elsewhere, e.g. read from disk.
    pub fn verify(&self) -> Result<(), KernelError> {
        let n = self.points.len();
        if self.distances.len() != n || self.distances.iter().any(|row| row.len() != n) {
            return Err(KernelError::DistanceMismatch(n, n));
        }
        let fresh = distance_matrix(&self.points)?;
        for (i, (got, want)) in fresh.iter().zip(&self.distances).enumerate() {
            if let Some(j) = got.iter().zip(want).position(|(a, b)| a != b) {
                return Err(KernelError::DistanceMismatch(i, j));
            }
        }
        if let Some((i, j, k)) = find_collinear_triple(&self.points)? {
            return Err(KernelError::CollinearTriple(i, j, k));
        }
        Ok(())
    }

    pub fn points(&self) -> &[QuadPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn distance(&self, i: usize, j: usize) -> &BigUint {
        &self.distances[i][j]
    }

    pub fn distances(&self) -> &[Vec<BigUint>] {
        &self.distances
    }

    /// Homothety factor recorded when the set was produced by scaling.
    pub fn scale(&self) -> Option<&BigUint> {
        self.scale.as_ref()
    }

    /// The common radicand of all coordinates.
    pub fn radicand(&self) -> u64 {
        self.points
            .iter()
            .map(QuadPoint::radicand)
            .max()
            .unwrap_or(1)
    }
}

fn distance_matrix(points: &[QuadPoint]) -> Result<Vec<Vec<BigUint>>, KernelError> {
    let n = points.len();
    let mut m = vec![vec![BigUint::default(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if distance_squared(&points[i], &points[j])?.is_zero() {
                return Err(KernelError::DuplicatePoint(i, j));
            }
            let d = integer_distance(&points[i], &points[j])?
                .ok_or(KernelError::NonIntegerDistance(i, j))?;
            m[i][j] = d.clone();
            m[j][i] = d;
        }
    }
    Ok(m)
}

/// Big naturals written as plain JSON integers.
pub mod serde_biguint {
    use num_bigint::BigUint;
    use serde::de::Error as _;
    use serde::ser::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        let num: serde_json::Number = n.to_string().parse().map_err(S::Error::custom)?;
        num.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let num = serde_json::Number::deserialize(d)?;
        num.to_string().parse().map_err(D::Error::custom)
    }

    #[derive(Serialize, Deserialize)]
    #[serde(transparent)]
    struct Wrap(#[serde(with = "super::serde_biguint")] BigUint);

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(n: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
            n.clone().map(Wrap).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
            Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
        }
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
            let w: Vec<Wrap> = v.iter().cloned().map(Wrap).collect();
            w.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
            Ok(Vec::<Wrap>::deserialize(d)?
                .into_iter()
                .map(|w| w.0)
                .collect())
        }
    }

    pub mod matrix {
        use super::*;

        pub fn serialize<S: Serializer>(m: &[Vec<BigUint>], s: S) -> Result<S::Ok, S::Error> {
            let w: Vec<Vec<Wrap>> = m
                .iter()
                .map(|row| row.iter().cloned().map(Wrap).collect())
                .collect();
            w.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigUint>>, D::Error> {
            Ok(Vec::<Vec<Wrap>>::deserialize(d)?
                .into_iter()
                .map(|row| row.into_iter().map(|w| w.0).collect())
                .collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect() -> Vec<QuadPoint> {
        [(0, 0), (3, 0), (3, 4), (0, 4)]
            .into_iter()
            .map(|(x, y)| QuadPoint::from_ints(x, y))
            .collect()
    }

    #[test]
    fn certifies_rectangle() {
        let s = DiophantineSet::certify(rect(), None).unwrap();
        assert_eq!(s.distance(0, 2), &BigUint::from(5u32));
        assert_eq!(s.distance(1, 2), &BigUint::from(4u32));
        s.verify().unwrap();
    }

    #[test]
    fn rejects_bad_sets() {
        let mut pts = rect();
        pts.push(QuadPoint::from_ints(1, 1));
        assert!(matches!(
            DiophantineSet::certify(pts, None),
            Err(KernelError::NonIntegerDistance(0, 4))
        ));
        let line: Vec<_> = (0..3).map(|i| QuadPoint::from_ints(i, 0)).collect();
        assert!(matches!(
            DiophantineSet::certify(line, None),
            Err(KernelError::CollinearTriple(0, 1, 2))
        ));
        let dup = vec![QuadPoint::from_ints(0, 0), QuadPoint::from_ints(0, 0)];
        assert!(matches!(
            DiophantineSet::certify(dup, None),
            Err(KernelError::DuplicatePoint(0, 1))
        ));
    }

    #[test]
    fn json_roundtrip_and_tamper_detection() {
        let s = DiophantineSet::certify(rect(), Some(BigUint::from(65u32))).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains(r#""distances":[[0,3,5,4]"#));
        assert!(json.contains(r#""scale":65"#));
        let back: DiophantineSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
        back.verify().unwrap();

        let tampered = json.replace("[0,3,5,4]", "[0,3,6,4]");
        let bad: DiophantineSet = serde_json::from_str(&tampered).unwrap();
        assert!(bad.verify().is_err());
    }

    #[test]
    fn huge_distances_stay_integers_in_json() {
        let big: BigUint = "123456789012345678901234567890".parse().unwrap();
        #[derive(Serialize, Deserialize)]
        struct W(#[serde(with = "serde_biguint")] BigUint);
        let json = serde_json::to_string(&W(big.clone())).unwrap();
        assert_eq!(json, "123456789012345678901234567890");
        assert_eq!(serde_json::from_str::<W>(&json).unwrap().0, big);
    }
}
