//! Elements of a real quadratic field Q(√D) and points with coordinates in one.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::arith::{
    rational_from_str, rational_int, rational_sqrt, rational_to_string, squarefree_decompose,
    Rational,
};
use super::KernelError;

/// `rat + surd * √radicand` with `radicand` square-free.
///
/// Purely rational values always carry `radicand == 1` and a zero surd, so
/// derived equality is field-element equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadScalar {
    rat: Rational,
    surd: Rational,
    radicand: u64,
}

impl QuadScalar {
    pub fn new(rat: Rational, surd: Rational, radicand: u64) -> Result<Self, KernelError> {
        let (s, f) = match radicand {
            0 => return Ok(Self::rational(rat)),
            d => squarefree_decompose(&BigUint::from(d))?,
        };
        if f != BigUint::from(1u32) {
            return Err(KernelError::NotSquarefree(radicand));
        }
        let s = s.to_u64().expect("divides a u64");
        Ok(Self::normalized(rat, surd, s))
    }

    pub fn rational(rat: Rational) -> Self {
        QuadScalar {
            rat,
            surd: Rational::zero(),
            radicand: 1,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(rational_int(n))
    }

    /// `coeff * √radicand`, with any square factor of `radicand` pulled out.
    pub fn surd(coeff: Rational, radicand: u64) -> Result<Self, KernelError> {
        if radicand == 0 {
            return Ok(Self::rational(Rational::zero()));
        }
        let (s, f) = squarefree_decompose(&BigUint::from(radicand))?;
        let f = Rational::from_integer(f.into());
        Ok(Self::normalized(
            Rational::zero(),
            coeff * f,
            s.to_u64().expect("divides a u64"),
        ))
    }

    fn normalized(rat: Rational, surd: Rational, radicand: u64) -> Self {
        if radicand == 1 {
            Self::rational(rat + surd)
        } else if surd.is_zero() {
            Self::rational(rat)
        } else {
            QuadScalar {
                rat,
                surd,
                radicand,
            }
        }
    }

    pub fn rat_part(&self) -> &Rational {
        &self.rat
    }

    pub fn surd_coeff(&self) -> &Rational {
        &self.surd
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.rat)
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    fn common_radicand(&self, other: &Self) -> Result<u64, KernelError> {
        match (self.radicand, other.radicand) {
            (a, b) if a == b => Ok(a),
            (1, b) => Ok(b),
            (a, 1) => Ok(a),
            (a, b) => Err(KernelError::RadicandMismatch(a, b)),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, KernelError> {
        let d = self.common_radicand(other)?;
        Ok(Self::normalized(
            &self.rat + &other.rat,
            &self.surd + &other.surd,
            d,
        ))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, KernelError> {
        let d = self.common_radicand(other)?;
        Ok(Self::normalized(
            &self.rat - &other.rat,
            &self.surd - &other.surd,
            d,
        ))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, KernelError> {
        let d = self.common_radicand(other)?;
        let dd = rational_int(d as i64);
        let rat = &self.rat * &other.rat + &self.surd * &other.surd * dd;
        let surd = &self.rat * &other.surd + &self.surd * &other.rat;
        Ok(Self::normalized(rat, surd, d))
    }

    pub fn neg(&self) -> Self {
        QuadScalar {
            rat: -&self.rat,
            surd: -&self.surd,
            radicand: self.radicand,
        }
    }

    pub fn scale(&self, by: &Rational) -> Self {
        Self::normalized(&self.rat * by, &self.surd * by, self.radicand)
    }

    /// Exact sign of `rat + surd·√D`.
    pub fn signum(&self) -> Ordering {
        sign_rat_plus_sqrt(&self.rat, &self.surd, &rational_int(self.radicand as i64))
    }

    pub fn try_cmp(&self, other: &Self) -> Result<Ordering, KernelError> {
        Ok(self.try_sub(other)?.signum())
    }

    /// Nonnegative rational square root of a rational element, if any.
    pub fn rational_sqrt(&self) -> Option<Rational> {
        let q = self.as_rational()?;
        rational_sqrt(q).ok().flatten()
    }

    pub fn to_f64(&self) -> f64 {
        let r = self.rat.to_f64().unwrap_or(f64::NAN);
        let s = self.surd.to_f64().unwrap_or(f64::NAN);
        r + s * (self.radicand as f64).sqrt()
    }
}

/// Exact sign of `p + q·√r` for rational `r ≥ 0`.
pub fn sign_rat_plus_sqrt(p: &Rational, q: &Rational, r: &Rational) -> Ordering {
    let sp = p.cmp(&Rational::zero());
    let sq = if r.is_zero() {
        Ordering::Equal
    } else {
        q.cmp(&Rational::zero())
    };
    if sq == Ordering::Equal || sp == sq {
        return if sp == Ordering::Equal { sq } else { sp };
    }
    if sp == Ordering::Equal {
        return sq;
    }
    match (p * p).cmp(&(q * q * r)) {
        Ordering::Greater => sp,
        Ordering::Less => sq,
        Ordering::Equal => Ordering::Equal,
    }
}

impl fmt::Display for QuadScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", self.rat)
        } else if self.rat.is_zero() {
            write!(f, "{}√{}", self.surd, self.radicand)
        } else if self.surd.is_negative() {
            write!(f, "{} - {}√{}", self.rat, -&self.surd, self.radicand)
        } else {
            write!(f, "{} + {}√{}", self.rat, self.surd, self.radicand)
        }
    }
}

#[derive(Serialize, Deserialize)]
struct QuadScalarRepr {
    rat: String,
    surd: String,
    #[serde(rename = "D")]
    radicand: u64,
}

impl Serialize for QuadScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        QuadScalarRepr {
            rat: rational_to_string(&self.rat),
            surd: rational_to_string(&self.surd),
            radicand: self.radicand,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = QuadScalarRepr::deserialize(deserializer)?;
        let rat = rational_from_str(&repr.rat).map_err(D::Error::custom)?;
        let surd = rational_from_str(&repr.surd).map_err(D::Error::custom)?;
        QuadScalar::new(rat, surd, repr.radicand).map_err(D::Error::custom)
    }
}

/// Planar point whose coordinates lie in a common field Q(√D).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuadPoint {
    x: QuadScalar,
    y: QuadScalar,
}

impl QuadPoint {
    pub fn new(x: QuadScalar, y: QuadScalar) -> Result<Self, KernelError> {
        x.common_radicand(&y)?;
        Ok(QuadPoint { x, y })
    }

    pub fn rational(x: Rational, y: Rational) -> Self {
        QuadPoint {
            x: QuadScalar::rational(x),
            y: QuadScalar::rational(y),
        }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::rational(rational_int(x), rational_int(y))
    }

    pub fn x(&self) -> &QuadScalar {
        &self.x
    }

    pub fn y(&self) -> &QuadScalar {
        &self.y
    }

    /// The field's radicand; `1` for rational points.
    pub fn radicand(&self) -> u64 {
        self.x.radicand.max(self.y.radicand)
    }

    pub fn is_rational(&self) -> bool {
        self.x.is_rational() && self.y.is_rational()
    }

    pub fn try_sub(&self, other: &Self) -> Result<(QuadScalar, QuadScalar), KernelError> {
        Ok((self.x.try_sub(&other.x)?, self.y.try_sub(&other.y)?))
    }

    pub fn scale(&self, by: &Rational) -> Self {
        QuadPoint {
            x: self.x.scale(by),
            y: self.y.scale(by),
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl<'de> Deserialize<'de> for QuadPoint {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        #[derive(Deserialize)]
        struct Repr {
            x: QuadScalar,
            y: QuadScalar,
        }
        let r = Repr::deserialize(deserializer)?;
        QuadPoint::new(r.x, r.y).map_err(D::Error::custom)
    }
}

impl fmt::Display for QuadPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::arith::rational;
    use proptest::prelude::*;

    #[test]
    fn normalizes_trivial_radicands() {
        let a = QuadScalar::new(rational(1, 2), rational(3, 1), 1).unwrap();
        assert_eq!(a, QuadScalar::rational(rational(7, 2)));
        let b = QuadScalar::new(rational(1, 2), rational(3, 1), 0).unwrap();
        assert_eq!(b, QuadScalar::rational(rational(1, 2)));
        let c = QuadScalar::new(rational(1, 2), rational(0, 1), 3).unwrap();
        assert_eq!(c.radicand(), 1);
        assert!(QuadScalar::new(rational(0, 1), rational(1, 1), 12).is_err());
        assert_eq!(
            QuadScalar::surd(rational(1, 1), 12).unwrap(),
            QuadScalar::new(rational(0, 1), rational(2, 1), 3).unwrap()
        );
    }

    #[test]
    fn field_arithmetic() {
        let r3 = QuadScalar::surd(rational(1, 1), 3).unwrap();
        assert_eq!(r3.try_mul(&r3).unwrap(), QuadScalar::from_int(3));
        let r2 = QuadScalar::surd(rational(1, 1), 2).unwrap();
        assert!(matches!(
            r3.try_add(&r2),
            Err(KernelError::RadicandMismatch(3, 2))
        ));
        // (1 + √2)(1 − √2) = −1
        let a = QuadScalar::new(rational(1, 1), rational(1, 1), 2).unwrap();
        let b = QuadScalar::new(rational(1, 1), rational(-1, 1), 2).unwrap();
        assert_eq!(a.try_mul(&b).unwrap(), QuadScalar::from_int(-1));
        assert_eq!(a.try_sub(&a).unwrap(), QuadScalar::from_int(0));
    }

    #[test]
    fn exact_signs() {
        // 3 − 2√2 > 0, 1 − √2 < 0, 2 − √4 handled by normalization
        let s = |p: (i64, i64), q: (i64, i64), d| {
            QuadScalar::new(rational(p.0, p.1), rational(q.0, q.1), d)
                .unwrap()
                .signum()
        };
        assert_eq!(s((3, 1), (-2, 1), 2), Ordering::Greater);
        assert_eq!(s((1, 1), (-1, 1), 2), Ordering::Less);
        assert_eq!(s((-7, 5), (1, 1), 2), Ordering::Greater);
        assert_eq!(s((0, 1), (0, 1), 5), Ordering::Equal);
        assert_eq!(s((0, 1), (-1, 3), 5), Ordering::Less);
    }

    #[test]
    fn serialization_shape() {
        let a = QuadScalar::new(rational(1, 2), rational(-3, 4), 3).unwrap();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"{"rat":"1/2","surd":"-3/4","D":3}"#);
        let back: QuadScalar = serde_json::from_str(&json).unwrap();
        assert_eq!(back, a);
        let bad = r#"{"rat":"1/2","surd":"1/1","D":8}"#;
        assert!(serde_json::from_str::<QuadScalar>(bad).is_err());
    }

    prop_compose! {
        fn arb_scalar()(p in -50i64..50, pd in 1i64..20, q in -50i64..50, qd in 1i64..20,
                        d in prop::sample::select(vec![1u64, 2, 3, 5, 6, 7])) -> QuadScalar {
            QuadScalar::new(rational(p, pd), rational(q, qd), d).unwrap()
        }
    }

    proptest! {
        #[test]
        fn json_roundtrip_is_bit_exact(a in arb_scalar()) {
            let json = serde_json::to_string(&a).unwrap();
            let back: QuadScalar = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(serde_json::to_string(&back).unwrap(), json);
            prop_assert_eq!(back, a);
        }

        #[test]
        fn signum_agrees_with_float(a in arb_scalar()) {
            let f = a.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(a.signum(), f.partial_cmp(&0.0).unwrap());
            }
        }
    }
}
