//! Integer and rational primitives: exact squares and square-free parts.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::KernelError;

/// Arbitrary-precision exact fraction, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Trial-division cutoff used by [`squarefree_decompose`] before switching
/// from machine words to big integers.
pub const DEFAULT_TRIAL_LIMIT: u64 = 1 << 20;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Returns `r` with `r * r == n`, or `None` if `n` is not a perfect square.
pub fn is_perfect_square(n: &BigUint) -> Option<BigUint> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Same as [`is_perfect_square`] for signed input; negative values are never squares.
pub fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    match n.sign() {
        Sign::Minus => None,
        _ => is_perfect_square(n.magnitude()).map(BigInt::from),
    }
}

pub fn u128_sqrt_exact(n: u128) -> Option<u128> {
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

/// Non-negative rational square root, if it is rational.
///
/// A reduced fraction is a square iff numerator and denominator both are.
pub fn rational_sqrt(q: &Rational) -> Result<Option<Rational>, KernelError> {
    if q.is_negative() {
        return Err(KernelError::NegativeRadicand(q.to_string()));
    }
    let num = int_sqrt_exact(q.numer());
    let den = int_sqrt_exact(q.denom());
    Ok(match (num, den) {
        (Some(n), Some(d)) => Some(Rational::new(n, d)),
        _ => None,
    })
}

/// Splits `n = s * f^2` with `s` square-free.
///
/// Trial division stops once `p^3` exceeds the remaining cofactor, at which
/// point the cofactor is `1`, `p`, `p*q` or `p^2`. Inputs that fit a machine
/// word never touch big integers.
pub fn squarefree_decompose(n: &BigUint) -> Result<(BigUint, BigUint), KernelError> {
    squarefree_decompose_with_limit(n, DEFAULT_TRIAL_LIMIT)
}

/// As [`squarefree_decompose`], with trial divisors above `word_limit`
/// handled in big-integer arithmetic when the cofactor exceeds a `u64`.
pub fn squarefree_decompose_with_limit(
    n: &BigUint,
    word_limit: u64,
) -> Result<(BigUint, BigUint), KernelError> {
    if n.is_zero() {
        return Err(KernelError::ZeroSquarefree);
    }
    if let Some(w) = n.to_u64() {
        let (s, f) = squarefree_u64(w);
        return Ok((BigUint::from(s), BigUint::from(f)));
    }
    let mut rest = n.clone();
    let mut s = BigUint::one();
    let mut f = BigUint::one();
    let mut p: u64 = 2;
    while rest.to_u64().is_none() {
        let bp = BigUint::from(p);
        if p > word_limit || bp.pow(3) > rest {
            break;
        }
        strip_factor(&mut rest, &bp, &mut s, &mut f);
        p += if p == 2 { 1 } else { 2 };
    }
    if let Some(w) = rest.to_u64() {
        // remaining divisors below p are already stripped
        let (ws, wf) = squarefree_u64(w);
        return Ok((s * ws, f * wf));
    }
    let mut bp = BigUint::from(p);
    while &bp * &bp * &bp <= rest {
        strip_factor(&mut rest, &bp, &mut s, &mut f);
        bp += 1u32;
    }
    match is_perfect_square(&rest) {
        Some(r) => f *= r,
        None => s *= rest,
    }
    Ok((s, f))
}

fn squarefree_u64(n: u64) -> (u64, u64) {
    let (mut rest, mut s, mut f) = (n, 1u64, 1u64);
    let mut p = 2u64;
    while (p as u128).pow(3) <= rest as u128 {
        let mut e = 0u32;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e % 2 == 1 {
            s *= p;
        }
        f *= p.pow(e / 2);
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        let r = rest.sqrt();
        if r * r == rest {
            f *= r;
        } else {
            s *= rest;
        }
    }
    (s, f)
}

fn strip_factor(rest: &mut BigUint, p: &BigUint, s: &mut BigUint, f: &mut BigUint) {
    let mut e = 0u32;
    while (&*rest % p).is_zero() {
        *rest /= p;
        e += 1;
    }
    if e % 2 == 1 {
        *s *= p;
    }
    for _ in 0..e / 2 {
        *f *= p;
    }
}

/// Square-free part of a positive `u128`.
pub fn squarefree_part_u128(n: u128) -> u128 {
    let (s, _) = squarefree_decompose(&BigUint::from(n)).expect("positive input");
    s.to_u128().expect("square-free part divides input")
}

/// Serializes a rational as `"num/den"`, denominator always present.
pub fn rational_to_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rational_from_str(s: &str) -> Result<Rational, KernelError> {
    let bad = || KernelError::Parse(s.to_string());
    let (n, d) = s.split_once('/').ok_or_else(bad)?;
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(is_perfect_square(&big(49)), Some(big(7)));
        assert_eq!(is_perfect_square(&big(50)), None);
        assert_eq!(is_perfect_square(&big(0)), Some(big(0)));
    }

    #[test]
    fn rational_roots() {
        assert_eq!(
            rational_sqrt(&rational(9, 4)).unwrap(),
            Some(rational(3, 2))
        );
        assert_eq!(rational_sqrt(&rational(2, 1)).unwrap(), None);
        assert_eq!(
            rational_sqrt(&rational(0, 1)).unwrap(),
            Some(rational(0, 1))
        );
        assert!(rational_sqrt(&rational(-1, 4)).is_err());
        // 8/18 reduces to 4/9
        assert_eq!(
            rational_sqrt(&rational(8, 18)).unwrap(),
            Some(rational(2, 3))
        );
    }

    #[test]
    fn squarefree_examples() {
        let sf = |n| squarefree_decompose(&big(n)).unwrap();
        assert_eq!(sf(12), (big(3), big(2)));
        assert_eq!(sf(45), (big(5), big(3)));
        assert_eq!(sf(1), (big(1), big(1)));
        assert!(squarefree_decompose(&big(0)).is_err());
    }

    #[test]
    fn squarefree_large_prime_square() {
        // 1_000_003 is prime; its square and cube exercise the tail cases
        let p = big(1_000_003);
        let (s, f) = squarefree_decompose(&(&p * &p * big(7))).unwrap();
        assert_eq!((s, f), (big(7), p.clone()));
        let (s, f) = squarefree_decompose(&(&p * &p * &p * big(2))).unwrap();
        assert_eq!((s, f), (&p * big(2), p));
        // beyond u64 with a tiny word limit forces the big-integer loop
        let q = big(1009);
        let (s, f) = squarefree_decompose_with_limit(&q.pow(7), 10).unwrap();
        assert_eq!((s, f), (q.clone(), q.pow(3)));
        let n = q.pow(6) * big(3) * big(4);
        assert_eq!(
            squarefree_decompose(&n).unwrap(),
            (big(3), q.pow(3) * big(2))
        );
    }

    #[test]
    fn squarefree_exhaustive_to_1e6() {
        // independent sieve of smallest prime factors
        const N: usize = 1_000_000;
        let mut spf = vec![0u32; N + 1];
        for i in 2..=N {
            if spf[i] == 0 {
                let mut j = i;
                while j <= N {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        for n in 1..=N {
            let (mut s, mut f, mut m) = (1u64, 1u64, n);
            while m > 1 {
                let p = spf[m] as usize;
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                if e % 2 == 1 {
                    s *= p as u64;
                }
                f *= (p as u64).pow(e / 2);
            }
            assert_eq!(
                squarefree_decompose(&big(n as u64)).unwrap(),
                (big(s), big(f)),
                "n = {n}"
            );
        }
    }

    #[test]
    fn rational_serialization() {
        assert_eq!(rational_to_string(&rational(-6, 8)), "-3/4");
        assert_eq!(rational_to_string(&rational_int(5)), "5/1");
        assert_eq!(rational_from_str("-3/4").unwrap(), rational(-3, 4));
        assert!(rational_from_str("3").is_err());
        assert!(rational_from_str("3/0").is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn square_roundtrip(n in 0u64..u64::MAX) {
            if let Some(r) = is_perfect_square(&big(n)) {
                prop_assert_eq!(&r * &r, big(n));
            }
            let sq = big(n) * big(n);
            prop_assert_eq!(is_perfect_square(&sq), Some(big(n)));
        }

        #[test]
        fn rational_sqrt_roundtrip(n in 0i64..1_000_000, d in 1i64..1_000_000) {
            let q = rational(n, d);
            if let Some(r) = rational_sqrt(&q).unwrap() {
                prop_assert_eq!(&r * &r, q.clone());
            }
            let sq = &q * &q;
            prop_assert_eq!(rational_sqrt(&sq).unwrap(), Some(q));
        }

        #[test]
        fn squarefree_invariant(n in 1u64..1_000_000_000) {
            let (s, f) = squarefree_decompose(&big(n)).unwrap();
            prop_assert_eq!(&s * &f * &f, big(n));
            let s = s.to_u64().unwrap();
            let mut d = 2u64;
            while d * d <= s {
                prop_assert!(s % (d * d) != 0);
                d += 1;
            }
        }

        #[test]
        fn rational_string_roundtrip(n in any::<i64>(), d in 1i64..i64::MAX) {
            let q = rational(n, d);
            prop_assert_eq!(rational_from_str(&rational_to_string(&q)).unwrap(), q);
        }
    }
}
