//! Exact 64-bit integer helpers.
//!
//! Every operation either returns the exact value or an [`ArithError`]; nothing
//! wraps silently.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("integer overflow")]
    Overflow,
    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: i64, m: i64 },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(i64),
}

pub type Result<T> = std::result::Result<T, ArithError>;

/// Greatest common divisor, always nonnegative. `gcd(0, 0) == 0`.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    // |i64::MIN| only shows up for gcd(MIN, 0) or gcd(MIN, MIN)
    a.min(i64::MAX as u64) as i64
}

/// Representative of `a` in `[0, m)`.
pub fn rem_euclid(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

/// Inverse of `a` modulo `m`, in `[0, m)`.
pub fn mod_inverse(a: i64, m: i64) -> Result<i64> {
    if m < 2 {
        return Err(ArithError::BadModulus(m));
    }
    // extended Euclid on (a mod m, m); all intermediates stay below m in magnitude
    let (mut old_r, mut r) = (a.rem_euclid(m) as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(ArithError::NotInvertible { a, m });
    }
    Ok(old_s.rem_euclid(m as i128) as i64)
}

/// True iff every unordered pair has gcd 1. Vacuously true for fewer than two values.
pub fn pairwise_coprime(values: &[i64]) -> bool {
    values
        .iter()
        .enumerate()
        .all(|(i, &a)| values[i + 1..].iter().all(|&b| gcd(a, b) == 1))
}

pub fn checked_product(values: &[i64]) -> Result<i64> {
    values
        .iter()
        .try_fold(1i64, |acc, &v| acc.checked_mul(v).ok_or(ArithError::Overflow))
}

pub fn checked_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(ArithError::Overflow)
}

pub fn checked_sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(ArithError::Overflow)
}

pub fn checked_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(ArithError::Overflow)
}

/// `⌈a / b⌉` for `a ≥ 0`, `b > 0`, computed as `(a + b - 1) / b`.
pub fn ceil_div(a: i64, b: i64) -> Result<i64> {
    debug_assert!(a >= 0 && b > 0);
    Ok(checked_add(a, b - 1)? / b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(21, 14), 7);
        assert_eq!(gcd(0, 5), 5);
        assert_eq!(gcd(35, 6), 1);
        assert_eq!(gcd(0, 0), 0);
        assert_eq!(gcd(-12, 18), 6);
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(1, 2), Ok(1));
        assert_eq!(mod_inverse(6, 7), Ok(6));
        assert_eq!(mod_inverse(2, 3), Ok(2));
        assert_eq!(mod_inverse(-1, 7), Ok(6));
        assert_eq!(
            mod_inverse(4, 6),
            Err(ArithError::NotInvertible { a: 4, m: 6 })
        );
        assert_eq!(mod_inverse(3, 1), Err(ArithError::BadModulus(1)));
    }

    #[test]
    fn mod_inverse_matches_exhaustive_search() {
        for m in 2..60i64 {
            for a in 0..m {
                let brute = (0..m).find(|x| (a * x) % m == 1);
                match brute {
                    Some(x) => assert_eq!(mod_inverse(a, m), Ok(x)),
                    None => assert!(mod_inverse(a, m).is_err()),
                }
            }
        }
    }

    #[test]
    fn pairwise_coprime_examples() {
        assert!(pairwise_coprime(&[2, 3, 7]));
        assert!(!pairwise_coprime(&[2, 3, 6]));
        assert!(pairwise_coprime(&[]));
        assert!(pairwise_coprime(&[4]));
    }

    #[test]
    fn product_examples() {
        assert_eq!(checked_product(&[2, 3, 7]), Ok(42));
        assert_eq!(checked_product(&[]), Ok(1));
        assert_eq!(checked_product(&[2, 3, 5, 7]), Ok(210));
        assert_eq!(
            checked_product(&[i64::MAX / 2, 3]),
            Err(ArithError::Overflow)
        );
    }

    #[test]
    fn ceil_div_small() {
        assert_eq!(ceil_div(0, 7).unwrap(), 0);
        assert_eq!(ceil_div(7, 7).unwrap(), 1);
        assert_eq!(ceil_div(8, 7).unwrap(), 2);
    }

    proptest! {
        #[test]
        fn inverse_really_inverts(a in -10_000i64..10_000, m in 2i64..10_000) {
            if gcd(a, m) == 1 {
                let x = mod_inverse(a, m).unwrap();
                prop_assert!((0..m).contains(&x));
                prop_assert_eq!((a.rem_euclid(m) * x) % m, 1 % m);
            }
        }

        #[test]
        fn gcd_commutes_and_reduces(a in -1_000_000i64..1_000_000, b in 1i64..1_000_000) {
            prop_assert_eq!(gcd(a, b), gcd(b, a));
            prop_assert_eq!(gcd(a, b), gcd(b, a.rem_euclid(b)));
        }
    }
}
