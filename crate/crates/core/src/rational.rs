//! Exact integers and rationals, modular inverses, and the p-adic
//! valuation/unit split used by the classical congruence checks.
//!
//! `Rational` is `num_rational::BigRational`, which is kept in lowest terms
//! with a positive denominator on every construction.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `numer / denom` as a normalized rational.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Deterministic trial division; intended for desk-scale `p`.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// A nonzero rational written as `p^valuation * unit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicSplit {
    pub valuation: i64,
    pub unit: Rational,
}

/// Strips every factor `p` from a nonzero integer; returns the count and the rest.
pub fn split_int(n: &BigInt, p: u64) -> (i64, BigInt) {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        rest = q;
        v += 1;
    }
    (v, rest)
}

/// Machine-word version of [`split_int`].
pub fn split_u64(mut n: u64, p: u64) -> (u32, u64) {
    debug_assert!(n != 0);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    (v, n)
}

pub fn padic_split(x: &Rational, p: u64) -> Result<PadicSplit> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let (vn, un) = split_int(x.numer(), p);
    let (vd, ud) = split_int(x.denom(), p);
    Ok(PadicSplit {
        valuation: vn - vd,
        unit: Rational::new(un, ud),
    })
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(x: &Rational, p: u64) -> Result<i64> {
    padic_split(x, p).map(|s| s.valuation)
}

/// `a * b^{-1} mod p^s` for `x = a/b` with `v_p(x) >= 0`.
pub fn padic_residue(x: &Rational, p: u64, s: u32) -> Result<BigInt> {
    let modulus = BigInt::from(p).pow(s);
    if x.is_zero() {
        return Ok(BigInt::zero());
    }
    let (vd, _) = split_int(x.denom(), p);
    if vd > 0 {
        return Err(Error::NotPIntegral { p });
    }
    let inv = mod_inverse(x.denom(), &modulus)?;
    Ok((x.numer() * inv).mod_floor(&modulus))
}

/// The inverse of `a` modulo `m`, in `[1, m)`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Result<BigInt> {
    if *m < BigInt::from(2) {
        return Err(Error::InvalidParameter(format!("modulus {m} must be at least 2")));
    }
    let ext = a.mod_floor(m).extended_gcd(m);
    if !ext.gcd.is_one() {
        return Err(Error::NotInvertible {
            a: a.to_string(),
            m: m.to_string(),
        });
    }
    Ok(ext.x.mod_floor(m))
}

/// Inverse modulo a machine-word modulus (`m < 2^63`).
pub fn mod_inverse_u64(a: u64, m: u64) -> Result<u64> {
    let (mut old_r, mut r) = (i128::from(a % m), i128::from(m));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible {
            a: a.to_string(),
            m: m.to_string(),
        });
    }
    Ok(old_s.rem_euclid(i128::from(m)) as u64)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// `p^s` as a machine word, or a resource-limit error if it does not fit in 63 bits.
pub fn prime_power_u64(p: u64, s: u32) -> Result<u64> {
    p.checked_pow(s)
        .filter(|v| *v < (1u64 << 63))
        .ok_or_else(|| Error::ResourceLimit(format!("{p}^{s} exceeds the machine-word fast path")))
}

/// Converts a nonnegative `BigInt` known to be below `2^64`.
pub fn to_u64(n: &BigInt) -> Option<u64> {
    match n.sign() {
        Sign::Minus => None,
        _ => {
            let (_, digits) = n.to_u64_digits();
            match digits.len() {
                0 => Some(0),
                1 => Some(digits[0]),
                _ => None,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_examples() {
        assert_eq!(
            padic_split(&rat(9, 8), 3).unwrap(),
            PadicSplit { valuation: 2, unit: rat(1, 8) }
        );
        assert_eq!(
            padic_split(&rat(1, 3), 3).unwrap(),
            PadicSplit { valuation: -1, unit: int(1) }
        );
        // 77 = 7 * 11 by trial division
        assert_eq!(
            padic_split(&rat(77, 221), 7).unwrap(),
            PadicSplit { valuation: 1, unit: rat(11, 221) }
        );
        assert_eq!(padic_split(&int(0), 5), Err(Error::ZeroInput));
    }

    #[test]
    fn residue_examples() {
        assert_eq!(padic_residue(&rat(9, 8), 3, 2).unwrap(), BigInt::zero());
        for (p, s) in [(3, 1), (7, 4), (11, 3)] {
            assert_eq!(padic_residue(&int(1), p, s).unwrap(), BigInt::one());
        }
        assert_eq!(padic_residue(&rat(1, 3), 3, 2), Err(Error::NotPIntegral { p: 3 }));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(mod_inverse(&BigInt::from(8), &BigInt::from(9)).unwrap(), BigInt::from(8));
        for m in [2i64, 9, 1000] {
            assert_eq!(mod_inverse(&BigInt::one(), &BigInt::from(m)).unwrap(), BigInt::one());
        }
        assert!(matches!(
            mod_inverse(&BigInt::from(3), &BigInt::from(9)),
            Err(Error::NotInvertible { .. })
        ));
        assert_eq!(mod_inverse_u64(8, 9).unwrap(), 8);
        assert!(mod_inverse_u64(3, 9).is_err());
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime(999_983));
        assert!(!is_prime(999_981));
    }
}
