//! Cyclotomic polynomials, products of their powers used as congruence
//! moduli, and the counting of factors `1 - q^{x + dk}` divisible by `Φ_n`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::Poly;

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn totient(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn mobius(n: u64) -> i64 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            if m.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

type Cache = RwLock<HashMap<u64, Arc<Vec<BigInt>>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Integer coefficients of `Φ_n`, lowest degree first.
///
/// The cache only ever gains entries; a racing fill recomputes the same value.
pub(crate) fn cyclotomic_ints(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(hit) = cache().read().expect("cache poisoned").get(&n) {
        return Arc::clone(hit);
    }
    let len = usize::try_from(n).expect("index fits in usize") + 1;
    let mut acc = vec![BigInt::zero(); len];
    acc[0] = BigInt::from(-1);
    acc[len - 1] = BigInt::from(1);
    for d in divisors(n) {
        if d < n {
            acc = exact_div_monic(&acc, &cyclotomic_ints(d));
        }
    }
    let value = Arc::new(acc);
    cache()
        .write()
        .expect("cache poisoned")
        .entry(n)
        .or_insert(value)
        .clone()
}

fn exact_div_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let blen = b.len();
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); a.len() + 1 - blen];
    for i in (0..quot.len()).rev() {
        let c = std::mem::take(&mut rem[i + blen - 1]);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b[..blen - 1].iter().enumerate() {
            if !bj.is_zero() {
                rem[i + j] -= &c * bj;
            }
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// The `n`-th cyclotomic polynomial `Φ_n(q)`.
pub fn cyclotomic(n: u64) -> Poly {
    Poly::from_bigints(cyclotomic_ints(n).as_ref().clone())
}

/// `Ψ_n`: equal to `Φ_n` for `n >= 2`, and `Ψ_1 = 1 - q`, so that
/// `1 - q^e = ∏_{d | e} Ψ_d` holds exactly.
pub fn psi(n: u64) -> Poly {
    if n == 1 {
        Poly::from_ints(&[1, -1])
    } else {
        cyclotomic(n)
    }
}

/// A modulus `∏ Φ_{n_i}(q)^{s_i}` together with its expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiModulus {
    factors: Vec<(u64, u32)>,
    expanded: Poly,
}

impl PhiModulus {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn expanded(&self) -> &Poly {
        &self.expanded
    }

    pub fn degree(&self) -> usize {
        self.expanded.degree().unwrap_or(0)
    }

    /// `Σ s_i φ(n_i)`.
    pub fn expected_degree(&self) -> u64 {
        self.factors.iter().map(|&(n, s)| u64::from(s) * totient(n)).sum()
    }

    /// `Φ_n^s` for one factor of the modulus.
    pub fn component(&self, index: u64) -> Option<Poly> {
        self.factors
            .iter()
            .find(|(n, _)| *n == index)
            .map(|&(n, s)| cyclotomic(n).pow(s))
    }
}

impl std::fmt::Display for PhiModulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(n, s)| format!("Phi_{n}^{s}"))
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Expands `∏ Φ_{n_i}^{s_i}`; indices must be distinct and at least 2.
pub fn build_modulus(spec: &[(u64, u32)]) -> Result<PhiModulus> {
    let mut seen = Vec::with_capacity(spec.len());
    for &(n, s) in spec {
        if seen.contains(&n) {
            return Err(Error::DuplicateIndex(n));
        }
        if n < 2 {
            return Err(Error::InvalidParameter(format!(
                "modulus index {n} must be at least 2"
            )));
        }
        if s == 0 {
            return Err(Error::InvalidParameter(format!(
                "multiplicity of Phi_{n} must be positive"
            )));
        }
        seen.push(n);
    }
    let expanded = spec
        .iter()
        .fold(Poly::one(), |acc, &(n, s)| &acc * &cyclotomic(n).pow(s));
    Ok(PhiModulus { factors: spec.to_vec(), expanded })
}

/// Number of `k` in `[0, len)` with `n | x + d k`: how many factors of
/// `(q^x; q^d)_len` are divisible by `Φ_n(q)`.
pub fn count_phi_factors(x: i64, d: u64, len: u64, n: u64) -> u64 {
    let (x, d, n) = (i128::from(x), i128::from(d), i128::from(n));
    (0..i128::from(len)).filter(|k| (x + d * k) % n == 0).count() as u64
}
