//! The `q → 1` statements: sums of `(1/2)_k^3 / k!^3` modulo prime powers and
//! the product `∏ (4k-1)/(4k+1)`.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{
    ensure_prime, mod_inverse_u64, mul_mod, padic_residue, pow_mod, prime_power_u64, split_u64,
    to_u64, Rational,
};
use crate::report::{Level, Report, Status};

/// Sums longer than this skip the exact cross-check.
pub const EXACT_LIMIT: u64 = 5_000;

/// `a (a+1) ⋯ (a+k-1)`.
pub fn rising(a: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= &x;
        x += Rational::one();
    }
    acc
}

/// `C(2k, k)`.
pub fn central_binomial(k: u64) -> BigInt {
    let mut c = BigInt::one();
    for j in 0..k {
        c = c * BigInt::from(2 * (2 * j + 1)) / BigInt::from(j + 1);
    }
    c
}

/// `(1/2)_k^3 / k!^3`, equal to `C(2k,k)^3 / 64^k`.
pub fn central_term(k: u64) -> Rational {
    let half = rising(&Rational::new(1.into(), 2.into()), k);
    let fact = rising(&Rational::one(), k);
    let t = half / fact;
    let t = &t * &t * &t;
    debug_assert_eq!(
        t,
        Rational::new(central_binomial(k).pow(3), BigInt::from(64).pow(k as u32))
    );
    t
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumPath {
    /// Full rational sum, then reduction.
    Exact,
    /// Running residues modulo `p^s`.
    Modular,
}

/// `Σ_{k<n} central_term(k) mod p^s`.
pub fn sum_mod(n: u64, p: u64, s: u32, path: SumPath) -> Result<u64> {
    if p.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("p = {p} must be odd")));
    }
    ensure_prime(p)?;
    let modulus = prime_power_u64(p, s)?;
    match path {
        SumPath::Exact => {
            // C(2k,k)^3 / 64^k with the power of two factored out of the sum
            let mut num = BigInt::zero();
            let mut c = BigInt::one();
            for k in 0..n {
                if k > 0 {
                    c = c * BigInt::from(2 * (2 * k - 1)) / BigInt::from(k);
                }
                num += c.pow(3) << (6 * (n - 1 - k) as usize);
            }
            let den = BigInt::one() << (6 * n.saturating_sub(1) as usize);
            let r = padic_residue(&Rational::new(num, den), p, s)?;
            Ok(to_u64(&r).expect("residue below p^s"))
        }
        SumPath::Modular => {
            let inv64 = mod_inverse_u64(64, modulus)?;
            // C(2k,k) = p^v · u with u a unit
            let (mut v, mut u) = (0u32, 1u64 % modulus);
            let mut scale = 1u64 % modulus;
            let mut acc = 0u64;
            for k in 0..n {
                if k > 0 {
                    let (a, ua) = split_u64(2 * (2 * k - 1), p);
                    let (b, ub) = split_u64(k, p);
                    v = v + a - b;
                    u = mul_mod(mul_mod(u, ua % modulus, modulus), mod_inverse_u64(ub % modulus, modulus)?, modulus);
                    scale = mul_mod(scale, inv64, modulus);
                }
                if 3 * v < s {
                    let pv = pow_mod(p, u64::from(3 * v), modulus);
                    let cube = mul_mod(mul_mod(u, u, modulus), u, modulus);
                    acc = (acc + mul_mod(mul_mod(pv, cube, modulus), scale, modulus)) % modulus;
                }
            }
            Ok(acc)
        }
    }
}

/// `∏_{k=1}^{m} (4k-1)/(4k+1)` as `(v_p, unit mod p^s)`.
pub fn product_split(m: u64, p: u64, s: u32) -> Result<(i64, u64)> {
    let modulus = prime_power_u64(p, s)?;
    let mut v = 0i64;
    let mut num = 1 % modulus;
    let mut den = 1 % modulus;
    for k in 1..=m {
        let (a, ua) = split_u64(4 * k - 1, p);
        let (b, ub) = split_u64(4 * k + 1, p);
        v += i64::from(a) - i64::from(b);
        num = mul_mod(num, ua % modulus, modulus);
        den = mul_mod(den, ub % modulus, modulus);
    }
    Ok((v, mul_mod(num, mod_inverse_u64(den, modulus)?, modulus)))
}

fn require_3_mod_4(p: u64) -> Result<()> {
    ensure_prime(p)?;
    if p % 4 != 3 {
        return Err(Error::InvalidParameter(format!("p = {p} must be ≡ 3 (mod 4)")));
    }
    Ok(())
}

/// `(v_p, unit mod p^2)` of `∏_{k=1}^{(p^{2r}-1)/2} (4k-1)/(4k+1)`; the
/// conjecture predicts `(0, 1)`.
pub fn conj1_product(p: u64, r: u32) -> Result<(i64, u64)> {
    require_3_mod_4(p)?;
    let big = p.checked_pow(2 * r).ok_or_else(|| Error::ResourceLimit(format!("{p}^{}", 2 * r)))?;
    product_split((big - 1) / 2, p, 2)
}

/// `p^{2r} (3/4)_M / (5/4)_M mod p^s` with `M = (p^{2r}-1)/2`.
pub fn corollary_rhs(p: u64, r: u32, s: u32) -> Result<u64> {
    let modulus = prime_power_u64(p, s)?;
    let big = p.checked_pow(2 * r).ok_or_else(|| Error::ResourceLimit(format!("{p}^{}", 2 * r)))?;
    let (v, unit) = product_split((big - 1) / 2, p, s)?;
    let total = v + 2 * i64::from(r);
    if total < 0 {
        return Err(Error::NotPIntegral { p });
    }
    if total >= i64::from(s) {
        return Ok(0);
    }
    Ok(mul_mod(pow_mod(p, total as u64, modulus), unit, modulus))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicalId {
    /// Sum to `(p-1)/2` vanishes mod `p^2`.
    H2,
    /// Sum to `mp-1` vanishes mod `p^2`.
    Liu,
    /// Sum to `(p^{2r}-1)/2` against `p^{2r}` mod `p^{2r+3}`; evidence only.
    Swisher,
    /// Sum to `(p^2-1)/2` against `p^2 (3/4)_M/(5/4)_M` mod `p^4`.
    CorHalf,
    /// Sum to `p^2-1`, same right side.
    CorFull,
    /// Sum to `(p^{2r}-1)/2` against `p^{2r} (3/4)_M/(5/4)_M` mod `p^{2r+2}`.
    CorRHalf,
    /// Sum to `p^{2r}-1`, same right side.
    CorRFull,
    /// The product conjecture; evidence only.
    Conj1,
}

impl ClassicalId {
    pub const ALL: [ClassicalId; 8] = [
        ClassicalId::H2,
        ClassicalId::Liu,
        ClassicalId::Swisher,
        ClassicalId::CorHalf,
        ClassicalId::CorFull,
        ClassicalId::CorRHalf,
        ClassicalId::CorRFull,
        ClassicalId::Conj1,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassicalId::H2 => "h2",
            ClassicalId::Liu => "liu",
            ClassicalId::Swisher => "swisher",
            ClassicalId::CorHalf => "cor_half",
            ClassicalId::CorFull => "cor_full",
            ClassicalId::CorRHalf => "cor_r_half",
            ClassicalId::CorRFull => "cor_r_full",
            ClassicalId::Conj1 => "conj1",
        }
    }
}

impl fmt::Display for ClassicalId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassicalId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ClassicalId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown classical id {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalTask {
    pub id: ClassicalId,
    pub p: u64,
    /// `m` for [`ClassicalId::Liu`], `r` where the statement has one, else 1.
    pub extra: u64,
    pub modulus_exponent: u32,
    pub level: Level,
}

impl ClassicalTask {
    pub fn new(id: ClassicalId, p: u64, extra: u64) -> Result<Self> {
        require_3_mod_4(p)?;
        if extra == 0 {
            return Err(Error::InvalidParameter("m and r must be positive".into()));
        }
        let r = u32::try_from(extra).map_err(|_| Error::InvalidParameter(format!("r = {extra}")))?;
        let (modulus_exponent, level) = match id {
            ClassicalId::H2 | ClassicalId::Liu => (2, Level::Theorem),
            ClassicalId::Swisher => {
                if p == 3 {
                    return Err(Error::InvalidParameter("the statement needs p > 3".into()));
                }
                (2 * r + 3, Level::Evidence)
            }
            ClassicalId::CorHalf | ClassicalId::CorFull => (4, Level::Theorem),
            ClassicalId::CorRHalf | ClassicalId::CorRFull => (2 * r + 2, Level::Theorem),
            ClassicalId::Conj1 => (2, Level::Evidence),
        };
        Ok(ClassicalTask { id, p, extra, modulus_exponent, level })
    }

    /// Number of summands, where the statement is a sum.
    pub fn terms(&self) -> Result<Option<u64>> {
        let p = self.p;
        let pow = |e: u64| {
            u32::try_from(e)
                .ok()
                .and_then(|e| p.checked_pow(e))
                .ok_or_else(|| Error::ResourceLimit(format!("{p}^{e}")))
        };
        Ok(match self.id {
            ClassicalId::H2 => Some(p.div_ceil(2)),
            ClassicalId::Liu => Some(self.extra * p),
            ClassicalId::CorHalf => Some(pow(2)?.div_ceil(2)),
            ClassicalId::CorFull => Some(pow(2)?),
            ClassicalId::Swisher | ClassicalId::CorRHalf => Some(pow(2 * self.extra)?.div_ceil(2)),
            ClassicalId::CorRFull => Some(pow(2 * self.extra)?),
            ClassicalId::Conj1 => None,
        })
    }

    fn expected(&self) -> Result<u64> {
        let s = self.modulus_exponent;
        let modulus = prime_power_u64(self.p, s)?;
        let r = self.extra as u32;
        match self.id {
            ClassicalId::H2 | ClassicalId::Liu => Ok(0),
            ClassicalId::Swisher => Ok(pow_mod(self.p, u64::from(2 * r), modulus)),
            ClassicalId::CorHalf | ClassicalId::CorFull => corollary_rhs(self.p, 1, s),
            ClassicalId::CorRHalf | ClassicalId::CorRFull => corollary_rhs(self.p, r, s),
            ClassicalId::Conj1 => Ok(1),
        }
    }

    fn params(&self) -> Vec<(&'static str, i64)> {
        let mut out = vec![("p", self.p as i64)];
        match self.id {
            ClassicalId::Liu => out.push(("m", self.extra as i64)),
            ClassicalId::Swisher | ClassicalId::CorRHalf | ClassicalId::CorRFull | ClassicalId::Conj1 => {
                out.push(("r", self.extra as i64))
            }
            _ => {}
        }
        out.push(("s", i64::from(self.modulus_exponent)));
        out
    }
}

pub fn run_classical(task: &ClassicalTask) -> Report {
    let start = Instant::now();
    let mut report = Report::new(task.id.name(), &task.params(), task.level);
    if let Err(e) = run_into(task, &mut report) {
        report.fail_with(&e);
    }
    report.timed(start)
}

fn run_into(task: &ClassicalTask, report: &mut Report) -> Result<()> {
    let (p, s) = (task.p, task.modulus_exponent);
    if task.id == ClassicalId::Conj1 {
        let (v, unit) = conj1_product(p, task.extra as u32)?;
        report.expected = Some("valuation 0, residue 1".into());
        report.actual = Some(format!("valuation {v}, residue {unit}"));
        report.status = if (v, unit) == (0, 1) { Status::Holds } else { Status::Fails };
        return Ok(());
    }
    let n = task.terms()?.expect("sum statement");
    let modular = sum_mod(n, p, s, SumPath::Modular)?;
    let expected = task.expected()?;
    report.note(format!("sum of {n} terms mod {p}^{s}"));
    if n <= EXACT_LIMIT {
        let exact = sum_mod(n, p, s, SumPath::Exact)?;
        if exact != modular {
            report.status = Status::Fails;
            report.note(format!("exact path gives {exact}, modular path {modular}"));
            return Ok(());
        }
        report.note("exact and modular paths agree");
    }
    report.expected = Some(expected.to_string());
    report.actual = Some(modular.to_string());
    report.residue = Some(modular.to_string());
    report.status = if modular == expected { Status::Holds } else { Status::Fails };
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qseries::{q_limit_one, rhs_ratio, QLimit};
    use crate::rational::{int, rat, valuation};

    #[test]
    fn rising_examples() {
        assert_eq!(rising(&rat(1, 2), 2), rat(3, 4));
        assert_eq!(rising(&rat(7, 3), 0), int(1));
        assert_eq!(rising(&rat(3, 4), 4), rat(3465, 256));
    }

    #[test]
    fn central_term_examples() {
        assert_eq!(central_term(0), int(1));
        assert_eq!(central_term(1), rat(1, 8));
        assert_eq!(central_term(2), rat(27, 512));
    }

    #[test]
    fn sum_mod_examples() {
        for path in [SumPath::Exact, SumPath::Modular] {
            assert_eq!(sum_mod(2, 3, 2, path).unwrap(), 0);
            assert_eq!(sum_mod(1, 7, 3, path).unwrap(), 1);
            assert_eq!(sum_mod(4, 7, 2, path).unwrap(), 0);
        }
        assert!(sum_mod(3, 2, 2, SumPath::Exact).is_err());
    }

    #[test]
    fn product_examples() {
        let (v, u) = conj1_product(3, 1).unwrap();
        assert_eq!(v, 0);
        assert_eq!(BigInt::from(u), padic_residue(&rat(77, 221), 3, 2).unwrap());
        assert_eq!(product_split(0, 7, 2).unwrap(), (0, 1));
        assert_eq!(conj1_product(7, 1).unwrap().0, 0);
    }

    #[test]
    fn runner_examples() {
        let h2 = run_classical(&ClassicalTask::new(ClassicalId::H2, 7, 1).unwrap());
        assert!(h2.holds(), "{h2}");
        let liu = run_classical(&ClassicalTask::new(ClassicalId::Liu, 3, 2).unwrap());
        assert!(liu.holds(), "{liu}");
        let cor = run_classical(&ClassicalTask::new(ClassicalId::CorHalf, 3, 1).unwrap());
        assert!(cor.holds(), "{cor}");
        assert!(ClassicalTask::new(ClassicalId::H2, 5, 1).is_err());
        assert!(ClassicalTask::new(ClassicalId::Swisher, 3, 1).is_err());
    }

    #[test]
    fn q_limit_matches_corollary_side() {
        for p in [3u64, 7, 11] {
            let m = (p * p - 1) / 2;
            let QLimit::Finite(limit) = q_limit_one(&rhs_ratio(m, p * p)) else {
                panic!("finite limit expected");
            };
            let direct = int((p * p) as i64) * rising(&rat(3, 4), m) / rising(&rat(5, 4), m);
            assert_eq!(limit, direct);
        }
    }

    #[test]
    fn terms_past_half_vanish_to_third_order() {
        for p in [3u64, 7, 11, 19] {
            for k in p.div_ceil(2)..p {
                assert!(valuation(&central_term(k), p).unwrap() >= 3, "p={p} k={k}");
            }
        }
    }
}
