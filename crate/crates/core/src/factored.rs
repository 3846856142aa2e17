//! Products `c · q^a · ∏_{e>0} (1 - q^e)^{m_e}` with integer multiplicities.
//!
//! Every summand, right-hand side and Pochhammer quotient in this crate has
//! this shape. Writing `1 - q^e = ∏_{d|e} Ψ_d` (with `Ψ_d = Φ_d` for `d >= 2`
//! and `Ψ_1 = 1 - q`) turns a product into an exponent vector over the
//! irreducible `Ψ_d`, so reduced forms and common denominators are exact
//! integer bookkeeping.

use std::collections::BTreeMap;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cyclotomic::{divisors, mobius};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::rational::Rational;

/// Sign of the `q`-power inside a factor `1 - sign·q^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QProduct {
    coeff: Rational,
    shift: i64,
    factors: BTreeMap<u64, i64>,
}

impl Default for QProduct {
    fn default() -> Self {
        QProduct::one()
    }
}

impl QProduct {
    pub fn one() -> Self {
        QProduct::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        QProduct { coeff: c, shift: 0, factors: BTreeMap::new() }
    }

    pub fn monomial(shift: i64) -> Self {
        QProduct { shift, ..QProduct::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Net multiplicity of each `1 - q^e`.
    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    fn make_zero(&mut self) {
        self.coeff = Rational::zero();
        self.shift = 0;
        self.factors.clear();
    }

    fn bump(&mut self, e: u64, by: i64) {
        let slot = self.factors.entry(e).or_insert(0);
        *slot += by;
        if *slot == 0 {
            self.factors.remove(&e);
        }
    }

    pub fn scale(&mut self, c: &Rational) {
        if c.is_zero() {
            self.make_zero();
        } else if !self.is_zero() {
            self.coeff *= c;
        }
    }

    pub fn mul_monomial(&mut self, a: i64) {
        if !self.is_zero() {
            self.shift += a;
        }
    }

    /// Multiplies by `(1 - sign·q^e)^power`; a negative power divides.
    pub fn mul_factor(&mut self, sign: Sign, e: i64, power: i64) -> Result<()> {
        if power == 0 {
            return Ok(());
        }
        if self.is_zero() {
            if power < 0 && sign == Sign::Plus && e == 0 {
                return Err(Error::DegenerateParameters("division by 1 - q^0".into()));
            }
            return Ok(());
        }
        match (sign, e.signum()) {
            (Sign::Plus, 0) => {
                if power < 0 {
                    return Err(Error::DegenerateParameters("division by 1 - q^0".into()));
                }
                self.make_zero();
            }
            (Sign::Plus, 1) => self.bump(e.unsigned_abs(), power),
            (Sign::Plus, _) => {
                // 1 - q^e = -q^e (1 - q^{-e})
                if power % 2 != 0 {
                    self.coeff = -&self.coeff;
                }
                self.shift += e * power;
                self.bump(e.unsigned_abs(), power);
            }
            (Sign::Minus, 0) => {
                let two = Rational::from_integer(BigInt::from(2));
                let f = num_traits::pow::pow(two, power.unsigned_abs() as usize);
                if power > 0 {
                    self.coeff *= f;
                } else {
                    self.coeff /= f;
                }
            }
            (Sign::Minus, 1) => {
                // 1 + q^e = (1 - q^{2e}) / (1 - q^e)
                let e = e.unsigned_abs();
                self.bump(2 * e, power);
                self.bump(e, -power);
            }
            (Sign::Minus, _) => {
                // 1 + q^e = q^e (1 + q^{-e})
                self.shift += e * power;
                return self.mul_factor(Sign::Minus, -e, power);
            }
        }
        Ok(())
    }

    /// Multiplies by `(sign·q^x; q^d)_k ^ power`.
    pub fn mul_qpoch(&mut self, sign: Sign, x: i64, d: i64, k: u64, power: i64) -> Result<()> {
        for j in 0..k as i64 {
            self.mul_factor(sign, x + j * d, power)?;
        }
        Ok(())
    }

    /// Multiplies by `[n]_{q^b}^power = ((1 - q^{nb}) / (1 - q^b))^power`.
    pub fn mul_qint(&mut self, n: u64, b: u64, power: i64) {
        if n == 0 {
            if power > 0 {
                self.make_zero();
            }
            return;
        }
        if self.is_zero() {
            return;
        }
        self.bump(n * b, power);
        self.bump(b, -power);
    }

    pub fn inverse(&self) -> Result<QProduct> {
        if self.is_zero() {
            return Err(Error::DegenerateParameters("inverse of zero product".into()));
        }
        Ok(QProduct {
            coeff: self.coeff.recip(),
            shift: -self.shift,
            factors: self.factors.iter().map(|(&e, &m)| (e, -m)).collect(),
        })
    }

    /// Exponent vector over `Ψ_d`; this is the fully reduced form.
    pub fn psi_exponents(&self) -> BTreeMap<u64, i64> {
        let mut out: BTreeMap<u64, i64> = BTreeMap::new();
        for (&e, &m) in &self.factors {
            for d in divisors(e) {
                *out.entry(d).or_insert(0) += m;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Multiplicity of `Φ_n` (`n >= 2`) in the reduced product; negative for a pole.
    pub fn phi_valuation(&self, n: u64) -> i64 {
        self.factors
            .iter()
            .filter(|(e, _)| *e % n == 0)
            .map(|(_, m)| m)
            .sum()
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        sum_to_ratfunc(std::slice::from_ref(self))
    }
}

impl Mul for &QProduct {
    type Output = QProduct;
    fn mul(self, rhs: &QProduct) -> QProduct {
        if self.is_zero() || rhs.is_zero() {
            return QProduct::constant(Rational::zero());
        }
        let mut out = self.clone();
        out.coeff *= &rhs.coeff;
        out.shift += rhs.shift;
        for (&e, &m) in &rhs.factors {
            out.bump(e, m);
        }
        out
    }
}

/// Expands `∏ Ψ_d^{g_d}` (all `g_d >= 0`) as integer coefficients.
pub(crate) fn expand_psi_product(exps: &BTreeMap<u64, i64>) -> Vec<BigInt> {
    let mut binomial: BTreeMap<u64, i64> = BTreeMap::new();
    for (&d, &g) in exps {
        debug_assert!(g >= 0);
        for x in divisors(d) {
            let mu = mobius(d / x);
            if mu != 0 {
                *binomial.entry(x).or_insert(0) += g * mu;
            }
        }
    }
    let mut acc = vec![BigInt::one()];
    for (&x, &h) in &binomial {
        for _ in 0..h.max(0) {
            mul_binomial(&mut acc, x as usize);
        }
    }
    for (&x, &h) in &binomial {
        for _ in 0..(-h).max(0) {
            assert!(div_binomial(&mut acc, x as usize), "Ψ-product must be a polynomial");
        }
    }
    acc
}

/// `p ← p · (1 - q^x)`.
pub(crate) fn mul_binomial(p: &mut Vec<BigInt>, x: usize) {
    let old = p.len();
    p.resize(old + x, BigInt::zero());
    for i in (x..old + x).rev() {
        let (lo, hi) = p.split_at_mut(i);
        if !lo[i - x].is_zero() {
            hi[0] -= &lo[i - x];
        }
    }
}

/// `p ← p / (1 - q^x)` if exact; leaves `p` untouched and returns false otherwise.
pub(crate) fn div_binomial(p: &mut Vec<BigInt>, x: usize) -> bool {
    if p.is_empty() {
        return true;
    }
    if p.len() <= x {
        return false;
    }
    let qlen = p.len() - x;
    let mut q: Vec<BigInt> = Vec::with_capacity(qlen);
    for i in 0..qlen {
        let mut c = p[i].clone();
        if i >= x {
            c += &q[i - x];
        }
        q.push(c);
    }
    // remaining coefficients: p_i = -q_{i-x}
    for i in qlen..p.len() {
        let expect = if i >= x && i - x < qlen { -&q[i - x] } else { BigInt::zero() };
        if p[i] != expect {
            return false;
        }
    }
    *p = q;
    true
}

/// `p ← p / Ψ_d` if exact.
fn div_psi(p: &mut Vec<BigInt>, d: u64) -> bool {
    let mut trial = p.clone();
    let divs = divisors(d);
    for &x in &divs {
        if mobius(d / x) == -1 {
            mul_binomial(&mut trial, x as usize);
        }
    }
    for &x in &divs {
        if mobius(d / x) == 1 && !div_binomial(&mut trial, x as usize) {
            return false;
        }
    }
    *p = trial;
    true
}

/// Lowest common denominator data of a list of products.
pub(crate) struct CommonDenominator {
    /// Exponent of each `Ψ_d` in the denominator.
    pub psi: BTreeMap<u64, i64>,
    /// Smallest `q`-shift among the terms.
    pub min_shift: i64,
    /// LCM of the rational coefficients' denominators.
    pub scalar: BigInt,
}

pub(crate) fn common_denominator(terms: &[(BTreeMap<u64, i64>, &QProduct)]) -> CommonDenominator {
    let mut psi: BTreeMap<u64, i64> = BTreeMap::new();
    let mut min_shift = i64::MAX;
    let mut scalar = BigInt::one();
    for (exps, t) in terms {
        for (&d, &f) in exps {
            if f < 0 {
                let slot = psi.entry(d).or_insert(0);
                *slot = (*slot).max(-f);
            }
        }
        min_shift = min_shift.min(t.shift);
        scalar = scalar.lcm(t.coeff.denom());
    }
    CommonDenominator { psi, min_shift, scalar }
}

/// Numerator of `Σ terms` over the lowest common denominator.
///
/// Returns `(lcd, P)` with `Σ terms = q^{lcd.min_shift} · P / (lcd.scalar · ∏ Ψ_d^{lcd.psi[d]})`.
/// `None` when every term is zero.
pub(crate) fn cleared_numerator(terms: &[QProduct]) -> Option<(CommonDenominator, Vec<BigInt>)> {
    let terms: Vec<(BTreeMap<u64, i64>, &QProduct)> = terms
        .iter()
        .filter(|t| !t.is_zero())
        .map(|t| (t.psi_exponents(), t))
        .collect();
    if terms.is_empty() {
        return None;
    }
    let lcd = common_denominator(&terms);
    let mut num: Vec<BigInt> = Vec::new();
    for (exps, t) in &terms {
        let mut cleared = lcd.psi.clone();
        for (&d, &f) in exps {
            *cleared.entry(d).or_insert(0) += f;
        }
        cleared.retain(|_, v| *v != 0);
        let body = expand_psi_product(&cleared);
        let scalar = t.coeff.numer() * (&lcd.scalar / t.coeff.denom());
        let offset = (t.shift - lcd.min_shift) as usize;
        if num.len() < body.len() + offset {
            num.resize(body.len() + offset, BigInt::zero());
        }
        for (i, c) in body.iter().enumerate() {
            if !c.is_zero() {
                num[offset + i] += &scalar * c;
            }
        }
    }
    while num.last().is_some_and(Zero::is_zero) {
        num.pop();
    }
    Some((lcd, num))
}

/// Exact sum of products as a reduced rational function.
pub fn sum_to_ratfunc(terms: &[QProduct]) -> RatFunc {
    let Some((lcd, mut num)) = cleared_numerator(terms) else {
        return RatFunc::zero();
    };
    if num.is_empty() {
        return RatFunc::zero();
    }

    let mut den_psi = lcd.psi;
    for (&d, slot) in den_psi.iter_mut() {
        while *slot > 0 && div_psi(&mut num, d) {
            *slot -= 1;
        }
    }
    den_psi.retain(|_, v| *v != 0);

    // q-power bookkeeping: the sum is q^{min_shift} · num / (scalar · den)
    let low = num.iter().position(|c| !c.is_zero()).expect("nonzero numerator");
    let mut q_den = 0usize;
    let mut q_num = 0usize;
    if lcd.min_shift < 0 {
        let k = lcd.min_shift.unsigned_abs() as usize;
        let cancel = k.min(low);
        num.drain(..cancel);
        q_den = k - cancel;
    } else {
        q_num = lcd.min_shift as usize;
    }
    let den_ints = expand_psi_product(&den_psi);
    let num_poly = Poly::from_bigints(num).shift(q_num);
    let mut den_poly = Poly::from_bigints(den_ints).shift(q_den);
    den_poly = den_poly.scale(&Rational::from_integer(lcd.scalar));
    RatFunc::from_coprime(num_poly, den_poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn factor_normalization() {
        // (1 + q^3) = (1 - q^6)/(1 - q^3)
        let mut t = QProduct::one();
        t.mul_factor(Sign::Minus, 3, 1).unwrap();
        assert_eq!(t.to_ratfunc(), RatFunc::from_poly(Poly::from_ints(&[1, 0, 0, 1])));
        // (1 - q^{-2}) = -q^{-2}(1 - q^2)
        let mut t = QProduct::one();
        t.mul_factor(Sign::Plus, -2, 1).unwrap();
        let expected = RatFunc::new(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[0, 0, 1])).unwrap();
        assert_eq!(t.to_ratfunc(), expected);
        // 1 + q^0 = 2, 1 - q^0 = 0
        let mut t = QProduct::one();
        t.mul_factor(Sign::Minus, 0, 1).unwrap();
        assert_eq!(t.coeff(), &int(2));
        t.mul_factor(Sign::Plus, 0, 1).unwrap();
        assert!(t.is_zero());
        assert!(QProduct::one().mul_factor(Sign::Plus, 0, -1).is_err());
    }

    #[test]
    fn binomial_division_detects_inexact() {
        let mut p = vec![BigInt::from(1), BigInt::from(0), BigInt::from(-1)];
        assert!(div_binomial(&mut p, 1));
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(1)]);
        let mut p = vec![BigInt::from(1), BigInt::from(1)];
        assert!(!div_binomial(&mut p, 1));
        assert_eq!(p, vec![BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn sums_reduce_fully() {
        // q/(1-q) + 1 = 1/(1-q)
        let mut a = QProduct::monomial(1);
        a.mul_factor(Sign::Plus, 1, -1).unwrap();
        let s = sum_to_ratfunc(&[a, QProduct::one()]);
        assert_eq!(s, RatFunc::new(Poly::one(), Poly::from_ints(&[1, -1])).unwrap());

        // (1 - q^4)/(1 - q^2) - q^2 = 1
        let mut b = QProduct::one();
        b.mul_factor(Sign::Plus, 4, 1).unwrap();
        b.mul_factor(Sign::Plus, 2, -1).unwrap();
        let mut c = QProduct::monomial(2);
        c.scale(&int(-1));
        assert_eq!(sum_to_ratfunc(&[b, c]), RatFunc::one());

        let mut h = QProduct::constant(rat(1, 2));
        h.mul_monomial(-3);
        assert_eq!(
            h.to_ratfunc(),
            RatFunc::new(Poly::constant(rat(1, 2)), Poly::from_ints(&[0, 0, 0, 1])).unwrap()
        );
    }
}
