//! Reduction modulo a single `Φ_d^s` through the isomorphism
//! `Q[q]/(Φ_d^s) ≅ Q(ζ)[ε]/(ε^s)`, `q ↦ ζ + ε`, with `ζ` a primitive
//! `d`-th root of unity.
//!
//! Elements of `Z[ζ]` are stored as vectors in `Z[q]/(q^d - 1)` and only
//! reduced modulo `Φ_d` when tested for zero. A sum `Σ t_k` is accumulated
//! as `A/B` with `t_{k+1}/t_k = a_k/b_k`, `T ← T·a_k`, `B ← B·b_k`,
//! `A ← A·b_k + T`, so no division happens until the end. The `ε`-valuation
//! of every factor is known from its exponent, so each series only carries
//! `s + P` coefficients, where `P` bounds the pole order of any single term.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclotomic::{cyclotomic, cyclotomic_ints};
use crate::error::{Error, Result};
use crate::factored::QProduct;
use crate::poly::Poly;
use crate::qseries::HyperSum;

type Cyc = Vec<BigInt>;
type Series = Vec<Cyc>;
/// Coefficient of `ε^j` as a sparse combination of powers of `ζ`.
type Sparse = Vec<Vec<(usize, BigInt)>>;

/// Result of checking `Σ blocks ≡ 0 (mod Φ_d^s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalOutcome {
    Zero,
    /// Coefficients `c_0, …, c_{s-1}` of the sum in `Q(ζ)[ε]/(ε^s)`, each a
    /// polynomial of degree below `φ(d)` standing for its value at `ζ`.
    Nonzero(Vec<Poly>),
}

struct Ring {
    d: usize,
    len: usize,
    phi: std::sync::Arc<Vec<BigInt>>,
}

/// `C(a, j)` for `j < count`, with `a` any integer.
fn generalized_binomials(a: i64, count: usize) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(count);
    let mut c = BigInt::one();
    for j in 0..count as i64 {
        out.push(c.clone());
        c = c * BigInt::from(a - j) / BigInt::from(j + 1);
    }
    out
}

impl Ring {
    fn new(d: u64, len: usize) -> Self {
        Ring { d: d as usize, len, phi: cyclotomic_ints(d) }
    }

    fn zero_cyc(&self) -> Cyc {
        vec![BigInt::zero(); self.d]
    }

    fn zero_series(&self) -> Series {
        vec![self.zero_cyc(); self.len]
    }

    fn one_series(&self) -> Series {
        let mut s = self.zero_series();
        if self.len > 0 {
            s[0][0] = BigInt::one();
        }
        s
    }

    fn pos(&self, e: i64) -> usize {
        e.rem_euclid(self.d as i64) as usize
    }

    /// `(ζ + ε)^a`.
    fn monomial(&self, a: i64) -> Sparse {
        generalized_binomials(a, self.len)
            .into_iter()
            .enumerate()
            .map(|(j, c)| if c.is_zero() { vec![] } else { vec![(self.pos(a - j as i64), c)] })
            .collect()
    }

    /// Unit part of `1 - (ζ + ε)^e` for `e > 0`, with its `ε`-valuation.
    fn binomial(&self, e: u64) -> (i64, Sparse) {
        let ei = e as i64;
        let c = generalized_binomials(ei, self.len + 1);
        if e.is_multiple_of(self.d as u64) {
            let unit = (0..self.len)
                .map(|j| {
                    let b = &c[j + 1];
                    if b.is_zero() { vec![] } else { vec![(self.pos(ei - j as i64 - 1), -b)] }
                })
                .collect();
            (1, unit)
        } else {
            let mut unit: Sparse = Vec::with_capacity(self.len);
            for (j, b) in c.iter().take(self.len).enumerate() {
                if j == 0 {
                    unit.push(vec![(0, BigInt::one()), (self.pos(ei), BigInt::from(-1))]);
                } else if b.is_zero() {
                    unit.push(vec![]);
                } else {
                    unit.push(vec![(self.pos(ei - j as i64), -b)]);
                }
            }
            (0, unit)
        }
    }

    fn mul_sparse(&self, s: &Series, f: &Sparse) -> Series {
        let mut out = self.zero_series();
        for (i, si) in s.iter().enumerate() {
            if si.iter().all(Zero::is_zero) {
                continue;
            }
            for (t, terms) in f.iter().enumerate().take(self.len - i) {
                let slot = &mut out[i + t];
                for (p, c) in terms {
                    for (k, v) in si.iter().enumerate() {
                        if !v.is_zero() {
                            let idx = (k + p) % self.d;
                            slot[idx] += v * c;
                        }
                    }
                }
            }
        }
        out
    }

    fn mul_dense(&self, a: &Series, b: &Series) -> Series {
        let mut out = self.zero_series();
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate().take(self.len - i) {
                let slot = &mut out[i + j];
                for (k, x) in ai.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (l, y) in bj.iter().enumerate() {
                        if !y.is_zero() {
                            slot[(k + l) % self.d] += x * y;
                        }
                    }
                }
            }
        }
        out
    }

    fn scale(&self, s: &mut Series, c: &BigInt) {
        if c.is_one() {
            return;
        }
        for cyc in s.iter_mut() {
            for v in cyc.iter_mut() {
                *v *= c;
            }
        }
    }

    fn add_shifted(&self, a: &mut Series, b: &Series, offset: usize) {
        for (j, bj) in b.iter().enumerate() {
            if offset + j >= self.len {
                break;
            }
            for (x, y) in a[offset + j].iter_mut().zip(bj) {
                *x += y;
            }
        }
    }

    /// Multiplies `s` by the numerator (or denominator) part of `prod`,
    /// adding the part's `ε`-valuation to `val`.
    fn apply(&self, s: &mut Series, val: &mut i64, prod: &QProduct, numerator: bool) {
        let scalar = if numerator { prod.coeff().numer() } else { prod.coeff().denom() };
        self.scale(s, scalar);
        if numerator && prod.shift() != 0 {
            *s = self.mul_sparse(s, &self.monomial(prod.shift()));
        }
        for (&e, &m) in prod.factors() {
            let power = if numerator { m } else { -m };
            if power <= 0 {
                continue;
            }
            let (v, unit) = self.binomial(e);
            for _ in 0..power {
                *s = self.mul_sparse(s, &unit);
                *val += v;
            }
        }
    }

    /// Remainder of `c` modulo `Φ_d`, of length `φ(d)`.
    fn reduce(&self, c: &Cyc) -> Vec<BigInt> {
        let phi = &self.phi;
        let deg = phi.len() - 1;
        let mut r = c.clone();
        for i in (deg..r.len()).rev() {
            let lead = std::mem::take(&mut r[i]);
            if lead.is_zero() {
                continue;
            }
            for (j, pj) in phi[..deg].iter().enumerate() {
                if !pj.is_zero() {
                    r[i - deg + j] -= &lead * pj;
                }
            }
        }
        r.truncate(deg);
        r
    }

    fn is_zero_at_zeta(&self, c: &Cyc) -> bool {
        c.iter().all(Zero::is_zero) || self.reduce(c).iter().all(Zero::is_zero)
    }

    /// Returns `(A, B)` with `Σ t_k = ε^{-p} A / B` and `B` a unit.
    fn block(&self, sum: &HyperSum, p: i64) -> (Series, Series) {
        let mut a = self.zero_series();
        let mut b = self.one_series();
        if sum.first.is_zero() {
            return (a, b);
        }
        let mut t = self.one_series();
        let (mut tv, mut bv) = (0i64, 0i64);
        self.apply(&mut t, &mut tv, &sum.first, true);
        self.apply(&mut b, &mut bv, &sum.first, false);
        self.add_shifted(&mut a, &t, offset(tv, bv, p));
        for r in &sum.ratios {
            if r.is_zero() {
                break;
            }
            let mut ignored = 0;
            self.apply(&mut t, &mut tv, r, true);
            self.apply(&mut b, &mut bv, r, false);
            self.apply(&mut a, &mut ignored, r, false);
            self.add_shifted(&mut a, &t, offset(tv, bv, p));
        }
        (a, b)
    }
}

fn offset(tv: i64, bv: i64, p: i64) -> usize {
    let o = tv - bv + p;
    debug_assert!(o >= 0, "pole allowance too small");
    o as usize
}

/// Most negative `Φ_d`-valuation among the terms, as a nonnegative pole order.
fn pole_allowance(sum: &HyperSum, d: u64) -> i64 {
    if sum.first.is_zero() {
        return 0;
    }
    let mut v = sum.first.phi_valuation(d);
    let mut low = v;
    for r in &sum.ratios {
        if r.is_zero() {
            break;
        }
        v += r.phi_valuation(d);
        low = low.min(v);
    }
    (-low).max(0)
}

/// Decides whether `Σ blocks` is divisible by `Φ_d^s`.
///
/// Fails with `NotCoprime` when the sum has a pole at `ζ_d`.
pub fn check_component(blocks: &[HyperSum], d: u64, s: u32) -> Result<LocalOutcome> {
    if d < 2 || s == 0 {
        return Err(Error::InvalidParameter(format!("local component Phi_{d}^{s}")));
    }
    let p = blocks.iter().map(|b| pole_allowance(b, d)).max().unwrap_or(0);
    let len = s as usize + p as usize;
    let ring = Ring::new(d, len);
    let parts: Vec<(Series, Series)> = blocks.iter().map(|b| ring.block(b, p)).collect();

    let mut num = ring.zero_series();
    let mut den = ring.one_series();
    for (i, (a, _)) in parts.iter().enumerate() {
        let mut term = a.clone();
        for (j, (_, b)) in parts.iter().enumerate() {
            if i != j {
                term = ring.mul_dense(&term, b);
            }
        }
        ring.add_shifted(&mut num, &term, 0);
    }
    for (_, b) in &parts {
        den = ring.mul_dense(&den, b);
    }

    let p = p as usize;
    if let Some(j) = (0..p).find(|&j| !ring.is_zero_at_zeta(&num[j])) {
        return Err(Error::NotCoprime { gcd: format!("Phi_{d}^{}", p - j) });
    }
    if num[p..].iter().all(|c| ring.is_zero_at_zeta(c)) {
        return Ok(LocalOutcome::Zero);
    }
    Ok(LocalOutcome::Nonzero(divide_series(&ring, &num[p..], &den, s as usize)?))
}

fn to_field(ring: &Ring, c: &Cyc) -> Poly {
    Poly::from_bigints(ring.reduce(c))
}

/// `num / den` in `Q(ζ)[ε]/(ε^s)`.
fn divide_series(ring: &Ring, num: &[Cyc], den: &[Cyc], s: usize) -> Result<Vec<Poly>> {
    let phi = cyclotomic(ring.d as u64);
    let inv = to_field(ring, &den[0]).quotient_inverse(&phi)?;
    let den: Vec<Poly> = den.iter().take(s).map(|c| to_field(ring, c)).collect();
    let mut out: Vec<Poly> = Vec::with_capacity(s);
    for j in 0..s {
        let mut c = to_field(ring, &num[j]);
        for i in 1..=j {
            c = &c - &(&den[i] * &out[j - i]);
        }
        out.push((&c * &inv).rem(&phi)?);
    }
    Ok(out)
}

/// The polynomial `R` of degree below `s·φ(d)` whose image in
/// `Q(ζ)[ε]/(ε^s)` has the given coefficients.
pub fn lift_component(d: u64, coeffs: &[Poly]) -> Result<Poly> {
    let phi = cyclotomic(d);
    let dphi = phi.derivative();
    let dphi_inv = dphi.quotient_inverse(&phi)?;
    let mut r = Poly::zero();
    let mut phi_pow = Poly::one();
    let mut inv_pow = Poly::one();
    for (j, c) in coeffs.iter().enumerate() {
        // [ε^j] R(ζ + ε) = R^{(j)}(ζ) / j!
        let mut taylor = r.clone();
        let mut fact = BigInt::one();
        for i in 0..j {
            taylor = taylor.derivative();
            fact *= BigInt::from(i + 1);
        }
        let taylor = taylor.scale(&crate::rational::Rational::new(BigInt::one(), fact)).rem(&phi)?;
        let h = (&(c - &taylor) * &inv_pow).rem(&phi)?;
        r = &r + &(&phi_pow * &h);
        phi_pow = &phi_pow * &phi;
        inv_pow = (&inv_pow * &dphi_inv).rem(&phi)?;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factored::Sign;
    use crate::qseries::{Family, HyperSum};
    use crate::rational::int;

    fn direct(blocks: &[HyperSum], d: u64, s: u32) -> Poly {
        let terms: Vec<QProduct> = blocks.iter().flat_map(|b| b.terms()).collect();
        let f = crate::factored::sum_to_ratfunc(&terms);
        let m = cyclotomic(d).pow(s);
        (f.num() * &f.den().quotient_inverse(&m).unwrap()).rem(&m).unwrap()
    }

    fn lifted(blocks: &[HyperSum], d: u64, s: u32) -> Poly {
        match check_component(blocks, d, s).unwrap() {
            LocalOutcome::Zero => Poly::zero(),
            LocalOutcome::Nonzero(c) => lift_component(d, &c).unwrap(),
        }
    }

    #[test]
    fn generalized_binomial_values() {
        let b: Vec<i64> = generalized_binomials(-2, 4).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(b, vec![1, -2, 3, -4]);
        let b: Vec<i64> = generalized_binomials(3, 5).iter().map(|x| x.try_into().unwrap()).collect();
        assert_eq!(b, vec![1, 3, 3, 1, 0]);
    }

    #[test]
    fn single_products_match_direct_reduction() {
        for d in [2u64, 3, 4, 6, 9] {
            for s in 1..=3 {
                let mut t = QProduct::constant(int(3));
                t.mul_factor(Sign::Plus, 7, 1).unwrap();
                t.mul_factor(Sign::Plus, 5, -1).unwrap();
                t.mul_monomial(-4);
                t.mul_factor(Sign::Minus, 2, 2).unwrap();
                let blocks = [HyperSum::single(t)];
                assert_eq!(lifted(&blocks, d, s), direct(&blocks, d, s), "d={d} s={s}");
            }
        }
    }

    #[test]
    fn partial_sums_match_direct_reduction() {
        for family in [Family::T1, Family::C2] {
            for n in 1..=12u64 {
                let blocks = [HyperSum::partial(family, n)];
                for (d, s) in [(3u64, 2u32), (5, 2), (7, 1), (9, 2), (4, 3)] {
                    match check_component(&blocks, d, s) {
                        Ok(_) => assert_eq!(lifted(&blocks, d, s), direct(&blocks, d, s)),
                        Err(Error::NotCoprime { .. }) => {
                            let f = blocks[0].to_ratfunc();
                            assert!(f.den().rem(&cyclotomic(d)).unwrap().is_zero());
                        }
                        Err(e) => panic!("{e}"),
                    }
                }
            }
        }
    }

    #[test]
    fn detects_zero_sum() {
        let blocks = [HyperSum::partial(Family::T1, 3)];
        assert_eq!(check_component(&blocks, 3, 2).unwrap(), LocalOutcome::Zero);
    }

    #[test]
    fn pole_is_reported() {
        let mut t = QProduct::one();
        t.mul_factor(Sign::Plus, 3, -1).unwrap();
        let err = check_component(&[HyperSum::single(t)], 3, 1).unwrap_err();
        assert!(matches!(err, Error::NotCoprime { .. }));
    }
}
