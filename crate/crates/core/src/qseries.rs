//! q-shifted factorials, q-integers, the summand families, their partial
//! sums, and the right-hand sides of the congruences.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::factored::{sum_to_ratfunc, QProduct, Sign};
use crate::poly::{LaurentPoly, Poly};
use crate::ratfunc::RatFunc;
use crate::rational::Rational;

/// `(q^x; q^d)_k = ∏_{j<k} (1 - q^{x + jd})`.
pub fn qpoch(x: i64, d: u64, k: u64) -> LaurentPoly {
    let mut acc = LaurentPoly::from_poly(Poly::one());
    for j in 0..k as i64 {
        let e = x + j * d as i64;
        let factor = match e.signum() {
            0 => return LaurentPoly::from_poly(Poly::zero()),
            1 => LaurentPoly::from_poly(Poly::one_minus_power(e as usize)),
            // 1 - q^e = q^e (q^{-e} - 1)
            _ => LaurentPoly::new(-Poly::one_minus_power(e.unsigned_abs() as usize), e),
        };
        acc = &acc * &factor;
    }
    acc
}

/// `[n]_{q^b} = 1 + q^b + ... + q^{(n-1)b}`.
pub fn qint(n: u64, b: u64) -> Poly {
    let b = b as usize;
    let mut coeffs = vec![Rational::zero(); (n as usize).saturating_sub(1) * b + 1];
    for j in 0..n as usize {
        coeffs[j * b] = Rational::one();
    }
    Poly::from_coeffs(coeffs)
}

/// The two summand families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `(1+q^{4k+1}) (q^2;q^4)_k^3 / ((1+q) (q^4;q^4)_k^3) · q^k`
    T1,
    /// `(q;q^2)_k^2 (q^2;q^4)_k / ((q^2;q^2)_k^2 (q^4;q^4)_k) · q^{2k}`
    C2,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::T1 => "T1",
            Family::C2 => "C2",
        })
    }
}

const NONZERO: &str = "family factors never vanish";

/// The `k`-th summand in factored form.
pub fn summand_product(family: Family, k: u64) -> QProduct {
    let mut t = QProduct::one();
    let ki = k as i64;
    match family {
        Family::T1 => {
            t.mul_factor(Sign::Minus, 4 * ki + 1, 1).expect(NONZERO);
            t.mul_factor(Sign::Minus, 1, -1).expect(NONZERO);
            t.mul_qpoch(Sign::Plus, 2, 4, k, 3).expect(NONZERO);
            t.mul_qpoch(Sign::Plus, 4, 4, k, -3).expect(NONZERO);
            t.mul_monomial(ki);
        }
        Family::C2 => {
            t.mul_qpoch(Sign::Plus, 1, 2, k, 2).expect(NONZERO);
            t.mul_qpoch(Sign::Plus, 2, 4, k, 1).expect(NONZERO);
            t.mul_qpoch(Sign::Plus, 2, 2, k, -2).expect(NONZERO);
            t.mul_qpoch(Sign::Plus, 4, 4, k, -1).expect(NONZERO);
            t.mul_monomial(2 * ki);
        }
    }
    t
}

/// `summand(k+1) / summand(k)`.
pub fn term_ratio(family: Family, k: u64) -> QProduct {
    let mut r = QProduct::one();
    let ki = k as i64;
    match family {
        Family::T1 => {
            r.mul_factor(Sign::Minus, 4 * ki + 5, 1).expect(NONZERO);
            r.mul_factor(Sign::Minus, 4 * ki + 1, -1).expect(NONZERO);
            r.mul_factor(Sign::Plus, 4 * ki + 2, 3).expect(NONZERO);
            r.mul_factor(Sign::Plus, 4 * ki + 4, -3).expect(NONZERO);
            r.mul_monomial(1);
        }
        Family::C2 => {
            r.mul_factor(Sign::Plus, 2 * ki + 1, 2).expect(NONZERO);
            r.mul_factor(Sign::Plus, 4 * ki + 2, 1).expect(NONZERO);
            r.mul_factor(Sign::Plus, 2 * ki + 2, -2).expect(NONZERO);
            r.mul_factor(Sign::Plus, 4 * ki + 4, -1).expect(NONZERO);
            r.mul_monomial(2);
        }
    }
    r
}

pub fn summand(family: Family, k: u64) -> RatFunc {
    summand_product(family, k).to_ratfunc()
}

/// A finite sum `Σ t_k` given by its first term and successive term ratios.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperSum {
    pub first: QProduct,
    pub ratios: Vec<QProduct>,
}

impl HyperSum {
    pub fn single(term: QProduct) -> Self {
        HyperSum { first: term, ratios: Vec::new() }
    }

    /// `Σ_{k<n} summand(family, k)`.
    pub fn partial(family: Family, n: u64) -> Self {
        assert!(n >= 1, "a partial sum needs at least one term");
        HyperSum {
            first: summand_product(family, 0),
            ratios: (0..n - 1).map(|k| term_ratio(family, k)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.ratios.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn terms(&self) -> Vec<QProduct> {
        let mut out = Vec::with_capacity(self.len());
        let mut cur = self.first.clone();
        out.push(cur.clone());
        for r in &self.ratios {
            cur = &cur * r;
            out.push(cur.clone());
        }
        out
    }

    /// Multiplies every term by `c · q^shift`.
    pub fn scaled(&self, c: &Rational, shift: i64) -> Self {
        let mut first = self.first.clone();
        first.scale(c);
        first.mul_monomial(shift);
        HyperSum { first, ratios: self.ratios.clone() }
    }

    pub fn to_ratfunc(&self) -> RatFunc {
        sum_to_ratfunc(&self.terms())
    }
}

/// Fully reduced `Σ_{k=0}^{n-1} summand(family, k)`.
pub fn partial_sum(family: Family, n: u64) -> RatFunc {
    HyperSum::partial(family, n).to_ratfunc()
}

/// `∏(1 - q^{a_i}) / ∏(1 - q^{b_j}) · q^{shift} · ∏ [n_l]_{q^{base_l}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRatio {
    pub numerator_exponents: Vec<i64>,
    pub denominator_exponents: Vec<i64>,
    pub monomial_shift: i64,
    pub qint_factors: Vec<(u64, u64)>,
}

/// `[n_power]_{q^2} (q^3;q^4)_M / (q^5;q^4)_M · q^{-M}`.
pub fn rhs_ratio(m: u64, n_power: u64) -> FactorRatio {
    rhs_ratio_with(m, n_power, 2, -(m as i64))
}

/// Same Pochhammer quotient with a chosen q-integer base and monomial.
pub fn rhs_ratio_with(m: u64, n_power: u64, qint_base: u64, shift: i64) -> FactorRatio {
    let m = m as i64;
    FactorRatio {
        numerator_exponents: (1..=m).map(|k| 4 * k - 1).collect(),
        denominator_exponents: (1..=m).map(|k| 4 * k + 1).collect(),
        monomial_shift: shift,
        qint_factors: vec![(n_power, qint_base)],
    }
}

impl FactorRatio {
    pub fn to_product(&self) -> QProduct {
        let mut t = QProduct::monomial(self.monomial_shift);
        for &e in &self.numerator_exponents {
            t.mul_factor(Sign::Plus, e, 1).expect("exponents are nonzero");
        }
        for &e in &self.denominator_exponents {
            t.mul_factor(Sign::Plus, e, -1).expect("exponents are nonzero");
        }
        for &(n, b) in &self.qint_factors {
            t.mul_qint(n, b, 1);
        }
        t
    }

    pub fn expand(&self) -> RatFunc {
        self.to_product().to_ratfunc()
    }

    /// The same ratio without its q-integer factors.
    pub fn without_qints(&self) -> FactorRatio {
        FactorRatio { qint_factors: Vec::new(), ..self.clone() }
    }
}

/// Value of a [`FactorRatio`] as `q → 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QLimit {
    Finite(Rational),
    /// More numerator than denominator factors.
    Zero,
    /// More denominator than numerator factors.
    Infinite,
}

/// Each `(1-q^a)/(1-q^b)` tends to `a/b` and `[n]_{q^b}` to `n`.
pub fn q_limit_one(r: &FactorRatio) -> QLimit {
    use std::cmp::Ordering;
    match r.numerator_exponents.len().cmp(&r.denominator_exponents.len()) {
        Ordering::Greater => return QLimit::Zero,
        Ordering::Less => return QLimit::Infinite,
        Ordering::Equal => {}
    }
    let num: BigInt = r.numerator_exponents.iter().map(|&e| BigInt::from(e)).product();
    let den: BigInt = r.denominator_exponents.iter().map(|&e| BigInt::from(e)).product();
    let q: BigInt = r.qint_factors.iter().map(|&(n, _)| BigInt::from(n)).product();
    QLimit::Finite(Rational::new(num * q, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn qpoch_examples() {
        assert_eq!(qpoch(2, 4, 2), LaurentPoly::from_poly(p(&[1, 0, -1, 0, 0, 0, -1, 0, 1])));
        assert_eq!(qpoch(7, 3, 0), LaurentPoly::from_poly(Poly::one()));
        // (1 - q^{-2})(1 - q^2) = q^{-2} · (-(1 - q^2)^2)
        let got = qpoch(-2, 4, 2);
        assert_eq!(got.shift(), -2);
        assert_eq!(got.body(), &(-Poly::one_minus_power(2).pow(2)));
        assert!(qpoch(-4, 4, 2).is_zero());
    }

    #[test]
    fn qint_examples() {
        assert_eq!(qint(3, 2), p(&[1, 0, 1, 0, 1]));
        assert_eq!(qint(1, 5), Poly::one());
        assert_eq!(qint(9, 2).eval(&int(1)), int(9));
        let (quot, rem) = Poly::one_minus_power(18).divrem(&Poly::one_minus_power(2)).unwrap();
        assert!(rem.is_zero());
        assert_eq!(quot, qint(9, 2));
    }

    #[test]
    fn summand_examples() {
        assert_eq!(summand(Family::T1, 0), RatFunc::one());
        assert_eq!(summand(Family::C2, 0), RatFunc::one());
        let num = &(&p(&[1, 0, 0, 0, 0, 1]) * &Poly::one_minus_power(2).pow(3)) * &Poly::q();
        let den = &p(&[1, 1]) * &Poly::one_minus_power(4).pow(3);
        assert_eq!(summand(Family::T1, 1), RatFunc::new(num, den).unwrap());
    }

    #[test]
    fn partial_sum_examples() {
        assert_eq!(partial_sum(Family::T1, 1), RatFunc::one());
        assert_eq!(
            partial_sum(Family::T1, 2),
            &RatFunc::one() + &summand(Family::T1, 1)
        );
    }

    #[test]
    fn rhs_ratio_examples() {
        let r = rhs_ratio(4, 9);
        assert_eq!(r.numerator_exponents, vec![3, 7, 11, 15]);
        assert_eq!(r.denominator_exponents, vec![5, 9, 13, 17]);
        assert_eq!(r.monomial_shift, -4);
        let manual = {
            let mut t = QProduct::monomial(-4);
            t.mul_qpoch(Sign::Plus, 3, 4, 4, 1).unwrap();
            t.mul_qpoch(Sign::Plus, 5, 4, 4, -1).unwrap();
            t.mul_qint(9, 2, 1);
            t.to_ratfunc()
        };
        assert_eq!(r.expand(), manual);
        assert_eq!(rhs_ratio(0, 5).expand(), RatFunc::from_poly(qint(5, 2)));
    }

    #[test]
    fn limit_examples() {
        assert_eq!(q_limit_one(&rhs_ratio(4, 9).without_qints()), QLimit::Finite(rat(77, 221)));
        assert_eq!(q_limit_one(&rhs_ratio(0, 1).without_qints()), QLimit::Finite(int(1)));
        assert_eq!(q_limit_one(&rhs_ratio(0, 9)), QLimit::Finite(int(9)));
        let unbalanced = FactorRatio {
            numerator_exponents: vec![3],
            denominator_exponents: vec![],
            monomial_shift: 0,
            qint_factors: vec![],
        };
        assert_eq!(q_limit_one(&unbalanced), QLimit::Zero);
    }
}
