//! Terminating basic hypergeometric series whose parameters are `±q^e`, and
//! exact checks of Watson's `8φ7 → 4φ3` transformation.

use std::fmt;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factored::{sum_to_ratfunc, QProduct, Sign};
use crate::qseries::{partial_sum, Family, HyperSum};
use crate::ratfunc::RatFunc;
use crate::rational::Rational;
use crate::report::{Level, Report, Status};

/// Default cap on the number of terms of a series.
pub const DEFAULT_BOUND: usize = 10_000;

/// `sign · q^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QMonomial {
    pub sign: Sign,
    pub exponent: i64,
}

impl QMonomial {
    pub fn q(exponent: i64) -> Self {
        QMonomial { sign: Sign::Plus, exponent }
    }

    pub fn neg_q(exponent: i64) -> Self {
        QMonomial { sign: Sign::Minus, exponent }
    }

    pub fn one() -> Self {
        QMonomial::q(0)
    }

    pub fn times(self, other: QMonomial) -> Self {
        QMonomial { sign: self.sign.times(other.sign), exponent: self.exponent + other.exponent }
    }

    pub fn over(self, other: QMonomial) -> Self {
        QMonomial { sign: self.sign.times(other.sign), exponent: self.exponent - other.exponent }
    }

    /// `(self; q^base)_k` vanishes exactly from `k = j + 1` on, where
    /// `self · q^{j·base} = 1`.
    fn zero_index(self, base: u64) -> Option<u64> {
        let b = base as i64;
        (self.sign == Sign::Plus && self.exponent <= 0 && self.exponent % b == 0)
            .then(|| (-self.exponent / b) as u64)
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign == Sign::Minus { "-" } else { "" };
        write!(f, "{s}q^{}", self.exponent)
    }
}

/// `{}_{r+1}φ_r[upper; lower; q^base, argument]`, with `(q^base; q^base)_k`
/// implicit in the denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiSeriesSpec {
    pub upper: Vec<QMonomial>,
    pub lower: Vec<QMonomial>,
    pub base: u64,
    pub argument: QMonomial,
}

impl PhiSeriesSpec {
    /// Number of nonzero terms, from the first vanishing upper Pochhammer.
    pub fn term_count(&self, bound: usize) -> Result<usize> {
        if self.base == 0 {
            return Err(Error::InvalidParameter("base must be positive".into()));
        }
        let last = self
            .upper
            .iter()
            .filter_map(|m| m.zero_index(self.base))
            .min()
            .ok_or(Error::NonTerminating { bound })?;
        let count = last as usize + 1;
        if count > bound {
            return Err(Error::NonTerminating { bound });
        }
        Ok(count)
    }

    /// The series as a first term and term ratios, after checking that no
    /// lower Pochhammer vanishes inside the summation range.
    pub fn to_sum(&self, bound: usize) -> Result<HyperSum> {
        self.to_sum_scanned(bound, 0)
    }

    /// Like [`to_sum`](Self::to_sum), with the degeneracy scan extended to
    /// the first `scan` terms even when the series stops earlier.
    pub fn to_sum_scanned(&self, bound: usize, scan: usize) -> Result<HyperSum> {
        let count = self.term_count(bound)?;
        let scan = scan.max(count);
        let base = self.base as i64;
        let mut lower = self.lower.clone();
        lower.push(QMonomial::q(base));
        for m in &lower {
            if let Some(j) = m.zero_index(self.base) {
                if (j as usize) + 1 < scan {
                    return Err(Error::DegenerateParameters(format!(
                        "lower parameter {m} vanishes at term {}",
                        j + 1
                    )));
                }
            }
        }
        let mut ratios = Vec::with_capacity(count.saturating_sub(1));
        for k in 0..count as i64 - 1 {
            let mut r = QProduct::one();
            for m in &self.upper {
                r.mul_factor(m.sign, m.exponent + k * base, 1)?;
            }
            for m in &lower {
                r.mul_factor(m.sign, m.exponent + k * base, -1)?;
            }
            if self.argument.sign == Sign::Minus {
                r.scale(&Rational::from_integer((-1).into()));
            }
            r.mul_monomial(self.argument.exponent);
            ratios.push(r);
        }
        Ok(HyperSum { first: QProduct::one(), ratios })
    }
}

pub fn phi_eval(spec: &PhiSeriesSpec) -> Result<RatFunc> {
    phi_eval_bounded(spec, DEFAULT_BOUND)
}

pub fn phi_eval_bounded(spec: &PhiSeriesSpec, bound: usize) -> Result<RatFunc> {
    Ok(spec.to_sum(bound)?.to_ratfunc())
}

/// Parameters of Watson's transformation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WatsonParams {
    pub a: QMonomial,
    pub b: QMonomial,
    pub c: QMonomial,
    pub d: QMonomial,
    pub e: QMonomial,
    pub n: u64,
    pub base: u64,
}

/// Both sides of the transformation with `q ↦ q^base`: the very-well-poised
/// `8φ7` and the prefactor times the balanced `4φ3`.
fn watson_sides(p: &WatsonParams) -> Result<(HyperSum, HyperSum)> {
    let WatsonParams { a, b, c, d, e, n, base } = *p;
    if a.sign != Sign::Plus || a.exponent % 2 != 0 {
        return Err(Error::InvalidParameter(format!("a = {a} must be an even power of q")));
    }
    if base == 0 {
        return Err(Error::InvalidParameter("base must be positive".into()));
    }
    let bq = base as i64;
    let q = QMonomial::q(bq);
    let root = QMonomial::q(a.exponent / 2);
    let q_neg_n = QMonomial::q(-(n as i64) * bq);
    let aq = a.times(q);
    let left = PhiSeriesSpec {
        upper: vec![a, q.times(root), QMonomial::neg_q(bq + root.exponent), b, c, d, e, q_neg_n],
        lower: vec![
            root,
            QMonomial::neg_q(root.exponent),
            aq.over(b),
            aq.over(c),
            aq.over(d),
            aq.over(e),
            a.times(QMonomial::q((n as i64 + 1) * bq)),
        ],
        base,
        argument: a.times(a).times(QMonomial::q((n as i64 + 2) * bq)).over(b.times(c).times(d).times(e)),
    };
    let right = PhiSeriesSpec {
        upper: vec![aq.over(b.times(c)), d, e, q_neg_n],
        lower: vec![aq.over(b), aq.over(c), d.times(e).times(q_neg_n).over(a)],
        base,
        argument: q,
    };
    let mut prefactor = QProduct::one();
    for (m, power) in [(aq, 1), (aq.over(d.times(e)), 1), (aq.over(d), -1), (aq.over(e), -1)] {
        prefactor.mul_qpoch(m.sign, m.exponent, bq, n, power)?;
    }
    // a specialization is only valid if no lower factor vanishes in 0..=n
    let range = n as usize + 1;
    let lhs = left.to_sum_scanned(DEFAULT_BOUND, range)?;
    let rhs = right.to_sum_scanned(DEFAULT_BOUND, range)?;
    let mut first = &rhs.first * &prefactor;
    first.scale(&Rational::from_integer((-1).into()));
    Ok((lhs, HyperSum { first, ratios: rhs.ratios }))
}

fn sides_cancel(a: &HyperSum, b: &HyperSum) -> bool {
    let mut terms = a.terms();
    terms.extend(b.terms());
    sum_to_ratfunc(&terms).is_zero()
}

/// Checks Watson's transformation exactly for one parameter tuple.
pub fn watson_check(p: &WatsonParams) -> Report {
    let start = Instant::now();
    let mut report = Report::new(
        "watson",
        &[
            ("a", p.a.exponent),
            ("b", p.b.exponent),
            ("b_sign", p.b.sign.as_i64()),
            ("c", p.c.exponent),
            ("c_sign", p.c.sign.as_i64()),
            ("d", p.d.exponent),
            ("d_sign", p.d.sign.as_i64()),
            ("e", p.e.exponent),
            ("e_sign", p.e.sign.as_i64()),
            ("n", p.n as i64),
            ("base", p.base as i64),
        ],
        Level::Theorem,
    );
    report.note(format!(
        "a={} b={} c={} d={} e={} n={} base q^{}",
        p.a, p.b, p.c, p.d, p.e, p.n, p.base
    ));
    match watson_sides(p) {
        Ok((lhs, rhs)) => {
            report.status = if sides_cancel(&lhs, &rhs) { Status::Holds } else { Status::Fails };
        }
        Err(e) => report.fail_with(&e),
    }
    report.timed(start)
}

/// The instance behind the T1 sums: base 4, `a = b = d = q^2`, `c = q`,
/// `e = q^{4+(4m+2)n}`, summing to `mn + (n-1)/2`.
pub fn paper_instance(n: u64, m: u64) -> WatsonParams {
    let e = 4 + (4 * m as i64 + 2) * n as i64;
    WatsonParams {
        a: QMonomial::q(2),
        b: QMonomial::q(2),
        c: QMonomial::q(1),
        d: QMonomial::q(2),
        e: QMonomial::q(e),
        n: m * n + (n - 1) / 2,
        base: 4,
    }
}

/// The `8φ7` that rewrites the T1 sum to `mn + (n-1)/2`.
pub fn eight_phi_seven(n: u64, m: u64) -> PhiSeriesSpec {
    let big = (4 * m as i64 + 2) * n as i64;
    PhiSeriesSpec {
        upper: vec![
            QMonomial::q(2),
            QMonomial::q(5),
            QMonomial::neg_q(5),
            QMonomial::q(2),
            QMonomial::q(1),
            QMonomial::q(2),
            QMonomial::q(4 + big),
            QMonomial::q(2 - big),
        ],
        lower: vec![
            QMonomial::q(1),
            QMonomial::neg_q(1),
            QMonomial::q(4),
            QMonomial::q(5),
            QMonomial::q(4),
            QMonomial::q(2 - big),
            QMonomial::q(4 + big),
        ],
        base: 4,
        argument: QMonomial::q(1),
    }
}

/// Its transformed form: a Pochhammer prefactor times a balanced `4φ3`.
pub fn four_phi_three(n: u64, m: u64) -> Result<HyperSum> {
    let big = (4 * m as i64 + 2) * n as i64;
    let len = m * n + (n - 1) / 2;
    let mut prefactor = QProduct::one();
    prefactor.mul_qpoch(Sign::Plus, 6, 4, len, 1)?;
    prefactor.mul_qpoch(Sign::Plus, -big, 4, len, 1)?;
    prefactor.mul_qpoch(Sign::Plus, 4, 4, len, -1)?;
    prefactor.mul_qpoch(Sign::Plus, 2 - big, 4, len, -1)?;
    let series = PhiSeriesSpec {
        upper: vec![QMonomial::q(3), QMonomial::q(2), QMonomial::q(4 + big), QMonomial::q(2 - big)],
        lower: vec![QMonomial::q(4), QMonomial::q(5), QMonomial::q(6)],
        base: 4,
        argument: QMonomial::q(4),
    }
    .to_sum(DEFAULT_BOUND)?;
    Ok(HyperSum { first: &series.first * &prefactor, ratios: series.ratios })
}

/// Checks that the displayed `8φ7` equals its displayed transformed form and
/// equals the T1 sum to `mn + (n-1)/2`.
pub fn instance_2_3_equals_2_4(n: u64, m: u64) -> Report {
    let start = Instant::now();
    let level = if m == 0 { Level::Informational } else { Level::Theorem };
    let mut report = Report::new("instance23", &[("n", n as i64), ("m", m as i64)], level);
    if n < 3 || n % 4 != 3 {
        report.fail_with(&Error::InvalidParameter(format!("n = {n} must satisfy n ≡ 3 (mod 4)")));
        return report.timed(start);
    }
    let result = (|| -> Result<(bool, bool)> {
        let left = eight_phi_seven(n, m).to_sum(DEFAULT_BOUND)?;
        let right = four_phi_three(n, m)?.scaled(&Rational::from_integer((-1).into()), 0);
        let transformed = sides_cancel(&left, &right);
        let direct = left.to_ratfunc() == partial_sum(Family::T1, m * n + (n - 1) / 2 + 1);
        Ok((transformed, direct))
    })();
    match result {
        Ok((transformed, direct)) => {
            report.note(format!("8phi7 = prefactor*4phi3: {transformed}"));
            report.note(format!("8phi7 = T1 partial sum: {direct}"));
            report.status = if transformed && direct { Status::Holds } else { Status::Fails };
        }
        Err(e) => report.fail_with(&e),
    }
    report.timed(start)
}

fn random_monomial(rng: &mut ChaCha8Rng) -> QMonomial {
    let exponent = rng.gen_range(-3..=6);
    if rng.gen_bool(0.5) { QMonomial::q(exponent) } else { QMonomial::neg_q(exponent) }
}

/// A random tuple: exponents in `[-3, 6]`, `n <= 3`, base at most 4, `a` an
/// even power of `q`.
pub fn random_tuple(rng: &mut ChaCha8Rng) -> WatsonParams {
    let a = QMonomial::q(2 * rng.gen_range(-1..=3));
    WatsonParams {
        a,
        b: random_monomial(rng),
        c: random_monomial(rng),
        d: random_monomial(rng),
        e: random_monomial(rng),
        n: rng.gen_range(0..=3),
        base: rng.gen_range(1..=4),
    }
}

/// Draws tuples until `wanted` non-degenerate ones have been checked, giving
/// up after `20 * wanted` draws. Degenerate draws are skipped.
pub fn random_watson_suite(seed: u64, wanted: usize) -> Vec<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for _ in 0..20 * wanted {
        if out.len() == wanted {
            break;
        }
        let p = random_tuple(&mut rng);
        let r = watson_check(&p);
        if r.status != Status::Error {
            out.push(r);
        }
    }
    out
}
