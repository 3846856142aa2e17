//! Dense univariate polynomials in `q` over the rationals.
//!
//! Products are computed on integer coefficient vectors after clearing
//! denominators; below [`KARATSUBA_THRESHOLD`] coefficients the schoolbook
//! product is used, above it Karatsuba.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Operand length (in coefficients) from which Karatsuba takes over.
pub const KARATSUBA_THRESHOLD: usize = 64;

/// A polynomial in `q`; `coeffs[i]` is the coefficient of `q^i`.
///
/// The highest stored coefficient is nonzero; the zero polynomial has no
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    /// The indeterminate `q`.
    pub fn q() -> Self {
        Poly::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, power: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); power + 1];
        coeffs[power] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn from_bigints(coeffs: Vec<BigInt>) -> Self {
        Poly::from_coeffs(coeffs.into_iter().map(Rational::from_integer).collect())
    }

    /// `1 - q^e`.
    pub fn one_minus_power(e: usize) -> Self {
        let mut coeffs = vec![0i64; e + 1];
        coeffs[0] += 1;
        coeffs[e] -= 1;
        Poly::from_ints(&coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Splits into `(common denominator, integer coefficients)`.
    pub fn to_integer_parts(&self) -> (BigInt, Vec<BigInt>) {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        (den, ints)
    }

    fn from_integer_parts(den: &BigInt, ints: Vec<BigInt>) -> Self {
        Poly::from_coeffs(
            ints.into_iter()
                .map(|c| Rational::new(c, den.clone()))
                .collect(),
        )
    }

    /// Product with an explicit Karatsuba cut-over, for tuning and tests.
    pub fn mul_with_threshold(&self, other: &Poly, threshold: usize) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let (da, ia) = self.to_integer_parts();
        let (db, ib) = other.to_integer_parts();
        let prod = int_mul(&ia, &ib, threshold.max(1));
        Poly::from_integer_parts(&(da * db), prod)
    }

    /// Euclidean division: `self = quotient * divisor + remainder`, `deg remainder < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dlen = divisor.len();
        if dlen == 0 {
            return Err(Error::DivisionByZeroPoly);
        }
        if self.len() < dlen {
            return Ok((Poly::zero(), self.clone()));
        }
        let lead = divisor.leading().expect("nonzero");
        if lead.is_one() && divisor.is_integral() {
            return Ok(self.divrem_monic_integral(divisor));
        }
        let inv = lead.recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dlen - 1] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[i + j] -= &c * d;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dlen - 1);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Division by a monic integer polynomial stays inside the integers
    /// once the dividend's denominators are cleared.
    fn divrem_monic_integral(&self, divisor: &Poly) -> (Poly, Poly) {
        let (den, mut rem) = self.to_integer_parts();
        let (_, d) = divisor.to_integer_parts();
        let dlen = d.len();
        let nz: Vec<(usize, &BigInt)> = d[..dlen - 1]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut quot = vec![BigInt::zero(); rem.len() - dlen + 1];
        for i in (0..quot.len()).rev() {
            let c = std::mem::take(&mut rem[i + dlen - 1]);
            if c.is_zero() {
                continue;
            }
            for &(j, dj) in &nz {
                rem[i + j] -= &c * dj;
            }
            quot[i] = c;
        }
        rem.truncate(dlen - 1);
        (
            Poly::from_integer_parts(&den, quot),
            Poly::from_integer_parts(&den, rem),
        )
    }

    pub fn rem(&self, divisor: &Poly) -> Result<Poly> {
        self.divrem(divisor).map(|(_, r)| r)
    }

    /// Exact quotient; `None` when the division leaves a remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.divrem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.monic(), other.monic());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a
    }

    /// Extended Euclid: returns `(g, u, v)` with `u*a + v*b = g` and `g` the monic gcd.
    ///
    /// Both inputs zero gives three zero polynomials.
    pub fn xgcd(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero divisor");
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
            // keep the remainder sequence monic so coefficients stay small
            if let Some(lc) = r1.leading().cloned() {
                let inv = lc.recip();
                r1 = r1.scale(&inv);
                s1 = s1.scale(&inv);
                t1 = t1.scale(&inv);
            }
        }
        match r0.leading().cloned() {
            None => (Poly::zero(), Poly::zero(), Poly::zero()),
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
        }
    }

    /// The inverse of `self` in `Q[q]/(modulus)`, of degree below `deg modulus`.
    pub fn quotient_inverse(&self, modulus: &Poly) -> Result<Poly> {
        match modulus.degree() {
            None => return Err(Error::DivisionByZeroPoly),
            Some(0) => {
                return Err(Error::InvalidParameter(
                    "quotient modulus must have positive degree".into(),
                ))
            }
            Some(_) => {}
        }
        let a = self.rem(modulus)?;
        let (g, u, _) = Poly::xgcd(&a, modulus);
        if !g.is_one() {
            let gcd = if g.is_zero() { modulus.clone() } else { g };
            return Err(Error::NotCoprime { gcd: gcd.to_string() });
        }
        u.rem(modulus)
    }

    /// `self * other mod modulus`.
    pub fn mul_mod(&self, other: &Poly, modulus: &Poly) -> Result<Poly> {
        (self * other).rem(modulus)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Floating Horner evaluation at a complex point.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
            acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
        })
    }
}

/// Integer polynomial product: schoolbook below `threshold`, Karatsuba above.
pub(crate) fn int_mul(a: &[BigInt], b: &[BigInt], threshold: usize) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) < threshold.max(2) {
        return schoolbook(a, b);
    }
    let half = a.len().max(b.len()).div_ceil(2);
    let (a0, a1) = a.split_at(half.min(a.len()));
    let (b0, b1) = b.split_at(half.min(b.len()));
    let z0 = int_mul(a0, b0, threshold);
    let z2 = int_mul(a1, b1, threshold);
    let sa = add_slices(a0, a1);
    let sb = add_slices(b0, b1);
    let mut z1 = int_mul(&sa, &sb, threshold);
    sub_into(&mut z1, &z0);
    sub_into(&mut z1, &z2);
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    add_into(&mut out, &z0, 0);
    add_into(&mut out, &z1, half);
    add_into(&mut out, &z2, 2 * half);
    out
}

fn schoolbook(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn add_slices(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = a.to_vec();
    add_into(&mut out, b, 0);
    out
}

fn add_into(out: &mut Vec<BigInt>, src: &[BigInt], offset: usize) {
    if out.len() < src.len() + offset {
        out.resize(src.len() + offset, BigInt::zero());
    }
    for (i, c) in src.iter().enumerate() {
        out[offset + i] += c;
    }
}

fn sub_into(out: &mut Vec<BigInt>, src: &[BigInt]) {
    if out.len() < src.len() {
        out.resize(src.len(), BigInt::zero());
    }
    for (i, c) in src.iter().enumerate() {
        out[i] -= c;
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut coeffs = long.coeffs.clone();
        for (c, s) in coeffs.iter_mut().zip(&short.coeffs) {
            *c += s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < rhs.len() {
            coeffs.resize(rhs.len(), Rational::zero());
        }
        for (c, s) in coeffs.iter_mut().zip(&rhs.coeffs) {
            *c -= s;
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_with_threshold(rhs, KARATSUBA_THRESHOLD)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Canonical rendering `c0 + c1*q + c2*q^2 + ...`, zero coefficients omitted.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{i}")?,
            }
        }
        Ok(())
    }
}

/// `q^shift * body`, with `body` carrying a nonzero constant term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    body: Poly,
    shift: i64,
}

impl LaurentPoly {
    pub fn new(body: Poly, shift: i64) -> Self {
        if body.is_zero() {
            return LaurentPoly { body, shift: 0 };
        }
        let lowest = body
            .coeffs()
            .iter()
            .position(|c| !c.is_zero())
            .expect("nonzero body");
        let body = Poly::from_coeffs(body.coeffs()[lowest..].to_vec());
        LaurentPoly { body, shift: shift + lowest as i64 }
    }

    pub fn from_poly(p: Poly) -> Self {
        LaurentPoly::new(p, 0)
    }

    pub fn body(&self) -> &Poly {
        &self.body
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Multiplies by `q^k`, which is a unit modulo every `Φ_n` with `n >= 2`.
    pub fn mul_power(&self, k: i64) -> Self {
        LaurentPoly { body: self.body.clone(), shift: self.shift + k }
    }

    /// The ordinary polynomial, if the shift is nonnegative.
    pub fn to_poly(&self) -> Option<Poly> {
        usize::try_from(self.shift).ok().map(|s| self.body.shift(s))
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::new(&self.body * &rhs.body, self.shift + rhs.shift)
    }
}
