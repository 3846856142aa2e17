//! Floating-point cross-check of congruences: `Φ_n^2` divides an integer
//! polynomial `P` exactly when `P(ζ) = P'(ζ) = 0` at a primitive `n`-th root
//! of unity `ζ`.
//!
//! [`root_check`] evaluates the cleared difference term by term without
//! expanding it, using `ζ + ε` with first-order `ε` and magnitudes kept as
//! base-2 logarithms so that huge products neither overflow nor underflow.
//! [`poly_check`] is the literal form on an expanded polynomial.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

use crate::cyclotomic::{divisors, mobius};
use crate::error::{Error, Result};
use crate::factored::{cleared_numerator, QProduct};

/// Relative tolerance of the oracle.
pub const TOLERANCE: f64 = 1e-6;

/// Magnitudes of `P(ζ)` and `P'(ζ)` relative to a scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleCheck {
    pub n: u64,
    /// `|P(ζ)| / scale`.
    pub value: f64,
    /// `|P'(ζ)| / scale`.
    pub derivative: f64,
}

impl OracleCheck {
    pub fn agrees(&self) -> bool {
        self.value <= TOLERANCE && self.derivative <= TOLERANCE
    }
}

fn log2_big(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        x.abs().to_f64().expect("finite below 2^1000").log2()
    } else {
        let shift = bits - 64;
        (x.abs() >> shift).to_f64().expect("64-bit value").log2() + shift as f64
    }
}

/// A complex number `2^log2 · e^{i·arg}`.
#[derive(Clone, Copy)]
struct Polar {
    log2: f64,
    arg: f64,
}

impl Polar {
    fn times(self, z: Complex64) -> Polar {
        Polar { log2: self.log2 + z.norm().log2(), arg: self.arg + z.arg() }
    }
}

/// Sum of polar numbers, returned as `|Σ| / Σ|·|`.
fn relative_sum(parts: &[Polar]) -> f64 {
    let parts: Vec<&Polar> = parts.iter().filter(|p| p.log2.is_finite()).collect();
    let Some(top) = parts.iter().map(|p| p.log2).reduce(f64::max) else {
        return 0.0;
    };
    let mut sum = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for p in parts {
        let m = (p.log2 - top).exp2();
        sum += Complex64::from_polar(m, p.arg);
        scale += m;
    }
    sum.norm() / scale
}

fn zeta_pow(n: u64, e: i64) -> Complex64 {
    let r = e.rem_euclid(n as i64) as f64;
    Complex64::from_polar(1.0, TAU * r / n as f64)
}

/// Exponents `h_x` with `∏ Ψ_d^{g_d} = ∏ (1 - q^x)^{h_x}`.
fn binomial_exponents(psi: &BTreeMap<u64, i64>) -> BTreeMap<u64, i64> {
    let mut out: BTreeMap<u64, i64> = BTreeMap::new();
    for (&d, &g) in psi {
        for x in divisors(d) {
            let mu = mobius(d / x);
            if mu != 0 {
                *out.entry(x).or_insert(0) += g * mu;
            }
        }
    }
    out.retain(|_, h| *h != 0);
    out
}

fn denominator_exponents(exps: &[BTreeMap<u64, i64>]) -> BTreeMap<u64, i64> {
    let mut lcd: BTreeMap<u64, i64> = BTreeMap::new();
    for e in exps {
        for (&d, &f) in e {
            if f < 0 {
                let slot = lcd.entry(d).or_insert(0);
                *slot = (*slot).max(-f);
            }
        }
    }
    lcd
}

/// Checks `Φ_n^2 | P`, where `P` is the numerator of `Σ terms` over the lowest
/// common denominator. Each term's contribution is measured against the sum
/// of the contributions' magnitudes.
pub fn root_check(terms: &[QProduct], n: u64) -> Result<OracleCheck> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("oracle needs n >= 2, got {n}")));
    }
    let live: Vec<&QProduct> = terms.iter().filter(|t| !t.is_zero()).collect();
    let exps: Vec<BTreeMap<u64, i64>> = live.iter().map(|t| t.psi_exponents()).collect();
    let lcd = denominator_exponents(&exps);
    let zeta = zeta_pow(n, 1);
    let mut values = Vec::new();
    let mut derivs = Vec::new();
    for (t, e) in live.iter().zip(&exps) {
        let mut cleared = lcd.clone();
        for (&d, &f) in e {
            *cleared.entry(d).or_insert(0) += f;
        }
        cleared.retain(|_, g| *g != 0);
        let mut unit = Polar {
            log2: log2_big(t.coeff().numer()) - log2_big(t.coeff().denom()),
            arg: if t.coeff().is_negative() { std::f64::consts::PI } else { 0.0 },
        };
        unit = unit.times(zeta_pow(n, t.shift()));
        let mut logderiv = Complex64::new(t.shift() as f64, 0.0) / zeta;
        let mut val = 0i64;
        for (&x, &h) in &binomial_exponents(&cleared) {
            let hf = h as f64;
            let xi = x as i64;
            if x % n == 0 {
                // 1 - (ζ+ε)^x = ε · (-x ζ^{-1}) · (1 + (x-1)/2 · ζ^{-1} ε + …)
                val += h;
                let u0 = Complex64::new(-(x as f64), 0.0) / zeta;
                unit = Polar { log2: unit.log2 + hf * u0.norm().log2(), arg: unit.arg + hf * u0.arg() };
                logderiv += hf * (x as f64 - 1.0) / 2.0 / zeta;
            } else {
                let a = Complex64::new(1.0, 0.0) - zeta_pow(n, xi);
                let b = -(x as f64) * zeta_pow(n, xi - 1);
                unit = Polar { log2: unit.log2 + hf * a.norm().log2(), arg: unit.arg + hf * a.arg() };
                logderiv += hf * b / a;
            }
        }
        match val {
            v if v < 0 => return Err(Error::NotCoprime { gcd: format!("Phi_{n}^{}", -v) }),
            0 => {
                values.push(unit);
                derivs.push(unit.times(logderiv));
            }
            1 => derivs.push(unit),
            _ => {}
        }
    }
    Ok(OracleCheck { n, value: relative_sum(&values), derivative: relative_sum(&derivs) })
}

/// Literal form: `|P(ζ)|` and `|P'(ζ)|` against the coefficient 1-norm of `P`.
pub fn poly_check(coeffs: &[BigInt], n: u64) -> OracleCheck {
    let top = coeffs.iter().map(|c| c.bits()).max().unwrap_or(0);
    let shift = top.saturating_sub(60);
    let scaled: Vec<f64> = coeffs
        .iter()
        .map(|c| {
            let s = if c.is_negative() { -((-c) >> shift) } else { c >> shift };
            s.to_f64().expect("60-bit value")
        })
        .collect();
    let norm: f64 = scaled.iter().map(|c| c.abs()).sum();
    if norm == 0.0 {
        return OracleCheck { n, value: 0.0, derivative: 0.0 };
    }
    let z = zeta_pow(n, 1);
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in scaled.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    OracleCheck { n, value: p.norm() / norm, derivative: dp.norm() / norm }
}

/// Integer numerator of `Σ terms` over the lowest common denominator.
pub fn cleared_difference(terms: &[QProduct]) -> Vec<BigInt> {
    cleared_numerator(terms).map(|(_, p)| p).unwrap_or_default()
}

/// Degree the cleared numerator would have, without expanding it.
pub fn cleared_degree(terms: &[QProduct]) -> u64 {
    let live: Vec<&QProduct> = terms.iter().filter(|t| !t.is_zero()).collect();
    let exps: Vec<BTreeMap<u64, i64>> = live.iter().map(|t| t.psi_exponents()).collect();
    let lcd = denominator_exponents(&exps);
    let min_shift = live.iter().map(|t| t.shift()).min().unwrap_or(0);
    live.iter()
        .zip(&exps)
        .map(|(t, e)| {
            let mut deg: i64 = t.shift() - min_shift;
            for (&d, &g) in &lcd {
                deg += g * crate::cyclotomic::totient(d) as i64;
            }
            for (&d, &f) in e {
                deg += f * crate::cyclotomic::totient(d) as i64;
            }
            deg.max(0) as u64
        })
        .max()
        .unwrap_or(0)
}
