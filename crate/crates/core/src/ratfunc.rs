use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::Rational;

/// A reduced fraction of polynomials in `q` with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Builds and reduces `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g)?.expect("gcd divides numerator"),
                den.exact_div(&g)?.expect("gcd divides denominator"),
            )
        };
        Ok(Self::normalized(num, den))
    }

    /// Caller guarantees `gcd(num, den) = 1` and `den != 0`; only the
    /// denominator's leading coefficient is normalized.
    pub(crate) fn from_coprime(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        Self::normalized(num, den)
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("nonzero denominator")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl Div for &RatFunc {
    type Output = Result<RatFunc>;
    fn div(self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.recip()?)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_on_construction() {
        let f = RatFunc::new(Poly::from_ints(&[-1, 0, 1]), Poly::from_ints(&[-2, 2])).unwrap();
        assert_eq!(f.den(), &Poly::one());
        assert_eq!(f.num(), &Poly::from_coeffs(vec![crate::rational::rat(1, 2); 2]));
        assert!(RatFunc::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn field_operations() {
        let a = RatFunc::new(Poly::one(), Poly::from_ints(&[1, 1])).unwrap();
        let b = RatFunc::new(Poly::q(), Poly::from_ints(&[1, 1])).unwrap();
        assert_eq!(&a + &b, RatFunc::one());
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!((&a / &a).unwrap(), RatFunc::one());
        assert!((&a / &RatFunc::zero()).is_err());
    }
}
