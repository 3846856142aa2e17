//! Exact verification of q-congruences modulo products of cyclotomic
//! polynomials, with the classical supercongruences they specialize to.

pub mod classical;
pub mod congruence;
pub mod cyclotomic;
pub mod error;
pub mod factored;
pub mod hypergeometric;
pub mod local;
pub mod oracle;
pub mod poly;
pub mod qseries;
pub mod ratfunc;
pub mod rational;
pub mod report;
pub mod suite;

pub use cyclotomic::{build_modulus, cyclotomic, PhiModulus};
pub use error::{Error, Result};
pub use factored::{QProduct, Sign};
pub use poly::{LaurentPoly, Poly};
pub use qseries::{Family, FactorRatio, HyperSum};
pub use ratfunc::RatFunc;
pub use rational::Rational;
