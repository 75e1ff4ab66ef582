//! Exact arithmetic substrate: rationals, prime fields, integer matrices
//! with Smith-form rank, and sparse rational functions in up to two
//! parameters used by certificate verification.

mod fp;
mod matrix;
mod poly;
mod ratfun;
mod scalar;

pub use fp::Fp;
pub use matrix::{echelon_basis, kernel_basis, IntMatrix, Mat};
pub use poly::{BPoly, UPoly};
pub use ratfun::RatFun;
pub use scalar::Scalar;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Errors raised by the exact-arithmetic layer.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("division by identically-zero polynomial")]
    ZeroDenominator,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("mixed coefficient domains: {0} vs {1}")]
    DomainMismatch(&'static str, &'static str),
    #[error("matrix shape mismatch")]
    ShapeMismatch,
}

/// Field operations used by the generic linear algebra.
///
/// `zero_like`/`one_like` take a receiver so that context-carrying domains
/// (the modulus of `Fp`) can produce constants of the right domain.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ExactError>;
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
    fn div(&self, other: &Self) -> Result<Self, ExactError> {
        Ok(self.mul(&other.inv()?))
    }
}

impl Field for BigRational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Result<Self, ExactError> {
        if num_traits::Zero::is_zero(self) {
            Err(ExactError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        num_traits::Zero::zero()
    }
    fn one_like(&self) -> Self {
        num_traits::One::one()
    }
}

/// Convenience: rational from an integer.
pub fn qi(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Parse "num" or "num/den" into a rational in lowest terms.
pub fn parse_rat(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if num_traits::Zero::is_zero(&d) {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from(n))
    }
}

/// Render a rational as "num" or "num/den".
pub fn rat_to_string(r: &BigRational) -> String {
    if num_traits::One::is_one(r.denom()) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
