use super::{ExactError, Field, Fp, RatFun};
use num_rational::BigRational;

/// A coefficient from one of the three supported domains: exact rationals,
/// a prime field, or rational functions in alpha/beta.
///
/// Matrices and elements are domain-homogeneous; the constructors of
/// `Mat` enforce this, so the `Field` impl treats a domain mix as a
/// programming error.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Q(BigRational),
    Fp(Fp),
    RatFun(RatFun),
}

impl Scalar {
    pub fn domain_name(&self) -> &'static str {
        match self {
            Scalar::Q(_) => "Q",
            Scalar::Fp(_) => "Fp",
            Scalar::RatFun(_) => "RatFun",
        }
    }

    pub fn same_domain(&self, other: &Self) -> Result<(), ExactError> {
        let ok = match (self, other) {
            (Scalar::Q(_), Scalar::Q(_)) | (Scalar::RatFun(_), Scalar::RatFun(_)) => true,
            (Scalar::Fp(a), Scalar::Fp(b)) => a.p() == b.p(),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(ExactError::DomainMismatch(self.domain_name(), other.domain_name()))
        }
    }
}

macro_rules! binop {
    ($self:ident, $other:ident, $m:ident) => {
        match ($self, $other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.$m(b)),
            (Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(a.$m(b)),
            (Scalar::RatFun(a), Scalar::RatFun(b)) => Scalar::RatFun(a.$m(b)),
            (a, b) => panic!("mixed scalar domains {} vs {}", a.domain_name(), b.domain_name()),
        }
    };
}

impl Field for Scalar {
    fn add(&self, other: &Self) -> Self {
        binop!(self, other, add)
    }
    fn sub(&self, other: &Self) -> Self {
        binop!(self, other, sub)
    }
    fn mul(&self, other: &Self) -> Self {
        binop!(self, other, mul)
    }
    fn neg(&self) -> Self {
        match self {
            Scalar::Q(a) => Scalar::Q(Field::neg(a)),
            Scalar::Fp(a) => Scalar::Fp(a.neg()),
            Scalar::RatFun(a) => Scalar::RatFun(a.neg()),
        }
    }
    fn inv(&self) -> Result<Self, ExactError> {
        Ok(match self {
            Scalar::Q(a) => Scalar::Q(Field::inv(a)?),
            Scalar::Fp(a) => Scalar::Fp(a.inv()?),
            Scalar::RatFun(a) => Scalar::RatFun(a.inv()?),
        })
    }
    fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(a) => Field::is_zero(a),
            Scalar::Fp(a) => a.is_zero(),
            Scalar::RatFun(a) => a.is_zero(),
        }
    }
    fn zero_like(&self) -> Self {
        match self {
            Scalar::Q(_) => Scalar::Q(num_traits::Zero::zero()),
            Scalar::Fp(a) => Scalar::Fp(a.zero_like()),
            Scalar::RatFun(a) => Scalar::RatFun(a.zero_like()),
        }
    }
    fn one_like(&self) -> Self {
        match self {
            Scalar::Q(_) => Scalar::Q(num_traits::One::one()),
            Scalar::Fp(a) => Scalar::Fp(a.one_like()),
            Scalar::RatFun(a) => Scalar::RatFun(a.one_like()),
        }
    }
}
