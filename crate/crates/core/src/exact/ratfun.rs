use super::poly::BPoly;
use super::{ExactError, Field};
use num_rational::BigRational;

/// Rational function in the parameters alpha and beta, stored in canonical
/// form: numerator and denominator coprime, denominator normalized so its
/// lex-leading coefficient is 1. Equality is structural.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatFun {
    num: BPoly,
    den: BPoly,
}

impl RatFun {
    pub fn new(num: BPoly, den: BPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: BPoly, den: BPoly) -> Self {
        if num.is_zero() {
            return RatFun { num: BPoly::zero(), den: BPoly::one() };
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides numerator");
        let mut den = den.div_exact(&g).expect("gcd divides denominator");
        let lc = den.leading_rat().expect("nonzero denominator").clone();
        num = num.scale_rat(&lc.recip());
        den = den.scale_rat(&lc.recip());
        RatFun { num, den }
    }

    pub fn from_poly(p: BPoly) -> Self {
        Self::normalized(p, BPoly::one())
    }

    pub fn from_rat(c: BigRational) -> Self {
        Self::from_poly(BPoly::constant(c))
    }

    pub fn alpha() -> Self {
        Self::from_poly(BPoly::alpha())
    }

    pub fn beta() -> Self {
        Self::from_poly(BPoly::beta())
    }

    pub fn num(&self) -> &BPoly {
        &self.num
    }

    pub fn den(&self) -> &BPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den == BPoly::one()
    }

    /// Evaluate at rational parameter values; `None` if the denominator
    /// vanishes there.
    pub fn eval(&self, alpha: &BigRational, beta: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(alpha, beta);
        if num_traits::Zero::is_zero(&d) {
            return None;
        }
        Some(self.num.eval(alpha, beta) / d)
    }
}

impl Field for RatFun {
    fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::normalized(num, self.den.mul(&other.den))
    }
    fn sub(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        Self::normalized(num, self.den.mul(&other.den))
    }
    fn mul(&self, other: &Self) -> Self {
        Self::normalized(self.num.mul(&other.num), self.den.mul(&other.den))
    }
    fn neg(&self) -> Self {
        RatFun { num: self.num.neg(), den: self.den.clone() }
    }
    fn inv(&self) -> Result<Self, ExactError> {
        if self.num.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn zero_like(&self) -> Self {
        RatFun { num: BPoly::zero(), den: BPoly::one() }
    }
    fn one_like(&self) -> Self {
        RatFun { num: BPoly::one(), den: BPoly::one() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancels_to_canonical_form() {
        // (alpha^2 - alpha)/alpha = alpha - 1
        let a = BPoly::alpha();
        let num = a.mul(&a).sub(&a);
        let r = RatFun::new(num, a.clone()).unwrap();
        assert_eq!(r, RatFun::from_poly(a.sub(&BPoly::one())));
        assert!(r.is_polynomial());
    }

    #[test]
    fn self_quotient_is_one() {
        let p = BPoly::alpha().sub(&BPoly::one());
        let r = RatFun::new(p.clone(), p).unwrap();
        assert!(r.is_one());
    }

    #[test]
    fn product_of_inverses() {
        // (alpha*beta) * (alpha*beta)^{-1} = 1 through stored fractions
        let ab = RatFun::alpha().mul(&RatFun::beta());
        let prod = ab.mul(&ab.inv().unwrap());
        assert!(prod.is_one());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RatFun::new(BPoly::one(), BPoly::zero()),
            Err(ExactError::ZeroDenominator)
        );
    }
}
