use num_rational::BigRational;
use num_traits::{One, Zero};

/// Univariate polynomial over Q, dense coefficients `c[i]` of `x^i`,
/// trailing zeros trimmed (so the zero polynomial is the empty vector).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly(pub Vec<BigRational>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            UPoly(vec![c])
        }
    }

    pub fn var() -> Self {
        UPoly(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn from_coeffs(mut v: Vec<BigRational>) -> Self {
        while v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
        UPoly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; -1 for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.0.last()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut v = vec![BigRational::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            v[i] += c;
        }
        Self::from_coeffs(v)
    }

    pub fn neg(&self) -> Self {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::from_coeffs(v)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UPoly(self.0.iter().map(|x| x * c).collect())
    }

    /// Division with remainder over Q.
    pub fn divmod(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut r = self.clone();
        let mut q = vec![BigRational::zero(); self.0.len().saturating_sub(d.0.len()) + 1];
        let dl = d.leading().unwrap().clone();
        while !r.is_zero() && r.degree() >= d.degree() {
            let shift = (r.degree() - d.degree()) as usize;
            let c = r.leading().unwrap() / &dl;
            q[shift] = c.clone();
            let mut sub = vec![BigRational::zero(); shift];
            sub.extend(d.0.iter().map(|x| x * &c));
            r = r.sub(&UPoly::from_coeffs(sub));
        }
        (Self::from_coeffs(q), r)
    }

    /// Exact division; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divmod(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd over Q (Euclid); gcd(0,0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scale so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// Bivariate polynomial over Q in parameters alpha and beta, stored as
/// dense coefficients in alpha whose entries are `UPoly` in beta.
/// Trailing zero alpha-coefficients are trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BPoly(pub Vec<UPoly>);

impl BPoly {
    pub fn zero() -> Self {
        BPoly(Vec::new())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![UPoly::constant(c)])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn alpha() -> Self {
        Self::from_coeffs(vec![UPoly::zero(), UPoly::constant(BigRational::one())])
    }

    pub fn beta() -> Self {
        Self::from_coeffs(vec![UPoly::var()])
    }

    pub fn from_coeffs(mut v: Vec<UPoly>) -> Self {
        while v.last().map_or(false, |c| c.is_zero()) {
            v.pop();
        }
        BPoly(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || (self.0.len() == 1 && self.0[0].degree() <= 0)
    }

    /// Degree in alpha; -1 for zero.
    pub fn deg_alpha(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn leading(&self) -> Option<&UPoly> {
        self.0.last()
    }

    /// Leading rational coefficient in the (alpha-degree, beta-degree)
    /// lexicographic term order.
    pub fn leading_rat(&self) -> Option<&BigRational> {
        self.leading().and_then(|u| u.leading())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut v = vec![UPoly::zero(); n];
        for (i, c) in self.0.iter().enumerate() {
            v[i] = v[i].add(c);
        }
        for (i, c) in other.0.iter().enumerate() {
            v[i] = v[i].add(c);
        }
        Self::from_coeffs(v)
    }

    pub fn neg(&self) -> Self {
        BPoly(self.0.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![UPoly::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        Self::from_coeffs(v)
    }

    pub fn scale_rat(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BPoly(self.0.iter().map(|u| u.scale(c)).collect())
    }

    pub fn mul_upoly(&self, u: &UPoly) -> Self {
        Self::from_coeffs(self.0.iter().map(|c| c.mul(u)).collect())
    }

    /// Content in beta: monic gcd of the alpha-coefficients.
    pub fn content(&self) -> UPoly {
        let mut g = UPoly::zero();
        for c in &self.0 {
            g = g.gcd(c);
        }
        g
    }

    /// Divide every alpha-coefficient exactly by a univariate polynomial.
    pub fn div_exact_upoly(&self, u: &UPoly) -> Self {
        Self::from_coeffs(self.0.iter().map(|c| c.div_exact(u)).collect())
    }

    /// Primitive part (content divided out); zero stays zero.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.div_exact_upoly(&self.content())
    }

    /// Pseudo-remainder of self by d with respect to alpha.
    fn prem(&self, d: &Self) -> Self {
        assert!(!d.is_zero());
        let dl = d.leading().unwrap().clone();
        let mut r = self.clone();
        while !r.is_zero() && r.deg_alpha() >= d.deg_alpha() {
            let shift = (r.deg_alpha() - d.deg_alpha()) as usize;
            let rl = r.leading().unwrap().clone();
            // lc(d)*r - lc(r)*alpha^shift*d kills the leading term.
            let mut shifted = vec![UPoly::zero(); shift];
            shifted.extend(d.0.iter().map(|c| c.mul(&rl)));
            r = r.mul_upoly(&dl).sub(&BPoly::from_coeffs(shifted));
        }
        r
    }

    /// Exact division by another bivariate polynomial; returns `None` if
    /// the division is not exact. Classical division in Q(beta)[alpha].
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let mut r = self.clone();
        let mut q: Vec<(usize, UPoly, UPoly)> = Vec::new(); // (shift, num, den)
        let dl = d.leading().unwrap().clone();
        while !r.is_zero() && r.deg_alpha() >= d.deg_alpha() {
            let shift = (r.deg_alpha() - d.deg_alpha()) as usize;
            let rl = r.leading().unwrap().clone();
            // Quotient coefficient rl/dl as a fraction of UPolys.
            let g = rl.gcd(&dl);
            let num = rl.div_exact(&g);
            let den = dl.div_exact(&g);
            // r -= (num/den) * alpha^shift * d, cleared of denominators:
            // den*r - num*alpha^shift*d, then divide back by den exactly.
            let mut shifted = vec![UPoly::zero(); shift];
            shifted.extend(d.0.iter().map(|c| c.mul(&num)));
            let cleared = r.mul_upoly(&den).sub(&BPoly::from_coeffs(shifted));
            // Every coefficient of `cleared` must be divisible by den for
            // the division to stay polynomial.
            for c in &cleared.0 {
                if !c.divmod(&den).1.is_zero() {
                    return None;
                }
            }
            r = cleared.div_exact_upoly(&den);
            q.push((shift, num, den));
        }
        if !r.is_zero() {
            return None;
        }
        let mut out = vec![UPoly::zero(); (self.deg_alpha() - d.deg_alpha()) as usize + 1];
        for (shift, num, den) in q {
            if !num.divmod(&den).1.is_zero() {
                return None;
            }
            out[shift] = out[shift].add(&num.div_exact(&den));
        }
        Some(Self::from_coeffs(out))
    }

    /// Gcd via the primitive pseudo-remainder sequence, normalized so the
    /// leading rational coefficient (lex alpha-then-beta order) is 1.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.normalize_leading();
        }
        if other.is_zero() {
            return self.normalize_leading();
        }
        let ca = self.content();
        let cb = other.content();
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.deg_alpha() < b.deg_alpha() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.prem(&b);
            a = b;
            b = if r.is_zero() { BPoly::zero() } else { r.primitive() };
        }
        let g = a.primitive().mul_upoly(&ca.gcd(&cb));
        g.normalize_leading()
    }

    /// Scale by a rational so the lex-leading coefficient is 1.
    pub fn normalize_leading(&self) -> Self {
        match self.leading_rat() {
            None => Self::zero(),
            Some(l) => self.scale_rat(&l.recip()),
        }
    }

    pub fn eval(&self, alpha: &BigRational, beta: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.0.iter().rev() {
            acc = acc * alpha + c.eval(beta);
        }
        acc
    }

    /// Substitute alpha = 0 (constant term in alpha), returning the
    /// resulting polynomial in beta.
    pub fn at_alpha_zero(&self) -> UPoly {
        self.0.first().cloned().unwrap_or_else(UPoly::zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::qi;

    fn a() -> BPoly {
        BPoly::alpha()
    }
    fn b() -> BPoly {
        BPoly::beta()
    }

    #[test]
    fn upoly_gcd() {
        // gcd(x^2-1, x^2-2x+1) = x-1
        let p = UPoly::from_coeffs(vec![qi(-1), qi(0), qi(1)]);
        let q = UPoly::from_coeffs(vec![qi(1), qi(-2), qi(1)]);
        assert_eq!(p.gcd(&q), UPoly::from_coeffs(vec![qi(-1), qi(1)]));
    }

    #[test]
    fn bpoly_gcd_common_factor() {
        // gcd((a+b)(a-b), (a+b)^2) = a+b
        let s = a().add(&b());
        let d = a().sub(&b());
        let g = s.mul(&d).gcd(&s.mul(&s));
        assert_eq!(g, s);
    }

    #[test]
    fn bpoly_exact_division() {
        let s = a().add(&b());
        let d = a().mul(&b()).add(&BPoly::one());
        let p = s.mul(&d);
        assert_eq!(p.div_exact(&s), Some(d.clone()));
        assert_eq!(p.div_exact(&d), Some(s));
        let off = p.add(&BPoly::one());
        assert_eq!(off.div_exact(&d), None);
    }

    #[test]
    fn coprime_gcd_is_one() {
        let g = a().gcd(&b());
        assert_eq!(g, BPoly::one());
    }
}
