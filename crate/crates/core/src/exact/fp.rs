use super::{ExactError, Field};

/// Element of a prime field F_p, stored as the canonical representative
/// in 0..p-1 together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
    v: u64,
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    pub fn new(p: u64, v: i64) -> Result<Self, ExactError> {
        if !is_prime(p) {
            return Err(ExactError::NotPrime(p));
        }
        Ok(Self::reduce(p, v))
    }

    /// Reduce an integer mod p (p assumed prime, checked by callers that
    /// construct the modulus).
    pub fn reduce(p: u64, v: i64) -> Self {
        let m = v.rem_euclid(p as i64) as u64;
        Fp { p, v: m }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn value(&self) -> u64 {
        self.v
    }

    /// Lift to the symmetric representative in (-p/2, p/2].
    pub fn balanced_lift(&self) -> i64 {
        if self.v * 2 > self.p {
            self.v as i64 - self.p as i64
        } else {
            self.v as i64
        }
    }

    fn same(&self, other: &Self) -> u64 {
        assert_eq!(self.p, other.p, "mixed moduli {} vs {}", self.p, other.p);
        self.p
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Fp { p: self.p, v: 1 };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl Field for Fp {
    fn add(&self, other: &Self) -> Self {
        let p = self.same(other);
        Fp { p, v: (self.v + other.v) % p }
    }
    fn sub(&self, other: &Self) -> Self {
        let p = self.same(other);
        Fp { p, v: (self.v + p - other.v) % p }
    }
    fn mul(&self, other: &Self) -> Self {
        let p = self.same(other);
        Fp { p, v: (self.v as u128 * other.v as u128 % p as u128) as u64 }
    }
    fn neg(&self) -> Self {
        Fp { p: self.p, v: (self.p - self.v) % self.p }
    }
    fn inv(&self) -> Result<Self, ExactError> {
        if self.v == 0 {
            return Err(ExactError::DivisionByZero);
        }
        // Fermat: v^(p-2) mod p.
        Ok(self.pow(self.p - 2))
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn zero_like(&self) -> Self {
        Fp { p: self.p, v: 0 }
    }
    fn one_like(&self) -> Self {
        Fp { p: self.p, v: 1 % self.p }
    }
}
