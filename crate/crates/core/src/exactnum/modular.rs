use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::field::Field;
use super::scalar::{Rational, Scalar};
use crate::error::{Error, Result};

/// 63-bit primes of the form c * lcm(1..40) + 1, so Z/P contains every
/// m-th root of unity with m <= 40.
pub const PRIME_A: u64 = 9_163_127_448_863_388_001;
pub const PRIME_B: u64 = 9_200_527_969_062_830_401;

/// Element of Z/P with a fixed primitive root G.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64, const G: u64>(u64);

pub type FpA = Fp<PRIME_A, 41>;
pub type FpB = Fp<PRIME_B, 61>;

impl<const P: u64, const G: u64> Fp<P, G> {
    pub const MODULUS: u64 = P;

    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn from_i128(v: i128) -> Self {
        Fp(v.rem_euclid(P as i128) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// Representative in (-P/2, P/2].
    pub fn symmetric(self) -> i128 {
        if self.0 > P / 2 {
            self.0 as i128 - P as i128
        } else {
            self.0 as i128
        }
    }

    fn mulmod(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self.0;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::mulmod(acc, base);
            }
            base = Self::mulmod(base, base);
            e >>= 1;
        }
        Fp(acc)
    }

    /// A primitive m-th root of unity, G^((P-1)/m).
    pub fn root_of_unity(m: u32) -> Result<Self> {
        if m == 0 || (P - 1) % m as u64 != 0 {
            return Err(Error::UnsupportedOrder(m));
        }
        Ok(Fp(G).pow((P - 1) / m as u64))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        let r = n.mod_floor(&BigInt::from(P));
        Fp(r.to_u64().expect("reduced value fits"))
    }

    pub fn from_rational(r: &Rational) -> Result<Self> {
        let den = Self::from_bigint(r.denom());
        if den.0 == 0 {
            return Err(Error::BadReduction);
        }
        let num = Self::from_bigint(r.numer());
        Ok(num.times(&den.inverse().unwrap()))
    }
}

/// Prime fields that exact scalars can be reduced into.
pub trait PrimeField: Field + Copy + Eq + std::hash::Hash {
    fn modulus() -> u64;
    fn from_u64(v: u64) -> Self;
    fn value(&self) -> u64;
    /// Image of an exact scalar under the fixed embedding zeta_m -> G^((P-1)/m).
    fn from_scalar(s: &Scalar) -> Result<Self>;
}

impl<const P: u64, const G: u64> PrimeField for Fp<P, G> {
    fn modulus() -> u64 {
        P
    }
    fn from_u64(v: u64) -> Self {
        Fp::new(v)
    }
    fn value(&self) -> u64 {
        self.0
    }
    fn from_scalar(s: &Scalar) -> Result<Self> {
        match s {
            Scalar::Rational(r) => Self::from_rational(r),
            Scalar::Cyclotomic(c) => {
                let z = Self::root_of_unity(c.order())?;
                let mut acc = Fp(0);
                let mut zp = Fp(1);
                for coef in c.coeffs() {
                    if !coef.is_zero() {
                        acc = acc.plus(&Self::from_rational(coef)?.times(&zp));
                    }
                    zp = zp.times(&z);
                }
                Ok(acc)
            }
        }
    }
}

impl<const P: u64, const G: u64> Field for Fp<P, G> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn is_one(&self) -> bool {
        self.0 == 1
    }
    fn plus(&self, rhs: &Self) -> Self {
        let s = self.0 as u128 + rhs.0 as u128;
        Fp((s % P as u128) as u64)
    }
    fn minus(&self, rhs: &Self) -> Self {
        if self.0 >= rhs.0 {
            Fp(self.0 - rhs.0)
        } else {
            Fp(P - (rhs.0 - self.0))
        }
    }
    fn times(&self, rhs: &Self) -> Self {
        Fp(Self::mulmod(self.0, rhs.0))
    }
    fn negated(&self) -> Self {
        if self.0 == 0 {
            *self
        } else {
            Fp(P - self.0)
        }
    }
    fn inverse(&self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
    fn from_i64(v: i64) -> Self {
        Fp::from_i128(v as i128)
    }
}

impl<const P: u64, const G: u64> fmt::Debug for Fp<P, G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}

impl<const P: u64, const G: u64> fmt::Display for Fp<P, G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symmetric())
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_unity_have_exact_order() {
        for m in 1..=40u32 {
            let z = FpA::root_of_unity(m).unwrap();
            assert_eq!(z.pow(m as u64), FpA::one());
            for d in 1..m {
                if m % d == 0 {
                    assert_ne!(z.pow(d as u64), FpA::one(), "m={m} d={d}");
                }
            }
            let w = FpB::root_of_unity(m).unwrap();
            assert_eq!(w.pow(m as u64), FpB::one());
        }
        assert!(FpA::root_of_unity(43).is_err());
    }

    #[test]
    fn reduction_is_a_homomorphism() {
        let a = &Scalar::zeta_pow(12, 5) + &Scalar::ratio(3, 7);
        let b = &Scalar::zeta_pow(12, 2) - &Scalar::ratio(1, 9);
        let ab = &a * &b;
        let (ra, rb, rab) = (
            FpA::from_scalar(&a).unwrap(),
            FpA::from_scalar(&b).unwrap(),
            FpA::from_scalar(&ab).unwrap(),
        );
        assert_eq!(ra.times(&rb), rab);
    }
}
