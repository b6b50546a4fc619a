//! Binary fixed-point reals and complexes over BigInt.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{Rational, Scalar};

/// The real number `mant / 2^bits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFixed {
    pub mant: BigInt,
    pub bits: u32,
}

impl BigFixed {
    pub fn zero(bits: u32) -> Self {
        BigFixed { mant: BigInt::zero(), bits }
    }

    pub fn one(bits: u32) -> Self {
        BigFixed { mant: BigInt::one() << bits, bits }
    }

    pub fn from_int(n: i64, bits: u32) -> Self {
        BigFixed { mant: BigInt::from(n) << bits, bits }
    }

    pub fn from_rational(r: &Rational, bits: u32) -> Self {
        BigFixed {
            mant: (r.numer() << bits) / r.denom(),
            bits,
        }
    }

    pub fn from_f64(x: f64, bits: u32) -> Self {
        let (m, e) = frexp(x);
        // x = m * 2^e with m an integer of <= 53 bits
        let mant = BigInt::from(m);
        let shift = e + bits as i64;
        let mant = if shift >= 0 { mant << shift as u32 } else { mant >> (-shift) as u32 };
        BigFixed { mant, bits }
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mant.clone(), BigInt::one() << self.bits)
    }

    pub fn to_f64(&self) -> f64 {
        let excess = self.mant.bits() as i64 - 60;
        if excess > 0 {
            let m = (&self.mant >> excess as u32).to_f64().unwrap_or(f64::NAN);
            m * 2f64.powi((excess - self.bits as i64) as i32)
        } else {
            self.mant.to_f64().unwrap_or(f64::NAN) * 2f64.powi(-(self.bits as i32))
        }
    }

    /// Rescales to a different number of fractional bits (truncating).
    pub fn with_bits(&self, bits: u32) -> Self {
        let mant = if bits >= self.bits {
            &self.mant << (bits - self.bits)
        } else {
            &self.mant >> (self.bits - bits)
        };
        BigFixed { mant, bits }
    }

    pub fn div(&self, rhs: &BigFixed) -> BigFixed {
        BigFixed {
            mant: (&self.mant << self.bits) / &rhs.mant,
            bits: self.bits,
        }
    }

    pub fn sqrt(&self) -> BigFixed {
        BigFixed {
            mant: (&self.mant << self.bits).sqrt(),
            bits: self.bits,
        }
    }

    pub fn abs(&self) -> BigFixed {
        BigFixed { mant: self.mant.abs(), bits: self.bits }
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn scale_int(&self, n: i64) -> BigFixed {
        BigFixed { mant: &self.mant * n, bits: self.bits }
    }

    pub fn div_int(&self, n: i64) -> BigFixed {
        BigFixed { mant: &self.mant / n, bits: self.bits }
    }
}

fn frexp(x: f64) -> (i64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (0, 0);
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { -1 } else { 1 };
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = (bits & ((1u64 << 52) - 1)) as i64;
    if exp == 0 {
        (sign * frac, -1074)
    } else {
        (sign * (frac | (1i64 << 52)), exp - 1075)
    }
}

impl Add for &BigFixed {
    type Output = BigFixed;
    fn add(self, rhs: &BigFixed) -> BigFixed {
        debug_assert_eq!(self.bits, rhs.bits);
        BigFixed { mant: &self.mant + &rhs.mant, bits: self.bits }
    }
}

impl Sub for &BigFixed {
    type Output = BigFixed;
    fn sub(self, rhs: &BigFixed) -> BigFixed {
        debug_assert_eq!(self.bits, rhs.bits);
        BigFixed { mant: &self.mant - &rhs.mant, bits: self.bits }
    }
}

impl Mul for &BigFixed {
    type Output = BigFixed;
    fn mul(self, rhs: &BigFixed) -> BigFixed {
        debug_assert_eq!(self.bits, rhs.bits);
        BigFixed { mant: (&self.mant * &rhs.mant) >> self.bits, bits: self.bits }
    }
}

impl Neg for &BigFixed {
    type Output = BigFixed;
    fn neg(self) -> BigFixed {
        BigFixed { mant: -&self.mant, bits: self.bits }
    }
}

// arctan(1/x) for integer x > 1
fn arctan_inv(x: i64, bits: u32) -> BigInt {
    let one = BigInt::one() << bits;
    let x2 = BigInt::from(x * x);
    let mut power = &one / x; // 1/x^(2n+1)
    let mut sum = power.clone();
    let mut n = 1i64;
    loop {
        power = &power / &x2;
        if power.is_zero() {
            break;
        }
        let term = &power / (2 * n + 1);
        if n % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        n += 1;
    }
    sum
}

/// pi to `bits` fractional bits (Machin's formula, 32 guard bits).
pub fn pi_fixed(bits: u32) -> BigFixed {
    let w = bits + 32;
    let pi = arctan_inv(5, w) * 16 - arctan_inv(239, w) * 4;
    BigFixed { mant: pi >> 32u32, bits }
}

// cos and sin of theta by Taylor series; theta should be O(1)
fn cos_sin(theta: &BigFixed) -> (BigFixed, BigFixed) {
    let bits = theta.bits;
    let mut term = BigFixed::one(bits);
    let mut cos = BigFixed::zero(bits);
    let mut sin = BigFixed::zero(bits);
    let mut n = 0i64;
    while !term.mant.is_zero() {
        match n % 4 {
            0 => cos = &cos + &term,
            1 => sin = &sin + &term,
            2 => cos = &cos - &term,
            _ => sin = &sin - &term,
        }
        n += 1;
        term = (&term * theta).div_int(n);
    }
    (cos, sin)
}

/// Complex number with fixed-point parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigComplex {
    pub re: BigFixed,
    pub im: BigFixed,
}

impl BigComplex {
    pub fn zero(bits: u32) -> Self {
        BigComplex { re: BigFixed::zero(bits), im: BigFixed::zero(bits) }
    }

    pub fn one(bits: u32) -> Self {
        BigComplex { re: BigFixed::one(bits), im: BigFixed::zero(bits) }
    }

    pub fn from_real(re: BigFixed) -> Self {
        let bits = re.bits;
        BigComplex { re, im: BigFixed::zero(bits) }
    }

    pub fn from_c64(z: Complex64, bits: u32) -> Self {
        BigComplex { re: BigFixed::from_f64(z.re, bits), im: BigFixed::from_f64(z.im, bits) }
    }

    pub fn bits(&self) -> u32 {
        self.re.bits
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn with_bits(&self, bits: u32) -> Self {
        BigComplex { re: self.re.with_bits(bits), im: self.im.with_bits(bits) }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        BigComplex { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        BigComplex { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        BigComplex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        let bits = self.bits();
        let f = |x: &BigFixed| BigFixed { mant: (&x.mant * r.numer()) / r.denom(), bits };
        BigComplex { re: f(&self.re), im: f(&self.im) }
    }

    pub fn norm_sqr(&self) -> BigFixed {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> BigFixed {
        self.norm_sqr().sqrt()
    }

    /// `None` when the divisor rounds to zero.
    pub fn div(&self, rhs: &Self) -> Option<Self> {
        let den = rhs.norm_sqr();
        if den.mant.is_zero() {
            return None;
        }
        let conj = BigComplex { re: rhs.re.clone(), im: -&rhs.im };
        let num = self.mul(&conj);
        Some(BigComplex { re: num.re.div(&den), im: num.im.div(&den) })
    }
}

/// exp(2 pi i / m) at `bits` fractional bits.
pub fn root_of_unity_fixed(m: u32, bits: u32) -> BigComplex {
    let w = bits + 16;
    let theta = pi_fixed(w).scale_int(2).div_int(m as i64);
    let (c, s) = cos_sin(&theta);
    BigComplex { re: c, im: s }.with_bits(bits)
}

/// Complex value of an exact scalar under zeta_m -> exp(2 pi i / m),
/// accurate to about 2^-precision relative to the coefficient size.
pub fn embed_complex(a: &Scalar, precision: u32) -> BigComplex {
    let w = precision + 64;
    let out = match a {
        Scalar::Rational(r) => BigComplex::from_real(BigFixed::from_rational(r, w)),
        Scalar::Cyclotomic(c) => {
            let z = root_of_unity_fixed(c.order(), w);
            let mut acc = BigComplex::zero(w);
            let mut zp = BigComplex::one(w);
            for coef in c.coeffs() {
                if !coef.is_zero() {
                    acc = acc.add(&zp.scale_rational(coef));
                }
                zp = zp.mul(&z);
            }
            acc
        }
    };
    out.with_bits(precision)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let pi = pi_fixed(200);
        assert!((pi.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        // pi = 3.14159265358979323846264338327950288...
        let scaled = (&pi.mant * BigInt::from(10).pow(30)) >> 200u32;
        assert_eq!(scaled.to_string(), "3141592653589793238462643383279");
    }

    #[test]
    fn embed_zeta() {
        let z = embed_complex(&Scalar::zeta(8), 100).to_c64();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((z.re - h).abs() < 1e-15 && (z.im - h).abs() < 1e-15);
    }

    #[test]
    fn from_f64_roundtrip() {
        for x in [0.0, 1.5, -3.25e-7, 12345.678] {
            assert_eq!(BigFixed::from_f64(x, 90).to_f64(), x);
        }
    }
}
