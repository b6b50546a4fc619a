use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{Rational, Scalar};
use crate::multipoly::UniPoly;

/// Integer polynomial, coefficients low degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// c x^e.
    pub fn monomial(c: i64, e: usize) -> Self {
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = BigInt::from(c);
        Self::new(v)
    }

    /// x^e - 1.
    pub fn x_pow_minus_one(e: usize) -> Self {
        Self::monomial(1, e).sub(&Self::one())
    }

    /// Cyclotomic polynomial Phi_n = prod over d | n of (x^d - 1)^mu(n/d).
    pub fn cyclotomic(n: usize) -> Self {
        assert!(n >= 1);
        let (mut num, mut den) = (Self::one(), Self::one());
        for d in (1..=n).filter(|d| n % d == 0) {
            match mobius(n / d) {
                1 => num = num.mul(&Self::x_pow_minus_one(d)),
                -1 => den = den.mul(&Self::x_pow_minus_one(d)),
                _ => {}
            }
        }
        num.div_exact(&den).expect("Mobius product is exact")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    /// Multiplies by -1 if needed so the leading coefficient is positive.
    pub fn sign_normalized(&self) -> Self {
        if self.leading().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn product(factors: &[Self]) -> Self {
        factors.iter().fold(Self::one(), |acc, f| acc.mul(f))
    }

    /// Division by a divisor with leading coefficient +-1.
    pub fn divrem(&self, rhs: &Self) -> Result<(Self, Self)> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lead = rhs.leading();
        if !lead.abs().is_one() {
            return Err(Error::InvalidArgument("divisor must have leading coefficient +-1".into()));
        }
        let mut rem = self.coeffs.clone();
        let dr = rhs.degree();
        if self.is_zero() || self.degree() < dr {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); self.degree() - dr + 1];
        for i in (dr..rem.len()).rev() {
            let q = &rem[i] * &lead;
            if q.is_zero() {
                continue;
            }
            for (j, c) in rhs.coeffs.iter().enumerate() {
                rem[i - dr + j] -= &q * c;
            }
            quot[i - dr] = q;
        }
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn div_exact(&self, rhs: &Self) -> Result<Self> {
        let (q, r) = self.divrem(rhs)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NonDivisible)
        }
    }

    pub fn divides(&self, rhs: &Self) -> bool {
        rhs.divrem(self).is_ok_and(|(_, r)| r.is_zero())
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub(crate) fn to_uni(&self) -> UniPoly<Scalar> {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| Scalar::from_int(c.clone())).collect())
    }

    /// Primitive integer multiple of a rational polynomial.
    pub(crate) fn from_uni(p: &UniPoly<Scalar>) -> Self {
        let rats: Vec<Rational> =
            p.coeffs().iter().map(|c| c.as_rational().cloned().expect("rational coefficient")).collect();
        let den = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let ints: Vec<BigInt> = rats.iter().map(|r| (r * Rational::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let g = if g.is_zero() { BigInt::one() } else { g };
        Self::new(ints.into_iter().map(|c| c / &g).collect()).sign_normalized()
    }

    /// Squarefree part, primitive with positive leading coefficient.
    pub fn squarefree(&self) -> Self {
        if self.degree() < 1 {
            return self.clone();
        }
        let p = self.to_uni();
        let g = p.gcd(&p.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.sign_normalized();
        }
        Self::from_uni(&p.div_exact(&g).expect("gcd divides"))
    }

    /// Splits off cyclotomic factors: returns (d, multiplicity) pairs and
    /// the cofactor with no cyclotomic factor.
    pub fn strip_cyclotomic(&self) -> (Vec<(usize, u32)>, IntPoly) {
        let mut rest = self.clone();
        let mut found = Vec::new();
        // n / phi(n) < 6 far beyond any degree used here
        for d in 1..=6 * self.degree() + 6 {
            if rest.degree() == 0 {
                break;
            }
            if phi(d) > rest.degree() {
                continue;
            }
            let c = Self::cyclotomic(d);
            let mut mult = 0;
            while let Ok(q) = rest.div_exact(&c) {
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                found.push((d, mult));
            }
        }
        (found, rest)
    }

    /// True when every root is a root of unity.
    pub fn is_cyclotomic_product(&self) -> bool {
        let (_, rest) = self.strip_cyclotomic();
        rest.degree() == 0
    }
}

fn mobius(mut n: usize) -> i32 {
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            out = -out;
        }
        p += 1;
    }
    if n > 1 {
        out = -out;
    }
    out
}

/// Euler's totient.
pub(crate) fn phi(n: usize) -> usize {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = a.is_one() && i > 0;
            if !unit {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if unit { "" } else { "*" })?,
                _ => write!(f, "{}x^{i}", if unit { "" } else { "*" })?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            match c.to_i64() {
                Some(v) => seq.serialize_element(&v)?,
                None => seq.serialize_element(&c.to_string())?,
            }
        }
        seq.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomics() {
        assert_eq!(IntPoly::cyclotomic(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(IntPoly::cyclotomic(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(IntPoly::cyclotomic(6), IntPoly::from_i64(&[1, -1, 1]));
        assert_eq!(IntPoly::cyclotomic(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        for n in 1..40 {
            assert_eq!(IntPoly::cyclotomic(n).degree(), phi(n));
        }
    }

    #[test]
    fn division_and_display() {
        // x^5 - x^2 - x - 1 = (x^3 - x - 1)(x^2 + 1)
        let p = IntPoly::from_i64(&[-1, -1, -1, 0, 0, 1]);
        let q = p.div_exact(&IntPoly::from_i64(&[1, 0, 1])).unwrap();
        assert_eq!(q, IntPoly::from_i64(&[-1, -1, 0, 1]));
        assert_eq!(q.to_string(), "x^3 - x - 1");
        assert_eq!(IntPoly::from_i64(&[3, -2, 0, 1]).to_string(), "x^3 - 2*x + 3");
        assert!(matches!(p.div_exact(&IntPoly::from_i64(&[-1, 1])), Err(Error::NonDivisible)));
        let (cyc, rest) = p.strip_cyclotomic();
        assert_eq!(cyc, vec![(4, 1)]);
        assert_eq!(rest, q);
    }

    #[test]
    fn squarefree_part() {
        let p = IntPoly::from_i64(&[-1, 1]).pow(3).mul(&IntPoly::from_i64(&[1, 1]));
        assert_eq!(p.squarefree(), IntPoly::from_i64(&[-1, 0, 1]));
        assert_eq!(IntPoly::x_pow_minus_one(8).strip_cyclotomic().0.len(), 4);
    }
}
