use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::cyclotomic::CycloElem;
use super::field::Field;
use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Which exact field a scalar (or a whole parameter set) lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldKind {
    Rational,
    Cyclotomic(u32),
}

impl FieldKind {
    /// The smallest field containing both, or a mismatch error.
    pub fn join(self, other: FieldKind) -> Result<FieldKind> {
        match (self, other) {
            (FieldKind::Rational, x) | (x, FieldKind::Rational) => Ok(x),
            (FieldKind::Cyclotomic(a), FieldKind::Cyclotomic(b)) if a == b => Ok(self),
            _ => Err(Error::FieldMismatch(self.to_string(), other.to_string())),
        }
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Cyclotomic(m) => write!(f, "Q(zeta_{m})"),
        }
    }
}

impl Serialize for FieldKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            FieldKind::Rational => s.serialize_str("rational"),
            FieldKind::Cyclotomic(m) => {
                let mut st = s.serialize_struct("FieldKind", 1)?;
                st.serialize_field("cyclotomic", m)?;
                st.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for FieldKind {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::String(s) if s == "rational" => Ok(FieldKind::Rational),
            serde_json::Value::Object(o) => match o.get("cyclotomic").and_then(|m| m.as_u64()) {
                Some(m) if m >= 1 && m <= u32::MAX as u64 => Ok(FieldKind::Cyclotomic(m as u32)),
                _ => Err(de::Error::custom("expected {\"cyclotomic\": m} with m >= 1")),
            },
            _ => Err(de::Error::custom("expected \"rational\" or {\"cyclotomic\": m}")),
        }
    }
}

/// Exact element of Q or of a cyclotomic field Q(zeta_m).
///
/// Rationals promote automatically when combined with a cyclotomic element;
/// combining two different cyclotomic orders is a `FieldMismatch`.
/// The std operator impls panic on mismatch or division by zero; use the
/// `checked_*` methods to get a `Result`.
#[derive(Clone)]
pub enum Scalar {
    Rational(Rational),
    Cyclotomic(CycloElem),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn from_int<T: Into<BigInt>>(n: T) -> Self {
        Scalar::Rational(Rational::from_integer(n.into()))
    }

    /// p/q; panics when q = 0.
    pub fn ratio<T: Into<BigInt>, U: Into<BigInt>>(p: T, q: U) -> Self {
        Scalar::Rational(Rational::new(p.into(), q.into()))
    }

    pub fn zeta(order: u32) -> Self {
        Self::zeta_pow(order, 1)
    }

    pub fn zeta_pow(order: u32, e: u64) -> Self {
        Scalar::Cyclotomic(CycloElem::zeta_pow(order, e))
    }

    /// Builds sum c_i zeta_m^i, reducing mod Phi_m.
    pub fn cyclotomic(order: u32, coeffs: Vec<Rational>) -> Self {
        Scalar::Cyclotomic(CycloElem::from_coeffs(order, coeffs))
    }

    pub fn field_kind(&self) -> FieldKind {
        match self {
            Scalar::Rational(_) => FieldKind::Rational,
            Scalar::Cyclotomic(c) => FieldKind::Cyclotomic(c.order()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic(c) => c.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().map_or(false, |r| r.is_one())
    }

    /// The value as a rational when it lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Cyclotomic(c) => c.as_rational(),
        }
    }

    /// Lifts into Q(zeta_m) (no-op when already there).
    pub fn promote(&self, kind: FieldKind) -> Result<Scalar> {
        match (self, kind) {
            (_, FieldKind::Rational) => match self {
                Scalar::Rational(_) => Ok(self.clone()),
                Scalar::Cyclotomic(c) => Err(Error::FieldMismatch(
                    format!("Q(zeta_{})", c.order()),
                    "Q".into(),
                )),
            },
            (Scalar::Rational(r), FieldKind::Cyclotomic(m)) => {
                Ok(Scalar::Cyclotomic(CycloElem::from_rational(m, r.clone())))
            }
            (Scalar::Cyclotomic(c), FieldKind::Cyclotomic(m)) => {
                if c.order() == m {
                    Ok(self.clone())
                } else {
                    Err(Error::FieldMismatch(
                        format!("Q(zeta_{})", c.order()),
                        format!("Q(zeta_{m})"),
                    ))
                }
            }
        }
    }

    fn binary(
        &self,
        rhs: &Scalar,
        rat: impl Fn(&Rational, &Rational) -> Rational,
        cyc: impl Fn(&CycloElem, &CycloElem) -> CycloElem,
    ) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(rat(a, b))),
            (Scalar::Cyclotomic(a), Scalar::Rational(b)) => {
                Ok(Scalar::Cyclotomic(cyc(a, &CycloElem::from_rational(a.order(), b.clone()))))
            }
            (Scalar::Rational(a), Scalar::Cyclotomic(b)) => {
                Ok(Scalar::Cyclotomic(cyc(&CycloElem::from_rational(b.order(), a.clone()), b)))
            }
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => {
                if a.order() != b.order() {
                    return Err(Error::FieldMismatch(
                        format!("Q(zeta_{})", a.order()),
                        format!("Q(zeta_{})", b.order()),
                    ));
                }
                Ok(Scalar::Cyclotomic(cyc(a, b)))
            }
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binary(rhs, |a, b| a + b, |a, b| a.add(b))
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.binary(rhs, |a, b| a - b, |a, b| a.sub(b))
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Cyclotomic(a), Scalar::Rational(b)) => Ok(Scalar::Cyclotomic(a.scale(b))),
            (Scalar::Rational(a), Scalar::Cyclotomic(b)) => Ok(Scalar::Cyclotomic(b.scale(a))),
            _ => self.binary(rhs, |a, b| a * b, |a, b| a.mul(b)),
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        let inv = rhs.checked_inv()?;
        self.checked_mul(&inv)
    }

    pub fn checked_inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Cyclotomic(c) => c.inverse().map(Scalar::Cyclotomic).ok_or(Error::DivisionByZero),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        let base = if e < 0 { self.checked_inv()? } else { self.clone() };
        Ok(Field::pow_u(&base, e.unsigned_abs()))
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.checked_inv().ok()
    }
    fn from_i64(v: i64) -> Self {
        Scalar::from_int(v)
    }
    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a == b,
            (None, None) => match (self, other) {
                (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => a == b,
                _ => false,
            },
            _ => false,
        }
    }
}
impl Eq for Scalar {}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self.as_rational() {
            Some(r) => r.hash(state),
            None => {
                if let Scalar::Cyclotomic(c) = self {
                    c.hash(state)
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl<'a> $tr<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{}", e))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(c.neg()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", r),
            Scalar::Cyclotomic(c) => write!(f, "{}", c),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Parses "p", "p/q" (whitespace allowed around the parts).
impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        parse_rational(s).map(Scalar::Rational)
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Scalar::Rational(r) => s.serialize_str(&r.to_string()),
            Scalar::Cyclotomic(c) => {
                let mut st = s.serialize_struct("Cyclotomic", 2)?;
                st.serialize_field("order", &c.order())?;
                let coeffs: Vec<String> = c.coeffs().iter().map(|x| x.to_string()).collect();
                st.serialize_field("coeffs", &coeffs)?;
                st.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        scalar_from_json(&v).map_err(de::Error::custom)
    }
}

fn rational_from_json(v: &serde_json::Value) -> Result<Rational> {
    match v {
        serde_json::Value::String(s) => parse_rational(s),
        serde_json::Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None => Err(Error::Parse(format!("non-integer JSON number {n}; use a \"p/q\" string"))),
        },
        _ => Err(Error::Parse(format!("expected a rational, got {v}"))),
    }
}

/// Accepts "p/q", an integer, or {"order": m, "coeffs": [...]}.
pub(crate) fn scalar_from_json(v: &serde_json::Value) -> Result<Scalar> {
    match v {
        serde_json::Value::Object(o) => {
            let order = o
                .get("order")
                .and_then(|m| m.as_u64())
                .filter(|&m| m >= 1 && m <= u32::MAX as u64)
                .ok_or_else(|| Error::Parse("cyclotomic scalar needs \"order\" >= 1".into()))?;
            let coeffs = o
                .get("coeffs")
                .and_then(|c| c.as_array())
                .ok_or_else(|| Error::Parse("cyclotomic scalar needs \"coeffs\"".into()))?
                .iter()
                .map(rational_from_json)
                .collect::<Result<Vec<_>>>()?;
            Ok(Scalar::cyclotomic(order as u32, coeffs))
        }
        _ => rational_from_json(v).map(Scalar::Rational),
    }
}

impl Scalar {
    /// Sign of a rational scalar; `None` for non-rational values.
    pub fn rational_sign(&self) -> Option<i8> {
        self.as_rational().map(|r| {
            if r.is_zero() {
                0
            } else if r.is_positive() {
                1
            } else {
                -1
            }
        })
    }
}
