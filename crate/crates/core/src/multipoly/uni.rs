use crate::error::{Error, Result};
use crate::exactnum::Field;

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> UniPoly<F> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn x() -> Self {
        Self::from_coeffs(vec![F::zero(), F::one()])
    }

    /// a + b t
    pub fn linear(a: F, b: F) -> Self {
        Self::from_coeffs(vec![a, b])
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of t^i (zero past the end).
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Self::from_coeffs(v)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly { coeffs: self.coeffs.iter().map(|c| c.negated()).collect() }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly { coeffs: self.coeffs.iter().map(|x| x.times(c)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.mul_trunc(rhs, usize::MAX)
    }

    /// Product keeping only terms of degree < `n`.
    pub fn mul_trunc(&self, rhs: &Self, n: usize) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let len = (self.coeffs.len() + rhs.coeffs.len() - 1).min(n);
        let mut out = vec![F::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        Self::from_coeffs(out)
    }

    pub fn truncate(&self, n: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(n).cloned().collect())
    }

    /// Divides by t^v, dropping lower terms.
    pub fn shift_down(&self, v: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().skip(v).cloned().collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(F::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn eval(&self, t: &F) -> F {
        self.coeffs.iter().rev().fold(F::zero(), |acc, c| acc.times(t).plus(c))
    }

    pub fn derivative(&self) -> Self {
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.times(&F::from_i64(i as i64)))
            .collect();
        Self::from_coeffs(v)
    }

    pub fn divrem(&self, rhs: &Self) -> Result<(Self, Self)> {
        let db = rhs.degree().ok_or(Error::DivisionByZero)?;
        let inv = rhs.leading().unwrap().inverse().ok_or(Error::DivisionByZero)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= db {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![F::zero(); rem.len() - db];
        for i in (0..q.len()).rev() {
            let c = rem[i + db].times(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].minus(&c.times(b));
            }
            q[i] = c;
        }
        rem.truncate(db);
        Ok((Self::from_coeffs(q), Self::from_coeffs(rem)))
    }

    /// Exact quotient; `NotDivisible` on a nonzero remainder.
    pub fn div_exact(&self, rhs: &Self) -> Result<Self> {
        let (q, r) = self.divrem(rhs)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::NotDivisible)
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inverse().unwrap()),
        }
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r.monic());
        }
        a.monic()
    }
}

/// Divides a tuple of univariate polynomials by the monic gcd of all of
/// them. Returns the stripped tuple and the gcd.
pub fn uni_gcd_strip<F: Field>(comps: &[UniPoly<F>]) -> Result<(Vec<UniPoly<F>>, UniPoly<F>)> {
    let mut g = UniPoly::zero();
    for c in comps {
        g = g.gcd(c);
        if g.degree() == Some(0) {
            break;
        }
    }
    if g.is_zero() {
        return Err(Error::AllZero);
    }
    if g.degree() == Some(0) {
        return Ok((comps.to_vec(), g));
    }
    let out = comps.iter().map(|c| c.div_exact(&g)).collect::<Result<Vec<_>>>()?;
    Ok((out, g))
}
