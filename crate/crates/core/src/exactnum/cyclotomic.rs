use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::scalar::Rational;

/// Euler's totient.
pub fn euler_phi(m: u32) -> u32 {
    let mut n = m;
    let mut out = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn poly_cache() -> &'static Mutex<HashMap<u32, Vec<BigInt>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of the m-th cyclotomic polynomial, lowest degree
/// first. Computed as (x^m - 1) divided by Phi_d for every proper divisor d.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic order must be positive");
    if let Some(p) = poly_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = -BigInt::one();
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m % d == 0 {
            let den = cyclotomic_polynomial(d);
            num = monic_int_div(&num, &den);
        }
    }
    poly_cache().lock().unwrap().insert(m, num.clone());
    num
}

// exact quotient of integer polynomials by a monic divisor
fn monic_int_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut q = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    q
}

/// The field Q(zeta_m), represented as Q[x] / Phi_m.
#[derive(Debug)]
pub struct CycloField {
    order: u32,
    modulus: Vec<BigInt>,
}

impl CycloField {
    /// Shared handle; fields are interned per order.
    pub fn get(order: u32) -> Arc<CycloField> {
        static FIELDS: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
        let table = FIELDS.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = table.lock().unwrap().get(&order) {
            return f.clone();
        }
        let f = Arc::new(CycloField {
            order,
            modulus: cyclotomic_polynomial(order),
        });
        table.lock().unwrap().entry(order).or_insert(f).clone()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }
}

/// Element of Q(zeta_m): coefficients on 1, zeta, ..., zeta^(phi(m)-1).
#[derive(Clone)]
pub struct CycloElem {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}
impl Eq for CycloElem {}

impl std::hash::Hash for CycloElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl CycloElem {
    pub fn zero(order: u32) -> Self {
        let field = CycloField::get(order);
        let n = field.degree();
        CycloElem {
            field,
            coeffs: vec![Rational::zero(); n],
        }
    }

    pub fn from_rational(order: u32, r: Rational) -> Self {
        let mut e = Self::zero(order);
        e.coeffs[0] = r;
        e
    }

    /// Reduces an arbitrary-length coefficient vector mod Phi_m.
    pub fn from_coeffs(order: u32, coeffs: Vec<Rational>) -> Self {
        let field = CycloField::get(order);
        let coeffs = reduce(&field, coeffs);
        CycloElem { field, coeffs }
    }

    /// zeta_m^e.
    pub fn zeta_pow(order: u32, e: u64) -> Self {
        let e = (e % order as u64) as usize;
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = Rational::one();
        Self::from_coeffs(order, v)
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycloElem {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycloElem {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        CycloElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CycloElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len();
        let mut prod = vec![Rational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CycloElem {
            field: self.field.clone(),
            coeffs: reduce(&self.field, prod),
        }
    }

    /// Inverse by the extended Euclidean algorithm in Q[x] against Phi_m.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            let mut out = Self::zero(self.order());
            out.coeffs[0] = r.recip();
            return Some(out);
        }
        let modulus: Vec<Rational> = self
            .field
            .modulus
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        // invariant: s_i * a == r_i (mod Phi)
        let (mut r0, mut r1) = (modulus, trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (Vec::<Rational>::new(), vec![Rational::one()]);
        while r1.len() > 1 {
            let (q, r) = qdivrem(&r0, &r1);
            let s2 = qsub(&s0, &qmul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant since Phi_m is irreducible
        let c = r1[0].recip();
        let s: Vec<Rational> = s1.iter().map(|x| x * &c).collect();
        Some(CycloElem {
            field: self.field.clone(),
            coeffs: reduce(&self.field, s),
        })
    }
}

fn reduce(field: &CycloField, mut v: Vec<Rational>) -> Vec<Rational> {
    let n = field.degree();
    let m = &field.modulus;
    if v.len() > n {
        for i in (n..v.len()).rev() {
            let c = std::mem::take(&mut v[i]);
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                if !m[j].is_zero() {
                    v[i - n + j] -= &c * &m[j];
                }
            }
        }
    }
    v.resize(n, Rational::zero());
    v
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn qmul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn qsub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

fn qdivrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].recip();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut q = vec![Rational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead;
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] -= &c * y;
        }
        q[shift] = c;
        rem.pop();
        rem = trim(rem);
    }
    (trim(q), rem)
}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let var = match i {
                0 => String::new(),
                1 => format!("z{}", self.order()),
                _ => format!("z{}^{}", self.order(), i),
            };
            if i == 0 {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", var)?;
            } else {
                write!(f, "{}*{}", mag, var)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
        // first cyclotomic with a coefficient of absolute value 2
        let p105 = cyclotomic_polynomial(105);
        assert!(p105.iter().any(|c| c == &BigInt::from(-2)));
        assert_eq!(p105.len() - 1, euler_phi(105) as usize);
    }

    #[test]
    fn zeta_has_exact_order() {
        for m in [3u32, 5, 8, 12, 14] {
            let z = CycloElem::zeta_pow(m, 1);
            let mut p = z.clone();
            for k in 1..m {
                assert!(p.as_rational() != Some(&Rational::one()) || k == m, "order {m}");
                p = p.mul(&z);
            }
            assert_eq!(p.as_rational(), Some(&Rational::one()));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = CycloElem::from_coeffs(
            12,
            vec![Rational::from_integer(3.into()), Rational::new(1.into(), 2.into()), Rational::zero(), Rational::from_integer((-7).into())],
        );
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).as_rational(), Some(&Rational::one()));
    }
}
