use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use super::intpoly::IntPoly;
use super::matrix::{identity, is_identity, mat_pow, poly_at_matrix, rank, BigMat, PicMatrix};
use super::models::{chi_numerator, closed_form_charpoly, Model};
use super::spectral::{spectral_radius, SpectralRadius, DEFAULT_PRECISION};
use crate::error::{Error, Result};

/// Orders beyond this are reported as unknown.
const ORDER_CAP: u64 = 1 << 20;

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GrowthClass {
    Exponential { radius: SpectralRadius },
    Polynomial { degree: u32 },
    /// Periodic action; `order` is the least n with M^n = I when found.
    Bounded { order: Option<u64> },
}

impl GrowthClass {
    pub fn name(&self) -> &'static str {
        match self {
            GrowthClass::Exponential { .. } => "exponential",
            GrowthClass::Polynomial { .. } => "polynomial",
            GrowthClass::Bounded { .. } => "bounded",
        }
    }
}

/// ranks of (M - I)^j for j = 1..=j_max.
pub fn unipotent_ranks(m: &PicMatrix, j_max: usize) -> Vec<usize> {
    power_ranks(&m.big(), &IntPoly::from_i64(&[-1, 1]), j_max)
}

fn power_ranks(a: &BigMat, p: &IntPoly, j_max: usize) -> Vec<usize> {
    let base = poly_at_matrix(p, a);
    let mut cur = base.clone();
    let mut out = Vec::with_capacity(j_max);
    for j in 0..j_max {
        if j > 0 {
            cur = super::matrix::mat_mul(&cur, &base);
        }
        out.push(rank(&cur));
    }
    out
}

/// Size of the largest Jordan block for eigenvalues that are roots of Phi_d,
/// from the ranks of Phi_d(M)^j.
fn block_size(a: &BigMat, d: usize, mult: u32) -> usize {
    let ranks = power_ranks(a, &IntPoly::cyclotomic(d), mult as usize + 1);
    ranks.windows(2).position(|w| w[0] == w[1]).map_or(ranks.len(), |i| i + 1)
}

/// Largest Jordan block at eigenvalue 1 (0 if 1 is not an eigenvalue).
pub fn jordan_block_at_one(m: &PicMatrix) -> usize {
    let cp = m.charpoly();
    let (cyc, _) = cp.strip_cyclotomic();
    match cyc.iter().find(|(d, _)| *d == 1) {
        None => 0,
        Some(&(_, mult)) => block_size(&m.big(), 1, mult),
    }
}

/// Least n dividing `bound` with M^n = I.
fn order_dividing(a: &BigMat, bound: u64) -> Option<u64> {
    if bound > ORDER_CAP || !is_identity(&mat_pow(a, bound)) {
        return None;
    }
    let mut n = bound;
    let mut f = 2;
    let mut rest = bound;
    while rest > 1 {
        if rest % f == 0 {
            while rest % f == 0 {
                rest /= f;
            }
            while n % f == 0 && is_identity(&mat_pow(a, n / f)) {
                n /= f;
            }
        }
        f += 1;
    }
    Some(n)
}

/// Least n with M^n = I, if found below the cap.
pub fn matrix_order(m: &PicMatrix) -> Option<u64> {
    let (cyc, rest) = m.charpoly().strip_cyclotomic();
    if rest.degree() > 0 {
        return None;
    }
    let l = cyc.iter().fold(1u64, |acc, (d, _)| acc.lcm(&(*d as u64)));
    order_dividing(&m.big(), l)
}

/// Exponential when some eigenvalue lies off the unit circle (for a monic
/// integer char poly this is exactly a non-cyclotomic factor with nonzero
/// roots), otherwise polynomial of degree (largest Jordan block - 1), or
/// bounded when the action is diagonalizable.
pub fn growth_classification(m: &PicMatrix) -> Result<GrowthClass> {
    let cp = m.charpoly();
    let (cyc, mut rest) = cp.strip_cyclotomic();
    while rest.degree() >= 1 && rest.coeff(0) == BigInt::from(0) {
        rest = IntPoly::new(rest.coeffs()[1..].to_vec());
    }
    if rest.degree() > 0 {
        return Ok(GrowthClass::Exponential { radius: spectral_radius(&cp, DEFAULT_PRECISION)? });
    }
    let a = m.big();
    let block = cyc.iter().map(|&(d, mult)| block_size(&a, d, mult)).max().unwrap_or(1);
    if block > 1 {
        return Ok(GrowthClass::Polynomial { degree: block as u32 - 1 });
    }
    let l = cyc.iter().fold(1u64, |acc, (d, _)| acc.lcm(&(*d as u64)));
    Ok(GrowthClass::Bounded { order: order_dividing(&a, l) })
}

/// Entry i is the H-coefficient of M^i H.
pub fn predicted_degree_sequence(m: &PicMatrix, n: usize) -> Vec<BigInt> {
    m.h_sequence(n)
}

#[derive(Clone, Debug, Serialize)]
pub struct ChiDiagnostics {
    pub k: usize,
    pub n_star: usize,
    pub chi: IntPoly,
    /// chi(1).
    pub value_at_one: i64,
    /// chi'(1) = (1 - k) n* + k (k + 1).
    pub derivative_at_one: i64,
    /// Second derivative of (x - 1) chi at 1, equal to 2 chi'(1).
    pub second_derivative: i64,
    pub radius: SpectralRadius,
}

impl ChiDiagnostics {
    pub fn derivative_sign(&self) -> i8 {
        self.derivative_at_one.signum() as i8
    }
}

fn small(v: BigInt) -> Result<i64> {
    i64::try_from(&v).map_err(|_| Error::Overflow("chi value"))
}

pub fn chi_diagnostics(k: usize, n_star: usize) -> Result<ChiDiagnostics> {
    let chi = closed_form_charpoly(Model::NStar(n_star), k)?;
    let one = BigInt::one();
    let num = chi_numerator(k, n_star);
    Ok(ChiDiagnostics {
        k,
        n_star,
        value_at_one: small(chi.eval(&one))?,
        derivative_at_one: small(chi.derivative().eval(&one))?,
        second_derivative: small(num.derivative().derivative().eval(&one))?,
        radius: spectral_radius(&chi, DEFAULT_PRECISION)?,
        chi,
    })
}

/// Frobenius-type norm growth check: max |(M^n)_ij| / n^2 for n = 1..=n_max.
pub fn max_entry_over_n2(m: &PicMatrix, n_max: usize) -> f64 {
    let a = m.big();
    let mut cur = identity(a.len());
    let mut worst: f64 = 0.0;
    for n in 1..=n_max {
        cur = super::matrix::mat_mul(&cur, &a);
        let e = super::matrix::max_abs(&cur).to_string().parse::<f64>().unwrap_or(f64::INFINITY);
        worst = worst.max(e / (n * n) as f64);
    }
    worst
}
