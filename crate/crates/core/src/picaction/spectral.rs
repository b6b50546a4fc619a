use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::intpoly::IntPoly;
use crate::error::{Error, Result};
use crate::exactnum::{BigComplex, BigFixed, Rational};

pub const DEFAULT_PRECISION: u32 = 128;

/// Largest root modulus of an integer polynomial.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralRadius {
    pub value: f64,
    /// Decimal expansion to about precision * log10(2) digits.
    pub decimal: String,
    /// All roots are roots of unity (or zero) and the radius is exactly 1 (or 0).
    pub exact: bool,
    /// The dominant modulus is attained by a real root.
    pub real_dominant: bool,
    /// The dominant modulus is attained by a non-real conjugate pair.
    pub complex_pair_dominant: bool,
    /// Rational interval with a sign change isolating the dominant real root.
    #[serde(serialize_with = "ser_interval")]
    pub interval: Option<(Rational, Rational)>,
    /// Cyclotomic factors Phi_d with multiplicities, from the squarefree part.
    pub cyclotomic_factors: Vec<(usize, u32)>,
    pub precision: u32,
}

fn ser_interval<S: serde::Serializer>(v: &Option<(Rational, Rational)>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some((a, b)) => s.collect_seq([a.to_string(), b.to_string()]),
    }
}

impl SpectralRadius {
    pub fn exceeds_one(&self, tol: f64) -> bool {
        !self.exact && self.value > 1.0 + tol
    }
}

fn decimal(x: &BigFixed, digits: usize) -> String {
    let neg = x.mant.is_negative();
    let scaled: BigInt = (x.mant.abs() * BigInt::from(10).pow(digits as u32)) >> x.bits;
    let s = format!("{:0>width$}", scaled.to_string(), width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{}{}.{}", if neg { "-" } else { "" }, int, frac)
}

/// Simultaneous root approximation (Aberth-Ehrlich) in double precision.
fn aberth(p: &IntPoly) -> Result<Vec<Complex64>> {
    let n = p.degree();
    let lead = p.leading().to_string().parse::<f64>().unwrap_or(f64::NAN);
    let c: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|x| x.to_string().parse::<f64>().unwrap_or(f64::NAN) / lead)
        .collect();
    let dc: Vec<f64> = (1..=n).map(|i| c[i] * i as f64).collect();
    let bound = 1.0 + c[..n].iter().map(|x| x.abs()).fold(0.0, f64::max);
    let eval = |coef: &[f64], z: Complex64| coef.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a);
    let mut z: Vec<Complex64> = (0..n)
        .map(|i| Complex64::from_polar(bound.min(2.0).max(0.5), 2.0 * std::f64::consts::PI * (i as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let pv = eval(&c, z[i]);
            let dv = eval(&dc, z[i]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dv;
            let sum: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * sum);
            if w.is_finite() {
                z[i] -= w;
                worst = worst.max(w.norm() / z[i].norm().max(1e-300));
            }
        }
        if worst < 1e-15 {
            return Ok(z);
        }
    }
    // accept the last iterate; Newton polishing decides convergence
    if z.iter().all(|x| x.is_finite()) {
        Ok(z)
    } else {
        Err(Error::PrecisionExhausted("root iteration diverged".into()))
    }
}

fn horner(coeffs: &[BigFixed], z: &BigComplex) -> BigComplex {
    let bits = z.bits();
    coeffs
        .iter()
        .rev()
        .fold(BigComplex::zero(bits), |acc, c| acc.mul(z).add(&BigComplex::from_real(c.clone())))
}

/// Newton refinement of a simple root at `bits` fractional bits.
fn polish(p: &IntPoly, z0: Complex64, bits: u32) -> Result<BigComplex> {
    let w = bits + 32;
    let to_fixed = |c: &BigInt| BigFixed::from_rational(&Rational::from_integer(c.clone()), w);
    let pc: Vec<BigFixed> = p.coeffs().iter().map(to_fixed).collect();
    let dc: Vec<BigFixed> = p.derivative().coeffs().iter().map(to_fixed).collect();
    let mut z = BigComplex::from_c64(z0, w);
    let eps = BigFixed { mant: BigInt::from(1) << 8u32, bits: w };
    for _ in 0..400 {
        let step = horner(&pc, &z)
            .div(&horner(&dc, &z))
            .ok_or_else(|| Error::PrecisionExhausted("derivative vanished at a root".into()))?;
        z = z.sub(&step);
        if step.abs().mant <= eps.mant {
            return Ok(z.with_bits(bits));
        }
    }
    Err(Error::PrecisionExhausted(format!("Newton refinement did not reach {bits} bits")))
}

/// Maximum modulus of the complex roots of `p`, refined to `precision` bits.
pub fn spectral_radius(p: &IntPoly, precision: u32) -> Result<SpectralRadius> {
    if p.degree() < 1 {
        return Err(Error::InvalidArgument("constant polynomial".into()));
    }
    let precision = precision.max(53);
    let digits = (precision as f64 * std::f64::consts::LOG10_2) as usize - 2;
    let sf = p.squarefree();
    let (cyclotomic_factors, mut rest) = sf.strip_cyclotomic();
    while rest.degree() >= 1 && rest.coeff(0).is_zero() {
        rest = IntPoly::new(rest.coeffs()[1..].to_vec());
    }
    let unit = if cyclotomic_factors.is_empty() { 0 } else { 1 };
    let exact_result = |r: i64| SpectralRadius {
        value: r as f64,
        decimal: decimal(&BigFixed::from_int(r, precision), digits),
        exact: true,
        real_dominant: r == 1 && cyclotomic_factors.iter().any(|(d, _)| *d <= 2),
        complex_pair_dominant: r == 1 && cyclotomic_factors.iter().any(|(d, _)| *d > 2),
        interval: None,
        cyclotomic_factors: cyclotomic_factors.clone(),
        precision,
    };
    if rest.degree() == 0 {
        return Ok(exact_result(unit));
    }
    let approx = aberth(&rest)?;
    let roots: Vec<BigComplex> = approx.iter().map(|z| polish(&rest, *z, precision)).collect::<Result<_>>()?;
    let moduli: Vec<BigFixed> = roots.iter().map(|z| z.abs()).collect();
    let best = moduli.iter().max_by(|a, b| a.mant.cmp(&b.mant)).unwrap().clone();
    let tol = BigInt::from(1) << (precision / 2);
    let one = BigFixed::one(precision);
    if unit == 1 && best.mant < &one.mant - &tol {
        return Ok(exact_result(1));
    }
    let dominant: Vec<&BigComplex> =
        roots.iter().zip(&moduli).filter(|(_, m)| &best.mant - &m.mant <= tol).map(|(z, _)| z).collect();
    let real_root = dominant.iter().find(|z| z.im.mant.abs() <= tol);
    let complex_pair_dominant = dominant.iter().any(|z| z.im.mant.abs() > tol)
        || (unit == 1 && (&best.mant - &one.mant).abs() <= tol && cyclotomic_factors.iter().any(|(d, _)| *d > 2));
    let interval = match real_root {
        None => None,
        Some(z) => Some(isolate(&rest, &z.re.to_rational(), precision)?),
    };
    Ok(SpectralRadius {
        value: best.to_f64(),
        decimal: decimal(&best, digits),
        exact: false,
        real_dominant: real_root.is_some(),
        complex_pair_dominant,
        interval,
        cyclotomic_factors,
        precision,
    })
}

/// Narrow rational interval around `r` where `p` changes sign.
fn isolate(p: &IntPoly, r: &Rational, precision: u32) -> Result<(Rational, Rational)> {
    let mut half = Rational::new(BigInt::from(1), BigInt::from(1) << (precision - 16));
    for _ in 0..32 {
        let lo = r - &half;
        let hi = r + &half;
        let (a, b) = (p.eval_rational(&lo), p.eval_rational(&hi));
        if (a.is_negative() && b.is_positive()) || (a.is_positive() && b.is_negative()) {
            return Ok((lo, hi));
        }
        half = half * Rational::from_integer(BigInt::from(2));
    }
    Err(Error::PrecisionExhausted("no sign change around the dominant real root".into()))
}
