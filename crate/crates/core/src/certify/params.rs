use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::orbits::find_nstar;
use crate::recmap::RecurrenceMap;
use crate::rng::{streams, SampleStream};

use super::period::predicted_period;

/// The period-4k parameters over Q(zeta_2k) with alpha_{k-1} = zeta_2k.
pub fn period4k_parameters(k: usize) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    period4k_parameters_with(k, 1)
}

/// Same family with alpha_{k-1} = zeta_2k^e for odd `e`, so that
/// alpha_{k-1}^k = -1 still holds.
pub fn period4k_parameters_with(k: usize, e: u64) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("k = {k}, need k >= 3")));
    }
    if e % 2 == 0 {
        return Err(Error::InvalidArgument(format!("exponent {e} must be odd")));
    }
    let order = 2 * k as u32;
    let z = |p: u64| Scalar::zeta_pow(order, e * p);
    let one_minus = Scalar::one().checked_sub(&z(1))?;
    let mut alpha = vec![Scalar::zero(); k + 1];
    alpha[0] = z(k as u64 - 2).checked_div(&one_minus)?;
    for (j, a) in alpha.iter_mut().enumerate().skip(2) {
        *a = z((k - j) as u64);
    }
    let mut beta = vec![Scalar::zero(); k + 1];
    beta[0] = z(k as u64 - 1);
    beta[1] = Scalar::one();
    Ok((alpha, beta))
}

pub fn period4k_map(k: usize) -> Result<RecurrenceMap> {
    let (alpha, beta) = period4k_parameters(k)?;
    RecurrenceMap::from_scalars(alpha, beta)
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchHit {
    pub alpha: Vec<Scalar>,
    pub beta: Vec<Scalar>,
    pub n_star: usize,
    pub predicted_period: usize,
}

/// Randomized search over critical maps with coefficients among small
/// integer combinations of powers of zeta_order, keeping those whose n*
/// gives a predicted period. Never called by default.
pub fn search_periodic(k: usize, order: u32, tries: usize, seed: u64) -> Result<Vec<SearchHit>> {
    if k < 3 {
        return Err(Error::InvalidArgument(format!("k = {k}, need k >= 3")));
    }
    let mut rng = SampleStream::new(seed, streams::SEARCH);
    let draw = |rng: &mut SampleStream| -> Result<Scalar> {
        let e = rng.int_in(order as u64).unsigned_abs();
        let c = Scalar::from_int(rng.int_in(2));
        c.checked_mul(&Scalar::zeta_pow(order, e))
    };
    let mut hits = Vec::new();
    for _ in 0..tries {
        let mut alpha = Vec::with_capacity(k + 1);
        for j in 0..=k {
            alpha.push(if j == 1 { Scalar::zero() } else { draw(&mut rng)? });
        }
        alpha[k] = Scalar::one();
        let mut beta = vec![Scalar::zero(); k + 1];
        beta[0] = draw(&mut rng)?;
        beta[1] = Scalar::one();
        let Ok(m) = RecurrenceMap::from_scalars(alpha.clone(), beta.clone()) else {
            continue;
        };
        if !m.is_critical() {
            continue;
        }
        let Ok(r) = find_nstar(&m, None, seed) else {
            continue;
        };
        if let Some(n) = r.n_star {
            if let Some(p) = predicted_period(k, n) {
                hits.push(SearchHit { alpha, beta, n_star: n, predicted_period: p });
            }
        }
    }
    Ok(hits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Field;

    #[test]
    fn k3_shape() {
        let (alpha, beta) = period4k_parameters(3).unwrap();
        let z = Scalar::zeta(6);
        assert_eq!(z.pow_u(3), Scalar::from_int(-1));
        let a0 = z.checked_div(&Scalar::one().checked_sub(&z).unwrap()).unwrap();
        assert_eq!(alpha, vec![a0, Scalar::zero(), z.clone(), Scalar::one()]);
        assert_eq!(beta, vec![z.pow_u(2), Scalar::one(), Scalar::zero(), Scalar::zero()]);
    }

    #[test]
    fn k4_shape_and_critical() {
        let (alpha, beta) = period4k_parameters(4).unwrap();
        let z = Scalar::zeta(8);
        assert_eq!(alpha[2], z.pow_u(2));
        assert_eq!(alpha[3], z);
        assert_eq!(beta[0], z.pow_u(3));
        for k in 3..=8 {
            let m = period4k_map(k).unwrap();
            assert!(m.is_critical(), "k = {k}");
            assert_eq!(m.alpha().get(k - 1).pow_u(k as u64), Scalar::from_int(-1));
        }
    }

    #[test]
    fn odd_exponents_only() {
        assert!(period4k_parameters_with(4, 2).is_err());
        let m = RecurrenceMap::from_scalars(
            period4k_parameters_with(4, 3).unwrap().0,
            period4k_parameters_with(4, 3).unwrap().1,
        )
        .unwrap();
        assert!(m.is_critical());
    }
}
