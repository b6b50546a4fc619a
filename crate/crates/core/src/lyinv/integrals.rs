use serde::Serialize;

use super::invariants::InvariantSet;
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::recmap::{Direction, RecurrenceMap};
use crate::rng::{streams, SampleStream};

/// Attempts per requested trial before giving up on finding good points.
const ATTEMPTS_PER_TRIAL: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct IntegralCheck {
    pub numerator: String,
    pub denominator: String,
    pub trials: usize,
    pub passed: usize,
    pub holds: bool,
}

/// Checks phi = p_i / p_j against phi o h = phi exactly at random affine
/// points (x0 = 1) where p_j and p_j o h do not vanish and h is defined.
pub fn integrals(set: &InvariantSet, m: &RecurrenceMap, trials: usize, seed: u64) -> Result<Vec<IntegralCheck>> {
    if set.a.is_none() {
        return Err(Error::InvalidArgument("integral checks need a numeric a".into()));
    }
    let n = set.k + 1;
    let mut out = Vec::new();
    for (i, num) in set.members.iter().enumerate() {
        for (j, den) in set.members.iter().enumerate() {
            if i == j && i > 0 {
                continue;
            }
            let mut rng = SampleStream::retry(seed, streams::INTEGRALS, (i * n + j) as u64);
            let (mut done, mut passed) = (0, 0);
            for _ in 0..trials * ATTEMPTS_PER_TRIAL {
                if done == trials {
                    break;
                }
                let mut q = vec![Scalar::one()];
                q.extend((1..n).map(|_| rng.scalar()));
                let Some(fq) = m.apply(&q, Direction::Forward) else {
                    continue;
                };
                let (dq, dfq) = (den.poly.eval(&q), den.poly.eval(&fq));
                if dq.is_zero() || dfq.is_zero() {
                    continue;
                }
                done += 1;
                // p_i(f q) p_j(q) = p_i(q) p_j(f q); both have degree k+1
                if &num.poly.eval(&fq) * &dq == &num.poly.eval(&q) * &dfq {
                    passed += 1;
                }
            }
            out.push(IntegralCheck {
                numerator: num.name.clone(),
                denominator: den.name.clone(),
                trials: done,
                passed,
                holds: done == trials && passed == done,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lyinv::{build_invariants, LynessSystem};

    #[test]
    fn ratios_are_invariant() {
        let sys = LynessSystem::numeric(3, Scalar::from_int(5)).unwrap();
        let set = build_invariants(&sys).unwrap();
        let checks = integrals(&set, &sys.map().unwrap(), 10, 1).unwrap();
        assert_eq!(checks.len(), 1 + 3 * 2);
        assert!(checks.iter().all(|c| c.holds), "{checks:?}");
    }

    #[test]
    fn non_invariant_ratio_fails() {
        let sys = LynessSystem::numeric(3, Scalar::from_int(5)).unwrap();
        let mut set = build_invariants(&sys).unwrap();
        // x0^4 is not an invariant: the ratio p0 / x0^4 must fail
        set.members[1].poly = sys.var(0).pow(4).unwrap();
        let checks = integrals(&set, &sys.map().unwrap(), 5, 1).unwrap();
        assert!(checks.iter().any(|c| !c.holds));
    }
}
