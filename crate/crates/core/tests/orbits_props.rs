use linfrac::exactnum::Field;
use linfrac::linalg::rank;
use linfrac::orbits::{exceptional_chain, identify, named_hypersurface, LinearSubspace, Named, StepKind};
use linfrac::rng::SampleStream;
use linfrac::recmap::{Covector, Direction};
use linfrac::{RecurrenceMap, Scalar};
use proptest::prelude::*;

fn ints(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(lo..=hi, n)
}

fn scalars(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

fn any_map() -> impl Strategy<Value = RecurrenceMap> {
    (3usize..=4)
        .prop_flat_map(|k| (ints(k + 1, -3, 3), ints(k + 1, -3, 3)))
        .prop_filter_map("inadmissible", |(a, b)| RecurrenceMap::from_ints(&a, &b).ok())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn hyperplane_images_have_codimension_one(m in any_map(), raw in ints(5, -5, 5), seed in 0u64..1000) {
        // f(H) lies in the hypersurface {l o f^-1 = 0} and Df has rank k on the cone over H
        let n = m.k() + 1;
        let cov = Covector::new(scalars(&raw[..n]));
        prop_assume!(cov.is_ok());
        let cov = cov.unwrap();
        let mut x0 = vec![0i64; n];
        x0[0] = 1;
        let exceptional = [Covector::from_ints(&x0).unwrap(), m.beta().clone(), m.gamma().clone()];
        prop_assume!(exceptional.iter().all(|e| !e.same_hyperplane(&cov)));
        let h = LinearSubspace::from_covectors(n, &[&cov]).unwrap();
        let image_eq = cov.form().substitute(m.inverse_components()).unwrap();
        prop_assert!(!image_eq.is_zero());
        let basis = h.basis();
        let comps = m.forward_components();
        let mut rng = SampleStream::new(seed, 99);
        let mut full_rank = false;
        for _ in 0..5 {
            let coeffs: Vec<Scalar> = (0..basis.len()).map(|_| rng.scalar()).collect();
            let x: Vec<Scalar> = (0..n)
                .map(|i| basis.iter().zip(&coeffs).fold(Scalar::zero(), |acc, (b, c)| acc.plus(&c.times(&b[i]))))
                .collect();
            let Some(y) = m.apply(&x, Direction::Forward) else { continue };
            prop_assert!(image_eq.eval(&y).is_zero());
            let rows: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|b| comps.iter().map(|c| (0..n).fold(Scalar::zero(), |acc, i| acc.plus(&c.partial(i).eval(&x).times(&b[i])))).collect())
                .collect();
            full_rank |= rank(&rows) == n - 1;
        }
        prop_assert!(full_rank);
    }

    #[test]
    fn equality_is_an_equivalence(n in 3usize..=5, raw in prop::collection::vec(ints(5, -4, 4), 2), mix in ints(8, -3, 3)) {
        let pts: Vec<Vec<Scalar>> = raw.iter().map(|r| scalars(&r[..n])).collect();
        let v1 = LinearSubspace::span(n, &pts);
        prop_assume!(v1.is_ok());
        let v1 = v1.unwrap();
        prop_assume!(v1.dim() == 1);
        let combine = |a: i64, b: i64| -> Vec<Scalar> {
            (0..n).map(|i| {
                Scalar::from_int(a).checked_mul(&pts[0][i]).unwrap()
                    .checked_add(&Scalar::from_int(b).checked_mul(&pts[1][i]).unwrap()).unwrap()
            }).collect()
        };
        prop_assume!(mix[0] * mix[3] - mix[1] * mix[2] != 0 && mix[4] * mix[7] - mix[5] * mix[6] != 0);
        let v2 = LinearSubspace::span(n, &[combine(mix[0], mix[1]), combine(mix[2], mix[3])]).unwrap();
        let v3 = LinearSubspace::span(n, &[combine(mix[4], mix[5]), combine(mix[6], mix[7])]).unwrap();
        let eq = LinearSubspace::from_equations(n, v1.equations().to_vec()).unwrap();
        prop_assert!(v1 == v2 && v2 == v1);
        prop_assert!(v2 == v3 && v1 == v3);
        prop_assert!(eq == v1);
        prop_assert!(v1.contains(&v2) && v2.contains(&v1));
    }
}

/// Sigma_beta -> e_k -> ... -> Sigma_0 -> ... -> Sigma_B -> ... -> Sigma_beta:
/// k + k + (k - 1) steps, i.e. 3k centers counting Sigma_beta at both ends.
#[test]
fn critical_chain_closes_after_3k_centers() {
    for k in 3..=6 {
        for m in [RecurrenceMap::lyness(k, Scalar::from_int(2)).unwrap(), RecurrenceMap::lyness(k, Scalar::ratio(-5, 3)).unwrap()] {
            let mut cur = named_hypersurface(&m, Named::SigmaBeta);
            let mut lengths = Vec::new();
            let mut ends = Vec::new();
            for _ in 0..3 {
                let chain = exceptional_chain(&m, &cur, Direction::Forward, 4 * k, 1).unwrap();
                lengths.push(chain.len());
                cur = chain.last().clone();
                ends.push(identify(&m, &cur));
                if chain.kinds().contains(&StepKind::Regular) {
                    assert!(chain.kinds().iter().all(|s| *s == StepKind::Regular));
                }
            }
            assert_eq!(ends, [Some(Named::Sigma0), Some(Named::SigmaB), Some(Named::SigmaBeta)], "k = {k}");
            assert_eq!(lengths, [k, k, k - 1]);
            assert_eq!(lengths.iter().sum::<usize>() + 1, 3 * k);
        }
    }
}
