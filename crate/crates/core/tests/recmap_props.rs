use linfrac::exactnum::Field;
use linfrac::recmap::{Direction, EvalOutcome, ProjPoint};
use linfrac::{RecurrenceMap, Scalar};
use proptest::prelude::*;

fn ints(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(lo..=hi, n)
}

/// Admissible maps with small integer parameters, k in 3..=5.
fn any_map() -> impl Strategy<Value = RecurrenceMap> {
    (3usize..=5)
        .prop_flat_map(|k| (ints(k + 1, -3, 3), ints(k + 1, -3, 3)))
        .prop_filter_map("inadmissible", |(a, b)| RecurrenceMap::from_ints(&a, &b).ok())
}

fn scalars(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

/// Determinant by Gaussian elimination over the field.
fn det(mut a: Vec<Vec<Scalar>>) -> Scalar {
    let n = a.len();
    let mut acc = Scalar::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Scalar::zero();
        };
        if p != c {
            a.swap(p, c);
            acc = acc.negated();
        }
        acc = acc.times(&a[c][c]);
        let inv = a[c][c].inverse().unwrap();
        for r in c + 1..n {
            let f = a[r][c].times(&inv);
            for j in c..n {
                let t = f.times(&a[c][j]);
                a[r][j] = a[r][j].minus(&t);
            }
        }
    }
    acc
}

/// A point on {cov . x = 0} built from a free vector.
fn on_hyperplane(cov: &[Scalar], mut v: Vec<Scalar>) -> Vec<Scalar> {
    let j = cov.iter().position(|c| !c.is_zero()).unwrap();
    v[j] = Scalar::zero();
    let s: Scalar = cov.iter().zip(&v).fold(Scalar::zero(), |acc, (c, x)| acc.plus(&c.times(x)));
    v[j] = s.negated().times(&cov[j].inverse().unwrap());
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn birational(m in any_map(), raw in prop::collection::vec(ints(6, -20, 20), 5)) {
        let n = m.k() + 1;
        let jac = m.jacobian(Direction::Forward);
        for r in raw {
            let x = scalars(&r[..n]);
            if jac.eval(&x).is_zero() {
                continue;
            }
            let p = ProjPoint::new(x).unwrap();
            let EvalOutcome::Point(q) = m.eval(&p, Direction::Forward) else {
                return Err(TestCaseError::fail("defined off the Jacobian zero set"));
            };
            let back = m.eval(&q, Direction::Inverse).point();
            prop_assert_eq!(back, Some(p));
        }
    }

    #[test]
    fn jacobian_is_the_determinant(m in any_map(), raw in prop::collection::vec(ints(6, -9, 9), 3)) {
        // det(DF) = c J with one constant c for every point
        let n = m.k() + 1;
        let jac = m.jacobian(Direction::Forward);
        prop_assert_eq!(jac.degree() as usize, m.k() + 1);
        let comps = m.forward_components();
        let mut ratio: Option<Scalar> = None;
        for r in raw {
            let x = scalars(&r[..n]);
            let j = jac.eval(&x);
            let d = det(comps.iter().map(|c| (0..n).map(|i| c.partial(i).eval(&x)).collect()).collect());
            if j.is_zero() {
                prop_assert!(d.is_zero());
                continue;
            }
            let q = d.divided(&j).unwrap();
            prop_assert!(!q.is_zero());
            if let Some(prev) = &ratio {
                prop_assert_eq!(prev, &q);
            }
            ratio = Some(q);
        }
    }

    #[test]
    fn sigma_beta_collapses_to_ek(m in any_map(), raw in prop::collection::vec(ints(6, -30, 30), 20)) {
        let n = m.k() + 1;
        let (beta, b) = (m.beta().coeffs().to_vec(), m.b().coeffs().to_vec());
        let ek = ProjPoint::basis(n, m.k());
        let e1 = ProjPoint::basis(n, 1);
        for r in &raw {
            let x = on_hyperplane(&beta, scalars(&r[..n]));
            if let Some(Ok(p)) = m.apply(&x, Direction::Forward).map(ProjPoint::new) {
                prop_assert_eq!(p, ek.clone());
            }
            let y = on_hyperplane(&b, scalars(&r[..n]));
            if let Some(Ok(p)) = m.apply(&y, Direction::Inverse).map(ProjPoint::new) {
                prop_assert_eq!(p, e1.clone());
            }
        }
    }

    #[test]
    fn reversible_critical_maps(
        k in 3usize..=6,
        a0 in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3, 5]),
        mid in ints(6, -3, 3),
    ) {
        // normal form with beta_0 = 0 and alpha_j = alpha_(k+2-j) for 2 <= j <= k
        let mut alpha = vec![0i64; k + 1];
        alpha[0] = a0;
        alpha[k] = 1;
        alpha[2] = 1;
        for j in 3..k {
            let mirror = k + 2 - j;
            alpha[j] = if mirror < j { alpha[mirror] } else { mid[j % 6] };
        }
        let mut beta = vec![0i64; k + 1];
        beta[1] = 1;
        let m = RecurrenceMap::from_ints(&alpha, &beta);
        prop_assume!(m.is_ok());
        let m = m.unwrap();
        prop_assume!(m.is_critical());
        prop_assert!(m.reversal_check().unwrap(), "alpha = {:?}", alpha);
    }
}

#[test]
fn lyness_is_reversible_and_period4k_is_not() {
    for k in 3..=6 {
        assert!(RecurrenceMap::lyness(k, Scalar::ratio(7, 3)).unwrap().reversal_check().unwrap());
        let p = linfrac::certify::period4k_map(k).unwrap();
        assert!(!p.reversal_check().unwrap_or(false));
    }
}
