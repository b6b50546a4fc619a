use linfrac::multipoly::{uni_gcd_strip, HomogPoly, UniPoly};
use linfrac::Scalar;
use proptest::prelude::*;

const NVARS: usize = 3;

/// Exponent vectors of total degree d in NVARS variables.
fn monomials(d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            out.push(vec![a, b, d - a - b]);
        }
    }
    out
}

fn homog(d: u32) -> impl Strategy<Value = HomogPoly> {
    let n = monomials(d).len();
    prop::collection::vec(-3i64..=3, n).prop_map(move |cs| {
        let terms = monomials(d).into_iter().zip(cs).map(|(e, c)| (e, Scalar::from_int(c)));
        HomogPoly::from_terms(NVARS, 0, d, terms).unwrap()
    })
}

fn comps(d: u32) -> impl Strategy<Value = Vec<HomogPoly>> {
    prop::collection::vec(homog(d), NVARS)
}

fn uni(max_deg: usize) -> impl Strategy<Value = UniPoly<Scalar>> {
    prop::collection::vec(-5i64..=5, 1..=max_deg + 1)
        .prop_map(|cs| UniPoly::from_coeffs(cs.into_iter().map(Scalar::from_int).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn substitution_is_associative(p in homog(2), f in comps(2), g in comps(1)) {
        let left = p.substitute(&f).unwrap().substitute(&g).unwrap();
        let inner: Vec<HomogPoly> = f.iter().map(|c| c.substitute(&g).unwrap()).collect();
        prop_assert_eq!(left, p.substitute(&inner).unwrap());
    }

    #[test]
    fn substitution_multiplies_degrees(
        (p, f, want) in (1u32..=3, 1u32..=2).prop_flat_map(|(dp, df)| (homog(dp), comps(df), Just(dp * df)))
    ) {
        prop_assert_eq!(p.substitute(&f).unwrap().degree(), want);
    }

    #[test]
    fn gcd_strip_leaves_coprime_tuple(g in uni(2), cs in prop::collection::vec(uni(3), 2..=4)) {
        prop_assume!(!g.is_zero() && cs.iter().any(|c| !c.is_zero()));
        let tuple: Vec<UniPoly<Scalar>> = cs.iter().map(|c| c.mul(&g)).collect();
        let (stripped, gcd) = uni_gcd_strip(&tuple).unwrap();
        let recomputed = stripped.iter().fold(UniPoly::zero(), |acc, c| acc.gcd(c));
        prop_assert_eq!(recomputed.degree(), Some(0));
        prop_assert!(gcd.divrem(&g).unwrap().1.is_zero() || g.degree() == Some(0));
        for (s, t) in stripped.iter().zip(&tuple) {
            prop_assert_eq!(s.mul(&gcd), t.clone());
        }
    }
}
