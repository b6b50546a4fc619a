use serde::{Deserialize, Serialize};

use super::subspace::LinearSubspace;
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::linalg;
use crate::multipoly::HomogPoly;
use crate::recmap::{Direction, RecurrenceMap};
use crate::rng::{SampleStream, SAMPLE_BOUND};

const VERIFY_SAMPLES: usize = 5;
const MAX_MISSES: usize = 20;
const BLOWUP_PATIENCE: usize = 6;

/// How a subspace was carried to the next entry of a chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    /// Image of the same dimension.
    Regular,
    /// Image of smaller dimension.
    Collapse,
    /// The subspace lies in the indeterminacy locus; the image is the
    /// span of first-order limits.
    Blowup,
}

/// Components restricted to the cone of `v`, as forms in dim(v)+1 variables.
fn restricted(comps: &[HomogPoly], v: &LinearSubspace) -> Result<(Vec<HomogPoly>, Vec<Vec<Scalar>>)> {
    let basis = v.basis();
    let m = basis.len();
    let n = v.ambient();
    let param: Vec<HomogPoly> = (0..n)
        .map(|i| {
            let coeffs: Vec<Scalar> = basis.iter().map(|b| b[i].clone()).collect();
            HomogPoly::linear(&coeffs)
        })
        .collect();
    debug_assert!(param.iter().all(|p| p.nvars() == m));
    let out = comps.iter().map(|c| c.substitute(&param)).collect::<Result<Vec<_>>>()?;
    Ok((out, basis))
}

fn random_combo(basis: &[Vec<Scalar>], rng: &mut SampleStream) -> (Vec<Scalar>, Vec<Scalar>) {
    let t: Vec<Scalar> = (0..basis.len()).map(|_| rng.scalar()).collect();
    let n = basis[0].len();
    let mut p = vec![Scalar::zero(); n];
    for (c, b) in t.iter().zip(basis) {
        for (x, y) in p.iter_mut().zip(b) {
            if !y.is_zero() {
                *x = &*x + &(c * y);
            }
        }
    }
    (t, p)
}

/// True when every component vanishes identically on `v`.
pub fn in_indeterminacy(m: &RecurrenceMap, v: &LinearSubspace, dir: Direction) -> Result<bool> {
    let (r, _) = restricted(m.components(dir), v)?;
    Ok(r.iter().all(|p| p.is_zero()))
}

/// Strict transform of a linear subspace not contained in the indeterminacy
/// locus, by sampling, fitting the span, and checking extra samples.
pub fn strict_transform(m: &RecurrenceMap, v: &LinearSubspace, dir: Direction, seed: u64) -> Result<LinearSubspace> {
    let mut rng = SampleStream::new(seed, crate::rng::streams::SUBSPACE);
    transform_with(m, v, dir, &mut rng).map(|(s, _)| s)
}

pub(crate) fn transform_with(
    m: &RecurrenceMap,
    v: &LinearSubspace,
    dir: Direction,
    rng: &mut SampleStream,
) -> Result<(LinearSubspace, StepKind)> {
    let (rest, basis) = restricted(m.components(dir), v)?;
    if rest.iter().all(|p| p.is_zero()) {
        return Err(Error::SampleFailure);
    }
    let n = v.ambient();
    let dim = v.dim();
    let draw = |rng: &mut SampleStream| -> Result<(Vec<Scalar>, Vec<Scalar>)> {
        for _ in 0..MAX_MISSES {
            let (t, _) = random_combo(&basis, rng);
            let img: Vec<Scalar> = rest.iter().map(|p| p.eval(&t)).collect();
            if img.iter().any(|c| !c.is_zero()) {
                return Ok((t, img));
            }
        }
        Err(Error::SampleFailure)
    };

    let mut images = Vec::with_capacity(dim + 2);
    let mut first_t = None;
    for _ in 0..dim + 2 {
        let (t, img) = draw(rng)?;
        first_t.get_or_insert(t);
        images.push(img);
    }
    // dimension of the image cone from the differential at a sample
    let t0 = first_t.unwrap();
    let jac: Vec<Vec<Scalar>> = rest
        .iter()
        .map(|p| (0..basis.len()).map(|j| p.partial(j).eval(&t0)).collect())
        .collect();
    let image_dim = linalg::rank(&jac).saturating_sub(1);
    let span = LinearSubspace::span(n, &images)?;
    if span.dim() != image_dim {
        return Err(Error::NonLinearImage);
    }
    for _ in 0..VERIFY_SAMPLES {
        let (_, img) = draw(rng)?;
        if !span.contains_point(&img) {
            return Err(Error::NonLinearImage);
        }
    }
    let kind = if span.dim() == dim { StepKind::Regular } else { StepKind::Collapse };
    Ok((span, kind))
}

/// Image of a subspace inside the indeterminacy locus: the span of the
/// lowest-order coefficients of F(p + eps w) over random p in `v` and random
/// w, sampled until the span stops growing.
pub fn blowup_image(m: &RecurrenceMap, v: &LinearSubspace, dir: Direction, seed: u64) -> Result<LinearSubspace> {
    let mut rng = SampleStream::new(seed, crate::rng::streams::BLOWUP);
    blowup_with(m, v, dir, &mut rng)
}

pub(crate) fn blowup_with(
    m: &RecurrenceMap,
    v: &LinearSubspace,
    dir: Direction,
    rng: &mut SampleStream,
) -> Result<LinearSubspace> {
    let comps = m.components(dir);
    let n = v.ambient();
    let basis = v.basis();
    let grads: Vec<Vec<HomogPoly>> = comps.iter().map(|c| (0..n).map(|j| c.partial(j)).collect()).collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rank = 0;
    let mut stale = 0;
    let mut tries = 0;
    while stale < BLOWUP_PATIENCE {
        tries += 1;
        if tries > 200 {
            return Err(Error::SampleFailure);
        }
        let (_, p) = random_combo(&basis, rng);
        let w: Vec<Scalar> = (0..n).map(|_| Scalar::from_int(rng.int_in(SAMPLE_BOUND))).collect();
        if comps.iter().any(|c| !c.eval(&p).is_zero()) {
            return Err(Error::InvalidArgument("subspace is not in the indeterminacy locus".into()));
        }
        let mut lead: Vec<Scalar> = grads.iter().map(|g| linalg::dot(&g.iter().map(|d| d.eval(&p)).collect::<Vec<_>>(), &w)).collect();
        if lead.iter().all(|c| c.is_zero()) {
            lead = comps.iter().map(|c| c.eval(&w)).collect();
        }
        if lead.iter().all(|c| c.is_zero()) {
            continue;
        }
        rows.push(lead);
        let r = linalg::rank(&rows);
        if r > rank {
            rank = r;
            stale = 0;
            let mut reduced = rows.clone();
            linalg::rref(&mut reduced);
            rows = reduced;
        } else {
            rows.pop();
            stale += 1;
        }
    }
    LinearSubspace::span(n, &rows)
}

/// One chain step: strict transform, or the blow-up image when the subspace
/// lies in the indeterminacy locus.
pub fn image_step(
    m: &RecurrenceMap,
    v: &LinearSubspace,
    dir: Direction,
    rng: &mut SampleStream,
) -> Result<(LinearSubspace, StepKind)> {
    if in_indeterminacy(m, v, dir)? {
        Ok((blowup_with(m, v, dir, rng)?, StepKind::Blowup))
    } else {
        transform_with(m, v, dir, rng)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(n: usize, idx: &[usize]) -> LinearSubspace {
        LinearSubspace::coordinate(n, idx)
    }

    #[test]
    fn generic_sigma0_goes_to_sigma0k() {
        let m = RecurrenceMap::from_ints(&[0, 1, 0, 0], &[0, 1, 1, -1]).unwrap();
        let img = strict_transform(&m, &sub(4, &[0]), Direction::Forward, 1).unwrap();
        assert_eq!(img, sub(4, &[0, 3]));
    }

    #[test]
    fn lyness_sigma_b_shifts() {
        let m = RecurrenceMap::lyness(3, Scalar::from_int(2)).unwrap();
        let img = strict_transform(&m, &sub(4, &[3]), Direction::Forward, 2).unwrap();
        assert_eq!(img, sub(4, &[2]));
        // Sigma_BC goes to {x2 = 0, x0 + x3 = 0}
        let sbc = LinearSubspace::from_covectors(4, &[m.b(), m.c()]).unwrap();
        let img = strict_transform(&m, &sbc, Direction::Forward, 3).unwrap();
        let want = LinearSubspace::from_equations(
            4,
            vec![
                [0, 0, 1, 0].iter().map(|&x| Scalar::from_int(x)).collect(),
                [1, 0, 0, 1].iter().map(|&x| Scalar::from_int(x)).collect(),
            ],
        )
        .unwrap();
        assert_eq!(img, want);
    }

    #[test]
    fn blowup_of_e1_is_sigma_b() {
        let m = RecurrenceMap::from_ints(&[0, 1, 0, 0], &[0, 1, 1, -1]).unwrap();
        let e1 = LinearSubspace::coordinate_point(4, 1);
        assert!(in_indeterminacy(&m, &e1, Direction::Forward).unwrap());
        assert!(matches!(strict_transform(&m, &e1, Direction::Forward, 1), Err(Error::SampleFailure)));
        let img = blowup_image(&m, &e1, Direction::Forward, 4).unwrap();
        assert_eq!(img, LinearSubspace::from_covectors(4, &[m.b()]).unwrap());
    }
}
