use super::map::{Direction, RecurrenceMap};
use crate::error::{Error, Result};
use crate::exactnum::{Field, FpA, FpB, PrimeField, Scalar};
use crate::multipoly::{uni_gcd_strip, HomogPoly, UniPoly};
use crate::rng::{streams, SampleStream};

const RETRIES: u64 = 3;

/// Degrees d_0 = 1, d_1, ..., d_{n_max} of the iterates of a map measured on
/// the line t -> base + t dir, stripping the common factor after every step.
pub fn line_degrees<F: Field>(comps: &[HomogPoly<F>], base: &[F], dir: &[F], n_max: usize) -> Result<Vec<u64>> {
    line_degrees_capped(comps, base, dir, n_max, None)
}

/// As [`line_degrees`], stopping early once a degree exceeds `cap`.
pub fn line_degrees_capped<F: Field>(
    comps: &[HomogPoly<F>],
    base: &[F],
    dir: &[F],
    n_max: usize,
    cap: Option<u64>,
) -> Result<Vec<u64>> {
    let mut cur: Vec<UniPoly<F>> =
        base.iter().zip(dir).map(|(b, d)| UniPoly::linear(b.clone(), d.clone())).collect();
    if cur.iter().all(|c| c.degree().unwrap_or(0) == 0) {
        return Err(Error::DegeneratePair);
    }
    let mut out = vec![1u64];
    for _ in 0..n_max {
        let next = HomogPoly::eval_many(comps, &cur, None);
        let (stripped, _) = uni_gcd_strip(&next)?;
        let d = stripped.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
        out.push(d as u64);
        if cap.is_some_and(|c| d as u64 > c) {
            break;
        }
        cur = stripped;
    }
    Ok(out)
}

fn modular_line<F: PrimeField>(
    m: &RecurrenceMap,
    dir: Direction,
    n_max: usize,
    cap: Option<u64>,
    rng: &mut SampleStream,
) -> Result<Vec<u64>> {
    let comps = m.reduced_components::<F>(dir)?;
    let n = m.k() + 1;
    let base: Vec<F> = rng.field_vector(n);
    let d: Vec<F> = rng.field_vector(n);
    line_degrees_capped(&comps, &base, &d, n_max, cap)
}

/// Degree sequence of the forward map.
pub fn degree_sequence_empirical(m: &RecurrenceMap, n_max: usize, seed: u64) -> Result<Vec<u64>> {
    degree_sequence(m, Direction::Forward, n_max, seed)
}

/// Degree sequence d_0..d_{n_max} of f^n (or f^-n) measured on two
/// independent random lines, one reduced modulo each working prime. A
/// disagreement is retried with fresh lines before being reported.
pub fn degree_sequence(m: &RecurrenceMap, dir: Direction, n_max: usize, seed: u64) -> Result<Vec<u64>> {
    degree_sequence_capped(m, dir, n_max, None, seed)
}

/// As [`degree_sequence`], truncated after the first degree above `cap`.
pub fn degree_sequence_capped(m: &RecurrenceMap, dir: Direction, n_max: usize, cap: Option<u64>, seed: u64) -> Result<Vec<u64>> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let mut last = None;
    for attempt in 0..=RETRIES {
        let a = modular_line::<FpA>(m, dir, n_max, cap, &mut SampleStream::retry(seed, streams::LINE_A, attempt))?;
        let b = modular_line::<FpB>(m, dir, n_max, cap, &mut SampleStream::retry(seed, streams::LINE_B, attempt))?;
        match a.iter().zip(&b).position(|(x, y)| x != y) {
            None => return Ok(a),
            Some(step) => last = Some(Error::LineDisagreement { step, first: a[step], second: b[step] }),
        }
    }
    Err(last.unwrap())
}

/// Same measurement over the exact field on a single random integer line.
/// Slow for fast-growing maps; used for cross-checks.
pub fn degree_sequence_exact(m: &RecurrenceMap, dir: Direction, n_max: usize, seed: u64) -> Result<Vec<u64>> {
    let mut rng = SampleStream::new(seed, streams::CERTIFY_LINE);
    let n = m.k() + 1;
    let base: Vec<Scalar> = rng.vector(n);
    let d: Vec<Scalar> = rng.vector(n);
    line_degrees(m.components(dir), &base, &d, n_max)
}
