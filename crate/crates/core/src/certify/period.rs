use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{Field, FpA, FpB, PrimeField, Scalar};
use crate::linalg;
use crate::multipoly::{uni_gcd_strip, HomogPoly, UniPoly};
use crate::recmap::{Direction, ProjPoint, RecurrenceMap};
use crate::rng::{streams, SampleStream};

/// Resampling budget per requested trial for points whose orbit meets the
/// indeterminacy locus.
const RESAMPLE_FACTOR: usize = 4;

/// Period predicted by the value of n*: k-1 -> 3k-1, k -> 4k, k+1 -> 3k(k+1).
pub fn predicted_period(k: usize, n_star: usize) -> Option<usize> {
    if n_star + 1 == k {
        Some(3 * k - 1)
    } else if n_star == k {
        Some(4 * k)
    } else if n_star == k + 1 {
        Some(3 * k * (k + 1))
    } else {
        None
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LineCheck {
    /// First step at which the line came back to its parametrization.
    pub returned_at: Option<usize>,
    pub degree_of_f_period: u64,
    pub degrees: Vec<u64>,
}

/// A proper divisor j of the period and a sampled point not fixed by f^j.
#[derive(Clone, Debug, Serialize)]
pub struct MinimalityWitness {
    pub divisor: usize,
    pub trial: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodCertificate {
    pub period: usize,
    pub point_trials: usize,
    pub seed: u64,
    /// Points drawn but discarded because their orbit met the indeterminacy locus.
    pub resampled: usize,
    pub line_check: LineCheck,
    /// Indices of the k+2 fixed points in general position.
    pub frame: Vec<usize>,
    pub minimality: Vec<MinimalityWitness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Proof {
    /// Reduction modulo the given prime already separates f^p(q) from q.
    Modular { prime: u64 },
    Exact,
}

#[derive(Clone, Debug, Serialize)]
pub struct Refutation {
    pub period: usize,
    pub point: ProjPoint,
    /// Exact image f^p(q), when it was computed.
    pub image: Option<ProjPoint>,
    pub proof: Proof,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CertifyOutcome {
    Certified(PeriodCertificate),
    Refuted(Refutation),
    /// Every sampled point is fixed by f^divisor for a proper divisor.
    NotMinimal { period: usize, divisor: usize },
    Inconclusive { period: usize, reason: String },
}

impl CertifyOutcome {
    pub fn verdict(&self) -> &'static str {
        match self {
            CertifyOutcome::Certified(_) => "certified",
            CertifyOutcome::Refuted(_) => "refuted",
            CertifyOutcome::NotMinimal { .. } => "not_minimal",
            CertifyOutcome::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn is_certified(&self) -> bool {
        matches!(self, CertifyOutcome::Certified(_))
    }

    pub fn period(&self) -> usize {
        match self {
            CertifyOutcome::Certified(c) => c.period,
            CertifyOutcome::Refuted(r) => r.period,
            CertifyOutcome::NotMinimal { period, .. } | CertifyOutcome::Inconclusive { period, .. } => *period,
        }
    }

    /// The compact report {"verdict", "period", "seeds", "witnesses"}.
    pub fn summary(&self, seed: u64) -> Value {
        let witnesses = match self {
            CertifyOutcome::Certified(c) => json!({
                "line_returned_at": c.line_check.returned_at,
                "degree_of_f_period": c.line_check.degree_of_f_period,
                "frame": c.frame,
                "minimality": c.minimality,
            }),
            CertifyOutcome::Refuted(r) => json!([{ "point": r.point, "image": r.image, "proof": r.proof }]),
            CertifyOutcome::NotMinimal { divisor, .. } => json!([{ "divisor": divisor }]),
            CertifyOutcome::Inconclusive { reason, .. } => json!([{ "reason": reason }]),
        };
        json!({
            "verdict": self.verdict(),
            "period": self.period(),
            "seeds": [seed],
            "witnesses": witnesses,
        })
    }
}

/// Iterates q modulo a working prime for p steps. `None` when the reduction
/// is unusable or some step vanishes identically mod P; otherwise whether
/// f^p(q) = q mod P.
fn modular_return<F: PrimeField>(m: &RecurrenceMap, q: &[Scalar], p: usize) -> Option<bool> {
    let comps = m.reduced_components::<F>(Direction::Forward).ok()?;
    let start: Vec<F> = q.iter().map(F::from_scalar).collect::<Result<_>>().ok()?;
    let mut cur = start.clone();
    for _ in 0..p {
        cur = comps.iter().map(|c| c.eval(&cur)).collect();
        if cur.iter().all(|x| x.is_zero()) {
            return None;
        }
    }
    Some(proportional(&start, &cur))
}

fn proportional<F: Field>(a: &[F], b: &[F]) -> bool {
    linalg::rank(&[a.to_vec(), b.to_vec()]) < 2
}

/// Exact orbit q, f(q), ..., f^p(q), or `None` when it meets I(f).
fn exact_orbit(m: &RecurrenceMap, q: &ProjPoint, p: usize) -> Option<Vec<ProjPoint>> {
    let mut out = Vec::with_capacity(p + 1);
    out.push(q.clone());
    for _ in 0..p {
        let next = m.eval(out.last().unwrap(), Direction::Forward).point()?;
        out.push(next);
    }
    Some(out)
}

fn flatten(line: &[UniPoly<Scalar>]) -> Vec<Scalar> {
    let width = line.iter().filter_map(|c| c.degree()).max().unwrap_or(0) + 1;
    line.iter().flat_map(|c| (0..width).map(move |i| c.coeff(i))).collect()
}

// scales the tuple so that its first nonzero coefficient is 1
fn normalize_line(line: Vec<UniPoly<Scalar>>) -> Result<Vec<UniPoly<Scalar>>> {
    let lead = flatten(&line).into_iter().find(|c| !c.is_zero()).ok_or(Error::AllZero)?;
    let inv = lead.checked_inv()?;
    Ok(line.iter().map(|c| c.scale(&inv)).collect())
}

/// Iterates a random line exactly for p steps, stripping common factors and
/// scalars after each step.
pub fn line_return(m: &RecurrenceMap, p: usize, seed: u64) -> Result<LineCheck> {
    let mut rng = SampleStream::new(seed, streams::CERTIFY_LINE);
    let n = m.k() + 1;
    let base = rng.vector(n);
    let dir = rng.vector(n);
    let start: Vec<UniPoly<Scalar>> =
        normalize_line(base.into_iter().zip(dir).map(|(b, d)| UniPoly::linear(b, d)).collect())?;
    let start_flat = flatten(&start);
    let comps = m.components(Direction::Forward);
    let mut cur = start.clone();
    let mut degrees = vec![1u64];
    let mut returned_at = None;
    for step in 1..=p {
        let next = HomogPoly::eval_many(comps, &cur, None);
        let (stripped, _) = uni_gcd_strip(&next)?;
        cur = normalize_line(stripped)?;
        let d = cur.iter().filter_map(|c| c.degree()).max().unwrap_or(0) as u64;
        degrees.push(d);
        if returned_at.is_none() && d == 1 && flatten(&cur) == start_flat {
            returned_at = Some(step);
        }
    }
    Ok(LineCheck { returned_at, degree_of_f_period: *degrees.last().unwrap(), degrees })
}

fn proper_divisors(p: usize) -> Vec<usize> {
    (1..p).filter(|j| p % j == 0).collect()
}

/// Indices of k+2 points among `pts` with every k+1 of them independent.
fn general_frame(pts: &[ProjPoint]) -> Option<Vec<usize>> {
    let n = pts.first()?.coords().len();
    let mut frame: Vec<usize> = Vec::new();
    for (i, _) in pts.iter().enumerate() {
        frame.push(i);
        let ok = if frame.len() <= n {
            linalg::rank(&frame.iter().map(|&j| pts[j].coords().to_vec()).collect::<Vec<_>>()) == frame.len()
        } else {
            (0..frame.len()).all(|skip| {
                let rows: Vec<Vec<Scalar>> =
                    frame.iter().enumerate().filter(|(t, _)| *t != skip).map(|(_, &j)| pts[j].coords().to_vec()).collect();
                linalg::rank(&rows) == n
            })
        };
        if !ok {
            frame.pop();
        }
        if frame.len() == n + 1 {
            return Some(frame);
        }
    }
    None
}

/// Certifies f^p = id with p minimal, or refutes it with a sampled point.
pub fn certify_period(m: &RecurrenceMap, p: usize, trials: usize, seed: u64) -> Result<CertifyOutcome> {
    if p < 1 {
        return Err(Error::InvalidArgument("period must be at least 1".into()));
    }
    let n = m.k() + 1;
    let wanted = trials.max(n + 1);
    let mut rng = SampleStream::new(seed, streams::CERTIFY_POINTS);
    let mut orbits: Vec<Vec<ProjPoint>> = Vec::with_capacity(wanted);
    let mut resampled = 0;
    while orbits.len() < wanted {
        if resampled > RESAMPLE_FACTOR * wanted {
            return Ok(CertifyOutcome::Inconclusive {
                period: p,
                reason: format!("{resampled} sampled orbits met the indeterminacy locus"),
            });
        }
        let coords = rng.vector(n);
        let modular = modular_return::<FpA>(m, &coords, p)
            .map(|r| (r, FpA::modulus()))
            .or_else(|| modular_return::<FpB>(m, &coords, p).map(|r| (r, FpB::modulus())));
        let q = ProjPoint::new(coords)?;
        if let Some((false, prime)) = modular {
            return Ok(CertifyOutcome::Refuted(Refutation { period: p, point: q, image: None, proof: Proof::Modular { prime } }));
        }
        let Some(orbit) = exact_orbit(m, &q, p) else {
            resampled += 1;
            continue;
        };
        if orbit[p] != q {
            return Ok(CertifyOutcome::Refuted(Refutation {
                period: p,
                point: q,
                image: Some(orbit[p].clone()),
                proof: Proof::Exact,
            }));
        }
        orbits.push(orbit);
    }

    let mut minimality = Vec::new();
    for j in proper_divisors(p) {
        match orbits.iter().position(|o| o[j] != o[0]) {
            Some(trial) => minimality.push(MinimalityWitness { divisor: j, trial }),
            None => return Ok(CertifyOutcome::NotMinimal { period: p, divisor: j }),
        }
    }

    let line_check = line_return(m, p, seed)?;
    if line_check.returned_at != Some(p) {
        return Ok(CertifyOutcome::Inconclusive {
            period: p,
            reason: match line_check.returned_at {
                None => format!("line did not return by step {p} (degree {})", line_check.degree_of_f_period),
                Some(s) => format!("line returned early at step {s}"),
            },
        });
    }

    let starts: Vec<ProjPoint> = orbits.iter().map(|o| o[0].clone()).collect();
    let Some(frame) = general_frame(&starts) else {
        return Ok(CertifyOutcome::Inconclusive { period: p, reason: "no k+2 sampled points in general position".into() });
    };

    Ok(CertifyOutcome::Certified(PeriodCertificate {
        period: p,
        point_trials: orbits.len(),
        seed,
        resampled,
        line_check,
        frame,
        minimality,
    }))
}
