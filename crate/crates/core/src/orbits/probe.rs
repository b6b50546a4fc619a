use std::collections::HashMap;

use serde::Serialize;

use super::chain::{named_hypersurface, named_intersection, Named};
use super::subspace::{contains_reduced, LinearSubspace};
use crate::error::Result;
use crate::exactnum::{Field, FpA};
use crate::linalg;
use crate::multipoly::{HomogPoly, UniPoly};
use crate::recmap::{Direction, RecurrenceMap};
use crate::rng::{streams, SampleStream};

pub const GERM_PRECISION: usize = 96;
pub const GERMS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub source: Named,
    pub direction: Direction,
    pub step: usize,
    pub bad_set: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeStep {
    pub n: usize,
    /// Germs still carrying at least two known orders.
    pub live: usize,
    /// Projective dimension of the span of the sampled points.
    pub span_dim: Option<usize>,
    /// Germs landing in each bad set.
    pub hits: Vec<(String, usize)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PointCycle {
    /// First step of the periodic part.
    pub enters_at: usize,
    pub length: usize,
    /// Point at `enters_at`, symmetric residues after scaling the first
    /// nonzero coordinate to 1.
    pub point: Vec<i128>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitProbe {
    pub source: Named,
    pub direction: Direction,
    pub steps: Vec<ProbeStep>,
    pub violation: Option<Violation>,
    /// (step, bad set) where some but not all germs hit.
    pub grazing: Vec<(usize, String)>,
    pub cycle: Option<PointCycle>,
    pub precision_exhausted_at: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub n: usize,
    pub orbits: Vec<OrbitProbe>,
    pub first_violation: Option<Violation>,
}

impl ProbeReport {
    pub fn regular(&self) -> bool {
        self.first_violation.is_none()
    }

    pub fn orbit(&self, source: Named, dir: Direction) -> Option<&OrbitProbe> {
        self.orbits.iter().find(|o| o.source == source && o.direction == dir)
    }
}

struct Germ {
    coords: Vec<UniPoly<FpA>>,
    prec: usize,
}

fn normalized(v: &[FpA]) -> Vec<FpA> {
    let i = v.iter().position(|c| !c.is_zero()).expect("nonzero point");
    let inv = v[i].inverse().unwrap();
    v.iter().map(|c| c.times(&inv)).collect()
}

/// Advances a germ one step; `false` when the known orders run out.
fn advance(g: &mut Germ, comps: &[HomogPoly<FpA>]) -> bool {
    let next = HomogPoly::eval_many(comps, &g.coords, Some(g.prec));
    let Some(v) = next.iter().filter_map(|c| c.valuation()).min() else {
        return false;
    };
    if g.prec <= v + 1 {
        return false;
    }
    g.prec -= v;
    g.coords = next.iter().map(|c| c.shift_down(v).truncate(g.prec)).collect();
    true
}

fn probe_orbit(
    m: &RecurrenceMap,
    source: Named,
    dir: Direction,
    bad: &[(String, Vec<Vec<FpA>>)],
    n_max: usize,
    precision: usize,
    rng: &mut SampleStream,
) -> Result<OrbitProbe> {
    let comps = m.reduced_components::<FpA>(dir)?;
    let basis = named_hypersurface(m, source).reduced_basis::<FpA>()?;
    let n = m.k() + 1;
    let mut germs: Vec<Germ> = (0..GERMS)
        .map(|_| {
            let mut p = vec![FpA::zero(); n];
            for b in &basis {
                let c: FpA = rng.field_elem();
                for (x, y) in p.iter_mut().zip(b) {
                    *x = x.plus(&c.times(y));
                }
            }
            let w: Vec<FpA> = rng.field_vector(n);
            Germ { coords: p.into_iter().zip(w).map(|(a, b)| UniPoly::linear(a, b)).collect(), prec: precision }
        })
        .collect();

    let mut out = OrbitProbe {
        source,
        direction: dir,
        steps: Vec::new(),
        violation: None,
        grazing: Vec::new(),
        cycle: None,
        precision_exhausted_at: None,
    };
    let mut seen: HashMap<Vec<FpA>, usize> = HashMap::new();
    for step in 1..=n_max {
        germs.retain_mut(|g| advance(g, &comps));
        if germs.len() < GERMS && out.precision_exhausted_at.is_none() {
            out.precision_exhausted_at = Some(step);
        }
        if germs.is_empty() {
            break;
        }
        let points: Vec<Vec<FpA>> = germs.iter().map(|g| normalized(&g.coords.iter().map(|c| c.coeff(0)).collect::<Vec<_>>())).collect();
        let span_dim = linalg::rank(&points).checked_sub(1);
        let mut hits = Vec::new();
        for (name, eqs) in bad {
            let count = points.iter().filter(|p| contains_reduced(eqs, p)).count();
            if count == points.len() && out.violation.is_none() {
                out.violation = Some(Violation { source, direction: dir, step, bad_set: name.clone() });
            } else if count > 0 && count < points.len() {
                out.grazing.push((step, name.clone()));
            }
            hits.push((name.clone(), count));
        }
        out.steps.push(ProbeStep { n: step, live: germs.len(), span_dim, hits });
        if span_dim == Some(0) && out.cycle.is_none() {
            let pt = points[0].clone();
            if let Some(&first) = seen.get(&pt) {
                out.cycle = Some(PointCycle {
                    enters_at: first,
                    length: step - first,
                    point: pt.iter().map(|c| c.symmetric()).collect(),
                });
            } else {
                seen.insert(pt, step);
            }
        }
    }
    Ok(out)
}

/// Follows curve germs through Sigma_beta and Sigma_gamma under the map and
/// through Sigma_0 and Sigma_C under the inverse, for n = 1..n_max, checking
/// that the orbits stay out of Sigma_beta-gamma and Sigma_0-beta (forward)
/// and Sigma_BC and e_k (inverse).
pub fn regularity_probe(m: &RecurrenceMap, n_max: usize, seed: u64) -> Result<ProbeReport> {
    regularity_probe_with(m, n_max, seed, GERM_PRECISION)
}

pub fn regularity_probe_with(m: &RecurrenceMap, n_max: usize, seed: u64, precision: usize) -> Result<ProbeReport> {
    let n = m.k() + 1;
    let reduce = |name: &str, v: LinearSubspace| -> Result<(String, Vec<Vec<FpA>>)> {
        Ok((name.to_string(), v.reduced_equations::<FpA>()?))
    };
    let fwd_bad = vec![
        reduce("Sigma_beta_gamma", named_intersection(m, &[Named::SigmaBeta, Named::SigmaGamma])?)?,
        reduce("Sigma_0_beta", named_intersection(m, &[Named::Sigma0, Named::SigmaBeta])?)?,
    ];
    let inv_bad = vec![
        reduce("Sigma_BC", named_intersection(m, &[Named::SigmaB, Named::SigmaC])?)?,
        reduce("e_k", LinearSubspace::coordinate_point(n, n - 1))?,
    ];
    let plan = [
        (Named::SigmaBeta, Direction::Forward),
        (Named::SigmaGamma, Direction::Forward),
        (Named::Sigma0, Direction::Inverse),
        (Named::SigmaC, Direction::Inverse),
    ];
    let mut orbits = Vec::new();
    for (i, (src, dir)) in plan.into_iter().enumerate() {
        let bad = if dir == Direction::Forward { &fwd_bad } else { &inv_bad };
        let mut rng = SampleStream::retry(seed, streams::GERMS, i as u64);
        orbits.push(probe_orbit(m, src, dir, bad, n_max, precision, &mut rng)?);
    }
    let first_violation = orbits
        .iter()
        .filter_map(|o| o.violation.clone())
        .min_by_key(|v| v.step);
    Ok(ProbeReport { n: n_max, orbits, first_violation })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_example_is_regular() {
        let m = RecurrenceMap::from_ints(&[0, 1, 0, 0], &[0, 1, 1, -1]).unwrap();
        let r = regularity_probe(&m, 20, 1).unwrap();
        assert!(r.regular());
        let b = r.orbit(Named::SigmaBeta, Direction::Forward).unwrap().cycle.clone().unwrap();
        assert_eq!(b.length, 3);
        assert_eq!(b.point, vec![1, 0, 0, 1]);
        // Sigma_gamma is carried onto a curve through the fixed point [1:1:1:1]
        let one = crate::recmap::ProjPoint::from_ints(&[1, 1, 1, 1]).unwrap();
        assert!(m.gamma().apply(one.coords()).is_zero());
        assert!(!m.beta().apply(one.coords()).is_zero());
        assert_eq!(m.eval(&one, Direction::Forward).point(), Some(one));
        let g = r.orbit(Named::SigmaGamma, Direction::Forward).unwrap();
        assert_eq!(g.steps[0].span_dim, Some(1));
    }

    #[test]
    fn truncated_germs_run_out() {
        let m = RecurrenceMap::from_ints(&[0, 1, 0, 0], &[0, 1, 1, -1]).unwrap();
        let r = regularity_probe_with(&m, 20, 1, 2).unwrap();
        assert!(r.orbits.iter().any(|o| o.precision_exhausted_at.is_some()));
    }
}
