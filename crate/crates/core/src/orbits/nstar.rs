use serde::Serialize;

use super::chain::{named_hypersurface, named_intersection, Named};
use super::subspace::LinearSubspace;
use super::transform::{in_indeterminacy, transform_with};
use crate::error::{Error, Result};
use crate::recmap::{Direction, RecurrenceMap};
use crate::rng::{streams, SampleStream};

/// Why the search ended without reaching Sigma_beta-gamma.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NStarStop {
    BoundExceeded,
    /// f^step(Sigma_BC) is contained in a contracted hypersurface.
    ContainedIn { hypersurface: String, step: usize },
    NonLinearImage { step: usize },
    /// f^step(Sigma_BC) lies in the indeterminacy locus.
    Indeterminate { step: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct NStarResult {
    pub found: bool,
    pub n_star: Option<usize>,
    pub terminal: LinearSubspace,
    pub reason: Option<NStarStop>,
    /// Sigma_BC and its images, in order.
    pub orbit: Vec<LinearSubspace>,
}

/// ceil((k^2 + k) / (k - 1)) + 2.
pub fn default_nstar_bound(k: usize) -> usize {
    (k * k + k).div_ceil(k - 1) + 2
}

/// Smallest n with f^n(Sigma_BC) = Sigma_beta-gamma, requiring the earlier
/// images to stay out of Sigma_0, Sigma_beta and Sigma_gamma.
pub fn find_nstar(m: &RecurrenceMap, max_steps: Option<usize>, seed: u64) -> Result<NStarResult> {
    if !m.is_critical() {
        return Err(Error::InvalidArgument("n* search needs a critical map".into()));
    }
    let bound = max_steps.unwrap_or_else(|| default_nstar_bound(m.k()));
    let target = named_intersection(m, &[Named::SigmaBeta, Named::SigmaGamma])?;
    let guards: Vec<(Named, LinearSubspace)> = [Named::Sigma0, Named::SigmaBeta, Named::SigmaGamma]
        .into_iter()
        .map(|w| (w, named_hypersurface(m, w)))
        .collect();
    let contained = |v: &LinearSubspace| guards.iter().find(|(_, h)| h.contains(v)).map(|(w, _)| w.to_string());

    let mut cur = named_intersection(m, &[Named::SigmaB, Named::SigmaC])?;
    let mut orbit = vec![cur.clone()];
    let finish = |orbit: Vec<LinearSubspace>, reason| {
        let terminal = orbit.last().unwrap().clone();
        Ok(NStarResult { found: false, n_star: None, terminal, reason: Some(reason), orbit })
    };
    if let Some(h) = contained(&cur) {
        return finish(orbit, NStarStop::ContainedIn { hypersurface: h, step: 0 });
    }
    for step in 1..=bound {
        if in_indeterminacy(m, &cur, Direction::Forward)? {
            return finish(orbit, NStarStop::Indeterminate { step: step - 1 });
        }
        let mut rng = SampleStream::retry(seed, streams::NSTAR, step as u64);
        let img = match transform_with(m, &cur, Direction::Forward, &mut rng) {
            Ok((img, _)) => img,
            Err(Error::NonLinearImage) => return finish(orbit, NStarStop::NonLinearImage { step }),
            Err(e) => return Err(e),
        };
        orbit.push(img.clone());
        if img == target {
            return Ok(NStarResult { found: true, n_star: Some(step), terminal: img, reason: None, orbit });
        }
        if let Some(h) = contained(&img) {
            return finish(orbit, NStarStop::ContainedIn { hypersurface: h, step });
        }
        cur = img;
    }
    finish(orbit, NStarStop::BoundExceeded)
}
