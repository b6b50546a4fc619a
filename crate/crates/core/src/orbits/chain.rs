use std::fmt;

use serde::{Deserialize, Serialize};

use super::subspace::LinearSubspace;
use super::transform::{image_step, StepKind};
use crate::error::Result;
use crate::recmap::{Covector, Direction, RecurrenceMap};
use crate::rng::{streams, SampleStream};

/// The hypersurfaces attached to a map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Named {
    Sigma0,
    SigmaBeta,
    SigmaGamma,
    SigmaB,
    SigmaC,
}

impl Named {
    pub const ALL: [Named; 5] = [Named::Sigma0, Named::SigmaBeta, Named::SigmaGamma, Named::SigmaB, Named::SigmaC];

    /// Hypersurfaces contracted by the map in the given direction.
    pub fn exceptional(dir: Direction) -> [Named; 3] {
        match dir {
            Direction::Forward => [Named::Sigma0, Named::SigmaBeta, Named::SigmaGamma],
            Direction::Inverse => [Named::Sigma0, Named::SigmaB, Named::SigmaC],
        }
    }

    pub fn covector(self, m: &RecurrenceMap) -> Covector {
        match self {
            Named::Sigma0 => {
                let mut v = vec![0i64; m.k() + 1];
                v[0] = 1;
                Covector::from_ints(&v).unwrap()
            }
            Named::SigmaBeta => m.beta().clone(),
            Named::SigmaGamma => m.gamma().clone(),
            Named::SigmaB => m.b().clone(),
            Named::SigmaC => m.c().clone(),
        }
    }
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Named::Sigma0 => "Sigma_0",
            Named::SigmaBeta => "Sigma_beta",
            Named::SigmaGamma => "Sigma_gamma",
            Named::SigmaB => "Sigma_B",
            Named::SigmaC => "Sigma_C",
        })
    }
}

impl std::str::FromStr for Named {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "sigma0" | "sigma_0" | "0" => Named::Sigma0,
            "beta" | "sigma_beta" | "sigmabeta" => Named::SigmaBeta,
            "gamma" | "sigma_gamma" | "sigmagamma" => Named::SigmaGamma,
            "b" | "sigma_b" | "sigmab" => Named::SigmaB,
            "c" | "sigma_c" | "sigmac" => Named::SigmaC,
            _ => return Err(crate::Error::Parse(format!("unknown hypersurface {s:?}"))),
        })
    }
}

pub fn named_hypersurface(m: &RecurrenceMap, which: Named) -> LinearSubspace {
    LinearSubspace::from_covectors(m.k() + 1, &[&which.covector(m)]).expect("nonzero covector")
}

/// Intersection of named hypersurfaces.
pub fn named_intersection(m: &RecurrenceMap, which: &[Named]) -> Result<LinearSubspace> {
    let covs: Vec<Covector> = which.iter().map(|w| w.covector(m)).collect();
    LinearSubspace::from_covectors(m.k() + 1, &covs.iter().collect::<Vec<_>>())
}

/// Which named hypersurface a subspace equals, if any.
pub fn identify(m: &RecurrenceMap, v: &LinearSubspace) -> Option<Named> {
    if !v.is_hypersurface() {
        return None;
    }
    Named::ALL.into_iter().find(|w| named_hypersurface(m, *w) == *v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// A blow-up step produced a hypersurface.
    ReturnedToHypersurface,
    /// A regular step landed on a hypersurface contracted in this direction.
    ReachedExceptional,
    /// The last image equals an earlier entry.
    Cycle,
    MaxLen,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainStep {
    pub kind: StepKind,
    pub image: LinearSubspace,
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitChain {
    pub direction: Direction,
    pub start: LinearSubspace,
    pub steps: Vec<ChainStep>,
    pub stop: StopReason,
    /// Index into `subspaces()` of the entry the chain closed up on.
    pub cycle_to: Option<usize>,
}

impl OrbitChain {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Start followed by every image.
    pub fn subspaces(&self) -> Vec<&LinearSubspace> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.image)).collect()
    }

    pub fn last(&self) -> &LinearSubspace {
        self.steps.last().map_or(&self.start, |s| &s.image)
    }

    pub fn kinds(&self) -> Vec<StepKind> {
        self.steps.iter().map(|s| s.kind).collect()
    }
}

/// Iterates images (strict transforms, or blow-up images inside the
/// indeterminacy locus) starting from `start`.
pub fn exceptional_chain(
    m: &RecurrenceMap,
    start: &LinearSubspace,
    dir: Direction,
    max_len: usize,
    seed: u64,
) -> Result<OrbitChain> {
    let exceptional: Vec<LinearSubspace> =
        Named::exceptional(dir).iter().map(|w| named_hypersurface(m, *w)).collect();
    let mut steps: Vec<ChainStep> = Vec::new();
    let mut cur = start.clone();
    let mut stop = StopReason::MaxLen;
    let mut cycle_to = None;
    for i in 0..max_len {
        let mut rng = SampleStream::retry(seed, streams::CHAIN, i as u64);
        let (img, kind) = image_step(m, &cur, dir, &mut rng)?;
        let seen = std::iter::once(start).chain(steps.iter().map(|s| &s.image)).position(|s| *s == img);
        steps.push(ChainStep { kind, image: img.clone() });
        if let Some(j) = seen {
            stop = StopReason::Cycle;
            cycle_to = Some(j);
            break;
        }
        if kind == StepKind::Blowup && img.is_hypersurface() {
            stop = StopReason::ReturnedToHypersurface;
            break;
        }
        if kind == StepKind::Regular && exceptional.contains(&img) {
            stop = StopReason::ReachedExceptional;
            break;
        }
        cur = img;
    }
    Ok(OrbitChain { direction: dir, start: start.clone(), steps, stop, cycle_to })
}

/// Chain from a named hypersurface.
pub fn named_chain(m: &RecurrenceMap, which: Named, dir: Direction, max_len: usize, seed: u64) -> Result<OrbitChain> {
    exceptional_chain(m, &named_hypersurface(m, which), dir, max_len, seed)
}

#[derive(Clone, Debug, Serialize)]
pub struct Prefixed {
    pub j_star: usize,
    /// L_{j*}, or the point e_k when j* = 1.
    pub subspace: LinearSubspace,
    pub verified: bool,
    /// The chain Sigma_0 -> ... under the inverse map.
    pub chain: OrbitChain,
}

/// L_j = {x_0 = 0} and beta_1 x_(k-l+1) + ... + beta_j x_(k-l+j) = 0 for l = j..k.
pub fn prefixed_equations(m: &RecurrenceMap, j: usize) -> Result<LinearSubspace> {
    let k = m.k();
    let n = k + 1;
    let mut rows = vec![LinearSubspace::coordinate(n, &[0]).equations()[0].clone()];
    for l in j..=k {
        let mut r = vec![crate::Scalar::zero(); n];
        for i in 1..=j {
            r[k - l + i] = m.beta().get(i).clone();
        }
        rows.push(r);
    }
    LinearSubspace::from_equations(n, rows)
}

/// The subspace pre-fixed by the inverse map, with the chain from Sigma_0
/// that reaches it.
pub fn prefixed_subspace(m: &RecurrenceMap, seed: u64) -> Result<Prefixed> {
    let k = m.k();
    let j = m.j_star();
    let sigma0 = named_hypersurface(m, Named::Sigma0);
    if j == 1 {
        let chain = exceptional_chain(m, &sigma0, Direction::Inverse, k - 1, seed)?;
        let ek = LinearSubspace::coordinate_point(k + 1, k);
        let verified = *chain.last() == ek;
        return Ok(Prefixed { j_star: 1, subspace: ek, verified, chain });
    }
    let l = prefixed_equations(m, j)?;
    let chain = exceptional_chain(m, &sigma0, Direction::Inverse, k - j + 1, seed)?;
    let mut rng = SampleStream::new(seed, streams::PREFIXED);
    let (fixed, _) = image_step(m, &l, Direction::Inverse, &mut rng)?;
    let verified = fixed == l && chain.len() == k - j + 1 && *chain.last() == l;
    Ok(Prefixed { j_star: j, subspace: l, verified, chain })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Scalar;

    #[test]
    fn generic_sigma0_chain_ends_on_sigma_b() {
        let m = RecurrenceMap::from_ints(&[0, 1, 0, 0], &[0, 1, 1, -1]).unwrap();
        let ch = named_chain(&m, Named::Sigma0, Direction::Forward, 10, 7).unwrap();
        assert_eq!(ch.stop, StopReason::ReturnedToHypersurface);
        let subs = ch.subspaces();
        assert_eq!(*subs[1], LinearSubspace::coordinate(4, &[0, 3]));
        assert_eq!(*subs[2], LinearSubspace::coordinate_point(4, 1));
        assert_eq!(identify(&m, subs[3]), Some(Named::SigmaB));
        assert_eq!(ch.kinds(), vec![StepKind::Collapse, StepKind::Collapse, StepKind::Blowup]);
    }

    #[test]
    fn critical_beta_chain() {
        // beta = (1, 1, 0, 0, 0), k = 4
        let m = RecurrenceMap::from_ints(&[1, 0, 2, 3, 1], &[1, 1, 0, 0, 0]).unwrap();
        assert!(m.is_critical());
        let ch = named_chain(&m, Named::SigmaBeta, Direction::Forward, 10, 3).unwrap();
        let subs = ch.subspaces();
        assert_eq!(*subs[1], LinearSubspace::coordinate_point(5, 4));
        assert_eq!(*subs[2], LinearSubspace::coordinate(5, &[0, 1, 2]));
        assert_eq!(*subs[3], LinearSubspace::coordinate(5, &[0, 1]));
        assert_eq!(*subs[4], LinearSubspace::coordinate(5, &[0]));
        assert_eq!(ch.stop, StopReason::ReturnedToHypersurface);
    }

    #[test]
    fn lyness_sigma_b_chain() {
        let m = RecurrenceMap::lyness(4, Scalar::from_int(2)).unwrap();
        let ch = named_chain(&m, Named::SigmaB, Direction::Forward, 10, 1).unwrap();
        assert_eq!(ch.stop, StopReason::ReachedExceptional);
        assert_eq!(ch.len(), 3);
        for (i, s) in ch.subspaces().iter().enumerate() {
            assert_eq!(**s, LinearSubspace::coordinate(5, &[4 - i]));
        }
        assert_eq!(identify(&m, ch.last()), Some(Named::SigmaBeta));
    }

    #[test]
    fn prefixed_examples() {
        let m = RecurrenceMap::from_ints(&[0, 1, 0, 0], &[0, 1, 1, -1]).unwrap();
        let p = prefixed_subspace(&m, 5).unwrap();
        assert_eq!(p.j_star, 3);
        assert!(p.verified);
        assert_eq!(p.subspace.codim(), 2);

        let m = RecurrenceMap::from_ints(&[1, 0, 2, 3, 1], &[1, 1, 0, 0, 0]).unwrap();
        let p = prefixed_subspace(&m, 5).unwrap();
        assert_eq!(p.j_star, 1);
        assert!(p.verified);
        assert_eq!(p.chain.len(), 3);

        let m = RecurrenceMap::from_ints(&[1, 0, 2, 3, 1], &[1, 1, 0, 1, 0]).unwrap();
        let p = prefixed_subspace(&m, 5).unwrap();
        assert_eq!(p.j_star, 3);
        assert_eq!(p.subspace.codim(), 3);
        assert!(p.verified);
    }
}
