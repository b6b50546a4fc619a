use serde::Serialize;

use crate::error::Result;
use crate::exactnum::{FieldKind, Scalar};
use crate::orbits::{find_nstar, NStarResult};
use crate::picaction::{
    closed_form_charpoly, growth_classification, lyness_model, nstar_model, predicted_degree_sequence,
    spectral_radius, GrowthClass, Model, DEFAULT_PRECISION,
};
use crate::recmap::{degree_sequence_capped, Direction, RecurrenceMap, TriangleType};

use super::period::{certify_period, predicted_period, CertifyOutcome};

#[derive(Clone, Debug)]
pub struct ClassifyLimits {
    pub nstar_max: Option<usize>,
    /// Attach a certificate when a period is predicted.
    pub certify: bool,
    pub trials: usize,
    /// Steps of the measured degree sequence (4k + 2 when unset).
    pub degree_steps: Option<usize>,
}

/// Degree measurement stops once f^n exceeds this degree.
pub const DEGREE_CAP: u64 = 4096;

impl Default for ClassifyLimits {
    fn default() -> Self {
        ClassifyLimits { nstar_max: None, certify: true, trials: 20, degree_steps: None }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NotPeriodicReason {
    /// beta_j != 0 for some j >= 2.
    BetaBeyondFirst,
    /// The pullback action of the matching model grows and the measured
    /// degrees follow it.
    DegreeGrowth,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Periodicity {
    NotPeriodic { reason: NotPeriodicReason },
    Periodic { period: usize },
    /// A period is predicted from n* but was not certified.
    Predicted { period: usize },
    Unknown,
}

impl std::fmt::Display for Periodicity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Periodicity::NotPeriodic { reason: NotPeriodicReason::BetaBeyondFirst } => {
                write!(f, "not periodic (beta_j != 0 for some j >= 2)")
            }
            Periodicity::NotPeriodic { reason: NotPeriodicReason::DegreeGrowth } => write!(f, "not periodic (degree growth)"),
            Periodicity::Periodic { period } => write!(f, "periodic, period {period} (certified)"),
            Periodicity::Predicted { period } => write!(f, "predicted period {period} (not certified)"),
            Periodicity::Unknown => write!(f, "unknown"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub k: usize,
    pub field: FieldKind,
    pub admissible: bool,
    pub generic: bool,
    pub triangle: TriangleType,
    pub critical: bool,
    pub j_star: usize,
    pub lyness: bool,
    pub nstar: Option<NStarResult>,
    pub predicted_period: Option<usize>,
    /// Name of the Picard model used for the growth prediction.
    pub model: Option<String>,
    pub growth: Option<GrowthClass>,
    pub dynamical_degree: Option<f64>,
    pub delta_plus: Option<f64>,
    pub delta_minus: Option<f64>,
    pub degrees: Vec<u64>,
    /// Measured degrees agree with the model's H-coefficients.
    pub degrees_match_model: Option<bool>,
    /// First n >= 1 with deg f^n = 1, when no period is predicted from n*.
    pub candidate_period: Option<usize>,
    pub certificate: Option<CertifyOutcome>,
    pub verdict: Periodicity,
}

/// The Lyness shape alpha = c(a, 0, 1, ..., 1), beta = c(0, 1, 0, ..., 0).
pub fn lyness_parameter(m: &RecurrenceMap) -> Option<Scalar> {
    let k = m.k();
    let (a, b) = (m.alpha().coeffs(), m.beta().coeffs());
    let c = &b[1];
    if c.is_zero() || !b[0].is_zero() || b[2..].iter().any(|x| !x.is_zero()) || !a[1].is_zero() {
        return None;
    }
    if (2..=k).any(|j| a[j] != *c) {
        return None;
    }
    a[0].checked_div(c).ok()
}

fn matches_prediction(measured: &[u64], predicted: &[num_bigint::BigInt]) -> bool {
    measured.iter().zip(predicted).all(|(d, p)| num_bigint::BigInt::from(*d) == *p)
}

/// Runs the admissibility, genericity, triangle, criticality and n* analysis
/// and attaches growth data, a predicted period and (optionally) a
/// period certificate.
pub fn classify_map(m: &RecurrenceMap, limits: &ClassifyLimits, seed: u64) -> Result<ClassificationReport> {
    let k = m.k();
    let generic = m.is_generic();
    let critical = m.is_critical();
    let j_star = m.j_star();
    let lyness = lyness_parameter(m).is_some();
    let mut report = ClassificationReport {
        k,
        field: m.field(),
        admissible: true,
        generic,
        triangle: m.classify_triangle(),
        critical,
        j_star,
        lyness,
        nstar: None,
        predicted_period: None,
        model: None,
        growth: None,
        dynamical_degree: None,
        delta_plus: None,
        delta_minus: None,
        degrees: Vec::new(),
        degrees_match_model: None,
        candidate_period: None,
        certificate: None,
        verdict: Periodicity::Unknown,
    };
    if generic {
        let plus = spectral_radius(&closed_form_charpoly(Model::GenericForward, k)?, DEFAULT_PRECISION)?;
        let minus = spectral_radius(&closed_form_charpoly(Model::GenericInverse, k)?, DEFAULT_PRECISION)?;
        report.delta_plus = Some(plus.value);
        report.delta_minus = Some(minus.value);
    }
    let steps = limits.degree_steps.unwrap_or(4 * k + 2).max(1);
    report.degrees = degree_sequence_capped(m, Direction::Forward, steps, Some(DEGREE_CAP), seed)?;

    if j_star > 1 {
        report.verdict = Periodicity::NotPeriodic { reason: NotPeriodicReason::BetaBeyondFirst };
        report.dynamical_degree = report.delta_plus;
        return Ok(report);
    }
    if !critical {
        return Ok(report);
    }

    let ns = find_nstar(m, limits.nstar_max, seed)?;
    let model = match ns.n_star {
        Some(n) if n + 1 >= k => Some((Model::NStar(n), nstar_model(k, n)?)),
        _ if lyness => Some((Model::Lyness, lyness_model(k)?)),
        _ => None,
    };
    report.predicted_period = ns.n_star.and_then(|n| predicted_period(k, n));
    report.nstar = Some(ns);

    let mut grows = false;
    if let Some((name, pic)) = model {
        let growth = growth_classification(&pic)?;
        report.dynamical_degree = Some(match &growth {
            GrowthClass::Exponential { radius } => radius.value,
            _ => 1.0,
        });
        grows = !matches!(growth, GrowthClass::Bounded { .. });
        let predicted = predicted_degree_sequence(&pic, report.degrees.len() - 1);
        report.degrees_match_model = Some(matches_prediction(&report.degrees, &predicted));
        report.model = Some(name.to_string());
        report.growth = Some(growth);
    }

    if grows && report.degrees_match_model == Some(true) {
        report.verdict = Periodicity::NotPeriodic { reason: NotPeriodicReason::DegreeGrowth };
    } else if let Some(p) = report.predicted_period {
        report.verdict = Periodicity::Predicted { period: p };
        attach_certificate(m, p, limits, seed, &mut report)?;
    } else {
        report.candidate_period = report.degrees.iter().skip(1).position(|&d| d == 1).map(|i| i + 1);
        if let Some(p) = report.candidate_period {
            attach_certificate(m, p, limits, seed, &mut report)?;
        }
    }
    Ok(report)
}

fn attach_certificate(
    m: &RecurrenceMap,
    p: usize,
    limits: &ClassifyLimits,
    seed: u64,
    report: &mut ClassificationReport,
) -> Result<()> {
    if !limits.certify {
        return Ok(());
    }
    let cert = certify_period(m, p, limits.trials, seed)?;
    if cert.is_certified() {
        report.verdict = Periodicity::Periodic { period: p };
    }
    report.certificate = Some(cert);
    Ok(())
}
