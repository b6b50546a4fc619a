//! Classification of maps and exact certification of periods.

mod classify;
mod params;
mod period;

pub use classify::{classify_map, lyness_parameter, ClassificationReport, ClassifyLimits, NotPeriodicReason, Periodicity};
pub use params::{period4k_map, period4k_parameters, period4k_parameters_with, search_periodic, SearchHit};
pub use period::{
    certify_period, line_return, predicted_period, CertifyOutcome, LineCheck, MinimalityWitness, PeriodCertificate,
    Proof, Refutation,
};
