//! Pullback actions on divisor classes, characteristic polynomials and
//! degree growth.

mod growth;
mod intpoly;
mod matrix;
mod models;
mod spectral;

pub use growth::{
    chi_diagnostics, growth_classification, jordan_block_at_one, matrix_order, max_entry_over_n2,
    predicted_degree_sequence, unipotent_ranks, ChiDiagnostics, GrowthClass,
};
pub use intpoly::IntPoly;
pub use matrix::{berkowitz, mat_mul, mat_pow, rank, BigMat, Expansion, PicBasis, PicMatrix};
pub use models::{
    chi_numerator, closed_form_charpoly, critical_inverse_model, critical_model, generic_model,
    inverse_generic_model, lyness_model, model_matrix, nstar_model, Model,
};
pub use spectral::{spectral_radius, SpectralRadius, DEFAULT_PRECISION};
