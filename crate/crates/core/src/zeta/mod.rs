//! Selberg zeta products over length spectra and spectral zeta functions of
//! Laplace-type operators.

pub mod selberg;
pub mod spectral;

pub use selberg::{selberg_log_z, selberg_zprime_at_1, SelbergZetaEval, ZPrimeEstimate, DEFAULT_K_MAX, MIN_H};
pub use spectral::{
    mellin_zeta, mellin_zeta_with, zeta_prime_zero_det, zeta_prime_zero_det_with, EigenvalueList, HeatTerm,
    MellinOptions, MellinValue, ZetaDeterminant,
};
