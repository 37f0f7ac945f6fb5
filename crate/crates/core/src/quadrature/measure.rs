//! Translation of `(1,1)`-form coefficients into densities against `dx dy`.

use std::f64::consts::PI;

/// `dz dz̄ / (2πi) = -(1/π) dx dy`.
pub const DZDZBAR_OVER_2PI_I: f64 = -1.0 / PI;

/// `i dz dz̄ = 2 dx dy`.
pub const I_DZDZBAR: f64 = 2.0;

/// Density against `dx dy` of `coeff · dz dz̄ / (2πi)`.
pub fn from_dzdzbar_over_2pi_i(coeff: f64) -> f64 {
    coeff * DZDZBAR_OVER_2PI_I
}

/// Density against `dx dy` of `coeff · i dz dz̄`.
pub fn from_i_dzdzbar(coeff: f64) -> f64 {
    coeff * I_DZDZBAR
}
