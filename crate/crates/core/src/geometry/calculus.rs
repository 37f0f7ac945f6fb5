use super::ChartMetric;
use crate::extrapolate::neville_to_zero;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Finite-difference step at `z`, relative to `|z|` since the model densities
/// vary on that scale.
pub fn stencil_step(z: Complex64) -> f64 {
    let r = z.norm();
    if r > 0.0 {
        1e-2 * r
    } else {
        1e-3
    }
}

/// Half-width of the stencil in units of the step.
pub const STENCIL_REACH: f64 = 3.0;

/// Flat Laplacian by the sixth-order thirteen-point cross stencil.
pub fn laplacian<F: Fn(Complex64) -> f64 + ?Sized>(f: &F, z: Complex64, h: f64) -> f64 {
    let f0 = f(z);
    let mut acc = -980.0 * f0;
    for d in [Complex64::new(h, 0.0), Complex64::new(0.0, h)] {
        acc += 270.0 * (f(z + d) + f(z - d)) - 27.0 * (f(z + 2.0 * d) + f(z - 2.0 * d))
            + 2.0 * (f(z + 3.0 * d) + f(z - 3.0 * d));
    }
    acc / (180.0 * h * h)
}

fn check_stencil(metric: &ChartMetric, z: Complex64, h: f64) -> Result<()> {
    let r = z.norm();
    if !metric.domain().contains_closed_ring(r - STENCIL_REACH * h, r + STENCIL_REACH * h) {
        return Err(Error::Domain(format!(
            "stencil of width {h:e} at |z| = {r} leaves {:?}",
            metric.domain()
        )));
    }
    Ok(())
}

/// `K = -Δ log λ / (2λ)`.
pub fn scalar_curvature(metric: &ChartMetric, z: Complex64) -> Result<f64> {
    let h = stencil_step(z);
    check_stencil(metric, z, h)?;
    let f = metric.log_density_fn();
    Ok(-laplacian(&*f, z, h) / (2.0 * metric.density(z)))
}

/// Density against `dx dy` of `∂∂̄/(2πi) log h`, that is `-Δ log h / (4π)`.
pub fn c1_density<F: Fn(Complex64) -> f64 + ?Sized>(log_h: &F, z: Complex64) -> f64 {
    -laplacian(log_h, z, stencil_step(z)) / (4.0 * PI)
}

/// `c₁(TX, λ)` as a density, with the stencil confined to the metric's domain.
pub fn c1_of_metric(metric: &ChartMetric, z: Complex64) -> Result<f64> {
    let h = stencil_step(z);
    check_stencil(metric, z, h)?;
    let f = metric.log_density_fn();
    Ok(-laplacian(&*f, z, h) / (4.0 * PI))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WolpertScaling {
    /// `log|a|` for the compatible coordinate `z' = a z`.
    pub log_a: f64,
    pub error: f64,
    /// Wolpert norm of `dz`, `1/|a|`.
    pub wolpert_norm: f64,
}

const WOLPERT_ANGLES: usize = 8;

/// Extrapolates `log|a| = lim -(log|z|/2)(λ|z|² log²|z| - 1)` in `1/|log|z||`.
pub fn wolpert_scaling(metric: &ChartMetric) -> Result<WolpertScaling> {
    let dom = metric.domain();
    if dom.r_in != 0.0 {
        return Err(Error::NotCuspType(format!("domain {dom:?} is not a punctured disc")));
    }
    let l_start = dom.r_out.min(0.5).ln().min(-4.0);
    let mut us = Vec::new();
    let mut ys = Vec::new();
    let mut last_product = f64::NAN;
    for k in 0..7 {
        let l = l_start * 2f64.powi(k);
        let r = l.exp();
        if r <= f64::MIN_POSITIVE {
            break;
        }
        let mut acc = 0.0;
        let mut prod = 0.0;
        for j in 0..WOLPERT_ANGLES {
            let th = 2.0 * PI * j as f64 / WOLPERT_ANGLES as f64;
            let z = Complex64::from_polar(r, th);
            // λ r² L² - 1 = expm1(log λ + 2 log r + 2 log|L|)
            let p = (metric.log_density(z) + 2.0 * l + 2.0 * l.abs().ln()).exp_m1();
            acc += -(l / 2.0) * p;
            prod += p;
        }
        us.push(1.0 / l.abs());
        ys.push(acc / WOLPERT_ANGLES as f64);
        last_product = 1.0 + prod / WOLPERT_ANGLES as f64;
    }
    if !((last_product - 1.0).abs() < 0.1) {
        return Err(Error::NotCuspType(format!(
            "λ|z|²log²|z| tends to {last_product}, not 1"
        )));
    }
    let diag = neville_to_zero(&us, &ys);
    let n = diag.len();
    let log_a = diag[n - 1];
    let error = (diag[n - 1] - diag[n - 2]).abs();
    if !log_a.is_finite() {
        return Err(Error::NotCuspType("extrapolation diverged".into()));
    }
    Ok(WolpertScaling {
        log_a,
        error,
        wolpert_norm: (-log_a).exp(),
    })
}
