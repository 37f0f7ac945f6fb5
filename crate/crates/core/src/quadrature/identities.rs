//! Explicit integrals near a node and their closed forms.

use super::annulus::{annulus_integrate, plane_integrate, radial_integrate, radial_plane_integrate, AnnulusOptions};
use super::measure::from_dzdzbar_over_2pi_i;
use crate::extrapolate::neville_to_zero;
use crate::geometry::NodeMetricData;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `log(r² + r⁻²)` without overflow.
fn log_r2_plus_inv(r: f64) -> f64 {
    let l = 2.0 * r.ln().abs();
    l + (-2.0 * l).exp().ln_1p()
}

/// `4|y|²/(|y|⁴+1)²` translated from `dy dȳ/(2πi)` to `dx dy`.
fn node_density(r: f64) -> f64 {
    let r2 = r * r;
    from_dzdzbar_over_2pi_i(4.0 * r2 / (r2 * r2 + 1.0).powi(2))
}

/// The two plane integrals of the node density, without and with the weight
/// `log(|y|² + |y|⁻²)`. Both equal `-2`.
pub fn lim_log_diverg_integrals(tol: f64) -> Result<(f64, f64)> {
    let opts = AnnulusOptions::abs(tol);
    let plain = radial_plane_integrate(node_density, &opts)?;
    let weighted = radial_plane_integrate(|r| log_r2_plus_inv(r) * node_density(r), &opts)?;
    Ok((plain.value, weighted.value))
}

/// Integrand of the reduced node integral in the rescaled coordinate `x`.
fn node_integrand(a: f64, b: Complex64, c: f64, x: Complex64) -> f64 {
    let r2 = x.norm_sqr();
    let q = a * r2 + c - 2.0 * (b * x).re;
    let p = r2 + 1.0;
    let disc = a * c - b.norm_sqr();
    (q / p).ln() * (4.0 * disc / (q * q) + 4.0 / (p * p))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DoubleIntegral {
    pub numeric: f64,
    pub closed_form: f64,
    pub error: f64,
}

/// `∫_{ℝ²} log((a|x|²+c-2bx₁)/(|x|²+1))·(4(ac-b²)/(…)² + 4/(|x|²+1)²) dx₁dx₂`
/// against its closed form `4π log(ac - b²)`.
pub fn double_integral_identity(a: f64, b: f64, c: f64) -> Result<DoubleIntegral> {
    double_integral_identity_with(a, b, c, 1e-7)
}

pub fn double_integral_identity_with(a: f64, b: f64, c: f64, tol: f64) -> Result<DoubleIntegral> {
    let data = NodeMetricData::new(a, Complex64::new(b, 0.0), c)?;
    let bc = data.b;
    let r = plane_integrate(|x| node_integrand(a, bc, c, x), &AnnulusOptions::abs(tol))?;
    Ok(DoubleIntegral {
        numeric: r.value,
        closed_form: 4.0 * PI * data.discriminant().ln(),
        error: r.error,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeLimitReport {
    /// Extrapolated limit divided by `rk ξ / 6`.
    pub limit: f64,
    /// `log(ac - |b|²)`.
    pub target: f64,
    pub error: f64,
    /// Extrapolant at `t → 0` for each `ε`.
    pub per_epsilon: Vec<(f64, f64)>,
    /// `(t, ε, value)` before extrapolation.
    pub samples: Vec<(f64, f64, f64)>,
}

const NODE_SETTLE_TOL: f64 = 1e-4;

/// Default `|t|` schedule for [`node_limit_check`].
pub const NODE_T_SCHEDULE: [f64; 4] = [1e-4, 1e-6, 1e-8, 1e-10];
/// Default `ε` schedule for [`node_limit_check`].
pub const NODE_EPS_SCHEDULE: [f64; 3] = [0.25, 0.1, 0.05];

/// `(1/4π) ∫` of the reduced integrand over `|t|^{1/4}/ε^{1/2} < |x| < ε^{1/2}/|t|^{1/4}`,
/// which is `∫_{X_t ∩ U(Q,ε)} F` divided by `rk ξ / 6`.
pub fn node_window_value(data: &NodeMetricData, t: f64, eps: f64, tol: f64) -> Result<f64> {
    let rho = t.powf(0.25) / eps.sqrt();
    if !(rho < 1.0) {
        return Err(Error::Domain(format!("empty window for t={t}, eps={eps}")));
    }
    let (a, b, c) = (data.a, data.b, data.c);
    let r = annulus_integrate(|x| node_integrand(a, b, c, x), rho, 1.0 / rho, &AnnulusOptions::abs(tol))?;
    Ok(r.value / (4.0 * PI))
}

/// Evaluates the node integral on the schedules, extrapolates `t → 0` for each
/// `ε` (the window deficit is a series in `|t|^{1/2}`) and compares across `ε`.
pub fn node_limit_check(data: &NodeMetricData, t_schedule: &[f64], eps_schedule: &[f64]) -> Result<NodeLimitReport> {
    if t_schedule.len() < 2 || eps_schedule.is_empty() {
        return Err(Error::InvalidArgument("need at least two t values and one ε".into()));
    }
    for s in [t_schedule, eps_schedule] {
        if s.iter().any(|x| !(*x > 0.0)) || s.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidArgument("schedules must be positive and decreasing".into()));
        }
    }
    let tol = 1e-9;
    let mut samples = Vec::new();
    let mut per_epsilon = Vec::new();
    let mut error = 0.0f64;
    for &eps in eps_schedule {
        let xs: Vec<f64> = t_schedule.iter().map(|t| t.sqrt()).collect();
        let ys = t_schedule
            .iter()
            .map(|&t| node_window_value(data, t, eps, tol))
            .collect::<Result<Vec<_>>>()?;
        for (&t, &y) in t_schedule.iter().zip(&ys) {
            samples.push((t, eps, y));
        }
        let diag = neville_to_zero(&xs, &ys);
        let n = diag.len();
        error = error.max((diag[n - 1] - diag[n - 2]).abs());
        per_epsilon.push((eps, diag[n - 1]));
    }
    let limit = per_epsilon.last().map(|p| p.1).unwrap();
    let spread = per_epsilon.iter().fold(0.0f64, |m, p| m.max((p.1 - limit).abs()));
    error = error.max(spread);
    if !(error <= NODE_SETTLE_TOL) {
        return Err(Error::NotSettled(format!(
            "node limit {limit} with spread {error:e}"
        )));
    }
    Ok(NodeLimitReport {
        limit,
        target: data.discriminant().ln(),
        error,
        per_epsilon,
        samples,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderDecomposition {
    pub t: f64,
    /// Integral over `2|t| < |z₀| < 1/2`.
    pub lhs: f64,
    pub i1: f64,
    pub i2: f64,
    pub i1_distance: f64,
    pub i2_distance: f64,
    /// `lhs - (log|t|·I₁ + I₂)`.
    pub consistency: f64,
}

/// Splits the collar integral of `log(|z₀|²+|t/z₀|²)` against the node density
/// into `log|t|·I₁ + I₂` with `y = z₀|t|^{-1/2}`.
pub fn cylinder_decomposition_check(t: f64) -> Result<CylinderDecomposition> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::InvalidArgument(format!("t = {t} not in (0, 1)")));
    }
    if !(t < 1.0 / 16.0) {
        return Err(Error::Domain(format!("collar 2t < |z0| < 1/2 is empty for t = {t}")));
    }
    let opts = AnnulusOptions::abs(1e-12);
    let lhs = radial_integrate(
        |r| {
            let r2 = r * r;
            let w = (r2 + t * t / r2).ln();
            w * from_dzdzbar_over_2pi_i(4.0 * r2 * t * t / (r2 * r2 + t * t).powi(2))
        },
        2.0 * t,
        0.5,
        &opts.clone().with_breaks(&[t.sqrt()]),
    )?;
    let (ya, yb) = (2.0 * t.sqrt(), 0.5 / t.sqrt());
    let y_opts = opts.with_breaks(&[1.0]);
    let i1 = radial_integrate(node_density, ya, yb, &y_opts)?;
    let i2 = radial_integrate(|r| log_r2_plus_inv(r) * node_density(r), ya, yb, &y_opts)?;
    Ok(CylinderDecomposition {
        t,
        lhs: lhs.value,
        i1: i1.value,
        i2: i2.value,
        i1_distance: (i1.value + 2.0).abs(),
        i2_distance: (i2.value + 2.0).abs(),
        consistency: lhs.value - (t.ln() * i1.value + i2.value),
    })
}
