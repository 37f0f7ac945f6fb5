//! Bott–Chern secondary forms for line bundles and the anomaly integrand on charts.

use super::annulus::{annulus_integrate, AnnulusOptions};
use super::gk::QuadResult;
use crate::constants::TwistPower;
use crate::geometry::{c1_density, stencil_step, STENCIL_REACH, Annulus, ChartFunction, ChartMetric};
use crate::{Error, Result};
use num_complex::Complex64;
use std::sync::Arc;

/// Two log norm-squared densities of one line bundle in a common frame.
#[derive(Clone)]
pub struct BottChernPair {
    pub log_h1: ChartFunction,
    pub log_h2: ChartFunction,
}

impl std::fmt::Debug for BottChernPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("BottChernPair { .. }")
    }
}

impl BottChernPair {
    pub fn new(log_h1: ChartFunction, log_h2: ChartFunction) -> Self {
        BottChernPair { log_h1, log_h2 }
    }

    pub fn swapped(&self) -> Self {
        BottChernPair {
            log_h1: self.log_h2.clone(),
            log_h2: self.log_h1.clone(),
        }
    }

    /// Pair of `TX` metrics: the norm square of `∂/∂z` is the density.
    pub fn tangent(m1: &ChartMetric, m2: &ChartMetric) -> Self {
        BottChernPair::new(m1.log_density_fn(), m2.log_density_fn())
    }

    /// Pair on `ω^n`: `‖dz^n‖² = λ^{-n}`.
    pub fn canonical_power(m1: &ChartMetric, m2: &ChartMetric, n: i32) -> Self {
        let (f1, f2) = (m1.log_density_fn(), m2.log_density_fn());
        let n = n as f64;
        BottChernPair::new(Arc::new(move |z| -n * f1(z)), Arc::new(move |z| -n * f2(z)))
    }
}

/// `ch̃⁰ = log h₁ - log h₂`.
pub fn bott_chern_deg0(pair: &BottChernPair, z: Complex64) -> f64 {
    (pair.log_h1)(z) - (pair.log_h2)(z)
}

/// `Td̃⁰ = ch̃⁰ / 2`.
pub fn todd_bott_chern_deg0(pair: &BottChernPair, z: Complex64) -> f64 {
    0.5 * bott_chern_deg0(pair, z)
}

/// `ch̃² = ch̃⁰·(c₁(h₁) + c₁(h₂))/2` as a density against `dx dy`.
pub fn bott_chern_deg2(pair: &BottChernPair, z: Complex64) -> f64 {
    let d = bott_chern_deg0(pair, z);
    if d == 0.0 {
        return 0.0;
    }
    d * (c1_density(&*pair.log_h1, z) + c1_density(&*pair.log_h2, z)) / 2.0
}

/// `Td̃² = ch̃² / 6`.
pub fn todd_bott_chern_deg2(pair: &BottChernPair, z: Complex64) -> f64 {
    bott_chern_deg2(pair, z) / 6.0
}

/// Inputs of the anomaly integrand: two metrics on the chart, two metrics on a
/// line bundle `ξ`, and the twist by `ω^n`.
#[derive(Clone)]
pub struct AnomalyData {
    tangent: BottChernPair,
    bundle: BottChernPair,
    twist: BottChernPair,
    n: i32,
}

impl AnomalyData {
    pub fn new(metric1: &ChartMetric, metric2: &ChartMetric, bundle1: ChartFunction, bundle2: ChartFunction, n: TwistPower) -> Self {
        AnomalyData {
            tangent: BottChernPair::tangent(metric1, metric2),
            bundle: BottChernPair::new(bundle1, bundle2),
            twist: BottChernPair::canonical_power(metric1, metric2, n.n()),
            n: n.n(),
        }
    }

    /// Degree-2 part of `Td̃·ch·ch + Td·ch̃·ch + Td·ch·ch̃`, as a density against `dx dy`.
    pub fn integrand(&self, z: Complex64) -> f64 {
        let c1 = |f: &ChartFunction| c1_density(&**f, z);
        let c1_xi_1 = c1(&self.bundle.log_h1);
        let c1_xi_2 = c1(&self.bundle.log_h2);
        let c1_tx_2 = c1(&self.tangent.log_h2);
        let c1_om_1 = if self.n == 0 { 0.0 } else { c1(&self.twist.log_h1) };

        let t1 = todd_bott_chern_deg2(&self.tangent, z)
            + todd_bott_chern_deg0(&self.tangent, z) * (c1_xi_1 + c1_om_1);
        let t2 = bott_chern_deg2(&self.bundle, z) + bott_chern_deg0(&self.bundle, z) * (c1_tx_2 / 2.0 + c1_om_1);
        let t3 = if self.n == 0 {
            0.0
        } else {
            bott_chern_deg2(&self.twist, z) + bott_chern_deg0(&self.twist, z) * (c1_tx_2 / 2.0 + c1_xi_2)
        };
        t1 + t2 + t3
    }
}

/// Integral of the anomaly integrand over an annulus inside both metric domains.
pub fn anomaly_rhs_chart(
    metric1: &ChartMetric,
    metric2: &ChartMetric,
    bundle1: ChartFunction,
    bundle2: ChartFunction,
    n: TwistPower,
    domain: Annulus,
    opts: &AnnulusOptions,
) -> Result<QuadResult> {
    let reach = STENCIL_REACH * stencil_step(Complex64::new(1.0, 0.0));
    let (lo, hi) = (domain.r_in * (1.0 - reach), domain.r_out * (1.0 + reach));
    for m in [metric1, metric2] {
        if domain.r_in <= 0.0 || !m.domain().contains_closed_ring(lo, hi) {
            return Err(Error::Domain(format!(
                "{domain:?} is not inside the metric domain {:?}",
                m.domain()
            )));
        }
    }
    let data = AnomalyData::new(metric1, metric2, bundle1, bundle2, n);
    annulus_integrate(|z| data.integrand(z), domain.r_in, domain.r_out, opts)
}
