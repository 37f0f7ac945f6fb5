//! Conformal metrics `λ(z)|dz|²` on coordinate charts near cusps and nodes.

mod calculus;
mod grid;
mod models;

pub use calculus::{
    c1_density, c1_of_metric, laplacian, scalar_curvature, stencil_step, wolpert_scaling, WolpertScaling, STENCIL_REACH,
};
pub use grid::write_density_grid;
pub use models::{
    cylinder_metric, flatten, grafted_metric, poincare_cusp, section33_densities, section33_squared_norm,
    Section33Kind,
};

use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

/// A real function on a chart, typically a log-density.
pub type ChartFunction = Arc<dyn Fn(Complex64) -> f64 + Send + Sync>;

/// `{r_in < |z| < r_out}`; `r_in = 0` is the punctured disc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Annulus {
    pub r_in: f64,
    pub r_out: f64,
}

impl Annulus {
    pub fn new(r_in: f64, r_out: f64) -> Result<Self> {
        if !(r_in >= 0.0 && r_out > r_in && r_out.is_finite()) {
            return Err(Error::Domain(format!("bad annulus ({r_in}, {r_out})")));
        }
        Ok(Annulus { r_in, r_out })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        let r = z.norm();
        r > self.r_in && r < self.r_out
    }

    pub fn contains_closed_ring(&self, r_lo: f64, r_hi: f64) -> bool {
        r_lo > self.r_in && r_hi < self.r_out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MetricLabel {
    Poincare,
    Cylinder { t: f64 },
    Grafted { t: f64 },
    Flattened,
    TildeInduced { t: f64 },
    Tilde { t: f64 },
    Kappa { t: f64 },
    Custom(String),
}

/// The metric `λ(z)|dz|²`, stored through `log λ`.
#[derive(Clone)]
pub struct ChartMetric {
    domain: Annulus,
    label: MetricLabel,
    log_density: ChartFunction,
}

impl fmt::Debug for ChartMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ChartMetric")
            .field("domain", &self.domain)
            .field("label", &self.label)
            .finish_non_exhaustive()
    }
}

impl ChartMetric {
    pub fn from_log_density<F>(domain: Annulus, label: MetricLabel, log_density: F) -> Self
    where
        F: Fn(Complex64) -> f64 + Send + Sync + 'static,
    {
        ChartMetric {
            domain,
            label,
            log_density: Arc::new(log_density),
        }
    }

    pub fn from_density<F>(domain: Annulus, label: MetricLabel, density: F) -> Self
    where
        F: Fn(Complex64) -> f64 + Send + Sync + 'static,
    {
        Self::from_log_density(domain, label, move |z| density(z).ln())
    }

    pub fn domain(&self) -> Annulus {
        self.domain
    }

    pub fn label(&self) -> &MetricLabel {
        &self.label
    }

    pub fn density(&self, z: Complex64) -> f64 {
        (self.log_density)(z).exp()
    }

    pub fn log_density(&self, z: Complex64) -> f64 {
        (self.log_density)(z)
    }

    pub fn log_density_fn(&self) -> ChartFunction {
        self.log_density.clone()
    }

    /// The same density on a smaller domain.
    pub fn restricted(&self, domain: Annulus) -> Result<Self> {
        if domain.r_in < self.domain.r_in || domain.r_out > self.domain.r_out {
            return Err(Error::Domain(format!(
                "{domain:?} is not inside {:?}",
                self.domain
            )));
        }
        Ok(ChartMetric {
            domain,
            ..self.clone()
        })
    }

    /// `e^{2φ} λ`.
    pub fn conformal_change<F>(&self, phi: F) -> Self
    where
        F: Fn(Complex64) -> f64 + Send + Sync + 'static,
    {
        let base = self.log_density.clone();
        ChartMetric {
            domain: self.domain,
            label: MetricLabel::Custom(format!("conformal({:?})", self.label)),
            log_density: Arc::new(move |z| base(z) + 2.0 * phi(z)),
        }
    }
}

/// Local plumbing `z₀ z₁ = t` at a node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlumbingChart {
    pub t: Complex64,
}

impl PlumbingChart {
    pub fn new(t: Complex64) -> Result<Self> {
        if !(t.norm() < 1.0) {
            return Err(Error::Domain(format!("|t| = {} must be < 1", t.norm())));
        }
        Ok(PlumbingChart { t })
    }

    pub fn z1(&self, z0: Complex64) -> Complex64 {
        self.t / z0
    }
}

/// `ν₀`: 0 below 1/2, 1 above 3/4, the degree-7 smoothstep in between.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct CutoffProfile;

impl CutoffProfile {
    pub const NAME: &'static str = "smoothstep7[1/2,3/4]";

    pub fn nu0(&self, u: f64) -> f64 {
        if u <= 0.5 {
            return 0.0;
        }
        if u >= 0.75 {
            return 1.0;
        }
        let x = (u - 0.5) * 4.0;
        x.powi(4) * (35.0 + x * (-84.0 + x * (70.0 - 20.0 * x)))
    }

    /// `ν = 1 - ν₀(|z₀|² + |z₁|²)`, equal to 1 near the node.
    pub fn nu(&self, chart: &PlumbingChart, z0: Complex64) -> f64 {
        1.0 - self.nu0(z0.norm_sqr() + chart.z1(z0).norm_sqr())
    }

    /// `ν̃ = 1 - ν₀(4(|z₀|² + |z₁|²))`.
    pub fn nu_tilde(&self, chart: &PlumbingChart, z0: Complex64) -> f64 {
        1.0 - self.nu0(4.0 * (z0.norm_sqr() + chart.z1(z0).norm_sqr()))
    }
}

/// Values `a, b, c` of the ambient Hermitian metric at a node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NodeMetricData {
    pub a: f64,
    pub b: Complex64,
    pub c: f64,
}

impl NodeMetricData {
    pub fn new(a: f64, b: Complex64, c: f64) -> Result<Self> {
        if !(a > 0.0 && c > 0.0 && a * c - b.norm_sqr() > 0.0) {
            return Err(Error::Nonpositive(format!(
                "need a > 0, c > 0, ac - |b|^2 > 0; got a={a}, b={b}, c={c}"
            )));
        }
        Ok(NodeMetricData { a, b, c })
    }

    pub fn discriminant(&self) -> f64 {
        self.a * self.c - self.b.norm_sqr()
    }

    /// `log(a|z₀|² + c|z₁|² - 2 Re(b z₀ z̄₁))` on the fibre `z₀ z₁ = t`.
    pub fn log_vertical_norm(&self, t: Complex64, z0: Complex64) -> f64 {
        let z1 = t / z0;
        (self.a * z0.norm_sqr() + self.c * z1.norm_sqr() - 2.0 * (self.b * z0 * z1.conj()).re).ln()
    }

    /// The exact value of `∂_z∂_z̄` of [`Self::log_vertical_norm`]:
    /// `4(ac - |b|²)|z₀|²|t|² / (a|z₀|⁴ + c|t|² - 2 Re(b z₀² t̄))²`.
    pub fn ddbar_log_vertical_norm(&self, t: Complex64, z0: Complex64) -> f64 {
        let q = self.a * z0.norm_sqr().powi(2) + self.c * t.norm_sqr() - 2.0 * (self.b * z0 * z0 * t.conj()).re;
        4.0 * self.discriminant() * z0.norm_sqr() * t.norm_sqr() / (q * q)
    }
}
