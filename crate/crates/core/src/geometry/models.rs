use super::{Annulus, ChartMetric, CutoffProfile, MetricLabel, PlumbingChart};
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

fn log_poincare(r: f64) -> f64 {
    -2.0 * (r * r.ln().abs()).ln()
}

/// `1/(|z| log|z|)²` on `{0 < |z| < r_out}`.
pub fn poincare_cusp(r_out: f64) -> Result<ChartMetric> {
    if !(r_out > 0.0 && r_out < 1.0) {
        return Err(Error::Domain(format!("Poincaré cusp needs 0 < r_out < 1, got {r_out}")));
    }
    Ok(ChartMetric::from_log_density(
        Annulus::new(0.0, r_out)?,
        MetricLabel::Poincare,
        |z| log_poincare(z.norm()),
    ))
}

/// `log` of the hyperbolic cylinder density; the Poincaré density at `t = 0`.
fn log_cylinder(tabs: f64, r: f64) -> f64 {
    if tabs == 0.0 {
        return log_poincare(r);
    }
    let lt = tabs.ln();
    let s = (PI * r.ln() / lt).sin().abs();
    2.0 * (PI / (r * lt.abs())).ln() - 2.0 * s.ln()
}

/// `(π/(|z₀| log|t|))² sin^{-2}(π log|z₀| / log|t|)` on `{r_in < |z₀| < r_out}`,
/// which must lie inside `{|t| < |z₀| < 1}`. For `t = 0` this is the Poincaré
/// density.
pub fn cylinder_metric(chart: &PlumbingChart, r_in: f64, r_out: f64) -> Result<ChartMetric> {
    let tabs = chart.t.norm();
    if r_in < tabs || r_out > 1.0 {
        return Err(Error::Domain(format!(
            "cylinder domain ({r_in}, {r_out}) leaves ({tabs}, 1) where the density blows up"
        )));
    }
    Ok(ChartMetric::from_log_density(
        Annulus::new(r_in, r_out)?,
        MetricLabel::Cylinder { t: tabs },
        move |z| log_cylinder(tabs, z.norm()),
    ))
}

/// The radii `|z₀|` where `ν > 0`, i.e. `|z₀|² + |t|²/|z₀|² < 3/4`.
fn grafting_support(tabs: f64) -> Result<(f64, f64)> {
    let disc = 9.0 / 16.0 - 4.0 * tabs * tabs;
    if disc <= 0.0 {
        return Err(Error::Domain(format!("|t| = {tabs} too large for grafting")));
    }
    let lo = ((0.75 - disc.sqrt()) / 2.0).sqrt();
    let hi = ((0.75 + disc.sqrt()) / 2.0).sqrt();
    Ok((lo, hi))
}

/// `λ_cyl^ν λ_base^{1-ν}` with `ν = 1 - ν₀(|z₀|² + |z₁|²)`.
pub fn grafted_metric(base: &ChartMetric, chart: &PlumbingChart, cut: CutoffProfile) -> Result<ChartMetric> {
    let tabs = chart.t.norm();
    let (lo, hi) = grafting_support(tabs)?;
    let dom = base.domain();
    if !(dom.r_in <= lo && dom.r_out >= hi) {
        return Err(Error::Domain(format!(
            "base domain {dom:?} does not cover the grafting region [{lo}, {hi}]"
        )));
    }
    let base_log = base.log_density_fn();
    let chart = *chart;
    Ok(ChartMetric::from_log_density(
        dom,
        MetricLabel::Grafted { t: tabs },
        move |z| {
            let nu = cut.nu(&chart, z);
            if nu == 0.0 {
                return base_log(z);
            }
            let cyl = log_cylinder(tabs, z.norm());
            if nu == 1.0 {
                return cyl;
            }
            nu * cyl + (1.0 - nu) * base_log(z)
        },
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Section33Kind {
    /// Induced by `|dz₀|² + |dz₁|²`.
    SimInd,
    /// Trivialized near the node by `ν̃`.
    Sim,
    /// Cylinder-modified near the node.
    Kappa,
}

/// `‖dz₀/z₀ - dz₁/z₁‖²` on the fibre over `t`.
pub fn section33_squared_norm(
    kind: Section33Kind,
    chart: &PlumbingChart,
    cut: CutoffProfile,
    z0: Complex64,
) -> Result<f64> {
    let tabs = chart.t.norm();
    let r = z0.norm();
    if !(tabs < 0.25) {
        return Err(Error::Domain(format!("|t| = {tabs} must be < 1/4")));
    }
    if !(r > tabs && r < 1.0) {
        return Err(Error::Domain(format!("|z0| = {r} outside (|t|, 1)")));
    }
    let s = r * r + (tabs / r).powi(2);
    let nt = cut.nu_tilde(chart, z0);
    let inner = match kind {
        Section33Kind::SimInd => s,
        Section33Kind::Sim => (1.0 - nt) * s + nt,
        Section33Kind::Kappa => {
            if tabs == 0.0 {
                return Err(Error::Domain("kappa metric needs t != 0".into()));
            }
            let mut v = (1.0 - nt) * s;
            if nt > 0.0 {
                let lt = tabs.ln();
                v += PI * PI * nt / (lt * lt) / (PI * r.ln() / lt).sin().powi(2);
            }
            v
        }
    };
    Ok(2.0 / inner)
}

/// The metric on `X_t` dual to the squared norm `N` of `dz₀/z₀ - dz₁/z₁ = 2dz₀/z₀`,
/// normalized so the `ν̃ = 1` part of the kappa density is the cylinder metric:
/// `λ = 2 / (|z₀|² N)`.
pub fn section33_densities(kind: Section33Kind, chart: &PlumbingChart, cut: CutoffProfile) -> Result<ChartMetric> {
    let tabs = chart.t.norm();
    // Validate once; evaluation inside the domain cannot fail afterwards.
    section33_squared_norm(kind, chart, cut, Complex64::new(0.5 * (1.0 + tabs), 0.0))?;
    let chart = *chart;
    let label = match kind {
        Section33Kind::SimInd => MetricLabel::TildeInduced { t: tabs },
        Section33Kind::Sim => MetricLabel::Tilde { t: tabs },
        Section33Kind::Kappa => MetricLabel::Kappa { t: tabs },
    };
    Ok(ChartMetric::from_log_density(Annulus::new(tabs, 1.0)?, label, move |z| {
        let n = section33_squared_norm(kind, &chart, cut, z).unwrap_or(f64::NAN);
        (2.0 / (z.norm_sqr() * n)).ln()
    }))
}

/// Radii at which [`flatten`] probes for a cusp.
fn cusp_probe_radii(r_out: f64) -> [f64; 4] {
    let r = r_out.min(0.5);
    [r * 1e-2, r * 1e-4, r * 1e-8, r * 1e-16]
}

/// Replaces the cusp by the flat density: `λ_f = λ^{ν₀(|z|)}`, so `λ_f = 1` on
/// `{|z| < 1/2}` and `λ_f = λ` on `{|z| > 3/4}`.
pub fn flatten(base: &ChartMetric, cut: CutoffProfile) -> Result<ChartMetric> {
    let dom = base.domain();
    if dom.r_in != 0.0 {
        return Err(Error::NotCuspType(format!("domain {dom:?} is not a punctured disc")));
    }
    for r in cusp_probe_radii(dom.r_out) {
        let p = base.log_density(Complex64::new(r, 0.0)) + 2.0 * (r * r.ln().abs()).ln();
        if !(p.is_finite() && p.abs() < 27f64.ln()) {
            return Err(Error::NotCuspType(format!(
                "λ |z log|z||² = {} at |z| = {r:e}",
                p.exp()
            )));
        }
    }
    let base_log = base.log_density_fn();
    Ok(ChartMetric::from_log_density(Annulus::new(0.0, dom.r_out)?, MetricLabel::Flattened, move |z| {
        let nu = cut.nu0(z.norm());
        if nu == 0.0 {
            0.0
        } else {
            nu * base_log(z)
        }
    }))
}
