use super::annulus::{annulus_integrate, AnnulusOptions};
use crate::extrapolate::affine_fit;
use crate::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Cut radii `ε` for the regularized integral, largest first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegIntegralSchedule {
    epsilons: Vec<f64>,
    extrapolation_order: usize,
    /// Largest acceptable fit residual.
    pub residual_tol: f64,
    /// Absolute tolerance for each raw integral.
    pub quad_tol: f64,
}

impl RegIntegralSchedule {
    pub fn new(epsilons: Vec<f64>, extrapolation_order: usize) -> Result<Self> {
        if epsilons.len() < 3 {
            return Err(Error::InvalidArgument("need at least 3 cut radii".into()));
        }
        if extrapolation_order == 0 {
            return Err(Error::InvalidArgument("extrapolation order must be positive".into()));
        }
        if epsilons.iter().any(|e| !(e.is_finite() && *e > 0.0)) || epsilons.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::InvalidArgument(
                "cut radii must be positive and strictly decreasing".into(),
            ));
        }
        Ok(RegIntegralSchedule {
            epsilons,
            extrapolation_order,
            residual_tol: 1e-3,
            quad_tol: 1e-9,
        })
    }

    /// `10^{-3}, …, 10^{-6}`.
    pub fn default_decades() -> Self {
        Self::new(vec![1e-3, 1e-4, 1e-5, 1e-6], 4).expect("valid schedule")
    }

    pub fn epsilons(&self) -> &[f64] {
        &self.epsilons
    }

    pub fn extrapolation_order(&self) -> usize {
        self.extrapolation_order
    }
}

/// A cusp at `center`, integrated over the punctured disc of radius `radius`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CuspRegion {
    pub center: Complex64,
    pub radius: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularizedIntegralResult {
    pub finite_part: f64,
    pub cusp_coefficient: f64,
    /// `(ε, raw integral)` in schedule order.
    pub per_epsilon: Vec<(f64, f64)>,
    pub error_estimate: f64,
}

impl RegularizedIntegralResult {
    /// `raw(ε) + 4πC·n·log|log ε| - finite_part` along the schedule.
    pub fn deviations(&self, cusps: usize) -> Vec<f64> {
        self.per_epsilon
            .iter()
            .map(|&(e, raw)| {
                raw + 4.0 * PI * self.cusp_coefficient * cusps as f64 * e.ln().abs().ln() - self.finite_part
            })
            .collect()
    }
}

/// Relative spread allowed between per-cusp leading coefficients.
const CUSP_COEFF_RTOL: f64 = 1e-2;

/// Raw integrals `∫_{ε < |z-p| < R} f` for each `ε` of the schedule, computed
/// incrementally from the outside in.
fn raw_profile<F>(f: &F, cusp: &CuspRegion, schedule: &RegIntegralSchedule, opts: &AnnulusOptions) -> Result<(Vec<f64>, f64)>
where
    F: Fn(Complex64) -> f64 + Sync,
{
    let eps = schedule.epsilons();
    if eps[0] >= cusp.radius {
        return Err(Error::InvalidArgument(format!(
            "largest cut radius {} is not inside the cusp disc of radius {}",
            eps[0], cusp.radius
        )));
    }
    let shifted = |w: Complex64| f(cusp.center + w);
    let mut outer = cusp.radius;
    let mut acc = 0.0;
    let mut err = 0.0;
    let mut raws = Vec::with_capacity(eps.len());
    for &e in eps {
        let r = annulus_integrate(shifted, e, outer, opts)?;
        acc += r.value;
        err += r.error;
        raws.push(acc);
        outer = e;
    }
    Ok((raws, err))
}

fn fit_tail(eps: &[f64], raws: &[f64], cusps: usize, window: usize) -> (f64, f64, f64) {
    let n = eps.len();
    let m = window.min(n);
    let xs: Vec<f64> = eps[n - m..].iter().map(|e| e.ln().abs().ln()).collect();
    let (c0, c1, res) = affine_fit(&xs, &raws[n - m..]);
    (c0, -c1 / (4.0 * PI * cusps as f64), res)
}

/// Finite part of `∫ f dx dy` over disjoint cusp discs, after removing the
/// `-4πC·(#cusps)·log|log ε|` divergence.
pub fn regularized_integral<F>(f: F, cusps: &[CuspRegion], schedule: &RegIntegralSchedule) -> Result<RegularizedIntegralResult>
where
    F: Fn(Complex64) -> f64 + Sync,
{
    if cusps.is_empty() {
        return Err(Error::InvalidArgument("no cusps".into()));
    }
    let opts = AnnulusOptions::abs(schedule.quad_tol / cusps.len() as f64);
    let eps = schedule.epsilons();
    let window = schedule.extrapolation_order().max(3);
    let mut total = vec![0.0; eps.len()];
    let mut quad_err = 0.0;
    let mut per_cusp = Vec::with_capacity(cusps.len());
    for cusp in cusps {
        let (raws, err) = raw_profile(&f, cusp, schedule, &opts)?;
        per_cusp.push(fit_tail(eps, &raws, 1, window).1);
        for (t, r) in total.iter_mut().zip(&raws) {
            *t += r;
        }
        quad_err += err;
    }
    let scale = per_cusp.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let spread = per_cusp.iter().fold(0.0f64, |m, c| m.max((c - per_cusp[0]).abs()));
    if cusps.len() > 1 && spread > CUSP_COEFF_RTOL * scale.max(1e-6) {
        return Err(Error::CuspCoefficientMismatch(per_cusp));
    }
    let (finite_part, cusp_coefficient, residual) = fit_tail(eps, &total, cusps.len(), window);
    if residual > schedule.residual_tol {
        return Err(Error::FitResidual {
            residual,
            tol: schedule.residual_tol,
        });
    }
    // A shorter window exposes the drift from the o(1) remainder.
    let drift = if window > 3 && eps.len() >= 3 {
        (fit_tail(eps, &total, cusps.len(), 3).0 - finite_part).abs()
    } else {
        0.0
    };
    Ok(RegularizedIntegralResult {
        finite_part,
        cusp_coefficient,
        per_epsilon: eps.iter().copied().zip(total).collect(),
        error_estimate: residual + drift + quad_err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn schedule_validation() {
        assert!(RegIntegralSchedule::new(vec![1e-2, 1e-3], 2).is_err());
        assert!(RegIntegralSchedule::new(vec![1e-2, 1e-3, 1e-3], 2).is_err());
        assert!(RegIntegralSchedule::new(vec![1e-2, 1e-3, 1e-4], 0).is_err());
        assert!(RegIntegralSchedule::new(vec![1e-2, 1e-3, 1e-4], 3).is_ok());
    }

    #[test]
    fn schedule_must_fit_inside_disc() {
        let s = RegIntegralSchedule::new(vec![0.6, 1e-3, 1e-4], 3).unwrap();
        let cusp = CuspRegion {
            center: Complex64::new(0.0, 0.0),
            radius: 0.5,
        };
        assert!(regularized_integral(|_| 1.0, &[cusp], &s).is_err());
    }
}
