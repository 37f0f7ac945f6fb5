use crate::extrapolate::{affine_fit, neville_to_zero};
use crate::hyperbolic::LengthSpectrum;
use crate::sum::pairwise;
use crate::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const DEFAULT_K_MAX: usize = 64;

/// Truncated Selberg zeta value `Z_L(s) = ∏_{l(γ) ≤ L} ∏_{k ≤ k_max} (1 - e^{-(s+k) l(γ)})^2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SelbergZetaEval {
    pub s: f64,
    pub value: f64,
    pub log_value: f64,
    /// `k_tail_bound + geodesic_tail_estimate`.
    pub tail_bound: f64,
    /// Rigorous bound for dropping the factors with `k > k_max`.
    pub k_tail_bound: f64,
    /// Estimate of `|log Z - log Z_L|` from the geodesics longer than the cutoff,
    /// using a fit `N(l) ≈ A e^{βl}` of the class counting function.
    pub geodesic_tail_estimate: f64,
    /// Set when the spectrum is not certified complete below its cutoff.
    pub heuristic: bool,
    pub cutoff: f64,
}

/// Per-geodesic contribution `Σ_{k ≤ k_max} 2 log(1 - e^{-(s+k) l})`.
fn log_factor(s: f64, l: f64, k_max: usize) -> f64 {
    let mut acc = 0.0;
    // Smallest terms first.
    for k in (0..=k_max).rev() {
        let x = (-(s + k as f64) * l).exp();
        acc += 2.0 * (-x).ln_1p();
    }
    acc
}

/// `Σ_{k > k_max} -2 log(1 - x_k)` with `x_k = e^{-(s+k) l}` is at most
/// `2 x_{k_max+1} / ((1 - e^{-l})(1 - x_{k_max+1}))`.
fn k_tail(s: f64, l: f64, k_max: usize) -> f64 {
    let x = (-(s + (k_max + 1) as f64) * l).exp();
    2.0 * x / ((1.0 - (-l).exp()) * (1.0 - x))
}

/// Fit of the counting function `N(l) ≈ A e^{β l}` on the upper half of the
/// available range. Falls back to `β = 1` (prime geodesic theorem exponent for
/// finite-area surfaces) when too few lengths are present.
fn growth_fit(spec: &LengthSpectrum) -> (f64, f64) {
    let n = spec.classes.len();
    let total = spec.class_count() as f64;
    let lmax = spec.cutoff;
    if n < 4 {
        return ((total.max(1.0)) * (-lmax).exp(), 1.0);
    }
    let lo = 0.5 * lmax;
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut count = 0u64;
    for c in &spec.classes {
        count += c.multiplicity as u64;
        if c.length >= lo {
            xs.push(c.length);
            ys.push((count as f64).ln());
        }
    }
    if xs.len() < 3 {
        return (total * (-lmax).exp(), 1.0);
    }
    let (c0, beta, _) = affine_fit(&xs, &ys);
    let beta = beta.max(1.0);
    // Anchor the amplitude at the cutoff so the fit never undercounts there.
    let a = (c0.exp()).max(total * (-beta * lmax).exp());
    (a, beta)
}

/// `∫_L^∞ 2 e^{-s l} / (1 - e^{-l}) dN(l)` with `dN = A β e^{β l} dl`.
fn geodesic_tail(spec: &LengthSpectrum, s: f64) -> f64 {
    let l = spec.cutoff;
    if spec.classes.is_empty() && spec.complete {
        // Certified empty below the cutoff; nothing to fit.
        return 0.0;
    }
    let (a, beta) = growth_fit(spec);
    if s <= beta {
        return f64::INFINITY;
    }
    2.0 * a * beta * ((beta - s) * l).exp() / ((s - beta) * (1.0 - (-l).exp()))
}

/// `log Z_L(s)` summed over the spectrum with a deterministic reduction.
pub fn selberg_log_z(spectrum: &LengthSpectrum, s: f64, k_max: usize) -> Result<SelbergZetaEval> {
    if !(s > 1.0) {
        return Err(Error::InvalidArgument(format!("Selberg product needs s > 1, got {s}")));
    }
    if k_max == 0 {
        return Err(Error::InvalidArgument("k_max must be positive".into()));
    }
    if spectrum.classes.is_empty() && !spectrum.complete {
        return Err(Error::EmptyIncompleteSpectrum);
    }
    // Longest geodesics contribute least; reduce from the tail.
    let terms: Vec<f64> = spectrum
        .classes
        .par_iter()
        .rev()
        .map(|c| c.multiplicity as f64 * log_factor(s, c.length, k_max))
        .collect();
    let log_value = pairwise(&terms);
    let ktail: Vec<f64> = spectrum
        .classes
        .iter()
        .rev()
        .map(|c| c.multiplicity as f64 * k_tail(s, c.length, k_max))
        .collect();
    let k_tail_bound = pairwise(&ktail);
    let geodesic_tail_estimate = geodesic_tail(spectrum, s);
    Ok(SelbergZetaEval {
        s,
        value: log_value.exp(),
        log_value,
        tail_bound: k_tail_bound + geodesic_tail_estimate,
        k_tail_bound,
        geodesic_tail_estimate,
        heuristic: !spectrum.complete,
        cutoff: spectrum.cutoff,
    })
}

/// Estimate of `Z'(1)` from divided differences `Z(1+h)/h`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZPrimeEstimate {
    pub value: f64,
    pub error: f64,
    /// True whenever the truncated product does not actually vanish at `s = 1`
    /// (always the case for finite spectra) or the spectrum is incomplete.
    pub low_confidence: bool,
    /// The truncated product at `s = 1`.
    pub z_at_one: f64,
    pub schedule: Vec<f64>,
    pub samples: Vec<f64>,
}

/// Minimum step admitted in the `Z'(1)` schedule.
pub const MIN_H: f64 = 0.05;

/// Estimates `Z'(1)` by Richardson extrapolation of `Z(1+h)/h` to `h = 0`.
pub fn selberg_zprime_at_1(spectrum: &LengthSpectrum, h_schedule: &[f64]) -> Result<ZPrimeEstimate> {
    if h_schedule.len() < 3 {
        return Err(Error::InvalidArgument(format!(
            "schedule needs at least 3 steps, got {}",
            h_schedule.len()
        )));
    }
    if h_schedule.windows(2).any(|w| !(w[1] < w[0])) || h_schedule.iter().any(|&h| !(h > 0.0)) {
        return Err(Error::InvalidArgument("schedule must be positive and strictly decreasing".into()));
    }
    let h_min = *h_schedule.last().unwrap();
    if h_min < MIN_H {
        return Err(Error::InvalidArgument(format!(
            "smallest step {h_min} below the truncation floor {MIN_H}"
        )));
    }
    if spectrum.classes.is_empty() {
        return Err(Error::NoZeroAtOne(1.0));
    }
    let z_at_one = (spectrum
        .classes
        .iter()
        .rev()
        .map(|c| c.multiplicity as f64 * log_factor(1.0, c.length, DEFAULT_K_MAX))
        .sum::<f64>())
    .exp();
    let samples: Vec<f64> = h_schedule
        .iter()
        .map(|&h| selberg_log_z(spectrum, 1.0 + h, DEFAULT_K_MAX).map(|e| e.value / h))
        .collect::<Result<_>>()?;
    let diag = neville_to_zero(h_schedule, &samples);
    let n = diag.len();
    let value = diag[n - 1];
    let error = (diag[n - 1] - diag[n - 2]).abs();
    let low_confidence = !spectrum.complete || z_at_one > 0.0;
    if low_confidence {
        log::warn!("Z'(1) estimate is low confidence: truncated product has Z(1) = {z_at_one:e}");
    }
    Ok(ZPrimeEstimate {
        value,
        error,
        low_confidence,
        z_at_one,
        schedule: h_schedule.to_vec(),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_complete_spectrum_is_one() {
        let s = LengthSpectrum::empty(10.0, "custom", true);
        let e = selberg_log_z(&s, 2.0, 64).unwrap();
        assert_eq!(e.value, 1.0);
        assert_eq!(e.tail_bound, 0.0);
    }

    #[test]
    fn empty_incomplete_spectrum_is_rejected() {
        let s = LengthSpectrum::empty(10.0, "custom", false);
        assert_eq!(selberg_log_z(&s, 2.0, 64), Err(Error::EmptyIncompleteSpectrum));
    }

    #[test]
    fn single_geodesic_matches_direct_product() {
        let s = LengthSpectrum::from_lengths(&[(10.0, 1)], 10.0, true).unwrap();
        let e = selberg_log_z(&s, 2.0, 64).unwrap();
        let mut p = 1.0;
        for k in 0..=64 {
            p *= (1.0 - (-(2.0 + k as f64) * 10.0).exp()).powi(2);
        }
        assert!((e.value - p).abs() < 1e-15);
    }

    #[test]
    fn zprime_rejects_bad_schedules() {
        let s = LengthSpectrum::from_lengths(&[(3.0, 1)], 5.0, true).unwrap();
        assert!(selberg_zprime_at_1(&s, &[0.4, 0.2]).is_err());
        assert!(selberg_zprime_at_1(&s, &[0.4, 0.2, 0.01]).is_err());
        assert!(selberg_zprime_at_1(&s, &[0.2, 0.4, 0.1]).is_err());
        let empty = LengthSpectrum::empty(5.0, "custom", true);
        assert!(matches!(selberg_zprime_at_1(&empty, &[0.4, 0.2, 0.1]), Err(Error::NoZeroAtOne(_))));
    }

    #[test]
    fn zprime_of_single_geodesic_is_low_confidence() {
        let s = LengthSpectrum::from_lengths(&[(10.0, 1)], 10.0, true).unwrap();
        let z = selberg_zprime_at_1(&s, &[0.4, 0.2, 0.1]).unwrap();
        assert!(z.low_confidence);
        assert!(z.z_at_one > 0.99);
    }
}
