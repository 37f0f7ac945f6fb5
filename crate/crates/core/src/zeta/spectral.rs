//! Zeta-regularized determinants from a list of eigenvalues and the small-time
//! expansion of the heat trace, via the Mellin transform split at `t = 1`.

use crate::quadrature::gk::{integrate, GkOptions};
use crate::special::{exp_int_e1, gamma, upper_gamma, EULER_GAMMA};
use crate::sum::pairwise;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// One term `coeff · t^exponent` of the small-`t` heat trace expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeatTerm {
    pub coeff: f64,
    pub exponent: f64,
}

impl HeatTerm {
    pub fn new(coeff: f64, exponent: f64) -> Self {
        HeatTerm { coeff, exponent }
    }
}

/// Nonzero spectrum of a Laplace-type operator.
///
/// The heat terms describe `Tr e^{-tΔ}` with the zero modes removed, so the
/// `t^0` coefficient already includes `-zero_multiplicity`. The list must be
/// complete below its largest entry; with no heat terms it is taken to be the
/// whole (finite) spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueList {
    eigenvalues: Vec<f64>,
    zero_multiplicity: u32,
    heat_coefficients: Vec<HeatTerm>,
}

impl EigenvalueList {
    pub fn new(eigenvalues: Vec<f64>, zero_multiplicity: u32, heat_coefficients: Vec<HeatTerm>) -> Result<Self> {
        if eigenvalues.is_empty() {
            return Err(Error::InvalidArgument("empty eigenvalue list".into()));
        }
        if eigenvalues.iter().any(|&l| !(l > 0.0) || !l.is_finite()) {
            return Err(Error::Nonpositive("eigenvalues must be positive and finite".into()));
        }
        if eigenvalues.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidArgument("eigenvalues must be sorted ascending".into()));
        }
        if heat_coefficients.iter().any(|h| !h.coeff.is_finite() || !h.exponent.is_finite()) {
            return Err(Error::InvalidArgument("heat coefficients must be finite".into()));
        }
        Ok(EigenvalueList {
            eigenvalues,
            zero_multiplicity,
            heat_coefficients,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn zero_multiplicity(&self) -> u32 {
        self.zero_multiplicity
    }

    pub fn heat_coefficients(&self) -> &[HeatTerm] {
        &self.heat_coefficients
    }

    /// The list for `cΔ`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::Nonpositive(format!("scale factor {c}")));
        }
        Ok(EigenvalueList {
            eigenvalues: self.eigenvalues.iter().map(|l| c * l).collect(),
            zero_multiplicity: self.zero_multiplicity,
            heat_coefficients: self
                .heat_coefficients
                .iter()
                .map(|h| HeatTerm::new(h.coeff * c.powf(h.exponent), h.exponent))
                .collect(),
        })
    }

    /// Circle of length `2π`: eigenvalues `k²`, `1 ≤ k ≤ n`, each twice.
    pub fn flat_circle(n: u32) -> Self {
        let eigenvalues = (1..=n as u64).flat_map(|k| [(k * k) as f64; 2]).collect();
        EigenvalueList {
            eigenvalues,
            zero_multiplicity: 1,
            heat_coefficients: vec![
                HeatTerm::new(std::f64::consts::PI.sqrt(), -0.5),
                HeatTerm::new(-1.0, 0.0),
            ],
        }
    }

    /// Square torus of side `2π`: eigenvalues `m² + n² ≤ r²`.
    pub fn flat_square_torus(r: u32) -> Self {
        let r = r as i64;
        let mut eigenvalues = Vec::new();
        for m in -r..=r {
            for n in -r..=r {
                let q = m * m + n * n;
                if q > 0 && q <= r * r {
                    eigenvalues.push(q as f64);
                }
            }
        }
        eigenvalues.sort_by(f64::total_cmp);
        EigenvalueList {
            eigenvalues,
            zero_multiplicity: 1,
            heat_coefficients: vec![HeatTerm::new(std::f64::consts::PI, -1.0), HeatTerm::new(-1.0, 0.0)],
        }
    }

    fn is_finite_spectrum(&self) -> bool {
        self.heat_coefficients.is_empty()
    }

    fn theta(&self, t: f64) -> f64 {
        // Largest eigenvalues first, so the small terms accumulate before the big ones.
        self.eigenvalues.iter().rev().map(|&l| (-l * t).exp()).sum()
    }

    fn expansion(&self, t: f64) -> f64 {
        self.heat_coefficients.iter().map(|h| h.coeff * t.powf(h.exponent)).sum()
    }

    fn remainder(&self, t: f64) -> f64 {
        self.theta(t) - self.expansion(t)
    }

    /// Weyl-law estimate of `Σ_{λ > λ_max} e^{-λt}` from the leading heat term
    /// `a t^{-d/2}`: `a t^{-d/2} Γ(d/2, λ_max t) / Γ(d/2)`.
    fn truncation_tail(&self, t: f64) -> f64 {
        let lead = self
            .heat_coefficients
            .iter()
            .filter(|h| h.exponent < 0.0)
            .min_by(|a, b| a.exponent.total_cmp(&b.exponent));
        match lead {
            None => 0.0,
            Some(h) => {
                let half_d = -h.exponent;
                let lmax = *self.eigenvalues.last().unwrap();
                h.coeff.abs() * t.powf(-half_d) * upper_gamma(half_d, lmax * t) / gamma(half_d)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinOptions {
    /// Target absolute accuracy of the returned values.
    pub tol: f64,
}

impl Default for MellinOptions {
    fn default() -> Self {
        MellinOptions { tol: 1e-10 }
    }
}

/// A Mellin-split evaluation with the estimated error from cutting the
/// eigenvalue list and the small-`t` integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MellinValue {
    pub value: f64,
    pub truncation_estimate: f64,
    pub t_min: f64,
}

/// Smallest `t` at which the list still resolves the heat trace to `eps`.
fn choose_t_min(eigs: &EigenvalueList, eps: f64) -> Result<f64> {
    if eigs.truncation_tail(1.0) > eps {
        return Err(Error::Truncation {
            estimate: eigs.truncation_tail(1.0),
            tol: eps,
        });
    }
    let (mut lo, mut hi) = (-60.0f64, 0.0f64);
    if eigs.truncation_tail(lo.exp()) <= eps {
        return Ok(lo.exp());
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if eigs.truncation_tail(mid.exp()) <= eps {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi.exp())
}

struct SmallT {
    t_min: f64,
    /// Bound on the neglected part of the small-`t` integrand near `t_min`.
    edge: f64,
}

fn small_t_setup(eigs: &EigenvalueList, tol: f64) -> Result<SmallT> {
    let eps = 1e-3 * tol;
    let t_min = choose_t_min(eigs, eps)?;
    let r0 = eigs.remainder(t_min).abs();
    let r1 = eigs.remainder(4.0 * t_min).abs();
    // Scale of the cancellation error in the remainder.
    let noise = 64.0 * f64::EPSILON * eigs.theta(t_min);
    if r0 > (eps + noise).max(1e-8) && r0 > r1 {
        return Err(Error::MissingHeatCoefficients(format!(
            "heat trace remainder grows as t -> 0 (|R| = {r0:e} at t = {t_min:e})"
        )));
    }
    Ok(SmallT {
        t_min,
        edge: r0 + eigs.truncation_tail(t_min),
    })
}

/// `∫_{t_min}^1 R(t) t^{s-1} dt` in the variable `u = log t`.
fn small_t_integral(eigs: &EigenvalueList, s: f64, t_min: f64, tol: f64) -> Result<f64> {
    let parallel = eigs.eigenvalues.len() > 2000;
    let r = integrate(
        |u: f64| {
            let t = u.exp();
            eigs.remainder(t) * (s * u).exp()
        },
        t_min.ln(),
        0.0,
        GkOptions::abs(0.1 * tol).parallel(parallel),
    )?;
    Ok(r.value)
}

/// `Σ λ^{-s} Γ(s, λ)`, the part of the Mellin integral over `t ≥ 1`.
fn large_t(eigs: &EigenvalueList, s: f64) -> f64 {
    let terms: Vec<f64> = eigs
        .eigenvalues
        .iter()
        .rev()
        .map(|&l| if s == 0.0 { exp_int_e1(l) } else { l.powf(-s) * upper_gamma(s, l) })
        .collect();
    pairwise(&terms)
}

fn nonpositive_integer(s: f64) -> Option<u32> {
    if s <= 0.0 && s == s.round() && s > -170.0 {
        Some((-s) as u32)
    } else {
        None
    }
}

/// Spectral zeta function `Σ λ_i^{-s}`, continued through the heat expansion.
pub fn mellin_zeta(eigs: &EigenvalueList, s: f64) -> Result<f64> {
    mellin_zeta_with(eigs, s, MellinOptions::default()).map(|v| v.value)
}

pub fn mellin_zeta_with(eigs: &EigenvalueList, s: f64, opts: MellinOptions) -> Result<MellinValue> {
    if !s.is_finite() {
        return Err(Error::InvalidArgument(format!("s = {s}")));
    }
    if eigs.is_finite_spectrum() {
        let terms: Vec<f64> = eigs.eigenvalues.iter().rev().map(|l| l.powf(-s)).collect();
        return Ok(MellinValue {
            value: pairwise(&terms),
            truncation_estimate: 0.0,
            t_min: 0.0,
        });
    }
    if let Some(k) = nonpositive_integer(s) {
        // 1/Γ(s) vanishes; only the pole of a_j/(s + e_j) with e_j = k survives.
        let a: f64 = eigs
            .heat_coefficients
            .iter()
            .filter(|h| h.exponent == k as f64)
            .map(|h| h.coeff)
            .sum();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(MellinValue {
            value: sign * (1..=k).map(f64::from).product::<f64>() * a,
            truncation_estimate: 0.0,
            t_min: 0.0,
        });
    }
    if let Some(h) = eigs.heat_coefficients.iter().find(|h| s + h.exponent == 0.0) {
        return Err(Error::Domain(format!(
            "s = {s} sits on the pole of the t^{} heat term",
            h.exponent
        )));
    }
    let st = small_t_setup(eigs, opts.tol)?;
    let small = small_t_integral(eigs, s, st.t_min, opts.tol)?;
    let poles: f64 = eigs.heat_coefficients.iter().map(|h| h.coeff / (s + h.exponent)).sum();
    let big = large_t(eigs, s);
    let inv_gamma = 1.0 / gamma(s);
    let dropped = if s > 0.0 {
        st.edge * st.t_min.powf(s) / s
    } else {
        st.edge * st.t_min.powf(s) * (1.0 + st.t_min.ln().abs())
    };
    let truncation_estimate = dropped * inv_gamma.abs();
    if truncation_estimate > opts.tol {
        return Err(Error::Truncation {
            estimate: truncation_estimate,
            tol: opts.tol,
        });
    }
    Ok(MellinValue {
        value: inv_gamma * (small + poles + big),
        truncation_estimate,
        t_min: st.t_min,
    })
}

/// `ζ'(0)` and `log det' Δ = -ζ'(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaDeterminant {
    pub zeta_prime_0: f64,
    pub log_det: f64,
    pub zeta_0: f64,
    pub truncation_estimate: f64,
}

pub fn zeta_prime_zero_det(eigs: &EigenvalueList) -> Result<ZetaDeterminant> {
    zeta_prime_zero_det_with(eigs, MellinOptions::default())
}

pub fn zeta_prime_zero_det_with(eigs: &EigenvalueList, opts: MellinOptions) -> Result<ZetaDeterminant> {
    if eigs.is_finite_spectrum() {
        let logs: Vec<f64> = eigs.eigenvalues.iter().rev().map(|l| l.ln()).collect();
        let log_det = pairwise(&logs);
        return Ok(ZetaDeterminant {
            zeta_prime_0: -log_det,
            log_det,
            zeta_0: eigs.eigenvalues.len() as f64,
            truncation_estimate: 0.0,
        });
    }
    // ζ(s) = (s + γ s² + …)(a_0/s + G(s)), so ζ(0) = a_0 and ζ'(0) = γ a_0 + G(0).
    let a0: f64 = eigs
        .heat_coefficients
        .iter()
        .filter(|h| h.exponent == 0.0)
        .map(|h| h.coeff)
        .sum();
    let st = small_t_setup(eigs, opts.tol)?;
    let small = small_t_integral(eigs, 0.0, st.t_min, opts.tol)?;
    let poles: f64 = eigs
        .heat_coefficients
        .iter()
        .filter(|h| h.exponent != 0.0)
        .map(|h| h.coeff / h.exponent)
        .sum();
    let big = large_t(eigs, 0.0);
    let truncation_estimate = st.edge * (1.0 + st.t_min.ln().abs());
    if truncation_estimate > opts.tol {
        return Err(Error::Truncation {
            estimate: truncation_estimate,
            tol: opts.tol,
        });
    }
    let zeta_prime_0 = EULER_GAMMA * a0 + small + poles + big;
    Ok(ZetaDeterminant {
        zeta_prime_0,
        log_det: -zeta_prime_0,
        zeta_0: a0,
        truncation_estimate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn finite_list_is_a_plain_sum() {
        let e = EigenvalueList::new(vec![1.0], 0, vec![]).unwrap();
        assert_eq!(mellin_zeta(&e, 3.0).unwrap(), 1.0);
    }

    #[test]
    fn circle_at_nonpositive_integers() {
        let e = EigenvalueList::flat_circle(100);
        // 2 ζ_R(0) = -1, 2 ζ_R(-2) = 0
        assert_eq!(mellin_zeta(&e, 0.0).unwrap(), -1.0);
        assert_eq!(mellin_zeta(&e, -1.0).unwrap(), 0.0);
    }

    #[test]
    fn circle_at_one() {
        let e = EigenvalueList::flat_circle(2000);
        let z = mellin_zeta(&e, 1.0).unwrap();
        assert!((z - PI * PI / 3.0).abs() < 1e-9, "{z}");
    }

    #[test]
    fn short_list_without_expansion_fails() {
        let e = EigenvalueList::new(vec![1.0, 4.0, 9.0], 0, vec![HeatTerm::new(1.0, -1.0)]).unwrap();
        assert!(matches!(mellin_zeta(&e, 2.0), Err(Error::Truncation { .. })));
    }

    #[test]
    fn missing_constant_term_is_detected() {
        let mut e = EigenvalueList::flat_circle(2000);
        e.heat_coefficients.pop();
        assert!(matches!(zeta_prime_zero_det(&e), Err(Error::MissingHeatCoefficients(_))));
    }

    #[test]
    fn rejects_unsorted() {
        assert!(EigenvalueList::new(vec![2.0, 1.0], 0, vec![]).is_err());
        assert!(EigenvalueList::new(vec![0.0, 1.0], 0, vec![]).is_err());
    }
}
