//! Integration over annuli and the plane in polar coordinates, with `u = log r`
//! as the radial variable.

use super::gk::{integrate_with_breaks, GkOptions, QuadResult};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct AnnulusOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
    /// Radii where the integrand has kinks (e.g. cutoff plateau edges).
    pub breaks: Vec<f64>,
    pub min_theta: usize,
    pub max_theta: usize,
    pub parallel: bool,
}

impl Default for AnnulusOptions {
    fn default() -> Self {
        AnnulusOptions {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_intervals: 4000,
            breaks: Vec::new(),
            min_theta: 16,
            max_theta: 1 << 16,
            parallel: true,
        }
    }
}

impl AnnulusOptions {
    pub fn abs(tol: f64) -> Self {
        AnnulusOptions {
            abs_tol: tol,
            rel_tol: 0.0,
            ..Default::default()
        }
    }

    pub fn with_breaks(mut self, breaks: &[f64]) -> Self {
        self.breaks = breaks.to_vec();
        self
    }

    fn gk(&self) -> GkOptions {
        GkOptions {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_intervals: self.max_intervals,
            parallel: self.parallel,
        }
    }
}

/// `∫_0^{2π} f(r e^{iθ}) dθ` by trapezoid doubling; exact for trigonometric
/// polynomials of low degree and spectrally accurate for smooth periodic data.
fn angular<F: Fn(Complex64) -> f64>(f: &F, r: f64, tol: f64, min_n: usize, max_n: usize) -> Result<f64> {
    let mut n = min_n.max(4);
    let mut sum: f64 = (0..n)
        .map(|j| f(Complex64::from_polar(r, 2.0 * PI * j as f64 / n as f64)))
        .sum();
    let mut prev = sum * 2.0 * PI / n as f64;
    loop {
        let odd: f64 = (0..n)
            .map(|j| f(Complex64::from_polar(r, 2.0 * PI * (2 * j + 1) as f64 / (2 * n) as f64)))
            .sum();
        sum += odd;
        n *= 2;
        let cur = sum * 2.0 * PI / n as f64;
        if (cur - prev).abs() <= tol {
            return Ok(cur);
        }
        if n >= max_n {
            return Err(Error::NonConvergence {
                error: (cur - prev).abs(),
                tol,
            });
        }
        prev = cur;
    }
}

/// `∫∫_{r_in < |z| < r_out} f dx dy` for `0 < r_in < r_out < ∞`.
pub fn annulus_integrate<F>(f: F, r_in: f64, r_out: f64, opts: &AnnulusOptions) -> Result<QuadResult>
where
    F: Fn(Complex64) -> f64 + Sync,
{
    if !(r_in > 0.0 && r_out > r_in && r_out.is_finite()) {
        return Err(Error::Domain(format!("annulus ({r_in}, {r_out})")));
    }
    let (ulo, uhi) = (r_in.ln(), r_out.ln());
    let inner_tol = 0.1 * opts.abs_tol.max(1e-300) / (uhi - ulo);
    polar_in_u(&f, ulo, uhi, inner_tol, opts)
}

fn polar_in_u<F>(f: &F, ulo: f64, uhi: f64, inner_tol: f64, opts: &AnnulusOptions) -> Result<QuadResult>
where
    F: Fn(Complex64) -> f64 + Sync,
{
    let mut breaks = vec![ulo];
    let mut extra: Vec<f64> = opts
        .breaks
        .iter()
        .filter(|&&r| r > 0.0)
        .map(|r| r.ln())
        .filter(|&u| u > ulo && u < uhi)
        .collect();
    extra.sort_by(f64::total_cmp);
    breaks.extend(extra);
    breaks.push(uhi);
    // Failures inside the angular sum surface as NaN and then as a panel
    // with infinite error, which the outer loop reports as non-convergence.
    let g = |u: f64| {
        let r = u.exp();
        match angular(f, r, inner_tol / (r * r), opts.min_theta, opts.max_theta) {
            Ok(v) => v * r * r,
            Err(_) => f64::NAN,
        }
    };
    integrate_with_breaks(g, &breaks, opts.gk())
}

/// `2π ∫ f(r) r dr` over `(r_in, r_out)` for a radial integrand.
pub fn radial_integrate<F>(f: F, r_in: f64, r_out: f64, opts: &AnnulusOptions) -> Result<QuadResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    if !(r_in > 0.0 && r_out > r_in && r_out.is_finite()) {
        return Err(Error::Domain(format!("radial range ({r_in}, {r_out})")));
    }
    let mut breaks = vec![r_in.ln()];
    let mut extra: Vec<f64> = opts
        .breaks
        .iter()
        .filter(|&&r| r > r_in && r < r_out)
        .map(|r| r.ln())
        .collect();
    extra.sort_by(f64::total_cmp);
    breaks.extend(extra);
    breaks.push(r_out.ln());
    let g = |u: f64| {
        let r = u.exp();
        2.0 * PI * f(r) * r * r
    };
    integrate_with_breaks(g, &breaks, opts.gk())
}

const CHUNK: f64 = 4.0;
const MAX_CHUNKS: usize = 60;

/// Integrates `g` over `u ∈ [u0, ±∞)` in chunks of fixed width until two
/// consecutive chunks contribute less than `tol`.
fn half_line<G: Fn(f64, f64) -> Result<QuadResult>>(g: G, u0: f64, dir: f64, tol: f64) -> Result<QuadResult> {
    let mut value = 0.0;
    let mut error = 0.0;
    let mut evaluations = 0;
    let mut small = 0;
    for k in 0..MAX_CHUNKS {
        let a = u0 + dir * CHUNK * k as f64;
        let b = a + dir * CHUNK;
        let r = if dir > 0.0 { g(a, b)? } else { g(b, a)? };
        value += r.value;
        error += r.error;
        evaluations += r.evaluations;
        if r.value.abs() < tol {
            small += 1;
            if small == 2 {
                return Ok(QuadResult {
                    value,
                    error: error + r.value.abs(),
                    evaluations,
                });
            }
        } else {
            small = 0;
        }
    }
    Err(Error::NonConvergence { error: f64::INFINITY, tol })
}

/// `∫∫_{ℝ²} f dx dy` for integrands bounded at the origin and decaying faster
/// than `|z|^{-2}`.
pub fn plane_integrate<F>(f: F, opts: &AnnulusOptions) -> Result<QuadResult>
where
    F: Fn(Complex64) -> f64 + Sync,
{
    let tol = opts.abs_tol;
    let chunk_opts = AnnulusOptions {
        abs_tol: 0.1 * tol,
        ..opts.clone()
    };
    let inner_tol = 0.01 * tol / CHUNK;
    let piece = |a: f64, b: f64| polar_in_u(&f, a, b, inner_tol, &chunk_opts);
    let outward = half_line(piece, 0.0, 1.0, 0.01 * tol)?;
    let inward = half_line(piece, 0.0, -1.0, 0.01 * tol)?;
    Ok(QuadResult {
        value: outward.value + inward.value,
        error: outward.error + inward.error,
        evaluations: outward.evaluations + inward.evaluations,
    })
}

/// `2π ∫_0^∞ f(r) r dr` for a radial integrand with the same decay assumptions
/// as [`plane_integrate`].
pub fn radial_plane_integrate<F>(f: F, opts: &AnnulusOptions) -> Result<QuadResult>
where
    F: Fn(f64) -> f64 + Sync,
{
    let tol = opts.abs_tol;
    let gk = GkOptions {
        abs_tol: 0.1 * tol,
        rel_tol: opts.rel_tol,
        max_intervals: opts.max_intervals,
        parallel: false,
    };
    let g = |u: f64| {
        let r = u.exp();
        2.0 * PI * f(r) * r * r
    };
    let piece = |a: f64, b: f64| integrate_with_breaks(g, &[a, b], gk);
    let outward = half_line(piece, 0.0, 1.0, 0.01 * tol)?;
    let inward = half_line(piece, 0.0, -1.0, 0.01 * tol)?;
    Ok(QuadResult {
        value: outward.value + inward.value,
        error: outward.error + inward.error,
        evaluations: outward.evaluations + inward.evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_annulus_area() {
        let r = annulus_integrate(|_| 1.0, 1.0, 2.0, &AnnulusOptions::default()).unwrap();
        assert!((r.value - 3.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn cusp_profile_against_antiderivative() {
        let f = |z: Complex64| {
            let r = z.norm();
            1.0 / (r * r * r.ln().powi(2))
        };
        let r = annulus_integrate(f, (-10f64).exp(), (-1f64).exp(), &AnnulusOptions::default()).unwrap();
        assert!((r.value - 2.0 * PI * 0.9).abs() < 1e-9);
    }

    #[test]
    fn plane_integral_of_node_density() {
        let f = |z: Complex64| {
            let r2 = z.norm_sqr();
            4.0 * r2 / (r2 * r2 + 1.0).powi(2) / PI
        };
        let r = plane_integrate(f, &AnnulusOptions::abs(1e-10)).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn non_radial_integrand() {
        // ∫_{1<r<2} x² = ∫ r³ cos² θ = π (2⁴ - 1)/4
        let r = annulus_integrate(|z| z.re * z.re, 1.0, 2.0, &AnnulusOptions::default()).unwrap();
        assert!((r.value - PI * 15.0 / 4.0).abs() < 1e-11);
    }
}
