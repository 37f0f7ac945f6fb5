use super::ChartMetric;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;
use std::io::Write;

/// Writes `r,theta,lambda` rows for each radius and `n_theta` equally spaced angles.
pub fn write_density_grid<W: Write>(metric: &ChartMetric, radii: &[f64], n_theta: usize, mut out: W) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidArgument(format!("write failed: {e}"));
    writeln!(out, "r,theta,lambda").map_err(io)?;
    for &r in radii {
        for j in 0..n_theta {
            let th = 2.0 * PI * j as f64 / n_theta as f64;
            let z = Complex64::from_polar(r, th);
            let lam = if metric.domain().contains(z) {
                metric.density(z)
            } else {
                f64::NAN
            };
            writeln!(out, "{r:.16e},{th:.16e},{lam:.16e}").map_err(io)?;
        }
    }
    Ok(())
}
