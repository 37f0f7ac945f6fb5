//! Polynomial extrapolation to zero and small least-squares fits.

/// Neville extrapolation of `(x_i, y_i)` to `x = 0`.
///
/// Returns the full tableau diagonal: element `j` is the extrapolant using
/// the last `j + 1` points ending at the final sample.
pub fn neville_to_zero(xs: &[f64], ys: &[f64]) -> Vec<f64> {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut p = ys.to_vec();
    let mut diag = vec![p[n - 1]];
    for m in 1..n {
        for i in 0..n - m {
            let (xi, xj) = (xs[i], xs[i + m]);
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
        diag.push(p[n - m - 1]);
    }
    diag
}

/// Result of a polynomial extrapolation with a crude error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: f64,
    pub error: f64,
}

/// Extrapolate to `x = 0` using every point; error is the spread between the
/// two highest-order extrapolants.
pub fn extrapolate_to_zero(xs: &[f64], ys: &[f64]) -> Extrapolated {
    let diag = neville_to_zero(xs, ys);
    let n = diag.len();
    let value = diag[n - 1];
    let error = if n >= 2 {
        (diag[n - 1] - diag[n - 2]).abs()
    } else {
        f64::INFINITY
    };
    Extrapolated { value, error }
}

/// Least-squares fit of `y ≈ c0 + c1 x`; returns `(c0, c1, max |residual|)`.
pub fn affine_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let c1 = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let c0 = my - c1 * mx;
    let res = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| (y - c0 - c1 * x).abs())
        .fold(0.0, f64::max);
    (c0, c1, res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn neville_exact_for_polynomials() {
        let xs = [0.4, 0.2, 0.1, 0.05];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 - 2.0 * x + 5.0 * x * x * x).collect();
        let e = extrapolate_to_zero(&xs, &ys);
        assert!((e.value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn affine_fit_recovers_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 0.5 - 1.5 * x).collect();
        let (a, b, r) = affine_fit(&xs, &ys);
        assert!((a - 0.5).abs() < 1e-14 && (b + 1.5).abs() < 1e-14 && r < 1e-14);
    }
}
