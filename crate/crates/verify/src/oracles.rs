//! Reference values computed without the library.

use num_complex::Complex64;
use std::collections::BTreeMap;
use std::f64::consts::PI;

/// Glaisher–Kinkelin constant.
pub const GLAISHER: f64 = 1.282_427_129_100_622_6;

/// `log A` from Euler–Maclaurin on `Σ_{k≤10} k log k`.
pub fn log_glaisher() -> f64 {
    let n = 10.0f64;
    let s: f64 = (2..=10).map(|k| k as f64 * (k as f64).ln()).sum();
    let tail = 1.0 / (720.0 * n.powi(2)) - 1.0 / (5040.0 * n.powi(4)) + 1.0 / (10080.0 * n.powi(6))
        - 1.0 / (9504.0 * n.powi(8));
    s - (n * n / 2.0 + n / 2.0 + 1.0 / 12.0) * n.ln() + n * n / 4.0 - tail
}

pub fn zeta_prime_minus_one() -> f64 {
    1.0 / 12.0 - GLAISHER.ln()
}

pub fn ln_fact(n: u64) -> f64 {
    (2..=n).map(|j| (j as f64).ln()).sum()
}

pub fn big_c(k: u64) -> f64 {
    if k == 0 {
        return -6.0 * PI.ln();
    }
    let kf = k as f64;
    -6.0 * (1.0 + kf) * 2f64.ln() - 6.0 * (1.0 + 2.0 * kf) * PI.ln() - 6.0 * ln_fact(2 * k)
}

pub fn small_c(k: u64) -> f64 {
    let zp = zeta_prime_minus_one();
    let l2p = (2.0 * PI).ln();
    if k == 0 {
        return 4.0 * zp - 0.5 + l2p;
    }
    let kf = k as f64;
    let mut s = 0.0;
    for l in 0..k {
        let lf = l as f64;
        s += (2.0 * kf - 2.0 * lf - 1.0) * ((2.0 * kf + 2.0 * kf * lf - lf * lf - lf).ln() - 2f64.ln());
    }
    s += (1.0 / 3.0 + kf + kf * kf) * 2f64.ln() + (2.0 * kf + 1.0) * l2p + 4.0 * zp;
    s -= 2.0 * (kf + 0.5).powi(2);
    s -= 4.0 * (1..k).map(ln_fact).sum::<f64>();
    s - 2.0 * ln_fact(k)
}

pub fn bismut() -> f64 {
    24.0 * zeta_prime_minus_one() - 6.0 * (2.0 * PI).ln()
}

/// `log det' Δ` on `R²/Z²` as `log(4π² |η(i)|⁴)` with the `q`-product for `η`.
pub fn square_torus_log_det() -> f64 {
    let q = (-2.0 * PI).exp();
    let mut log_eta = -PI / 12.0;
    let mut qn = q;
    while qn > 1e-30 {
        log_eta += (-qn).ln_1p();
        qn *= q;
    }
    (4.0 * PI * PI).ln() + 4.0 * log_eta
}

/// `log Z(s)` summed directly over a list of `(length, multiplicity)`.
pub fn selberg_log_z(lengths: &[(f64, u32)], s: f64) -> f64 {
    let mut acc = 0.0;
    for &(l, m) in lengths {
        let mut k = 0.0;
        loop {
            let x = (-(s + k) * l).exp();
            if x < 1e-20 {
                break;
            }
            acc += 2.0 * m as f64 * (-x).ln_1p();
            k += 1.0;
        }
    }
    acc
}

type M = [i64; 4];

fn mul(x: &M, y: &M) -> M {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

// letters 0 = A, 1 = A⁻¹, 2 = B, 3 = B⁻¹ with A = [1 2; 0 1], B = [1 0; 2 1]
const GENS: [M; 4] = [[1, 2, 0, 1], [1, -2, 0, 1], [1, 0, 2, 1], [1, 0, -2, 1]];

fn inv(l: u8) -> u8 {
    l ^ 1
}

fn eval(w: &[u8]) -> M {
    w.iter().fold([1, 0, 0, 1], |m, &l| mul(&m, &GENS[l as usize]))
}

/// Cyclically reduced word for `±m ∈ Γ(2)` via the Euclidean algorithm.
fn to_word(m: M) -> Vec<u8> {
    let mut cur = if m[0].rem_euclid(4) == 1 { m } else { m.map(|x| -x) };
    let mut out = Vec::new();
    let push = |out: &mut Vec<u8>, pos: u8, k: i64| {
        for _ in 0..k.abs() {
            out.push(if k > 0 { pos } else { pos + 1 });
        }
    };
    while cur[2] != 0 {
        if cur[0].abs() > cur[2].abs() {
            let k = (cur[0] as f64 / (2 * cur[2]) as f64).round() as i64;
            cur = [cur[0] - 2 * k * cur[2], cur[1] - 2 * k * cur[3], cur[2], cur[3]];
            push(&mut out, 0, k);
        } else {
            let k = (cur[2] as f64 / (2 * cur[0]) as f64).round() as i64;
            cur = [cur[0], cur[1], cur[2] - 2 * k * cur[0], cur[3] - 2 * k * cur[1]];
            push(&mut out, 2, k);
        }
    }
    push(&mut out, 0, cur[1] / 2);
    let mut red: Vec<u8> = Vec::new();
    for l in out {
        if red.last() == Some(&inv(l)) {
            red.pop();
        } else {
            red.push(l);
        }
    }
    while red.len() >= 2 && red[0] == inv(red[red.len() - 1]) {
        red.pop();
        red.remove(0);
    }
    red
}

fn same_class(u: &[u8], v: &[u8]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let vi: Vec<u8> = v.iter().rev().map(|&l| inv(l)).collect();
    (0..u.len()).any(|s| {
        let r: Vec<u8> = u[s..].iter().chain(&u[..s]).copied().collect();
        r == v || r == vi
    })
}

fn is_proper_power(w: &[u8]) -> bool {
    let n = w.len();
    (1..n).any(|d| n.is_multiple_of(d) && (0..n).all(|i| w[i] == w[(i + d) % n]))
}

/// Primitive unoriented hyperbolic classes of `Γ(2)` counted by `|trace|`.
///
/// Every hyperbolic class of `PSL(2, Z)` has a representative with positive
/// entries; the `Γ(2)` classes inside it are its conjugates by six coset
/// representatives, deduplicated as cyclic words up to inversion.
pub fn gamma2_class_counts(max_trace: i64) -> BTreeMap<i64, usize> {
    let cosets: [M; 6] = [[1, 0, 0, 1], [1, 1, 0, 1], [1, 0, 1, 1], [2, 1, 1, 1], [1, 1, 1, 2], [0, -1, 1, 0]];
    let inverse = |g: &M| [g[3], -g[1], -g[2], g[0]];
    let mut out = BTreeMap::new();
    for t in 3..=max_trace {
        let mut reps: Vec<Vec<u8>> = Vec::new();
        for a in 1..t {
            let d = t - a;
            let bc = a * d - 1;
            for b in (2..=bc).step_by(2) {
                if bc % b != 0 || (bc / b) % 2 != 0 {
                    continue;
                }
                for g in &cosets {
                    let w = to_word(mul(&mul(g, &[a, b, bc / b, d]), &inverse(g)));
                    let back = eval(&w);
                    assert_eq!((back[0] + back[3]).abs(), t);
                    if !is_proper_power(&w) && !reps.iter().any(|r| same_class(r, &w)) {
                        reps.push(w);
                    }
                }
            }
        }
        if !reps.is_empty() {
            out.insert(t, reps.len());
        }
    }
    out
}

/// Smooth bump supported in `a < r < b` with peak 1, and its radial derivative.
pub fn bump(r: f64, a: f64, b: f64) -> (f64, f64) {
    if r <= a || r >= b {
        return (0.0, 0.0);
    }
    let s = (2.0 * r - a - b) / (b - a);
    let q = 1.0 - s * s;
    let v = (1.0 - 1.0 / q).exp();
    (v, v * (-2.0 * s / (q * q)) * 2.0 / (b - a))
}

/// Compactly supported conformal factor `φ = A β(r) (1 + k cos mθ)`.
#[derive(Clone, Copy, Debug)]
pub struct Factor {
    pub amp: f64,
    pub k: f64,
    pub m: f64,
}

pub const FACTOR_SUPPORT: (f64, f64) = (0.05, 0.3);

pub const FACTORS: [Factor; 3] = [
    Factor { amp: 0.3, k: 0.0, m: 0.0 },
    Factor { amp: 0.2, k: 0.5, m: 1.0 },
    Factor { amp: -0.4, k: 0.8, m: 3.0 },
];

impl Factor {
    pub fn value(&self, z: Complex64) -> f64 {
        let (b, _) = bump(z.norm(), FACTOR_SUPPORT.0, FACTOR_SUPPORT.1);
        self.amp * b * (1.0 + self.k * (self.m * z.arg()).cos())
    }

    pub fn grad_sq(&self, z: Complex64) -> f64 {
        let r = z.norm();
        let th = z.arg();
        let (b, db) = bump(r, FACTOR_SUPPORT.0, FACTOR_SUPPORT.1);
        let g = 1.0 + self.k * (self.m * th).cos();
        let dg = -self.k * self.m * (self.m * th).sin();
        self.amp * self.amp * (db * db * g * g + b * b * dg * dg / (r * r))
    }
}

/// Polar tensor-product Gauss–Legendre rule on `a < r < b`.
pub fn polar_integral<F: Fn(Complex64) -> f64>(f: F, a: f64, b: f64, n_r: usize, n_theta: usize) -> f64 {
    let (x, w) = gauss_legendre(n_r);
    let mut acc = 0.0;
    for i in 0..n_r {
        let r = 0.5 * (b - a) * x[i] + 0.5 * (a + b);
        let mut ring = 0.0;
        for j in 0..n_theta {
            ring += f(Complex64::from_polar(r, 2.0 * PI * j as f64 / n_theta as f64));
        }
        acc += w[i] * r * ring * 2.0 * PI / n_theta as f64;
    }
    acc * 0.5 * (b - a)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton on `P_n`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        loop {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                let (mut p0, mut p1) = (1.0, z);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                let dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
                x[i] = z;
                w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
                break;
            }
        }
    }
    (x, w)
}

/// `(1/6π)∫ φ λ − (1/12π)∫ |∇φ|²`: the anomaly of `log det' Δ` under
/// `λ → e^{φ} λ` for compactly supported `φ`.
pub fn green_anomaly(f: Factor, density: impl Fn(Complex64) -> f64) -> f64 {
    let (a, b) = FACTOR_SUPPORT;
    let pl = polar_integral(|z| f.value(z) * density(z), a, b, 400, 256);
    let grad = polar_integral(|z| f.grad_sq(z), a, b, 400, 256);
    pl / (6.0 * PI) - grad / (12.0 * PI)
}

/// Poincaré cusp density `1 / (|z| log|z|)²`.
pub fn poincare(z: Complex64) -> f64 {
    let r = z.norm();
    1.0 / (r * r.ln()).powi(2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(12);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(10)).sum();
        assert!((s - 2.0 / 11.0).abs() < 1e-14);
    }

    #[test]
    fn glaisher_two_ways() {
        assert!((log_glaisher() - GLAISHER.ln()).abs() < 1e-14);
    }

    #[test]
    fn eta_and_gamma_agree() {
        let g = 3.625_609_908_221_908_3f64;
        let via_gamma = (2.0 * PI).ln() + 2.0 * (g * g / (2.0 * PI * 2f64.sqrt())).ln();
        assert!((square_torus_log_det() - via_gamma).abs() < 1e-13);
    }
}
