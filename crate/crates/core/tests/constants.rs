use cusped_spectra::constants::*;
use proptest::prelude::*;
use std::f64::consts::PI;

/// Glaisher–Kinkelin constant.
const GLAISHER: f64 = 1.282_427_129_100_622_6;

/// `log A` by Euler–Maclaurin on `Σ k log k` in plain doubles with a
/// different truncation point.
fn log_glaisher_f64() -> f64 {
    let n = 10.0f64;
    let s: f64 = (2..=10).map(|k| k as f64 * (k as f64).ln()).sum();
    let tail = 1.0 / (720.0 * n.powi(2)) - 1.0 / (5040.0 * n.powi(4)) + 1.0 / (10080.0 * n.powi(6))
        - 1.0 / (9504.0 * n.powi(8));
    s - (n * n / 2.0 + n / 2.0 + 1.0 / 12.0) * n.ln() + n * n / 4.0 - tail
}

fn ln_fact(n: u64) -> f64 {
    (2..=n).map(|j| (j as f64).ln()).sum()
}

/// Second transcription of `c_k`, term by term.
fn c_k_oracle(k: u64) -> f64 {
    let zp = 1.0 / 12.0 - GLAISHER.ln();
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
    s += (1.0 / 3.0 + kf + kf * kf) * 2f64.ln();
    s += (2.0 * kf + 1.0) * l2p;
    s += 4.0 * zp;
    s -= 2.0 * (kf + 0.5).powi(2);
    s -= 4.0 * (1..k).map(ln_fact).sum::<f64>();
    s - 2.0 * ln_fact(k)
}

fn big_c_oracle(k: u64) -> f64 {
    if k == 0 {
        return -6.0 * PI.ln();
    }
    let kf = k as f64;
    -6.0 * (1.0 + kf) * 2f64.ln() - 6.0 * (1.0 + 2.0 * kf) * PI.ln() - 6.0 * ln_fact(2 * k)
}

#[test]
fn zeta_prime_against_glaisher() {
    let z = zeta_prime_minus_one();
    assert!((z - (1.0 / 12.0 - GLAISHER.ln())).abs() < 1e-13);
    assert!((z - (1.0 / 12.0 - log_glaisher_f64())).abs() < 1e-13);
    assert!(((-12.0 * z + 1.0).exp() - GLAISHER.powi(12)).abs() < 1e-12 * GLAISHER.powi(12));
    assert!(z < 0.0);
    assert!((z + 0.165_421_143_700_450_9).abs() < 1e-15);
}

#[test]
fn headline_constants() {
    let z = 1.0 / 12.0 - GLAISHER.ln();
    let l2p = (2.0 * PI).ln();
    assert!((big_c(0) + 6.0 * PI.ln()).abs() < 1e-12);
    assert!((big_c(0) + 6.868_379_315_096_4).abs() < 1e-12);
    assert!((small_c(0) - (4.0 * z - 0.5 + l2p)).abs() < 1e-12);
    assert!((bismut_const() - (24.0 * z - 6.0 * l2p)).abs() < 1e-12);
    assert!((bismut_const() - 12.0 * (2.0 * z - l2p / 2.0)).abs() < 1e-12);
    assert!(bismut_const().exp() > 0.0);
}

#[test]
fn tables_against_second_transcription() {
    for k in 0..=20u32 {
        let want = c_k_oracle(k as u64);
        assert!((small_c(k) - want).abs() < 1e-11 * (1.0 + want.abs()), "c_{k}");
        let want = big_c_oracle(k as u64);
        assert!((big_c(k) - want).abs() < 1e-12 * (1.0 + want.abs()), "C_{k}");
    }
    assert!((big_c(1) + 18.0 * 2f64.ln() + 18.0 * PI.ln()).abs() < 1e-12);
    assert!((big_c(2) + 18.0 * 2f64.ln() + 30.0 * PI.ln() + 6.0 * 24f64.ln()).abs() < 1e-12);
    for k in 0..=50 {
        assert!(small_c(k).is_finite() && big_c(k).is_finite());
    }
}

#[test]
fn e_const_relations() {
    let z = 1.0 / 12.0 - GLAISHER.ln();
    let want = 4.0 * z - (2.0 * PI).ln() + (1.0 + 6.0 * PI.ln()) / 6.0;
    assert!((e_const(0) - want).abs() < 1e-12);
    for k in 0..=10 {
        for k2 in 0..=10 {
            let d = e_const(k) - e_const(k2) - (big_c(k2) - big_c(k)) / 6.0;
            assert!(d.abs() < 1e-12 * (1.0 + big_c(k).abs()));
        }
    }
}

#[test]
fn b_and_e_examples() {
    assert_eq!(b_factor(3, SurfaceSignature::new(1, 0)), 1.0);
    let v = b_factor(0, SurfaceSignature::new(0, 3));
    assert!((v - (-small_c(0) / 2.0).exp()).abs() < 1e-15);
    assert!((e_factor(SurfaceSignature::new(0, 2)) - 1.0).abs() < 1e-15);
    assert!((e_factor(SurfaceSignature::new(1, 1)) - 2f64.powf(2.0 / 3.0)).abs() < 1e-15);
}

/// `B_k(g+m, 0) = B_k(g, m) B_k(1, 1)^m` and the `E` analogue for every
/// `k, g, m ≤ 20`, at relative error `1e-12`. Where `B` stays in range the
/// products are compared directly; otherwise in the log domain, where an
/// absolute error `δ` is a relative error `≈ δ` of the value.
#[test]
fn multiplicativity() {
    for k in 0..=20u32 {
        let b11 = b_factor(k, SurfaceSignature::new(1, 1));
        let lb11 = log_b_factor(k, SurfaceSignature::new(1, 1));
        for g in 0..=20u32 {
            for m in 0..=20u32 {
                let lhs = log_b_factor(k, SurfaceSignature::new(g + m, 0));
                let rhs = log_b_factor(k, SurfaceSignature::new(g, m)) + m as f64 * lb11;
                assert!((lhs - rhs).abs() <= 1e-12, "k={k} g={g} m={m}");
                if lhs.abs() < 600.0 {
                    let l = b_factor(k, SurfaceSignature::new(g + m, 0));
                    let r = b_factor(k, SurfaceSignature::new(g, m)) * b11.powi(m as i32);
                    assert!((l / r - 1.0).abs() <= 1e-12, "k={k} g={g} m={m}");
                }
            }
        }
    }
    let e11 = e_factor(SurfaceSignature::new(1, 1));
    for g in 0..=20u32 {
        for m in 0..=20u32 {
            let l = e_factor(SurfaceSignature::new(g + m, 0));
            let r = e_factor(SurfaceSignature::new(g, m)) * e11.powi(m as i32);
            assert!((l / r - 1.0).abs() <= 1e-12);
        }
    }
}

#[test]
fn repeated_calls_are_identical() {
    for k in [0, 3, 17] {
        assert_eq!(big_c(k).to_bits(), big_c(k).to_bits());
        assert_eq!(small_c(k).to_bits(), small_c(k).to_bits());
    }
}

proptest! {
    #[test]
    fn log_b_is_linear_in_euler_characteristic(k in 0u32..30, g in 0u32..50, m in 0u32..50) {
        let s = SurfaceSignature::new(g, m);
        let want = s.euler_characteristic() as f64 * small_c(k) / 2.0;
        prop_assert!((log_b_factor(k, s) - want).abs() <= 1e-12 * (1.0 + want.abs()));
    }

    #[test]
    fn stability_matches_euler_characteristic(g in 0u32..10, m in 0u32..10) {
        let s = SurfaceSignature::new(g, m);
        prop_assert_eq!(s.is_stable(), 2 * g as i64 - 2 + m as i64 > 0);
    }
}
