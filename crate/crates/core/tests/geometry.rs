use cusped_spectra::geometry::*;
use cusped_spectra::Error;
use num_complex::Complex64;
use proptest::prelude::*;
use std::f64::consts::PI;

fn c(x: f64, y: f64) -> Complex64 {
    Complex64::new(x, y)
}

fn flat(r_out: f64) -> ChartMetric {
    ChartMetric::from_log_density(Annulus::new(0.0, r_out).unwrap(), MetricLabel::Custom("flat".into()), |_| 0.0)
}

#[test]
fn poincare_value() {
    let p = poincare_cusp(0.5).unwrap();
    let want = 1.0 / (0.1 * 10f64.ln()).powi(2);
    assert!((p.density(c(0.1, 0.0)) - want).abs() < 1e-12 * want);
    assert!((want - 18.861).abs() < 1e-3);
    assert!(poincare_cusp(1.0).is_err());
}

#[test]
fn poincare_curvature_is_minus_one() {
    let p = poincare_cusp(0.5).unwrap();
    for i in 0..40 {
        let r = 0.02 * (0.4f64 / 0.02).powf(i as f64 / 39.0);
        for j in 0..8 {
            let z = Complex64::from_polar(r, j as f64 * 0.7);
            let k = scalar_curvature(&p, z).unwrap();
            assert!((k + 1.0).abs() < 1e-5, "r={r} K={k}");
        }
    }
}

#[test]
fn cylinder_curvature_is_minus_one() {
    for t in [1e-2, 1e-4, 1e-8] {
        let chart = PlumbingChart::new(c(t, 0.0)).unwrap();
        let m = cylinder_metric(&chart, t, 1.0).unwrap();
        for i in 1..20 {
            let r = t.powf(i as f64 / 20.0);
            let k = scalar_curvature(&m, Complex64::from_polar(r, 1.3)).unwrap();
            assert!((k + 1.0).abs() < 1e-5, "t={t} r={r} K={k}");
        }
    }
}

#[test]
fn flat_curvature_is_zero() {
    let k = scalar_curvature(&flat(1.0), c(0.3, 0.2)).unwrap();
    assert!(k.abs() < 1e-9);
}

#[test]
fn stencil_must_fit() {
    let chart = PlumbingChart::new(c(1e-2, 0.0)).unwrap();
    let m = cylinder_metric(&chart, 0.1, 0.5).unwrap();
    assert!(matches!(scalar_curvature(&m, c(0.1001, 0.0)), Err(Error::Domain(_))));
}

#[test]
fn cylinder_symmetry_on_grid() {
    for t in [1e-2, 1e-4, 1e-8] {
        let tc = Complex64::from_polar(t, 0.4);
        let chart = PlumbingChart::new(tc).unwrap();
        let m = cylinder_metric(&chart, t, 1.0).unwrap();
        for i in 1..=64 {
            let r = t.powf(i as f64 / 65.0);
            for j in 0..64 {
                let z0 = Complex64::from_polar(r, 2.0 * PI * j as f64 / 64.0);
                let z1 = tc / z0;
                // λ(z₀)|dz₀|² = λ(z₁)|dz₁|² with |dz₁/dz₀| = |t|/|z₀|²
                let lhs = m.density(z0);
                let rhs = m.density(z1) * t * t / z0.norm_sqr().powi(2);
                assert!((lhs / rhs - 1.0).abs() < 1e-12, "t={t} r={r}");
            }
        }
    }
}

#[test]
fn cylinder_waist() {
    let t: f64 = 1e-4;
    let chart = PlumbingChart::new(c(t, 0.0)).unwrap();
    let m = cylinder_metric(&chart, t, 1.0).unwrap();
    let want = (PI / (t.sqrt() * t.ln())).powi(2);
    assert!((m.density(c(t.sqrt(), 0.0)) / want - 1.0).abs() < 1e-13);
}

#[test]
fn cylinder_domain_must_avoid_sine_zeros() {
    let chart = PlumbingChart::new(c(1e-2, 0.0)).unwrap();
    assert!(cylinder_metric(&chart, 1e-3, 0.5).is_err());
    assert!(cylinder_metric(&chart, 0.1, 1.5).is_err());
}

#[test]
fn cylinder_approaches_poincare_like_inverse_log_squared() {
    let p = poincare_cusp(0.5).unwrap();
    let mut cs = Vec::new();
    for t in [1e-3, 1e-6, 1e-9] {
        let chart = PlumbingChart::new(c(t, 0.0)).unwrap();
        let m = cylinder_metric(&chart, t, 1.0).unwrap();
        let sup = (0..200)
            .map(|i| 0.1 + 0.3 * i as f64 / 199.0)
            .map(|r| (m.density(c(r, 0.0)) / p.density(c(r, 0.0)) - 1.0).abs())
            .fold(0.0, f64::max);
        cs.push(sup * t.ln().powi(2));
    }
    // Leading Taylor coefficient (π² log² 0.1)/3 is approached from above.
    let lead = PI * PI * 10f64.ln().powi(2) / 3.0;
    assert!(cs.windows(2).all(|w| w[1] < w[0]));
    assert!(cs.iter().all(|&x| x > lead && x < 1.5 * lead), "{cs:?}");
    let at_zero = cylinder_metric(&PlumbingChart::new(c(0.0, 0.0)).unwrap(), 0.0, 1.0).unwrap();
    assert_eq!(at_zero.density(c(0.2, 0.1)), p.density(c(0.2, 0.1)));
}

#[test]
fn cutoff_profile_plateaus_and_smoothness() {
    let cut = CutoffProfile;
    assert_eq!(cut.nu0(0.5), 0.0);
    assert_eq!(cut.nu0(0.1), 0.0);
    assert_eq!(cut.nu0(0.75), 1.0);
    assert_eq!(cut.nu0(2.0), 1.0);
    assert!((cut.nu0(0.625) - 0.5).abs() < 1e-15);
    // Third derivative continuity at both ends: ν₀ - 0 = O(x⁴).
    let h = 1e-3;
    assert!(cut.nu0(0.5 + h) < 1e-8);
    assert!(1.0 - cut.nu0(0.75 - h) < 1e-8);
    let mut prev = 0.0;
    for i in 0..=1000 {
        let v = cut.nu0(0.5 + 0.25 * i as f64 / 1000.0);
        assert!(v >= prev);
        prev = v;
    }
}

#[test]
fn grafted_plateaus_and_continuity() {
    let t = c(1e-3, 0.0);
    let chart = PlumbingChart::new(t).unwrap();
    let base = ChartMetric::from_log_density(Annulus::new(1e-4, 1.0).unwrap(), MetricLabel::Custom("b".into()), |z| {
        (1.0 + z.norm_sqr()).ln()
    });
    let g = grafted_metric(&base, &chart, CutoffProfile).unwrap();
    let cyl = cylinder_metric(&chart, 1e-3, 1.0).unwrap();
    // ν = 1 where |z₀|² + |z₁|² < 1/2
    let z = c(0.3, 0.0);
    assert_eq!(g.log_density(z), cyl.log_density(z));
    // ν = 0 where |z₀|² + |z₁|² > 3/4
    let z = c(0.95, 0.0);
    assert_eq!(g.log_density(z), base.log_density(z));
    // log-convex combination
    let z = c(0.8, 0.0);
    let nu = CutoffProfile.nu(&chart, z);
    assert!(nu > 0.0 && nu < 1.0);
    let want = nu * cyl.log_density(z) + (1.0 - nu) * base.log_density(z);
    assert!((g.log_density(z) - want).abs() < 1e-14);
    // continuity across the plateau boundaries |z₀|² + |z₁|² ∈ {1/2, 3/4}
    for s in [0.5f64, 0.75] {
        let r = ((s + (s * s - 4e-6f64).sqrt()) / 2.0).sqrt();
        let d = (g.density(c(r * (1.0 + 1e-13), 0.0)) - g.density(c(r * (1.0 - 1e-13), 0.0))).abs();
        assert!(d < 1e-10, "s={s} jump {d}");
    }
}

#[test]
fn grafting_requires_covering_base() {
    let chart = PlumbingChart::new(c(1e-3, 0.0)).unwrap();
    let base = poincare_cusp(0.5).unwrap();
    assert!(matches!(grafted_metric(&base, &chart, CutoffProfile), Err(Error::Domain(_))));
}

#[test]
fn section33_examples() {
    let t = c(1e-3, 0.0);
    let chart = PlumbingChart::new(t).unwrap();
    let cut = CutoffProfile;
    let z0 = c(0.2, 0.1);
    let s = z0.norm_sqr() + (t / z0).norm_sqr();
    let ind = section33_squared_norm(Section33Kind::SimInd, &chart, cut, z0).unwrap();
    assert!((ind - 2.0 / s).abs() < 1e-14 * ind);
    // ν̃ = 1 here, so the tilde norm is trivial and kappa is the cylinder.
    assert_eq!(cut.nu_tilde(&chart, z0), 1.0);
    let sim = section33_squared_norm(Section33Kind::Sim, &chart, cut, z0).unwrap();
    assert_eq!(sim, 2.0);
    let kap = section33_squared_norm(Section33Kind::Kappa, &chart, cut, z0).unwrap();
    let lt = t.norm().ln();
    let want = 2.0 * lt * lt / (PI * PI) * (PI * z0.norm().ln() / lt).sin().powi(2);
    assert!((kap - want).abs() < 1e-13 * want);
    let km = section33_densities(Section33Kind::Kappa, &chart, cut).unwrap();
    let cyl = cylinder_metric(&chart, 1e-3, 1.0).unwrap();
    assert!((km.density(z0) / cyl.density(z0) - 1.0).abs() < 1e-13);
    // ν̃ = 0: all three agree
    let z0 = c(0.6, 0.0);
    assert_eq!(cut.nu_tilde(&chart, z0), 0.0);
    let v: Vec<f64> = [Section33Kind::SimInd, Section33Kind::Sim, Section33Kind::Kappa]
        .iter()
        .map(|&k| section33_squared_norm(k, &chart, cut, z0).unwrap())
        .collect();
    assert_eq!(v[0], v[1]);
    assert_eq!(v[0], v[2]);
    // the induced metric is |dz₀|² + |dz₁|² pulled back
    let ind_m = section33_densities(Section33Kind::SimInd, &chart, cut).unwrap();
    let want = 1.0 + 1e-6 / 0.6f64.powi(4);
    assert!((ind_m.density(z0) - want).abs() < 1e-14);
    assert!(section33_squared_norm(Section33Kind::Sim, &PlumbingChart::new(c(0.3, 0.0)).unwrap(), cut, z0).is_err());
}

#[test]
fn flatten_poincare() {
    let p = poincare_cusp(0.95).unwrap();
    let f = flatten(&p, CutoffProfile).unwrap();
    for r in [1e-9, 1e-3, 0.2, 0.49] {
        assert_eq!(f.density(c(r, 0.0)), 1.0);
    }
    for r in [0.76, 0.9] {
        assert_eq!(f.density(c(0.0, r)), p.density(c(0.0, r)));
    }
    for r in [0.5, 0.75] {
        let jump = (f.density(c(r + 1e-13, 0.0)) - f.density(c(r - 1e-13, 0.0))).abs();
        assert!(jump < 1e-10);
    }
    assert!(matches!(flatten(&flat(0.9), CutoffProfile), Err(Error::NotCuspType(_))));
}

#[test]
fn c1_matches_node_closed_form() {
    let data = NodeMetricData::new(1.0, c(0.0, 0.0), 1.0).unwrap();
    let t = c(0.01, 0.0);
    let z0 = c(0.3, 0.0);
    let got = c1_density(&|z| data.log_vertical_norm(t, z), z0);
    let closed = 4.0 * z0.norm_sqr() * t.norm_sqr() / (z0.norm_sqr().powi(2) + t.norm_sqr()).powi(2);
    // dz dz̄ / 2πi = -(1/π) dx dy
    assert!((got - (-closed / PI)).abs() < 1e-7 * closed, "{got} vs {}", -closed / PI);
    let data = NodeMetricData::new(2.0, c(0.3, -0.4), 1.5).unwrap();
    let t = Complex64::from_polar(0.02, 1.1);
    for z0 in [c(0.2, 0.1), c(-0.1, 0.3), c(0.5, -0.2)] {
        let got = c1_density(&|z| data.log_vertical_norm(t, z), z0);
        let closed = data.ddbar_log_vertical_norm(t, z0);
        assert!((got + closed / PI).abs() < 1e-6 * closed, "{z0}");
    }
    assert!(NodeMetricData::new(1.0, c(1.0, 0.0), 1.0).is_err());
}

#[test]
fn c1_of_poincare_is_hyperbolic_area_form() {
    let p = poincare_cusp(0.5).unwrap();
    let z = c(0.1, 0.05);
    let want = -p.density(z) / (2.0 * PI);
    assert!((c1_of_metric(&p, z).unwrap() / want - 1.0).abs() < 1e-7);
}

#[test]
fn c1_vanishes_for_harmonic_and_constant() {
    let w = c(0.5, 0.5);
    for z in [c(0.1, 0.2), c(-0.3, 0.1)] {
        assert!(c1_density(&|z: Complex64| (z - w).norm_sqr().ln(), z).abs() < 1e-6);
        assert!(c1_density(&|z: Complex64| (z * z * z).re + 3.0, z).abs() < 1e-6);
        assert_eq!(c1_density(&|_| 7.0, z), 0.0);
    }
}

#[test]
fn wolpert_scaling_examples() {
    let w = wolpert_scaling(&poincare_cusp(0.5).unwrap()).unwrap();
    assert!(w.log_a.abs() < 1e-10);
    assert!((w.wolpert_norm - 1.0).abs() < 1e-10);
    let a2 = ChartMetric::from_density(Annulus::new(0.0, 0.4).unwrap(), MetricLabel::Custom("a=2".into()), |z| {
        let r = z.norm();
        1.0 / (r * (r.ln() + 2f64.ln())).powi(2)
    });
    let w = wolpert_scaling(&a2).unwrap();
    assert!((w.log_a - 2f64.ln()).abs() < 1e-3, "{w:?}");
    let chart = PlumbingChart::new(c(0.0, 0.0)).unwrap();
    let g = grafted_metric(&flat(0.95), &chart, CutoffProfile).unwrap();
    assert!(wolpert_scaling(&g).unwrap().log_a.abs() < 1e-10);
    assert!(matches!(wolpert_scaling(&flat(0.9)), Err(Error::NotCuspType(_))));
}

#[test]
fn density_grid_csv() {
    let mut buf = Vec::new();
    write_density_grid(&poincare_cusp(0.5).unwrap(), &[0.1, 0.2], 4, &mut buf).unwrap();
    let s = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(lines[0], "r,theta,lambda");
    assert_eq!(lines.len(), 9);
    let lam: f64 = lines[1].split(',').nth(2).unwrap().parse().unwrap();
    assert!((lam - 18.861).abs() < 1e-3);
}

proptest! {
    #[test]
    fn poincare_is_rotation_invariant(r in 1e-6f64..0.9, th in 0.0f64..6.3) {
        let p = poincare_cusp(0.95).unwrap();
        let a = p.density(Complex64::from_polar(r, th));
        let b = p.density(c(r, 0.0));
        prop_assert!((a / b - 1.0).abs() < 1e-13);
    }

    #[test]
    fn cylinder_symmetry(lt in -18.0f64..-2.0, u in 0.02f64..0.98, th in 0.0f64..6.3, ph in 0.0f64..6.3) {
        let t = Complex64::from_polar(lt.exp(), ph);
        let chart = PlumbingChart::new(t).unwrap();
        let m = cylinder_metric(&chart, t.norm(), 1.0).unwrap();
        let z0 = Complex64::from_polar((u * lt).exp(), th);
        let lhs = m.log_density(z0);
        let rhs = m.log_density(t / z0) + 2.0 * (t.norm() / z0.norm_sqr()).ln();
        prop_assert!((lhs - rhs).abs() < 1e-11);
    }

    #[test]
    fn c1_is_linear(x in -0.4f64..0.4, y in 0.1f64..0.4, k in -3.0f64..3.0) {
        let f = |z: Complex64| (1.0 + z.norm_sqr()).ln();
        let g = |z: Complex64| (z.re * z.re * z.im).sin();
        let z = c(x, y);
        let sum = c1_density(&|z| f(z) + k * g(z), z);
        let parts = c1_density(&f, z) + k * c1_density(&g, z);
        prop_assert!((sum - parts).abs() < 1e-6);
    }
}
