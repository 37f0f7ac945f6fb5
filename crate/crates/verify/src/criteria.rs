use crate::oracles::{self, FACTORS, FACTOR_SUPPORT};
use crate::{Criterion, Mode, Recorder};
use cusped_spectra::constants::{self, SurfaceSignature, TwistPower};
use cusped_spectra::geometry::*;
use cusped_spectra::hyperbolic::{classify_trace, enumerate_by_trace, Classification, GroupPreset, LengthSpectrum};
use cusped_spectra::quadrature::*;
use cusped_spectra::zeta::{mellin_zeta, selberg_log_z, zeta_prime_zero_det, EigenvalueList, DEFAULT_K_MAX};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

pub static CRITERIA: [Criterion; 11] = [
    Criterion { id: 1, title: "constants", time_limit: 1.0, run: constants_suite },
    Criterion { id: 2, title: "multiplicativity", time_limit: 1.0, run: multiplicativity },
    Criterion { id: 3, title: "double integral identity", time_limit: 120.0, run: double_integral },
    Criterion { id: 4, title: "radial integrals", time_limit: 1.0, run: radial_integrals },
    Criterion { id: 5, title: "regularized Green integral", time_limit: 30.0, run: regularized_green },
    Criterion { id: 6, title: "node limit", time_limit: 300.0, run: node_limit },
    Criterion { id: 7, title: "geometry", time_limit: 60.0, run: geometry_suite },
    Criterion { id: 8, title: "length spectrum", time_limit: 60.0, run: length_spectrum },
    Criterion { id: 9, title: "Selberg zeta", time_limit: 30.0, run: selberg },
    Criterion { id: 10, title: "spectral zeta", time_limit: 30.0, run: spectral },
    Criterion { id: 11, title: "anomaly chart", time_limit: 120.0, run: anomaly },
];

fn c(x: f64, y: f64) -> Complex64 {
    Complex64::new(x, y)
}

fn constants_suite(r: &mut Recorder, _: Mode) {
    let z = constants::zeta_prime_minus_one();
    r.check("zeta'(-1) vs log Glaisher", z, 1.0 / 12.0 - oracles::log_glaisher(), 1e-13);
    r.check("zeta'(-1) vs Glaisher literal", z, oracles::zeta_prime_minus_one(), 1e-13);
    r.check("C_0", constants::big_c(0), oracles::big_c(0), 1e-12);
    r.check("c_0", constants::small_c(0), oracles::small_c(0), 1e-12);
    r.check("bismut", constants::bismut_const(), oracles::bismut(), 1e-12);
}

/// Compared in the log domain: `B_k` overflows `f64` for large `|χ|`, and an
/// absolute error `δ` in `log B` is a relative error `e^δ - 1 ≈ δ` in `B`.
fn multiplicativity(r: &mut Recorder, _: Mode) {
    let mut worst_b: f64 = 0.0;
    let mut worst_e: f64 = 0.0;
    let le11 = constants::e_factor(SurfaceSignature::new(1, 1)).ln();
    for k in 0..=20u32 {
        let lb11 = constants::log_b_factor(k, SurfaceSignature::new(1, 1));
        for g in 0..=20u32 {
            for m in 0..=20u32 {
                let lhs = constants::log_b_factor(k, SurfaceSignature::new(g + m, 0));
                let rhs = constants::log_b_factor(k, SurfaceSignature::new(g, m)) + m as f64 * lb11;
                worst_b = worst_b.max((lhs - rhs).exp_m1().abs());
                if k == 0 {
                    let lhs = constants::e_factor(SurfaceSignature::new(g + m, 0)).ln();
                    let rhs = constants::e_factor(SurfaceSignature::new(g, m)).ln() + m as f64 * le11;
                    worst_e = worst_e.max((lhs - rhs).exp_m1().abs());
                }
            }
        }
    }
    r.check("B_k(g+m,0) / (B_k(g,m) B_k(1,1)^m) - 1", worst_b, 0.0, 1e-12);
    r.check("E(g+m,0) / (E(g,m) E(1,1)^m) - 1", worst_e, 0.0, 1e-12);
}

fn double_integral(r: &mut Recorder, mode: Mode) {
    if let Some(d) = r.try_with("(1,0,1)", double_integral_identity(1.0, 0.0, 1.0)) {
        r.check("(1,0,1)", d.numeric, 0.0, 1e-3);
    }
    let count = if mode == Mode::Fast { 5 } else { 20 };
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut done = 0;
    while done < count {
        let (a, b, c): (f64, f64, f64) = (rng.gen_range(0.1..10.0), rng.gen_range(0.1..10.0), rng.gen_range(0.1..10.0));
        if a * c - b * b <= 0.0 {
            continue;
        }
        let name = format!("({a:.4},{b:.4},{c:.4})");
        if let Some(d) = r.try_with(&name, double_integral_identity(a, b, c)) {
            r.check(name, d.numeric, 4.0 * PI * (a * c - b * b).ln(), 1e-3);
        }
        done += 1;
    }
}

fn radial_integrals(r: &mut Recorder, _: Mode) {
    if let Some((a, b)) = r.try_with("radial", lim_log_diverg_integrals(1e-10)) {
        r.check("∫ 4|z|²/(|z|⁴+1)² (log r²)", a, -2.0, 1e-6);
        r.check("∫ 4/(|z|⁴+1)² (log r²)", b, -2.0, 1e-6);
    }
}

fn regularized_green(r: &mut Recorder, _: Mode) {
    let cut = CutoffProfile;
    let chart = PlumbingChart::new(c(0.0, 0.0)).unwrap();
    let log_mu = move |z: Complex64| {
        let nt = cut.nu_tilde(&chart, z);
        let r = z.norm();
        let l = r.ln();
        ((1.0 - nt) + nt / (r * r * l * l)).ln()
    };
    let f = move |z: Complex64| -z.norm().ln() * c1_density(&log_mu, z);
    let disc = CuspRegion { center: c(0.0, 0.0), radius: 0.5 };
    let s = RegIntegralSchedule::default_decades();
    if let Some(res) = r.try_with("regularized", regularized_integral(f, &[disc], &s)) {
        r.check("finite part", res.finite_part, 1.0, 1e-3);
        let worst = res
            .per_epsilon
            .iter()
            .map(|(e, raw)| (raw - (1.0 - e.ln().abs().ln())).abs())
            .fold(0.0, f64::max);
        r.check("profile vs 1 - log|log ε|", worst, 0.0, 1e-3);
    }
}

fn node_run(r: &mut Recorder, name: &str, a: f64, b: Complex64, cc: f64) -> Option<f64> {
    let d = r.try_with(name, NodeMetricData::new(a, b, cc))?;
    let rep = r.try_with(name, node_limit_check(&d, &NODE_T_SCHEDULE, &NODE_EPS_SCHEDULE))?;
    Some(rep.limit)
}

fn node_limit(r: &mut Recorder, mode: Mode) {
    if let Some(v) = node_run(r, "(2,0,1)", 2.0, c(0.0, 0.0), 1.0) {
        r.check("(2,0,1)", v, 2f64.ln(), 1e-3);
    }
    let base = node_run(r, "(1,0.5,1)", 1.0, c(0.5, 0.0), 1.0);
    if let Some(v) = base {
        r.check("(1,0.5,1)", v, 0.75f64.ln(), 1e-3);
    }
    let phases: &[f64] = if mode == Mode::Fast { &[1.0] } else { &[0.3, 1.0, 2.5, -2.0] };
    for &ph in phases {
        let name = format!("(1, 0.5 exp({ph} i), 1) phase invariance");
        if let (Some(b), Some(v)) = (base, node_run(r, &name, 1.0, Complex64::from_polar(0.5, ph), 1.0)) {
            r.check(name, v, b, 1e-6);
        }
    }
}

fn geometry_suite(r: &mut Recorder, _: Mode) {
    let Some(p) = r.try_with("poincare", poincare_cusp(0.5)) else { return };
    let mut worst: f64 = 0.0;
    for i in 0..40 {
        let rad = 0.02 * (0.4f64 / 0.02).powf(i as f64 / 39.0);
        for j in 0..8 {
            if let Some(k) = r.try_with("curvature", scalar_curvature(&p, Complex64::from_polar(rad, j as f64 * 0.7))) {
                worst = worst.max((k + 1.0).abs());
            }
        }
    }
    r.check("Poincaré curvature + 1", worst, 0.0, 1e-5);

    let mut worst_k: f64 = 0.0;
    let mut worst_sym: f64 = 0.0;
    for t in [1e-2, 1e-4, 1e-8] {
        let tc = Complex64::from_polar(t, 0.4);
        let Some(chart) = r.try_with("chart", PlumbingChart::new(tc)) else { return };
        let Some(m) = r.try_with("cylinder", cylinder_metric(&chart, t, 1.0)) else { return };
        for i in 1..20 {
            let z0 = Complex64::from_polar(t.powf(i as f64 / 20.0), 1.3);
            if let Some(k) = r.try_with("curvature", scalar_curvature(&m, z0)) {
                worst_k = worst_k.max((k + 1.0).abs());
            }
        }
        for i in 1..=64 {
            for j in 0..64 {
                let z0 = Complex64::from_polar(t.powf(i as f64 / 65.0), 2.0 * PI * j as f64 / 64.0);
                let lhs = m.density(z0);
                let rhs = m.density(tc / z0) * t * t / z0.norm_sqr().powi(2);
                worst_sym = worst_sym.max((lhs / rhs - 1.0).abs());
            }
        }
    }
    r.check("cylinder curvature + 1", worst_k, 0.0, 1e-5);
    r.check("cylinder symmetry z0 <-> t/z0", worst_sym, 0.0, 1e-12);

    // sup |λ_cyl/λ_P - 1| · log²|t| on 0.1 ≤ |z| ≤ 0.4
    let mut cs = Vec::new();
    for t in [1e-3, 1e-6, 1e-9] {
        let chart = PlumbingChart::new(c(t, 0.0)).unwrap();
        let Some(m) = r.try_with("cylinder", cylinder_metric(&chart, t, 1.0)) else { return };
        let sup = (0..200)
            .map(|i| 0.1 + 0.3 * i as f64 / 199.0)
            .map(|x| (m.density(c(x, 0.0)) / oracles::poincare(c(x, 0.0)) - 1.0).abs())
            .fold(0.0, f64::max);
        cs.push(sup * t.ln().powi(2));
    }
    let (lo, hi) = cs.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    r.check("cylinder→Poincaré C spread (max/min)", hi / lo, 1.0, 0.5);

    let a2 = ChartMetric::from_density(Annulus::new(0.0, 0.4).unwrap(), MetricLabel::Custom("a=2".into()), |z| {
        let x = z.norm();
        1.0 / (x * (x.ln() + 2f64.ln())).powi(2)
    });
    if let Some(w) = r.try_with("wolpert", wolpert_scaling(&a2)) {
        r.check("Wolpert scaling log a", w.log_a, 2f64.ln(), 1e-3);
    }
}

fn counts_by_trace(s: &LengthSpectrum) -> BTreeMap<i64, usize> {
    let mut out = BTreeMap::new();
    for cl in &s.classes {
        *out.entry(cl.trace.round() as i64).or_insert(0) += cl.multiplicity as usize;
    }
    out
}

fn length_spectrum(r: &mut Recorder, _: Mode) {
    let l = 8.0;
    let Some(s) = r.try_with("enumerate", enumerate_by_trace(GroupPreset::ThricePuncturedSphere, l)) else { return };
    let systole = s.systole().unwrap_or(f64::NAN);
    r.check("systole", systole, 2.0 * 3f64.acosh(), 1e-12);
    r.require("spectrum certified complete", s.complete);
    let max_trace = (2.0 * (l / 2.0).cosh()).floor() as i64;
    let oracle = oracles::gamma2_class_counts(max_trace);
    let got = counts_by_trace(&s);
    let mismatched = oracle
        .keys()
        .chain(got.keys())
        .filter(|t| oracle.get(t) != got.get(t))
        .count();
    r.check("traces with class count ≠ oracle", mismatched as f64, 0.0, 0.0);
    r.check(
        "class count up to length 8",
        s.class_count() as f64,
        oracle.values().sum::<usize>() as f64,
        0.0,
    );
    let parabolic = s
        .classes
        .iter()
        .filter(|cl| classify_trace(cl.trace, false) != Classification::Hyperbolic)
        .count();
    r.check("non-hyperbolic classes", parabolic as f64, 0.0, 0.0);
}

fn selberg(r: &mut Recorder, _: Mode) {
    let Some(s10) = r.try_with("enumerate", enumerate_by_trace(GroupPreset::ThricePuncturedSphere, 10.0)) else {
        return;
    };
    let s8 = s10.truncated(8.0);
    for s in [2.0, 3.0] {
        let (Some(a), Some(b)) = (
            r.try_with("Z_8", selberg_log_z(&s8, s, DEFAULT_K_MAX)),
            r.try_with("Z_10", selberg_log_z(&s10, s, DEFAULT_K_MAX)),
        ) else {
            return;
        };
        let lengths: Vec<(f64, u32)> = s10.classes.iter().map(|cl| (cl.length, cl.multiplicity)).collect();
        r.check(format!("log Z_10({s}) vs direct product"), b.log_value, oracles::selberg_log_z(&lengths, s), 1e-12);
        r.check(format!("Z_8({s}) vs Z_10({s})"), a.value, b.value, 1e-6);
        r.check(format!("tail bound at s={s} covers |Δ log Z|"), a.log_value - b.log_value, 0.0, a.tail_bound);
    }
    let empty = LengthSpectrum::empty(8.0, "empty", true);
    for s in [1.5, 2.0, 3.0] {
        if let Some(z) = r.try_with("empty", selberg_log_z(&empty, s, DEFAULT_K_MAX)) {
            r.check(format!("empty spectrum Z({s})"), z.value, 1.0, 0.0);
        }
    }
}

fn spectral(r: &mut Recorder, _: Mode) {
    let circle = EigenvalueList::flat_circle(2000);
    let Some(d) = r.try_with("circle", zeta_prime_zero_det(&circle)) else { return };
    r.check("circle det'", d.log_det.exp(), 4.0 * PI * PI, 1e-8);
    if let Some(t) = r.try_with("torus", zeta_prime_zero_det(&EigenvalueList::flat_square_torus(60))) {
        r.check("square torus log det' vs eta", t.log_det, oracles::square_torus_log_det(), 1e-6);
    }
    let Some(z0) = r.try_with("zeta(0)", mellin_zeta(&circle, 0.0)) else { return };
    for cc in [0.25, 3.7, 10.0] {
        let Some(sc) = circle.scaled(cc).ok() else { continue };
        if let Some(v) = r.try_with("scaled", zeta_prime_zero_det(&sc)) {
            r.check(
                format!("zeta'(0) after scaling by {cc}"),
                v.zeta_prime_0,
                d.zeta_prime_0 - z0 * cc.ln(),
                1e-9,
            );
        }
    }
}

fn anomaly(r: &mut Recorder, _: Mode) {
    let Some(p) = r.try_with("poincare", poincare_cusp(0.5)) else { return };
    let domain = Annulus::new(FACTOR_SUPPORT.0, FACTOR_SUPPORT.1).unwrap();
    let xi: ChartFunction = Arc::new(|z: Complex64| 0.3 * z.re - z.norm_sqr());
    for n in [0, -1, -3] {
        let res = anomaly_rhs_chart(
            &p,
            &p,
            xi.clone(),
            xi.clone(),
            TwistPower::new(n).unwrap(),
            domain,
            &AnnulusOptions::default(),
        );
        if let Some(v) = r.try_with("equal inputs", res) {
            r.check(format!("equal inputs, n={n}"), v.value, 0.0, 1e-10);
        }
    }
    let zero: ChartFunction = Arc::new(|_| 0.0);
    for (i, f) in FACTORS.into_iter().enumerate() {
        let q = p.conformal_change(move |z| f.value(z));
        let res = anomaly_rhs_chart(
            &p,
            &q,
            zero.clone(),
            zero.clone(),
            TwistPower::new(0).unwrap(),
            domain,
            &AnnulusOptions::abs(1e-9),
        );
        if let Some(v) = r.try_with("anomaly", res) {
            r.check(format!("factor {} vs Green identity", i + 1), v.value, oracles::green_anomaly(f, oracles::poincare), 1e-4);
        }
    }
}
