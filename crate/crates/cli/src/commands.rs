use crate::report::RunReport;
use crate::{arg_error, CliError, EigenList, KRange, Model, RegExample, ZetaCommand};
use cusped_spectra::constants::{self, SurfaceSignature, TwistPower};
use cusped_spectra::geometry::*;
use cusped_spectra::hyperbolic::{enumerate_by_trace, enumerate_length_spectrum, GroupPreset, LengthSpectrum};
use cusped_spectra::quadrature::*;
use cusped_spectra::torsion::{log_quillen, restriction_constant_check, tz_torsion, TorsionRequest, ZetaInput};
use cusped_spectra::zeta::{
    mellin_zeta, selberg_log_z, selberg_zprime_at_1, zeta_prime_zero_det, EigenvalueList, DEFAULT_K_MAX,
};
use cusped_spectra_verify::{oracles, Mode};
use num_complex::Complex64;
use serde_json::json;
use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

pub struct Ctx {
    pub tol: Option<f64>,
    pub schedule: Option<Vec<f64>>,
}

impl Ctx {
    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

fn csv_file(path: &Path) -> Result<BufWriter<File>, CliError> {
    Ok(BufWriter::new(File::create(path)?))
}

pub fn constants(ctx: &Ctx, KRange(lo, hi): KRange, csv: Option<&Path>) -> Result<RunReport, CliError> {
    let mut r = RunReport::new("constants");
    r.input("k", json!([lo, hi]));
    let rows: Vec<_> = (lo..=hi)
        .map(|k| json!({"k": k, "C_k": constants::big_c(k), "c_k": constants::small_c(k), "E_k": constants::e_const(k)}))
        .collect();
    if let Some(p) = csv {
        let mut f = csv_file(p)?;
        writeln!(f, "k,C_k,c_k,E_k")?;
        for k in lo..=hi {
            writeln!(
                f,
                "{k},{:.17e},{:.17e},{:.17e}",
                constants::big_c(k),
                constants::small_c(k),
                constants::e_const(k)
            )?;
        }
        f.flush()?;
        r.input("csv", p.display().to_string());
    }
    let z = constants::zeta_prime_minus_one();
    r.output("table", rows);
    r.output("zeta_prime_minus_one", z);
    r.output("bismut_const", constants::bismut_const());
    let tol = ctx.tol(1e-12);
    r.check("C_0 = -6 log π", constants::big_c(0), -6.0 * PI.ln(), tol);
    r.check("c_0 = 4ζ'(-1) - 1/2 + log 2π", constants::small_c(0), oracles::small_c(0), tol);
    r.check("bismut = 24ζ'(-1) - 6 log 2π", constants::bismut_const(), oracles::bismut(), tol);
    r.check("ζ'(-1) = 1/12 - log A", z, oracles::zeta_prime_minus_one(), ctx.tol(1e-13));
    Ok(r)
}

fn preset(group: &str) -> Result<GroupPreset, CliError> {
    Ok(group.replace('-', "_").parse::<GroupPreset>()?)
}

/// Word length used when trace enumeration is unavailable for a preset.
const DEFAULT_WORD_BOUND: usize = 12;

fn load_spectrum(g: GroupPreset, cutoff: f64, word_bound: Option<usize>) -> Result<LengthSpectrum, CliError> {
    Ok(match (word_bound, g) {
        (Some(w), _) => enumerate_length_spectrum(g, cutoff, w)?,
        (None, GroupPreset::ThricePuncturedSphere) => enumerate_by_trace(g, cutoff)?,
        (None, _) => enumerate_length_spectrum(g, cutoff, DEFAULT_WORD_BOUND)?,
    })
}

pub fn spectrum(
    ctx: &Ctx,
    group: &str,
    cutoff: f64,
    word_bound: Option<usize>,
    csv: Option<&Path>,
) -> Result<RunReport, CliError> {
    let g = preset(group)?;
    let mut r = RunReport::new("spectrum");
    r.input("group", g.id());
    r.input("cutoff", cutoff);
    r.input("word_bound", word_bound);
    let s = load_spectrum(g, cutoff, word_bound)?;
    if let Some(p) = csv {
        let mut f = csv_file(p)?;
        s.write_csv(&mut f)?;
        f.flush()?;
        r.input("csv", p.display().to_string());
    }
    r.output("class_count", s.class_count());
    r.output("distinct_lengths", s.classes.len());
    r.output("complete", s.complete);
    r.output("systole", s.systole());
    let lengths: Vec<_> = s
        .classes
        .iter()
        .take(10)
        .map(|c| json!({"length": c.length, "trace": c.trace, "multiplicity": c.multiplicity, "word": c.representative.to_string()}))
        .collect();
    r.output("shortest", lengths);
    // shortest hyperbolic traces: 6 on the sphere, 3 on the torus
    let (label, half_trace) = match g {
        GroupPreset::ThricePuncturedSphere => ("systole = 2 arccosh 3", 3.0f64),
        GroupPreset::OncePuncturedTorus => ("systole = 2 arccosh(3/2)", 1.5),
    };
    if let Some(sys) = s.systole() {
        r.check(label, sys, 2.0 * half_trace.acosh(), ctx.tol(1e-12));
    }
    Ok(r)
}

pub fn zeta(ctx: &Ctx, cmd: &ZetaCommand) -> Result<RunReport, CliError> {
    match cmd {
        ZetaCommand::Selberg { group, cutoff, s, zprime } => {
            let g = preset(group)?;
            let mut r = RunReport::new("zeta selberg");
            r.input("group", g.id());
            r.input("cutoff", cutoff);
            r.input("s", s);
            let sp = load_spectrum(g, *cutoff, None)?;
            let mut vals = Vec::new();
            for &x in s {
                let v = selberg_log_z(&sp, x, DEFAULT_K_MAX)?;
                let lengths: Vec<(f64, u32)> = sp.classes.iter().map(|c| (c.length, c.multiplicity)).collect();
                r.check(
                    format!("log Z({x}) vs direct product"),
                    v.log_value,
                    oracles::selberg_log_z(&lengths, x),
                    ctx.tol(1e-12),
                );
                vals.push(v);
            }
            r.output("values", vals);
            if *zprime {
                let h = ctx.schedule.clone().unwrap_or_else(|| vec![0.4, 0.2, 0.1]);
                r.input("schedule", &h);
                r.output("zprime_at_1", selberg_zprime_at_1(&sp, &h)?);
            }
            Ok(r)
        }
        ZetaCommand::Det { list, size, scale } => {
            let mut r = RunReport::new("zeta det");
            let base = match list {
                EigenList::Circle => EigenvalueList::flat_circle(size.unwrap_or(2000)),
                EigenList::Torus => EigenvalueList::flat_square_torus(size.unwrap_or(60)),
            };
            r.input("list", format!("{list:?}").to_lowercase());
            r.input("size", size);
            r.input("scale", scale);
            let d0 = zeta_prime_zero_det(&base)?;
            match scale {
                None => {
                    r.output("determinant", d0);
                    match list {
                        EigenList::Circle => r.check("det' = 4π²", d0.log_det.exp(), 4.0 * PI * PI, ctx.tol(1e-8)),
                        EigenList::Torus => r.check(
                            "log det' vs 4π²|η(i)|⁴",
                            d0.log_det,
                            oracles::square_torus_log_det(),
                            ctx.tol(1e-6),
                        ),
                    }
                }
                Some(c) => {
                    let d = zeta_prime_zero_det(&base.scaled(*c)?)?;
                    let z0 = mellin_zeta(&base, 0.0)?;
                    r.output("determinant", d);
                    r.check(
                        "ζ'(0) shift = -ζ(0) log c",
                        d.zeta_prime_0,
                        d0.zeta_prime_0 - z0 * c.ln(),
                        ctx.tol(1e-9),
                    );
                }
            }
            Ok(r)
        }
    }
}

pub fn torsion(
    ctx: &Ctx,
    genus: u32,
    punctures: u32,
    n: i32,
    zeta: f64,
    allow_unstable: bool,
    log_l2: Option<f64>,
) -> Result<RunReport, CliError> {
    let mut r = RunReport::new("torsion");
    r.input("genus", genus);
    r.input("punctures", punctures);
    r.input("n", n);
    r.input("zeta", zeta);
    let sig = SurfaceSignature::new(genus, punctures);
    let tw = TwistPower::new(n)?;
    let z = if n == 0 { ZetaInput::DerivativeAtOne(zeta) } else { ZetaInput::ValueAt(zeta) };
    let req = if allow_unstable {
        TorsionRequest::new_allow_unstable(sig, tw, z)?
    } else {
        TorsionRequest::new(sig, tw, z)?
    };
    let t = tz_torsion(&req)?;
    if let Some(l) = log_l2 {
        r.input("log_l2", l);
        r.output("log_quillen", log_quillen(t.value, l)?);
    }
    let k = tw.k_index();
    r.output("log_b_factor", constants::log_b_factor(k, sig));
    r.output("torsion", &t);
    let rc = restriction_constant_check(tw);
    r.output("restriction", rc);
    r.check("E_k - 4ζ'(-1) + log 2π - (1 - C_k)/6", rc.residual, 0.0, ctx.tol(1e-12 * (1.0 + rc.big_c.abs())));
    Ok(r)
}

fn geometric_radii(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo * (hi / lo).powf((i as f64 + 0.5) / n as f64)).collect()
}

pub fn metrics(
    ctx: &Ctx,
    model: Model,
    t: f64,
    radii: Option<&[f64]>,
    n_theta: usize,
    csv: Option<&Path>,
) -> Result<RunReport, CliError> {
    let mut r = RunReport::new("metrics");
    r.input("model", format!("{model:?}").to_lowercase());
    let chart = PlumbingChart::new(Complex64::new(t, 0.0))?;
    let (metric, hyperbolic) = match model {
        Model::Poincare => (poincare_cusp(0.5)?, true),
        Model::Cylinder => {
            r.input("t", t);
            (cylinder_metric(&chart, t, 1.0)?, true)
        }
        Model::Grafted => {
            r.input("t", t);
            let base = ChartMetric::from_log_density(Annulus::new(t / 10.0, 1.0)?, MetricLabel::Custom("flat".into()), |_| 0.0);
            (grafted_metric(&base, &chart, CutoffProfile)?, false)
        }
        Model::Flatten => (flatten(&poincare_cusp(0.95)?, CutoffProfile)?, false),
    };
    let dom = metric.domain();
    let radii = match radii {
        Some(x) => x.to_vec(),
        None => geometric_radii(dom.r_in.max(1e-3), dom.r_out, 8),
    };
    r.input("radii", &radii);
    r.input("n_theta", n_theta);
    if let Some(p) = csv {
        let mut f = csv_file(p)?;
        write_density_grid(&metric, &radii, n_theta, &mut f)?;
        f.flush()?;
        r.input("csv", p.display().to_string());
    }
    let mut rows = Vec::new();
    for &x in &radii {
        let z = Complex64::new(x, 0.0);
        let k = scalar_curvature(&metric, z).ok();
        rows.push(json!({"r": x, "density": metric.density(z), "curvature": k}));
        if let (true, Some(k)) = (hyperbolic, k) {
            r.check(format!("curvature at r={x}"), k, -1.0, ctx.tol(1e-5));
        }
    }
    r.output("samples", rows);
    if matches!(model, Model::Poincare) {
        r.output("wolpert", wolpert_scaling(&metric)?);
    }
    Ok(r)
}

pub fn reg_integral(ctx: &Ctx, example: RegExample) -> Result<RunReport, CliError> {
    let mut r = RunReport::new("reg-integral");
    r.input("example", format!("{example:?}").to_lowercase());
    let sched = match &ctx.schedule {
        Some(e) => RegIntegralSchedule::new(e.clone(), e.len().min(4))?,
        None => RegIntegralSchedule::default_decades(),
    };
    r.input("schedule", sched.epsilons());
    let disc = [CuspRegion {
        center: Complex64::new(0.0, 0.0),
        radius: 0.5,
    }];
    let (res, finite, coeff, tols) = match example {
        RegExample::Green => {
            let cut = CutoffProfile;
            let chart = PlumbingChart::new(Complex64::new(0.0, 0.0))?;
            let log_mu = move |z: Complex64| {
                let nt = cut.nu_tilde(&chart, z);
                let x = z.norm();
                let l = x.ln();
                ((1.0 - nt) + nt / (x * x * l * l)).ln()
            };
            let f = move |z: Complex64| -z.norm().ln() * c1_density(&log_mu, z);
            (regularized_integral(f, &disc, &sched)?, 1.0, 1.0 / (4.0 * PI), (1e-3, 1e-4))
        }
        RegExample::CuspProfile => {
            let f = |z: Complex64| 1.0 / (PI * z.norm_sqr() * z.norm().ln().abs());
            (
                regularized_integral(f, &disc, &sched)?,
                -2.0 * 2f64.ln().ln(),
                -1.0 / (2.0 * PI),
                (1e-6, 1e-6),
            )
        }
    };
    r.check("finite part", res.finite_part, finite, ctx.tol(tols.0));
    r.check("cusp coefficient", res.cusp_coefficient, coeff, ctx.tol(tols.1));
    r.output("result", res);
    Ok(r)
}

/// Parses `key=value` pairs into the requested keys; `optional` keys may be absent.
fn kv(args: &[String], keys: &[&str], optional: &[&str]) -> Result<Vec<Option<f64>>, CliError> {
    let mut out = vec![None; keys.len() + optional.len()];
    for a in args {
        let (k, v) = a.split_once('=').ok_or_else(|| arg_error(format!("expected key=value, got {a:?}")))?;
        let i = keys
            .iter()
            .chain(optional)
            .position(|x| *x == k)
            .ok_or_else(|| arg_error(format!("unknown key {k:?}")))?;
        out[i] = Some(v.parse().map_err(|e| arg_error(format!("{a:?}: {e}")))?);
    }
    for (i, k) in keys.iter().enumerate() {
        if out[i].is_none() {
            return Err(arg_error(format!("missing {k}=")));
        }
    }
    Ok(out)
}

pub fn identities(
    ctx: &Ctx,
    double: Option<&[String]>,
    node: Option<&[String]>,
    radial: bool,
    cylinder: Option<&str>,
) -> Result<RunReport, CliError> {
    let mut r = RunReport::new("identities");
    if let Some(args) = double {
        let v = kv(args, &["a", "b", "c"], &[])?;
        let (a, b, c) = (v[0].unwrap(), v[1].unwrap(), v[2].unwrap());
        r.input("double_integral", json!({"a": a, "b": b, "c": c}));
        let d = double_integral_identity(a, b, c)?;
        r.check("numeric vs 4π log(ac - b²)", d.numeric, 4.0 * PI * (a * c - b * b).ln(), ctx.tol(1e-3));
        r.output("double_integral", d);
    }
    if let Some(args) = node {
        let v = kv(args, &["a", "b", "c"], &["phase"])?;
        let (a, b, c, ph) = (v[0].unwrap(), v[1].unwrap(), v[2].unwrap(), v[3].unwrap_or(0.0));
        r.input("node", json!({"a": a, "b": b, "c": c, "phase": ph}));
        let d = NodeMetricData::new(a, Complex64::from_polar(b, ph), c)?;
        let rep = node_limit_check(&d, &NODE_T_SCHEDULE, &NODE_EPS_SCHEDULE)?;
        r.check("limit vs log(ac - |b|²)", rep.limit, (a * c - b * b).ln(), ctx.tol(1e-3));
        r.output("node", rep);
    }
    if radial {
        r.input("radial", true);
        let (a, b) = lim_log_diverg_integrals(1e-10)?;
        r.check("∫ 4|z|²/(|z|⁴+1)² log|z|²", a, -2.0, ctx.tol(1e-6));
        r.check("∫ 4/(|z|⁴+1)² log|z|²", b, -2.0, ctx.tol(1e-6));
        r.output("radial", [a, b]);
    }
    if let Some(arg) = cylinder {
        let t = kv(&[arg.to_string()], &["t"], &[])?[0].unwrap();
        r.input("cylinder_t", t);
        let d = cylinder_decomposition_check(t)?;
        r.check("I1 → -2", d.i1, -2.0, ctx.tol(5e-3));
        r.check("I2 → -2", d.i2, -2.0, ctx.tol(5e-3));
        r.check("change of variables", d.consistency, 0.0, ctx.tol(1e-9));
        r.output("cylinder", d);
    }
    Ok(r)
}

pub fn verify_all(fast: bool, only: Option<u32>) -> Result<RunReport, CliError> {
    let mode = if fast { Mode::Fast } else { Mode::Full };
    let mut r = RunReport::new("verify-all");
    r.input("fast", fast);
    r.input("only", only);
    let criteria: Vec<_> = match only {
        Some(id) => vec![cusped_spectra_verify::criterion(id).ok_or_else(|| arg_error(format!("no criterion {id}")))?],
        None => cusped_spectra_verify::CRITERIA.iter().collect(),
    };
    let mut summary = Vec::new();
    for c in criteria {
        let rep = c.evaluate(mode);
        eprintln!("{}", rep.line());
        for ch in &rep.checks {
            let mut ch = ch.clone();
            ch.name = format!("criterion {}: {}", rep.id, ch.name);
            r.checks.push(ch);
        }
        for (i, e) in rep.errors.iter().enumerate() {
            eprintln!("criterion {}: {e}", rep.id);
            r.checks.push(cusped_spectra_verify::Check::errored(format!("criterion {}: error {i}", rep.id), 0.0));
        }
        let in_time = rep.seconds < rep.time_limit;
        r.check(format!("criterion {}: within {} s", rep.id, rep.time_limit), if in_time { 0.0 } else { 1.0 }, 0.0, 0.0);
        summary.push(json!({"id": rep.id, "title": rep.title, "pass": rep.pass()}));
    }
    r.output("criteria", summary);
    Ok(r)
}
