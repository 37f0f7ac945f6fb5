//! Globally adaptive Gauss–Kronrod (7, 15) quadrature.

use crate::{Error, Result};
use rayon::prelude::*;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Options for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct GkOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
    /// Evaluate the 15 nodes of each panel on the rayon pool. Only worth it
    /// for expensive integrands; results are identical either way.
    pub parallel: bool,
}

impl Default for GkOptions {
    fn default() -> Self {
        GkOptions {
            abs_tol: 1e-12,
            rel_tol: 1e-12,
            max_intervals: 2000,
            parallel: false,
        }
    }
}

impl GkOptions {
    pub fn abs(tol: f64) -> Self {
        GkOptions {
            abs_tol: tol,
            rel_tol: 0.0,
            ..Default::default()
        }
    }

    pub fn parallel(mut self, yes: bool) -> Self {
        self.parallel = yes;
        self
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, o: &Self) -> bool {
        self.error == o.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Panel {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error)
    }
}

fn nodes(a: f64, b: f64) -> [f64; 15] {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut x = [0.0; 15];
    for i in 0..7 {
        x[2 * i] = c - h * XGK[i];
        x[2 * i + 1] = c + h * XGK[i];
    }
    x[14] = c;
    x
}

fn panel<F: Fn(f64) -> f64 + Sync>(f: &F, a: f64, b: f64, parallel: bool) -> Panel {
    let x = nodes(a, b);
    let fx: Vec<f64> = if parallel {
        x.par_iter().map(|&t| f(t)).collect()
    } else {
        x.iter().map(|&t| f(t)).collect()
    };
    let h = 0.5 * (b - a);
    let mut k = WGK[7] * fx[14];
    let mut g = WG[3] * fx[14];
    for i in 0..7 {
        let s = fx[2 * i] + fx[2 * i + 1];
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    let value = k * h;
    let mean = 0.5 * k;
    let mut asc = WGK[7] * (fx[14] - mean).abs();
    let mut abs = WGK[7] * fx[14].abs();
    for i in 0..7 {
        asc += WGK[i] * ((fx[2 * i] - mean).abs() + (fx[2 * i + 1] - mean).abs());
        abs += WGK[i] * (fx[2 * i].abs() + fx[2 * i + 1].abs());
    }
    let asc = asc * h.abs();
    let abs = abs * h.abs();
    let mut error = ((k - g) * h).abs();
    if asc != 0.0 && error != 0.0 {
        error = asc * (200.0 * error / asc).powf(1.5).min(1.0);
    }
    error = error.max(50.0 * f64::EPSILON * abs);
    Panel {
        a,
        b,
        value,
        error: if value.is_finite() { error } else { f64::INFINITY },
    }
}

/// Integrates `f` over `[a, b]`, subdividing the panel with largest error estimate
/// until `error <= max(abs_tol, rel_tol |value|)`.
pub fn integrate<F: Fn(f64) -> f64 + Sync>(f: F, a: f64, b: f64, opts: GkOptions) -> Result<QuadResult> {
    integrate_with_breaks(f, &[a, b], opts)
}

/// Like [`integrate`] with the initial partition given by `breaks` (sorted).
pub fn integrate_with_breaks<F: Fn(f64) -> f64 + Sync>(
    f: F,
    breaks: &[f64],
    opts: GkOptions,
) -> Result<QuadResult> {
    assert!(breaks.len() >= 2);
    let mut heap = BinaryHeap::new();
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            heap.push(panel(&f, w[0], w[1], opts.parallel));
        }
    }
    let mut evaluations = 15 * heap.len();
    loop {
        let (value, error) = totals(&heap);
        let target = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= target {
            return Ok(QuadResult {
                value,
                error,
                evaluations,
            });
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::NonConvergence { error, tol: target });
        }
        let worst = heap.pop().expect("nonempty");
        let m = 0.5 * (worst.a + worst.b);
        if !(m > worst.a && m < worst.b) {
            return Err(Error::NonConvergence { error, tol: target });
        }
        heap.push(panel(&f, worst.a, m, opts.parallel));
        heap.push(panel(&f, m, worst.b, opts.parallel));
        evaluations += 30;
    }
}

fn totals(heap: &BinaryHeap<Panel>) -> (f64, f64) {
    // Sum in a fixed order so the result does not depend on heap layout.
    let mut panels: Vec<&Panel> = heap.iter().collect();
    panels.sort_by(|p, q| p.a.total_cmp(&q.a));
    let values: Vec<f64> = panels.iter().map(|p| p.value).collect();
    let errors: Vec<f64> = panels.iter().map(|p| p.error).collect();
    (crate::sum::pairwise(&values), crate::sum::pairwise(&errors))
}
