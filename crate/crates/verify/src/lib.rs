//! Acceptance checks for `cusped-spectra`, each compared against an oracle
//! that does not share code with the library.

use serde::Serialize;
use std::time::Instant;

mod criteria;
pub mod oracles;

pub use criteria::CRITERIA;

/// One numerical comparison; passes when `|value - target| <= tolerance`.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub target: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, value: f64, target: f64, tolerance: f64) -> Self {
        let pass = (value - target).abs() <= tolerance;
        Check {
            name: name.into(),
            value,
            target,
            tolerance,
            pass,
        }
    }

    /// A check that failed to produce a number at all.
    pub fn errored(name: impl Into<String>, tolerance: f64) -> Self {
        Check {
            name: name.into(),
            value: f64::NAN,
            target: 0.0,
            tolerance,
            pass: false,
        }
    }
}

/// How much work each criterion does.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    Full,
    /// Fewer random samples; tolerances are unchanged.
    Fast,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub errors: Vec<String>,
    pub seconds: f64,
    pub time_limit: f64,
}

impl CriterionReport {
    pub fn pass(&self) -> bool {
        self.errors.is_empty() && self.checks.iter().all(|c| c.pass) && self.seconds < self.time_limit
    }

    /// `PASS`/`FAIL` with the worst offending check.
    pub fn line(&self) -> String {
        let status = if self.pass() { "PASS" } else { "FAIL" };
        let mut s = format!("criterion {:>2} {status} {:<28} {:>8.3}s", self.id, self.title, self.seconds);
        if let Some(e) = self.errors.first() {
            s.push_str(&format!("  error: {e}"));
        } else if let Some(c) = self.checks.iter().find(|c| !c.pass) {
            s.push_str(&format!(
                "  {}: |{:.6e} - {:.6e}| > {:.1e}",
                c.name, c.value, c.target, c.tolerance
            ));
        } else if self.seconds >= self.time_limit {
            s.push_str(&format!("  over time limit {}s", self.time_limit));
        }
        s
    }
}

/// Collects checks while a criterion runs; library errors become failures.
pub struct Recorder {
    checks: Vec<Check>,
    errors: Vec<String>,
}

impl Recorder {
    fn new() -> Self {
        Recorder {
            checks: Vec::new(),
            errors: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, value: f64, target: f64, tolerance: f64) {
        self.checks.push(Check::new(name, value, target, tolerance));
    }

    /// Records a check that must hold as a boolean.
    pub fn require(&mut self, name: impl Into<String>, ok: bool) {
        self.check(name, if ok { 0.0 } else { 1.0 }, 0.0, 0.0);
    }

    pub fn try_with<T, E: std::fmt::Display>(&mut self, what: &str, r: Result<T, E>) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.errors.push(format!("{what}: {e}"));
                None
            }
        }
    }
}

pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub time_limit: f64,
    pub run: fn(&mut Recorder, Mode),
}

impl Criterion {
    pub fn evaluate(&self, mode: Mode) -> CriterionReport {
        let mut rec = Recorder::new();
        let start = Instant::now();
        (self.run)(&mut rec, mode);
        CriterionReport {
            id: self.id,
            title: self.title,
            checks: rec.checks,
            errors: rec.errors,
            seconds: start.elapsed().as_secs_f64(),
            time_limit: self.time_limit,
        }
    }
}

pub fn run_all(mode: Mode) -> Vec<CriterionReport> {
    CRITERIA.iter().map(|c| c.evaluate(mode)).collect()
}

pub fn criterion(id: u32) -> Option<&'static Criterion> {
    CRITERIA.iter().find(|c| c.id == id)
}
