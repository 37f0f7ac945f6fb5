//! Takhtajan–Zograf torsion from the constants `B_k`, `E` and Selberg zeta
//! values, and the scalar log-Quillen assembly.

use crate::constants::{
    big_c, bismut_const, e_const, log_b_factor, log_e_factor, zeta_prime_minus_one, SurfaceSignature, TwistPower,
};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// The Selberg zeta datum entering the torsion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ZetaInput {
    /// `Z'(1)`, for `n = 0`.
    DerivativeAtOne(f64),
    /// `Z(1 - n)`, for `n < 0`.
    ValueAt(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorsionRequest {
    sig: SurfaceSignature,
    twist: TwistPower,
    zeta_input: ZetaInput,
    warnings: Vec<String>,
}

impl TorsionRequest {
    /// Rejects unstable signatures.
    pub fn new(sig: SurfaceSignature, twist: TwistPower, zeta_input: ZetaInput) -> Result<Self> {
        if !sig.is_stable() {
            return Err(Error::Unstable {
                genus: sig.genus,
                punctures: sig.punctures,
            });
        }
        Self::new_allow_unstable(sig, twist, zeta_input)
    }

    /// Like [`TorsionRequest::new`] but evaluates the formula for unstable
    /// signatures too, recording a warning.
    pub fn new_allow_unstable(sig: SurfaceSignature, twist: TwistPower, zeta_input: ZetaInput) -> Result<Self> {
        match (twist.n(), zeta_input) {
            (0, ZetaInput::DerivativeAtOne(_)) => {}
            (n, ZetaInput::ValueAt(_)) if n < 0 => {}
            (n, z) => {
                return Err(Error::InvalidArgument(format!(
                    "zeta input {z:?} does not match twist n = {n}"
                )))
            }
        }
        let mut warnings = Vec::new();
        if !sig.is_stable() {
            warnings.push(format!(
                "signature (g={}, m={}) is not stable; no hyperbolic metric exists",
                sig.genus, sig.punctures
            ));
        }
        Ok(TorsionRequest {
            sig,
            twist,
            zeta_input,
            warnings,
        })
    }

    pub fn signature(&self) -> SurfaceSignature {
        self.sig
    }

    pub fn twist(&self) -> TwistPower {
        self.twist
    }

    pub fn zeta_input(&self) -> ZetaInput {
        self.zeta_input
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TorsionValue {
    /// May overflow to infinity for large `|2 - 2g - m|`; `log_value` stays finite.
    pub value: f64,
    pub log_value: f64,
    pub warnings: Vec<String>,
}

/// `E(g,m) B_0(g,m) Z'(1)` for `n = 0`, `B_{-n}(g,m) Z(1-n)` for `n < 0`.
pub fn tz_torsion(req: &TorsionRequest) -> Result<TorsionValue> {
    let k = req.twist.k_index();
    let log_zeta = match req.zeta_input {
        ZetaInput::DerivativeAtOne(w) => {
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::Nonpositive(format!("Z'(1) = {w}")));
            }
            w.ln() + log_e_factor(req.sig)
        }
        ZetaInput::ValueAt(z) => {
            if !(z > 0.0 && z <= 1.0) {
                return Err(Error::Nonpositive(format!("Z({}) = {z} is outside (0, 1]", 1 - req.twist.n())));
            }
            z.ln()
        }
    };
    let log_value = log_b_factor(k, req.sig) + log_zeta;
    Ok(TorsionValue {
        value: log_value.exp(),
        log_value,
        warnings: req.warnings.clone(),
    })
}

/// `log T^{1/2} + log |·|_{L²}`.
pub fn log_quillen(torsion: f64, log_l2_norm: f64) -> Result<f64> {
    if !(torsion > 0.0) {
        return Err(Error::Nonpositive(format!("torsion = {torsion}")));
    }
    Ok(0.5 * torsion.ln() + log_l2_norm)
}

/// Internal consistency of `C_k`, `E_k` and the Bismut constant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RestrictionReport {
    pub n: i32,
    pub big_c: f64,
    pub e_const: f64,
    pub bismut_const: f64,
    /// `E_k - (4ζ'(-1) - log 2π) - 1/6 + C_k/6`.
    pub residual: f64,
    pub holds: bool,
}

pub const RESTRICTION_TOL: f64 = 1e-12;

pub fn restriction_constant_check(n: TwistPower) -> RestrictionReport {
    let k = n.k_index();
    let c = big_c(k);
    let e = e_const(k);
    let base = 4.0 * zeta_prime_minus_one() - (2.0 * std::f64::consts::PI).ln();
    let residual = e - base - 1.0 / 6.0 + c / 6.0;
    RestrictionReport {
        n: n.n(),
        big_c: c,
        e_const: e,
        bismut_const: bismut_const(),
        residual,
        holds: residual.abs() <= RESTRICTION_TOL * (1.0 + c.abs()),
    }
}
