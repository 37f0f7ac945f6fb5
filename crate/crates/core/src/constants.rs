//! Universal constants entering the torsion and restriction formulas.
//!
//! Everything is evaluated in double-double arithmetic and rounded once on
//! return. `ζ'(-1)` is derived from the Glaisher–Kinkelin constant,
//! `ζ'(-1) = 1/12 - log A`, with `log A` from Euler–Maclaurin summation.

use crate::dd::DD;
use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

/// Genus and number of punctures of a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSignature {
    pub genus: u32,
    pub punctures: u32,
}

impl SurfaceSignature {
    pub const fn new(genus: u32, punctures: u32) -> Self {
        SurfaceSignature { genus, punctures }
    }

    /// `2 - 2g - m`, the exponent shared by `B_k` and the Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64
    }

    /// `2g - 2 + m > 0`.
    pub fn is_stable(&self) -> bool {
        self.euler_characteristic() < 0
    }
}

/// Power `n <= 0` of the twisted canonical bundle `ω(D)^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistPower(i32);

impl TwistPower {
    pub fn new(n: i32) -> crate::Result<Self> {
        if n > 0 {
            return Err(crate::Error::InvalidArgument(format!(
                "twist power must be nonpositive, got {n}"
            )));
        }
        Ok(TwistPower(n))
    }

    pub fn n(&self) -> i32 {
        self.0
    }

    /// `k = -n`, the index of `C_k` and `c_k`.
    pub fn k_index(&self) -> u32 {
        (-self.0) as u32
    }
}

const EULER_MACLAURIN_N: i64 = 40;

// B_{2j} as exact rationals, j = 2..=10.
const BERNOULLI: [(i64, i64); 9] = [
    (-1, 30),
    (1, 42),
    (-1, 30),
    (5, 66),
    (-691, 2730),
    (7, 6),
    (-3617, 510),
    (43867, 798),
    (-174611, 330),
];

fn ln_int(n: i64) -> DD {
    DD::from_int(n).ln()
}

/// `log A` for the Glaisher–Kinkelin constant in double-double precision.
pub(crate) fn log_glaisher_dd() -> DD {
    let n = EULER_MACLAURIN_N;
    let mut s = DD::ZERO;
    for k in 2..=n {
        s = s + ln_int(k).mul_f64(k as f64);
    }
    let nn = DD::from_int(n);
    let ln_n = ln_int(n);
    let coeff = nn * nn / DD::from_f64(2.0) + nn / DD::from_f64(2.0) + DD::ratio(1, 12);
    s = s - coeff * ln_n + nn * nn / DD::from_f64(4.0);
    for (i, &(p, q)) in BERNOULLI.iter().enumerate() {
        let j = (i + 2) as i64;
        let denom = (2 * j) * (2 * j - 1) * (2 * j - 2);
        let term = DD::ratio(p, q * denom) / nn.powi((2 * j - 2) as u32);
        s = s + term;
    }
    s
}

fn zeta_prime_minus_one_dd() -> DD {
    static CELL: OnceLock<DD> = OnceLock::new();
    *CELL.get_or_init(|| DD::ratio(1, 12) - log_glaisher_dd())
}

fn two_pi_log_dd() -> DD {
    (DD::PI.mul_f64(2.0)).ln()
}

/// `log(n!)` as a sum of logarithms.
fn log_factorial_dd(n: u64) -> DD {
    let mut s = DD::ZERO;
    for j in 2..=n {
        s = s + ln_int(j as i64);
    }
    s
}

/// `ζ'(-1)`.
pub fn zeta_prime_minus_one() -> f64 {
    zeta_prime_minus_one_dd().to_f64()
}

fn big_c_dd(k: u32) -> DD {
    let ln2 = DD::LN2;
    let lnpi = DD::PI.ln();
    if k == 0 {
        return -(lnpi.mul_f64(6.0));
    }
    let k = k as f64;
    -(ln2.mul_f64(6.0 * (1.0 + k)))
        - lnpi.mul_f64(6.0 * (1.0 + 2.0 * k))
        - log_factorial_dd(2 * k as u64).mul_f64(6.0)
}

/// `C_k`; `C_0 = -6 log π`.
pub fn big_c(k: u32) -> f64 {
    big_c_dd(k).to_f64()
}

fn small_c_dd(k: u32) -> DD {
    let zp = zeta_prime_minus_one_dd();
    let l2p = two_pi_log_dd();
    if k == 0 {
        return zp.mul_f64(4.0) - DD::from_f64(0.5) + l2p;
    }
    let ki = k as i64;
    let mut s = DD::ZERO;
    for l in 0..ki {
        let w = 2 * ki - 2 * l - 1;
        let arg = 2 * ki + 2 * ki * l - l * l - l;
        s = s + (ln_int(arg) - DD::LN2).mul_f64(w as f64);
    }
    let kf = DD::from_int(ki);
    s = s + (DD::ratio(1, 3) + kf + kf * kf) * DD::LN2;
    s = s + l2p.mul_f64((2 * ki + 1) as f64);
    s = s + zp.mul_f64(4.0);
    let half = kf + DD::from_f64(0.5);
    s = s - (half * half).mul_f64(2.0);
    let mut lf = DD::ZERO;
    for l in 1..ki {
        lf = lf + log_factorial_dd(l as u64);
    }
    s = s - lf.mul_f64(4.0);
    s - log_factorial_dd(k as u64).mul_f64(2.0)
}

/// `c_k`.
pub fn small_c(k: u32) -> f64 {
    small_c_cached(k).to_f64()
}

const SMALL_C_TABLE: u32 = 32;

fn small_c_cached(k: u32) -> DD {
    static TABLE: OnceLock<Vec<DD>> = OnceLock::new();
    if k < SMALL_C_TABLE {
        TABLE.get_or_init(|| (0..SMALL_C_TABLE).map(small_c_dd).collect())[k as usize]
    } else {
        small_c_dd(k)
    }
}

/// `log B_k(g, m) = (2 - 2g - m) c_k / 2`.
pub fn log_b_factor(k: u32, sig: SurfaceSignature) -> f64 {
    small_c_cached(k)
        .mul_f64(sig.euler_characteristic() as f64 * 0.5)
        .to_f64()
}

/// `B_k(g, m)`. Overflows to infinity once `|(2-2g-m) c_k / 2|` exceeds about 709;
/// use [`log_b_factor`] in that regime.
pub fn b_factor(k: u32, sig: SurfaceSignature) -> f64 {
    small_c_cached(k)
        .mul_f64(sig.euler_characteristic() as f64 * 0.5)
        .exp()
        .to_f64()
}

/// `log E(g, m) = (g + 2 - m) log 2 / 3`.
pub fn log_e_factor(sig: SurfaceSignature) -> f64 {
    let e = sig.genus as f64 + 2.0 - sig.punctures as f64;
    (DD::LN2.mul_f64(e) / DD::from_f64(3.0)).to_f64()
}

/// `E(g, m) = 2^{(g + 2 - m)/3}`.
pub fn e_factor(sig: SurfaceSignature) -> f64 {
    let e = sig.genus as f64 + 2.0 - sig.punctures as f64;
    (DD::LN2.mul_f64(e) / DD::from_f64(3.0)).exp().to_f64()
}

/// `E_k = 4ζ'(-1) - log 2π + (1 - C_k)/6`.
pub fn e_const(k: u32) -> f64 {
    let v = zeta_prime_minus_one_dd().mul_f64(4.0) - two_pi_log_dd()
        + (DD::ONE - big_c_dd(k)) / DD::from_f64(6.0);
    v.to_f64()
}

/// `24ζ'(-1) - 6 log 2π`.
pub fn bismut_const() -> f64 {
    (zeta_prime_minus_one_dd().mul_f64(24.0) - two_pi_log_dd().mul_f64(6.0)).to_f64()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_prime_reference() {
        // mpmath: zeta(-1, derivative=1)
        assert_eq!(zeta_prime_minus_one(), -0.16542114370045093);
    }

    #[test]
    fn c_table() {
        let table = [
            (0, 0.67619249160754177),
            (1, 1.9692900457327718),
            (2, 2.2093923700192990),
            (3, 2.0092971061446202),
            (5, 0.76887091872655512),
            (10, -5.2473314892724707),
            (20, -23.986331806454719),
            (50, -104.84070781529096),
        ];
        for (k, v) in table {
            let got = small_c(k);
            assert!((got - v).abs() <= 4e-15 * v.abs().max(1.0), "k={k} got={got} want={v}");
        }
    }

    #[test]
    fn big_c_table() {
        let table = [
            (0, -6.8683793150964010),
            (1, -33.081787195368219),
            (2, -65.886868807648695),
            (10, -443.99737829850172),
            (20, -1030.8639349580499),
            (50, -3088.2456014094607),
        ];
        for (k, v) in table {
            let got = big_c(k);
            assert!((got - v).abs() <= 4e-15 * v.abs(), "k={k} got={got} want={v}");
        }
    }

    #[test]
    fn b_trivial_exponent() {
        assert_eq!(b_factor(0, SurfaceSignature::new(1, 0)), 1.0);
        assert_eq!(e_factor(SurfaceSignature::new(0, 2)), 1.0);
    }

    #[test]
    fn e_one_one() {
        let want = 2f64.powf(2.0 / 3.0);
        assert!((e_factor(SurfaceSignature::new(1, 1)) - want).abs() < 1e-15);
    }

    #[test]
    fn stability() {
        assert!(SurfaceSignature::new(0, 3).is_stable());
        assert!(!SurfaceSignature::new(1, 0).is_stable());
        assert!(!SurfaceSignature::new(0, 2).is_stable());
        assert!(SurfaceSignature::new(2, 0).is_stable());
    }

    #[test]
    fn twist_power() {
        assert!(TwistPower::new(1).is_err());
        let t = TwistPower::new(-4).unwrap();
        assert_eq!(t.k_index(), 4);
    }
}
