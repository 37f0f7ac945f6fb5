use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::ops::Mul;

const DET_DRIFT: f64 = 1e-13;
const PARABOLIC_TOL: f64 = 1e-10;

/// A real 2×2 matrix of determinant one acting on the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moebius {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl Moebius {
    pub const IDENTITY: Moebius = Moebius {
        a: 1.0,
        b: 0.0,
        c: 0.0,
        d: 1.0,
    };

    /// Builds a matrix, rescaling by `det^{-1/2}` so the determinant is one.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) || !det.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "matrix must have positive finite determinant, got {det}"
            )));
        }
        Ok(Moebius { a, b, c, d }.renormalized())
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn inverse(&self) -> Moebius {
        Moebius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    fn renormalized(self) -> Moebius {
        let s = self.det().sqrt();
        Moebius {
            a: self.a / s,
            b: self.b / s,
            c: self.c / s,
            d: self.d / s,
        }
    }

    pub fn compose(&self, o: &Moebius) -> Moebius {
        let m = Moebius {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        };
        if (m.det() - 1.0).abs() > DET_DRIFT {
            m.renormalized()
        } else {
            m
        }
    }

    /// Action on a point of the upper half-plane.
    pub fn apply(&self, z: num_complex::Complex64) -> num_complex::Complex64 {
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    pub fn classify(&self) -> Classification {
        classify_trace(self.trace(), self.b == 0.0 && self.c == 0.0)
    }
}

impl Mul for Moebius {
    type Output = Moebius;
    fn mul(self, o: Moebius) -> Moebius {
        self.compose(&o)
    }
}

pub fn classify_trace(trace: f64, diagonal: bool) -> Classification {
    let t = trace.abs();
    if (t - 2.0).abs() <= PARABOLIC_TOL {
        if diagonal {
            Classification::Identity
        } else {
            Classification::Parabolic
        }
    } else if t < 2.0 {
        Classification::Elliptic
    } else {
        Classification::Hyperbolic
    }
}

/// `2 arccosh(|tr|/2)`, computed as `2 log(x + sqrt(x^2 - 1))` with `x = |tr|/2`
/// written to avoid cancellation near `x = 1`.
pub fn length_from_trace(trace: f64) -> Result<f64> {
    let t = trace.abs();
    if !(t - 2.0 > PARABOLIC_TOL) {
        return Err(Error::NotHyperbolic(t));
    }
    let x = t / 2.0;
    let y = x - 1.0;
    Ok(2.0 * (y + (y * (x + 1.0)).sqrt()).ln_1p())
}

/// Translation length of a hyperbolic element.
pub fn geodesic_length(m: &Moebius) -> Result<f64> {
    length_from_trace(m.trace())
}

/// Exact 2×2 integer matrix used for word evaluation in arithmetic groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    pub a: i128,
    pub b: i128,
    pub c: i128,
    pub d: i128,
}

impl IntMatrix {
    pub const IDENTITY: IntMatrix = IntMatrix {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };

    pub const fn new(a: i128, b: i128, c: i128, d: i128) -> Self {
        IntMatrix { a, b, c, d }
    }

    pub fn det(&self) -> i128 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> i128 {
        self.a + self.d
    }

    pub fn inverse(&self) -> IntMatrix {
        IntMatrix::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix::new(-self.a, -self.b, -self.c, -self.d)
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        IntMatrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn to_moebius(&self) -> Moebius {
        Moebius {
            a: self.a as f64,
            b: self.b as f64,
            c: self.c as f64,
            d: self.d as f64,
        }
    }
}
