//! Numerics for Quillen metrics on degenerating families of cusped Riemann surfaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`constants`]: universal constants `C_k`, `c_k`, `B_k`, `E`, `ζ'(-1)`.
//! * [`hyperbolic`]: `SL(2,R)` matrices, words in rank-2 free groups and geodesic length spectra.
//! * [`zeta`]: truncated Selberg zeta products and Mellin-regularized spectral zeta functions.
//! * [`torsion`]: Takhtajan–Zograf torsion and Quillen-norm assembly.
//! * [`geometry`]: model conformal metrics on coordinate charts near cusps and nodes.
//! * [`quadrature`]: singular quadrature, regularized integrals and Bott–Chern integrands.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod dd;
pub mod error;
pub mod extrapolate;
pub mod geometry;
pub mod hyperbolic;
pub mod quadrature;
pub mod special;
pub mod sum;
pub mod torsion;
pub mod zeta;

pub use error::{Error, Result};
