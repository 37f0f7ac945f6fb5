//! Quadrature for the singular integrals near cusps and nodes.

mod annulus;
mod bott_chern;
pub mod gk;
mod identities;
pub mod measure;
mod regularized;

pub use annulus::{annulus_integrate, plane_integrate, radial_integrate, radial_plane_integrate, AnnulusOptions};
pub use bott_chern::{
    anomaly_rhs_chart, bott_chern_deg0, bott_chern_deg2, todd_bott_chern_deg0, todd_bott_chern_deg2, AnomalyData,
    BottChernPair,
};
pub use gk::{integrate, integrate_with_breaks, GkOptions, QuadResult};
pub use identities::{
    cylinder_decomposition_check, double_integral_identity, double_integral_identity_with, lim_log_diverg_integrals,
    node_limit_check, node_window_value, CylinderDecomposition, DoubleIntegral, NodeLimitReport, NODE_EPS_SCHEDULE,
    NODE_T_SCHEDULE,
};
pub use regularized::{regularized_integral, CuspRegion, RegIntegralSchedule, RegularizedIntegralResult};
