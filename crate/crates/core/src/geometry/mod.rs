//! Momentum-space coordinates, polarization frames, unit systems and
//! quadrature over `(Omega, theta, phi, sigma)`.

mod band;
mod frame;
mod quadrature;
mod units;

pub use band::FrequencyBand;
pub use frame::{polarization_frame, ModeCoordinate, Polarization, PolarizationFrame};
pub use quadrature::{
    build_quadrature, gauss_legendre, AngularNode, GridNode, GridOrders, QuadratureGrid, SpectralNode,
};
pub use units::{UnitMode, UnitSystem, C_SI, EPSILON0_SI, HBAR_SI};
