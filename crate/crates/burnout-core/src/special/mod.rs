//! Special functions of the limiting interval law.

mod dickman;
mod expint;
mod gd1;
mod mgf;

pub use dickman::{dickman_density, dickman_rho, gd1_cdf, shared_table, DickmanTable};
pub use expint::{expint_e1, expint_ei};
pub use gd1::{gd1_sample, Gd1Spec};
pub use mgf::limit_mgf;
