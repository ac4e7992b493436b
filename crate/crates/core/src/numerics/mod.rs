//! Numerical kernel: normal special functions, adaptive quadrature, bracketed
//! root finding and seeded Monte Carlo quantiles.

pub mod montecarlo;
pub mod quadrature;
pub mod roots;
pub mod special;

pub use montecarlo::{mc_quantile, mc_quantile_with_se, QuantileEstimate};
pub use quadrature::{
    integrate, integrate_line, integrate_line_with_breaks, integrate_with_breaks, Quadrature, Tolerance,
};
pub use roots::{find_root_monotone, Bracket};
pub use special::{ln_norm_cdf, ln_norm_pdf, ln_norm_sf, norm_cdf, norm_interval, norm_pdf, norm_quantile, norm_sf};
