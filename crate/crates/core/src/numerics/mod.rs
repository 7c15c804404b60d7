//! Exact rationals, Gaussian rationals, complex balls and univariate roots.

mod coeff;
mod gauss;
mod qpoly;
mod rat;
mod upoly;

pub use coeff::{config, with_config, Coeff, NumConfig};
pub use gauss::GaussRat;
pub use qpoly::QPoly;
pub use rat::{ext_gcd, int, lcm_denominators, parse_rat, rat, rat_to_f64, ExtRat, Rat};
pub use upoly::{aberth, root_order, UPoly};
