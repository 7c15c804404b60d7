//! Truncated Puiseux series, bivariate polynomials and the Newton–Puiseux
//! solver.

mod bivar;
mod newton;
mod series;
mod sqfree;

pub use bivar::BivarPoly;
pub use newton::newton_puiseux;
pub use series::{contact_order, direct_contact, PuiseuxSeries};
pub use sqfree::{polar_factor, square_free_x};
