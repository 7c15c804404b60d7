//! Geometric skeleton of a germ: tangent cone, polars, Kuo–Lu tree,
//! gradient canyons and clusters.

mod canyon;
mod degree;
mod kuolu;
mod polar;
mod regular;

pub use canyon::{cluster, group_canyons, polar_contact, Canyon, Cluster, ClusterKey};
pub use degree::{gradient_degree, gradient_profile, lambda_symbolic, GradientProfile};
pub use kuolu::{kuo_lu_tree, Bar, KuoLuTree};
pub use polar::{polar_arcs, PolarArc};
pub use regular::{is_mini_regular, mini_regularize, tangent_cone, Regularized};
